#pragma once

#include <cstddef>

namespace arealaw::tol {

inline constexpr double hermitian = 1e-9;  // relative Frobenius
inline constexpr double unitary = 1e-9;    // relative Frobenius
inline constexpr double trace = 1e-9;
inline constexpr double psd = 1e-9;
inline constexpr double eigenvalue_clip = 1e-12;  // 0 log 0 = 0 below this

/// Default cap on the dimension of any densely simulated space.
inline constexpr std::size_t default_dim_cap = std::size_t{1} << 14;

}  // namespace arealaw::tol
