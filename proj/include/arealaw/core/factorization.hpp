#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace arealaw {

struct Factor {
  std::string label;
  std::size_t dim = 1;

  bool operator==(const Factor&) const = default;
};

/// Ordered tensor factorization of a Hilbert space into labeled factors.
///
/// The first factor is the most significant one in the row-major basis index,
/// so the basis of `a.concat(b)` matches the Kronecker product a ⊗ b.
class HilbertFactorization {
 public:
  HilbertFactorization() = default;
  explicit HilbertFactorization(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }
  std::size_t total_dim() const { return total_dim_; }

  bool contains(const std::string& label) const;
  std::size_t position(const std::string& label) const;
  std::size_t dim(const std::string& label) const;
  std::vector<std::string> labels() const;
  std::vector<std::size_t> dims() const;

  /// Factors named by `labels`, in the order given.
  HilbertFactorization subset(std::span<const std::string> labels) const;
  /// Factors not named by `labels`, in the original order.
  HilbertFactorization without(std::span<const std::string> labels) const;
  /// Product of the dimensions of the named factors.
  std::size_t dim_of(std::span<const std::string> labels) const;
  /// This factorization followed by `other`; labels must not collide.
  HilbertFactorization concat(const HilbertFactorization& other) const;

  bool operator==(const HilbertFactorization& other) const { return factors_ == other.factors_; }

 private:
  std::vector<Factor> factors_;
  std::size_t total_dim_ = 1;
};

/// Factorization with labels `prefix0, prefix1, ...` of equal dimension.
HilbertFactorization uniform_factorization(const std::string& prefix, std::size_t count, std::size_t dim);

}  // namespace arealaw
