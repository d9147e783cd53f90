#include "arealaw/core/information.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "arealaw/core/errors.hpp"
#include "arealaw/core/linalg.hpp"
#include "arealaw/core/tolerances.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace arealaw {

double entropy_from_spectrum(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues)
    if (lambda > tol::eigenvalue_clip) s -= lambda * std::log2(lambda);
  return std::max(s, 0.0);
}

double von_neumann_entropy(const Matrix& rho) {
  const Eigen::VectorXd spectrum = hermitian_eigenvalues(rho);
  if (spectrum.size() > 0 && spectrum.minCoeff() < -tol::psd)
    throw ValidationError("entropy of a non-PSD operator (eigenvalue " +
                          std::to_string(spectrum.minCoeff()) + ")");
  return entropy_from_spectrum(spectrum);
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

double quantum_mutual_information(const DensityMatrix& rho, const Bipartition& partition) {
  const auto& [a, b] = partition;
  std::set<std::string> all;
  for (const auto& l : a) all.insert(l);
  for (const auto& l : b)
    if (!all.insert(l).second) throw LabelError("bipartition sides overlap on '" + l + "'");
  const auto labels = rho.space().labels();
  if (all.size() != labels.size() || !std::all_of(labels.begin(), labels.end(),
                                                 [&](const std::string& l) { return all.count(l) > 0; }))
    throw LabelError("partition is not a bipartition of the state's labels");
  return von_neumann_entropy(partial_trace(rho, a)) + von_neumann_entropy(partial_trace(rho, b)) -
         von_neumann_entropy(rho);
}

double marginal_mutual_information(const DensityMatrix& rho, const LabelSet& a, const LabelSet& b) {
  LabelSet both = a;
  both.insert(both.end(), b.begin(), b.end());
  return quantum_mutual_information(partial_trace(rho, both), {a, b});
}

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities)
    if (p > 0.0) h -= p * std::log2(p);
  return std::max(h, 0.0);
}

double classical_mutual_information(const ProbabilityDistribution& joint, std::size_t first_arity) {
  std::map<Outcome, double> pa, pb, pab;
  std::size_t arity = 0;
  bool first = true;
  for (const auto& [label, p] : joint.entries()) {
    if (first) {
      arity = label.size();
      first = false;
    }
    if (label.size() != arity || label.size() < first_arity)
      throw ValidationError("joint distribution has malformed outcome labels");
    Outcome a(label.begin(), label.begin() + static_cast<std::ptrdiff_t>(first_arity));
    Outcome b(label.begin() + static_cast<std::ptrdiff_t>(first_arity), label.end());
    pa[a] += p;
    pb[b] += p;
    pab[label] += p;
  }
  auto entropy = [](const std::map<Outcome, double>& m) {
    std::vector<double> ps;
    ps.reserve(m.size());
    for (const auto& [k, p] : m) ps.push_back(p);
    return shannon_entropy(ps);
  };
  return std::max(0.0, entropy(pa) + entropy(pb) - entropy(pab));
}

double classical_mutual_information(const ProbabilityDistribution& joint) {
  for (const auto& [label, p] : joint.entries())
    if (label.size() != 2) throw ValidationError("expected outcome pairs (a, b)");
  return classical_mutual_information(joint, 1);
}

Vector SchmidtDecomposition::reconstruct() const {
  Vector out = Vector::Zero(left.rows() * right.rows());
  for (Eigen::Index k = 0; k < coefficients.size(); ++k)
    out += coefficients(k) * Eigen::kroneckerProduct(left.col(k), right.col(k)).eval();
  return out;
}

SchmidtDecomposition schmidt_decomposition(const PureState& psi, const LabelSet& left) {
  const HilbertFactorization left_space = psi.space().subset(left);
  const HilbertFactorization right_space = psi.space().without(left);
  std::vector<std::string> order = left;
  const auto rest = right_space.labels();
  order.insert(order.end(), rest.begin(), rest.end());
  const Vector v = permute_rows(psi.amplitudes(), psi.space(), order);

  const auto dl = static_cast<Eigen::Index>(left_space.total_dim());
  const auto dr = static_cast<Eigen::Index>(right_space.total_dim());
  // Row-major amplitude index (l, r) -> matrix entry (l, r).
  Matrix coeffs(dl, dr);
  for (Eigen::Index l = 0; l < dl; ++l)
    for (Eigen::Index r = 0; r < dr; ++r) coeffs(l, r) = v(l * dr + r);

  Eigen::JacobiSVD<Matrix> svd(coeffs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) * s(rank) > tol::eigenvalue_clip) ++rank;

  SchmidtDecomposition out;
  out.coefficients = s.head(rank);
  out.left = svd.matrixU().leftCols(rank);
  out.right = svd.matrixV().leftCols(rank).conjugate();
  out.left_space = left_space;
  out.right_space = right_space;
  return out;
}

}  // namespace arealaw
