#include "arealaw/core/factorization.hpp"

#include <algorithm>
#include <unordered_set>

#include "arealaw/core/errors.hpp"

namespace arealaw {

HilbertFactorization::HilbertFactorization(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::unordered_set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim == 0) throw DimensionError("factor '" + f.label + "' has dimension 0");
    if (!seen.insert(f.label).second) throw LabelError("duplicate label '" + f.label + "'");
    total_dim_ *= f.dim;
  }
}

bool HilbertFactorization::contains(const std::string& label) const {
  return std::any_of(factors_.begin(), factors_.end(), [&](const Factor& f) { return f.label == label; });
}

std::size_t HilbertFactorization::position(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label == label) return i;
  throw LabelError("unknown label '" + label + "'");
}

std::size_t HilbertFactorization::dim(const std::string& label) const { return factors_[position(label)].dim; }

std::vector<std::string> HilbertFactorization::labels() const {
  std::vector<std::string> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.label);
  return out;
}

std::vector<std::size_t> HilbertFactorization::dims() const {
  std::vector<std::size_t> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.dim);
  return out;
}

HilbertFactorization HilbertFactorization::subset(std::span<const std::string> labels) const {
  std::vector<Factor> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(factors_[position(l)]);
  return HilbertFactorization(std::move(out));
}

HilbertFactorization HilbertFactorization::without(std::span<const std::string> labels) const {
  for (const auto& l : labels) (void)position(l);
  std::vector<Factor> out;
  for (const auto& f : factors_)
    if (std::find(labels.begin(), labels.end(), f.label) == labels.end()) out.push_back(f);
  return HilbertFactorization(std::move(out));
}

std::size_t HilbertFactorization::dim_of(std::span<const std::string> labels) const {
  std::size_t d = 1;
  for (const auto& l : labels) d *= dim(l);
  return d;
}

HilbertFactorization HilbertFactorization::concat(const HilbertFactorization& other) const {
  std::vector<Factor> out = factors_;
  for (const auto& f : other.factors_) {
    if (contains(f.label)) throw LabelError("label collision on '" + f.label + "'");
    out.push_back(f);
  }
  return HilbertFactorization(std::move(out));
}

HilbertFactorization uniform_factorization(const std::string& prefix, std::size_t count, std::size_t dim) {
  std::vector<Factor> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back({prefix + std::to_string(i), dim});
  return HilbertFactorization(std::move(out));
}

}  // namespace arealaw
