#include "gcm/tabular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "gcm/error.hpp"

namespace gcm {

// ---- VariableSubset --------------------------------------------------------

VariableSubset::VariableSubset(std::initializer_list<std::size_t> indices)
    : VariableSubset(std::vector<std::size_t>(indices)) {}

VariableSubset::VariableSubset(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InputError("variable subset contains duplicate index");
  }
}

VariableSubset VariableSubset::all(std::size_t n) {
  VariableSubset s;
  s.indices_.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.indices_[i] = i;
  return s;
}

VariableSubset VariableSubset::from_mask(std::uint64_t mask) {
  VariableSubset s;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) s.indices_.push_back(i);
  }
  return s;
}

std::uint64_t VariableSubset::mask() const {
  std::uint64_t m = 0;
  for (auto i : indices_) {
    if (i >= 64) throw InputError("variable index too large for a bit mask");
    m |= std::uint64_t{1} << i;
  }
  return m;
}

VariableSubset VariableSubset::complement(std::size_t n) const {
  VariableSubset s;
  for (std::size_t i = 0; i < n; ++i) {
    if (!contains(i)) s.indices_.push_back(i);
  }
  return s;
}

VariableSubset VariableSubset::unite(const VariableSubset& other) const {
  VariableSubset s;
  std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(s.indices_));
  return s;
}

VariableSubset VariableSubset::intersect(const VariableSubset& other) const {
  VariableSubset s;
  std::set_intersection(begin(), end(), other.begin(), other.end(),
                        std::back_inserter(s.indices_));
  return s;
}

VariableSubset VariableSubset::minus(const VariableSubset& other) const {
  VariableSubset s;
  std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(s.indices_));
  return s;
}

bool VariableSubset::contains(std::size_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool VariableSubset::is_subset_of(const VariableSubset& other) const {
  return std::includes(other.begin(), other.end(), begin(), end());
}

bool VariableSubset::is_disjoint(const VariableSubset& other) const {
  return intersect(other).empty();
}

void VariableSubset::validate(std::size_t n) const {
  if (!indices_.empty() && indices_.back() >= n) {
    throw InputError("variable index " + std::to_string(indices_.back()) +
                     " out of range for " + std::to_string(n) + " variables");
  }
}

std::string VariableSubset::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < indices_.size(); ++k) os << (k ? "," : "") << indices_[k];
  os << '}';
  return os.str();
}

// ---- CategoricalDomain -----------------------------------------------------

CategoricalDomain::CategoricalDomain(std::vector<std::size_t> cardinalities,
                                     std::vector<std::vector<std::string>> labels)
    : cardinalities_(std::move(cardinalities)), labels_(std::move(labels)) {
  if (cardinalities_.empty()) throw InputError("domain needs at least one variable");
  const std::size_t n = cardinalities_.size();
  strides_.assign(n, 1);
  size_ = 1;
  for (std::size_t k = n; k-- > 0;) {
    if (cardinalities_[k] == 0) throw InputError("cardinality must be positive");
    strides_[k] = size_;
    if (size_ > std::numeric_limits<std::size_t>::max() / cardinalities_[k]) {
      throw InputError("domain size overflows the index range");
    }
    size_ *= cardinalities_[k];
  }
  if (!labels_.empty()) {
    if (labels_.size() != n) throw InputError("labels must be given for every variable");
    for (std::size_t i = 0; i < n; ++i) {
      if (labels_[i].size() != cardinalities_[i]) {
        throw InputError("label count of variable " + std::to_string(i) +
                         " does not match its cardinality");
      }
      std::set<std::string> distinct(labels_[i].begin(), labels_[i].end());
      if (distinct.size() != labels_[i].size()) {
        throw InputError("duplicate category label for variable " + std::to_string(i));
      }
    }
  }
}

void CategoricalDomain::validate(const Assignment& x) const {
  if (x.size() != num_variables()) {
    throw InputError("assignment has " + std::to_string(x.size()) + " values, domain has " +
                     std::to_string(num_variables()) + " variables");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= cardinalities_[i]) {
      throw InputError("category " + std::to_string(x[i]) + " out of range for variable " +
                       std::to_string(i));
    }
  }
}

std::size_t CategoricalDomain::flat_index(const Assignment& x) const {
  validate(x);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) idx += x[i] * strides_[i];
  return idx;
}

Assignment CategoricalDomain::unindex(std::size_t flat) const {
  if (flat >= size_) throw InputError("flat index out of range");
  std::vector<std::size_t> v(num_variables());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coordinate(flat, i);
  return Assignment(std::move(v));
}

std::size_t CategoricalDomain::substitute_index(std::size_t flat, const VariableSubset& A,
                                                const Assignment& base) const {
  for (auto i : A) {
    const std::size_t xi = coordinate(flat, i);
    flat = flat - xi * strides_[i] + base[i] * strides_[i];
  }
  return flat;
}

std::size_t CategoricalDomain::subset_size(const VariableSubset& A) const {
  std::size_t s = 1;
  for (auto i : A) s *= cardinalities_[i];
  return s;
}

std::size_t CategoricalDomain::project(std::size_t flat, const VariableSubset& A) const {
  std::size_t local = 0;
  for (auto i : A) local = local * cardinalities_[i] + coordinate(flat, i);
  return local;
}

std::size_t CategoricalDomain::embed(std::size_t local, const VariableSubset& A,
                                     const Assignment& base) const {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < num_variables(); ++i) flat += base[i] * strides_[i];
  for (std::size_t k = A.size(); k-- > 0;) {
    const std::size_t i = A[k];
    const std::size_t xi = local % cardinalities_[i];
    local /= cardinalities_[i];
    flat = flat - base[i] * strides_[i] + xi * strides_[i];
  }
  return flat;
}

CategoricalDomain CategoricalDomain::restrict_to(const VariableSubset& A) const {
  A.validate(num_variables());
  std::vector<std::size_t> cards;
  std::vector<std::vector<std::string>> labels;
  for (auto i : A) {
    cards.push_back(cardinalities_[i]);
    if (has_labels()) labels.push_back(labels_[i]);
  }
  return CategoricalDomain(std::move(cards), std::move(labels));
}

// ---- TabularFunction -------------------------------------------------------

TabularFunction::TabularFunction(CategoricalDomain domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.size()) {
    throw InputError("table has " + std::to_string(values_.size()) + " values, domain has " +
                     std::to_string(domain_.size()) + " cells");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw InputError("non-finite table value at cell " + std::to_string(k));
    }
  }
}

TabularFunction TabularFunction::zeros(const CategoricalDomain& domain) {
  return constant(domain, 0.0);
}

TabularFunction TabularFunction::constant(const CategoricalDomain& domain, double value) {
  return TabularFunction(domain, std::vector<double>(domain.size(), value));
}

TabularFunction TabularFunction::tabulate(const CategoricalDomain& domain,
                                          const std::function<double(const Assignment&)>& fn) {
  std::vector<double> v(domain.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = fn(domain.unindex(k));
  return TabularFunction(domain, std::move(v));
}

double TabularFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void require_same_domain(const CategoricalDomain& a, const CategoricalDomain& b) {
  if (!(a == b)) throw InputError("tables are defined on different domains");
}

TabularFunction operator+(const TabularFunction& a, const TabularFunction& b) {
  require_same_domain(a.domain_, b.domain_);
  std::vector<double> v(a.values_);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += b.values_[k];
  return TabularFunction(a.domain_, std::move(v));
}

TabularFunction operator-(const TabularFunction& a, const TabularFunction& b) {
  require_same_domain(a.domain_, b.domain_);
  std::vector<double> v(a.values_);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] -= b.values_[k];
  return TabularFunction(a.domain_, std::move(v));
}

TabularFunction operator*(double s, const TabularFunction& a) {
  std::vector<double> v(a.values_);
  for (double& x : v) x *= s;
  return TabularFunction(a.domain_, std::move(v));
}

double max_abs_difference(const TabularFunction& a, const TabularFunction& b) {
  require_same_domain(a.domain(), b.domain());
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

bool approx_equal(const TabularFunction& a, const TabularFunction& b, double tol) {
  return max_abs_difference(a, b) <= tol;
}

TabularFunction substitute(const TabularFunction& f, const VariableSubset& A,
                           std::span<const std::size_t> x0_A) {
  const auto& dom = f.domain();
  A.validate(dom.num_variables());
  if (x0_A.size() != A.size()) {
    throw InputError("substitution needs one category per substituted variable");
  }
  Assignment base(std::vector<std::size_t>(dom.num_variables(), 0));
  for (std::size_t k = 0; k < A.size(); ++k) {
    if (x0_A[k] >= dom.cardinality(A[k])) {
      throw InputError("substituted category " + std::to_string(x0_A[k]) +
                       " out of range for variable " + std::to_string(A[k]));
    }
    base[A[k]] = x0_A[k];
  }
  std::vector<double> v(f.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f[dom.substitute_index(k, A, base)];
  return TabularFunction(dom, std::move(v));
}

bool depends_only_on(const TabularFunction& f, const VariableSubset& A, double tol) {
  const auto& dom = f.domain();
  A.validate(dom.num_variables());
  const std::size_t fibers = dom.subset_size(A);
  std::vector<double> lo(fibers, std::numeric_limits<double>::infinity());
  std::vector<double> hi(fibers, -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const std::size_t p = dom.project(k, A);
    lo[p] = std::min(lo[p], f[k]);
    hi[p] = std::max(hi[p], f[k]);
  }
  for (std::size_t p = 0; p < fibers; ++p) {
    if (hi[p] - lo[p] > tol) return false;
  }
  return true;
}

TabularFunction broadcast(const CategoricalDomain& domain, const VariableSubset& A,
                          std::span<const double> local) {
  A.validate(domain.num_variables());
  if (local.size() != domain.subset_size(A)) {
    throw InputError("local table size does not match |X_A|");
  }
  std::vector<double> v(domain.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = local[domain.project(k, A)];
  return TabularFunction(domain, std::move(v));
}

}  // namespace gcm
