#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace gcm {

/// Absolute tolerance used by predicates on real-valued tables unless the
/// caller supplies one.
inline constexpr double kDefaultTolerance = 1e-9;

/// Sorted, duplicate-free set of predictor indices (0-based).
class VariableSubset {
 public:
  VariableSubset() = default;
  VariableSubset(std::initializer_list<std::size_t> indices);
  /// Sorts the input; throws InputError on duplicates.
  explicit VariableSubset(std::vector<std::size_t> indices);

  static VariableSubset all(std::size_t n);
  /// Bit i of `mask` selects index i.
  static VariableSubset from_mask(std::uint64_t mask);

  std::uint64_t mask() const;
  VariableSubset complement(std::size_t n) const;
  VariableSubset unite(const VariableSubset& other) const;
  VariableSubset intersect(const VariableSubset& other) const;
  VariableSubset minus(const VariableSubset& other) const;

  bool contains(std::size_t index) const;
  bool is_subset_of(const VariableSubset& other) const;
  bool is_disjoint(const VariableSubset& other) const;
  /// Throws InputError unless every index is < n.
  void validate(std::size_t n) const;

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  std::size_t operator[](std::size_t k) const { return indices_[k]; }
  const std::vector<std::size_t>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  friend bool operator==(const VariableSubset&, const VariableSubset&) = default;
  /// Lexicographic on the sorted member lists.
  friend auto operator<=>(const VariableSubset&, const VariableSubset&) = default;

  std::string to_string() const;

 private:
  std::vector<std::size_t> indices_;
};

/// One category index per predictor.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::size_t> values) : values_(values) {}
  explicit Assignment(std::vector<std::size_t> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  std::size_t operator[](std::size_t i) const { return values_[i]; }
  std::size_t& operator[](std::size_t i) { return values_[i]; }
  const std::vector<std::size_t>& values() const { return values_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::size_t> values_;
};

/// Center of a difference operator. The all-zero assignment is the default.
using BasePoint = Assignment;

/// The finite product space of the predictors.
///
/// Cells are laid out row-major with the LAST variable varying fastest:
/// stride[n-1] = 1, stride[i] = stride[i+1] * |X_{i+1}|. Every serialized
/// table uses this order. Cardinality-1 variables are allowed and vacuous.
class CategoricalDomain {
 public:
  explicit CategoricalDomain(std::vector<std::size_t> cardinalities,
                             std::vector<std::vector<std::string>> labels = {});

  std::size_t num_variables() const { return cardinalities_.size(); }
  std::size_t cardinality(std::size_t i) const { return cardinalities_[i]; }
  const std::vector<std::size_t>& cardinalities() const { return cardinalities_; }
  std::size_t size() const { return size_; }
  std::size_t stride(std::size_t i) const { return strides_[i]; }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::vector<std::string>>& labels() const { return labels_; }

  std::size_t flat_index(const Assignment& x) const;
  Assignment unindex(std::size_t flat) const;
  void validate(const Assignment& x) const;

  std::size_t coordinate(std::size_t flat, std::size_t var) const {
    return (flat / strides_[var]) % cardinalities_[var];
  }

  /// Flat index of (x0_A, x_{-A}): the coordinates in A replaced by those of
  /// `base` (a full assignment).
  std::size_t substitute_index(std::size_t flat, const VariableSubset& A,
                               const Assignment& base) const;

  /// |X_A|; 1 for the empty set.
  std::size_t subset_size(const VariableSubset& A) const;
  /// Row-major index of x_A inside X_A (variables of A in increasing order).
  std::size_t project(std::size_t flat, const VariableSubset& A) const;
  /// Flat index of the cell whose A-coordinates are those encoded by
  /// `local` (an index into X_A) and whose other coordinates come from `base`.
  std::size_t embed(std::size_t local, const VariableSubset& A, const Assignment& base) const;
  /// The domain X_A. Requires A nonempty.
  CategoricalDomain restrict_to(const VariableSubset& A) const;

  /// Structural equality: labels are presentation only.
  friend bool operator==(const CategoricalDomain& a, const CategoricalDomain& b) {
    return a.cardinalities_ == b.cardinalities_;
  }

 private:
  std::vector<std::size_t> cardinalities_;
  std::vector<std::size_t> strides_;
  std::vector<std::vector<std::string>> labels_;
  std::size_t size_ = 1;
};

/// Dense real-valued function on a CategoricalDomain. Values are finite and
/// immutable after construction.
class TabularFunction {
 public:
  TabularFunction(CategoricalDomain domain, std::vector<double> values);

  static TabularFunction zeros(const CategoricalDomain& domain);
  static TabularFunction constant(const CategoricalDomain& domain, double value);
  static TabularFunction tabulate(const CategoricalDomain& domain,
                                  const std::function<double(const Assignment&)>& fn);

  const CategoricalDomain& domain() const { return domain_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t flat) const { return values_[flat]; }
  double at(const Assignment& x) const { return values_[domain_.flat_index(x)]; }
  double max_abs() const;

  friend TabularFunction operator+(const TabularFunction& a, const TabularFunction& b);
  friend TabularFunction operator-(const TabularFunction& a, const TabularFunction& b);
  friend TabularFunction operator*(double s, const TabularFunction& a);
  TabularFunction operator-() const { return -1.0 * *this; }

  /// Exact cell-by-cell comparison on identical domains.
  friend bool operator==(const TabularFunction& a, const TabularFunction& b) {
    return a.domain_ == b.domain_ && a.values_ == b.values_;
  }

 private:
  CategoricalDomain domain_;
  std::vector<double> values_;
};

void require_same_domain(const CategoricalDomain& a, const CategoricalDomain& b);

double max_abs_difference(const TabularFunction& a, const TabularFunction& b);
bool approx_equal(const TabularFunction& a, const TabularFunction& b,
                  double tol = kDefaultTolerance);

/// g(x) = f(x0_A, x_{-A}). `x0_A` has one category per member of A, in
/// increasing variable order.
TabularFunction substitute(const TabularFunction& f, const VariableSubset& A,
                           std::span<const std::size_t> x0_A);

/// Membership in F_A: within each fiber {x : x_A fixed}, max - min <= tol.
bool depends_only_on(const TabularFunction& f, const VariableSubset& A,
                     double tol = kDefaultTolerance);

/// Extends a table over X_A (row-major over A) to the full domain.
TabularFunction broadcast(const CategoricalDomain& domain, const VariableSubset& A,
                          std::span<const double> local);

}  // namespace gcm
