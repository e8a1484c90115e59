#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gcm/graph.hpp"
#include "gcm/tabular.hpp"

namespace gcm {

using BigInt = boost::multiprecision::cpp_int;

/// A binary classifier phi: X -> {-1, +1}.
class DecisionFunction {
 public:
  /// Throws InputError on entries outside {-1, +1}.
  DecisionFunction(CategoricalDomain domain, std::vector<int> signs);

  const CategoricalDomain& domain() const { return domain_; }
  const std::vector<int>& signs() const { return signs_; }
  int operator[](std::size_t flat) const { return signs_[flat]; }
  int at(const Assignment& x) const { return signs_[domain_.flat_index(x)]; }

  friend bool operator==(const DecisionFunction& a, const DecisionFunction& b) {
    return a.domain_ == b.domain_ && a.signs_ == b.signs_;
  }

 private:
  CategoricalDomain domain_;
  std::vector<int> signs_;
};

/// Entrywise sign with sign(0) := +1, the same tie convention as decide().
DecisionFunction sign_of(const TabularFunction& f);

/// phi(x_A, context) = prod_{i in A} (-1)^[x_i == dotted_i] on the grid
/// x_A in prod_i {dotted_i, ddotted_i}.
struct XorWitness {
  VariableSubset vars;
  /// Values of the variables outside `vars`, in increasing variable order.
  std::vector<std::size_t> context;
  /// (dotted, ddotted) per member of `vars`; the two always differ.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Independent re-check of every corner of the witness grid.
bool verify_xor_witness(const DecisionFunction& phi, const XorWitness& w);

inline constexpr std::uint64_t kMaxXorSearch = 100'000'000;

/// Exhaustive search: contexts in flat-index order, then ordered category
/// pairs in lexicographic order per variable; the first match is returned.
/// Throws GuardExceeded when contexts x ordered pair combinations > 1e8.
std::optional<XorWitness> contains_xor(const DecisionFunction& phi, const VariableSubset& A);

/// Every nonempty A with |A| <= max_order for which phi contains an A-XOR,
/// ordered by size then lexicographically. The result is checked to be
/// closed under taking nonempty subsets.
std::vector<XorWitness> xor_scan(const DecisionFunction& phi, std::size_t max_order);

/// Cap on cells x columns of the clique indicator matrix.
inline constexpr std::uint64_t kMaxIndicatorEntries = 50'000'000;

/// The 0/1 matrix with one row per cell of X and one column per (clique,
/// clique configuration). Its column span is F_G.
std::vector<std::vector<std::int64_t>> clique_indicator_matrix(const UndirectedGraph& g,
                                                               const CategoricalDomain& domain);

/// dim(F_G) as the exact rank of clique_indicator_matrix.
std::size_t dim_fg(const UndirectedGraph& g, const CategoricalDomain& domain);

/// 2 * sum_{k=0}^{d-1} C(cells - 1, k).
BigInt sign_count_bound(std::size_t d, std::size_t cells);

/// Upper bound on |sign(F_G)| with d = dim_fg(g, domain).
BigInt bound_sign_count(const UndirectedGraph& g, const CategoricalDomain& domain);

}  // namespace gcm
