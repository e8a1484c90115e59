#include "gcm/complexity.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "gcm/error.hpp"
#include "gcm/exact_rank.hpp"

namespace gcm {

DecisionFunction::DecisionFunction(CategoricalDomain domain, std::vector<int> signs)
    : domain_(std::move(domain)), signs_(std::move(signs)) {
  if (signs_.size() != domain_.size()) {
    throw InputError("decision function has " + std::to_string(signs_.size()) +
                     " entries, domain has " + std::to_string(domain_.size()) + " cells");
  }
  for (std::size_t k = 0; k < signs_.size(); ++k) {
    if (signs_[k] != 1 && signs_[k] != -1) {
      throw InputError("decision value at cell " + std::to_string(k) + " is not +1 or -1");
    }
  }
}

DecisionFunction sign_of(const TabularFunction& f) {
  std::vector<int> s(f.size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = f[k] < 0.0 ? -1 : 1;
  return DecisionFunction(f.domain(), std::move(s));
}

namespace {

using PairList = std::vector<std::pair<std::size_t, std::size_t>>;

PairList ordered_pairs(std::size_t card) {
  PairList out;
  for (std::size_t a = 0; a < card; ++a) {
    for (std::size_t b = 0; b < card; ++b) {
      if (a != b) out.emplace_back(a, b);
    }
  }
  return out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return UINT64_MAX;
  return r;
}

// Checks the parity pattern on the grid spanned by `chosen` at the cell
// `base` (whose A-coordinates are overwritten).
bool parity_holds(const DecisionFunction& phi, const VariableSubset& A, const PairList& chosen,
                  std::size_t base) {
  const auto& dom = phi.domain();
  for (std::uint64_t corner = 0; corner < (std::uint64_t{1} << A.size()); ++corner) {
    std::size_t flat = base;
    for (std::size_t j = 0; j < A.size(); ++j) {
      const std::size_t i = A[j];
      const std::size_t v = (corner >> j) & 1U ? chosen[j].first : chosen[j].second;
      flat = flat - dom.coordinate(flat, i) * dom.stride(i) + v * dom.stride(i);
    }
    const int expected = std::popcount(corner) % 2 == 0 ? 1 : -1;
    if (phi[flat] != expected) return false;
  }
  return true;
}

}  // namespace

bool verify_xor_witness(const DecisionFunction& phi, const XorWitness& w) {
  const auto& dom = phi.domain();
  const std::size_t n = dom.num_variables();
  w.vars.validate(n);
  const auto rest = w.vars.complement(n);
  if (w.vars.empty() || w.pairs.size() != w.vars.size() || w.context.size() != rest.size()) {
    return false;
  }
  std::vector<std::size_t> x(n, 0);
  for (std::size_t k = 0; k < rest.size(); ++k) {
    if (w.context[k] >= dom.cardinality(rest[k])) return false;
    x[rest[k]] = w.context[k];
  }
  for (std::size_t j = 0; j < w.vars.size(); ++j) {
    const auto [dot, ddot] = w.pairs[j];
    const std::size_t card = dom.cardinality(w.vars[j]);
    if (dot == ddot || dot >= card || ddot >= card) return false;
  }
  // Product over A of (-1)^[x_i == dotted_i], corner by corner.
  for (std::uint64_t corner = 0; corner < (std::uint64_t{1} << w.vars.size()); ++corner) {
    int expected = 1;
    for (std::size_t j = 0; j < w.vars.size(); ++j) {
      const bool dotted = (corner >> j) & 1U;
      x[w.vars[j]] = dotted ? w.pairs[j].first : w.pairs[j].second;
      if (dotted) expected = -expected;
    }
    if (phi.at(Assignment(x)) != expected) return false;
  }
  return true;
}

std::optional<XorWitness> contains_xor(const DecisionFunction& phi, const VariableSubset& A) {
  const auto& dom = phi.domain();
  const std::size_t n = dom.num_variables();
  A.validate(n);
  if (A.empty()) throw InputError("XOR search needs a nonempty variable set");
  const auto rest = A.complement(n);

  std::vector<PairList> pairs;
  std::uint64_t combos = 1;
  for (auto i : A) {
    pairs.push_back(ordered_pairs(dom.cardinality(i)));
    combos = saturating_mul(combos, pairs.back().size());
  }
  const std::uint64_t contexts = dom.subset_size(rest);
  if (saturating_mul(contexts, combos) > kMaxXorSearch) {
    throw GuardExceeded("XOR search space exceeds " + std::to_string(kMaxXorSearch));
  }
  if (combos == 0) return std::nullopt;

  const BasePoint zero(std::vector<std::size_t>(n, 0));
  PairList chosen(A.size());
  for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
    const std::size_t base = dom.embed(ctx, rest, zero);
    for (std::uint64_t c = 0; c < combos; ++c) {
      // Mixed radix with the first member of A most significant.
      std::uint64_t rem = c;
      for (std::size_t j = A.size(); j-- > 0;) {
        chosen[j] = pairs[j][rem % pairs[j].size()];
        rem /= pairs[j].size();
      }
      if (!parity_holds(phi, A, chosen, base)) continue;
      XorWitness w;
      w.vars = A;
      for (auto i : rest) w.context.push_back(dom.coordinate(base, i));
      w.pairs = chosen;
      if (!verify_xor_witness(phi, w)) throw InconsistencyError("XOR witness failed re-verification");
      return w;
    }
  }
  return std::nullopt;
}

namespace {

void subsets_of_size(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                     std::vector<VariableSubset>& out) {
  if (cur.size() == k) {
    out.emplace_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets_of_size(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<XorWitness> xor_scan(const DecisionFunction& phi, std::size_t max_order) {
  const std::size_t n = phi.domain().num_variables();
  if (max_order > n) throw InputError("max_order exceeds the number of variables");
  std::vector<XorWitness> found;
  std::set<VariableSubset> hits;
  for (std::size_t k = 1; k <= max_order; ++k) {
    std::vector<VariableSubset> subsets;
    std::vector<std::size_t> cur;
    subsets_of_size(n, k, 0, cur, subsets);
    for (const auto& A : subsets) {
      if (auto w = contains_xor(phi, A)) {
        hits.insert(A);
        found.push_back(std::move(*w));
      }
    }
  }
  for (const auto& A : hits) {
    if (A.size() < 2) continue;
    for (auto i : A) {
      if (!hits.count(A.minus({i}))) {
        throw InconsistencyError("XOR on " + A.to_string() + " without an XOR on " +
                                 A.minus({i}).to_string());
      }
    }
  }
  return found;
}

std::vector<std::vector<std::int64_t>> clique_indicator_matrix(const UndirectedGraph& g,
                                                               const CategoricalDomain& domain) {
  if (g.num_nodes() != domain.num_variables()) {
    throw InputError("graph has " + std::to_string(g.num_nodes()) + " nodes, domain has " +
                     std::to_string(domain.num_variables()) + " variables");
  }
  const auto cliques = maximal_cliques(g);
  std::uint64_t cols = 0;
  for (const auto& A : cliques) cols += domain.subset_size(A);
  if (saturating_mul(cols, domain.size()) > kMaxIndicatorEntries) {
    throw GuardExceeded("clique indicator matrix exceeds " + std::to_string(kMaxIndicatorEntries) +
                        " entries");
  }
  std::vector<std::vector<std::int64_t>> m(domain.size(), std::vector<std::int64_t>(cols, 0));
  std::size_t offset = 0;
  for (const auto& A : cliques) {
    for (std::size_t k = 0; k < domain.size(); ++k) m[k][offset + domain.project(k, A)] = 1;
    offset += domain.subset_size(A);
  }
  return m;
}

std::size_t dim_fg(const UndirectedGraph& g, const CategoricalDomain& domain) {
  return exact_rank(clique_indicator_matrix(g, domain));
}

BigInt sign_count_bound(std::size_t d, std::size_t cells) {
  if (cells == 0) throw InputError("empty domain");
  const BigInt m = cells - 1;
  BigInt binom = 1;
  BigInt sum = 0;
  for (std::size_t k = 0; k < d; ++k) {
    sum += binom;
    binom = binom * (m - k) / (k + 1);
  }
  return 2 * sum;
}

BigInt bound_sign_count(const UndirectedGraph& g, const CategoricalDomain& domain) {
  return sign_count_bound(dim_fg(g, domain), domain.size());
}

}  // namespace gcm
