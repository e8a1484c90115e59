#include "gcm/factorization.hpp"

#include <algorithm>
#include <cmath>

#include "gcm/diff_ops.hpp"
#include "gcm/error.hpp"

namespace gcm {

MembershipReport check_markov(const TabularFunction& f, const UndirectedGraph& g, double tol,
                              MembershipMode mode) {
  const std::size_t n = f.domain().num_variables();
  if (g.num_nodes() != n) {
    throw InputError("graph has " + std::to_string(g.num_nodes()) + " nodes, function has " +
                     std::to_string(n) + " variables");
  }
  MembershipReport report;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j)) continue;
      const double m = second_difference(f, {i}, {j}).max_abs();
      if (m > tol) report.violations.push_back({{i}, {j}, m});
    }
  }
  report.member = report.violations.empty();

  if (mode == MembershipMode::Exhaustive) {
    if (n > 12) throw GuardExceeded("exhaustive separation check limited to 12 variables");
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t a = 1; a <= full; ++a) {
      const std::uint64_t rest = full & ~a;
      // b ranges over nonempty subsets of the complement; a < b avoids
      // visiting each unordered pair twice.
      for (std::uint64_t b = rest; b != 0; b = (b - 1) & rest) {
        if (b < a) continue;
        const auto A = VariableSubset::from_mask(a);
        const auto B = VariableSubset::from_mask(b);
        const auto D = VariableSubset::from_mask(full & ~(a | b));
        if (!separates(g, A, B, D)) continue;
        const double m = second_difference(f, A, B).max_abs();
        if (m > tol) report.separated_violations.push_back({A, B, m});
      }
    }
    report.exhaustive_member = report.separated_violations.empty();
    report.member = report.member && report.exhaustive_member;
  }
  return report;
}

bool markov_membership(const TabularFunction& f, const UndirectedGraph& g, double tol) {
  return check_markov(f, g, tol).member;
}

namespace {

// Applies, variable by variable, v(y) <- v(y) - v(x0) for y != x0. The
// result at cell x is g_{S(x)}(x_{S(x)}) with S(x) = {i : x_i != x0_i}.
std::vector<double> interaction_transform(const TabularFunction& f, const BasePoint& x0) {
  const auto& dom = f.domain();
  std::vector<double> t(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < dom.num_variables(); ++i) {
    const VariableSubset Ai{i};
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (dom.coordinate(k, i) != x0[i]) t[k] -= t[dom.substitute_index(k, Ai, x0)];
    }
  }
  return t;
}

VariableSubset support_set(const CategoricalDomain& dom, std::size_t flat, const BasePoint& x0) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < dom.num_variables(); ++i) {
    if (dom.coordinate(flat, i) != x0[i]) s.push_back(i);
  }
  return VariableSubset(std::move(s));
}

std::vector<double> term_from_transform(const CategoricalDomain& dom, const std::vector<double>& t,
                                        const VariableSubset& A, const BasePoint& x0) {
  std::vector<double> local(dom.subset_size(A), 0.0);
  for (std::size_t l = 0; l < local.size(); ++l) {
    const std::size_t flat = dom.embed(l, A, x0);
    bool off_base = true;
    for (auto i : A) off_base = off_base && dom.coordinate(flat, i) != x0[i];
    if (off_base) local[l] = t[flat];
  }
  return local;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

CliqueFactorization decompose_impl(const TabularFunction& f, const BasePoint& x0,
                                   const DecomposeOptions& options, const UndirectedGraph* g) {
  const auto& dom = f.domain();
  const std::size_t n = dom.num_variables();
  if (n > kMaxDecomposeVariables) {
    throw GuardExceeded("decomposition limited to " + std::to_string(kMaxDecomposeVariables) +
                        " variables");
  }
  dom.validate(x0);
  const auto t = interaction_transform(f, x0);
  CliqueFactorization fac{dom, x0, {}};

  auto admissible = [&](const VariableSubset& A) { return g == nullptr || is_complete(*g, A); };

  if (options.prune) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (std::abs(t[k]) <= options.prune_threshold) continue;
      auto A = support_set(dom, k, x0);
      if (fac.terms.count(A) || !admissible(A)) continue;
      fac.terms.emplace(A, term_from_transform(dom, t, A, x0));
    }
  } else {
    std::size_t cells = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      cells += dom.subset_size(VariableSubset::from_mask(m));
      if (cells > 50'000'000) throw GuardExceeded("raw decomposition too large");
    }
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      auto A = VariableSubset::from_mask(m);
      if (!admissible(A)) continue;
      fac.terms.emplace(A, term_from_transform(dom, t, A, x0));
    }
  }
  if (options.prune) {
    std::erase_if(fac.terms, [&](const auto& kv) {
      return max_abs(kv.second) <= options.prune_threshold;
    });
  }
  return fac;
}

}  // namespace

CliqueFactorization mobius_decompose(const TabularFunction& f, const BasePoint& x0,
                                     const DecomposeOptions& options) {
  return decompose_impl(f, x0, options, nullptr);
}

CliqueFactorization mobius_decompose(const TabularFunction& f, const DecomposeOptions& options) {
  return decompose_impl(f, default_base(f.domain()), options, nullptr);
}

CliqueFactorization clique_decompose(const TabularFunction& f, const UndirectedGraph& g,
                                     const BasePoint& x0, const DecomposeOptions& options) {
  if (g.num_nodes() != f.domain().num_variables()) {
    throw InputError("graph and function disagree on the number of variables");
  }
  return decompose_impl(f, x0, options, &g);
}

TabularFunction reconstruct(const CliqueFactorization& fac) {
  const auto& dom = fac.domain;
  std::vector<double> v(dom.size(), 0.0);
  for (const auto& [A, local] : fac.terms) {
    A.validate(dom.num_variables());
    if (local.size() != dom.subset_size(A)) {
      throw InputError("term " + A.to_string() + " has the wrong number of values");
    }
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += local[dom.project(k, A)];
  }
  return TabularFunction(dom, std::move(v));
}

}  // namespace gcm
