#pragma once

#include <map>
#include <vector>

#include "gcm/graph.hpp"
#include "gcm/tabular.hpp"

namespace gcm {

/// f = sum_A g_A(x_A). Each term is a table over X_A in row-major order of
/// the members of A; the empty set maps to a single constant.
///
/// Terms produced by mobius_decompose vanish whenever any coordinate of x_A
/// equals the corresponding base-point coordinate.
struct CliqueFactorization {
  CategoricalDomain domain;
  BasePoint basepoint;
  std::map<VariableSubset, std::vector<double>> terms;
};

struct PairViolation {
  VariableSubset a;
  VariableSubset b;
  double max_abs = 0.0;
};

enum class MembershipMode {
  /// Delta_i Delta_j f == 0 for every non-adjacent pair {i, j}.
  Pairwise,
  /// Additionally every (A, B) separated by -(A u B). Exponential in n.
  Exhaustive,
};

struct MembershipReport {
  bool member = true;
  /// Violations of the pairwise criterion (one per offending pair).
  std::vector<PairViolation> violations;
  /// Exhaustive mode only: separated (A, B) pairs with nonzero second
  /// difference, and the verdict of that criterion alone.
  std::vector<PairViolation> separated_violations;
  bool exhaustive_member = true;
};

MembershipReport check_markov(const TabularFunction& f, const UndirectedGraph& g,
                              double tol = kDefaultTolerance,
                              MembershipMode mode = MembershipMode::Pairwise);

/// f in F_G, decided by the pairwise criterion.
bool markov_membership(const TabularFunction& f, const UndirectedGraph& g,
                       double tol = kDefaultTolerance);

struct DecomposeOptions {
  /// Drop terms with max |g_A| <= prune_threshold. With prune = false every
  /// one of the 2^n subsets is present.
  bool prune = true;
  double prune_threshold = 1e-12;
};

inline constexpr std::size_t kMaxDecomposeVariables = 20;

/// Moebius inversion of V_A(x_A) = f(x_A, x0_{-A}):
///   g_A(x_A) = sum_{B subset A} (-1)^{|A \ B|} V_B(x_B).
/// Throws GuardExceeded for n > 20.
CliqueFactorization mobius_decompose(const TabularFunction& f, const BasePoint& x0,
                                     const DecomposeOptions& options = {});
CliqueFactorization mobius_decompose(const TabularFunction& f,
                                     const DecomposeOptions& options = {});

/// Same terms, restricted to complete subsets of `g`. Only valid when the
/// caller knows f is in F_G; the dropped terms are then zero.
CliqueFactorization clique_decompose(const TabularFunction& f, const UndirectedGraph& g,
                                     const BasePoint& x0, const DecomposeOptions& options = {});

/// Pointwise sum of every term broadcast over the full domain.
TabularFunction reconstruct(const CliqueFactorization& fac);

}  // namespace gcm
