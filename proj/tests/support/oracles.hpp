#pragma once

// Test-only reference computations. They deliberately avoid the library's
// index helpers beyond flat_index/unindex so that agreement is meaningful.

#include <cstdint>
#include <vector>

#include "gcm/generative.hpp"
#include "gcm/graph.hpp"
#include "gcm/ipf.hpp"
#include "gcm/tabular.hpp"

namespace gcm::testing {

/// g_A(x_A) = sum_{B subset A} (-1)^{|A \ B|} f(x_B, x0_{-B}), summed
/// literally, one entry per x_A in row-major order over A.
std::vector<double> mobius_direct(const TabularFunction& f, const VariableSubset& A,
                                  const BasePoint& x0);

/// Max over c and cells of |p(a,b,d,c) p(d,c) - p(a,d,c) p(b,d,c)| with D the
/// remaining variables: zero iff X_A and X_B are independent given (X_D, C).
double ci_residual_bruteforce(const GenerativeClassifier& P, const VariableSubset& A,
                              const VariableSubset& B);

/// dim(F_G) for chordal g by the split recursion
///   dim(G_{A u D}) + dim(G_{B u D}) - |X_D|,
/// with each split found by brute-force search over complete separators.
/// Throws std::logic_error if g is not decomposable.
std::size_t decomposable_dim(const UndirectedGraph& g, const CategoricalDomain& dom);

/// Exact rational phase-one simplex (Bland's rule): is there w with
/// s_i * (M_i . w) >= 1 for every row i?
bool strictly_separable(const std::vector<std::vector<std::int64_t>>& M,
                        const std::vector<int>& s);

/// Number of sign vectors in {-1,+1}^rows achievable as sign(M w).
std::size_t achievable_sign_count(const std::vector<std::vector<std::int64_t>>& M);

/// Decomposable-graph maximum-likelihood joint over the predictors:
///   prod_C N(x_C) / prod_S N(x_S) / N
/// for a perfect sequence of cliques with their separators (S may be empty).
std::vector<double> closed_form_mle(const Dataset& data, const std::vector<VariableSubset>& cliques,
                                    const std::vector<VariableSubset>& separators);

/// N(x) / N over the predictors.
std::vector<double> empirical_joint(const Dataset& data);

}  // namespace gcm::testing
