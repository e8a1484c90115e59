#pragma once

#include <optional>

#include "gcm/graph.hpp"
#include "gcm/tabular.hpp"

namespace gcm {

enum class Support {
  /// Every cell > 0 (a generative classifier proper).
  Strict,
  /// Zeros allowed: limits of strictly positive classifiers.
  Extended,
};

/// Joint probability table over X x {-1, +1}, stored as the two slices
/// p(x, +1) and p(x, -1). Entries sum to 1 within 1e-12.
class GenerativeClassifier {
 public:
  GenerativeClassifier(TabularFunction p_plus, TabularFunction p_minus,
                       Support support = Support::Strict);

  /// Divides both slices by their joint total first.
  static GenerativeClassifier normalized(const TabularFunction& w_plus,
                                         const TabularFunction& w_minus,
                                         Support support = Support::Strict);

  const CategoricalDomain& domain() const { return p_plus_.domain(); }
  const TabularFunction& p_plus() const { return p_plus_; }
  const TabularFunction& p_minus() const { return p_minus_; }
  double p(std::size_t flat, int c) const { return c > 0 ? p_plus_[flat] : p_minus_[flat]; }
  /// P(X = x) = p(x, +1) + p(x, -1).
  TabularFunction predictor_marginal() const;
  bool strictly_positive() const;

 private:
  TabularFunction p_plus_;
  TabularFunction p_minus_;
};

/// f_P(x) = ln(p(x, +1) / p(x, -1)). Throws PositivityError on any zero.
TabularFunction discrimination(const GenerativeClassifier& P);

/// max |f_P(x) - f(x)| over cells where both p(x, +1) and p(x, -1) are
/// positive. Cells with exactly one zero slice count as infinite deviation.
double discrimination_deviation(const GenerativeClassifier& P, const TabularFunction& f);

/// +1 iff p(x, +1) >= p(x, -1).
int decide(const GenerativeClassifier& P, const Assignment& x);

struct CiReport {
  bool independent = false;
  /// max over classes and quadruples of |p p' - p'' p'''| / max(p p', p'' p''').
  double toric_residual = 0.0;
  /// max over classes of ||Delta_A Delta_B ln p(., c)||_inf; absent when some
  /// entry is zero.
  std::optional<double> differential_residual;
  /// Zero entries forced the toric criterion alone.
  bool toric_only = false;
};

/// X_A independent of X_B given (X_{-(A u B)}, C), evaluated by the toric
/// equations and (when p > 0) by the log-difference criterion. The two
/// residuals are tied by r_toric = 1 - exp(-r_diff); a mismatch beyond tol
/// throws InconsistencyError.
CiReport check_ci_report(const GenerativeClassifier& P, const VariableSubset& A,
                         const VariableSubset& B, double tol = kDefaultTolerance);
bool check_ci(const GenerativeClassifier& P, const VariableSubset& A, const VariableSubset& B,
              double tol = kDefaultTolerance);

struct MarkovCiReport {
  bool markov = true;
  /// Non-adjacent pairs whose conditional independence fails.
  std::vector<std::pair<std::size_t, std::size_t>> violations;
};

MarkovCiReport verify_g_markov(const GenerativeClassifier& P, const UndirectedGraph& g,
                               double tol = kDefaultTolerance);
bool is_g_markov(const GenerativeClassifier& P, const UndirectedGraph& g,
                 double tol = kDefaultTolerance);

/// p(x, c) proportional to exp(g(x) + (c/2) f(x)); g defaults to 0. Both f
/// and g must lie in F_G within 1e-9 (MembershipError otherwise). Exponents
/// are max-shifted before exponentiation, so the normalizing constant is
/// never formed. Cells more than ~745 below the largest exponent underflow
/// to 0, and the result then carries Support::Extended.
GenerativeClassifier build_from_discrimination(const TabularFunction& f,
                                               const std::optional<TabularFunction>& g,
                                               const UndirectedGraph& graph);

}  // namespace gcm
