#pragma once

#include "gcm/tabular.hpp"

namespace gcm {

/// All-zero-index base point. Every "== 0" predicate built on the
/// difference operators is independent of the base point, so this is the
/// default center throughout.
BasePoint default_base(const CategoricalDomain& domain);

/// (Delta_A f)(x) = f(x) - f(x0_A, x_{-A}). Vanishes on the slice x_A = x0_A.
TabularFunction first_difference(const TabularFunction& f, const VariableSubset& A,
                                 const BasePoint& x0);
TabularFunction first_difference(const TabularFunction& f, const VariableSubset& A);

/// Delta_A Delta_B f via the closed form
///   f(x) + f(x0_{A u B}, x_{-(A u B)}) - f(x0_A, x_{-A}) - f(x0_B, x_{-B}).
/// A and B may overlap; for A == B this reduces to Delta_A f.
TabularFunction second_difference(const TabularFunction& f, const VariableSubset& A,
                                  const VariableSubset& B, const BasePoint& x0);
TabularFunction second_difference(const TabularFunction& f, const VariableSubset& A,
                                  const VariableSubset& B);

/// max_x |f(x)| <= tol.
bool is_zero(const TabularFunction& f, double tol = kDefaultTolerance);

/// Delta^{x1}_A f - Delta^{x0}_A f. The result is cross-checked against the
/// recentering identity Delta^{x1}_A f(x0_A, x_{-A}); a mismatch beyond
/// rounding throws InconsistencyError.
TabularFunction recenter_correction(const TabularFunction& f, const VariableSubset& A,
                                    const BasePoint& x0, const BasePoint& x1);

}  // namespace gcm
