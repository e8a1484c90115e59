#include "gcm/diff_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcm/error.hpp"

namespace gcm {

namespace {

void check_args(const TabularFunction& f, const VariableSubset& A, const BasePoint& x0) {
  A.validate(f.domain().num_variables());
  f.domain().validate(x0);
}

}  // namespace

BasePoint default_base(const CategoricalDomain& domain) {
  return BasePoint(std::vector<std::size_t>(domain.num_variables(), 0));
}

TabularFunction first_difference(const TabularFunction& f, const VariableSubset& A,
                                 const BasePoint& x0) {
  check_args(f, A, x0);
  const auto& dom = f.domain();
  std::vector<double> v(f.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f[k] - f[dom.substitute_index(k, A, x0)];
  return TabularFunction(dom, std::move(v));
}

TabularFunction first_difference(const TabularFunction& f, const VariableSubset& A) {
  return first_difference(f, A, default_base(f.domain()));
}

TabularFunction second_difference(const TabularFunction& f, const VariableSubset& A,
                                  const VariableSubset& B, const BasePoint& x0) {
  check_args(f, A, x0);
  B.validate(f.domain().num_variables());
  const auto& dom = f.domain();
  const VariableSubset AB = A.unite(B);
  std::vector<double> v(f.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = f[k] + f[dom.substitute_index(k, AB, x0)] - f[dom.substitute_index(k, A, x0)] -
           f[dom.substitute_index(k, B, x0)];
  }
  return TabularFunction(dom, std::move(v));
}

TabularFunction second_difference(const TabularFunction& f, const VariableSubset& A,
                                  const VariableSubset& B) {
  return second_difference(f, A, B, default_base(f.domain()));
}

bool is_zero(const TabularFunction& f, double tol) { return f.max_abs() <= tol; }

TabularFunction recenter_correction(const TabularFunction& f, const VariableSubset& A,
                                    const BasePoint& x0, const BasePoint& x1) {
  check_args(f, A, x0);
  f.domain().validate(x1);
  const auto& dom = f.domain();
  const TabularFunction correction = first_difference(f, A, x1) - first_difference(f, A, x0);

  // Right-hand side: Delta^{x1}_A f evaluated at (x0_A, x_{-A}).
  const TabularFunction d1 = first_difference(f, A, x1);
  double scale = 1.0;
  for (double v : f.values()) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double rhs = d1[dom.substitute_index(k, A, x0)];
    if (std::abs(correction[k] - rhs) > 8.0 * std::numeric_limits<double>::epsilon() * scale) {
      throw InconsistencyError("recentering identity violated at cell " + std::to_string(k));
    }
  }
  return correction;
}

}  // namespace gcm
