#include "gcm/generative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcm/diff_ops.hpp"
#include "gcm/error.hpp"
#include "gcm/factorization.hpp"

namespace gcm {

namespace {

constexpr double kNormalizationTolerance = 1e-12;

long double total_mass(const TabularFunction& a, const TabularFunction& b) {
  long double s = 0.0L;
  for (double v : a.values()) s += v;
  for (double v : b.values()) s += v;
  return s;
}

}  // namespace

GenerativeClassifier::GenerativeClassifier(TabularFunction p_plus, TabularFunction p_minus,
                                           Support support)
    : p_plus_(std::move(p_plus)), p_minus_(std::move(p_minus)) {
  require_same_domain(p_plus_.domain(), p_minus_.domain());
  for (const auto* t : {&p_plus_, &p_minus_}) {
    for (std::size_t k = 0; k < t->size(); ++k) {
      const double v = (*t)[k];
      if (v < 0.0) throw InputError("negative probability at cell " + std::to_string(k));
      if (support == Support::Strict && v == 0.0) {
        throw PositivityError("zero probability at cell " + std::to_string(k) +
                              " of a strictly positive classifier");
      }
    }
  }
  const long double total = total_mass(p_plus_, p_minus_);
  if (std::abs(static_cast<double>(total - 1.0L)) > kNormalizationTolerance) {
    throw InputError("probabilities sum to " + std::to_string(static_cast<double>(total)) +
                     ", not 1");
  }
}

GenerativeClassifier GenerativeClassifier::normalized(const TabularFunction& w_plus,
                                                      const TabularFunction& w_minus,
                                                      Support support) {
  require_same_domain(w_plus.domain(), w_minus.domain());
  const long double total = total_mass(w_plus, w_minus);
  if (!(total > 0.0L)) throw PositivityError("cannot normalize a table with no mass");
  auto scale = [&](const TabularFunction& w) {
    std::vector<double> v(w.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
      v[k] = static_cast<double>(static_cast<long double>(w[k]) / total);
    }
    return TabularFunction(w.domain(), std::move(v));
  };
  return GenerativeClassifier(scale(w_plus), scale(w_minus), support);
}

TabularFunction GenerativeClassifier::predictor_marginal() const { return p_plus_ + p_minus_; }

bool GenerativeClassifier::strictly_positive() const {
  auto pos = [](const TabularFunction& t) {
    return std::all_of(t.values().begin(), t.values().end(), [](double v) { return v > 0.0; });
  };
  return pos(p_plus_) && pos(p_minus_);
}

TabularFunction discrimination(const GenerativeClassifier& P) {
  if (!P.strictly_positive()) {
    throw PositivityError("discrimination function needs a strictly positive classifier");
  }
  std::vector<double> v(P.domain().size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::log(P.p_plus()[k] / P.p_minus()[k]);
  return TabularFunction(P.domain(), std::move(v));
}

double discrimination_deviation(const GenerativeClassifier& P, const TabularFunction& f) {
  require_same_domain(P.domain(), f.domain());
  double dev = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double pp = P.p_plus()[k];
    const double pm = P.p_minus()[k];
    if (pp == 0.0 && pm == 0.0) continue;
    if (pp == 0.0 || pm == 0.0) return std::numeric_limits<double>::infinity();
    dev = std::max(dev, std::abs(std::log(pp / pm) - f[k]));
  }
  return dev;
}

int decide(const GenerativeClassifier& P, const Assignment& x) {
  const std::size_t k = P.domain().flat_index(x);
  return P.p_plus()[k] >= P.p_minus()[k] ? 1 : -1;
}

CiReport check_ci_report(const GenerativeClassifier& P, const VariableSubset& A,
                         const VariableSubset& B, double tol) {
  const auto& dom = P.domain();
  const std::size_t n = dom.num_variables();
  A.validate(n);
  B.validate(n);
  if (A.empty() || B.empty()) throw InputError("conditional independence needs nonempty sets");
  if (!A.is_disjoint(B)) throw InputError("conditional independence needs disjoint sets");

  const BasePoint zero = default_base(dom);
  std::vector<std::size_t> off_a(dom.subset_size(A));
  std::vector<std::size_t> off_b(dom.subset_size(B));
  const std::size_t origin = dom.embed(0, {}, zero);
  for (std::size_t l = 0; l < off_a.size(); ++l) off_a[l] = dom.embed(l, A, zero) - origin;
  for (std::size_t l = 0; l < off_b.size(); ++l) off_b[l] = dom.embed(l, B, zero) - origin;

  CiReport rep;
  for (int c : {1, -1}) {
    for (std::size_t k = 0; k < dom.size(); ++k) {
      const std::size_t xa = dom.project(k, A);
      const std::size_t xb = dom.project(k, B);
      const std::size_t rest = k - off_a[xa] - off_b[xb];
      const double p1 = P.p(k, c);
      for (std::size_t ya = 0; ya < off_a.size(); ++ya) {
        for (std::size_t yb = 0; yb < off_b.size(); ++yb) {
          const double lhs = p1 * P.p(rest + off_a[ya] + off_b[yb], c);
          const double rhs = P.p(rest + off_a[xa] + off_b[yb], c) * P.p(rest + off_a[ya] + off_b[xb], c);
          const double scale = std::max(lhs, rhs);
          if (scale > 0.0) rep.toric_residual = std::max(rep.toric_residual, std::abs(lhs - rhs) / scale);
        }
      }
    }
  }

  if (P.strictly_positive()) {
    double rd = 0.0;
    for (const auto* slice : {&P.p_plus(), &P.p_minus()}) {
      std::vector<double> lp(slice->size());
      for (std::size_t k = 0; k < lp.size(); ++k) lp[k] = std::log((*slice)[k]);
      rd = std::max(rd, second_difference(TabularFunction(dom, std::move(lp)), A, B).max_abs());
    }
    rep.differential_residual = rd;
    // Base-point quadruples are a subset of all quadruples, and every
    // quadruple is a signed sum of four base-point ones.
    const double rt = rep.toric_residual;
    const bool consistent = rd <= -std::log1p(-std::min(rt, 1.0 - 1e-300)) + tol &&
                            rt <= -std::expm1(-4.0 * rd) + tol;
    if (!consistent) {
      throw InconsistencyError("toric and log-difference residuals disagree (" +
                               std::to_string(rt) + " vs " + std::to_string(rd) + ")");
    }
  } else {
    rep.toric_only = true;
  }
  rep.independent = rep.toric_residual <= tol;
  return rep;
}

bool check_ci(const GenerativeClassifier& P, const VariableSubset& A, const VariableSubset& B,
              double tol) {
  return check_ci_report(P, A, B, tol).independent;
}

MarkovCiReport verify_g_markov(const GenerativeClassifier& P, const UndirectedGraph& g,
                               double tol) {
  const std::size_t n = P.domain().num_variables();
  if (g.num_nodes() != n) throw InputError("graph and classifier disagree on variable count");
  MarkovCiReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!g.adjacent(i, j) && !check_ci(P, {i}, {j}, tol)) rep.violations.emplace_back(i, j);
    }
  }
  rep.markov = rep.violations.empty();
  return rep;
}

bool is_g_markov(const GenerativeClassifier& P, const UndirectedGraph& g, double tol) {
  return verify_g_markov(P, g, tol).markov;
}

GenerativeClassifier build_from_discrimination(const TabularFunction& f,
                                               const std::optional<TabularFunction>& g,
                                               const UndirectedGraph& graph) {
  constexpr double kMembershipTol = 1e-9;
  const auto& dom = f.domain();
  const TabularFunction base = g ? *g : TabularFunction::zeros(dom);
  require_same_domain(dom, base.domain());
  using Named = std::pair<const TabularFunction*, const char*>;
  for (const auto& [t, name] : {Named{&f, "f"}, Named{&base, "g"}}) {
    const auto rep = check_markov(*t, graph, kMembershipTol);
    if (!rep.member) {
      const auto& v = rep.violations.front();
      throw MembershipError(std::string(name) + " is not in F_G: |Delta_" + v.a.to_string() +
                            " Delta_" + v.b.to_string() + "| = " + std::to_string(v.max_abs));
    }
  }
  std::vector<double> ep(dom.size());
  std::vector<double> em(dom.size());
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < dom.size(); ++k) {
    ep[k] = base[k] + 0.5 * f[k];
    em[k] = base[k] - 0.5 * f[k];
    shift = std::max({shift, ep[k], em[k]});
  }
  bool underflow = false;
  for (std::size_t k = 0; k < dom.size(); ++k) {
    ep[k] = std::exp(ep[k] - shift);
    em[k] = std::exp(em[k] - shift);
    underflow = underflow || ep[k] == 0.0 || em[k] == 0.0;
  }
  return GenerativeClassifier::normalized(TabularFunction(dom, std::move(ep)),
                                          TabularFunction(dom, std::move(em)),
                                          underflow ? Support::Extended : Support::Strict);
}

}  // namespace gcm
