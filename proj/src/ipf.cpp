#include "gcm/ipf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcm/error.hpp"
#include "gcm/factorization.hpp"

namespace gcm {

Dataset::Dataset(CategoricalDomain domain, std::vector<Record> records)
    : domain_(std::move(domain)), records_(std::move(records)) {
  if (records_.empty()) throw InputError("dataset has no records");
  cells_.reserve(records_.size());
  for (std::size_t r = 0; r < records_.size(); ++r) {
    if (records_[r].c != 1 && records_[r].c != -1) {
      throw InputError("record " + std::to_string(r) + " has class " +
                       std::to_string(records_[r].c) + ", expected -1 or +1");
    }
    cells_.push_back(domain_.flat_index(records_[r].x));
  }
}

namespace {

std::vector<double> empirical_values(const Dataset& data, const VariableSubset& A) {
  const auto& dom = data.domain();
  std::vector<double> counts(dom.subset_size(A), 0.0);
  for (std::size_t r = 0; r < data.size(); ++r) counts[dom.project(data.cell(r), A)] += 1.0;
  const double n = static_cast<double>(data.size());
  for (double& v : counts) v /= n;
  return counts;
}

// In-place T_A on the two slices.
void apply_fit(std::vector<double>& pp, std::vector<double>& pm, const CategoricalDomain& dom,
               const VariableSubset& A, const std::vector<double>& target) {
  std::vector<double> current(target.size(), 0.0);
  for (std::size_t k = 0; k < pp.size(); ++k) current[dom.project(k, A)] += pp[k] + pm[k];
  std::vector<double> ratio(target.size(), 0.0);
  for (std::size_t l = 0; l < target.size(); ++l) {
    if (current[l] > 0.0) {
      ratio[l] = target[l] / current[l];
    } else if (target[l] > 0.0) {
      throw InconsistencyError("model marginal is zero where the data has mass (clique " +
                               A.to_string() + ")");
    }
  }
  for (std::size_t k = 0; k < pp.size(); ++k) {
    const double r = ratio[dom.project(k, A)];
    pp[k] *= r;
    pm[k] *= r;
  }
}

double marginal_gap(const std::vector<double>& pp, const std::vector<double>& pm,
                    const CategoricalDomain& dom, const VariableSubset& A,
                    const std::vector<double>& target) {
  std::vector<double> current(target.size(), 0.0);
  for (std::size_t k = 0; k < pp.size(); ++k) current[dom.project(k, A)] += pp[k] + pm[k];
  double gap = 0.0;
  for (std::size_t l = 0; l < target.size(); ++l) gap = std::max(gap, std::abs(current[l] - target[l]));
  return gap;
}

std::vector<double> copy_values(const TabularFunction& t) {
  return {t.values().begin(), t.values().end()};
}

}  // namespace

TabularFunction empirical_marginal(const Dataset& data, const VariableSubset& A) {
  A.validate(data.domain().num_variables());
  if (A.empty()) throw InputError("empirical marginal needs a nonempty variable set");
  return TabularFunction(data.domain().restrict_to(A), empirical_values(data, A));
}

std::vector<double> model_marginal(const GenerativeClassifier& P, const VariableSubset& A) {
  const auto& dom = P.domain();
  A.validate(dom.num_variables());
  std::vector<double> m(dom.subset_size(A), 0.0);
  for (std::size_t k = 0; k < dom.size(); ++k) m[dom.project(k, A)] += P.p_plus()[k] + P.p_minus()[k];
  return m;
}

GenerativeClassifier marginal_fit(const GenerativeClassifier& P, const VariableSubset& A,
                                  const Dataset& data) {
  require_same_domain(P.domain(), data.domain());
  A.validate(P.domain().num_variables());
  auto pp = copy_values(P.p_plus());
  auto pm = copy_values(P.p_minus());
  apply_fit(pp, pm, P.domain(), A, empirical_values(data, A));
  return GenerativeClassifier(TabularFunction(P.domain(), std::move(pp)),
                              TabularFunction(P.domain(), std::move(pm)), Support::Extended);
}

double log_likelihood(const GenerativeClassifier& P, const Dataset& data) {
  require_same_domain(P.domain(), data.domain());
  // Grouped by (cell, class) so each log is taken once per occupied cell.
  std::vector<std::size_t> counts(2 * data.domain().size(), 0);
  for (std::size_t r = 0; r < data.size(); ++r) {
    ++counts[2 * data.cell(r) + (data.records()[r].c > 0 ? 1 : 0)];
  }
  long double ll = 0.0L;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const double p = P.p(k / 2, k % 2 == 1 ? 1 : -1);
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    ll += static_cast<long double>(counts[k]) * std::log(static_cast<long double>(p));
  }
  return static_cast<double>(ll);
}

GenerativeClassifier ipf_initial_model(const TabularFunction& f) {
  std::vector<double> wp(f.size());
  std::vector<double> wm(f.size());
  const double shift = 0.5 * f.max_abs();
  for (std::size_t k = 0; k < f.size(); ++k) {
    wp[k] = std::exp(0.5 * f[k] - shift);
    wm[k] = std::exp(-0.5 * f[k] - shift);
  }
  return GenerativeClassifier::normalized(TabularFunction(f.domain(), std::move(wp)),
                                          TabularFunction(f.domain(), std::move(wm)));
}

IpfResult fit_ipf(const TabularFunction& f, const UndirectedGraph& g, const Dataset& data,
                  const IpfOptions& options) {
  constexpr double kMembershipTol = 1e-9;
  constexpr double kDriftBound = 1e-12;
  require_same_domain(f.domain(), data.domain());
  if (options.max_sweeps < 1) throw InputError("max_sweeps must be at least 1");
  if (!(options.tol > 0.0)) throw InputError("tol must be positive");
  const auto membership = check_markov(f, g, kMembershipTol);
  if (!membership.member) {
    const auto& v = membership.violations.front();
    throw MembershipError("discrimination function is not in F_G: |Delta_" + v.a.to_string() +
                          " Delta_" + v.b.to_string() + "| = " + std::to_string(v.max_abs));
  }

  const auto& dom = f.domain();
  const auto cliques = maximal_cliques(g);
  std::vector<std::vector<double>> targets;
  for (const auto& A : cliques) targets.push_back(empirical_values(data, A));

  GenerativeClassifier model = ipf_initial_model(f);
  IpfReport report;
  report.loglik_trace.push_back(log_likelihood(model, data));
  auto pp = copy_values(model.p_plus());
  auto pm = copy_values(model.p_minus());

  for (std::size_t sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    for (std::size_t c = 0; c < cliques.size(); ++c) apply_fit(pp, pm, dom, cliques[c], targets[c]);

    long double total = 0.0L;
    for (std::size_t k = 0; k < pp.size(); ++k) total += static_cast<long double>(pp[k]) + pm[k];
    if (std::abs(static_cast<double>(total - 1.0L)) > kDriftBound) {
      throw InconsistencyError("normalization drift " +
                               std::to_string(static_cast<double>(total - 1.0L)) + " in sweep " +
                               std::to_string(sweep));
    }
    for (std::size_t k = 0; k < pp.size(); ++k) {
      pp[k] = static_cast<double>(pp[k] / total);
      pm[k] = static_cast<double>(pm[k] / total);
    }

    model = GenerativeClassifier(TabularFunction(dom, pp), TabularFunction(dom, pm),
                                 Support::Extended);
    double gap = 0.0;
    for (std::size_t c = 0; c < cliques.size(); ++c) {
      gap = std::max(gap, marginal_gap(pp, pm, dom, cliques[c], targets[c]));
    }
    report.iterations = sweep;
    report.final_marginal_gap = gap;
    report.loglik_trace.push_back(log_likelihood(model, data));
    if (options.on_sweep) options.on_sweep(sweep, model);
    if (gap <= options.tol) {
      report.converged = true;
      break;
    }
  }
  return {std::move(model), std::move(report)};
}

}  // namespace gcm
