#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "gcm/error.hpp"
#include "gcm/ipf.hpp"

using namespace gcm;
using namespace gcm::testing;

namespace {

Dataset make_data(const CategoricalDomain& dom, const std::vector<std::pair<Assignment, int>>& rows) {
  std::vector<Record> recs;
  for (const auto& [x, c] : rows) recs.push_back({x, c});
  return Dataset(dom, recs);
}

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

std::vector<double> values(const TabularFunction& t) {
  std::vector<double> v(t.domain().size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = t[k];
  return v;
}

}  // namespace

TEST_CASE("dataset validation") {
  const CategoricalDomain dom({2, 3});
  CHECK_THROWS_AS(Dataset(dom, {}), InputError);
  CHECK_THROWS_AS(make_data(dom, {{{0, 3}, 1}}), InputError);
  CHECK_THROWS_AS(make_data(dom, {{{0, 1}, 0}}), InputError);
  CHECK_THROWS_AS(make_data(dom, {{{0}, 1}}), InputError);
  const auto d = make_data(dom, {{{1, 2}, 1}, {{0, 0}, -1}});
  CHECK(d.size() == 2);
  CHECK(d.cell(0) == 5);
}

TEST_CASE("empirical marginals") {
  const CategoricalDomain dom({2, 2});
  const auto d = make_data(dom, {{{0, 0}, 1}, {{0, 1}, -1}, {{0, 1}, 1}, {{1, 1}, 1}});
  CHECK(values(empirical_marginal(d, {0})) == std::vector<double>{0.75, 0.25});
  CHECK(values(empirical_marginal(d, {1})) == std::vector<double>{0.25, 0.75});
  CHECK(values(empirical_marginal(d, {0, 1})) == std::vector<double>{0.25, 0.5, 0.0, 0.25});
  CHECK_THROWS_AS(empirical_marginal(d, {}), InputError);
  CHECK(empirical_joint(d) == values(empirical_marginal(d, {0, 1})));
}

TEST_CASE("log-likelihood") {
  const CategoricalDomain dom({2});
  const GenerativeClassifier U(TabularFunction(dom, {0.25, 0.25}), TabularFunction(dom, {0.25, 0.25}));
  const auto one = make_data(dom, {{{1}, -1}});
  CHECK(log_likelihood(U, one) == doctest::Approx(std::log(0.25)).epsilon(1e-15));

  Rng rng(71);
  const auto d3 = random_domain(rng, 3, 3);
  const auto P = ipf_initial_model(random_real_table(rng, d3));
  const auto data = random_dataset(rng, d3, 50);
  auto doubled = data.records();
  doubled.insert(doubled.end(), data.records().begin(), data.records().end());
  CHECK(log_likelihood(P, Dataset(d3, doubled)) ==
        doctest::Approx(2 * log_likelihood(P, data)).epsilon(1e-13));

  const GenerativeClassifier Z(TabularFunction(dom, {0.0, 0.5}), TabularFunction(dom, {0.25, 0.25}),
                               Support::Extended);
  CHECK(log_likelihood(Z, make_data(dom, {{{0}, 1}})) == -std::numeric_limits<double>::infinity());
  CHECK(std::isfinite(log_likelihood(Z, make_data(dom, {{{0}, -1}}))));
}

TEST_CASE("one marginal fit") {
  Rng rng(72);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform_index(rng, 1, 4);
    const auto dom = random_domain(rng, n, 3);
    const auto f = random_real_table(rng, dom);
    const auto P = ipf_initial_model(f);
    // Enough records that every marginal cell is hit most of the time.
    const auto data = random_dataset(rng, dom, 3 * dom.size());
    const auto A = VariableSubset::from_mask(random_mask(rng, n) | 1U);
    const auto Q = marginal_fit(P, A, data);
    REQUIRE(max_gap(model_marginal(Q, A), values(empirical_marginal(data, A))) <= 1e-14);
    // Discrimination is untouched where mass survives.
    REQUIRE(discrimination_deviation(Q, f) <= 1e-12);
    // Applying it again changes nothing.
    const auto R = marginal_fit(Q, A, data);
    REQUIRE(max_abs_difference(R.p_plus(), Q.p_plus()) <= 1e-15);
    REQUIRE(max_abs_difference(R.p_minus(), Q.p_minus()) <= 1e-15);
  }
}

TEST_CASE("marginal fit with zero model mass") {
  const CategoricalDomain dom({2});
  const GenerativeClassifier Z(TabularFunction(dom, {0.0, 0.5}), TabularFunction(dom, {0.0, 0.5}),
                               Support::Extended);
  // 0/0 := 0 where both are empty.
  const auto ok = marginal_fit(Z, {0}, make_data(dom, {{{1}, 1}}));
  CHECK(ok.p_plus()[0] == 0.0);
  CHECK(ok.p_plus()[1] == doctest::Approx(0.5));
  CHECK_THROWS_AS(marginal_fit(Z, {0}, make_data(dom, {{{0}, 1}})), InconsistencyError);
}

TEST_CASE("fit with a constant discrimination function") {
  const CategoricalDomain dom({3});
  const auto data = make_data(dom, {{{0}, 1}, {{0}, -1}, {{1}, 1}, {{2}, -1}});
  const auto res = fit_ipf(TabularFunction::constant(dom, std::log(3.0)), complete_graph(1), data);
  CHECK(res.report.converged);
  const auto marg = model_marginal(res.model, {0});
  CHECK(max_gap(marg, {0.5, 0.25, 0.25}) <= 1e-12);
  for (std::size_t k = 0; k < 3; ++k) {
    const double pp = res.model.p_plus()[k];
    CHECK(pp / (pp + res.model.p_minus()[k]) == doctest::Approx(0.75).epsilon(1e-14));
  }
}

TEST_CASE("fit on a complete graph reproduces the empirical joint; dead cells stay empty") {
  Rng rng(73);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = uniform_index(rng, 1, 3);
    const auto dom = random_domain(rng, n, 3);
    const auto f = random_real_table(rng, dom);
    const auto data = random_dataset(rng, dom, uniform_index(rng, 1, dom.size()));
    const auto res = fit_ipf(f, complete_graph(n), data);
    REQUIRE(res.report.converged);
    REQUIRE(res.report.iterations == 1);
    const auto emp = empirical_joint(data);
    REQUIRE(max_gap(values(res.model.predictor_marginal()), emp) <= 1e-12);
    for (std::size_t k = 0; k < dom.size(); ++k) {
      if (emp[k] == 0.0) {
        REQUIRE(res.model.p_plus()[k] == 0.0);
        REQUIRE(res.model.p_minus()[k] == 0.0);
      }
    }
  }
}

TEST_CASE("decomposable closed form when the discrimination function sits on one clique") {
  Rng rng(74);
  const auto g = path_graph(3);
  for (int t = 0; t < 30; ++t) {
    const auto dom = random_domain(rng, 3, 3);
    const auto f = random_local_table(rng, dom, {0, 1}, false);
    const auto data = random_dataset(rng, dom, 200);
    const auto res = fit_ipf(f, g, data, {.tol = 1e-12});
    REQUIRE(res.report.converged);
    const auto expected = closed_form_mle(data, {{0, 1}, {1, 2}}, {{1}});
    REQUIRE(max_gap(values(res.model.predictor_marginal()), expected) <= 1e-10);
  }
}

TEST_CASE("fit invariants along the sweeps") {
  Rng rng(75);
  const std::vector<UndirectedGraph> graphs{cycle_graph(4), path_graph(4), star_graph(4), edgeless_graph(4)};
  for (int t = 0; t < 40; ++t) {
    const auto& g = graphs[t % graphs.size()];
    const auto dom = random_domain(rng, 4, 3);
    const auto f = clique_sum_function(rng, dom, g);
    const auto data = random_dataset(rng, dom, 300);
    double worst = 0.0;
    std::size_t calls = 0;
    IpfOptions opt;
    opt.on_sweep = [&](std::size_t sweep, const GenerativeClassifier& P) {
      ++calls;
      REQUIRE(sweep == calls);
      worst = std::max(worst, discrimination_deviation(P, f));
    };
    const auto res = fit_ipf(f, g, data, opt);
    REQUIRE(res.report.converged);
    REQUIRE(calls == res.report.iterations);
    REQUIRE(worst <= 1e-10);
    REQUIRE(res.report.loglik_trace.size() == res.report.iterations + 1);
    for (std::size_t k = 1; k < res.report.loglik_trace.size(); ++k) {
      REQUIRE(res.report.loglik_trace[k] >= res.report.loglik_trace[k - 1] - 1e-9);
    }
    // Clique marginals match the data; the fitted model is G-Markov.
    for (const auto& C : maximal_cliques(g)) {
      REQUIRE(max_gap(model_marginal(res.model, C), values(empirical_marginal(data, C))) <= 1e-8);
    }
    if (res.model.strictly_positive()) REQUIRE(is_g_markov(res.model, g, 1e-6));
    // The class law given x is the logistic of f.
    for (std::size_t k = 0; k < dom.size(); ++k) {
      const double m = res.model.p_plus()[k] + res.model.p_minus()[k];
      if (m > 1e-12) REQUIRE(std::abs(res.model.p_plus()[k] / m - sigmoid(f[k])) <= 1e-10);
    }
  }
}

TEST_CASE("fit argument checks") {
  const CategoricalDomain dom({2, 2});
  const TabularFunction xorish(dom, {0, 0, 0, 1});
  const auto data = make_data(dom, {{{0, 0}, 1}});
  CHECK_THROWS_AS(fit_ipf(xorish, edgeless_graph(2), data), MembershipError);
  CHECK_THROWS_AS(fit_ipf(xorish, complete_graph(2), data, {.max_sweeps = 0}), InputError);
  CHECK_THROWS_AS(fit_ipf(xorish, complete_graph(2), data, {.tol = 0.0}), InputError);
  const auto one = fit_ipf(xorish, edgeless_graph(2).with_edge(0, 1), data, {.max_sweeps = 1});
  CHECK(one.report.iterations == 1);
}

TEST_CASE("non-convergence is reported, not thrown") {
  Rng rng(76);
  const auto g = cycle_graph(4);
  const CategoricalDomain dom({2, 2, 2, 2});
  const auto f = clique_sum_function(rng, dom, g);
  const auto data = random_dataset(rng, dom, 40);
  const auto res = fit_ipf(f, g, data, {.max_sweeps = 1, .tol = 1e-15});
  CHECK(res.report.iterations == 1);
  CHECK(res.report.loglik_trace.size() == 2);
  if (!res.report.converged) CHECK(res.report.final_marginal_gap > 1e-15);
}
