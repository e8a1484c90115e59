#include <doctest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "gcm/diff_ops.hpp"
#include "gcm/error.hpp"

using namespace gcm;
using namespace gcm::testing;

namespace {

BasePoint random_base(Rng& rng, const CategoricalDomain& dom) {
  return dom.unindex(uniform_index(rng, 0, dom.size() - 1));
}

VariableSubset random_subset(Rng& rng, std::size_t n) {
  return VariableSubset::from_mask(random_mask(rng, n));
}

// By hand from the definition, without the library's index helpers.
double delta_by_hand(const TabularFunction& f, const VariableSubset& A, const BasePoint& x0,
                     const Assignment& x) {
  Assignment y = x;
  for (std::size_t i : A) y[i] = x0[i];
  return f.at(x) - f.at(y);
}

}  // namespace

TEST_CASE("first difference on the worked example") {
  const auto f = table1_f();
  const auto d = first_difference(f, {0}, default_base(f.domain()));
  CHECK(d.at({1, 0}) == 4);
  CHECK(as_vector(d) == std::vector<double>{0, 0, 0, 4, -12, -6});
  CHECK(is_zero(first_difference(f, {}), 0.0));
  const std::vector<double> local{1, 7, -3};
  const auto h = broadcast(f.domain(), {1}, local);
  CHECK(is_zero(first_difference(h, {0}), 0.0));
}

TEST_CASE("second difference on the worked example") {
  const auto f = table1_f();
  const auto d = second_difference(f, {0}, {1}, default_base(f.domain()));
  CHECK(as_vector(d) == std::vector<double>{0, 0, 0, 0, -16, -10});
  CHECK(d.at({1, 1}) == f.at({1, 1}) + f.at({0, 0}) - f.at({0, 1}) - f.at({1, 0}));
  CHECK(as_vector(second_difference(f, {1}, {1})) == as_vector(first_difference(f, {1})));
  CHECK_FALSE(is_zero(d));
}

TEST_CASE("is_zero tolerance") {
  const CategoricalDomain dom({2});
  CHECK(is_zero(TabularFunction::zeros(dom), 0.0));
  CHECK(is_zero(TabularFunction(dom, {1e-12, -1e-12}), 1e-9));
  CHECK_FALSE(is_zero(TabularFunction(dom, {1e-12, 0}), 0.0));
}

TEST_CASE("first difference matches the definition cell by cell") {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const auto dom = random_domain(rng, uniform_index(rng, 1, 4), 3);
    const auto f = random_int_table(rng, dom);
    const auto A = random_subset(rng, dom.num_variables());
    const auto x0 = random_base(rng, dom);
    const auto d = first_difference(f, A, x0);
    for (std::size_t k = 0; k < dom.size(); ++k) {
      const auto x = dom.unindex(k);
      REQUIRE(d[k] == delta_by_hand(f, A, x0, x));
      bool on_slice = true;
      for (std::size_t i : A) on_slice = on_slice && x[i] == x0[i];
      if (on_slice) REQUIRE(d[k] == 0);
    }
  }
}

TEST_CASE("recentering identity and base-point independence of vanishing") {
  Rng rng(22);
  for (int t = 0; t < 300; ++t) {
    const auto dom = random_domain(rng, uniform_index(rng, 1, 4), 3);
    const auto f = random_int_table(rng, dom);
    const auto A = random_subset(rng, dom.num_variables());
    const auto B = random_subset(rng, dom.num_variables());
    const auto x0 = random_base(rng, dom);
    const auto x1 = random_base(rng, dom);
    const auto corr = recenter_correction(f, A, x0, x1);
    for (std::size_t k = 0; k < dom.size(); ++k) {
      const auto x = dom.unindex(k);
      Assignment y = x;
      for (std::size_t i : A) y[i] = x0[i];
      REQUIRE(corr[k] == delta_by_hand(f, A, x1, y));
    }
    CHECK(is_zero(recenter_correction(f, A, x0, x0), 0.0));

    // f in F_{-A}: vanishing under one center forces vanishing under all.
    const auto h = random_local_table(rng, dom, A.complement(dom.num_variables()), true);
    REQUIRE(is_zero(first_difference(h, A, x0), 0.0));
    REQUIRE(is_zero(first_difference(h, A, x1), 0.0));
    REQUIRE(is_zero(first_difference(f, A, x0), 0.0) == is_zero(first_difference(f, A, x1), 0.0));

    // Same for second differences, with f = h(x_{-A}) + g(x_{-B}) half the time.
    const auto g = random_local_table(rng, dom, B.complement(dom.num_variables()), true);
    const auto sep = coin(rng) ? h + g : f;
    REQUIRE(is_zero(second_difference(sep, A, B, x0), 0.0) ==
            is_zero(second_difference(sep, A, B, x1), 0.0));
  }
}

TEST_CASE("vanishing first difference characterizes F_{-A}") {
  Rng rng(23);
  for (int t = 0; t < 300; ++t) {
    const auto dom = random_domain(rng, uniform_index(rng, 1, 4), 3);
    if (dom.size() > 256) continue;
    const auto A = random_subset(rng, dom.num_variables());
    const auto minus_a = A.complement(dom.num_variables());
    const auto f = coin(rng) ? random_local_table(rng, dom, minus_a, true) : random_int_table(rng, dom, -2, 2);
    REQUIRE(is_zero(first_difference(f, A), 0.0) == depends_only_on(f, minus_a, 0.0));
  }
}

TEST_CASE("f splits as substitution plus difference; the difference is linear") {
  Rng rng(24);
  for (int t = 0; t < 300; ++t) {
    const auto dom = random_domain(rng, uniform_index(rng, 1, 4), 3);
    const auto f = random_int_table(rng, dom);
    const auto g = random_int_table(rng, dom);
    const auto A = random_subset(rng, dom.num_variables());
    const auto x0 = random_base(rng, dom);
    std::vector<std::size_t> x0_a;
    for (std::size_t i : A) x0_a.push_back(x0[i]);
    REQUIRE(substitute(f, A, x0_a) + first_difference(f, A, x0) == f);

    const double alpha = static_cast<double>(uniform_index(rng, 0, 10)) - 5;
    const double beta = static_cast<double>(uniform_index(rng, 0, 10)) - 5;
    REQUIRE(first_difference(alpha * f + beta * g, A, x0) ==
            alpha * first_difference(f, A, x0) + beta * first_difference(g, A, x0));
    const auto fr = random_real_table(rng, dom);
    const auto gr = random_real_table(rng, dom);
    REQUIRE(max_abs_difference(first_difference(0.3 * fr + 1.7 * gr, A, x0),
                               0.3 * first_difference(fr, A, x0) + 1.7 * first_difference(gr, A, x0)) <= 1e-12);
  }
}

TEST_CASE("second difference: closed form, composition, inclusion-exclusion") {
  Rng rng(25);
  for (int t = 0; t < 300; ++t) {
    const auto dom = random_domain(rng, uniform_index(rng, 1, 4), 3);
    const auto f = random_int_table(rng, dom);
    const auto A = random_subset(rng, dom.num_variables());
    const auto B = random_subset(rng, dom.num_variables());
    const auto x0 = random_base(rng, dom);
    const auto dd = second_difference(f, A, B, x0);
    REQUIRE(dd == first_difference(first_difference(f, B, x0), A, x0));
    REQUIRE(dd == first_difference(f, A, x0) + first_difference(f, B, x0) -
                      first_difference(f, A.unite(B), x0));
    REQUIRE(second_difference(f, A, A, x0) == first_difference(f, A, x0));
  }
}

TEST_CASE("vanishing second difference iff f = h(x_{-A}) + g(x_{-B})") {
  Rng rng(26);
  for (int t = 0; t < 300; ++t) {
    const auto dom = random_domain(rng, uniform_index(rng, 2, 4), 3);
    const std::size_t n = dom.num_variables();
    const auto A = random_subset(rng, n);
    const auto B = random_subset(rng, n).minus(A);
    const auto x0 = default_base(dom);
    // Constructive direction.
    const auto h = random_local_table(rng, dom, A.complement(n), true);
    const auto g = random_local_table(rng, dom, B.complement(n), true);
    REQUIRE(is_zero(second_difference(h + g, A, B, x0), 0.0));
    // Extraction direction: Delta_B f lies in F_{-A}, and f - Delta_B f in F_{-B}.
    const auto f = coin(rng) ? h + g : random_int_table(rng, dom, -3, 3);
    if (is_zero(second_difference(f, A, B, x0), 0.0)) {
      const auto hh = first_difference(f, B, x0);
      const auto gg = f - hh;
      REQUIRE(depends_only_on(hh, A.complement(n), 0.0));
      REQUIRE(depends_only_on(gg, B.complement(n), 0.0));
      REQUIRE(hh + gg == f);
    }
  }
}

TEST_CASE("a first difference that ignores x_A is zero") {
  Rng rng(27);
  for (int t = 0; t < 300; ++t) {
    const auto dom = random_domain(rng, uniform_index(rng, 1, 4), 3);
    const std::size_t n = dom.num_variables();
    const auto A = random_subset(rng, n);
    // Candidates: f in F_{-A} plus, sometimes, an A-dependent part.
    auto f = random_local_table(rng, dom, A.complement(n), true);
    if (coin(rng)) f = f + random_local_table(rng, dom, A, true);
    const auto d = first_difference(f, A);
    if (depends_only_on(d, A.complement(n), 0.0)) REQUIRE(is_zero(d, 0.0));
  }
}

TEST_CASE("argument validation") {
  const auto f = table1_f();
  CHECK_THROWS_AS(first_difference(f, {2}), InputError);
  CHECK_THROWS_AS(first_difference(f, {0}, BasePoint{0}), InputError);
  CHECK_THROWS_AS(second_difference(f, {0}, {1}, BasePoint{0, 3}), InputError);
}
