#include <doctest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "gcm/error.hpp"
#include "gcm/tabular.hpp"

using namespace gcm;
using namespace gcm::testing;

TEST_CASE("flat_index uses row-major order with the last variable fastest") {
  const CategoricalDomain dom({2, 3});
  CHECK(dom.flat_index({0, 0}) == 0);
  CHECK(dom.flat_index({1, 2}) == 5);
  CHECK(dom.flat_index({1, 0}) == 3);
  CHECK(dom.stride(0) == 3);
  CHECK(dom.stride(1) == 1);
  std::vector<bool> seen(6, false);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      const auto k = dom.flat_index({a, b});
      CHECK(k == a * 3 + b);
      CHECK_FALSE(seen[k]);
      seen[k] = true;
    }
  }
}

TEST_CASE("flat_index and unindex are inverse") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto dom = random_domain(rng, uniform_index(rng, 1, 6), 5, 1);
    for (std::size_t k = 0; k < dom.size(); ++k) REQUIRE(dom.flat_index(dom.unindex(k)) == k);
  }
  const CategoricalDomain big({10, 10, 10, 10, 10, 10});
  for (std::size_t k = 0; k < big.size(); ++k) REQUIRE(big.flat_index(big.unindex(k)) == k);
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(CategoricalDomain({}), InputError);
  CHECK_THROWS_AS(CategoricalDomain({2, 0}), InputError);
  CHECK_THROWS_AS(CategoricalDomain({2, 2}, {{"a", "b"}}), InputError);
  CHECK_THROWS_AS(CategoricalDomain({2}, {{"a", "a"}}), InputError);
  CHECK_THROWS_AS(CategoricalDomain(std::vector<std::size_t>(70, 2)), InputError);
  const CategoricalDomain dom({2, 3});
  CHECK_THROWS_AS(dom.flat_index({0}), InputError);
  CHECK_THROWS_AS(dom.flat_index({2, 0}), InputError);
  CHECK_NOTHROW(CategoricalDomain({1, 1}));
}

TEST_CASE("variable subsets are sorted and duplicate free") {
  const VariableSubset a(std::vector<std::size_t>{3, 0, 2});
  CHECK(a.indices() == std::vector<std::size_t>{0, 2, 3});
  CHECK_THROWS_AS(VariableSubset(std::vector<std::size_t>{1, 1}), InputError);
  CHECK(a.complement(5) == VariableSubset{1, 4});
  CHECK(a.unite({1}) == VariableSubset{0, 1, 2, 3});
  CHECK(a.intersect({2, 4}) == VariableSubset{2});
  CHECK(a.minus({0}) == VariableSubset{2, 3});
  CHECK(VariableSubset::from_mask(a.mask()) == a);
  CHECK(VariableSubset{}.is_subset_of(a));
  CHECK(VariableSubset{1, 4}.is_disjoint(a));
  CHECK_THROWS_AS(a.validate(3), InputError);
  CHECK(VariableSubset{0, 1} < VariableSubset{0, 2});
}

TEST_CASE("substitute on the worked example") {
  const auto f = table1_f();
  const std::vector<std::size_t> x0{0};
  const auto g = substitute(f, {1}, x0);
  CHECK(as_vector(g) == std::vector<double>{-1, -1, -1, 3, 3, 3});
  CHECK(substitute(f, {}, {}) == f);
  const std::vector<std::size_t> full{1, 2};
  CHECK(substitute(f, {0, 1}, full) == TabularFunction::constant(f.domain(), -4));
  const std::vector<std::size_t> bad{3};
  CHECK_THROWS_AS(substitute(f, {1}, bad), InputError);
  const std::vector<std::size_t> short_base{};
  CHECK_THROWS_AS(substitute(f, {1}, short_base), InputError);
}

TEST_CASE("substitute is idempotent") {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto dom = random_domain(rng, uniform_index(rng, 1, 4), 3);
    const auto f = random_int_table(rng, dom);
    const auto A = VariableSubset::from_mask(random_mask(rng, dom.num_variables()));
    std::vector<std::size_t> x0;
    for (std::size_t i : A) x0.push_back(uniform_index(rng, 0, dom.cardinality(i) - 1));
    const auto once = substitute(f, A, x0);
    REQUIRE(substitute(once, A, x0) == once);
    REQUIRE(depends_only_on(once, A.complement(dom.num_variables()), 0.0));
  }
}

TEST_CASE("depends_only_on") {
  const auto f = table1_f();
  CHECK_FALSE(depends_only_on(f, {0}));
  CHECK(depends_only_on(f, {0, 1}));
  CHECK(depends_only_on(TabularFunction::constant(f.domain(), 2.5), {}));
  const std::vector<double> local{4, -2};
  const auto b = broadcast(f.domain(), {0}, local);
  CHECK(as_vector(b) == std::vector<double>{4, 4, 4, -2, -2, -2});
  CHECK(depends_only_on(b, {0}, 0.0));
  CHECK_FALSE(depends_only_on(b, {1}, 0.0));
  const auto nudged = b + TabularFunction(f.domain(), {0, 0, 1e-12, 0, 0, 0});
  CHECK(depends_only_on(nudged, {0}));
  CHECK_FALSE(depends_only_on(nudged, {0}, 0.0));
}

// F_A and F_B intersect in F_{A n B}, checked exhaustively over all pairs of
// subsets on small domains.
TEST_CASE("function spaces intersect along variable sets") {
  Rng rng(13);
  for (int t = 0; t < 60; ++t) {
    const auto dom = random_domain(rng, uniform_index(rng, 2, 4), 3);
    if (dom.size() > 64) continue;
    const std::size_t n = dom.num_variables();
    for (std::uint64_t ma = 0; ma < (1u << n); ++ma) {
      for (std::uint64_t mb = 0; mb < (1u << n); ++mb) {
        const auto A = VariableSubset::from_mask(ma);
        const auto B = VariableSubset::from_mask(mb);
        // Generic members of F_A, F_B and of their intersection.
        const auto fa = random_local_table(rng, dom, A, true);
        const auto fi = random_local_table(rng, dom, A.intersect(B), true);
        for (const auto& f : {fa, fi}) {
          if (depends_only_on(f, A, 0.0) && depends_only_on(f, B, 0.0)) {
            REQUIRE(depends_only_on(f, A.intersect(B), 0.0));
          }
        }
        REQUIRE(depends_only_on(fi, A, 0.0));
        REQUIRE(depends_only_on(fi, B, 0.0));
      }
    }
  }
}

TEST_CASE("table arithmetic and value checks") {
  const CategoricalDomain dom({2, 2});
  const TabularFunction a(dom, {1, 2, 3, 4});
  const TabularFunction b(dom, {4, 3, 2, 1});
  CHECK(as_vector(a + b) == std::vector<double>{5, 5, 5, 5});
  CHECK(as_vector(a - b) == std::vector<double>{-3, -1, 1, 3});
  CHECK(as_vector(2.0 * a) == std::vector<double>{2, 4, 6, 8});
  CHECK(max_abs_difference(a, b) == 3);
  CHECK(approx_equal(a, a + TabularFunction::constant(dom, 1e-12)));
  CHECK_THROWS_AS(TabularFunction(dom, {1, 2, 3}), InputError);
  CHECK_THROWS_AS(TabularFunction(dom, {1, 2, 3, std::nan("")}), InputError);
  CHECK_THROWS_AS(a + TabularFunction::zeros(CategoricalDomain({4})), InputError);
}

TEST_CASE("project, embed and restrict agree with explicit coordinates") {
  Rng rng(14);
  for (int t = 0; t < 50; ++t) {
    const auto dom = random_domain(rng, uniform_index(rng, 1, 4), 4, 1);
    const auto A = VariableSubset::from_mask(random_mask(rng, dom.num_variables()));
    const auto base = dom.unindex(uniform_index(rng, 0, dom.size() - 1));
    for (std::size_t k = 0; k < dom.size(); ++k) {
      const auto x = dom.unindex(k);
      std::size_t local = 0;
      for (std::size_t i : A) local = local * dom.cardinality(i) + x[i];
      REQUIRE(dom.project(k, A) == local);
      Assignment y = base;
      for (std::size_t i : A) y[i] = x[i];
      REQUIRE(dom.embed(local, A, base) == dom.flat_index(y));
      REQUIRE(dom.substitute_index(k, A, base) == dom.flat_index([&] {
                Assignment z = x;
                for (std::size_t i : A) z[i] = base[i];
                return z;
              }()));
    }
    if (!A.empty()) CHECK(dom.restrict_to(A).size() == dom.subset_size(A));
  }
}
