#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "krc/inverse.hpp"
#include "krc/semilocal.hpp"

using namespace krc;

namespace {

  std::size_t factorial(std::size_t n) {
    return n <= 1 ? 1 : n * factorial(n - 1);
  }

  std::size_t choose(std::size_t n, std::size_t k) {
    return factorial(n) / (factorial(k) * factorial(n - k));
  }

  std::size_t power(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e-- > 0) r *= b;
    return r;
  }

  // Number of partial monomial n x n matrices of rank k over a group of order g.
  std::size_t count_rank(std::size_t n, std::size_t k, std::size_t g) {
    return choose(n, k) * choose(n, k) * factorial(k) * power(g, k);
  }

  // Vagner: regular with commuting idempotents.
  bool inverse_oracle(FiniteSemigroup const& S) {
    for (Index s = 0; s < S.size(); ++s) {
      bool regular = false;
      for (Index t = 0; t < S.size() && !regular; ++t) {
        regular = S.mul(S.mul(s, t), s) == s;
      }
      if (!regular) return false;
    }
    for (Index e = 0; e < S.size(); ++e) {
      for (Index f = 0; f < S.size(); ++f) {
        if (S.is_idempotent(e) && S.is_idempotent(f) && S.mul(e, f) != S.mul(f, e)) {
          return false;
        }
      }
    }
    return true;
  }

  PartialMonomialMatrix random_matrix(std::mt19937& rng, std::size_t n, std::size_t k) {
    std::vector<Index> cols(n);
    std::iota(cols.begin(), cols.end(), Index(0));
    std::shuffle(cols.begin(), cols.end(), rng);
    std::vector<Index> entry(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 3 == 0) cols[i] = kNone;
      entry[i] = static_cast<Index>(rng() % k);
    }
    return make_monomial(cols, entry, FiniteGroup::cyclic(k));
  }

}  // namespace

TEST_CASE("monomial matrices act faithfully on G x [n]") {
  std::mt19937 rng(7);
  auto const   G = FiniteGroup::cyclic(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto const M = random_matrix(rng, 3, 3);
    auto const N = random_matrix(rng, 3, 3);
    CHECK(as_transformation(monomial_mul(M, N, G), G)
          == compose(as_transformation(M, G), as_transformation(N, G)));
    CHECK((as_transformation(M, G) == as_transformation(N, G)) == (M == N));
    CHECK(rlm_matrix(monomial_mul(M, N, G)) == monomial_mul(rlm_matrix(M), rlm_matrix(N), G));
  }
  CHECK_THROWS_AS(make_monomial({0, 0}, {0, 0}, G), InputError);
}

TEST_CASE("monomial groups") {
  auto const Z2 = FiniteGroup::cyclic(2);
  auto const W  = monomial_group(2, Z2);
  CHECK(W.group.order() == count_rank(2, 2, 2));
  bool abelian = true;
  for (Index a = 0; a < W.group.order(); ++a) {
    for (Index b = 0; b < W.group.order(); ++b) {
      abelian = abelian && W.group.mul(a, b) == W.group.mul(b, a);
    }
  }
  CHECK_FALSE(abelian);
  CHECK(monomial_group(3, FiniteGroup::trivial()).group.order() == 6);
}

TEST_CASE("Brandt semigroups are inverse") {
  auto const B = brandt(2, FiniteGroup::cyclic(2));
  CHECK(B.semigroup.size() == 1 + 4 * 2);
  CHECK(is_inverse_semigroup(B.semigroup));
  CHECK(inverse_oracle(B.semigroup));
  CHECK(B.semigroup.mul(B.element(0, 1, 1), B.element(1, 1, 0)) == B.element(0, 0, 0));
  CHECK(B.semigroup.mul(B.element(0, 1, 1), B.element(0, 1, 0)) == 0);
}

TEST_CASE("inverse semigroup test agrees with the Vagner oracle") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto const S = fx::random_semigroup(rng, 3, 3);
    CHECK(is_inverse_semigroup(S) == inverse_oracle(S));
  }
}

TEST_CASE("small monoid sizes and the Brandt ideal") {
  struct Case { std::size_t n, k, r; };
  for (auto [n, k, r] : {Case{2, 1, 1}, Case{2, 2, 1}, Case{3, 1, 1}, Case{3, 2, 1},
                         Case{3, 1, 2}}) {
    CAPTURE(n); CAPTURE(k); CAPTURE(r);
    auto const S = small_monoid(n, FiniteGroup::cyclic(k), r);
    std::size_t const ideal = count_rank(n, r, k) + 1;
    CHECK(S.semigroup.size() == count_rank(n, n, k) + ideal);
    CHECK(S.ideal_size == ideal);
    CHECK(S.num_units == count_rank(n, n, k));
    CHECK(S.brandt_target.semigroup.size() == ideal);
    CHECK(is_inverse_semigroup(S.semigroup));
    auto const G = green(S.semigroup);
    CHECK(G.j_classes.size() == 3);
  }
  auto const S = small_monoid(2, FiniteGroup::cyclic(2));
  CHECK(S.semigroup.size() == 17);
  auto const T = small_monoid(3, FiniteGroup::trivial(), 2);
  CHECK(T.ideal_size == 19);
  CHECK(T.brandt_target.group.order() == 2);
  CHECK_THROWS_AS(small_monoid(2, FiniteGroup::trivial(), 2), InputError);
}

TEST_CASE("small monoids are generalized group mapping") {
  for (std::size_t k : {1, 2}) {
    auto const S = small_monoid(2, FiniteGroup::cyclic(k));
    auto const G = green(S.semigroup);
    auto const C = classify(S.semigroup, G);
    CHECK(C.generalized_group_mapping);
    CHECK(C.group_mapping == (k > 1));
    Index j = kNone;
    for (Index s = 0; s < S.matrices.size(); ++s) {
      if (S.matrices[s].rank() == 1) j = G.j_of[s];
    }
    auto const P = present(S.semigroup, j);
    CHECK(P.rees.num_a() == 2);
    CHECK(P.rees.group.group.order() == k);
  }
}

TEST_CASE("the lift T(S)") {
  auto const S = small_monoid(2, FiniteGroup::cyclic(2));
  auto const T = lift_TS(S);
  // Each s extends in (n - rank s)! |G|^(n - rank s) ways.
  std::size_t expected = 0;
  for (auto const& M : S.matrices) {
    expected += count_rank(2 - M.rank(), 2 - M.rank(), 2);
  }
  CHECK(T.semigroup.size() == expected);
  CHECK(T.semigroup.size() == 32);

  auto const c = analyze_lift(S, T);
  CHECK(c.num_jclasses == 3);
  CHECK(c.size_j0 == 8);
  CHECK(c.size_j1 == 16);
  CHECK(c.size_j2 == 8);
  CHECK(c.h_order == 4);
  CHECK(c.j1_rows == 2);
  CHECK(c.j0_group_iso);
  CHECK(c.j2_group_iso);
  CHECK(c.j1_brandt);
  CHECK(c.h_iso);
  CHECK(c.kills_j0);

  auto const S3 = small_monoid(3, FiniteGroup::trivial());
  auto const c3 = analyze_lift(S3, lift_TS(S3));
  CHECK(c3.h_order == 2);
  CHECK(c3.h_iso);
  CHECK(c3.j1_brandt);
  CHECK_THROWS_AS(lift_TS(small_monoid(3, FiniteGroup::trivial(), 2)), InputError);
}

TEST_CASE("inverse decomposition") {
  for (std::size_t n : {2, 3}) {
    for (std::size_t k : {1, 2}) {
      CAPTURE(n); CAPTURE(k);
      auto const S = small_monoid(n, FiniteGroup::cyclic(k));
      auto const D = inverse_decomposition(S);
      CHECK(D.division.status == DivisionStatus::found);
      CHECK(D.flow_division.status == DivisionStatus::found);
      CHECK(D.flow_lifts_in_lift);
      CHECK(D.product.size() == D.coordinates.size());
    }
  }
}
