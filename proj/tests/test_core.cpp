#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "krc/core.hpp"

using namespace krc;
using fx::pt;

TEST_CASE("compose applies the left map first and absorbs undefined") {
  auto f = pt({2, 0, 1});
  auto g = pt({1, 1, 0});
  CHECK(compose(f, g) == pt({1, 0, 1}));
  CHECK(compose(PartialTransformation::identity(3), g) == g);
  CHECK_THROWS_AS(compose(pt({1}), pt({1, 2})), InputError);
}

TEST_CASE("compose is associative on all partial maps of two points") {
  std::vector<PartialTransformation> all;
  for (Point a = 0; a <= 2; ++a) {
    for (Point b = 0; b <= 2; ++b) {
      all.push_back(pt({a, b}));
    }
  }
  for (auto const& f : all) {
    for (auto const& g : all) {
      for (auto const& h : all) {
        CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
      }
    }
  }
}

TEST_CASE("canonical order puts undefined last") {
  CHECK(pt({1, 2}) < pt({1, 0}));
  CHECK(pt({2, 1}) < pt({0, 1}));
}

TEST_CASE("generate small semigroups") {
  CHECK(generate({{"id", PartialTransformation::identity(2)}}).size() == 1);
  auto z2 = fx::z2();
  CHECK(z2.size() == 2);
  CHECK(z2.identity().has_value());
  auto rz = fx::right_zero2();
  CHECK(rz.size() == 2);
  for (Index s = 0; s < 2; ++s) {
    for (Index t = 0; t < 2; ++t) {
      CHECK(rz.mul(s, t) == t);
    }
  }
  CHECK(fx::sym3().size() == 6);
  CHECK(fx::brandt_monoid(2, 2).size() == 10);
}

TEST_CASE("generate respects the element budget") {
  CHECK_THROWS_AS(generate({{"s", pt({2, 1, 3})}, {"c", pt({2, 3, 1})}}, 5),
                  ResourceError);
}

TEST_CASE("elements come out in canonical order and words evaluate to them") {
  auto S = fx::sym3();
  for (Index s = 0; s + 1 < S.size(); ++s) {
    CHECK(S.transformation(s) < S.transformation(s + 1));
  }
  for (Index s = 0; s < S.size(); ++s) {
    CHECK(S.evaluate(S.word(s)) == s);
  }
}

TEST_CASE("multiplication agrees with composition and the Cayley graphs") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto S = fx::random_semigroup(rng, 4, 3);
    for (Index s = 0; s < S.size(); ++s) {
      for (std::size_t x = 0; x < S.num_generators(); ++x) {
        CHECK(S.right(s, x) == S.mul(s, S.generator(x)));
        CHECK(S.left(s, x) == S.mul(S.generator(x), s));
      }
      for (Index t = 0; t < S.size(); ++t) {
        auto st = S.find(compose(S.transformation(s), S.transformation(t)));
        REQUIRE(st.has_value());
        CHECK(*st == S.mul(s, t));
      }
    }
  }
}

TEST_CASE("Green classes of the right-zero semigroup") {
  auto S = fx::right_zero2();
  auto G = green(S);
  // st = t, so sS^1 = S for every s while S^1 s = {s}
  CHECK(G.r_classes.size() == 1);
  CHECK(G.l_classes.size() == 2);
  CHECK(G.j_classes.size() == 1);
  CHECK(G.j_regular[0]);
}

TEST_CASE("Green classes of B2(Z2) with identity") {
  auto S = fx::brandt_monoid(2, 2);
  auto G = green(S);
  CHECK(G.j_classes.size() == 3);
  auto zero = S.zero();
  REQUIRE(zero.has_value());
  CHECK(G.j_classes[G.j_of[*zero]].size() == 1);
  std::size_t nonzero_class = 0;
  for (Index j = 0; j < G.j_classes.size(); ++j) {
    if (G.j_classes[j].size() == 8) {
      ++nonzero_class;
      CHECK(G.j_regular[j]);
    }
  }
  CHECK(nonzero_class == 1);
}

TEST_CASE("Green relations match ideal equality on random semigroups") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto S = fx::random_semigroup(rng, 4, 3);
    auto G = green(S);
    CHECK(fx::as_partition(G.r_classes)
          == fx::partition_by(S, [&](Index s) { return fx::right_ideal(S, s); }));
    CHECK(fx::as_partition(G.l_classes)
          == fx::partition_by(S, [&](Index s) { return fx::left_ideal(S, s); }));
    CHECK(fx::as_partition(G.j_classes)
          == fx::partition_by(S, [&](Index s) { return fx::two_sided_ideal(S, s); }));
    for (Index s = 0; s < S.size(); ++s) {
      for (Index t = 0; t < S.size(); ++t) {
        auto ls = fx::left_ideal(S, s), lt = fx::left_ideal(S, t);
        bool sub = std::includes(lt.begin(), lt.end(), ls.begin(), ls.end());
        CHECK(G.leq_L(s, t) == sub);
      }
    }
  }
}

TEST_CASE("aperiodicity") {
  CHECK(is_aperiodic(fx::right_zero2()));
  CHECK_FALSE(is_aperiodic(fx::z2()));
  // acyclic transitions with self loops on three states
  auto S = generate({{"a", pt({2, 3, 3})}, {"b", pt({1, 3, 3})}, {"c", pt({3, 2, 3})}});
  CHECK(is_aperiodic(S));
  CHECK(fx::aperiodic_by_periods(S));
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto T = fx::random_semigroup(rng, 4, 2);
    CHECK(is_aperiodic(T) == fx::aperiodic_by_periods(T));
  }
}

TEST_CASE("maximal subgroups") {
  auto rz = fx::right_zero2();
  CHECK(maximal_subgroup(rz, 0).group.is_trivial());
  auto s3  = fx::sym3();
  auto id  = s3.identity();
  REQUIRE(id.has_value());
  auto sub = maximal_subgroup(s3, *id);
  CHECK(sub.group.order() == 6);
  CHECK(sub.members[0] == *id);
  auto b2 = fx::brandt_monoid(2, 2);
  auto e  = b2.find(fx::brandt_map(2, 2, 1, 0, 1));
  REQUIRE(e.has_value());
  CHECK(maximal_subgroup(b2, *e).group.order() == 2);
  CHECK_THROWS_AS(maximal_subgroup(b2, *b2.find(fx::brandt_map(2, 2, 1, 0, 2))),
                  InputError);
}

TEST_CASE("groups") {
  auto g = FiniteGroup::symmetric(3);
  CHECK(g.order() == 6);
  for (Index a = 0; a < 6; ++a) {
    CHECK(g.mul(a, g.inverse(a)) == g.identity());
  }
  CHECK(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)).order()
        == 6);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 0}, {0, 1}}), InputError);
}

TEST_CASE("abstract tables round trip through from_table") {
  auto S = fx::brandt_monoid(2, 2);
  auto T = FiniteSemigroup::from_table(S.table());
  CHECK(T.table() == S.table());
  CHECK(green(T).j_classes.size() == 3);
}
