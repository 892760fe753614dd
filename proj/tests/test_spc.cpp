#include <doctest.h>

#include "fixtures.hpp"
#include "krc/spc.hpp"

using namespace krc;
using fx::leq_oracle;
using fx::leq_r;
using fx::rhodes;

TEST_CASE("SPC counts over two points and Z2") {
  auto G   = FiniteGroup::cyclic(2);
  auto all = enumerate_spc(2, G);
  CHECK(all.size() == 6);
  CHECK(rhodes(all).size() == 7);
  CHECK(all.front().w().size() == 2);
  CHECK(all.back() == empty_spc(2));
}

TEST_CASE("canonicalize") {
  auto G = FiniteGroup::cyclic(2);
  auto x = make_spc(2, {{0, 1}}, {1, 1}, G);
  CHECK(canonicalize(x, G).mu == std::vector<Index>{0, 0});
  auto c = canonicalize(x, G);
  CHECK(canonicalize(c, G) == c);
}

TEST_CASE("canonical forms coincide exactly on equivalent labellings") {
  for (std::size_t k : {1, 2, 3}) {
    auto G = FiniteGroup::cyclic(k);
    for (std::size_t n = 1; n <= 3; ++n) {
      for (auto const& base : enumerate_spc(n, G)) {
        auto w = base.w();
        std::vector<SPC> raw;
        std::vector<Index> lab(w.size(), 0);
        while (true) {
          SPC x = base;
          for (std::size_t i = 0; i < w.size(); ++i) x.mu[w[i]] = lab[i];
          raw.push_back(x);
          std::size_t i = 0;
          for (; i < lab.size(); ++i) {
            if (++lab[i] < k) break;
            lab[i] = 0;
          }
          if (i == lab.size()) break;
        }
        for (auto const& a : raw)
          for (auto const& b : raw) {
            bool equiv = leq_oracle(a, b, G) && leq_oracle(b, a, G);
            CHECK((canonicalize(a, G) == canonicalize(b, G)) == equiv);
          }
      }
    }
  }
}

TEST_CASE("order, meet and join against brute force") {
  for (std::size_t k : {1, 2}) {
    auto G = FiniteGroup::cyclic(k);
    for (std::size_t n = 1; n <= 3; ++n) {
      auto all = enumerate_spc(n, G);
      auto R   = rhodes(all);
      bool some_top = false;
      for (auto const& x : all) {
        CHECK(leq(empty_spc(n), x, G));
        CHECK(meet(x, x, G) == x);
        CHECK(join(x, empty_spc(n), G) == RhodesElement(x));
        for (auto const& y : all) {
          CHECK(leq(x, y, G) == leq_oracle(x, y, G));
          // greatest lower bound
          auto m = meet(x, y, G);
          CHECK(leq_oracle(m, x, G));
          CHECK(leq_oracle(m, y, G));
          for (auto const& z : all)
            if (leq_oracle(z, x, G) && leq_oracle(z, y, G)) CHECK(leq_oracle(z, m, G));
          // least upper bound in the Rhodes lattice
          auto j = join(x, y, G);
          CHECK(leq_r(x, j, G));
          CHECK(leq_r(y, j, G));
          for (auto const& z : R)
            if (leq_r(x, z, G) && leq_r(y, z, G)) CHECK(leq_r(j, z, G));
          if (!j) some_top = true;
        }
      }
      if (k == 1) CHECK_FALSE(some_top);
      if (k == 2 && n >= 2) CHECK(some_top);
    }
  }
}

TEST_CASE("leq is a partial order on canonical SPCs") {
  auto G   = FiniteGroup::cyclic(2);
  auto all = enumerate_spc(3, G);
  for (auto const& x : all) {
    CHECK(leq(x, x, G));
    for (auto const& y : all) {
      if (leq(x, y, G) && leq(y, x, G)) CHECK(x == y);
      for (auto const& z : all)
        if (leq(x, y, G) && leq(y, z, G)) CHECK(leq(x, z, G));
    }
  }
}

TEST_CASE("meet is associative and commutative") {
  auto G   = FiniteGroup::cyclic(2);
  auto all = enumerate_spc(2, G);
  for (auto const& x : all)
    for (auto const& y : all) {
      CHECK(meet(x, y, G) == meet(y, x, G));
      for (auto const& z : all) CHECK(meet(meet(x, y, G), z, G) == meet(x, meet(y, z, G), G));
    }
}

TEST_CASE("mu action and the cross-section condition") {
  auto G = FiniteGroup::cyclic(2);
  // injective action: always defined
  ElementAction inj{{1, 0, kNone}, {1, 0, kNone}};
  auto r = mu_action({0, 1, 0}, inj, G);
  CHECK(r.ok());
  CHECK(r.mu == std::vector<Index>{1, 1, kNone});
  // both points go to 0 with labels that disagree
  ElementAction merge{{0, 0, kNone}, {0, 0, kNone}};
  auto bad = mu_action({0, 1, kNone}, merge, G);
  REQUIRE_FALSE(bad.ok());
  CHECK(*bad.failure == std::pair<Index, Index>{0, 1});
  CHECK(mu_action({1, 1, kNone}, merge, G).ok());
}

TEST_CASE("cross-section verdict is invariant under a common left multiplier") {
  auto G = FiniteGroup::cyclic(3);
  std::vector<ElementAction> acts;
  for (Index a = 0; a < 3; ++a)
    for (Index l0 = 0; l0 < 3; ++l0)
      for (Index l1 = 0; l1 < 3; ++l1) acts.push_back({{a % 2, 0, kNone}, {l0, l1, kNone}});
  for (auto const& s : acts)
    for (Index m0 = 0; m0 < 3; ++m0)
      for (Index m1 = 0; m1 < 3; ++m1)
        for (Index g = 0; g < 3; ++g) {
          std::vector<Index> mu{m0, m1, kNone}, nu{G.mul(g, m0), G.mul(g, m1), kNone};
          CHECK(mu_action(mu, s, G).ok() == mu_action(nu, s, G).ok());
        }
}

TEST_CASE("SPC text round trip") {
  auto G = FiniteGroup::cyclic(2);
  for (auto const& x : enumerate_spc(3, G)) {
    auto s = to_string(x);
    CHECK(parse_spc(s, 3, G) == x);
  }
  auto x = parse_spc("W={1,2,3}; blocks=[{1,2}:0,1 | {3}:0]", 3, G);
  CHECK(x.num_blocks() == 2);
  CHECK(to_string(x) == "W={1,2,3}; blocks=[{1,2}:0,1 | {3}:0]");
  CHECK(to_string(empty_spc(2)) == "W={}; blocks=[]");
  CHECK_THROWS_AS(parse_spc("W={1}; blocks=[{1,2}:0,0]", 3, G), InputError);
  CHECK_THROWS_AS(parse_spc("W={1,2}; blocks=[{1}:0 | {1,2}:0,0]", 3, G), InputError);
  CHECK_THROWS_AS(parse_spc("W={1}; blocks=[{1}:5]", 3, G), InputError);
  CHECK_THROWS_AS(parse_spc("W={4}; blocks=[{4}:0]", 3, G), InputError);
}

TEST_CASE("group text round trip") {
  auto G = FiniteGroup::symmetric(3);
  CHECK(parse_group(group_to_string(G)) == G);
  CHECK_THROWS_AS(parse_group("order: 2\n0 1\n1 1\n"), InputError);
  CHECK_THROWS_AS(parse_group("order: 2\n0 1\n"), InputError);
}
