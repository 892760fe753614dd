#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "krc/products.hpp"

using namespace krc;
using fx::pt;

namespace {

  FiniteSemigroup trivial_ts() {
    return generate({{"1", PartialTransformation::identity(1)}});
  }

  // (b, q)(f, t) evaluated from the definition, without the Wreath class.
  std::pair<Point, Point> act_oracle(FiniteSemigroup const& S,
                                     FiniteSemigroup const& T,
                                     WreathElement const&   w,
                                     Point                  b,
                                     Point                  q) {
    Point qt = T.transformation(w.t)(q);
    if (qt == 0) {
      return {0, 0};
    }
    Point bf = S.transformation(w.f[q - 1])(b);
    if (bf == 0) {
      return {0, 0};
    }
    return {bf, qt};
  }

}  // namespace

TEST_CASE("wreath with a trivial right factor is the left factor") {
  auto       S = fx::sym3();
  Wreath     W(S, trivial_ts());
  auto const full = W.full();
  CHECK(full.semigroup.size() == S.size());
  CHECK(is_aperiodic(full.semigroup) == is_aperiodic(S));
}

TEST_CASE("wreath carrier size is |S|^|Q| |T| for total actions") {
  auto two_points = generate({{"1", PartialTransformation::identity(2)}});
  Wreath W(fx::z2(), two_points);
  CHECK(W.carrier_bound() == 4);
  CHECK(W.full().semigroup.size() == 4);
}

TEST_CASE("wreath action matches the coordinate formula") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto S = fx::random_semigroup(rng, 3, 2);
    auto T = fx::random_semigroup(rng, 2, 2);
    Wreath W(S, T);
    std::uniform_int_distribution<Index> se(0, static_cast<Index>(S.size() - 1));
    std::uniform_int_distribution<Index> te(0, static_cast<Index>(T.size() - 1));
    for (int k = 0; k < 10; ++k) {
      WreathElement x{std::vector<Index>(T.degree()), te(rng)};
      WreathElement y{std::vector<Index>(T.degree()), te(rng)};
      for (auto& v : x.f) v = se(rng);
      for (auto& v : y.f) v = se(rng);
      for (Point q = 1; q <= T.degree(); ++q) {
        for (Point b = 1; b <= S.degree(); ++b) {
          CHECK(W.act(b, q, x) == act_oracle(S, T, x, b, q));
          auto [b1, q1] = act_oracle(S, T, x, b, q);
          auto two      = b1 == 0 ? std::pair<Point, Point>{0, 0}
                                  : act_oracle(S, T, y, b1, q1);
          CHECK(W.act(b, q, W.mul(x, y)) == two);
        }
      }
      // faithful after normalisation, unless S contains the empty map
      bool has_empty = false;
      for (Index s = 0; s < S.size(); ++s) {
        has_empty = has_empty || S.transformation(s).rank() == 0;
      }
      if (!has_empty) CHECK((W.action(W.normalize(x)) == W.action(W.normalize(y)))
            == (W.normalize(x) == W.normalize(y)));
    }
  }
}

TEST_CASE("wreath carrier budget") {
  Wreath W(fx::sym3(), generate({{"1", PartialTransformation::identity(4)}}));
  CHECK_THROWS_AS(W.carrier(100), ResourceError);
}

TEST_CASE("semidirect with trivial action is the direct product") {
  auto S = fx::z2(), T = fx::right_zero2();
  std::vector<std::vector<Index>> act(T.size(), std::vector<Index>(S.size()));
  for (Index t = 0; t < T.size(); ++t)
    for (Index s = 0; s < S.size(); ++s) act[t][s] = s;
  CHECK(semidirect(S, T, act).table() == direct_product(S, T).table());
}

TEST_CASE("Z2 acting trivially on Z2 gives the Klein four-group") {
  auto S = fx::z2();
  std::vector<std::vector<Index>> act{{0, 1}, {0, 1}};
  auto K = semidirect(S, S, act);
  CHECK(K.size() == 4);
  auto e = K.identity();
  REQUIRE(e.has_value());
  for (Index s = 0; s < 4; ++s) CHECK(K.mul(s, s) == *e);
}

TEST_CASE("semidirect rejects a non-endomorphism") {
  auto S = fx::right_zero2();
  std::vector<std::vector<Index>> act{{0, 0}, {1, 0}};
  CHECK_THROWS_AS(semidirect(S, S, act), InputError);
}

TEST_CASE("wreath carrier equals S^Q semidirect T under the shift") {
  auto S = fx::z2();
  auto T = fx::z2();
  Wreath W(S, T);
  auto   full = W.full();
  auto   SQ   = direct_product(S, S);  // index f(1) * 2 + f(2)
  std::vector<std::vector<Index>> act(T.size(), std::vector<Index>(SQ.size()));
  for (Index t = 0; t < T.size(); ++t) {
    auto const& tr = T.transformation(t);
    for (Index f = 0; f < 4; ++f) {
      Index v[2] = {f / 2, f % 2};
      act[t][f]  = v[tr(1) - 1] * 2 + v[tr(2) - 1];
    }
  }
  auto sd = semidirect(SQ, T, act);
  auto enc = [&](WreathElement const& w) { return (w.f[0] * 2 + w.f[1]) * 2 + w.t; };
  for (Index a = 0; a < full.elements.size(); ++a) {
    for (Index b = 0; b < full.elements.size(); ++b) {
      CHECK(enc(full.elements[full.semigroup.mul(a, b)])
            == sd.mul(enc(full.elements[a]), enc(full.elements[b])));
    }
  }
}

TEST_CASE("division checks") {
  auto S3 = fx::sym3();
  std::vector<Index> ids;
  for (std::size_t x = 0; x < S3.num_generators(); ++x) ids.push_back(S3.generator(x));
  auto self = check_division(S3, S3, ids);
  CHECK(self.status == DivisionStatus::found);
  REQUIRE(self.witness.has_value());
  CHECK(verify_division(S3, S3, *self.witness));

  auto z = check_division(fx::z2(), S3);
  CHECK(z.status == DivisionStatus::found);
  CHECK(verify_division(fx::z2(), S3, *z.witness));

  auto none = check_division(fx::z2(), fx::right_zero2());
  CHECK(none.status == DivisionStatus::none);

  auto b2 = fx::brandt_monoid(2, 2);
  auto unknown = check_division(b2, S3, std::nullopt, 3);
  CHECK(unknown.status == DivisionStatus::unknown);
}

TEST_CASE("tampered division witnesses are rejected") {
  auto S3 = fx::sym3();
  auto z  = check_division(fx::z2(), S3);
  REQUIRE(z.witness.has_value());
  auto bad = *z.witness;
  bad.images.back() = 1 - bad.images.back();
  CHECK_FALSE(verify_division(fx::z2(), S3, bad));
}

TEST_CASE("product of wreaths embedding") {
  auto one = trivial_ts();
  CHECK(embed_product_of_wreaths(one, one, one, one).ok());
  // (P, T) trivial: the special case of a direct factor
  CHECK(embed_product_of_wreaths(fx::z2(), fx::right_zero2(), one, fx::z2()).ok());
  std::mt19937 rng(9);
  for (int trial = 0; trial < 8; ++trial) {
    auto S  = fx::random_semigroup(rng, 2, 2);
    auto S2 = fx::random_semigroup(rng, 2, 2);
    auto T  = fx::random_semigroup(rng, 2, 1);
    auto T2 = fx::random_semigroup(rng, 2, 1);
    auto r  = embed_product_of_wreaths(S, S2, T, T2);
    CHECK(r.ok());
    CHECK(r.points_checked > 0);
  }
}
