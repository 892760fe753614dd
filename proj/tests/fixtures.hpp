// Small semigroups shared by the test suites, plus brute-force oracles that
// work straight from the definitions.
#ifndef KRC_TESTS_FIXTURES_HPP_
#define KRC_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "krc/core.hpp"
#include "krc/flows.hpp"
#include "krc/spc.hpp"

namespace fx {

  using krc::Index;
  using krc::PartialTransformation;
  using krc::Point;
  using Gens = std::vector<std::pair<std::string, PartialTransformation>>;

  inline PartialTransformation pt(std::vector<Point> v) {
    return PartialTransformation(std::move(v));
  }

  inline krc::FiniteSemigroup right_zero2() {
    return krc::generate({{"a", pt({1, 1})}, {"b", pt({2, 2})}});
  }

  inline krc::FiniteSemigroup z2() {
    return krc::generate({{"t", pt({2, 1})}});
  }

  inline krc::FiniteSemigroup sym3() {
    return krc::generate({{"s", pt({2, 1, 3})}, {"c", pt({2, 3, 1})}});
  }

  // B_n(Z_k) with an identity, acting on Z_k x [n]: the point (h, i) is
  // (i - 1) k + h + 1 and (i, g, j) sends (h, i) to (h g, j).
  inline PartialTransformation brandt_map(std::size_t n, std::size_t k,
                                          Index i, Index g, Index j) {
    std::vector<Point> v(n * k, 0);
    for (Index h = 0; h < k; ++h) {
      v[(i - 1) * k + h] = static_cast<Point>((j - 1) * k + (h + g) % k + 1);
    }
    return pt(v);
  }

  inline krc::FiniteSemigroup brandt_monoid(std::size_t n, std::size_t k) {
    Gens gens;
    for (Index i = 1; i <= n; ++i) {
      for (Index j = 1; j <= n; ++j) {
        if (i != j) {
          gens.emplace_back("e" + std::to_string(i) + std::to_string(j),
                            brandt_map(n, k, i, 0, j));
        }
      }
    }
    gens.emplace_back("g", brandt_map(n, k, 1, 1 % k, 1));
    gens.emplace_back("1", PartialTransformation::identity(n * k));
    return krc::generate(gens);
  }

  inline krc::FiniteSemigroup random_semigroup(std::mt19937& rng,
                                               std::size_t   max_points,
                                               std::size_t   max_gens) {
    std::uniform_int_distribution<std::size_t> npts(1, max_points), ngen(1, max_gens);
    std::size_t const n = npts(rng), k = ngen(rng);
    std::uniform_int_distribution<Point> img(0, static_cast<Point>(n));
    Gens gens;
    for (std::size_t x = 0; x < k; ++x) {
      std::vector<Point> v(n);
      for (auto& p : v) {
        p = img(rng);
      }
      gens.emplace_back("x" + std::to_string(x), pt(v));
    }
    return krc::generate(gens);
  }

  // Element sets S^1 s S^1 style ideals, from the multiplication table.
  inline std::set<Index> right_ideal(krc::FiniteSemigroup const& S, Index s) {
    std::set<Index> r{s};
    for (Index t = 0; t < S.size(); ++t) {
      r.insert(S.mul(s, t));
    }
    return r;
  }
  inline std::set<Index> left_ideal(krc::FiniteSemigroup const& S, Index s) {
    std::set<Index> r{s};
    for (Index t = 0; t < S.size(); ++t) {
      r.insert(S.mul(t, s));
    }
    return r;
  }
  inline std::set<Index> two_sided_ideal(krc::FiniteSemigroup const& S, Index s) {
    std::set<Index> r;
    for (auto u : left_ideal(S, s)) {
      for (auto v : right_ideal(S, u)) {
        r.insert(v);
      }
    }
    return r;
  }

  // Partition of the elements by a key, as a set of blocks.
  template <typename F>
  std::set<std::set<Index>> partition_by(krc::FiniteSemigroup const& S, F key) {
    std::map<decltype(key(Index{0})), std::set<Index>> blocks;
    for (Index s = 0; s < S.size(); ++s) {
      blocks[key(s)].insert(s);
    }
    std::set<std::set<Index>> out;
    for (auto& [k, b] : blocks) {
      out.insert(b);
    }
    return out;
  }

  inline std::set<std::set<Index>>
  as_partition(std::vector<std::vector<Index>> const& classes) {
    std::set<std::set<Index>> out;
    for (auto const& c : classes) {
      out.emplace(c.begin(), c.end());
    }
    return out;
  }

  // Every monogenic subsemigroup has period one.
  inline bool aperiodic_by_periods(krc::FiniteSemigroup const& S) {
    for (Index s = 0; s < S.size(); ++s) {
      std::vector<Index> seq{s};
      std::map<Index, std::size_t> seen{{s, 0}};
      while (true) {
        Index next = S.mul(seq.back(), s);
        auto it    = seen.find(next);
        if (it != seen.end()) {
          if (seq.size() - it->second != 1) {
            return false;
          }
          break;
        }
        seen.emplace(next, seq.size());
        seq.push_back(next);
      }
    }
    return true;
  }

  // M[Z_k; A, B; C] without zero, C[b][a] in Z_k; (a, g, b) has index
  // (a * k + g) * |B| + b.
  inline krc::FiniteSemigroup rees_matrix(std::size_t k,
                                          std::vector<std::vector<Index>> const& C) {
    std::size_t const nb = C.size(), na = C.front().size(), n = na * k * nb;
    std::vector<std::vector<Index>> t(n, std::vector<Index>(n));
    for (Index s = 0; s < n; ++s) {
      Index a = s / (k * nb), g = (s / nb) % k, b = s % nb;
      for (Index u = 0; u < n; ++u) {
        Index a2 = u / (k * nb), g2 = (u / nb) % k, b2 = u % nb;
        t[s][u] = static_cast<Index>((a * k + (g + C[b][a2] + g2) % k) * nb + b2);
      }
    }
    return krc::FiniteSemigroup::from_table(t);
  }

  ////////////////////////////////////////////////////////////////////////
  // SPC order and flows
  ////////////////////////////////////////////////////////////////////////

  using krc::FiniteGroup;
  using krc::kNone;
  using krc::RhodesElement;
  using krc::SPC;

  // The three order conditions, with the cross-section condition checked by
  // searching for the multiplier g on each block.
  inline bool leq_oracle(SPC const& x, SPC const& y, FiniteGroup const& G) {
    for (auto const& blk : x.blocks()) {
      Index target = kNone;
      for (auto b : blk) {
        if (!y.in_w(b)) return false;
        if (target == kNone) target = y.block_of[b];
        if (y.block_of[b] != target) return false;
      }
      bool some_g = false;
      for (Index g = 0; g < G.order() && !some_g; ++g) {
        bool all = true;
        for (auto b : blk) all = all && x.mu[b] == G.mul(g, y.mu[b]);
        some_g = all;
      }
      if (!some_g) return false;
    }
    return true;
  }

  inline std::vector<krc::RhodesElement> rhodes(std::vector<SPC> const& all) {
    std::vector<RhodesElement> r(all.begin(), all.end());
    r.push_back(std::nullopt);
    return r;
  }

  inline bool leq_r(RhodesElement const& x, RhodesElement const& y, FiniteGroup const& G) {
    if (!y) return true;
    if (!x) return false;
    return leq_oracle(*x, *y, G);
  }

  inline krc::Flow relabelled(krc::Flow F, FiniteGroup const& G, std::mt19937& rng) {
    std::uniform_int_distribution<Index> pick(0, static_cast<Index>(G.order() - 1));
    for (auto& x : F.xi) {
      std::vector<Index> g(x.num_blocks());
      for (auto& v : g) v = pick(rng);
      x = krc::relabel(x, g, G);
    }
    return F;
  }

}  // namespace fx

#endif
