#include "krc/products.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace krc {

  ////////////////////////////////////////////////////////////////////////
  // Wreath
  ////////////////////////////////////////////////////////////////////////

  Wreath::Wreath(FiniteSemigroup left, FiniteSemigroup right)
      : _left(std::move(left)), _right(std::move(right)) {
    if (!_left.has_transformations() || !_right.has_transformations()) {
      throw InputError("wreath product factors must be transformation semigroups");
    }
  }

  std::pair<Point, Point> Wreath::coordinates(Point p) const noexcept {
    auto const nb = static_cast<Point>(_left.degree());
    return {(p - 1) % nb + 1, (p - 1) / nb + 1};
  }

  WreathElement Wreath::normalize(WreathElement w) const {
    auto const& t = _right.transformation(w.t);
    for (std::size_t q = 0; q < w.f.size(); ++q) {
      if (t.images()[q] == kUndefined) {
        w.f[q] = 0;
      }
    }
    return w;
  }

  WreathElement Wreath::mul(WreathElement const& x, WreathElement const& y) const {
    WreathElement r;
    r.t         = _right.mul(x.t, y.t);
    auto const& t  = _right.transformation(x.t);
    auto const& tt = _right.transformation(r.t);
    r.f.resize(x.f.size());
    for (std::size_t q = 0; q < x.f.size(); ++q) {
      if (tt.images()[q] == kUndefined) {
        r.f[q] = 0;
      } else {
        r.f[q] = _left.mul(x.f[q], y.f[t.images()[q] - 1]);
      }
    }
    return r;
  }

  std::pair<Point, Point>
  Wreath::act(Point b, Point q, WreathElement const& w) const {
    if (b == kUndefined || q == kUndefined) {
      return {kUndefined, kUndefined};
    }
    Point const qt = _right.transformation(w.t)(q);
    if (qt == kUndefined) {
      return {kUndefined, kUndefined};
    }
    Point const bf = _left.transformation(w.f[q - 1])(b);
    if (bf == kUndefined) {
      return {kUndefined, kUndefined};
    }
    return {bf, qt};
  }

  PartialTransformation Wreath::action(WreathElement const& w) const {
    std::vector<Point> im(degree());
    for (Point q = 1; q <= _right.degree(); ++q) {
      for (Point b = 1; b <= _left.degree(); ++b) {
        auto [b2, q2]       = act(b, q, w);
        im[point(b, q) - 1] = b2 == kUndefined ? kUndefined : point(b2, q2);
      }
    }
    return PartialTransformation(std::move(im));
  }

  std::size_t Wreath::carrier_bound() const noexcept {
    std::size_t       bound = _right.size();
    std::size_t const limit = std::numeric_limits<std::size_t>::max();
    for (std::size_t q = 0; q < _right.degree(); ++q) {
      if (bound > limit / std::max<std::size_t>(_left.size(), 1)) {
        return limit;
      }
      bound *= _left.size();
    }
    return bound;
  }

  std::vector<WreathElement> Wreath::carrier(std::size_t budget) const {
    if (carrier_bound() > budget) {
      throw ResourceError("wreath carrier of size " + std::to_string(carrier_bound())
                          + " exceeds budget of " + std::to_string(budget));
    }
    std::vector<WreathElement> result;
    std::size_t const          nq = _right.degree();
    for (Index t = 0; t < _right.size(); ++t) {
      auto const&        tr = _right.transformation(t);
      std::vector<std::size_t> dom;
      for (std::size_t q = 0; q < nq; ++q) {
        if (tr.images()[q] != kUndefined) {
          dom.push_back(q);
        }
      }
      WreathElement w{std::vector<Index>(nq, 0), t};
      // Odometer over S^dom(t).
      while (true) {
        result.push_back(w);
        if (result.size() > FiniteSemigroup::kTableLimit) {
          throw ResourceError("normalised wreath carrier exceeds "
                              + std::to_string(FiniteSemigroup::kTableLimit)
                              + " elements");
        }
        std::size_t i = 0;
        for (; i < dom.size(); ++i) {
          if (++w.f[dom[i]] < _left.size()) {
            break;
          }
          w.f[dom[i]] = 0;
        }
        if (i == dom.size()) {
          break;
        }
      }
    }
    std::sort(result.begin(), result.end());
    return result;
  }

  Closure<WreathElement> Wreath::full(std::size_t budget) const {
    auto elts = carrier(budget);
    std::unordered_map<WreathElement, Index, WreathElementHash> idx;
    for (Index i = 0; i < elts.size(); ++i) {
      idx.emplace(elts[i], i);
    }
    std::vector<std::vector<Index>> table(elts.size(), std::vector<Index>(elts.size()));
    for (Index a = 0; a < elts.size(); ++a) {
      for (Index b = 0; b < elts.size(); ++b) {
        table[a][b] = idx.at(mul(elts[a], elts[b]));
      }
    }
    return {FiniteSemigroup::from_table(table), std::move(elts)};
  }

  Closure<WreathElement> Wreath::generated(std::vector<std::string> const&   names,
                                           std::vector<WreathElement> const& gens,
                                           std::size_t budget) const {
    std::vector<WreathElement> normal;
    for (auto const& g : gens) {
      if (g.f.size() != _right.degree() || g.t >= _right.size()) {
        throw InputError("wreath element does not match the factors");
      }
      for (auto s : g.f) {
        if (s >= _left.size()) {
          throw InputError("wreath element coordinate out of range");
        }
      }
      normal.push_back(normalize(g));
    }
    return close(
        names,
        normal,
        [this](WreathElement const& a, WreathElement const& b) { return mul(a, b); },
        budget,
        WreathElementHash{});
  }

  FiniteSemigroup
  Wreath::transformation_semigroup(std::vector<std::string> const&   names,
                                   std::vector<WreathElement> const& gens,
                                   std::size_t                       budget) const {
    std::vector<std::pair<std::string, PartialTransformation>> g;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      g.emplace_back(names.at(i), action(normalize(gens[i])));
    }
    return generate(g, budget);
  }

  ////////////////////////////////////////////////////////////////////////
  // Direct and semidirect products
  ////////////////////////////////////////////////////////////////////////

  FiniteSemigroup direct_product(FiniteSemigroup const& S, FiniteSemigroup const& T) {
    std::size_t const               m = S.size(), n = T.size();
    std::vector<std::vector<Index>> table(m * n, std::vector<Index>(m * n));
    for (Index a = 0; a < m * n; ++a) {
      for (Index b = 0; b < m * n; ++b) {
        table[a][b] = S.mul(a / n, b / n) * n + T.mul(a % n, b % n);
      }
    }
    return FiniteSemigroup::from_table(table);
  }

  FiniteSemigroup semidirect(FiniteSemigroup const&                 S,
                             FiniteSemigroup const&                 T,
                             std::vector<std::vector<Index>> const& action) {
    std::size_t const m = S.size(), n = T.size();
    if (action.size() != n) {
      throw InputError("action table must have one row per element of T");
    }
    for (auto const& row : action) {
      if (row.size() != m) {
        throw InputError("action row must have one entry per element of S");
      }
      for (auto v : row) {
        if (v >= m) {
          throw InputError("action entry out of range");
        }
      }
    }
    for (Index t = 0; t < n; ++t) {
      for (Index s = 0; s < m; ++s) {
        for (Index u = 0; u < m; ++u) {
          if (action[t][S.mul(s, u)] != S.mul(action[t][s], action[t][u])) {
            throw InputError("element " + std::to_string(t)
                             + " of T does not act by an endomorphism");
          }
        }
      }
      for (Index u = 0; u < n; ++u) {
        for (Index s = 0; s < m; ++s) {
          if (action[T.mul(t, u)][s] != action[t][action[u][s]]) {
            throw InputError("the given map is not a left action");
          }
        }
      }
    }
    std::vector<std::vector<Index>> table(m * n, std::vector<Index>(m * n));
    for (Index a = 0; a < m * n; ++a) {
      for (Index b = 0; b < m * n; ++b) {
        Index const s = a / n, t = a % n, s2 = b / n, t2 = b % n;
        table[a][b] = S.mul(s, action[t][s2]) * n + T.mul(t, t2);
      }
    }
    auto result = FiniteSemigroup::from_table(table);
    if (!spot_check_associative(result)) {
      throw VerificationError("semidirect product is not associative");
    }
    return result;
  }

  bool spot_check_associative(FiniteSemigroup const& S, std::size_t samples) {
    std::size_t const n = S.size();
    if (n <= 64) {
      for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
          for (Index c = 0; c < n; ++c) {
            if (S.mul(S.mul(a, b), c) != S.mul(a, S.mul(b, c))) {
              return false;
            }
          }
        }
      }
      return true;
    }
    std::mt19937                         rng(0x5eed);
    std::uniform_int_distribution<Index> pick(0, static_cast<Index>(n - 1));
    for (std::size_t i = 0; i < samples; ++i) {
      Index a = pick(rng), b = pick(rng), c = pick(rng);
      if (S.mul(S.mul(a, b), c) != S.mul(a, S.mul(b, c))) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Division
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Closes the relation generated by (lifts[x], gen_x) for x < used.
    // Returns the functional map U -> S (kNone outside U) or nullopt.
    std::optional<std::vector<Index>> relation(FiniteSemigroup const&    S,
                                               FiniteSemigroup const&    T,
                                               std::vector<Index> const& lifts,
                                               std::size_t               used) {
      std::vector<Index> image(T.size(), kNone);
      std::vector<Index> queue;
      for (std::size_t x = 0; x < used; ++x) {
        Index const u = lifts[x], s = S.generator(x);
        if (image[u] == kNone) {
          image[u] = s;
          queue.push_back(u);
        } else if (image[u] != s) {
          return std::nullopt;
        }
      }
      for (std::size_t i = 0; i < queue.size(); ++i) {
        Index const u = queue[i];
        for (std::size_t x = 0; x < used; ++x) {
          Index const v = T.mul(u, lifts[x]);
          Index const s = S.right(image[u], x);
          if (image[v] == kNone) {
            image[v] = s;
            queue.push_back(v);
          } else if (image[v] != s) {
            return std::nullopt;
          }
        }
      }
      return image;
    }

  }  // namespace

  std::optional<DivisionWitness> division_from_lifts(FiniteSemigroup const&    S,
                                                     FiniteSemigroup const&    T,
                                                     std::vector<Index> const& lifts) {
    if (lifts.size() != S.num_generators()) {
      throw InputError("need exactly one lift per generator of S");
    }
    for (auto u : lifts) {
      if (u >= T.size()) {
        throw InputError("lift out of range");
      }
    }
    auto image = relation(S, T, lifts, lifts.size());
    if (!image) {
      return std::nullopt;
    }
    DivisionWitness w;
    w.lifts = lifts;
    for (Index u = 0; u < T.size(); ++u) {
      if ((*image)[u] != kNone) {
        w.domain.push_back(u);
        w.images.push_back((*image)[u]);
      }
    }
    return w;
  }

  bool verify_division(FiniteSemigroup const& S,
                       FiniteSemigroup const& T,
                       DivisionWitness const& w) {
    if (w.lifts.size() != S.num_generators() || w.domain.size() != w.images.size()
        || w.domain.empty()) {
      return false;
    }
    std::unordered_map<Index, Index> map;
    for (std::size_t i = 0; i < w.domain.size(); ++i) {
      if (w.domain[i] >= T.size() || w.images[i] >= S.size()) {
        return false;
      }
      if (!map.emplace(w.domain[i], w.images[i]).second) {
        return false;
      }
    }
    for (std::size_t x = 0; x < w.lifts.size(); ++x) {
      auto it = map.find(w.lifts[x]);
      if (it == map.end() || it->second != S.generator(x)) {
        return false;
      }
    }
    for (auto const& [u, s] : map) {
      for (auto const& [v, t] : map) {
        auto it = map.find(T.mul(u, v));
        if (it == map.end() || it->second != S.mul(s, t)) {
          return false;
        }
      }
    }
    std::vector<bool> hit(S.size(), false);
    for (auto s : w.images) {
      hit[s] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }

  DivisionResult check_division(FiniteSemigroup const&                   S,
                                FiniteSemigroup const&                   T,
                                std::optional<std::vector<Index>> const& lifts,
                                std::size_t                              budget) {
    DivisionResult result;
    if (lifts) {
      result.nodes = 1;
      auto w       = division_from_lifts(S, T, *lifts);
      if (w) {
        result.status  = DivisionStatus::found;
        result.witness = std::move(w);
        result.report  = "the given lifts generate a division";
      } else {
        result.status = DivisionStatus::none;
        result.report = "the given lifts generate a non-functional relation";
      }
      return result;
    }
    std::size_t const  k = S.num_generators();
    std::vector<Index> chosen(k, 0);
    std::size_t        depth = 0;
    // Iterative depth-first search in lexicographic order of lift tuples.
    while (true) {
      if (result.nodes >= budget) {
        result.status = DivisionStatus::unknown;
        result.report = "search budget of " + std::to_string(budget)
                        + " nodes exhausted";
        return result;
      }
      ++result.nodes;
      bool const ok = relation(S, T, chosen, depth + 1).has_value();
      if (ok && depth + 1 == k) {
        result.status  = DivisionStatus::found;
        result.witness = division_from_lifts(S, T, chosen);
        result.report  = "witness found after " + std::to_string(result.nodes)
                        + " nodes";
        return result;
      }
      if (ok) {
        ++depth;
        chosen[depth] = 0;
        continue;
      }
      // Advance to the next sibling, backtracking as needed.
      while (true) {
        if (++chosen[depth] < T.size()) {
          break;
        }
        if (depth == 0) {
          result.status = DivisionStatus::none;
          result.report = "every lift tuple generates a non-functional relation";
          return result;
        }
        chosen[depth] = 0;
        --depth;
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Product of wreath products
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::vector<WreathElement> sample(Wreath const& W, std::size_t limit) {
      if (W.carrier_bound() <= limit) {
        return W.carrier(limit);
      }
      // Breadth-first prefix of the subsemigroup generated by the elements
      // (constant gen_x, gen_y).
      std::vector<WreathElement> gens;
      for (std::size_t x = 0; x < W.left().num_generators(); ++x) {
        for (std::size_t y = 0; y < W.right().num_generators(); ++y) {
          gens.push_back(W.normalize({std::vector<Index>(W.right().degree(),
                                                         W.left().generator(x)),
                                      W.right().generator(y)}));
        }
      }
      std::unordered_set<WreathElement, WreathElementHash> seen;
      std::vector<WreathElement>                           out;
      for (auto const& g : gens) {
        if (seen.insert(g).second) {
          out.push_back(g);
        }
      }
      for (std::size_t i = 0; i < out.size() && out.size() < limit; ++i) {
        for (auto const& g : gens) {
          auto p = W.mul(out[i], g);
          if (seen.insert(p).second) {
            out.push_back(std::move(p));
            if (out.size() >= limit) {
              break;
            }
          }
        }
      }
      return out;
    }

  }  // namespace

  ProductOfWreathsReport embed_product_of_wreaths(FiniteSemigroup const& S,
                                                  FiniteSemigroup const& S2,
                                                  FiniteSemigroup const& T,
                                                  FiniteSemigroup const& T2,
                                                  std::size_t sample_limit) {
    Wreath const W1(S, T), W2(S2, T2);
    std::size_t const nq = S.degree(), nq2 = S2.degree(), np = T.degree(),
                      np2 = T2.degree();
    auto const xs = sample(W1, sample_limit);
    auto const ys = sample(W2, sample_limit);

    // Target element: F over P x P' (index (p-1) * |P'| + (p'-1)) with values
    // pairs in S x S', plus (t, t').
    struct Target {
      std::vector<std::pair<Index, Index>> F;
      Index                                t, t2;
      bool operator==(Target const&) const = default;
    };
    auto embed = [&](WreathElement const& x, WreathElement const& y) {
      Target r{std::vector<std::pair<Index, Index>>(np * np2), x.t, y.t};
      auto const& tr  = T.transformation(x.t);
      auto const& tr2 = T2.transformation(y.t);
      for (std::size_t p = 0; p < np; ++p) {
        for (std::size_t p2 = 0; p2 < np2; ++p2) {
          bool const defined
              = tr.images()[p] != kUndefined && tr2.images()[p2] != kUndefined;
          r.F[p * np2 + p2] = defined ? std::pair{x.f[p], y.f[p2]} : std::pair{0u, 0u};
        }
      }
      return r;
    };
    auto target_mul = [&](Target const& a, Target const& b) {
      Target      r{std::vector<std::pair<Index, Index>>(np * np2),
               T.mul(a.t, b.t),
               T2.mul(a.t2, b.t2)};
      auto const& ta  = T.transformation(a.t);
      auto const& ta2 = T2.transformation(a.t2);
      auto const& tr  = T.transformation(r.t);
      auto const& tr2 = T2.transformation(r.t2);
      for (std::size_t p = 0; p < np; ++p) {
        for (std::size_t p2 = 0; p2 < np2; ++p2) {
          if (tr.images()[p] == kUndefined || tr2.images()[p2] == kUndefined) {
            r.F[p * np2 + p2] = {0, 0};
            continue;
          }
          auto const& bv = b.F[(ta.images()[p] - 1) * np2 + (ta2.images()[p2] - 1)];
          auto const& av = a.F[p * np2 + p2];
          r.F[p * np2 + p2] = {S.mul(av.first, bv.first), S2.mul(av.second, bv.second)};
        }
      }
      return r;
    };
    // (q, q', p, p') (F, (t, t')) = ((q, q') F(p, p'), (pt, p't')).
    auto target_act = [&](Target const& a, Point q, Point q2, Point p, Point p2) {
      std::array<Point, 4> none{kUndefined, kUndefined, kUndefined, kUndefined};
      Point const          pt  = T.transformation(a.t)(p);
      Point const          pt2 = T2.transformation(a.t2)(p2);
      if (pt == kUndefined || pt2 == kUndefined) {
        return none;
      }
      auto const& v   = a.F[(p - 1) * np2 + (p2 - 1)];
      Point const qs  = S.transformation(v.first)(q);
      Point const qs2 = S2.transformation(v.second)(q2);
      if (qs == kUndefined || qs2 == kUndefined) {
        return none;
      }
      return std::array<Point, 4>{qs, qs2, pt, pt2};
    };

    ProductOfWreathsReport                report;
    std::vector<Target>                   images;
    std::vector<std::vector<Point>>       source_actions;
    for (auto const& x : xs) {
      for (auto const& y : ys) {
        images.push_back(embed(x, y));
        source_actions.emplace_back();
        ++report.elements_checked;
        for (Point q = 1; q <= nq; ++q) {
          for (Point p = 1; p <= np; ++p) {
            for (Point q2 = 1; q2 <= nq2; ++q2) {
              for (Point p2 = 1; p2 <= np2; ++p2) {
                auto [b1, c1]   = W1.act(q, p, x);
                auto [b2, c2]   = W2.act(q2, p2, y);
                auto lhs        = std::array<Point, 4>{b1, b2, c1, c2};
                if (b1 == kUndefined || b2 == kUndefined) {
                  lhs = {kUndefined, kUndefined, kUndefined, kUndefined};
                }
                source_actions.back().insert(source_actions.back().end(), lhs.begin(), lhs.end());
                auto rhs = target_act(images.back(), q, q2, p, p2);
                ++report.points_checked;
                if (lhs != rhs) {
                  report.action_preserved = false;
                }
              }
            }
          }
        }
      }
    }
    // Injectivity on the product transformation semigroup: pairs are
    // compared by their action, since a product of partial actions
    // identifies every pair that acts as the empty map.
    for (std::size_t i = 0; i < images.size() && report.injective; ++i) {
      for (std::size_t j = i + 1; j < images.size(); ++j) {
        if (images[i] == images[j] && source_actions[i] != source_actions[j]) {
          report.injective = false;
          break;
        }
      }
    }
    // Morphism on a bounded set of pairs of pairs.
    std::size_t const limit = std::min<std::size_t>(images.size(), 60);
    for (std::size_t i = 0; i < limit; ++i) {
      for (std::size_t j = 0; j < limit; ++j) {
        auto const& x1 = xs[i / ys.size()];
        auto const& y1 = ys[i % ys.size()];
        auto const& x2 = xs[j / ys.size()];
        auto const& y2 = ys[j % ys.size()];
        auto lhs       = embed(W1.mul(x1, x2), W2.mul(y1, y2));
        auto rhs       = target_mul(images[i], images[j]);
        ++report.products_checked;
        if (!(lhs == rhs)) {
          report.morphism = false;
        }
      }
    }
    return report;
  }

}  // namespace krc
