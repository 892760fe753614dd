#include "krc/inverse.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "krc/flows.hpp"
#include "krc/semilocal.hpp"

namespace krc {

  std::size_t PartialMonomialMatrix::rank() const {
    return static_cast<std::size_t>(
        std::count_if(col.begin(), col.end(), [](Index c) { return c != kNone; }));
  }

  PartialMonomialMatrix make_monomial(std::vector<Index> col,
                                      std::vector<Index> entry,
                                      FiniteGroup const& G) {
    if (col.size() != entry.size()) {
      throw InputError("monomial matrix rows and entries differ in length");
    }
    std::vector<bool> used(col.size(), false);
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] == kNone) {
        entry[i] = kNone;
        continue;
      }
      if (col[i] >= col.size() || used[col[i]]) {
        throw InputError("monomial matrix column repeated or out of range");
      }
      if (entry[i] >= G.order()) {
        throw InputError("monomial matrix entry out of range");
      }
      used[col[i]] = true;
    }
    return {std::move(col), std::move(entry)};
  }

  PartialMonomialMatrix zero_matrix(std::size_t n) {
    return {std::vector<Index>(n, kNone), std::vector<Index>(n, kNone)};
  }

  PartialMonomialMatrix identity_matrix(std::size_t n, FiniteGroup const& G) {
    PartialMonomialMatrix M{std::vector<Index>(n), std::vector<Index>(n, G.identity())};
    std::iota(M.col.begin(), M.col.end(), Index(0));
    return M;
  }

  PartialMonomialMatrix monomial_mul(PartialMonomialMatrix const& M,
                                     PartialMonomialMatrix const& N,
                                     FiniteGroup const&           G) {
    if (M.size() != N.size()) {
      throw InputError("monomial matrices of different sizes");
    }
    auto R = zero_matrix(M.size());
    for (std::size_t i = 0; i < M.size(); ++i) {
      Index const j = M.col[i];
      if (j == kNone || N.col[j] == kNone) {
        continue;
      }
      if (M.entry[i] >= G.order() || N.entry[j] >= G.order()) {
        throw InputError("monomial matrix entry outside the group");
      }
      R.col[i]   = N.col[j];
      R.entry[i] = G.mul(M.entry[i], N.entry[j]);
    }
    return R;
  }

  PartialMonomialMatrix rlm_matrix(PartialMonomialMatrix const& M) {
    auto R = M;
    for (std::size_t i = 0; i < R.size(); ++i) {
      R.entry[i] = R.col[i] == kNone ? kNone : 0;
    }
    return R;
  }

  PartialTransformation as_transformation(PartialMonomialMatrix const& M,
                                          FiniteGroup const&           G) {
    std::size_t const  k = G.order();
    std::vector<Point> im(M.size() * k, kUndefined);
    for (Index i = 0; i < M.size(); ++i) {
      if (M.col[i] == kNone) {
        continue;
      }
      for (Index h = 0; h < k; ++h) {
        im[i * k + h] = static_cast<Point>(M.col[i] * k + G.mul(h, M.entry[i]) + 1);
      }
    }
    return PartialTransformation(std::move(im));
  }

  Index MonomialGroup::index(PartialMonomialMatrix const& M) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), M);
    if (it == elements.end() || *it != M) {
      throw InputError("matrix is not a unit");
    }
    return static_cast<Index>(it - elements.begin());
  }

  namespace {

    // Every partial monomial matrix whose rank lies in ranks, in matrix order.
    std::vector<PartialMonomialMatrix>
    enumerate_monomial(std::size_t n, FiniteGroup const& G, std::set<std::size_t> const& ranks) {
      std::vector<PartialMonomialMatrix> out;
      auto                               M = zero_matrix(n);
      std::vector<bool>                  used(n, false);
      auto rec = [&](auto&& self, std::size_t i, std::size_t rank) -> void {
        if (i == n) {
          if (ranks.count(rank)) {
            out.push_back(M);
          }
          return;
        }
        M.col[i]   = kNone;
        M.entry[i] = kNone;
        self(self, i + 1, rank);
        for (Index j = 0; j < n; ++j) {
          if (used[j]) {
            continue;
          }
          used[j] = true;
          for (Index g = 0; g < G.order(); ++g) {
            M.col[i]   = j;
            M.entry[i] = g;
            self(self, i + 1, rank + 1);
          }
          used[j]    = false;
          M.col[i]   = kNone;
          M.entry[i] = kNone;
        }
      };
      rec(rec, 0, 0);
      std::sort(out.begin(), out.end());
      return out;
    }

    std::vector<std::vector<Index>> subsets(std::size_t n, std::size_t r) {
      std::vector<std::vector<Index>> out;
      std::vector<Index>              cur;
      auto rec = [&](auto&& self, Index start) -> void {
        if (cur.size() == r) {
          out.push_back(cur);
          return;
        }
        for (Index i = start; i < n; ++i) {
          cur.push_back(i);
          self(self, i + 1);
          cur.pop_back();
        }
      };
      rec(rec, 0);
      return out;
    }

  }  // namespace

  MonomialGroup monomial_group(std::size_t k, FiniteGroup const& G) {
    if (k == 0) {
      throw InputError("monomial group of degree 0");
    }
    MonomialGroup M;
    M.elements = enumerate_monomial(k, G, {k});
    std::size_t const               m = M.elements.size();
    std::vector<std::vector<Index>> t(m, std::vector<Index>(m));
    for (Index a = 0; a < m; ++a) {
      for (Index b = 0; b < m; ++b) {
        t[a][b] = M.index(monomial_mul(M.elements[a], M.elements[b], G));
      }
    }
    M.group = FiniteGroup::from_table(std::move(t));
    return M;
  }

  BrandtSemigroup brandt(std::size_t n, FiniteGroup const& G) {
    if (n == 0) {
      throw InputError("Brandt semigroup of degree 0");
    }
    BrandtSemigroup B;
    B.n               = n;
    B.group           = G;
    std::size_t const k = G.order(), m = 1 + n * n * k;
    std::vector<std::vector<Index>> t(m, std::vector<Index>(m, 0));
    for (Index i = 0; i < n; ++i) {
      for (Index g = 0; g < k; ++g) {
        for (Index j = 0; j < n; ++j) {
          for (Index h = 0; h < k; ++h) {
            for (Index l = 0; l < n; ++l) {
              t[B.element(i, g, j)][B.element(j, h, l)] = B.element(i, G.mul(g, h), l);
            }
          }
        }
      }
    }
    B.semigroup = FiniteSemigroup::from_table(t);
    return B;
  }

  bool is_inverse_semigroup(FiniteSemigroup const& S) {
    for (Index s = 0; s < S.size(); ++s) {
      std::size_t inverses = 0;
      for (Index t = 0; t < S.size(); ++t) {
        if (S.mul(S.mul(s, t), s) == s && S.mul(S.mul(t, s), t) == t) {
          ++inverses;
        }
      }
      if (inverses != 1) {
        return false;
      }
    }
    std::vector<Index> idem;
    for (Index s = 0; s < S.size(); ++s) {
      if (S.is_idempotent(s)) {
        idem.push_back(s);
      }
    }
    for (auto e : idem) {
      for (auto f : idem) {
        if (S.mul(e, f) != S.mul(f, e)) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Small monoids
  ////////////////////////////////////////////////////////////////////////

  std::optional<Index> SmallMonoid::find(PartialMonomialMatrix const& M) const {
    for (Index s = 0; s < matrices.size(); ++s) {
      if (matrices[s] == M) {
        return s;
      }
    }
    return std::nullopt;
  }

  SmallMonoid small_monoid(std::size_t n, FiniteGroup const& G, std::size_t r) {
    if (r < 1 || r >= n) {
      throw InputError("small monoid needs 1 <= r < n");
    }
    SmallMonoid M;
    M.n     = n;
    M.r     = r;
    M.group = G;
    auto elts = enumerate_monomial(n, G, {0, r, n});
    // Canonical order of the action on G x [n]; the zero comes last.
    std::sort(elts.begin(), elts.end(), [&](auto const& a, auto const& b) {
      return as_transformation(a, G) < as_transformation(b, G);
    });
    std::map<PartialMonomialMatrix, Index> idx;
    for (Index s = 0; s < elts.size(); ++s) {
      idx.emplace(elts[s], s);
    }
    std::size_t const               m = elts.size();
    std::vector<std::vector<Index>> t(m, std::vector<Index>(m));
    for (Index a = 0; a < m; ++a) {
      for (Index b = 0; b < m; ++b) {
        auto p = monomial_mul(elts[a], elts[b], G);
        if (p.rank() < r) {
          p = zero_matrix(n);
        }
        t[a][b] = idx.at(p);
      }
    }
    M.semigroup = FiniteSemigroup::from_table(t);
    M.matrices  = elts;
    M.zero      = idx.at(zero_matrix(n));
    for (auto const& e : elts) {
      if (e.rank() == n) {
        ++M.num_units;
      }
    }
    M.ideal_size = m - M.num_units;

    // The ideal is B_{n choose r}(G wr Sym_r) via M -> (rows, induced r x r
    // matrix, columns).
    auto const sets  = subsets(n, r);
    auto const mono  = monomial_group(r, G);
    M.brandt_target  = brandt(sets.size(), mono.group);
    auto set_index = [&](std::vector<Index> const& s) {
      return static_cast<Index>(std::lower_bound(sets.begin(), sets.end(), s) - sets.begin());
    };
    std::vector<Index> to_brandt(m, kNone);
    std::set<Index>    hit;
    for (Index s = 0; s < m; ++s) {
      auto const& e = elts[s];
      if (e.rank() == n) {
        continue;
      }
      M.ideal_elements.push_back(s);
      if (s == M.zero) {
        to_brandt[s] = 0;
      } else {
        std::vector<Index> rows, cols;
        for (Index i = 0; i < n; ++i) {
          if (e.col[i] != kNone) {
            rows.push_back(i);
            cols.push_back(e.col[i]);
          }
        }
        std::sort(cols.begin(), cols.end());
        auto small = zero_matrix(r);
        for (Index k = 0; k < r; ++k) {
          Index const i = rows[k];
          small.col[k] = static_cast<Index>(
              std::lower_bound(cols.begin(), cols.end(), e.col[i]) - cols.begin());
          small.entry[k] = e.entry[i];
        }
        to_brandt[s] = M.brandt_target.element(set_index(rows), mono.index(small),
                                               set_index(cols));
      }
      if (!hit.insert(to_brandt[s]).second) {
        throw VerificationError("the Brandt map on the ideal is not injective");
      }
      M.brandt_image.push_back(to_brandt[s]);
    }
    if (hit.size() != M.brandt_target.semigroup.size()) {
      throw VerificationError("the Brandt map on the ideal is not onto");
    }
    for (auto a : M.ideal_elements) {
      for (auto b : M.ideal_elements) {
        if (to_brandt[M.semigroup.mul(a, b)]
            != M.brandt_target.semigroup.mul(to_brandt[a], to_brandt[b])) {
          throw VerificationError("the Brandt map on the ideal is not a morphism");
        }
      }
    }
    return M;
  }

  ////////////////////////////////////////////////////////////////////////
  // The lift
  ////////////////////////////////////////////////////////////////////////

  namespace {

    bool extends(PartialMonomialMatrix const& tau, PartialMonomialMatrix const& s) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.col[i] != kNone && (tau.col[i] != s.col[i] || tau.entry[i] != s.entry[i])) {
          return false;
        }
      }
      return true;
    }

    // The J-class of the rank-one elements of S.
    Index brandt_class(SmallMonoid const& S, GreenStructure const& G) {
      for (Index s = 0; s < S.matrices.size(); ++s) {
        if (S.matrices[s].rank() == 1) {
          return G.j_of[s];
        }
      }
      throw InputError("semigroup has no rank-one elements");
    }

    // Sorted list of the transformations of an RLM quotient after renaming
    // its points by rename (0-based).
    std::vector<PartialTransformation> renamed(FiniteSemigroup const&    R,
                                               std::vector<Index> const& rename) {
      std::vector<PartialTransformation> out;
      std::size_t const                  n = rename.size();
      for (Index s = 0; s < R.size(); ++s) {
        std::vector<Point> im(n, kUndefined);
        auto const&        f = R.transformation(s);
        for (Index b = 0; b < n; ++b) {
          Point const v = f(b + 1);
          im[rename[b]] = v == kUndefined ? kUndefined : rename[v - 1] + 1;
        }
        out.emplace_back(std::move(im));
      }
      std::sort(out.begin(), out.end());
      return out;
    }

  }  // namespace

  Lift lift_TS(SmallMonoid const& S) {
    if (S.r != 1) {
      throw InputError("the lift needs the rank-one Brandt ideal (r = 1)");
    }
    Lift T;
    T.units = monomial_group(S.n, S.group);
    std::map<std::pair<Index, Index>, Index> idx;
    for (Index s = 0; s < S.matrices.size(); ++s) {
      for (Index u = 0; u < T.units.elements.size(); ++u) {
        if (extends(T.units.elements[u], S.matrices[s])) {
          idx.emplace(std::pair{s, u}, static_cast<Index>(T.pairs.size()));
          T.pairs.emplace_back(s, u);
        }
      }
    }
    std::size_t const               m = T.pairs.size();
    std::vector<std::vector<Index>> t(m, std::vector<Index>(m));
    for (Index a = 0; a < m; ++a) {
      for (Index b = 0; b < m; ++b) {
        auto const [s, u]   = T.pairs[a];
        auto const [s2, u2] = T.pairs[b];
        auto it = idx.find({S.semigroup.mul(s, s2), T.units.group.mul(u, u2)});
        if (it == idx.end()) {
          throw VerificationError("T(S) is not closed under multiplication");
        }
        t[a][b] = it->second;
      }
    }
    T.semigroup = FiniteSemigroup::from_table(t);
    std::set<Index> on_s, on_units;
    for (auto [s, u] : T.pairs) {
      T.to_s.push_back(s);
      on_s.insert(s);
      on_units.insert(u);
    }
    if (on_s.size() != S.semigroup.size() || on_units.size() != T.units.elements.size()) {
      throw VerificationError("T(S) is not a subdirect product");
    }

    // RLM(T(S)) = RLM(S), matching L-classes through the projection.
    auto const gs = green(S.semigroup);
    auto const gt = green(T.semigroup);
    Index const js = brandt_class(S, gs);
    Index       jt = kNone;
    for (Index a = 0; a < m; ++a) {
      if (S.matrices[T.pairs[a].first].rank() == 1) {
        jt = gt.j_of[a];
        break;
      }
    }
    auto const rs = rlm_quotient(S.semigroup, gs, js);
    auto const rt = rlm_quotient(T.semigroup, gt, jt);
    std::vector<Index> rename(rt.jclass.l_classes.size(), kNone);
    for (Index b = 0; b < rename.size(); ++b) {
      Index const member = gt.l_classes[rt.jclass.l_classes[b]].front();
      Index const l      = gs.l_of[T.to_s[member]];
      auto it = std::find(rs.jclass.l_classes.begin(), rs.jclass.l_classes.end(), l);
      if (it == rs.jclass.l_classes.end()) {
        throw VerificationError("projection does not match L-classes");
      }
      rename[b] = static_cast<Index>(it - rs.jclass.l_classes.begin());
    }
    std::vector<Index> identity(rs.jclass.l_classes.size());
    std::iota(identity.begin(), identity.end(), Index(0));
    if (rename.size() != identity.size()
        || renamed(rt.semigroup, rename) != renamed(rs.semigroup, identity)) {
      throw VerificationError("RLM(T(S)) differs from RLM(S)");
    }
    return T;
  }

  InverseDecomposition inverse_decomposition(SmallMonoid const& S) {
    auto const T   = lift_TS(S);
    auto const gs  = green(S.semigroup);
    Index const js = brandt_class(S, gs);
    auto const rlm = rlm_quotient(S.semigroup, gs, js);

    InverseDecomposition D;
    std::map<std::pair<Index, Index>, Index> image_of;
    for (auto [s, u] : T.pairs) {
      image_of.emplace(std::pair{u, rlm.morphism[s]}, kNone);
    }
    for (auto& [c, i] : image_of) {
      i = static_cast<Index>(D.coordinates.size());
      D.coordinates.push_back(c);
    }
    std::vector<Index> s_at(D.coordinates.size(), kNone);
    for (auto [s, u] : T.pairs) {
      Index const i = image_of.at({u, rlm.morphism[s]});
      if (s_at[i] == kNone) {
        s_at[i] = s;
      } else if (s_at[i] != s) {
        throw VerificationError("(tau, RLM(s)) does not determine s");
      }
    }
    std::size_t const               m = D.coordinates.size();
    std::vector<std::vector<Index>> t(m, std::vector<Index>(m));
    for (Index a = 0; a < m; ++a) {
      for (Index b = 0; b < m; ++b) {
        std::pair<Index, Index> c{
            T.units.group.mul(D.coordinates[a].first, D.coordinates[b].first),
            rlm.semigroup.mul(D.coordinates[a].second, D.coordinates[b].second)};
        auto it = image_of.find(c);
        if (it == image_of.end()) {
          throw VerificationError("the image of T(S) is not closed");
        }
        t[a][b] = it->second;
        if (s_at[it->second] != S.semigroup.mul(s_at[a], s_at[b])) {
          throw VerificationError("(tau, RLM(s)) -> s is not a morphism");
        }
      }
    }
    D.product = FiniteSemigroup::from_table(t);
    std::vector<Index> lifts;
    for (auto const& g : S.semigroup.generators()) {
      Index u = kNone;
      for (Index v = 0; v < T.units.elements.size() && u == kNone; ++v) {
        if (extends(T.units.elements[v], S.matrices[g.element])) {
          u = v;
        }
      }
      lifts.push_back(image_of.at({u, rlm.morphism[g.element]}));
    }
    D.division = check_division(S.semigroup, D.product, lifts);
    if (D.division.status != DivisionStatus::found) {
      throw VerificationError("inverse decomposition does not verify: " + D.division.report);
    }

    // Through the one-state flow: its lifted letters permute the singleton
    // blocks, i.e. the columns, as some unit extending the letter does.
    auto const P = present(S.semigroup, js);
    auto const W = presentation_construct(P, trivial_flow(P));
    D.flow_division = W.division;
    std::vector<Index> column(P.num_b());
    for (Index b = 0; b < P.num_b(); ++b) {
      auto const& M = S.matrices[P.green.l_classes[P.rees.jclass.l_classes[b]].front()];
      column[b]     = kNone;
      for (Index i = 0; i < M.size(); ++i) {
        if (M.col[i] != kNone) {
          column[b] = M.col[i];
        }
      }
    }
    D.flow_lifts_in_lift = W.division.status == DivisionStatus::found;
    for (std::size_t x = 0; x < S.semigroup.num_generators() && D.flow_lifts_in_lift; ++x) {
      auto const& s     = S.matrices[S.semigroup.generator(x)];
      auto const& perm  = W.perm[0][x];
      bool        found = false;
      for (auto const& tau : T.units.elements) {
        if (!extends(tau, s)) {
          continue;
        }
        bool same = true;
        for (Index b = 0; b < P.num_b() && same; ++b) {
          same = tau.col[column[b]] == column[perm[b]];
        }
        found = found || same;
      }
      D.flow_lifts_in_lift = found;
    }
    return D;
  }

  LiftCensus analyze_lift(SmallMonoid const& S, Lift const& T) {
    LiftCensus  c;
    auto const& TS = T.semigroup;
    auto const  G  = green(TS);
    c.num_jclasses = G.j_classes.size();
    auto const& units = T.units;
    Index const unit_id = units.index(identity_matrix(S.n, S.group));
    auto const  s_id    = S.find(identity_matrix(S.n, S.group));
    if (!s_id) {
      throw InputError("small monoid has no identity");
    }
    for (Index a = 0; a < TS.size(); ++a) {
      auto [s, u] = T.pairs[a];
      if (s == S.zero && u == unit_id) {
        c.j0 = G.j_of[a];
      } else if (s == *s_id && u == unit_id) {
        c.j2 = G.j_of[a];
      }
    }
    for (Index j = 0; j < G.j_classes.size(); ++j) {
      if (j != c.j0 && j != c.j2) {
        c.j1 = j;
      }
    }
    if (c.num_jclasses != 3 || c.j0 == kNone || c.j1 == kNone || c.j2 == kNone) {
      return c;
    }
    c.size_j0 = G.j_classes[c.j0].size();
    c.size_j1 = G.j_classes[c.j1].size();
    c.size_j2 = G.j_classes[c.j2].size();

    auto group_iso = [&](Index j) {
      Index e = G.least_idempotent(j);
      if (e == kNone || G.h_classes[G.h_of[e]].size() != G.j_classes[j].size()) {
        return false;
      }
      auto const         H = maximal_subgroup(TS, G, e);
      std::vector<Index> phi;
      for (auto h : H.members) {
        phi.push_back(T.pairs[h].second);
      }
      return is_isomorphism(H.group, units.group, phi);
    };
    c.j0_group_iso = group_iso(c.j0);
    c.j2_group_iso = group_iso(c.j2);
    c.kills_j0     = std::all_of(G.j_classes[c.j0].begin(), G.j_classes[c.j0].end(),
                                 [&](Index a) { return T.to_s[a] == S.zero; });

    // J1: Brandt shape and B_n(H) through (a, g, b) -> (a, g C(b, sigma b), sigma b).
    auto const R = rees_coordinates(TS, G, c.j1);
    c.j1_rows    = R.num_a();
    c.h_order    = R.group.group.order();
    std::vector<Index> sigma(R.num_b(), kNone);
    bool               shape = R.num_a() == R.num_b();
    for (Index b = 0; b < R.num_b() && shape; ++b) {
      for (Index a = 0; a < R.num_a(); ++a) {
        if (R.C[b][a] != kNone) {
          shape    = shape && sigma[b] == kNone;
          sigma[b] = a;
        }
      }
    }
    if (shape) {
      auto const  B  = brandt(R.num_a(), R.group.group);
      auto const& HG = R.group.group;
      auto to_b = [&](Index x) -> Index {
        if (G.j_of[x] != c.j1) {
          return 0;
        }
        auto const t = R.coord[x];
        return B.element(t.a, HG.mul(t.g, R.C[t.b][sigma[t.b]]), sigma[t.b]);
      };
      std::set<Index> hit;
      for (auto x : G.j_classes[c.j1]) {
        hit.insert(to_b(x));
      }
      bool ok = hit.size() == G.j_classes[c.j1].size() && !hit.count(0);
      for (auto x : G.j_classes[c.j1]) {
        for (auto y : G.j_classes[c.j1]) {
          ok = ok && to_b(TS.mul(x, y)) == B.semigroup.mul(to_b(x), to_b(y));
        }
      }
      c.j1_brandt = ok;
    }

    // H = G x (G wr Sym_{n-1}) through (s, tau) -> (entry of s, tau off row i).
    auto const&       H  = R.group;
    Index const       e  = H.members[0];
    auto const&       se = S.matrices[T.pairs[e].first];
    Index             i0 = kNone;
    for (Index i = 0; i < se.size(); ++i) {
      if (se.col[i] != kNone) {
        i0 = i;
      }
    }
    if (S.n >= 2 && i0 != kNone && se.col[i0] == i0) {
      auto const sub    = monomial_group(S.n - 1, S.group);
      auto const target = FiniteGroup::direct_product(S.group, sub.group);
      std::vector<Index> phi;
      bool               ok = true;
      for (auto h : H.members) {
        auto const& s   = S.matrices[T.pairs[h].first];
        auto const& tau = units.elements[T.pairs[h].second];
        if (s.col[i0] != i0) {
          ok = false;
          break;
        }
        auto rest = zero_matrix(S.n - 1);
        for (Index i = 0, k = 0; i < S.n; ++i) {
          if (i == i0) {
            continue;
          }
          Index const col = tau.col[i];
          if (col == i0) {
            ok = false;
            break;
          }
          rest.col[k]   = col > i0 ? col - 1 : col;
          rest.entry[k] = tau.entry[i];
          ++k;
        }
        if (!ok) {
          break;
        }
        phi.push_back(static_cast<Index>(s.entry[i0] * sub.group.order() + sub.index(rest)));
      }
      c.h_iso = ok && is_isomorphism(H.group, target, phi);
    }
    return c;
  }

}  // namespace krc
