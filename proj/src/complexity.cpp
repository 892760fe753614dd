#include "krc/complexity.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "krc/flows.hpp"
#include "krc/io.hpp"
#include "krc/spc.hpp"

namespace krc {

  bool complexity_zero(FiniteSemigroup const& S) {
    return is_aperiodic(S);
  }

  ////////////////////////////////////////////////////////////////////////
  // GM reduction
  ////////////////////////////////////////////////////////////////////////

  bool has_nontrivial_group(GreenStructure const& green, Index j) {
    for (auto e : green.idempotents) {
      if (green.j_of[e] == j && green.h_classes[green.h_of[e]].size() > 1) {
        return true;
      }
    }
    return false;
  }

  GmReduction gm_reduction(FiniteSemigroup const& S, GreenStructure const& green) {
    GmReduction R;
    for (Index j = 0; j < green.j_classes.size(); ++j) {
      if (!has_nontrivial_group(green, j)) {
        continue;
      }
      GmImage img;
      img.jclass    = j;
      img.quotient  = gm_quotient(S, green, j);
      img.injective = img.quotient.semigroup.size() == S.size();
      R.images.push_back(std::move(img));
    }
    for (auto e : green.idempotents) {
      auto const&                     H = green.h_classes[green.h_of[e]];
      std::set<std::vector<Index>>    seen;
      for (auto h : H) {
        std::vector<Index> key;
        for (auto const& img : R.images) {
          key.push_back(img.quotient.morphism[h]);
        }
        seen.insert(std::move(key));
      }
      if (seen.size() != H.size()) {
        R.gamma_injective = false;
      }
    }
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // Relational morphisms
  ////////////////////////////////////////////////////////////////////////

  bool RelationalMorphism::relates(Index s, Index t) const {
    return std::binary_search(graph.begin(), graph.end(), std::pair{s, t});
  }

  std::vector<Index> RelationalMorphism::preimage(Index t) const {
    std::vector<Index> out;
    for (auto [s, u] : graph) {
      if (u == t) {
        out.push_back(s);
      }
    }
    return out;
  }

  std::vector<Index> RelationalMorphism::image(Index s) const {
    std::vector<Index> out;
    for (auto it = std::lower_bound(graph.begin(), graph.end(), std::pair{s, Index(0)});
         it != graph.end() && it->first == s;
         ++it) {
      out.push_back(it->second);
    }
    return out;
  }

  RelationalMorphism relational_morphism(FiniteSemigroup                        S,
                                         FiniteSemigroup                        T,
                                         std::vector<std::vector<Index>> const& related) {
    if (related.size() != S.num_generators()) {
      throw InputError("relational morphism needs related targets for every generator");
    }
    std::vector<std::pair<Index, Index>> gens;
    for (std::size_t x = 0; x < related.size(); ++x) {
      if (related[x].empty()) {
        throw InputError("generator " + S.generators()[x].name + " is related to nothing");
      }
      for (auto t : related[x]) {
        if (t >= T.size()) {
          throw InputError("related element out of range");
        }
        gens.emplace_back(S.generator(x), t);
      }
    }
    std::set<std::pair<Index, Index>>    seen(gens.begin(), gens.end());
    std::vector<std::pair<Index, Index>> queue(seen.begin(), seen.end());
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (auto [s, t] : gens) {
        std::pair p{S.mul(queue[i].first, s), T.mul(queue[i].second, t)};
        if (seen.insert(p).second) {
          queue.push_back(p);
        }
      }
    }
    RelationalMorphism rho{std::move(S), std::move(T), {seen.begin(), seen.end()}};
    std::set<Index> covered;
    for (auto [s, t] : rho.graph) {
      covered.insert(s);
    }
    if (covered.size() != rho.source.size()) {
      throw VerificationError("relational morphism does not cover its source");
    }
    return rho;
  }

  RelationalMorphism graph_of(FiniteSemigroup S, FiniteSemigroup T, std::vector<Index> const& phi) {
    if (phi.size() != S.size()) {
      throw InputError("morphism must be given on every element");
    }
    for (Index s = 0; s < S.size(); ++s) {
      if (phi[s] >= T.size()) {
        throw InputError("morphism image out of range");
      }
      for (Index t = 0; t < S.size(); ++t) {
        if (phi[S.mul(s, t)] != T.mul(phi[s], phi[t])) {
          throw InputError("map is not a morphism");
        }
      }
    }
    RelationalMorphism rho{std::move(S), std::move(T), {}};
    for (Index s = 0; s < phi.size(); ++s) {
      rho.graph.emplace_back(s, phi[s]);
    }
    return rho;
  }

  RelationalMorphism compose(RelationalMorphism const& phi, RelationalMorphism const& psi) {
    if (phi.target.size() != psi.source.size()) {
      throw InputError("relational morphisms do not compose");
    }
    std::set<std::pair<Index, Index>> pairs;
    for (auto [s, t] : phi.graph) {
      for (auto u : psi.image(t)) {
        pairs.emplace(s, u);
      }
    }
    return {phi.source, psi.target, {pairs.begin(), pairs.end()}};
  }

  bool is_aperiodic_relational(RelationalMorphism const& rho) {
    auto const&       S = rho.source;
    std::size_t const n = S.size();
    for (Index t = 0; t < rho.target.size(); ++t) {
      if (!rho.target.is_idempotent(t)) {
        continue;
      }
      for (auto s : rho.preimage(t)) {
        Index const p = power(S, s, n);
        if (S.mul(p, s) != p) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Derived semigroup
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // The right regular representation as a transformation semigroup, with
    // the element index of every element of S in it.
    std::pair<FiniteSemigroup, std::vector<Index>> regular(FiniteSemigroup const& S,
                                                           std::size_t            budget) {
      auto const rr = S.right_regular_representation();
      std::vector<std::pair<std::string, PartialTransformation>> gens;
      for (auto const& g : S.generators()) {
        gens.emplace_back(g.name, rr[g.element]);
      }
      auto               R = generate(gens, budget);
      std::vector<Index> idx;
      for (Index s = 0; s < S.size(); ++s) {
        idx.push_back(*R.find(rr[s]));
      }
      return {std::move(R), std::move(idx)};
    }

    // T acting on T^1, the adjoined identity being the last point.
    std::pair<FiniteSemigroup, std::vector<Index>> with_identity(FiniteSemigroup const& T,
                                                                 std::size_t budget) {
      std::size_t const                  n = T.size();
      std::vector<PartialTransformation> maps;
      for (Index t = 0; t < n; ++t) {
        std::vector<Point> im(n + 1);
        for (Index p = 0; p < n; ++p) {
          im[p] = T.mul(p, t) + 1;
        }
        im[n] = t + 1;
        maps.emplace_back(std::move(im));
      }
      std::vector<std::pair<std::string, PartialTransformation>> gens;
      for (auto const& g : T.generators()) {
        gens.emplace_back(g.name, maps[g.element]);
      }
      auto               R = generate(gens, budget);
      std::vector<Index> idx;
      for (Index t = 0; t < n; ++t) {
        idx.push_back(*R.find(maps[t]));
      }
      return {std::move(R), std::move(idx)};
    }

  }  // namespace

  DerivedSemigroup derived_semigroup(RelationalMorphism const& rho, bool identify, std::size_t budget) {
    auto const&       S  = rho.source;
    auto const&       T  = rho.target;
    std::size_t const nt = T.size();
    Index const       I  = static_cast<Index>(nt);
    std::size_t const nr = rho.graph.size();
    auto target_of = [&](Index q, Index t) { return q == I ? t : T.mul(q, t); };

    std::vector<std::vector<Index>> pre(nt);
    for (auto [s, t] : rho.graph) {
      pre[t].push_back(s);
    }
    auto key_of = [&](Index q, Index s, Index t) {
      std::vector<Index> key{q, target_of(q, t)};
      if (!identify) {
        key.push_back(s);
        key.push_back(t);
      } else if (q == I) {
        key.push_back(s);
      } else {
        for (auto s1 : pre[q]) {
          key.push_back(S.mul(s1, s));
        }
      }
      return key;
    };

    std::map<std::vector<Index>, Arrow> classes;
    for (Index q = 0; q <= I; ++q) {
      for (auto [s, t] : rho.graph) {
        classes.emplace(key_of(q, s, t), Arrow{q, s, t, target_of(q, t)});
        if (classes.size() > budget) {
          throw ResourceError("derived semigroup exceeded element budget of "
                              + std::to_string(budget));
        }
      }
    }
    DerivedSemigroup D;
    D.identified = identify;
    std::map<std::vector<Index>, Index> index;
    for (auto const& [key, a] : classes) {
      index.emplace(key, static_cast<Index>(D.arrows.size()));
      D.arrows.push_back(a);
    }
    std::size_t const m = D.arrows.size() + 1;
    D.zero              = static_cast<Index>(m - 1);
    D.raw_class.resize((nt + 1) * nr);
    for (Index q = 0; q <= I; ++q) {
      for (std::size_t i = 0; i < nr; ++i) {
        auto [s, t]                = rho.graph[i];
        D.raw_class[q * nr + i] = index.at(key_of(q, s, t));
      }
    }

    auto product = [&](Arrow const& a, Arrow const& b) -> Index {
      if (a.to != b.from) {
        return D.zero;
      }
      return index.at(key_of(a.from, S.mul(a.s, b.s), T.mul(a.t, b.t)));
    };
    std::vector<std::vector<Index>> table(m, std::vector<Index>(m, D.zero));
    for (Index a = 0; a + 1 < m; ++a) {
      for (Index b = 0; b + 1 < m; ++b) {
        table[a][b] = product(D.arrows[a], D.arrows[b]);
      }
    }
    // Independence of representatives, exhaustively when affordable.
    std::size_t const raw = (nt + 1) * nr;
    if (raw <= 3000) {
      std::vector<Arrow> all;
      for (Index q = 0; q <= I; ++q) {
        for (auto [s, t] : rho.graph) {
          all.push_back({q, s, t, target_of(q, t)});
        }
      }
      for (std::size_t i = 0; i < raw; ++i) {
        for (std::size_t j = 0; j < raw; ++j) {
          if (product(all[i], all[j]) != table[D.raw_class[i]][D.raw_class[j]]) {
            throw VerificationError("derived category product depends on representatives");
          }
        }
      }
    }
    D.semigroup = FiniteSemigroup::from_table(table);
    return D;
  }

  DivisionResult derived_division(RelationalMorphism const& rho,
                                  DerivedSemigroup const&   D,
                                  std::size_t               budget) {
    auto const& S  = rho.source;
    auto const& T  = rho.target;
    auto [L, lidx] = regular(D.semigroup, budget);
    auto [R, ridx] = with_identity(T, budget);
    Wreath W(std::move(L), std::move(R));

    std::size_t const          nr = rho.graph.size();
    std::vector<WreathElement> lifts;
    std::vector<std::string>   names;
    for (std::size_t x = 0; x < S.num_generators(); ++x) {
      Index const s = S.generator(x);
      Index const t = rho.image(s).front();
      auto const  i = static_cast<std::size_t>(
          std::lower_bound(rho.graph.begin(), rho.graph.end(), std::pair{s, t})
          - rho.graph.begin());
      WreathElement w{std::vector<Index>(T.size() + 1), ridx[t]};
      for (Index q = 0; q <= T.size(); ++q) {
        w.f[q] = lidx[D.raw_class[q * nr + i]];
      }
      lifts.push_back(W.normalize(w));
      names.push_back(S.generators()[x].name);
    }
    auto const         U = W.transformation_semigroup(names, lifts, budget);
    std::vector<Index> gens;
    for (std::size_t x = 0; x < U.num_generators(); ++x) {
      gens.push_back(U.generator(x));
    }
    return check_division(S, U, gens);
  }

  DivisionResult derived_composition_division(RelationalMorphism const& phi,
                                              RelationalMorphism const& psi,
                                              std::size_t               carrier_budget,
                                              std::size_t               search_budget) {
    auto const D1 = derived_semigroup(phi);
    auto const D2 = derived_semigroup(psi);
    auto const D  = derived_semigroup(compose(phi, psi));
    Wreath     W(regular(D1.semigroup, kDefaultElementBudget).first,
             regular(D2.semigroup, kDefaultElementBudget).first);
    DivisionResult result;
    if (W.carrier_bound() > carrier_budget) {
      result.report = "wreath carrier bound " + std::to_string(W.carrier_bound())
                      + " exceeds " + std::to_string(carrier_budget);
      return result;
    }
    try {
      auto const full = W.full(carrier_budget);
      return check_division(D.semigroup, full.semigroup, std::nullopt, search_budget);
    } catch (ResourceError const& e) {
      result.report = e.what();
      return result;
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Rhodes expansion
  ////////////////////////////////////////////////////////////////////////

  std::vector<Index> chain_product(FiniteSemigroup const&    T,
                                   GreenStructure const&     green,
                                   std::vector<Index> const& x,
                                   std::vector<Index> const& y) {
    Index const        v = y.back();
    std::vector<Index> out;
    auto push = [&](Index e) {
      if (!out.empty() && green.l_of[out.back()] == green.l_of[e]) {
        out.back() = e;
        return;
      }
      if (!out.empty() && !green.leq_L(e, out.back())) {
        throw VerificationError("chain is not L-decreasing");
      }
      out.push_back(e);
    };
    for (auto e : y) {
      push(e);
    }
    for (auto e : x) {
      push(T.mul(e, v));
    }
    return out;
  }

  RhodesExpansion rhodes_expansion(FiniteSemigroup const& T, std::size_t budget) {
    auto const                      G = green(T);
    std::vector<std::string>        names;
    std::vector<std::vector<Index>> gens;
    for (auto const& g : T.generators()) {
      names.push_back(g.name);
      gens.push_back({g.element});
    }
    auto closure = close(
        names,
        gens,
        [&](std::vector<Index> const& x, std::vector<Index> const& y) {
          return chain_product(T, G, x, y);
        },
        budget,
        VectorHash{});
    RhodesExpansion E;
    E.semigroup = std::move(closure.semigroup);
    E.chains    = std::move(closure.elements);
    std::set<Index> tops;
    for (auto const& c : E.chains) {
      E.eta.push_back(c.back());
      tops.insert(c.back());
    }
    if (tops.size() != T.size()) {
      throw VerificationError("eta is not onto");
    }
    for (Index a = 0; a < E.chains.size(); ++a) {
      for (Index b = 0; b < E.chains.size(); ++b) {
        if (E.eta[E.semigroup.mul(a, b)] != T.mul(E.eta[a], E.eta[b])) {
          throw VerificationError("eta is not a morphism");
        }
      }
    }
    return E;
  }

  RelationalMorphism lift_to_expansion(RelationalMorphism const& rho, RhodesExpansion const& E) {
    RelationalMorphism out{rho.source, E.semigroup, {}};
    for (auto [s, t] : rho.graph) {
      for (Index c = 0; c < E.eta.size(); ++c) {
        if (E.eta[c] == t) {
          out.graph.emplace_back(s, c);
        }
      }
    }
    std::sort(out.graph.begin(), out.graph.end());
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Upper bounds
  ////////////////////////////////////////////////////////////////////////

  namespace {

    Json bound_json(std::optional<std::size_t> b) {
      return b ? Json(*b) : Json(nullptr);
    }

    std::optional<std::size_t> bound_of(Json const& j) {
      if (j.is_null()) {
        return std::nullopt;
      }
      return j.get<std::size_t>();
    }

    std::vector<Index> generator_elements(FiniteSemigroup const& U) {
      std::vector<Index> out;
      for (std::size_t x = 0; x < U.num_generators(); ++x) {
        out.push_back(U.generator(x));
      }
      return out;
    }

    // Rebuilds the lifts of a pure witness and checks the division.
    DivisionResult replay_pure(FiniteSemigroup const& S,
                               FiniteGroup const&     G,
                               FiniteSemigroup const& rlm,
                               Json const&            lifts,
                               std::size_t            budget) {
      Wreath W(group_as_semigroup(G), rlm);
      if (lifts.size() != S.num_generators()) {
        throw InputError("pure witness needs one lift per generator");
      }
      std::vector<WreathElement> ws;
      std::vector<std::string>   names;
      for (std::size_t x = 0; x < lifts.size(); ++x) {
        auto const&        l = lifts[x];
        std::vector<Point> im;
        for (auto const& p : l.at("t")) {
          im.push_back(p.is_null() ? kUndefined : p.get<Point>());
        }
        auto const t = W.right().find(PartialTransformation(im));
        if (!t) {
          throw InputError("pure witness names a map outside RLM");
        }
        WreathElement w{std::vector<Index>(W.right().degree(), 0), *t};
        auto const&   f = l.at("f");
        if (f.size() != w.f.size()) {
          throw InputError("pure witness has a function of the wrong length");
        }
        for (std::size_t b = 0; b < f.size(); ++b) {
          if (!f[b].is_null()) {
            auto const g = f[b].get<Index>();
            if (g >= G.order()) {
              throw InputError("pure witness names a group element out of range");
            }
            w.f[b] = W.left().generator(g);
          }
        }
        ws.push_back(W.normalize(w));
        names.push_back(S.generators()[x].name);
      }
      auto const U = W.transformation_semigroup(names, ws, budget);
      return check_division(S, U, generator_elements(U));
    }

  }  // namespace

  std::optional<UpperBound> pure_upper(GroupMappingPresentation const& P,
                                       ComplexityInterval const&       rlm,
                                       EstimateBudget const&           budget) {
    if (!rlm.upper) {
      return std::nullopt;
    }
    try {
      auto const  E = fasp_embedding(P);
      auto const& W = E.wreath;
      std::map<Index, Index> group_of;
      for (Index g = 0; g < P.group().order(); ++g) {
        group_of[W.left().generator(g)] = g;
      }
      Json lifts = Json::array();
      for (auto const& w : E.generators) {
        auto const& t = W.right().transformation(w.t);
        Json        f = Json::array(), tj = Json::array();
        for (std::size_t b = 0; b < w.f.size(); ++b) {
          f.push_back(t(static_cast<Point>(b + 1)) == kUndefined ? Json(nullptr)
                                                                 : Json(group_of.at(w.f[b])));
        }
        for (auto p : t.images()) {
          tj.push_back(p == kUndefined ? Json(nullptr) : Json(p));
        }
        lifts.push_back(Json{{"f", f}, {"t", tj}});
      }
      auto const div = replay_pure(P.semigroup, P.group(), W.right(), lifts, budget.elements);
      if (div.status != DivisionStatus::found) {
        throw VerificationError("wreath embedding does not give a division: " + div.report);
      }
      UpperBound u;
      u.value   = *rlm.upper + 1;
      u.witness = Json{{"bound", u.value}, {"lifts", lifts}};
      return u;
    } catch (ResourceError const&) {
      return std::nullopt;
    }
  }

  std::optional<UpperBound> flow_upper(GroupMappingPresentation const& P,
                                       ComplexityInterval const&       rlm,
                                       EstimateBudget const&           budget) {
    if (!rlm.upper || budget.states == 0) {
      return std::nullopt;
    }
    std::size_t const n = std::max<std::size_t>(1, *rlm.upper);
    try {
      FlowSearchResult res;
      if (n == 1) {
        res = flow_search(P, budget.states, budget.nodes);
      } else {
        res = flow_search(
            P,
            budget.states,
            [&](FiniteSemigroup const& TA) {
              auto const e = estimate(TA, budget);
              return e.upper && *e.upper <= n - 1;
            },
            budget.nodes);
      }
      if (res.status != SearchStatus::found) {
        return std::nullopt;
      }
      auto const W = presentation_construct(P, *res.flow, budget.elements);
      if (W.division.status != DivisionStatus::found) {
        throw VerificationError("flow construction does not give a division");
      }
      UpperBound u;
      u.value   = n;
      u.witness = Json{{"bound", n},
                       {"cap", n - 1},
                       {"states", res.flow->automaton.num_states()},
                       {"flow", flow_to_string(*res.flow)}};
      if (n > 1) {
        auto const TA = transition_semigroup(res.flow->automaton, budget.elements);
        u.witness["automaton"] = estimate(TA, budget).certificate;
      }
      return u;
    } catch (ResourceError const&) {
      return std::nullopt;
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Estimation
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::optional<std::size_t> max_upper(std::vector<ComplexityInterval> const& children) {
      std::size_t u = 0;
      for (auto const& c : children) {
        if (!c.upper) {
          return std::nullopt;
        }
        u = std::max(u, *c.upper);
      }
      return u;
    }

    std::optional<std::size_t> min_upper(std::optional<std::size_t> a,
                                         std::optional<std::size_t> b) {
      if (!a) {
        return b;
      }
      if (!b) {
        return a;
      }
      return std::min(*a, *b);
    }

  }  // namespace

  ComplexityInterval estimate(FiniteSemigroup const& S0, EstimateBudget const& budget) {
    // Work on the parsed text so that a replay sees the same element order.
    std::string const text = semigroup_to_string(S0);
    auto const S = parse_semigroup(text, std::max(budget.elements, S0.size()));
    auto const G = green(S);

    ComplexityInterval I;
    Json&              node = I.certificate;
    node["semigroup"]       = text;
    node["order"]           = S.size();

    if (is_aperiodic(S, G)) {
      node["kind"]     = "aperiodic";
      node["lower"]    = 0;
      node["upper"]    = 0;
      I.upper          = 0;
      return I;
    }

    auto const C = classify(S, G);
    if (C.group_mapping && C.distinguished && has_nontrivial_group(G, *C.distinguished)) {
      Index const j   = *C.distinguished;
      auto const  P   = present(S, j);
      auto const  rlm = rlm_quotient(S, G, j);
      if (rlm.semigroup.size() >= S.size()) {
        throw VerificationError("RLM image of a group mapping semigroup is not smaller");
      }
      auto const child = estimate(rlm.semigroup, budget);
      I.lower          = std::max<std::size_t>(1, child.lower);
      auto const pure  = pure_upper(P, child, budget);
      std::optional<UpperBound> flow;
      if (!pure || pure->value > I.lower) {
        flow = flow_upper(P, child, budget);
      }
      I.upper = min_upper(pure ? std::optional(pure->value) : std::nullopt,
                          flow ? std::optional(flow->value) : std::nullopt);
      node["kind"]   = "group-mapping";
      node["jclass"] = j;
      node["group"]  = group_to_string(P.group());
      node["lower"]  = I.lower;
      node["upper"]  = bound_json(I.upper);
      node["rlm"]    = child.certificate;
      node["pure"]   = pure ? pure->witness : Json(nullptr);
      node["flow"]   = flow ? flow->witness : Json(nullptr);
      return I;
    }

    auto const R = gm_reduction(S, G);
    if (!R.gamma_injective) {
      throw VerificationError("GM images are not injective on a subgroup");
    }
    std::vector<ComplexityInterval> children;
    Json                            js = Json::array(), kids = Json::array();
    std::size_t                     lower = 1;
    for (auto const& img : R.images) {
      if (img.injective) {
        throw VerificationError("GM image isomorphic to a semigroup that is not group mapping");
      }
      children.push_back(estimate(img.quotient.semigroup, budget));
      lower = std::max(lower, children.back().lower);
      js.push_back(img.jclass);
      kids.push_back(children.back().certificate);
    }
    I.lower          = lower;
    I.upper          = max_upper(children);
    node["kind"]     = "gm-reduction";
    node["lower"]    = I.lower;
    node["upper"]    = bound_json(I.upper);
    node["jclasses"] = js;
    node["children"] = kids;
    return I;
  }

  ////////////////////////////////////////////////////////////////////////
  // Replay
  ////////////////////////////////////////////////////////////////////////

  namespace {

    struct Replayed {
      std::size_t                lower = 0;
      std::optional<std::size_t> upper;
    };

    [[noreturn]] void reject(std::string const& what) {
      throw VerificationError(what);
    }

    Replayed replay_node(Json const& node, std::size_t budget, std::size_t& count) {
      ++count;
      auto const  text = node.at("semigroup").get<std::string>();
      auto const  S    = parse_semigroup(text, budget);
      std::string kind = node.at("kind").get<std::string>();
      if (semigroup_to_string(S) != text) {
        reject("semigroup text is not in written form");
      }
      if (node.at("order").get<std::size_t>() != S.size()) {
        reject("recorded order " + node.at("order").dump() + " differs from "
               + std::to_string(S.size()));
      }
      auto const G = green(S);
      Replayed   r;

      if (kind == "aperiodic") {
        if (!is_aperiodic(S, G)) {
          reject("semigroup marked aperiodic has a nontrivial subgroup");
        }
        r.upper = 0;
      } else if (kind == "group-mapping") {
        auto const j = node.at("jclass").get<Index>();
        auto const C = classify(S, G);
        if (!C.group_mapping || C.distinguished != j || !has_nontrivial_group(G, j)) {
          reject("semigroup is not group mapping on J-class " + std::to_string(j));
        }
        auto const P      = present(S, j);
        auto const Gtext  = node.at("group").get<std::string>();
        auto const group  = parse_group(Gtext);
        if (group_to_string(P.group()) != Gtext) {
          reject("recorded group differs from the maximal subgroup");
        }
        auto const& child = node.at("rlm");
        if (child.at("semigroup").get<std::string>()
            != semigroup_to_string(rlm_quotient(S, G, j).semigroup)) {
          reject("recorded RLM image differs from RLM_J(S)");
        }
        auto const c = replay_node(child, budget, count);
        r.lower      = std::max<std::size_t>(1, c.lower);
        if (auto const& pure = node.at("pure"); !pure.is_null()) {
          if (!c.upper || pure.at("bound").get<std::size_t>() != *c.upper + 1) {
            reject("pure bound is not one more than the RLM bound");
          }
          auto const rlm = parse_semigroup(child.at("semigroup").get<std::string>(), budget);
          auto const div = replay_pure(S, group, rlm, pure.at("lifts"), budget);
          if (div.status != DivisionStatus::found) {
            reject("pure witness is not a division: " + div.report);
          }
          r.upper = min_upper(r.upper, *c.upper + 1);
        }
        if (auto const& flow = node.at("flow"); !flow.is_null()) {
          if (!c.upper) {
            reject("flow bound without an RLM bound");
          }
          std::size_t const n = std::max<std::size_t>(1, *c.upper);
          if (flow.at("bound").get<std::size_t>() != n) {
            reject("flow bound is not max(1, RLM bound)");
          }
          auto const F   = parse_flow(flow.at("flow").get<std::string>(), P);
          auto const rep = verify_flow(P, F);
          if (!rep.ok) {
            reject("flow fails " + rep.condition + ": " + rep.detail);
          }
          auto const W = presentation_construct(P, F, budget);
          if (W.division.status != DivisionStatus::found) {
            reject("flow construction is not a division");
          }
          auto const TA = transition_semigroup(F.automaton, budget);
          if (n == 1) {
            if (!is_aperiodic(TA)) {
              reject("flow automaton is not aperiodic");
            }
          } else {
            auto const& a = flow.at("automaton");
            if (a.at("semigroup").get<std::string>() != semigroup_to_string(TA)) {
              reject("automaton certificate is for another semigroup");
            }
            auto const ca = replay_node(a, budget, count);
            if (!ca.upper || *ca.upper > n - 1) {
              reject("flow automaton exceeds its complexity cap");
            }
          }
          r.upper = min_upper(r.upper, n);
        }
      } else if (kind == "gm-reduction") {
        auto const R = gm_reduction(S, G);
        if (!R.gamma_injective) {
          reject("GM images are not injective on a subgroup");
        }
        auto const& js   = node.at("jclasses");
        auto const& kids = node.at("children");
        if (js.size() != R.images.size() || kids.size() != R.images.size()) {
          reject("GM reduction lists the wrong number of J-classes");
        }
        if (R.images.empty()) {
          reject("GM reduction of an aperiodic semigroup");
        }
        r.lower = 1;
        std::vector<std::optional<std::size_t>> ups;
        for (std::size_t i = 0; i < R.images.size(); ++i) {
          if (js[i].get<Index>() != R.images[i].jclass) {
            reject("GM reduction lists J-class " + js[i].dump() + " out of order");
          }
          if (kids[i].at("semigroup").get<std::string>()
              != semigroup_to_string(R.images[i].quotient.semigroup)) {
            reject("recorded GM image differs from GM_J(S)");
          }
          auto const c = replay_node(kids[i], budget, count);
          r.lower      = std::max(r.lower, c.lower);
          ups.push_back(c.upper);
        }
        r.upper = 0;
        for (auto u : ups) {
          r.upper = (r.upper && u) ? std::optional(std::max(*r.upper, *u)) : std::nullopt;
        }
      } else {
        reject("unknown node kind '" + kind + "'");
      }
      if (node.at("lower").get<std::size_t>() != r.lower
          || bound_of(node.at("upper")) != r.upper) {
        reject("claimed interval " + interval_to_string(node.at("lower").get<std::size_t>(),
                                                        bound_of(node.at("upper")))
               + " differs from replayed " + interval_to_string(r.lower, r.upper));
      }
      return r;
    }

    void tree(Json const& node, std::size_t depth, std::string& out) {
      std::string const pad(2 * depth, ' ');
      auto const        kind = node.at("kind").get<std::string>();
      out += pad
             + interval_to_string(node.at("lower").get<std::size_t>(), bound_of(node.at("upper")))
             + " " + kind + " order " + node.at("order").dump();
      if (kind == "group-mapping") {
        out += " J-class " + node.at("jclass").dump();
      }
      out += "\n";
      if (kind == "aperiodic") {
        out += pad + "  lower 0, upper 0: aperiodic\n";
      } else if (kind == "gm-reduction") {
        out += pad + "  max over GM images of J-classes " + node.at("jclasses").dump() + "\n";
        for (auto const& c : node.at("children")) {
          tree(c, depth + 1, out);
        }
      } else {
        out += pad + "  lower: nontrivial subgroup and RLM quotient\n";
        if (!node.at("pure").is_null()) {
          out += pad + "  upper " + node.at("pure").at("bound").dump()
                 + ": division into G wr RLM\n";
        }
        if (!node.at("flow").is_null()) {
          auto const& f = node.at("flow");
          out += pad + "  upper " + f.at("bound").dump() + ": flow on "
                 + f.at("states").dump() + " state(s), automaton complexity <= "
                 + f.at("cap").dump() + "\n";
          if (f.contains("automaton")) {
            tree(f.at("automaton"), depth + 2, out);
          }
        }
        out += pad + "  RLM image:\n";
        tree(node.at("rlm"), depth + 2, out);
      }
    }

  }  // namespace

  ReplayReport replay_certificate(Json const& certificate, std::size_t budget) {
    ReplayReport report;
    try {
      Json const& root = certificate.contains("root") ? certificate.at("root") : certificate;
      auto const  r    = replay_node(root, budget, report.nodes);
      if (certificate.contains("interval")) {
        auto const& iv = certificate.at("interval");
        if (iv.at("lower").get<std::size_t>() != r.lower || bound_of(iv.at("upper")) != r.upper) {
          reject("top-level interval differs from the root node");
        }
      }
      report.message = "replayed " + std::to_string(report.nodes) + " node(s): "
                       + interval_to_string(r.lower, r.upper);
    } catch (std::exception const& e) {
      report.ok      = false;
      report.message = e.what();
    }
    return report;
  }

  std::string certificate_tree(Json const& certificate) {
    std::string out;
    tree(certificate.contains("root") ? certificate.at("root") : certificate, 0, out);
    return out;
  }

  std::string interval_to_string(std::size_t lower, std::optional<std::size_t> upper) {
    return "[" + std::to_string(lower) + "," + (upper ? std::to_string(*upper) : "?") + "]";
  }

}  // namespace krc
