#include "krc/semilocal.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace krc {

  JClassRef jclass_ref(GreenStructure const& green, Index j) {
    if (j >= green.j_classes.size()) {
      throw InputError("J-class id " + std::to_string(j) + " out of range");
    }
    return {j, green.r_classes_in(j), green.l_classes_in(j)};
  }

  namespace {

    void require_regular(GreenStructure const& green, Index j) {
      if (j >= green.j_classes.size()) {
        throw InputError("J-class id " + std::to_string(j) + " out of range");
      }
      if (!green.j_regular[j]) {
        throw InputError("J-class " + std::to_string(j) + " is not regular");
      }
    }

    bool has_nontrivial_subgroup(GreenStructure const& green, Index j) {
      Index e = green.least_idempotent(j);
      return e != kNone && green.h_classes[green.h_of[e]].size() > 1;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Classification
  ////////////////////////////////////////////////////////////////////////

  Classification classify(FiniteSemigroup const& S, GreenStructure const& green) {
    Classification c;
    c.zero              = S.zero();
    std::size_t const nj = green.j_classes.size();
    if (c.zero && S.size() > 1) {
      Index const zj = green.j_of[*c.zero];
      for (Index j = 0; j < nj; ++j) {
        if (j == zj) {
          continue;
        }
        bool minimal = true;
        for (Index d = 0; d < nj && minimal; ++d) {
          if (d != j && d != zj && green.j_below[d][j]) {
            minimal = false;
          }
        }
        if (minimal) {
          c.zero_minimal.push_back(j);
        }
      }
    } else {
      for (Index j = 0; j < nj; ++j) {
        bool minimal = true;
        for (Index d = 0; d < nj && minimal; ++d) {
          if (d != j && green.j_below[d][j]) {
            minimal = false;
          }
        }
        if (minimal) {
          c.zero_minimal.push_back(j);
        }
      }
    }

    auto faithful = [&](Index j, bool on_right) {
      std::vector<Index> ideal = green.j_classes[j];
      if (c.zero && green.j_of[*c.zero] != j) {
        ideal.push_back(*c.zero);
      }
      std::map<std::vector<Index>, Index> seen;
      for (Index s = 0; s < S.size(); ++s) {
        std::vector<Index> sig;
        sig.reserve(ideal.size());
        for (auto a : ideal) {
          sig.push_back(on_right ? S.mul(a, s) : S.mul(s, a));
        }
        if (!seen.emplace(std::move(sig), s).second) {
          return false;
        }
      }
      return true;
    };

    std::optional<Index> right_j, left_j;
    for (auto j : c.zero_minimal) {
      if (!right_j && faithful(j, true)) {
        right_j = j;
      }
      if (!left_j && faithful(j, false)) {
        left_j = j;
      }
    }
    c.right_mapping = right_j.has_value();
    c.left_mapping  = left_j.has_value();
    if (c.right_mapping || c.left_mapping) {
      if (c.zero_minimal.size() != 1) {
        throw VerificationError("a right or left mapping semigroup has "
                                + std::to_string(c.zero_minimal.size())
                                + " 0-minimal ideals");
      }
      c.distinguished = c.zero_minimal.front();
      if (!green.j_regular[*c.distinguished]) {
        throw VerificationError("the 0-minimal ideal of a mapping semigroup is not regular");
      }
    }
    c.generalized_group_mapping = c.right_mapping && c.left_mapping;
    c.group_mapping
        = c.generalized_group_mapping && has_nontrivial_subgroup(green, *c.distinguished);
    return c;
  }

  Classification classify(FiniteSemigroup const& S) {
    return classify(S, green(S));
  }

  ////////////////////////////////////////////////////////////////////////
  // RLM
  ////////////////////////////////////////////////////////////////////////

  std::vector<Index> l_class_action(FiniteSemigroup const& S,
                                    GreenStructure const&  green,
                                    JClassRef const&       J,
                                    Index                  s) {
    std::unordered_map<Index, Index> pos;
    for (Index i = 0; i < J.l_classes.size(); ++i) {
      pos.emplace(J.l_classes[i], i);
    }
    std::vector<Index> image(J.l_classes.size(), kNone);
    for (Index b = 0; b < J.l_classes.size(); ++b) {
      auto const& members = green.l_classes[J.l_classes[b]];
      Index       first   = kNone;
      for (std::size_t i = 0; i < members.size(); ++i) {
        Index const u  = S.mul(members[i], s);
        Index const im = green.j_of[u] == J.id ? pos.at(green.l_of[u]) : kNone;
        if (i == 0) {
          first = im;
        } else if (im != first) {
          throw VerificationError("the action on L-classes is not well defined");
        }
      }
      image[b] = first;
    }
    return image;
  }

  namespace {

    PartialTransformation to_transformation(std::vector<Index> const& image) {
      std::vector<Point> im(image.size());
      for (std::size_t i = 0; i < image.size(); ++i) {
        im[i] = image[i] == kNone ? kUndefined : image[i] + 1;
      }
      return PartialTransformation(std::move(im));
    }

  }  // namespace

  RlmQuotient rlm_quotient(FiniteSemigroup const& S, GreenStructure const& green, Index j) {
    require_regular(green, j);
    RlmQuotient result;
    result.jclass = jclass_ref(green, j);

    std::vector<std::pair<std::string, PartialTransformation>> gens;
    for (auto const& g : S.generators()) {
      gens.emplace_back(g.name,
                        to_transformation(l_class_action(S, green, result.jclass, g.element)));
    }
    result.semigroup = generate(gens);
    result.morphism.resize(S.size());
    for (Index s = 0; s < S.size(); ++s) {
      auto t = to_transformation(l_class_action(S, green, result.jclass, s));
      auto i = result.semigroup.find(t);
      if (!i) {
        throw VerificationError("RLM image of an element is not generated");
      }
      result.morphism[s] = *i;
    }
    auto const rg = krc::green(result.semigroup);
    result.image_jclass = rg.j_of[result.morphism[green.j_classes[j].front()]];
    for (auto s : green.j_classes[j]) {
      if (rg.j_of[result.morphism[s]] != result.image_jclass) {
        throw VerificationError("the image of J is not a single J-class");
      }
    }
    for (auto e : rg.idempotents) {
      if (rg.j_of[e] == result.image_jclass && rg.h_classes[rg.h_of[e]].size() != 1) {
        throw VerificationError("the image of J in RLM is not aperiodic");
      }
    }
    auto const c = classify(result.semigroup, rg);
    if (!c.right_mapping || c.distinguished != result.image_jclass) {
      throw VerificationError("RLM quotient is not right mapping on the image of J");
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // GM
  ////////////////////////////////////////////////////////////////////////

  GmQuotient gm_quotient(FiniteSemigroup const& S, GreenStructure const& green, Index j) {
    require_regular(green, j);
    auto const&        J = green.j_classes[j];
    std::size_t const  n = S.size();
    std::map<std::vector<Index>, Index> classes;
    std::vector<Index> cls(n);
    std::vector<Index> reps;
    for (Index s = 0; s < n; ++s) {
      std::vector<Index> sig;
      sig.reserve(J.size() * J.size());
      for (auto x : J) {
        Index const xs = S.mul(x, s);
        for (auto y : J) {
          Index const xsy = S.mul(xs, y);
          sig.push_back(green.j_of[xsy] == j ? xsy : kNone);
        }
      }
      auto [it, inserted] = classes.emplace(std::move(sig), static_cast<Index>(reps.size()));
      if (inserted) {
        reps.push_back(s);
      }
      cls[s] = it->second;
    }
    std::size_t const               m = reps.size();
    std::vector<std::vector<Index>> table(m, std::vector<Index>(m));
    for (Index a = 0; a < m; ++a) {
      for (Index b = 0; b < m; ++b) {
        table[a][b] = cls[S.mul(reps[a], reps[b])];
      }
    }
    for (Index s = 0; s < n; ++s) {
      for (Index t = 0; t < n; ++t) {
        if (cls[S.mul(s, t)] != table[cls[s]][cls[t]]) {
          throw VerificationError("the GM relation is not a congruence");
        }
      }
    }
    std::vector<Generator> gens;
    for (auto const& g : S.generators()) {
      gens.push_back({g.name, cls[g.element]});
    }
    GmQuotient result;
    result.semigroup       = FiniteSemigroup::from_table(table, gens);
    result.morphism        = std::move(cls);
    result.aperiodic_class = !has_nontrivial_subgroup(green, j);

    auto const qg       = krc::green(result.semigroup);
    result.image_jclass = qg.j_of[result.morphism[J.front()]];
    for (auto e : green.idempotents) {
      if (green.j_of[e] != j) {
        continue;
      }
      std::vector<Index> seen;
      for (auto h : green.h_classes[green.h_of[e]]) {
        seen.push_back(result.morphism[h]);
      }
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw VerificationError("the GM projection is not injective on a subgroup of J");
      }
    }
    if (!result.aperiodic_class) {
      auto const c = classify(result.semigroup, qg);
      if (!c.group_mapping || c.distinguished != result.image_jclass) {
        throw VerificationError("GM quotient is not group mapping on the image of J");
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Rees coordinates
  ////////////////////////////////////////////////////////////////////////

  ReesCoordinates
  rees_coordinates(FiniteSemigroup const& S, GreenStructure const& green, Index j) {
    require_regular(green, j);
    ReesCoordinates R;
    R.jclass     = jclass_ref(green, j);
    R.idempotent = green.least_idempotent(j);
    R.group      = maximal_subgroup(S, green, R.idempotent);
    Index const e = R.idempotent;

    std::size_t const na = R.jclass.r_classes.size();
    std::size_t const nb = R.jclass.l_classes.size();
    std::size_t const ng = R.group.group.order();
    for (auto r : R.jclass.r_classes) {
      Index pick = kNone;
      for (auto s : green.r_classes[r]) {
        if (green.l_of[s] == green.l_of[e]) {
          pick = s;
          break;
        }
      }
      if (pick == kNone) {
        throw VerificationError("an R-class misses the L-class of the idempotent");
      }
      R.p.push_back(pick);
    }
    for (auto l : R.jclass.l_classes) {
      Index pick = kNone;
      for (auto s : green.l_classes[l]) {
        if (green.r_of[s] == green.r_of[e]) {
          pick = s;
          break;
        }
      }
      if (pick == kNone) {
        throw VerificationError("an L-class misses the R-class of the idempotent");
      }
      R.q.push_back(pick);
    }

    std::unordered_map<Index, Index> group_index;
    for (Index g = 0; g < ng; ++g) {
      group_index.emplace(R.group.members[g], g);
    }
    R.coord.assign(S.size(), ReesTriple{});
    R.uncoord_table.assign(na * ng * nb, kNone);
    for (Index a = 0; a < na; ++a) {
      for (Index g = 0; g < ng; ++g) {
        Index const pg = S.mul(R.p[a], R.group.members[g]);
        for (Index b = 0; b < nb; ++b) {
          Index const s = S.mul(pg, R.q[b]);
          if (green.j_of[s] != j || R.coord[s].a != kNone) {
            throw VerificationError("Rees coordinates are not a bijection onto J");
          }
          R.coord[s]                           = {a, g, b};
          R.uncoord_table[(a * ng + g) * nb + b] = s;
        }
      }
    }
    if (na * ng * nb != green.j_classes[j].size()) {
      throw VerificationError("Rees coordinates do not cover J");
    }
    R.C.assign(nb, std::vector<Index>(na, kNone));
    for (Index b = 0; b < nb; ++b) {
      for (Index a = 0; a < na; ++a) {
        auto it = group_index.find(S.mul(R.q[b], R.p[a]));
        if (it != group_index.end()) {
          R.C[b][a] = it->second;
        }
      }
    }
    for (Index b = 0; b < nb; ++b) {
      if (std::all_of(R.C[b].begin(), R.C[b].end(), [](Index c) { return c == kNone; })) {
        throw VerificationError("structure matrix has a zero row");
      }
    }
    for (Index a = 0; a < na; ++a) {
      bool any = false;
      for (Index b = 0; b < nb; ++b) {
        any = any || R.C[b][a] != kNone;
      }
      if (!any) {
        throw VerificationError("structure matrix has a zero column");
      }
    }
    auto const& G = R.group.group;
    for (auto s : green.j_classes[j]) {
      for (auto t : green.j_classes[j]) {
        auto const  x  = R.coord[s];
        auto const  y  = R.coord[t];
        Index const st = S.mul(s, t);
        Index const c  = R.C[x.b][y.a];
        if (c == kNone) {
          if (green.j_of[st] == j) {
            throw VerificationError("Rees transport fails on a zero entry");
          }
        } else if (green.j_of[st] != j
                   || R.coord[st] != ReesTriple{x.a, G.mul(G.mul(x.g, c), y.g), y.b}) {
          throw VerificationError("Rees transport fails on a nonzero entry");
        }
      }
    }
    return R;
  }

  ////////////////////////////////////////////////////////////////////////
  // Presentation
  ////////////////////////////////////////////////////////////////////////

  ElementAction compose(ElementAction const& x, ElementAction const& y, FiniteGroup const& G) {
    ElementAction r{std::vector<Index>(x.image.size(), kNone),
                    std::vector<Index>(x.image.size(), kNone)};
    for (std::size_t b = 0; b < x.image.size(); ++b) {
      Index const bx = x.image[b];
      if (bx == kNone || y.image[bx] == kNone) {
        continue;
      }
      r.image[b] = y.image[bx];
      r.label[b] = G.mul(x.label[b], y.label[bx]);
    }
    return r;
  }

  ElementAction GroupMappingPresentation::direct_action(Index s) const {
    std::size_t const nb = num_b();
    ElementAction     r{std::vector<Index>(nb, kNone), std::vector<Index>(nb, kNone)};
    auto const&       G = group();
    Index const       a = rees.a_of_idempotent();
    Index             pa = kNone;
    for (Index g = 0; g < rees.group.members.size(); ++g) {
      if (rees.group.members[g] == rees.p[a]) {
        pa = g;
      }
    }
    for (Index b = 0; b < nb; ++b) {
      Index const u = semigroup.mul(rees.q[b], s);
      if (green.j_of[u] != jclass) {
        continue;
      }
      // q_b s = (a_e, h, b') = p_{a_e} h q_b', so the label is p_{a_e} h.
      auto const c = rees.coord[u];
      r.image[b] = c.b;
      r.label[b] = G.mul(pa, c.g);
    }
    return r;
  }

  ElementAction GroupMappingPresentation::action(Index s) const {
    auto const& w = semigroup.word(s);
    auto        r = generator_actions[w.front()];
    for (std::size_t i = 1; i < w.size(); ++i) {
      r = compose(r, generator_actions[w[i]], group());
    }
    return r;
  }

  GroupMappingPresentation present(FiniteSemigroup const& S, Index j) {
    GroupMappingPresentation P;
    P.semigroup = S;
    P.green     = green(S);
    require_regular(P.green, j);
    P.jclass = j;
    P.rees   = rees_coordinates(S, P.green, j);
    for (auto const& g : S.generators()) {
      P.generator_actions.push_back(P.direct_action(g.element));
    }
    // (a, g, b) x = (a, g (b)x, bx) against raw multiplication.
    auto const&       G  = P.group();
    std::size_t const na = P.rees.num_a(), nb = P.rees.num_b();
    for (std::size_t x = 0; x < S.num_generators(); ++x) {
      auto const& act = P.generator_actions[x];
      for (Index a = 0; a < na; ++a) {
        for (Index g = 0; g < G.order(); ++g) {
          for (Index b = 0; b < nb; ++b) {
            Index const raw = S.mul(P.rees.uncoord(a, g, b), S.generator(x));
            if (act.image[b] == kNone) {
              if (P.green.j_of[raw] == j) {
                throw VerificationError("coordinate action undefined but product stays in J");
              }
            } else if (raw != P.rees.uncoord(a, G.mul(g, act.label[b]), act.image[b])) {
              throw VerificationError("coordinate action disagrees with multiplication");
            }
          }
        }
      }
    }
    return P;
  }

  GroupMappingPresentation present(FiniteSemigroup const& S) {
    auto const g = green(S);
    auto const c = classify(S, g);
    if (!c.group_mapping) {
      throw InputError("semigroup is not group mapping");
    }
    return present(S, *c.distinguished);
  }

  ////////////////////////////////////////////////////////////////////////
  // R-class action
  ////////////////////////////////////////////////////////////////////////

  RClassAction r_class_action(FiniteSemigroup const& S,
                              GreenStructure const&  green,
                              Index                  r_class) {
    auto const c = classify(S, green);
    if (!c.right_mapping) {
      throw InputError("semigroup is not right mapping");
    }
    if (r_class >= green.r_classes.size()
        || green.j_of[green.r_classes[r_class].front()] != *c.distinguished) {
      throw InputError("R-class is not in the distinguished J-class");
    }
    RClassAction result;
    result.r_class = r_class;
    result.points  = green.r_classes[r_class];
    std::unordered_map<Index, Point> point_of;
    for (Index i = 0; i < result.points.size(); ++i) {
      point_of.emplace(result.points[i], i + 1);
    }
    std::map<std::vector<Point>, Index> seen;
    for (Index s = 0; s < S.size(); ++s) {
      std::vector<Point> im(result.points.size(), kUndefined);
      for (std::size_t i = 0; i < result.points.size(); ++i) {
        Index const us = S.mul(result.points[i], s);
        if (green.j_of[us] == *c.distinguished) {
          auto it = point_of.find(us);
          if (it == point_of.end()) {
            throw VerificationError("right multiplication left the R-class inside J");
          }
          im[i] = it->second;
        }
      }
      auto [it, inserted] = seen.emplace(im, s);
      if (!inserted) {
        throw VerificationError("action on the R-class identifies elements "
                                + std::to_string(it->second) + " and "
                                + std::to_string(s));
      }
      result.maps.emplace_back(std::move(im));
    }
    return result;
  }

  std::optional<Index> separating_point(RClassAction const& action, Index s, Index t) {
    auto const& f = action.maps.at(s).images();
    auto const& g = action.maps.at(t).images();
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] != g[i]) {
        return action.points[i];
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Wreath embedding
  ////////////////////////////////////////////////////////////////////////

  FiniteSemigroup group_as_semigroup(FiniteGroup const& G) {
    std::vector<std::pair<std::string, PartialTransformation>> gens;
    for (Index g = 0; g < G.order(); ++g) {
      std::vector<Point> im(G.order());
      for (Index h = 0; h < G.order(); ++h) {
        im[h] = G.mul(h, g) + 1;
      }
      gens.emplace_back("g" + std::to_string(g), PartialTransformation(std::move(im)));
    }
    return generate(gens);
  }

  FaspEmbedding fasp_embedding(GroupMappingPresentation const& P) {
    auto const& S = P.semigroup;
    auto const  c = classify(S, P.green);
    if (!c.right_mapping || c.distinguished != P.jclass) {
      throw InputError("fasp embedding needs a right mapping semigroup on its distinguished class");
    }
    auto const& G    = P.group();
    auto        left = group_as_semigroup(G);
    // Group element g -> element index of the left factor.
    std::vector<Index> gidx(G.order());
    for (Index g = 0; g < G.order(); ++g) {
      gidx[g] = left.generator(g);
    }
    auto rlm = rlm_quotient(S, P.green, P.jclass);

    FaspEmbedding E{Wreath(std::move(left), rlm.semigroup), {}, {}};
    auto make = [&](ElementAction const& act, Index t) {
      WreathElement w{std::vector<Index>(P.num_b(), 0), t};
      for (std::size_t b = 0; b < act.image.size(); ++b) {
        if (act.image[b] != kNone) {
          w.f[b] = gidx[act.label[b]];
        }
      }
      return E.wreath.normalize(w);
    };
    for (std::size_t x = 0; x < S.num_generators(); ++x) {
      E.generators.push_back(make(P.generator_actions[x], rlm.morphism[S.generator(x)]));
    }
    for (Index s = 0; s < S.size(); ++s) {
      auto const& w   = S.word(s);
      auto        img = E.generators[w.front()];
      for (std::size_t i = 1; i < w.size(); ++i) {
        img = E.wreath.mul(img, E.generators[w[i]]);
      }
      if (img != make(P.direct_action(s), rlm.morphism[s])) {
        throw VerificationError("wreath image disagrees with the coordinate action");
      }
      E.images.push_back(std::move(img));
    }
    auto sorted = E.images;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw VerificationError("the wreath embedding is not injective");
    }
    // (g, b) E(s) must match the action of s on the R-class of the idempotent.
    Index const a = P.rees.a_of_idempotent();
    for (Index s = 0; s < S.size(); ++s) {
      for (Index g = 0; g < G.order(); ++g) {
        for (Index b = 0; b < P.num_b(); ++b) {
          Index const u   = S.mul(P.rees.uncoord(a, g, b), s);
          auto [gp, bp]   = E.wreath.act(g + 1, b + 1, E.images[s]);
          bool const in_j = P.green.j_of[u] == P.jclass;
          if (!in_j) {
            if (gp != kUndefined) {
              throw VerificationError("wreath action defined where the R-class action is not");
            }
            continue;
          }
          auto const cu = P.rees.coord[u];
          if (gp == kUndefined || cu.a != a || cu.g != gp - 1 || cu.b != bp - 1) {
            throw VerificationError("wreath action disagrees with the R-class action");
          }
        }
      }
    }
    return E;
  }

}  // namespace krc
