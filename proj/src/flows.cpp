#include "krc/flows.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace krc {

  bool Automaton::is_total() const {
    for (auto const& row : delta) {
      for (auto v : row) {
        if (v == kNone) {
          return false;
        }
      }
    }
    return true;
  }

  Automaton make_automaton(std::vector<std::string>        letters,
                           std::vector<std::vector<Index>> delta) {
    if (delta.empty()) {
      throw InputError("automaton needs at least one state");
    }
    if (letters.empty()) {
      throw InputError("automaton needs at least one letter");
    }
    for (auto const& row : delta) {
      if (row.size() != letters.size()) {
        throw InputError("transition row does not match the alphabet");
      }
      for (auto v : row) {
        if (v != kNone && v >= delta.size()) {
          throw InputError("transition target out of range");
        }
      }
    }
    return {std::move(letters), std::move(delta)};
  }

  FiniteSemigroup transition_semigroup(Automaton const& A, std::size_t budget) {
    std::vector<std::pair<std::string, PartialTransformation>> gens;
    for (std::size_t x = 0; x < A.letters.size(); ++x) {
      std::vector<Point> im(A.num_states());
      for (std::size_t q = 0; q < A.num_states(); ++q) {
        im[q] = A.delta[q][x] == kNone ? kUndefined : A.delta[q][x] + 1;
      }
      gens.emplace_back(A.letters[x], PartialTransformation(std::move(im)));
    }
    return generate(gens, budget);
  }

  std::vector<std::string> letters_of(FiniteSemigroup const& S) {
    std::vector<std::string> out;
    for (auto const& g : S.generators()) {
      out.push_back(g.name);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Verification
  ////////////////////////////////////////////////////////////////////////

  namespace {

    FlowReport failure(std::string cond, Index q, Index x, std::string detail) {
      return {false, std::move(cond), q, x, std::move(detail)};
    }

    std::string pt1(Index b) {
      return std::to_string(b + 1);
    }

  }  // namespace

  FlowReport check_transition(GroupMappingPresentation const& P,
                              SPC const&                      from,
                              SPC const&                      to,
                              std::size_t                     x) {
    auto const&       act = P.generator_actions.at(x);
    auto const&       G   = P.group();
    std::size_t const n   = P.num_b();
    Index const       xi  = static_cast<Index>(x);

    for (Index b = 0; b < n; ++b) {
      if (from.in_w(b) && act.image[b] != kNone && !to.in_w(act.image[b])) {
        return failure("F1", kNone, xi,
                       "point " + pt1(b) + " maps to " + pt1(act.image[b]) + " outside W");
      }
    }
    std::size_t const  m = from.num_blocks();
    std::vector<Index> target(m, kNone);
    for (Index b = 0; b < n; ++b) {
      if (!from.in_w(b) || act.image[b] == kNone) {
        continue;
      }
      Index const i = from.block_of[b];
      Index const t = to.block_of[act.image[b]];
      if (target[i] == kNone) {
        target[i] = t;
      } else if (target[i] != t) {
        return failure("F2", kNone, xi,
                       "block " + std::to_string(i + 1) + " is split by the letter");
      }
    }
    for (Index i = 0; i < m; ++i) {
      for (Index k = i + 1; k < m; ++k) {
        if (target[i] != kNone && target[i] == target[k]) {
          return failure("F3", kNone, xi,
                         "blocks " + std::to_string(i + 1) + " and " + std::to_string(k + 1)
                             + " land in the same block");
        }
      }
    }
    std::vector<Index> mu(n, kNone);
    for (Index b = 0; b < n; ++b) {
      if (from.in_w(b)) {
        mu[b] = from.mu[b];
      }
    }
    auto const mx = mu_action(mu, act, G);
    if (!mx.ok()) {
      return failure("F4", kNone, xi,
                     "points " + pt1(mx.failure->first) + " and " + pt1(mx.failure->second)
                         + " break the cross-section condition");
    }
    std::vector<Index> ratio(m, kNone);
    for (Index b = 0; b < n; ++b) {
      if (!from.in_w(b) || act.image[b] == kNone) {
        continue;
      }
      Index const i = from.block_of[b];
      Index const c = act.image[b];
      Index const r = G.mul(mx.mu[c], G.inverse(to.mu[c]));
      if (ratio[i] == kNone) {
        ratio[i] = r;
      } else if (ratio[i] != r) {
        return failure("F5", kNone, xi,
                       "image of block " + std::to_string(i + 1)
                           + " is not a translate of the target cross-section");
      }
    }
    return {};
  }

  FlowReport verify_flow(GroupMappingPresentation const& P, Flow const& F) {
    auto const& A = F.automaton;
    if (A.letters != letters_of(P.semigroup)) {
      return failure("input", kNone, kNone, "automaton letters differ from the generators");
    }
    if (F.xi.size() != A.num_states()) {
      return failure("input", kNone, kNone, "one SPC per state is required");
    }
    for (Index q = 0; q < F.xi.size(); ++q) {
      auto const& x = F.xi[q];
      if (x.degree() != P.num_b()) {
        return failure("input", q, kNone, "SPC degree differs from |B|");
      }
      for (Index b = 0; b < x.degree(); ++b) {
        if (x.in_w(b) && x.mu[b] >= P.group().order()) {
          return failure("input", q, kNone, "label out of range");
        }
      }
    }
    for (Index q = 0; q < A.num_states(); ++q) {
      for (Index x = 0; x < A.letters.size(); ++x) {
        Index const qx = A.delta[q][x];
        if (qx == kNone) {
          continue;
        }
        auto r = check_transition(P, F.xi[q], F.xi[qx], x);
        if (!r.ok) {
          r.state = q;
          return r;
        }
      }
    }
    return {};
  }

  ////////////////////////////////////////////////////////////////////////
  // Construction
  ////////////////////////////////////////////////////////////////////////

  Point qtilde_point(std::size_t g, std::size_t j, std::size_t q, std::size_t b_bar,
                     std::size_t order) {
    return static_cast<Point>((q * b_bar + j) * order + g + 1);
  }

  PresentationWitness presentation_construct(GroupMappingPresentation const& P,
                                             Flow const&                     F,
                                             std::size_t                     budget) {
    auto const report = verify_flow(P, F);
    if (!report.ok) {
      throw InputError("not a flow: " + report.condition + " " + report.detail);
    }
    auto const&       S  = P.semigroup;
    auto const&       A  = F.automaton;
    auto const&       G  = P.group();
    std::size_t const nq = A.num_states(), nx = A.letters.size(), nb = P.num_b(),
                      ng = G.order();

    std::vector<bool> covered(nb, false);
    for (auto const& x : F.xi) {
      for (auto b : x.w()) {
        covered[b] = true;
      }
    }
    if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
      throw InputError("the flow's subsets do not cover B");
    }
    for (Index q = 0; q < nq; ++q) {
      for (Index x = 0; x < nx; ++x) {
        if (A.delta[q][x] != kNone) {
          continue;
        }
        for (auto b : F.xi[q].w()) {
          if (P.generator_actions[x].image[b] != kNone) {
            throw InputError("W_q x is nonempty at a missing transition");
          }
        }
      }
    }

    PresentationWitness Wt;
    Wt.b_bar = 1;
    for (auto const& x : F.xi) {
      Wt.b_bar = std::max(Wt.b_bar, x.num_blocks());
    }
    std::size_t const bb = Wt.b_bar;
    Wt.perm.assign(nq, std::vector<std::vector<Index>>(nx));
    Wt.gtilde.assign(nq, std::vector<std::vector<Index>>(nx));

    for (Index q = 0; q < nq; ++q) {
      auto const& from = F.xi[q];
      for (Index x = 0; x < nx; ++x) {
        Index const qx = A.delta[q][x];
        if (qx == kNone) {
          continue;
        }
        auto const&        to  = F.xi[qx];
        auto const&        act = P.generator_actions[x];
        std::vector<Index> perm(bb, kNone), gt(bb, G.identity());
        std::vector<bool>  used(bb, false);
        // Least b of each block with bx defined fixes both jx and g~.
        for (Index b = 0; b < nb; ++b) {
          if (!from.in_w(b) || act.image[b] == kNone) {
            continue;
          }
          Index const j = from.block_of[b];
          if (perm[j] != kNone) {
            continue;
          }
          Index const c = act.image[b];
          perm[j]       = to.block_of[c];
          used[perm[j]] = true;
          gt[j] = G.mul(G.mul(from.mu[b], act.label[b]), G.inverse(to.mu[c]));
        }
        Index next = 0;
        for (Index j = 0; j < bb; ++j) {
          if (perm[j] != kNone) {
            continue;
          }
          while (used[next]) {
            ++next;
          }
          perm[j]    = next;
          used[next] = true;
        }
        Wt.perm[q][x]   = std::move(perm);
        Wt.gtilde[q][x] = std::move(gt);
      }
    }

    std::size_t const nt = ng * bb * nq;
    for (Index x = 0; x < nx; ++x) {
      std::vector<Point> im(nt, kUndefined);
      for (Index q = 0; q < nq; ++q) {
        Index const qx = A.delta[q][x];
        if (qx == kNone) {
          continue;
        }
        for (Index j = 0; j < bb; ++j) {
          for (Index g = 0; g < ng; ++g) {
            im[qtilde_point(g, j, q, bb, ng) - 1] = qtilde_point(
                G.mul(g, Wt.gtilde[q][x][j]), Wt.perm[q][x][j], qx, bb, ng);
          }
        }
      }
      Wt.lifted.emplace_back(std::move(im));
    }
    // Each lifted letter permutes [b_bar] on every Q-fibre and moves Q by delta.
    for (Index x = 0; x < nx; ++x) {
      for (Index q = 0; q < nq; ++q) {
        std::set<Index> js;
        for (Index j = 0; j < bb; ++j) {
          for (Index g = 0; g < ng; ++g) {
            Point const p = Wt.lifted[x](qtilde_point(g, j, q, bb, ng));
            if (A.delta[q][x] == kNone) {
              if (p != kUndefined) {
                throw VerificationError("lifted letter defined at a missing transition");
              }
              continue;
            }
            Index const r  = (p - 1) / ng;
            Index const jq = r % bb, qq = r / bb;
            if (qq != A.delta[q][x] || jq != Wt.perm[q][x][j]) {
              throw VerificationError("lifted letter leaves the wreath product");
            }
            js.insert(jq);
          }
        }
        if (A.delta[q][x] != kNone && js.size() != bb) {
          throw VerificationError("lifted letter is not a permutation on a fibre");
        }
      }
    }

    // Q-bar and rho.
    std::map<std::pair<Point, Index>, Index> qbar_index;
    auto add_point = [&](Point p, Index b, std::pair<Index, Index> r) {
      qbar_index.emplace(std::pair{p, b}, static_cast<Index>(Wt.qbar.size()));
      Wt.qbar.emplace_back(p, b);
      Wt.rho.push_back(r);
    };
    for (Point p = 1; p <= nt; ++p) {
      add_point(p, kNone, {kNone, kNone});
    }
    for (Index q = 0; q < nq; ++q) {
      auto const& x = F.xi[q];
      for (Index b = 0; b < nb; ++b) {
        if (!x.in_w(b)) {
          continue;
        }
        Index const j = x.block_of[b];
        for (Index g = 0; g < ng; ++g) {
          add_point(qtilde_point(g, j, q, bb, ng), b, {G.mul(g, x.mu[b]), b});
        }
      }
    }
    std::set<std::pair<Index, Index>> image(Wt.rho.begin(), Wt.rho.end());
    if (image.size() != ng * nb + 1) {
      throw VerificationError("rho is not onto G x B + 0");
    }

    // rho(p x) = rho(p) x against raw multiplication in S.
    Index const a = P.rees.a_of_idempotent();
    for (Index i = 0; i < Wt.qbar.size(); ++i) {
      auto const [p, b] = Wt.qbar[i];
      auto const [g, bb0] = Wt.rho[i];
      for (Index x = 0; x < nx; ++x) {
        std::pair<Index, Index> expect{kNone, kNone};
        if (bb0 != kNone) {
          Index const u = S.mul(P.rees.uncoord(a, g, bb0), S.generator(x));
          if (P.green.j_of[u] == P.jclass) {
            auto const c = P.rees.coord[u];
            expect       = {c.g, c.b};
          }
        }
        std::pair<Index, Index> got{kNone, kNone};
        Point const             p2 = Wt.lifted[x](p);
        Index const b2 = b == kNone ? kNone : P.generator_actions[x].image[b];
        if (p2 != kUndefined) {
          auto it = qbar_index.find({p2, b2});
          if (it == qbar_index.end()) {
            throw VerificationError("Q-bar is not closed at point " + std::to_string(p)
                                    + " under letter " + A.letters[x]);
          }
          got = Wt.rho[it->second];
        }
        ++Wt.morphism_checks;
        if (got != expect) {
          throw VerificationError("rho is not a morphism at point " + std::to_string(p)
                                  + " under letter " + A.letters[x]);
        }
      }
    }

    // The product semigroup on Q~ + B and the division S < product.
    std::vector<std::pair<std::string, PartialTransformation>> gens;
    for (Index x = 0; x < nx; ++x) {
      std::vector<Point> im = Wt.lifted[x].images();
      for (Index b = 0; b < nb; ++b) {
        Index const bx = P.generator_actions[x].image[b];
        im.push_back(bx == kNone ? kUndefined : static_cast<Point>(nt + bx + 1));
      }
      gens.emplace_back(A.letters[x], PartialTransformation(std::move(im)));
    }
    Wt.product = generate(gens, budget);
    std::vector<Index> lifts;
    for (Index x = 0; x < nx; ++x) {
      lifts.push_back(Wt.product.generator(x));
    }
    Wt.division = check_division(S, Wt.product, lifts);
    if (Wt.division.status != DivisionStatus::found) {
      throw VerificationError("the induced division does not verify: " + Wt.division.report);
    }
    return Wt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Search
  ////////////////////////////////////////////////////////////////////////

  Flow trivial_flow(GroupMappingPresentation const& P) {
    std::size_t const               nb = P.num_b();
    std::vector<std::vector<Index>> blocks;
    for (Index b = 0; b < nb; ++b) {
      blocks.push_back({b});
    }
    auto letters = letters_of(P.semigroup);
    std::vector<std::vector<Index>> delta(1, std::vector<Index>(letters.size(), 0));
    return {make_automaton(letters, delta),
            {make_spc(nb, blocks, std::vector<Index>(nb, P.group().identity()), P.group())}};
  }

  namespace {

    class Searcher {
     public:
      Searcher(GroupMappingPresentation const& P,
               Automaton const&                A,
               std::vector<SPC> const&         spcs,
               std::size_t&                    nodes,
               std::size_t                     budget)
          : _P(P), _A(A), _spcs(spcs), _nodes(nodes), _budget(budget),
            _choice(A.num_states(), kNone) {}

      // true: found; false: exhausted. Throws out_of_budget.
      bool run() {
        return assign(0);
      }

      std::vector<SPC> labels() const {
        std::vector<SPC> out;
        for (auto c : _choice) {
          out.push_back(_spcs[c]);
        }
        return out;
      }

      struct OutOfBudget {};

     private:
      bool consistent(Index q) {
        for (Index p = 0; p <= q; ++p) {
          for (Index x = 0; x < _A.letters.size(); ++x) {
            Index const px = _A.delta[p][x];
            if (px == kNone || px > q || (p != q && px != q)) {
              continue;
            }
            if (!check_transition(_P, _spcs[_choice[p]], _spcs[_choice[px]], x).ok) {
              return false;
            }
          }
        }
        return true;
      }

      bool covered() const {
        std::vector<bool> c(_P.num_b(), false);
        for (auto i : _choice) {
          for (auto b : _spcs[i].w()) {
            c[b] = true;
          }
        }
        return std::find(c.begin(), c.end(), false) == c.end();
      }

      bool assign(Index q) {
        if (q == _A.num_states()) {
          return covered();
        }
        for (Index i = 0; i < _spcs.size(); ++i) {
          if (++_nodes > _budget) {
            throw OutOfBudget{};
          }
          _choice[q] = i;
          if (consistent(q) && assign(q + 1)) {
            return true;
          }
        }
        _choice[q] = kNone;
        return false;
      }

      GroupMappingPresentation const& _P;
      Automaton const&                _A;
      std::vector<SPC> const&         _spcs;
      std::size_t&                    _nodes;
      std::size_t                     _budget;
      std::vector<Index>              _choice;
    };

  }  // namespace

  FlowSearchResult flow_search(GroupMappingPresentation const& P,
                               std::size_t                     max_states,
                               CapPredicate const&             cap,
                               std::size_t                     node_budget) {
    FlowSearchResult  result;
    auto const        letters = letters_of(P.semigroup);
    std::size_t const k       = letters.size();
    auto const        spcs    = enumerate_spc(P.num_b(), P.group());
    for (std::size_t m = 1; m <= max_states; ++m) {
      std::vector<Index> flat(m * k, 0);
      while (true) {
        std::vector<std::vector<Index>> delta(m, std::vector<Index>(k));
        for (std::size_t q = 0; q < m; ++q) {
          for (std::size_t x = 0; x < k; ++x) {
            delta[q][x] = flat[q * k + x];
          }
        }
        auto A = make_automaton(letters, delta);
        ++result.automata_tried;
        if (cap(transition_semigroup(A))) {
          Searcher s(P, A, spcs, result.nodes, node_budget);
          try {
            if (s.run()) {
              result.status = SearchStatus::found;
              result.flow   = Flow{A, s.labels()};
              auto check    = verify_flow(P, *result.flow);
              if (!check.ok) {
                throw VerificationError("search returned a labelling that fails "
                                        + check.condition);
              }
              result.report = "flow found on " + std::to_string(m) + " state(s)";
              return result;
            }
          } catch (Searcher::OutOfBudget const&) {
            result.status = SearchStatus::unknown;
            result.report = "node budget of " + std::to_string(node_budget)
                            + " exhausted at " + std::to_string(m) + " state(s)";
            return result;
          }
        }
        std::size_t i = flat.size();
        while (i-- > 0) {
          if (++flat[i] < m) {
            break;
          }
          flat[i] = 0;
        }
        if (i == std::size_t(-1)) {
          break;
        }
      }
    }
    result.status = SearchStatus::exhausted;
    result.report = "no flow on total automata with at most " + std::to_string(max_states)
                    + " state(s)";
    return result;
  }

  FlowSearchResult flow_search(GroupMappingPresentation const& P,
                               std::size_t                     max_states,
                               std::size_t                     node_budget) {
    return flow_search(
        P, max_states, [](FiniteSemigroup const& T) { return is_aperiodic(T); }, node_budget);
  }

  ////////////////////////////////////////////////////////////////////////
  // Text
  ////////////////////////////////////////////////////////////////////////

  std::string automaton_to_string(Automaton const& A) {
    std::ostringstream out;
    out << "states: " << A.num_states() << "\n";
    for (Index q = 0; q < A.num_states(); ++q) {
      for (Index x = 0; x < A.letters.size(); ++x) {
        if (A.delta[q][x] != kNone) {
          out << "trans: " << q + 1 << " " << A.letters[x] << " " << A.delta[q][x] + 1
              << "\n";
        }
      }
    }
    return out.str();
  }

  Automaton parse_automaton(std::string const& text, std::vector<std::string> const& letters) {
    std::istringstream              in(text);
    std::string                     line;
    std::size_t                     lineno = 0;
    std::optional<std::size_t>      m;
    std::vector<std::vector<Index>> delta;
    auto fail = [&](std::string const& what) {
      throw InputError("automaton line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ls(line);
      std::string        key;
      if (!(ls >> key)) {
        continue;
      }
      if (key == "states:") {
        std::size_t v;
        if (m || !(ls >> v) || v == 0) {
          fail("expected a single positive 'states: m'");
        }
        m = v;
        delta.assign(v, std::vector<Index>(letters.size(), kNone));
      } else if (key == "trans:") {
        if (!m) {
          fail("'trans:' before 'states:'");
        }
        std::size_t q, q2;
        std::string x;
        if (!(ls >> q >> x >> q2) || q == 0 || q > *m || q2 == 0 || q2 > *m) {
          fail("expected 'trans: q x q2' with states in 1.." + std::to_string(*m));
        }
        auto it = std::find(letters.begin(), letters.end(), x);
        if (it == letters.end()) {
          fail("unknown letter '" + x + "'");
        }
        auto& slot = delta[q - 1][it - letters.begin()];
        if (slot != kNone) {
          fail("duplicate transition");
        }
        slot = static_cast<Index>(q2 - 1);
      } else {
        fail("unexpected '" + key + "'");
      }
      std::string rest;
      if (ls >> rest) {
        fail("trailing text");
      }
    }
    if (!m) {
      throw InputError("automaton has no 'states:' line");
    }
    return make_automaton(letters, std::move(delta));
  }

  std::string flow_to_string(Flow const& F) {
    std::string out = automaton_to_string(F.automaton) + "xi:\n";
    for (auto const& x : F.xi) {
      out += to_string(x) + "\n";
    }
    return out;
  }

  Flow parse_flow(std::string const& text, GroupMappingPresentation const& P) {
    auto const pos = text.find("xi:");
    if (pos == std::string::npos) {
      throw InputError("flow file has no 'xi:' line");
    }
    Flow F;
    F.automaton = parse_automaton(text.substr(0, pos), letters_of(P.semigroup));
    std::istringstream in(text.substr(pos + 3));
    std::string        line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      F.xi.push_back(parse_spc(line, P.num_b(), P.group()));
    }
    if (F.xi.size() != F.automaton.num_states()) {
      throw InputError("flow file needs one SPC line per state");
    }
    return F;
  }

}  // namespace krc
