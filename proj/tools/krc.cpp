// krc: command line front end for the krc library.
//
// Exit status: 0 success, 2 usage or bad input, 3 budget exhausted,
// 4 a verification failed (including corpus mismatches and rejected
// witnesses).

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "krc/complexity.hpp"
#include "krc/corpus.hpp"
#include "krc/flows.hpp"
#include "krc/inverse.hpp"
#include "krc/io.hpp"
#include "krc/spc.hpp"

using namespace krc;

namespace {

  constexpr int kExitUsage    = 2;
  constexpr int kExitResource = 3;
  constexpr int kExitVerify   = 4;

  EstimateBudget budget;

  FiniteSemigroup load(std::string const& path) {
    return load_semigroup(path, budget.elements);
  }

  Json load_json(std::string const& path) {
    try {
      return Json::parse(read_file(path));
    } catch (Json::parse_error const& e) {
      throw InputError(path + ": " + e.what());
    }
  }

  void emit(std::string const& path, std::string const& text) {
    if (path.empty() || path == "-") {
      std::cout << text;
    } else {
      write_file(path, text);
    }
  }

  Index jclass_arg(FiniteSemigroup const& S, GreenStructure const& G, std::optional<Index> j) {
    if (j) {
      if (*j >= G.j_classes.size()) {
        throw InputError("no J-class " + std::to_string(*j) + "; there are "
                         + std::to_string(G.j_classes.size()));
      }
      return *j;
    }
    auto const C = classify(S, G);
    if (!C.distinguished) {
      throw InputError("no distinguished J-class; pass --jclass");
    }
    return *C.distinguished;
  }

  Json indices(std::vector<Index> const& v) {
    Json a = Json::array();
    for (auto x : v) a.push_back(x == kNone ? Json(nullptr) : Json(x));
    return a;
  }

  Json jclass_json(JClassRef const& J, GreenStructure const& G) {
    Json r = Json::array(), l = Json::array();
    for (auto c : J.r_classes) r.push_back(indices(G.r_classes[c]));
    for (auto c : J.l_classes) l.push_back(indices(G.l_classes[c]));
    return Json{{"id", J.id}, {"r_classes", r}, {"l_classes", l}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Subcommands
  ////////////////////////////////////////////////////////////////////////

  int analyze(std::string const& file) {
    auto const S = load(file);
    auto const G = green(S);
    auto const C = classify(S, G);
    auto yn      = [](bool b) { return b ? "yes" : "no"; };
    std::cout << "order " << S.size() << "\n"
              << "generators " << S.num_generators() << "\n"
              << "aperiodic: " << yn(is_aperiodic(S, G)) << "\n"
              << "identity: " << yn(S.identity().has_value()) << "\n"
              << "zero: " << yn(C.zero.has_value()) << "\n"
              << "right mapping: " << yn(C.right_mapping) << "\n"
              << "left mapping: " << yn(C.left_mapping) << "\n"
              << "generalized group mapping: " << yn(C.generalized_group_mapping) << "\n"
              << "group mapping: " << yn(C.group_mapping) << "\n";
    if (C.distinguished) std::cout << "distinguished J-class: " << *C.distinguished << "\n";
    std::cout << "J-classes " << G.j_classes.size() << "\n";
    for (Index j = 0; j < G.j_classes.size(); ++j) {
      auto const J = jclass_ref(G, j);
      std::cout << "  J" << j << ": size " << G.j_classes[j].size() << ", "
                << J.r_classes.size() << "x" << J.l_classes.size();
      if (G.j_regular[j]) {
        Index e = kNone;
        for (auto s : G.j_classes[j]) {
          if (S.is_idempotent(s)) {
            e = s;
            break;
          }
        }
        std::cout << ", regular, group order " << maximal_subgroup(S, G, e).group.order();
      }
      std::cout << "\n";
    }
    return 0;
  }

  int rlm(std::string const& file, std::optional<Index> j, std::string const& out) {
    auto const S = load(file);
    auto const G = green(S);
    auto const Q = rlm_quotient(S, G, jclass_arg(S, G, j));
    std::cout << semigroup_to_string(Q.semigroup);
    if (!out.empty()) {
      Json side{{"format", "krc-rlm"},
                {"jclass", jclass_json(Q.jclass, G)},
                {"order", Q.semigroup.size()},
                {"image_jclass", Q.image_jclass},
                {"morphism", indices(Q.morphism)}};
      write_file(out, side.dump(2) + "\n");
    }
    return 0;
  }

  int gm(std::string const& file, std::optional<Index> j, std::string const& out) {
    auto const S  = load(file);
    auto const G  = green(S);
    auto const jj = jclass_arg(S, G, j);
    auto const Q  = gm_quotient(S, G, jj);
    if (Q.aperiodic_class) {
      std::cerr << "warning: J-class " << jj
                << " has trivial subgroups; the image is only generalized group mapping\n";
    }
    std::cout << semigroup_to_string(Q.semigroup);
    if (!out.empty()) {
      Json side{{"format", "krc-gm"},
                {"jclass", jj},
                {"order", Q.semigroup.size()},
                {"image_jclass", Q.image_jclass},
                {"aperiodic_class", Q.aperiodic_class},
                {"morphism", indices(Q.morphism)}};
      write_file(out, side.dump(2) + "\n");
    }
    return 0;
  }

  int rees(std::string const& file, std::optional<Index> j, std::string const& out) {
    auto const S = load(file);
    auto const P = present(S, jclass_arg(S, green(S), j));
    auto const& R = P.rees;
    Json C = Json::array();
    for (auto const& row : R.C) C.push_back(indices(row));
    Json coord = Json::object();
    for (Index s = 0; s < S.size(); ++s) {
      auto const& t = R.coord[s];
      if (t.a != kNone) coord[std::to_string(s)] = Json::array({t.a, t.g, t.b});
    }
    Json side{{"format", "krc-rees"},
              {"jclass", jclass_json(R.jclass, P.green)},
              {"idempotent", R.idempotent},
              {"group", {{"members", indices(R.group.members)},
                         {"table", R.group.group.table()}}},
              {"p", indices(R.p)},
              {"q", indices(R.q)},
              {"C", C},
              {"coordinates", coord}};
    std::cout << "A " << R.num_a() << ", G " << R.group.group.order() << ", B " << R.num_b()
              << "\n";
    std::cout << "coordinate transport verified\n";
    emit(out, side.dump(2) + "\n");
    return 0;
  }

  int spc(std::size_t n, std::string const& group, std::vector<std::string> const& meet_args,
          std::vector<std::string> const& join_args) {
    auto const G = group_by_name(group);
    if (!meet_args.empty() || !join_args.empty()) {
      auto two = [&](std::vector<std::string> const& a) {
        if (a.size() != 2) throw InputError("--meet and --join take two SPCs");
        return std::pair{canonicalize(parse_spc(a[0], n, G), G),
                         canonicalize(parse_spc(a[1], n, G), G)};
      };
      if (!meet_args.empty()) {
        auto [x, y] = two(meet_args);
        std::cout << to_string(meet(x, y, G)) << "\n";
      }
      if (!join_args.empty()) {
        auto [x, y] = two(join_args);
        auto const z = join(RhodesElement(x), RhodesElement(y), G);
        std::cout << (z ? to_string(*z) : std::string("top")) << "\n";
      }
      return 0;
    }
    auto const all = enumerate_spc(n, G);
    for (auto const& x : all) std::cout << to_string(x) << "\n";
    std::cout << all.size() << " SPCs, " << all.size() + 1 << " elements in the Rhodes lattice\n";
    return 0;
  }

  Json flow_witness(FiniteSemigroup const& S, Index j, Flow const& F) {
    return Json{{"format", "krc-flow"},
                {"semigroup", semigroup_to_string(S)},
                {"jclass", j},
                {"flow", flow_to_string(F)}};
  }

  FlowReport replay_flow(Json const& w) {
    auto const S = parse_semigroup(w.at("semigroup").get<std::string>(), budget.elements);
    auto const P = present(S, w.at("jclass").get<Index>());
    return verify_flow(P, parse_flow(w.at("flow").get<std::string>(), P));
  }

  std::string describe(FlowReport const& r) {
    if (r.ok) return "ok";
    std::ostringstream s;
    s << "fails " << r.condition;
    if (r.state != kNone) s << " at state " << r.state + 1;
    if (r.letter != kNone) s << " letter " << r.letter;
    if (!r.detail.empty()) s << ": " << r.detail;
    return s.str();
  }

  int flow_verify(std::string const& sgp, std::string const& flow, std::optional<Index> j) {
    auto const S  = load(sgp);
    auto const jj = jclass_arg(S, green(S), j);
    auto const P  = present(S, jj);
    auto const F  = parse_flow(read_file(flow), P);
    auto const r  = verify_flow(P, F);
    std::cout << describe(r) << "\n";
    if (!r.ok) return kExitVerify;
    auto const W = presentation_construct(P, F, budget.elements);
    std::cout << "construction: product order " << W.product.size() << ", division "
              << (W.division.status == DivisionStatus::found ? "verified" : "failed") << "\n";
    return W.division.status == DivisionStatus::found ? 0 : kExitVerify;
  }

  int flow_search_cmd(std::string const& sgp, std::optional<Index> j, std::size_t cap,
                      std::string const& out) {
    auto const S  = load(sgp);
    auto const jj = jclass_arg(S, green(S), j);
    auto const P  = present(S, jj);
    FlowSearchResult r;
    if (cap == 0) {
      r = flow_search(P, budget.states, budget.nodes);
    } else {
      r = flow_search(
          P, budget.states,
          [&](FiniteSemigroup const& T) {
            auto const I = estimate(T, budget);
            return I.upper && *I.upper <= cap;
          },
          budget.nodes);
    }
    std::cout << "automata tried " << r.automata_tried << ", nodes " << r.nodes << "\n";
    switch (r.status) {
      case SearchStatus::found:
        std::cout << "found\n" << flow_to_string(*r.flow);
        if (!out.empty()) write_file(out, flow_witness(S, jj, *r.flow).dump(2) + "\n");
        return 0;
      case SearchStatus::exhausted:
        std::cout << "exhausted: no flow with at most " << budget.states << " state(s)\n";
        return 0;
      case SearchStatus::unknown:
        break;
    }
    std::cout << "unknown: node budget exhausted\n";
    return kExitResource;
  }

  Json division_json(FiniteSemigroup const& S, FiniteSemigroup const& T,
                     DivisionWitness const& w) {
    return Json{{"format", "krc-division"},
                {"S", semigroup_to_string(S)},
                {"T", semigroup_to_string(T)},
                {"lifts", w.lifts},
                {"domain", w.domain},
                {"images", w.images}};
  }

  bool replay_division(Json const& w) {
    auto const S = parse_semigroup(w.at("S").get<std::string>(), budget.elements);
    auto const T = parse_semigroup(w.at("T").get<std::string>(), budget.elements);
    DivisionWitness d{w.at("lifts").get<std::vector<Index>>(),
                      w.at("domain").get<std::vector<Index>>(),
                      w.at("images").get<std::vector<Index>>()};
    for (auto x : d.lifts) {
      if (x >= T.size()) return false;
    }
    return verify_division(S, T, d);
  }

  int divide(std::string const& sf, std::string const& tf, std::string const& lifts_file,
             std::string const& out, std::size_t search_budget) {
    auto const S = load(sf);
    auto const T = load(tf);
    std::optional<std::vector<Index>> lifts;
    if (!lifts_file.empty()) {
      std::istringstream in(read_file(lifts_file));
      std::vector<Index> v;
      std::string        tok;
      while (in >> tok) {
        if (auto x = T.generator_index(tok)) {
          v.push_back(T.generator(*x));
        } else if (tok.find_first_not_of("0123456789") == std::string::npos) {
          v.push_back(static_cast<Index>(std::stoul(tok)));
        } else {
          throw InputError("lift " + tok + " is neither an element index nor a generator of T");
        }
        if (v.back() >= T.size()) throw InputError("lift " + tok + " is not an element of T");
      }
      lifts = std::move(v);
    }
    auto const r = check_division(S, T, lifts, search_budget);
    switch (r.status) {
      case DivisionStatus::found:
        std::cout << "divides: yes\nlifts";
        for (auto x : r.witness->lifts) std::cout << " " << x;
        std::cout << "\n";
        if (!out.empty()) write_file(out, division_json(S, T, *r.witness).dump(2) + "\n");
        return 0;
      case DivisionStatus::none:
        std::cout << (lifts ? "divides: not through these lifts\n" : "divides: no\n");
        return lifts ? kExitVerify : 0;
      case DivisionStatus::unknown:
        break;
    }
    std::cout << "divides: unknown (search budget exhausted after " << r.nodes << " nodes)\n";
    return kExitResource;
  }

  int estimate_cmd(std::string const& file, bool trace, std::string out) {
    auto const S = load(file);
    auto const I = estimate(S, budget);
    std::cout << interval_to_string(I.lower, I.upper) << "\n";
    if (trace) std::cout << certificate_tree(I.certificate);
    Json cert{{"format", "krc-certificate"},
              {"interval", {{"lower", I.lower}, {"upper", I.upper ? Json(*I.upper) : Json()}}},
              {"budget", {{"states", budget.states},
                          {"elements", budget.elements},
                          {"nodes", budget.nodes}}},
              {"root", I.certificate}};
    if (out.empty()) out = file + ".cert.json";
    if (out != "-") write_file(out, cert.dump(2) + "\n");
    return 0;
  }

  int inverse_demo(std::size_t n, std::string const& group, std::size_t rank, bool lift,
                   std::string const& out, std::string const& witness) {
    auto const G = group_by_name(group);
    auto const S = small_monoid(n, G, rank);
    std::cout << "order " << S.semigroup.size() << ", units " << S.num_units << ", ideal "
              << S.ideal_size << "\n";
    std::cout << "0-minimal ideal is the Brandt semigroup B_" << S.brandt_target.n << " over a group of order "
              << S.brandt_target.group.order() << " (isomorphism verified)\n";
    if (!out.empty()) write_file(out, semigroup_to_string(S.semigroup));
    if (!lift) return 0;
    auto const T = lift_TS(S);
    auto const c = analyze_lift(S, T);
    auto yn      = [](bool b) { return b ? "yes" : "no"; };
    std::cout << "T(S) order " << T.semigroup.size() << ", J-classes " << c.num_jclasses << "\n"
              << "  J0 size " << c.size_j0 << ", maximal subgroup isomorphic to G: "
              << yn(c.j0_group_iso) << "\n"
              << "  J1 size " << c.size_j1 << ", " << c.j1_rows << "x" << c.j1_rows
              << ", Brandt: " << yn(c.j1_brandt) << ", |H| " << c.h_order
              << ", H = G x (G wr Sym_" << n - 1 << "): " << yn(c.h_iso) << "\n"
              << "  J2 size " << c.size_j2 << ", units of S: " << yn(c.j2_group_iso) << "\n"
              << "  J1 acts trivially on J0: " << yn(c.kills_j0) << "\n";
    auto const D = inverse_decomposition(S);
    bool const ok = D.division.status == DivisionStatus::found
                    && D.flow_division.status == DivisionStatus::found;
    std::cout << "decomposition into units x RLM: product order " << D.product.size()
              << ", division " << (ok ? "verified" : "failed") << "\n";
    if (!witness.empty() && D.division.witness) {
      write_file(witness, division_json(S.semigroup, D.product, *D.division.witness).dump(2) + "\n");
    }
    return ok ? 0 : kExitVerify;
  }

  int corpus_run(std::string const& dir) {
    auto const r = run_corpus(dir, budget);
    std::cout << r.text;
    return r.mismatches == 0 ? 0 : kExitVerify;
  }

  int replay(std::string const& file) {
    auto const  w      = load_json(file);
    std::string format = w.value("format", "");
    if (format == "krc-division") {
      bool const ok = replay_division(w);
      std::cout << "division witness " << (ok ? "ok" : "REJECTED") << "\n";
      return ok ? 0 : kExitVerify;
    }
    if (format == "krc-flow") {
      auto const r = replay_flow(w);
      std::cout << "flow " << describe(r) << "\n";
      return r.ok ? 0 : kExitVerify;
    }
    if (format == "krc-certificate" || format.empty()) {
      auto const r = replay_certificate(w, budget.elements);
      std::cout << "certificate " << (r.ok ? "ok" : "REJECTED") << ": " << r.message << "\n";
      return r.ok ? 0 : kExitVerify;
    }
    throw InputError("unknown witness format " + format);
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krohn-Rhodes complexity toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget-states", budget.states, "flow search: maximum automaton states")
      ->envname("KRC_BUDGET_STATES");
  app.add_option("--budget-elements", budget.elements, "enumeration: maximum elements")
      ->envname("KRC_BUDGET_ELEMENTS");
  app.add_option("--budget-nodes", budget.nodes, "flow search: maximum search nodes")
      ->envname("KRC_BUDGET_NODES");

  std::string          file, file2, out, lifts, dir = "corpus", group = "trivial", witness;
  std::optional<Index> jclass;
  std::size_t          points = 2, cap = 0, n = 2, rank = 1;
  std::size_t          search_budget = kDefaultDivisionBudget;
  bool                 trace = false, lift = false;
  std::vector<std::string> meet_args, join_args;
  int                  status = 0;

  auto* c_analyze = app.add_subcommand("analyze", "order, Green structure and classification");
  c_analyze->add_option("file", file)->required();
  c_analyze->callback([&] { status = analyze(file); });

  auto* c_rlm = app.add_subcommand("rlm", "RLM quotient on a J-class");
  c_rlm->add_option("file", file)->required();
  c_rlm->add_option("--jclass", jclass, "J-class id (default: distinguished)");
  c_rlm->add_option("--out", out, "JSON sidecar with the morphism");
  c_rlm->callback([&] { status = rlm(file, jclass, out); });

  auto* c_gm = app.add_subcommand("gm", "GM quotient on a J-class");
  c_gm->add_option("file", file)->required();
  c_gm->add_option("--jclass", jclass, "J-class id (default: distinguished)");
  c_gm->add_option("--out", out, "JSON sidecar with the morphism");
  c_gm->callback([&] { status = gm(file, jclass, out); });

  auto* c_rees = app.add_subcommand("rees", "Rees coordinates of a regular J-class");
  c_rees->add_option("file", file)->required();
  c_rees->add_option("--jclass", jclass, "J-class id (default: distinguished)");
  c_rees->add_option("--out", out, "write the coordinates here instead of stdout");
  c_rees->callback([&] { status = rees(file, jclass, out); });

  auto* c_spc = app.add_subcommand("spc", "enumerate SPCs, or compute a meet or join");
  c_spc->add_option("--points", points, "size of B")->required();
  c_spc->add_option("--group", group, "trivial, Z<k>, Sym<k> or a group file");
  c_spc->add_option("--meet", meet_args, "two SPCs")->expected(2);
  c_spc->add_option("--join", join_args, "two SPCs")->expected(2);
  c_spc->callback([&] { status = spc(points, group, meet_args, join_args); });

  auto* c_flow = app.add_subcommand("flow", "flows on a group mapping presentation");
  c_flow->require_subcommand(1);
  auto* c_verify = c_flow->add_subcommand("verify", "check F1-F5 and build the decomposition");
  c_verify->add_option("semigroup", file)->required();
  c_verify->add_option("flow", file2)->required();
  c_verify->add_option("--jclass", jclass, "J-class id (default: distinguished)");
  c_verify->callback([&] { status = flow_verify(file, file2, jclass); });
  auto* c_search = c_flow->add_subcommand("search", "search for a flow");
  c_search->add_option("semigroup", file)->required();
  c_search->add_option("--jclass", jclass, "J-class id (default: distinguished)");
  c_search->add_option("--max-states", budget.states, "maximum automaton states")
      ->envname("KRC_BUDGET_STATES");
  c_search->add_option("--cap", cap, "complexity cap on the automaton");
  c_search->add_option("--out", out, "write a flow witness");
  c_search->callback([&] { status = flow_search_cmd(file, jclass, cap, out); });

  auto* c_divide = app.add_subcommand("divide", "decide whether S divides T");
  c_divide->add_option("S", file)->required();
  c_divide->add_option("T", file2)->required();
  c_divide->add_option("--lifts", lifts, "file with one lift per generator of S");
  c_divide->add_option("--search-budget", search_budget, "maximum search nodes");
  c_divide->add_option("--out", out, "write the division witness");
  c_divide->callback([&] { status = divide(file, file2, lifts, out, search_budget); });

  auto* c_estimate = app.add_subcommand("estimate", "certified complexity interval");
  c_estimate->add_option("file", file)->required();
  c_estimate->add_flag("--trace", trace, "print the certificate tree");
  c_estimate->add_option("--out", out, "certificate file (default <file>.cert.json, - for none)");
  c_estimate->callback([&] { status = estimate_cmd(file, trace, out); });

  auto* c_inverse = app.add_subcommand("inverse", "small inverse monoids");
  c_inverse->require_subcommand(1);
  auto* c_demo = c_inverse->add_subcommand("demo", "build a small monoid and its lift");
  c_demo->add_option("--n", n, "matrix size");
  c_demo->add_option("--group", group, "trivial, Z<k>, Sym<k> or a group file");
  c_demo->add_option("--rank", rank, "rank of the 0-minimal ideal");
  c_demo->add_flag("--lift", lift, "also analyze T(S) and the decomposition");
  c_demo->add_option("--out", out, "write the semigroup file");
  c_demo->add_option("--witness", witness, "write the division witness (with --lift)");
  c_demo->callback([&] { status = inverse_demo(n, group, rank, lift, out, witness); });

  auto* c_corpus = app.add_subcommand("corpus", "corpus maintenance");
  c_corpus->require_subcommand(1);
  auto* c_run = c_corpus->add_subcommand("run", "check every manifest entry");
  c_run->add_option("--dir", dir, "corpus directory");
  c_run->callback([&] { status = corpus_run(dir); });

  auto* c_replay = app.add_subcommand("replay", "re-verify a certificate or witness file");
  c_replay->add_option("file", file)->required();
  c_replay->callback([&] { status = replay(file); });

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kExitUsage;
  } catch (InputError const& e) {
    std::cerr << "krc: " << e.what() << "\n";
    return kExitUsage;
  } catch (Json::exception const& e) {
    std::cerr << "krc: malformed JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (ResourceError const& e) {
    std::cerr << "krc: budget exhausted: " << e.what() << "\n";
    return kExitResource;
  } catch (VerificationError const& e) {
    std::cerr << "krc: verification failed: " << e.what() << "\n";
    return kExitVerify;
  } catch (std::exception const& e) {
    std::cerr << "krc: " << e.what() << "\n";
    return kExitVerify;
  }
  return status;
}
