#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "krc/complexity.hpp"
#include "krc/corpus.hpp"
#include "krc/flows.hpp"
#include "krc/inverse.hpp"
#include "krc/io.hpp"
#include "krc/spc.hpp"

namespace py = pybind11;
using namespace krc;

namespace {

  py::object maybe(Index x) {
    return x == kNone ? py::object(py::none()) : py::object(py::int_(x));
  }

  py::list indices(std::vector<Index> const& v) {
    py::list out;
    for (auto x : v) out.append(maybe(x));
    return out;
  }

  Index pick_jclass(FiniteSemigroup const& S, GreenStructure const& G, std::optional<Index> j) {
    if (j) {
      if (*j >= G.j_classes.size()) throw InputError("no J-class " + std::to_string(*j));
      return *j;
    }
    auto const C = classify(S, G);
    if (!C.distinguished) throw InputError("no distinguished J-class; pass jclass");
    return *C.distinguished;
  }

  EstimateBudget make_budget(std::size_t states, std::size_t elements, std::size_t nodes) {
    EstimateBudget b;
    b.states   = states;
    b.elements = elements;
    b.nodes    = nodes;
    return b;
  }

  FiniteSemigroup from_generators(std::vector<std::pair<std::string, std::vector<Point>>> const& gens,
                                  std::size_t budget) {
    std::vector<std::pair<std::string, PartialTransformation>> g;
    for (auto const& [name, images] : gens) g.emplace_back(name, PartialTransformation(images));
    return generate(g, budget);
  }

}  // namespace

PYBIND11_MODULE(_krc, m) {
  m.doc() = "Finite semigroups, flows and certified Krohn-Rhodes complexity bounds";

  auto input    = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  auto resource = py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  auto verify = py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);
  (void) input;
  (void) resource;
  (void) verify;

  m.attr("DEFAULT_ELEMENT_BUDGET") = kDefaultElementBudget;

  py::class_<FiniteSemigroup>(m, "Semigroup")
      .def_static("from_text", &parse_semigroup, py::arg("text"),
                  py::arg("budget") = kDefaultElementBudget)
      .def_static("from_file", &load_semigroup, py::arg("path"),
                  py::arg("budget") = kDefaultElementBudget)
      .def_static("generated_by", &from_generators, py::arg("generators"),
                  py::arg("budget") = kDefaultElementBudget,
                  "Closure of named partial transformations; images are 1-based, 0 undefined.")
      .def("__len__", &FiniteSemigroup::size)
      .def_property_readonly("degree", &FiniteSemigroup::degree)
      .def_property_readonly("generator_names",
                             [](FiniteSemigroup const& S) {
                               std::vector<std::string> names;
                               for (auto const& g : S.generators()) names.push_back(g.name);
                               return names;
                             })
      .def("generator", &FiniteSemigroup::generator, py::arg("x"))
      .def("mul", &FiniteSemigroup::mul, py::arg("s"), py::arg("t"))
      .def("word", &FiniteSemigroup::word, py::arg("s"))
      .def("table", &FiniteSemigroup::table)
      .def("identity", &FiniteSemigroup::identity)
      .def("zero", &FiniteSemigroup::zero)
      .def("transformation",
           [](FiniteSemigroup const& S, Index s) { return S.transformation(s).images(); },
           py::arg("s"))
      .def("is_aperiodic", [](FiniteSemigroup const& S) { return is_aperiodic(S); })
      .def("to_text", &semigroup_to_string)
      .def("__repr__",
           [](FiniteSemigroup const& S) { return "<Semigroup of order " + std::to_string(S.size()) + ">"; });

  m.def("green", [](FiniteSemigroup const& S) {
    auto const G = green(S);
    py::dict d;
    d["r_classes"] = G.r_classes;
    d["l_classes"] = G.l_classes;
    d["h_classes"] = G.h_classes;
    d["j_classes"] = G.j_classes;
    d["j_regular"] = G.j_regular;
    d["idempotents"] = G.idempotents;
    return d;
  });

  m.def("classify", [](FiniteSemigroup const& S) {
    auto const C = classify(S);
    py::dict d;
    d["zero"]                      = C.zero;
    d["zero_minimal"]              = C.zero_minimal;
    d["right_mapping"]             = C.right_mapping;
    d["left_mapping"]              = C.left_mapping;
    d["generalized_group_mapping"] = C.generalized_group_mapping;
    d["group_mapping"]             = C.group_mapping;
    d["distinguished"]             = C.distinguished;
    return d;
  });

  m.def(
      "rlm",
      [](FiniteSemigroup const& S, std::optional<Index> j) {
        auto const G = green(S);
        auto       Q = rlm_quotient(S, G, pick_jclass(S, G, j));
        return py::make_tuple(std::move(Q.semigroup), Q.morphism);
      },
      py::arg("S"), py::arg("jclass") = py::none(),
      "RLM quotient on a J-class (default: the distinguished one) and the projection.");

  m.def(
      "gm",
      [](FiniteSemigroup const& S, std::optional<Index> j) {
        auto const G = green(S);
        auto       Q = gm_quotient(S, G, pick_jclass(S, G, j));
        return py::make_tuple(std::move(Q.semigroup), Q.morphism);
      },
      py::arg("S"), py::arg("jclass") = py::none());

  m.def(
      "rees",
      [](FiniteSemigroup const& S, std::optional<Index> j) {
        auto const  P = present(S, pick_jclass(S, green(S), j));
        auto const& R = P.rees;
        py::dict    d;
        d["idempotent"]  = R.idempotent;
        d["group_table"] = R.group.group.table();
        d["group"]       = R.group.members;
        d["p"]           = R.p;
        d["q"]           = R.q;
        py::list C;
        for (auto const& row : R.C) C.append(indices(row));
        d["C"] = C;
        py::dict coord;
        for (Index s = 0; s < S.size(); ++s) {
          if (R.coord[s].a != kNone) coord[py::int_(s)] = py::make_tuple(R.coord[s].a, R.coord[s].g, R.coord[s].b);
        }
        d["coordinates"] = coord;
        return d;
      },
      py::arg("S"), py::arg("jclass") = py::none());

  m.def(
      "enumerate_spc",
      [](std::size_t n, std::string const& group) {
        std::vector<std::string> out;
        for (auto const& x : enumerate_spc(n, group_by_name(group))) out.push_back(to_string(x));
        return out;
      },
      py::arg("n"), py::arg("group") = "trivial");

  m.def(
      "spc_meet",
      [](std::string const& x, std::string const& y, std::size_t n, std::string const& group) {
        auto const G = group_by_name(group);
        return to_string(meet(parse_spc(x, n, G), parse_spc(y, n, G), G));
      },
      py::arg("x"), py::arg("y"), py::arg("n"), py::arg("group") = "trivial");

  m.def(
      "spc_join",
      [](std::string const& x, std::string const& y, std::size_t n,
         std::string const& group) -> std::optional<std::string> {
        auto const G = group_by_name(group);
        auto const z = join(RhodesElement(parse_spc(x, n, G)), RhodesElement(parse_spc(y, n, G)), G);
        if (!z) return std::nullopt;
        return to_string(*z);
      },
      py::arg("x"), py::arg("y"), py::arg("n"), py::arg("group") = "trivial",
      "Join in the Rhodes lattice; None stands for the adjoined top.");

  m.def(
      "trivial_flow",
      [](FiniteSemigroup const& S, std::optional<Index> j) {
        return flow_to_string(trivial_flow(present(S, pick_jclass(S, green(S), j))));
      },
      py::arg("S"), py::arg("jclass") = py::none());

  m.def(
      "verify_flow",
      [](FiniteSemigroup const& S, std::string const& flow, std::optional<Index> j) {
        auto const P = present(S, pick_jclass(S, green(S), j));
        auto const r = verify_flow(P, parse_flow(flow, P));
        py::dict   d;
        d["ok"]        = r.ok;
        d["condition"] = r.condition;
        d["state"]     = maybe(r.state);
        d["letter"]    = maybe(r.letter);
        d["detail"]    = r.detail;
        return d;
      },
      py::arg("S"), py::arg("flow"), py::arg("jclass") = py::none());

  m.def(
      "flow_search",
      [](FiniteSemigroup const& S, std::size_t max_states, std::size_t nodes,
         std::optional<Index> j) -> std::optional<std::string> {
        auto const r = flow_search(present(S, pick_jclass(S, green(S), j)), max_states, nodes);
        if (r.status == SearchStatus::unknown) throw ResourceError("flow search node budget exhausted");
        if (!r.flow) return std::nullopt;
        return flow_to_string(*r.flow);
      },
      py::arg("S"), py::arg("max_states") = 1, py::arg("nodes") = 1000000,
      py::arg("jclass") = py::none(),
      "A flow with an aperiodic automaton, or None when none exists within max_states.");

  m.def(
      "divides",
      [](FiniteSemigroup const& S, FiniteSemigroup const& T,
         std::optional<std::vector<Index>> lifts, std::size_t budget) -> std::optional<std::vector<Index>> {
        auto const r = check_division(S, T, lifts, budget);
        if (r.status == DivisionStatus::unknown) throw ResourceError("division search budget exhausted");
        if (!r.witness) return std::nullopt;
        return r.witness->lifts;
      },
      py::arg("S"), py::arg("T"), py::arg("lifts") = py::none(),
      py::arg("budget") = kDefaultDivisionBudget,
      "Lifts of S's generators witnessing S < T, or None.");

  m.def(
      "estimate",
      [](FiniteSemigroup const& S, std::size_t states, std::size_t elements, std::size_t nodes) {
        auto const I = estimate(S, make_budget(states, elements, nodes));
        return py::make_tuple(I.lower, I.upper, I.certificate.dump());
      },
      py::arg("S"), py::arg("states") = 1, py::arg("elements") = kDefaultElementBudget,
      py::arg("nodes") = 1000000,
      "(lower, upper or None, certificate as JSON text).");

  m.def(
      "replay",
      [](std::string const& certificate, std::size_t budget) {
        auto const r = replay_certificate(Json::parse(certificate), budget);
        return py::make_tuple(r.ok, r.message);
      },
      py::arg("certificate"), py::arg("budget") = kDefaultElementBudget);

  m.def("certificate_tree",
        [](std::string const& certificate) { return certificate_tree(Json::parse(certificate)); });

  m.def(
      "small_monoid",
      [](std::size_t n, std::string const& group, std::size_t rank) {
        return small_monoid(n, group_by_name(group), rank).semigroup;
      },
      py::arg("n"), py::arg("group") = "trivial", py::arg("rank") = 1);

  m.def(
      "lift_census",
      [](std::size_t n, std::string const& group) {
        auto const S = small_monoid(n, group_by_name(group));
        auto const T = lift_TS(S);
        auto const c = analyze_lift(S, T);
        py::dict   d;
        d["order"]        = T.semigroup.size();
        d["num_jclasses"] = c.num_jclasses;
        d["sizes"]        = py::make_tuple(c.size_j0, c.size_j1, c.size_j2);
        d["h_order"]      = c.h_order;
        d["j1_brandt"]    = c.j1_brandt;
        d["h_iso"]        = c.h_iso;
        d["kills_j0"]     = c.kills_j0;
        return d;
      },
      py::arg("n"), py::arg("group") = "trivial");

  m.def(
      "run_corpus",
      [](std::string const& dir) {
        auto const r = run_corpus(dir);
        return py::make_tuple(r.text, r.mismatches);
      },
      py::arg("dir"));
}
