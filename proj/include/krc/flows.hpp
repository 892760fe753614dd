#ifndef KRC_FLOWS_HPP_
#define KRC_FLOWS_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "krc/core.hpp"
#include "krc/products.hpp"
#include "krc/semilocal.hpp"
#include "krc/spc.hpp"

namespace krc {

  // A deterministic partial automaton over the generator names of a
  // semigroup. States are 0..num_states-1; delta[q][x] is kNone when the
  // transition is missing.
  struct Automaton {
    std::vector<std::string>        letters;
    std::vector<std::vector<Index>> delta;

    std::size_t num_states() const noexcept {
      return delta.size();
    }
    bool is_total() const;
  };

  Automaton make_automaton(std::vector<std::string>        letters,
                           std::vector<std::vector<Index>> delta);

  FiniteSemigroup transition_semigroup(Automaton const& A,
                                       std::size_t      budget = kDefaultElementBudget);

  struct Flow {
    Automaton        automaton;
    std::vector<SPC> xi;  // per state; labels need not be canonical
  };

  struct FlowReport {
    bool        ok = true;
    std::string condition;  // "F1" .. "F5", or "input"
    Index       state  = kNone;
    Index       letter = kNone;
    std::string detail;
  };

  // Checks F1-F5 at every defined transition, stopping at the first
  // failure. The automaton's letters must be P's generator names in order.
  FlowReport verify_flow(GroupMappingPresentation const& P, Flow const& F);

  // Checks F1-F5 for a single transition q -x-> qx.
  FlowReport check_transition(GroupMappingPresentation const& P,
                              SPC const&                      from,
                              SPC const&                      to,
                              std::size_t                     x);

  ////////////////////////////////////////////////////////////////////////
  // Presentation Lemma construction
  ////////////////////////////////////////////////////////////////////////

  struct PresentationWitness {
    std::size_t b_bar = 0;
    // perm[q][x][j] = jx, empty when qx is undefined.
    std::vector<std::vector<std::vector<Index>>> perm;
    // gtilde[q][x][j], empty when qx is undefined.
    std::vector<std::vector<std::vector<Index>>> gtilde;
    // Action of each generator on Q~ = G x [b_bar] x Q; the point (g, j, q)
    // is (q * b_bar + j) * |G| + g + 1.
    std::vector<PartialTransformation> lifted;
    // Q-bar: pairs (point of Q~, b) with b = kNone for the 0 coordinate.
    std::vector<std::pair<Point, Index>> qbar;
    // rho(qbar[i]) as (g, b), or (kNone, kNone) for 0.
    std::vector<std::pair<Index, Index>> rho;
    // S divides the semigroup generated on the disjoint union Q~ + B.
    FiniteSemigroup product;
    DivisionResult  division;
    std::size_t     morphism_checks = 0;
  };

  Point qtilde_point(std::size_t g, std::size_t j, std::size_t q, std::size_t b_bar,
                     std::size_t order);

  // Builds the decomposition from a verified flow. Also requires the labels
  // to cover B and W_q x to be empty whenever qx is missing; throws
  // InputError otherwise and VerificationError if a check fails.
  PresentationWitness presentation_construct(GroupMappingPresentation const& P,
                                             Flow const&                     F,
                                             std::size_t budget = kDefaultElementBudget);

  ////////////////////////////////////////////////////////////////////////
  // Search
  ////////////////////////////////////////////////////////////////////////

  enum class SearchStatus { found, exhausted, unknown };

  struct FlowSearchResult {
    SearchStatus        status = SearchStatus::unknown;
    std::optional<Flow> flow;
    std::size_t         automata_tried = 0;
    std::size_t         nodes          = 0;
    std::string         report;
  };

  // Accepts the transition semigroup of a candidate automaton.
  using CapPredicate = std::function<bool(FiniteSemigroup const&)>;

  // Total automata with at most max_states states in order of size then
  // lexicographic transition table; labellings by backtracking over
  // enumerate_spc with every transition checked as soon as both ends are
  // labelled, and coverage of B required. exhausted means every candidate
  // within max_states failed; unknown means the node budget ran out.
  FlowSearchResult flow_search(GroupMappingPresentation const& P,
                               std::size_t                     max_states,
                               CapPredicate const&             cap,
                               std::size_t                     node_budget = 1000000);

  // cap 0: aperiodic transition semigroups.
  FlowSearchResult flow_search(GroupMappingPresentation const& P,
                               std::size_t                     max_states,
                               std::size_t                     node_budget = 1000000);

  // The one-state flow labelled by all of B in singleton blocks.
  Flow trivial_flow(GroupMappingPresentation const& P);

  ////////////////////////////////////////////////////////////////////////
  // Text
  ////////////////////////////////////////////////////////////////////////

  // states: m
  // trans: q x q'      (1-based states, x a letter name)
  std::string automaton_to_string(Automaton const& A);
  Automaton   parse_automaton(std::string const& text, std::vector<std::string> const& letters);

  // The automaton, a line "xi:", then one SPC per state.
  std::string flow_to_string(Flow const& F);
  Flow        parse_flow(std::string const& text, GroupMappingPresentation const& P);

  std::vector<std::string> letters_of(FiniteSemigroup const& S);

}  // namespace krc

#endif  // KRC_FLOWS_HPP_
