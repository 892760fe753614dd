#ifndef KRC_COMPLEXITY_HPP_
#define KRC_COMPLEXITY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "krc/core.hpp"
#include "krc/products.hpp"
#include "krc/semilocal.hpp"

namespace krc {

  using Json = nlohmann::ordered_json;

  bool complexity_zero(FiniteSemigroup const& S);

  ////////////////////////////////////////////////////////////////////////
  // GM reduction
  ////////////////////////////////////////////////////////////////////////

  // Regular J-class whose maximal subgroups are nontrivial.
  bool has_nontrivial_group(GreenStructure const& green, Index j);

  struct GmImage {
    Index      jclass = kNone;
    GmQuotient quotient;
    bool       injective = false;  // S itself is GM on this class
  };

  struct GmReduction {
    std::vector<GmImage> images;  // in J-class order
    // s -> (image in each GM_J(S)) is injective on every maximal subgroup.
    bool gamma_injective = true;
  };

  GmReduction gm_reduction(FiniteSemigroup const& S, GreenStructure const& green);

  ////////////////////////////////////////////////////////////////////////
  // Relational morphisms
  ////////////////////////////////////////////////////////////////////////

  // A subsemigroup R of S x T projecting onto S.
  struct RelationalMorphism {
    FiniteSemigroup                      source;
    FiniteSemigroup                      target;
    std::vector<std::pair<Index, Index>> graph;  // sorted (s, t)

    bool               relates(Index s, Index t) const;
    std::vector<Index> preimage(Index t) const;
    std::vector<Index> image(Index s) const;
  };

  // R generated by (x, t) for t in related[x], one list per generator of S.
  RelationalMorphism relational_morphism(FiniteSemigroup                        S,
                                         FiniteSemigroup                        T,
                                         std::vector<std::vector<Index>> const& related);

  // The graph of a morphism given on every element; checked.
  RelationalMorphism graph_of(FiniteSemigroup S, FiniteSemigroup T, std::vector<Index> const& phi);

  // S -> T -> U: pairs (s, u) with some (s, t), (t, u). The middle
  // semigroups must have the same order.
  RelationalMorphism compose(RelationalMorphism const& phi, RelationalMorphism const& psi);

  // For every idempotent t of T, the preimage of t is an aperiodic semigroup.
  bool is_aperiodic_relational(RelationalMorphism const& rho);

  ////////////////////////////////////////////////////////////////////////
  // Derived semigroup
  ////////////////////////////////////////////////////////////////////////

  // The arrow (from, (s, t)) of the derived category, from an object of T^1
  // (|T| stands for the adjoined identity) to the object from * t.
  struct Arrow {
    Index from = kNone;
    Index s    = kNone;
    Index t    = kNone;
    Index to   = kNone;
  };

  struct DerivedSemigroup {
    FiniteSemigroup    semigroup;
    std::vector<Arrow> arrows;  // a representative per element except the zero
    Index              zero       = kNone;
    bool               identified = true;
    // raw_class[q * |R| + i]: class of the arrow (q, graph[i]).
    std::vector<Index> raw_class;
  };

  // Consolidation of the derived category. With identify set, coterminal
  // arrows (t,(s,t')) and (t,(u,v)) are equal when s1 s = s1 u for every s1
  // related to t, where only s1 = 1 is related to the adjoined identity.
  DerivedSemigroup derived_semigroup(RelationalMorphism const& rho,
                                     bool                      identify = true,
                                     std::size_t               budget   = kDefaultElementBudget);

  // S < D wr (T^1, T) by x -> (q -> [(q, (x, t_x))], t_x) for the least t_x
  // related to x; the division is checked by check_division.
  DivisionResult derived_division(RelationalMorphism const& rho,
                                  DerivedSemigroup const&   D,
                                  std::size_t               budget = kDefaultElementBudget);

  // Searches D(phi psi) < D(phi) wr D(psi) over the full wreath carrier.
  // unknown when the carrier or the search exceeds its budget.
  DivisionResult derived_composition_division(RelationalMorphism const& phi,
                                              RelationalMorphism const& psi,
                                              std::size_t carrier_budget = 4096,
                                              std::size_t search_budget  = kDefaultDivisionBudget);

  ////////////////////////////////////////////////////////////////////////
  // Rhodes expansion
  ////////////////////////////////////////////////////////////////////////

  struct RhodesExpansion {
    FiniteSemigroup                 semigroup;
    std::vector<std::vector<Index>> chains;  // strictly L-decreasing, bottom first; top last
    std::vector<Index>              eta;     // chain -> top
  };

  // Generated by the one-entry chains of T's generators. The product puts
  // the left chain, right-multiplied by the right chain's top, above the
  // right chain and keeps the entry nearest the top of every L-equivalent
  // run. Throws ResourceError past budget chains.
  RhodesExpansion rhodes_expansion(FiniteSemigroup const& T,
                                   std::size_t            budget = kDefaultElementBudget);

  std::vector<Index> chain_product(FiniteSemigroup const&    T,
                                   GreenStructure const&     green,
                                   std::vector<Index> const& x,
                                   std::vector<Index> const& y);

  // rho followed by eta^-1.
  RelationalMorphism lift_to_expansion(RelationalMorphism const& rho, RhodesExpansion const& E);

  ////////////////////////////////////////////////////////////////////////
  // Estimation
  ////////////////////////////////////////////////////////////////////////

  struct EstimateBudget {
    std::size_t states   = 1;  // flow search automaton size
    std::size_t elements = kDefaultElementBudget;
    std::size_t nodes    = 1000000;  // flow search nodes
  };

  struct UpperBound {
    std::size_t value = 0;
    Json        witness;
  };

  struct ComplexityInterval {
    std::size_t                lower = 0;
    std::optional<std::size_t> upper;
    Json                       certificate;  // the node proving both bounds
  };

  // S < (G,G) wr (B, RLM_J(S)) gives c(S) <= c(RLM) + 1.
  std::optional<UpperBound> pure_upper(GroupMappingPresentation const& P,
                                       ComplexityInterval const&       rlm,
                                       EstimateBudget const&           budget = {});

  // A flow whose automaton has complexity at most n - 1, n = max(1, upper of
  // RLM), gives c(S) <= n.
  std::optional<UpperBound> flow_upper(GroupMappingPresentation const& P,
                                       ComplexityInterval const&       rlm,
                                       EstimateBudget const&           budget = {});

  ComplexityInterval estimate(FiniteSemigroup const& S, EstimateBudget const& budget = {});

  struct ReplayReport {
    bool        ok    = true;
    std::size_t nodes = 0;
    std::string message;
  };

  // Re-derives every bound of a certificate from its own contents.
  ReplayReport replay_certificate(Json const& certificate,
                                  std::size_t budget = kDefaultElementBudget);

  // Indented one-line-per-node rendering.
  std::string certificate_tree(Json const& certificate);

  std::string interval_to_string(std::size_t lower, std::optional<std::size_t> upper);

}  // namespace krc

#endif  // KRC_COMPLEXITY_HPP_
