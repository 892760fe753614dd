#ifndef KRC_SEMILOCAL_HPP_
#define KRC_SEMILOCAL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "krc/core.hpp"
#include "krc/products.hpp"

namespace krc {

  // A J-class of S with its R-classes (A) and L-classes (B), both as Green
  // class ids in canonical order.
  struct JClassRef {
    Index              id = kNone;
    std::vector<Index> r_classes;
    std::vector<Index> l_classes;
  };

  JClassRef jclass_ref(GreenStructure const& green, Index j);

  ////////////////////////////////////////////////////////////////////////
  // Classification
  ////////////////////////////////////////////////////////////////////////

  struct Classification {
    std::optional<Index> zero;
    // J-classes J such that J (plus the zero, if any) is a 0-minimal ideal.
    std::vector<Index> zero_minimal;
    bool               right_mapping = false;
    bool               left_mapping  = false;
    bool               generalized_group_mapping = false;
    bool               group_mapping             = false;
    // The J-class of the 0-minimal ideal acted on faithfully, when S is right
    // or left mapping.
    std::optional<Index> distinguished;
  };

  Classification classify(FiniteSemigroup const& S, GreenStructure const& green);
  Classification classify(FiniteSemigroup const& S);

  ////////////////////////////////////////////////////////////////////////
  // Quotients
  ////////////////////////////////////////////////////////////////////////

  // RLM_J(S): the image of S acting by partial maps on the L-classes of J.
  struct RlmQuotient {
    FiniteSemigroup    semigroup;   // transformations on 1..|B|
    std::vector<Index> morphism;    // S -> RLM_J(S)
    JClassRef          jclass;
    Index              image_jclass = kNone;  // J-class of RLM containing J's image
  };

  // The partial map b -> b.s on the L-classes of J (0-based class positions
  // in jclass.l_classes, kNone when undefined). Checks that every member of
  // b agrees, as Green's lemma guarantees.
  std::vector<Index> l_class_action(FiniteSemigroup const& S,
                                    GreenStructure const&  green,
                                    JClassRef const&       J,
                                    Index                  s);

  RlmQuotient rlm_quotient(FiniteSemigroup const& S, GreenStructure const& green, Index j);

  // GM_J(S): the quotient by s = t iff for all x, y in J, xsy in J exactly
  // when xty in J, and then xsy = xty.
  struct GmQuotient {
    FiniteSemigroup    semigroup;
    std::vector<Index> morphism;  // S -> GM_J(S)
    Index              image_jclass = kNone;
    // Set when J has only trivial subgroups; the image is then only
    // generalized group mapping.
    bool aperiodic_class = false;
  };

  GmQuotient gm_quotient(FiniteSemigroup const& S, GreenStructure const& green, Index j);

  ////////////////////////////////////////////////////////////////////////
  // Rees coordinates
  ////////////////////////////////////////////////////////////////////////

  struct ReesTriple {
    Index a = kNone, g = kNone, b = kNone;
    bool  operator==(ReesTriple const&) const = default;
  };

  // Coordinates J -> A x G x B for a regular J-class, with representatives
  // chosen as canonical-order least elements. C[b][a] is a group element or
  // kNone for the zero entry.
  struct ReesCoordinates {
    JClassRef                       jclass;
    Index                           idempotent = kNone;
    Subgroup                        group;
    std::vector<Index>              p;  // p[a] in R-class a and L_e
    std::vector<Index>              q;  // q[b] in R_e and L-class b
    std::vector<std::vector<Index>> C;
    std::vector<ReesTriple>         coord;  // per element of S; a = kNone off J
    // uncoord[(a * |G| + g) * |B| + b]
    std::vector<Index>              uncoord_table;

    std::size_t num_a() const noexcept {
      return p.size();
    }
    std::size_t num_b() const noexcept {
      return q.size();
    }
    Index uncoord(Index a, Index g, Index b) const {
      return uncoord_table[(a * group.group.order() + g) * num_b() + b];
    }
    // Position of R-class / L-class of the idempotent in A / B.
    Index a_of_idempotent() const noexcept {
      return coord[idempotent].a;
    }
    Index b_of_idempotent() const noexcept {
      return coord[idempotent].b;
    }
  };

  ReesCoordinates
  rees_coordinates(FiniteSemigroup const& S, GreenStructure const& green, Index j);

  ////////////////////////////////////////////////////////////////////////
  // Group mapping presentation
  ////////////////////////////////////////////////////////////////////////

  // The action of an element on B together with its group labels (b)s, as in
  // (a, g, b)s = (a, g (b)s, bs). Undefined entries are kNone.
  struct ElementAction {
    std::vector<Index> image;
    std::vector<Index> label;

    bool operator==(ElementAction const&) const = default;
  };

  ElementAction compose(ElementAction const& x, ElementAction const& y, FiniteGroup const& G);

  struct GroupMappingPresentation {
    FiniteSemigroup            semigroup;
    GreenStructure             green;
    Index                      jclass = kNone;
    ReesCoordinates            rees;
    std::vector<ElementAction> generator_actions;

    FiniteGroup const& group() const noexcept {
      return rees.group.group;
    }
    std::size_t num_b() const noexcept {
      return rees.num_b();
    }
    // Action of an arbitrary element, composed from generator actions along
    // its word.
    ElementAction action(Index s) const;
    // Same, read directly off the coordinates of q_b s.
    ElementAction direct_action(Index s) const;
  };

  // Builds the presentation for a regular J-class and checks the coordinate
  // formula against raw multiplication for every (a, g, b) and generator.
  GroupMappingPresentation present(FiniteSemigroup const& S, Index j);

  // For a group mapping S, the presentation on its distinguished J-class.
  // Throws InputError when S is not group mapping.
  GroupMappingPresentation present(FiniteSemigroup const& S);

  ////////////////////////////////////////////////////////////////////////
  // Actions on an R-class and the wreath embedding
  ////////////////////////////////////////////////////////////////////////

  // Restriction of the right multiplication action to an R-class R of the
  // distinguished J-class: points are R's members in order (1-based).
  struct RClassAction {
    Index                              r_class = kNone;
    std::vector<Index>                 points;
    std::vector<PartialTransformation> maps;  // per element of S
  };

  // Throws InputError unless S is right mapping and R lies in its
  // distinguished J-class; throws VerificationError if the action is not
  // faithful.
  RClassAction r_class_action(FiniteSemigroup const& S,
                              GreenStructure const&  green,
                              Index                  r_class);

  // A point of R on which s and t differ, if any.
  std::optional<Index> separating_point(RClassAction const& action, Index s, Index t);

  struct FaspEmbedding {
    Wreath                     wreath;  // (G, G) wr (B, RLM_J(S))
    std::vector<WreathElement> generators;
    std::vector<WreathElement> images;  // per element of S
  };

  // Realizes each generator x as (b -> (b)x, RLM(x)) and checks that the
  // induced map S -> (G,G) wr (B,RLM_J(S)) is injective and agrees with the
  // action of S on the R-class of the chosen idempotent.
  FaspEmbedding fasp_embedding(GroupMappingPresentation const& P);

  // The right regular representation of a group as a transformation
  // semigroup, with generators named g<i> for every element.
  FiniteSemigroup group_as_semigroup(FiniteGroup const& G);

}  // namespace krc

#endif  // KRC_SEMILOCAL_HPP_
