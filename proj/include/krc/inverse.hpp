#ifndef KRC_INVERSE_HPP_
#define KRC_INVERSE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krc/core.hpp"
#include "krc/products.hpp"

namespace krc {

  // An n x n matrix over G + {0} with at most one nonzero entry per row and
  // column. Row i holds (col[i], entry[i]); col[i] == kNone for a zero row.
  struct PartialMonomialMatrix {
    std::vector<Index> col;
    std::vector<Index> entry;

    std::size_t size() const noexcept {
      return col.size();
    }
    std::size_t rank() const;

    bool operator==(PartialMonomialMatrix const&) const = default;
    auto operator<=>(PartialMonomialMatrix const&) const = default;
  };

  PartialMonomialMatrix make_monomial(std::vector<Index> col,
                                      std::vector<Index> entry,
                                      FiniteGroup const& G);

  PartialMonomialMatrix zero_matrix(std::size_t n);
  PartialMonomialMatrix identity_matrix(std::size_t n, FiniteGroup const& G);

  PartialMonomialMatrix monomial_mul(PartialMonomialMatrix const& M,
                                     PartialMonomialMatrix const& N,
                                     FiniteGroup const&           G);

  // Every nonzero entry replaced by the identity of the trivial group.
  PartialMonomialMatrix rlm_matrix(PartialMonomialMatrix const& M);

  // The action on G x [n]: (h, i) M = (h g, j) when row i holds (j, g); the
  // point (h, i) is i |G| + h + 1 with i 0-based.
  PartialTransformation as_transformation(PartialMonomialMatrix const& M,
                                          FiniteGroup const&           G);

  // The group G wr Sym_k of full-rank monomial k x k matrices, elements in
  // matrix order.
  struct MonomialGroup {
    FiniteGroup                        group;
    std::vector<PartialMonomialMatrix> elements;

    Index index(PartialMonomialMatrix const& M) const;
  };

  MonomialGroup monomial_group(std::size_t k, FiniteGroup const& G);

  // B_n(G): element 0 is the zero and (i, g, j) is 1 + (i |G| + g) n + j
  // (0-based i, j).
  struct BrandtSemigroup {
    std::size_t     n = 0;
    FiniteGroup     group;
    FiniteSemigroup semigroup;

    Index element(Index i, Index g, Index j) const {
      return static_cast<Index>(1 + (i * group.order() + g) * n + j);
    }
  };

  BrandtSemigroup brandt(std::size_t n, FiniteGroup const& G);

  // Unique inverses and commuting idempotents.
  bool is_inverse_semigroup(FiniteSemigroup const& S);

  ////////////////////////////////////////////////////////////////////////
  // Small monoids
  ////////////////////////////////////////////////////////////////////////

  // S_r: the units G wr Sym_n, the rank-r partial monomial matrices, and a
  // zero absorbing every product of rank below r.
  struct SmallMonoid {
    std::size_t     n = 0, r = 0;
    FiniteGroup     group;
    FiniteSemigroup semigroup;
    // matrices[s]; the zero is the zero matrix.
    std::vector<PartialMonomialMatrix> matrices;
    Index                              zero = kNone;
    std::size_t                        num_units = 0;
    std::size_t                        ideal_size = 0;  // rank-r elements plus zero
    // The constructed isomorphism of the 0-minimal ideal onto
    // B_{n choose r}(G wr Sym_r): ideal element -> Brandt element.
    BrandtSemigroup    brandt_target;
    std::vector<Index> ideal_elements;
    std::vector<Index> brandt_image;

    std::optional<Index> find(PartialMonomialMatrix const& M) const;
  };

  SmallMonoid small_monoid(std::size_t n, FiniteGroup const& G, std::size_t r = 1);

  ////////////////////////////////////////////////////////////////////////
  // The lift T(S)
  ////////////////////////////////////////////////////////////////////////

  // T(S) = {(s, tau) : tau a unit, tau restricted to dom(s) is s}.
  struct Lift {
    FiniteSemigroup                   semigroup;
    std::vector<std::pair<Index, Index>> pairs;  // (element of S, unit index)
    MonomialGroup                     units;
    std::vector<Index>                to_s;      // projection T(S) -> S
  };

  // Enumerates T(S), checks both projections are onto and that RLM of the
  // class above the minimal ideal equals RLM of S. Throws InputError unless
  // S contains the rank-one Brandt ideal.
  Lift lift_TS(SmallMonoid const& S);

  struct InverseDecomposition {
    // The image of T(S) in G wr Sym_n x RLM(S), with element i = (unit, RLM
    // element) pairs in table order.
    FiniteSemigroup                      product;
    std::vector<std::pair<Index, Index>> coordinates;
    DivisionResult                       division;  // S < product
    // The same decomposition through the one-state flow.
    DivisionResult flow_division;
    bool           flow_lifts_in_lift = false;
  };

  // S < G wr (B, Sym_B) x RLM(S) through (s, tau) -> (tau, RLM(s)), checked
  // to be well defined, multiplicative and onto; reproduced through the
  // one-state flow.
  InverseDecomposition inverse_decomposition(SmallMonoid const& S);

  struct LiftCensus {
    std::size_t num_jclasses = 0;
    // J-class ids of T in order: the minimal ideal, the Brandt class, the
    // units.
    Index       j0 = kNone, j1 = kNone, j2 = kNone;
    std::size_t size_j0 = 0, size_j1 = 0, size_j2 = 0;
    std::size_t h_order       = 0;  // maximal subgroup order in J1
    std::size_t j1_rows       = 0;  // |A| = |B| of J1
    bool        j0_group_iso  = false;
    bool        j2_group_iso  = false;
    bool        j1_brandt     = false;
    bool        h_iso         = false;  // H = G x (G wr Sym_{n-1})
    bool        kills_j0      = false;
  };

  LiftCensus analyze_lift(SmallMonoid const& S, Lift const& T);

}  // namespace krc

#endif  // KRC_INVERSE_HPP_
