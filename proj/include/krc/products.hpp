#ifndef KRC_PRODUCTS_HPP_
#define KRC_PRODUCTS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krc/core.hpp"

namespace krc {

  inline constexpr std::size_t kDefaultCarrierBudget  = 1000000;
  inline constexpr std::size_t kDefaultDivisionBudget = 1000000;

  // An element (f, t) of a wreath product (B,S) wr (Q,T): f is a function
  // Q -> S stored as element indices of S, t an element index of T.
  //
  // Partial actions are handled by normalising f to S's element 0 on every
  // point q where qt is undefined; such values never influence the action.
  struct WreathElement {
    std::vector<Index> f;
    Index              t = 0;

    bool operator==(WreathElement const&) const = default;
    auto operator<=>(WreathElement const&) const = default;
  };

  struct WreathElementHash {
    std::size_t operator()(WreathElement const& w) const noexcept {
      return VectorHash{}(w.f) * 31 + w.t;
    }
  };

  // The wreath product (B,S) wr (Q,T) of two transformation semigroups.
  // Points of B x Q are numbered (q - 1) * |B| + b.
  class Wreath {
   public:
    Wreath(FiniteSemigroup left, FiniteSemigroup right);

    FiniteSemigroup const& left() const noexcept {
      return _left;
    }
    FiniteSemigroup const& right() const noexcept {
      return _right;
    }

    std::size_t degree() const noexcept {
      return _left.degree() * _right.degree();
    }

    Point point(Point b, Point q) const noexcept {
      return (q - 1) * static_cast<Point>(_left.degree()) + b;
    }

    std::pair<Point, Point> coordinates(Point p) const noexcept;

    WreathElement normalize(WreathElement w) const;
    WreathElement mul(WreathElement const& x, WreathElement const& y) const;

    // (b, q)(f, t) = (b(qf), qt), with the undefined point absorbing.
    std::pair<Point, Point> act(Point b, Point q, WreathElement const& w) const;

    PartialTransformation action(WreathElement const& w) const;

    // |S|^|Q| * |T|, saturating at SIZE_MAX.
    std::size_t carrier_bound() const noexcept;

    // Every normalised element. Throws ResourceError when carrier_bound()
    // exceeds budget or the normalised carrier exceeds the table limit.
    std::vector<WreathElement> carrier(std::size_t budget = kDefaultCarrierBudget) const;

    // The abstract semigroup of all normalised elements.
    Closure<WreathElement> full(std::size_t budget = kDefaultCarrierBudget) const;

    // The subsemigroup generated by the given elements.
    Closure<WreathElement> generated(std::vector<std::string> const&   names,
                                     std::vector<WreathElement> const& gens,
                                     std::size_t budget = kDefaultElementBudget) const;

    // The transformation semigroup on B x Q generated by the actions of gens.
    FiniteSemigroup
    transformation_semigroup(std::vector<std::string> const&   names,
                             std::vector<WreathElement> const& gens,
                             std::size_t budget = kDefaultElementBudget) const;

   private:
    FiniteSemigroup _left;
    FiniteSemigroup _right;
  };

  // Direct product S x T as an abstract semigroup; (s, t) has index
  // s * |T| + t.
  FiniteSemigroup direct_product(FiniteSemigroup const& S, FiniteSemigroup const& T);

  // Semidirect product S x| T for a left action of T on S given by
  // action[t][s] = ts. Each t must act by an endomorphism and the map must be
  // an action; otherwise InputError. (s, t) has index s * |T| + t.
  FiniteSemigroup semidirect(FiniteSemigroup const&                 S,
                             FiniteSemigroup const&                 T,
                             std::vector<std::vector<Index>> const& action);

  // Checks associativity on every triple when |S| <= 64 and on a fixed
  // pseudo-random sample of triples otherwise.
  bool spot_check_associative(FiniteSemigroup const& S, std::size_t samples = 20000);

  ////////////////////////////////////////////////////////////////////////
  // Division
  ////////////////////////////////////////////////////////////////////////

  // Certificate that S divides T: the relation generated by the pairs
  // (lifts[x], x) is a function from the subsemigroup U of T generated by the
  // lifts onto S.
  struct DivisionWitness {
    std::vector<Index> lifts;    // per generator of S, an element of T
    std::vector<Index> domain;   // U, sorted
    std::vector<Index> images;   // images[i] = image of domain[i] in S
  };

  enum class DivisionStatus { found, none, unknown };

  struct DivisionResult {
    DivisionStatus                 status = DivisionStatus::unknown;
    std::optional<DivisionWitness> witness;
    std::size_t                    nodes = 0;  // search nodes visited
    std::string                    report;
  };

  // Builds the generated relation for fixed lifts; returns nullopt when it is
  // not a function.
  std::optional<DivisionWitness> division_from_lifts(FiniteSemigroup const&    S,
                                                     FiniteSemigroup const&    T,
                                                     std::vector<Index> const& lifts);

  // Independent replay of a witness: lifts sit over the generators, U is
  // closed in T, the map is a morphism, and it is onto S.
  bool verify_division(FiniteSemigroup const& S,
                       FiniteSemigroup const& T,
                       DivisionWitness const& w);

  // With lifts: checks them. Without: searches lift tuples
  // lexicographically, pruning as soon as a prefix of the lifts generates a
  // non-functional relation. Budget exhaustion yields unknown, never none.
  DivisionResult check_division(FiniteSemigroup const&                   S,
                                FiniteSemigroup const&                   T,
                                std::optional<std::vector<Index>> const& lifts
                                = std::nullopt,
                                std::size_t budget = kDefaultDivisionBudget);

  ////////////////////////////////////////////////////////////////////////
  // Product of wreath products
  ////////////////////////////////////////////////////////////////////////

  struct ProductOfWreathsReport {
    std::size_t elements_checked = 0;
    std::size_t points_checked   = 0;
    std::size_t products_checked = 0;
    bool        injective        = true;
    bool        action_preserved = true;
    bool        morphism         = true;

    bool ok() const noexcept {
      return injective && action_preserved && morphism;
    }
  };

  // Checks that ((f,t),(f',t')) -> (F,(t,t')) with (p,p')F = (pf, p'f')
  // embeds (Q,S) wr (P,T) x (Q',S') wr (P',T') into
  // ((Q,S) x (Q',S')) wr ((P,T) x (P',T')): injective on the product
  // transformation semigroup (pairs compared by action), compatible with the
  // coordinate permutation (q,p,q',p') -> (q,q',p,p') on every point, and
  // multiplicative. Uses every normalised element of both factors when they
  // are small, otherwise the subsemigroups generated by their natural
  // generators.
  ProductOfWreathsReport embed_product_of_wreaths(FiniteSemigroup const& S,
                                                  FiniteSemigroup const& S2,
                                                  FiniteSemigroup const& T,
                                                  FiniteSemigroup const& T2,
                                                  std::size_t sample_limit = 400);

}  // namespace krc

#endif  // KRC_PRODUCTS_HPP_
