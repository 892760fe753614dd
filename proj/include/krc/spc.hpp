#ifndef KRC_SPC_HPP_
#define KRC_SPC_HPP_

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krc/core.hpp"
#include "krc/semilocal.hpp"

namespace krc {

  // A triple (W, pi, [mu]) over a set B = {0, ..., n-1} and a group G.
  // block_of[b] numbers the block containing b (blocks numbered by least
  // member) and is kNone off W; mu[b] is a group element, kNone off W.
  //
  // Values built by make_spc keep the labels they were given; canonicalize
  // moves every block to the representative whose least member is labelled
  // by the identity. Equality on canonical values is equality of SPCs.
  struct SPC {
    std::vector<Index> block_of;
    std::vector<Index> mu;

    std::size_t degree() const noexcept {
      return block_of.size();
    }
    bool in_w(Index b) const {
      return block_of[b] != kNone;
    }
    std::size_t              num_blocks() const;
    std::vector<Index>       w() const;
    std::vector<std::vector<Index>> blocks() const;

    bool operator==(SPC const&) const = default;
    auto operator<=>(SPC const&) const = default;
  };

  // Validates blocks (nonempty, disjoint, inside B) and a label for every
  // point of W; labels off W are ignored.
  SPC make_spc(std::size_t                             n,
               std::vector<std::vector<Index>> const& blocks,
               std::vector<Index> const&              mu,
               FiniteGroup const&                     G);

  SPC empty_spc(std::size_t n);

  SPC canonicalize(SPC const& x, FiniteGroup const& G);

  // Left multiplies the labels of block i by g[i].
  SPC relabel(SPC const& x, std::vector<Index> const& g, FiniteGroup const& G);

  bool leq(SPC const& x, SPC const& y, FiniteGroup const& G);

  SPC meet(SPC const& x, SPC const& y, FiniteGroup const& G);

  // An element of the Rhodes lattice; nullopt is the adjoined top.
  using RhodesElement = std::optional<SPC>;

  bool          leq(RhodesElement const& x, RhodesElement const& y, FiniteGroup const& G);
  RhodesElement join(RhodesElement const& x, RhodesElement const& y, FiniteGroup const& G);

  // Every canonical SPC over n points, largest W first, then in the order
  // of SPC's comparison.
  std::vector<SPC> enumerate_spc(std::size_t n, FiniteGroup const& G);

  // mu^s on Ws from a partial labelling mu (kNone off its domain), or the
  // first pair b < b' with bs = b's that breaks the cross-section condition.
  struct MuAction {
    std::vector<Index>                 mu;
    std::optional<std::pair<Index, Index>> failure;

    bool ok() const noexcept {
      return !failure.has_value();
    }
  };

  MuAction mu_action(std::vector<Index> const& mu, ElementAction const& s, FiniteGroup const& G);

  // W={1,2}; blocks=[{1,2}:0,1 | {3}:0]  (points 1-based, group elements by
  // 0-based index).
  std::string to_string(SPC const& x);
  SPC         parse_spc(std::string const& text, std::size_t n, FiniteGroup const& G);

  // Group file: "order: k" followed by k rows of the multiplication table.
  std::string group_to_string(FiniteGroup const& G);
  FiniteGroup parse_group(std::string const& text);

}  // namespace krc

#endif  // KRC_SPC_HPP_
