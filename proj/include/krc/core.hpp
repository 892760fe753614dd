#ifndef KRC_CORE_HPP_
#define KRC_CORE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "krc/errors.hpp"

namespace krc {

  using Index = std::uint32_t;
  // Points of a partial transformation are 1..n; 0 stands for the undefined
  // point (the adjoined sink).
  using Point = std::uint32_t;

  inline constexpr Index kNone      = std::numeric_limits<Index>::max();
  inline constexpr Point kUndefined = 0;

  inline constexpr std::size_t kDefaultElementBudget = 100000;

  struct VectorHash {
    std::size_t operator()(std::vector<std::uint32_t> const& v) const noexcept {
      std::size_t h = v.size();
      for (auto x : v) {
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return h;
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // PartialTransformation
  ////////////////////////////////////////////////////////////////////////

  class PartialTransformation {
   public:
    PartialTransformation() = default;
    // images[i] is the image of point i+1, or kUndefined.
    explicit PartialTransformation(std::vector<Point> images);

    static PartialTransformation identity(std::size_t degree);

    std::size_t degree() const noexcept {
      return _images.size();
    }

    // Image of q under this map; q = kUndefined is absorbed.
    Point operator()(Point q) const noexcept {
      return q == kUndefined ? kUndefined : _images[q - 1];
    }

    std::vector<Point> const& images() const noexcept {
      return _images;
    }

    std::size_t rank() const noexcept;
    bool        is_total() const noexcept;

    bool operator==(PartialTransformation const&) const = default;

    // Canonical order: lexicographic on image tuples with the undefined
    // point ordered after every defined one.
    std::strong_ordering operator<=>(PartialTransformation const& that) const;

   private:
    std::vector<Point> _images;
  };

  // q(compose(f, g)) = (qf)g; f is applied first.
  PartialTransformation compose(PartialTransformation const& f,
                                PartialTransformation const& g);

  ////////////////////////////////////////////////////////////////////////
  // FiniteSemigroup
  ////////////////////////////////////////////////////////////////////////

  struct Generator {
    std::string name;
    Index       element;
  };

  // An enumerated finite semigroup together with a named generating list,
  // right and left Cayley graphs, and a reduced word for every element.
  //
  // Products are served from a full multiplication table when the semigroup
  // is small enough, and otherwise by tracing the word of the right factor
  // through the right Cayley graph.
  class FiniteSemigroup {
   public:
    static constexpr std::size_t kTableLimit = 4096;

    FiniteSemigroup() = default;

    // Low level constructor used by the enumeration routines. right and left
    // are flat n * k tables with right[s * k + x] = s * gen_x and
    // left[s * k + x] = gen_x * s.
    static FiniteSemigroup from_cayley(std::vector<Generator>         gens,
                                       std::vector<Index>             right,
                                       std::vector<Index>             left,
                                       std::vector<std::vector<Index>> words,
                                       std::vector<PartialTransformation> maps
                                       = {});

    // Builds a semigroup from a full multiplication table. gens are indices
    // into the table; when empty, a generating list is chosen greedily in
    // element order and named g0, g1, ...
    static FiniteSemigroup from_table(std::vector<std::vector<Index>> const& table,
                                      std::vector<Generator>                 gens
                                      = {});

    std::size_t size() const noexcept {
      return _words.size();
    }

    std::size_t num_generators() const noexcept {
      return _gens.size();
    }

    std::vector<Generator> const& generators() const noexcept {
      return _gens;
    }

    Index generator(std::size_t x) const {
      return _gens[x].element;
    }

    std::optional<std::size_t> generator_index(std::string const& name) const;

    Index right(Index s, std::size_t x) const {
      return _right[s * _gens.size() + x];
    }

    Index left(Index s, std::size_t x) const {
      return _left[s * _gens.size() + x];
    }

    Index mul(Index s, Index t) const;

    Index product(std::span<Index const> elements) const;

    // Evaluates a word over generator indices.
    Index evaluate(std::span<Index const> word) const;

    std::vector<Index> const& word(Index s) const {
      return _words[s];
    }

    bool is_idempotent(Index s) const {
      return mul(s, s) == s;
    }

    // Index of the identity element, if S is a monoid.
    std::optional<Index> identity() const;

    // Index of the zero element, if S has one.
    std::optional<Index> zero() const;

    std::vector<std::vector<Index>> table() const;

    bool has_transformations() const noexcept {
      return !_maps.empty();
    }

    std::size_t degree() const noexcept {
      return _maps.empty() ? 0 : _maps.front().degree();
    }

    PartialTransformation const& transformation(Index s) const {
      return _maps.at(s);
    }

    std::optional<Index> find(PartialTransformation const& f) const;

    // Returns a copy with element s renumbered to new_index[s].
    FiniteSemigroup renumbered(std::vector<Index> const& new_index) const;

    // The right regular representation of S on S^1 (points 1..|S| are the
    // elements, and |S| + 1 is the adjoined identity when S is not a
    // monoid). Always faithful.
    std::vector<PartialTransformation> right_regular_representation() const;

   private:
    void build_table();

    std::vector<Generator>             _gens;
    std::vector<Index>                 _right;
    std::vector<Index>                 _left;
    std::vector<std::vector<Index>>    _words;
    std::vector<Index>                 _table;  // empty when size > kTableLimit
    std::vector<PartialTransformation> _maps;
    std::unordered_map<std::vector<Point>, Index, VectorHash> _lookup;
  };

  // Result of closing a generating list under an arbitrary associative
  // product. elements[s] is the payload of element s.
  template <typename T>
  struct Closure {
    FiniteSemigroup semigroup;
    std::vector<T>  elements;
  };

  // Breadth-first closure of gens under right multiplication by gens.
  // Elements are numbered in discovery order. Throws ResourceError when more
  // than budget elements appear.
  template <typename T, typename Mul, typename Hash = std::hash<T>>
  Closure<T> close(std::vector<std::string> const& names,
                   std::vector<T> const&           gens,
                   Mul&&                           mul,
                   std::size_t                     budget = kDefaultElementBudget,
                   Hash                            hash   = Hash{}) {
    if (gens.empty()) {
      throw InputError("cannot enumerate a semigroup from an empty generator list");
    }
    if (names.size() != gens.size()) {
      throw InputError("generator names and generators differ in length");
    }
    std::size_t const                  k = gens.size();
    std::vector<T>                     elts;
    std::unordered_map<T, Index, Hash> index(16, hash);
    std::vector<std::vector<Index>>    words;
    std::vector<Generator>             out_gens;

    auto add = [&](T const& t, std::vector<Index> w) -> Index {
      auto [it, inserted] = index.emplace(t, static_cast<Index>(elts.size()));
      if (inserted) {
        if (elts.size() >= budget) {
          throw ResourceError("closure exceeded element budget of "
                              + std::to_string(budget));
        }
        elts.push_back(t);
        words.push_back(std::move(w));
      }
      return it->second;
    };

    for (std::size_t x = 0; x < k; ++x) {
      out_gens.push_back({names[x], add(gens[x], {static_cast<Index>(x)})});
    }
    std::vector<Index> right;
    for (std::size_t i = 0; i < elts.size(); ++i) {
      for (std::size_t x = 0; x < k; ++x) {
        T    p = mul(elts[i], gens[x]);
        auto w = words[i];
        w.push_back(static_cast<Index>(x));
        right.push_back(add(p, std::move(w)));
      }
    }
    std::vector<Index> left(elts.size() * k);
    for (std::size_t i = 0; i < elts.size(); ++i) {
      for (std::size_t x = 0; x < k; ++x) {
        auto it = index.find(mul(gens[x], elts[i]));
        if (it == index.end()) {
          throw VerificationError("left product escaped the closure");
        }
        left[i * k + x] = it->second;
      }
    }
    Closure<T> result;
    result.semigroup = FiniteSemigroup::from_cayley(
        std::move(out_gens), std::move(right), std::move(left), std::move(words));
    result.elements = std::move(elts);
    return result;
  }

  // The transformation semigroup generated by named partial
  // transformations, with elements in canonical order.
  FiniteSemigroup
  generate(std::vector<std::pair<std::string, PartialTransformation>> const& gens,
           std::size_t budget = kDefaultElementBudget);

  ////////////////////////////////////////////////////////////////////////
  // Green's relations
  ////////////////////////////////////////////////////////////////////////

  // Green's relations of S computed over S^1. Classes of every kind are
  // numbered in increasing order of their least element.
  struct GreenStructure {
    std::vector<Index> r_of, l_of, h_of, j_of;  // element -> class id

    std::vector<std::vector<Index>> r_classes;
    std::vector<std::vector<Index>> l_classes;
    std::vector<std::vector<Index>> h_classes;
    std::vector<std::vector<Index>> j_classes;

    std::vector<bool>  j_regular;
    std::vector<Index> idempotents;

    // Class-level reachability: *_below[c][d] iff class c <= class d.
    std::vector<std::vector<bool>> r_below;
    std::vector<std::vector<bool>> l_below;
    std::vector<std::vector<bool>> j_below;

    bool leq_R(Index s, Index t) const {
      return r_below[r_of[s]][r_of[t]];
    }
    bool leq_L(Index s, Index t) const {
      return l_below[l_of[s]][l_of[t]];
    }
    bool leq_J(Index s, Index t) const {
      return j_below[j_of[s]][j_of[t]];
    }

    // R-class and L-class ids inside J-class j, in class order.
    std::vector<Index> r_classes_in(Index j) const;
    std::vector<Index> l_classes_in(Index j) const;

    // Least idempotent of J-class j, or kNone.
    Index least_idempotent(Index j) const;
  };

  GreenStructure green(FiniteSemigroup const& S);

  ////////////////////////////////////////////////////////////////////////
  // Groups
  ////////////////////////////////////////////////////////////////////////

  class FiniteGroup {
   public:
    // The trivial group.
    FiniteGroup() = default;

    // Validates the group axioms; throws InputError otherwise.
    static FiniteGroup from_table(std::vector<std::vector<Index>> table);

    static FiniteGroup trivial();
    static FiniteGroup cyclic(std::size_t k);
    // Sym_k acting on {1..k}; element order is lexicographic on images.
    static FiniteGroup symmetric(std::size_t k);
    static FiniteGroup direct_product(FiniteGroup const& G, FiniteGroup const& H);

    std::size_t order() const noexcept {
      return _order;
    }
    Index identity() const noexcept {
      return _identity;
    }
    Index mul(Index a, Index b) const {
      return _table[a * order() + b];
    }
    Index inverse(Index a) const {
      return _inverse[a];
    }
    bool is_trivial() const noexcept {
      return order() == 1;
    }

    std::vector<std::vector<Index>> table() const;

    bool operator==(FiniteGroup const&) const = default;

   private:
    std::size_t        _order   = 1;
    std::vector<Index> _table   = {0};
    std::vector<Index> _inverse = {0};
    Index              _identity = 0;
  };

  // True iff phi (a map of group elements) is a bijective homomorphism.
  bool is_isomorphism(FiniteGroup const&        G,
                      FiniteGroup const&        H,
                      std::vector<Index> const& phi);

  // A maximal subgroup H_e of S. members[g] is the semigroup element playing
  // the role of group element g; members[0] == e.
  struct Subgroup {
    FiniteGroup        group;
    std::vector<Index> members;
  };

  Subgroup maximal_subgroup(FiniteSemigroup const& S,
                            GreenStructure const&  green,
                            Index                  e);

  Subgroup maximal_subgroup(FiniteSemigroup const& S, Index e);

  // Both aperiodicity criteria: s^n = s^(n+1) with n = |S| for every s, and
  // every H-class containing an idempotent is a singleton. Throws
  // VerificationError if they disagree.
  bool is_aperiodic(FiniteSemigroup const& S);
  bool is_aperiodic(FiniteSemigroup const& S, GreenStructure const& green);

  // s^k computed by repeated multiplication in S.
  Index power(FiniteSemigroup const& S, Index s, std::size_t k);

}  // namespace krc

#endif  // KRC_CORE_HPP_
