#include "krc/core.hpp"

#include <algorithm>
#include <numeric>
#include <stack>

namespace krc {

  ////////////////////////////////////////////////////////////////////////
  // PartialTransformation
  ////////////////////////////////////////////////////////////////////////

  PartialTransformation::PartialTransformation(std::vector<Point> images)
      : _images(std::move(images)) {
    for (auto q : _images) {
      if (q > _images.size()) {
        throw InputError("image " + std::to_string(q) + " out of range for degree "
                         + std::to_string(_images.size()));
      }
    }
  }

  PartialTransformation PartialTransformation::identity(std::size_t degree) {
    std::vector<Point> im(degree);
    std::iota(im.begin(), im.end(), Point(1));
    return PartialTransformation(std::move(im));
  }

  std::size_t PartialTransformation::rank() const noexcept {
    std::vector<bool> seen(_images.size() + 1, false);
    std::size_t       r = 0;
    for (auto q : _images) {
      if (q != kUndefined && !seen[q]) {
        seen[q] = true;
        ++r;
      }
    }
    return r;
  }

  bool PartialTransformation::is_total() const noexcept {
    return std::none_of(
        _images.begin(), _images.end(), [](Point q) { return q == kUndefined; });
  }

  std::strong_ordering
  PartialTransformation::operator<=>(PartialTransformation const& that) const {
    if (auto c = degree() <=> that.degree(); c != 0) {
      return c;
    }
    auto key = [n = degree()](Point q) -> std::size_t {
      return q == kUndefined ? n + 1 : q;
    };
    for (std::size_t i = 0; i < _images.size(); ++i) {
      if (auto c = key(_images[i]) <=> key(that._images[i]); c != 0) {
        return c;
      }
    }
    return std::strong_ordering::equal;
  }

  PartialTransformation compose(PartialTransformation const& f,
                                PartialTransformation const& g) {
    if (f.degree() != g.degree()) {
      throw InputError("cannot compose transformations of degree "
                       + std::to_string(f.degree()) + " and "
                       + std::to_string(g.degree()));
    }
    std::vector<Point> im(f.degree());
    for (std::size_t i = 0; i < im.size(); ++i) {
      im[i] = g(f.images()[i]);
    }
    return PartialTransformation(std::move(im));
  }

  ////////////////////////////////////////////////////////////////////////
  // FiniteSemigroup
  ////////////////////////////////////////////////////////////////////////

  FiniteSemigroup
  FiniteSemigroup::from_cayley(std::vector<Generator>             gens,
                               std::vector<Index>                 right,
                               std::vector<Index>                 left,
                               std::vector<std::vector<Index>>    words,
                               std::vector<PartialTransformation> maps) {
    FiniteSemigroup S;
    S._gens  = std::move(gens);
    S._right = std::move(right);
    S._left  = std::move(left);
    S._words = std::move(words);
    S._maps  = std::move(maps);
    if (S._right.size() != S._words.size() * S._gens.size()
        || S._left.size() != S._right.size()) {
      throw InputError("Cayley tables have the wrong shape");
    }
    if (!S._maps.empty()) {
      if (S._maps.size() != S._words.size()) {
        throw InputError("transformation list has the wrong length");
      }
      for (Index s = 0; s < S._maps.size(); ++s) {
        S._lookup.emplace(S._maps[s].images(), s);
      }
    }
    S.build_table();
    return S;
  }

  void FiniteSemigroup::build_table() {
    _table.clear();
    std::size_t const n = size();
    if (n > kTableLimit || n == 0) {
      return;
    }
    // t = parent(t) * last letter; fill columns in order of word length.
    std::vector<Index> parent(n, kNone);
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index(0));
    std::stable_sort(order.begin(), order.end(), [this](Index a, Index b) {
      return _words[a].size() < _words[b].size();
    });
    for (Index t = 0; t < n; ++t) {
      auto const& w = _words[t];
      if (w.size() > 1) {
        parent[t] = evaluate(std::span<Index const>(w.data(), w.size() - 1));
      }
    }
    _table.assign(n * n, kNone);
    for (Index s = 0; s < n; ++s) {
      for (Index t : order) {
        auto const& w = _words[t];
        Index const base = w.size() == 1 ? s : _table[s * n + parent[t]];
        _table[s * n + t] = right(base, w.back());
      }
    }
  }

  FiniteSemigroup
  FiniteSemigroup::from_table(std::vector<std::vector<Index>> const& table,
                              std::vector<Generator>                 gens) {
    std::size_t const n = table.size();
    if (n == 0) {
      throw InputError("empty multiplication table");
    }
    for (auto const& row : table) {
      if (row.size() != n) {
        throw InputError("multiplication table is not square");
      }
      for (auto v : row) {
        if (v >= n) {
          throw InputError("multiplication table entry out of range");
        }
      }
    }
    auto generated_by = [&](std::vector<Index> const& g) {
      std::vector<bool>  seen(n, false);
      std::vector<Index> queue;
      for (auto x : g) {
        if (!seen[x]) {
          seen[x] = true;
          queue.push_back(x);
        }
      }
      for (std::size_t i = 0; i < queue.size(); ++i) {
        for (auto x : g) {
          Index p = table[queue[i]][x];
          if (!seen[p]) {
            seen[p] = true;
            queue.push_back(p);
          }
        }
      }
      return seen;
    };
    if (gens.empty()) {
      std::vector<Index> chosen;
      std::vector<bool>  seen(n, false);
      for (Index s = 0; s < n; ++s) {
        if (!seen[s]) {
          chosen.push_back(s);
          seen = generated_by(chosen);
        }
      }
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        gens.push_back({"g" + std::to_string(i), chosen[i]});
      }
    }
    std::vector<Index> gen_elts;
    for (auto const& g : gens) {
      if (g.element >= n) {
        throw InputError("generator index out of range");
      }
      gen_elts.push_back(g.element);
    }
    std::size_t const k = gens.size();
    // Words by breadth-first search from the generators.
    std::vector<std::vector<Index>> words(n);
    std::vector<bool>               seen(n, false);
    std::vector<Index>              queue;
    for (std::size_t x = 0; x < k; ++x) {
      if (!seen[gen_elts[x]]) {
        seen[gen_elts[x]]  = true;
        words[gen_elts[x]] = {static_cast<Index>(x)};
        queue.push_back(gen_elts[x]);
      }
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (std::size_t x = 0; x < k; ++x) {
        Index p = table[queue[i]][gen_elts[x]];
        if (!seen[p]) {
          seen[p]  = true;
          words[p] = words[queue[i]];
          words[p].push_back(static_cast<Index>(x));
          queue.push_back(p);
        }
      }
    }
    if (queue.size() != n) {
      throw InputError("the given generators do not generate the table");
    }
    std::vector<Index> right(n * k), left(n * k);
    for (Index s = 0; s < n; ++s) {
      for (std::size_t x = 0; x < k; ++x) {
        right[s * k + x] = table[s][gen_elts[x]];
        left[s * k + x]  = table[gen_elts[x]][s];
      }
    }
    FiniteSemigroup S;
    S._gens  = std::move(gens);
    S._right = std::move(right);
    S._left  = std::move(left);
    S._words = std::move(words);
    if (n <= kTableLimit) {
      S._table.resize(n * n);
      for (Index s = 0; s < n; ++s) {
        std::copy(table[s].begin(), table[s].end(), S._table.begin() + s * n);
      }
    }
    return S;
  }

  std::optional<std::size_t>
  FiniteSemigroup::generator_index(std::string const& name) const {
    for (std::size_t x = 0; x < _gens.size(); ++x) {
      if (_gens[x].name == name) {
        return x;
      }
    }
    return std::nullopt;
  }

  Index FiniteSemigroup::mul(Index s, Index t) const {
    if (!_table.empty()) {
      return _table[s * size() + t];
    }
    for (auto x : _words[t]) {
      s = right(s, x);
    }
    return s;
  }

  Index FiniteSemigroup::product(std::span<Index const> elements) const {
    if (elements.empty()) {
      throw InputError("empty product in a semigroup");
    }
    Index r = elements.front();
    for (std::size_t i = 1; i < elements.size(); ++i) {
      r = mul(r, elements[i]);
    }
    return r;
  }

  Index FiniteSemigroup::evaluate(std::span<Index const> word) const {
    if (word.empty()) {
      throw InputError("empty word in a semigroup");
    }
    Index r = generator(word.front());
    for (std::size_t i = 1; i < word.size(); ++i) {
      r = right(r, word[i]);
    }
    return r;
  }

  std::optional<Index> FiniteSemigroup::identity() const {
    for (Index e = 0; e < size(); ++e) {
      bool ok = true;
      for (std::size_t x = 0; x < _gens.size() && ok; ++x) {
        ok = right(e, x) == generator(x) && left(e, x) == generator(x);
      }
      if (ok) {
        return e;
      }
    }
    return std::nullopt;
  }

  std::optional<Index> FiniteSemigroup::zero() const {
    for (Index z = 0; z < size(); ++z) {
      bool ok = true;
      for (std::size_t x = 0; x < _gens.size() && ok; ++x) {
        ok = right(z, x) == z && left(z, x) == z;
      }
      if (ok) {
        return z;
      }
    }
    return std::nullopt;
  }

  std::vector<std::vector<Index>> FiniteSemigroup::table() const {
    std::vector<std::vector<Index>> t(size(), std::vector<Index>(size()));
    for (Index s = 0; s < size(); ++s) {
      for (Index u = 0; u < size(); ++u) {
        t[s][u] = mul(s, u);
      }
    }
    return t;
  }

  std::optional<Index> FiniteSemigroup::find(PartialTransformation const& f) const {
    auto it = _lookup.find(f.images());
    if (it == _lookup.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  FiniteSemigroup
  FiniteSemigroup::renumbered(std::vector<Index> const& new_index) const {
    std::size_t const n = size(), k = _gens.size();
    if (new_index.size() != n) {
      throw InputError("renumbering has the wrong length");
    }
    std::vector<Index>                 right(n * k), left(n * k);
    std::vector<std::vector<Index>>    words(n);
    std::vector<PartialTransformation> maps(_maps.empty() ? 0 : n);
    for (Index s = 0; s < n; ++s) {
      Index const t = new_index[s];
      for (std::size_t x = 0; x < k; ++x) {
        right[t * k + x] = new_index[_right[s * k + x]];
        left[t * k + x]  = new_index[_left[s * k + x]];
      }
      words[t] = _words[s];
      if (!_maps.empty()) {
        maps[t] = _maps[s];
      }
    }
    auto gens = _gens;
    for (auto& g : gens) {
      g.element = new_index[g.element];
    }
    return from_cayley(
        std::move(gens), std::move(right), std::move(left), std::move(words), std::move(maps));
  }

  std::vector<PartialTransformation>
  FiniteSemigroup::right_regular_representation() const {
    std::size_t const n      = size();
    bool const        monoid = identity().has_value();
    std::size_t const deg    = monoid ? n : n + 1;
    std::vector<PartialTransformation> result;
    result.reserve(n);
    for (Index s = 0; s < n; ++s) {
      std::vector<Point> im(deg);
      for (Index u = 0; u < n; ++u) {
        im[u] = mul(u, s) + 1;
      }
      if (!monoid) {
        im[n] = s + 1;
      }
      result.emplace_back(std::move(im));
    }
    return result;
  }

  FiniteSemigroup
  generate(std::vector<std::pair<std::string, PartialTransformation>> const& gens,
           std::size_t                                                       budget) {
    if (gens.empty()) {
      throw InputError("generator list is empty");
    }
    std::size_t const              deg = gens.front().second.degree();
    std::vector<std::string>       names;
    std::vector<std::vector<Point>> images;
    for (auto const& [name, f] : gens) {
      if (f.degree() != deg) {
        throw InputError("generators have different degrees");
      }
      names.push_back(name);
      images.push_back(f.images());
    }
    auto mul = [](std::vector<Point> const& f, std::vector<Point> const& g) {
      std::vector<Point> r(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) {
        r[i] = f[i] == kUndefined ? kUndefined : g[f[i] - 1];
      }
      return r;
    };
    auto closure = close(names, images, mul, budget, VectorHash{});

    std::vector<PartialTransformation> maps;
    maps.reserve(closure.elements.size());
    for (auto& im : closure.elements) {
      maps.emplace_back(std::move(im));
    }
    std::vector<Index> order(maps.size());
    std::iota(order.begin(), order.end(), Index(0));
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
      return maps[a] < maps[b];
    });
    std::vector<Index> new_index(maps.size());
    for (Index i = 0; i < order.size(); ++i) {
      new_index[order[i]] = i;
    }
    auto const& S = closure.semigroup;
    std::vector<Index> right(S.size() * S.num_generators());
    std::vector<Index> left(right.size());
    for (Index s = 0; s < S.size(); ++s) {
      for (std::size_t x = 0; x < S.num_generators(); ++x) {
        right[s * S.num_generators() + x] = S.right(s, x);
        left[s * S.num_generators() + x]  = S.left(s, x);
      }
    }
    std::vector<std::vector<Index>> words(S.size());
    for (Index s = 0; s < S.size(); ++s) {
      words[s] = S.word(s);
    }
    auto withmaps = FiniteSemigroup::from_cayley(
        S.generators(), std::move(right), std::move(left), std::move(words), std::move(maps));
    return withmaps.renumbered(new_index);
  }

  ////////////////////////////////////////////////////////////////////////
  // Green's relations
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Iterative Tarjan. Returns component ids renumbered by least member.
    template <typename Neighbours>
    std::vector<Index> scc(std::size_t n, Neighbours&& neighbours) {
      std::vector<Index> index(n, kNone), low(n, 0), comp(n, kNone);
      std::vector<bool>  on_stack(n, false);
      std::vector<Index> stack;
      Index              counter = 0, ncomp = 0;
      struct Frame {
        Index              v;
        std::vector<Index> out;
        std::size_t        next;
      };
      for (Index root = 0; root < n; ++root) {
        if (index[root] != kNone) {
          continue;
        }
        std::vector<Frame> call;
        call.push_back({root, neighbours(root), 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
          auto& f = call.back();
          if (f.next < f.out.size()) {
            Index w = f.out[f.next++];
            if (index[w] == kNone) {
              index[w] = low[w] = counter++;
              stack.push_back(w);
              on_stack[w] = true;
              call.push_back({w, neighbours(w), 0});
            } else if (on_stack[w]) {
              low[f.v] = std::min(low[f.v], index[w]);
            }
          } else {
            Index v = f.v;
            if (low[v] == index[v]) {
              Index w;
              do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w]     = ncomp;
              } while (w != v);
              ++ncomp;
            }
            call.pop_back();
            if (!call.empty()) {
              low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
          }
        }
      }
      // Renumber by least member.
      std::vector<Index> relabel(ncomp, kNone);
      Index              next = 0;
      for (Index v = 0; v < n; ++v) {
        if (relabel[comp[v]] == kNone) {
          relabel[comp[v]] = next++;
        }
        comp[v] = relabel[comp[v]];
      }
      return comp;
    }

    std::vector<std::vector<Index>> members(std::vector<Index> const& of) {
      Index nclasses = 0;
      for (auto c : of) {
        nclasses = std::max(nclasses, c + 1);
      }
      std::vector<std::vector<Index>> result(nclasses);
      for (Index s = 0; s < of.size(); ++s) {
        result[of[s]].push_back(s);
      }
      return result;
    }

    // below[c][d] iff c is reachable from d along edges of the element graph.
    template <typename Neighbours>
    std::vector<std::vector<bool>> class_order(std::vector<Index> const& of,
                                               std::size_t               nclasses,
                                               Neighbours&&              neighbours) {
      std::vector<std::vector<Index>> succ(nclasses);
      for (Index s = 0; s < of.size(); ++s) {
        for (auto t : neighbours(s)) {
          if (of[t] != of[s]) {
            succ[of[s]].push_back(of[t]);
          }
        }
      }
      for (auto& v : succ) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
      }
      std::vector<std::vector<bool>> below(nclasses, std::vector<bool>(nclasses, false));
      for (Index d = 0; d < nclasses; ++d) {
        std::vector<Index> stack = {d};
        below[d][d]              = true;
        while (!stack.empty()) {
          Index c = stack.back();
          stack.pop_back();
          for (auto e : succ[c]) {
            if (!below[e][d]) {
              below[e][d] = true;
              stack.push_back(e);
            }
          }
        }
      }
      return below;
    }

  }  // namespace

  std::vector<Index> GreenStructure::r_classes_in(Index j) const {
    std::vector<Index> result;
    for (Index r = 0; r < r_classes.size(); ++r) {
      if (j_of[r_classes[r].front()] == j) {
        result.push_back(r);
      }
    }
    return result;
  }

  std::vector<Index> GreenStructure::l_classes_in(Index j) const {
    std::vector<Index> result;
    for (Index l = 0; l < l_classes.size(); ++l) {
      if (j_of[l_classes[l].front()] == j) {
        result.push_back(l);
      }
    }
    return result;
  }

  Index GreenStructure::least_idempotent(Index j) const {
    for (auto e : idempotents) {
      if (j_of[e] == j) {
        return e;
      }
    }
    return kNone;
  }

  GreenStructure green(FiniteSemigroup const& S) {
    std::size_t const n = S.size();
    std::size_t const k = S.num_generators();
    auto right_nbrs = [&](Index s) {
      std::vector<Index> out(k);
      for (std::size_t x = 0; x < k; ++x) {
        out[x] = S.right(s, x);
      }
      return out;
    };
    auto left_nbrs = [&](Index s) {
      std::vector<Index> out(k);
      for (std::size_t x = 0; x < k; ++x) {
        out[x] = S.left(s, x);
      }
      return out;
    };
    auto both_nbrs = [&](Index s) {
      auto out = right_nbrs(s);
      auto l   = left_nbrs(s);
      out.insert(out.end(), l.begin(), l.end());
      return out;
    };

    GreenStructure g;
    g.r_of      = scc(n, right_nbrs);
    g.l_of      = scc(n, left_nbrs);
    g.j_of      = scc(n, both_nbrs);
    g.r_classes = members(g.r_of);
    g.l_classes = members(g.l_of);
    g.j_classes = members(g.j_of);

    std::unordered_map<std::uint64_t, Index> hkey;
    g.h_of.resize(n);
    for (Index s = 0; s < n; ++s) {
      std::uint64_t key = (std::uint64_t(g.r_of[s]) << 32) | g.l_of[s];
      auto [it, inserted] = hkey.emplace(key, static_cast<Index>(hkey.size()));
      g.h_of[s]           = it->second;
    }
    g.h_classes = members(g.h_of);

    for (Index s = 0; s < n; ++s) {
      if (S.is_idempotent(s)) {
        g.idempotents.push_back(s);
      }
    }
    g.j_regular.assign(g.j_classes.size(), false);
    for (auto e : g.idempotents) {
      g.j_regular[g.j_of[e]] = true;
    }
    g.r_below = class_order(g.r_of, g.r_classes.size(), right_nbrs);
    g.l_below = class_order(g.l_of, g.l_classes.size(), left_nbrs);
    g.j_below = class_order(g.j_of, g.j_classes.size(), both_nbrs);
    return g;
  }

  ////////////////////////////////////////////////////////////////////////
  // Groups
  ////////////////////////////////////////////////////////////////////////

  FiniteGroup FiniteGroup::from_table(std::vector<std::vector<Index>> table) {
    std::size_t const k = table.size();
    if (k == 0) {
      throw InputError("a group must be nonempty");
    }
    for (auto const& row : table) {
      if (row.size() != k) {
        throw InputError("group table is not square");
      }
      for (auto v : row) {
        if (v >= k) {
          throw InputError("group table entry out of range");
        }
      }
    }
    FiniteGroup G;
    G._order = k;
    G._table.assign(k * k, 0);
    for (Index a = 0; a < k; ++a) {
      for (Index b = 0; b < k; ++b) {
        G._table[a * k + b] = table[a][b];
      }
    }
    for (Index a = 0; a < k; ++a) {
      for (Index b = 0; b < k; ++b) {
        for (Index c = 0; c < k; ++c) {
          if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c))) {
            throw InputError("group table is not associative");
          }
        }
      }
    }
    G._identity = kNone;
    for (Index e = 0; e < k && G._identity == kNone; ++e) {
      bool ok = true;
      for (Index a = 0; a < k && ok; ++a) {
        ok = G.mul(e, a) == a && G.mul(a, e) == a;
      }
      if (ok) {
        G._identity = e;
      }
    }
    if (G._identity == kNone) {
      throw InputError("group table has no identity");
    }
    G._inverse.assign(k, kNone);
    for (Index a = 0; a < k; ++a) {
      for (Index b = 0; b < k; ++b) {
        if (G.mul(a, b) == G._identity && G.mul(b, a) == G._identity) {
          G._inverse[a] = b;
          break;
        }
      }
      if (G._inverse[a] == kNone) {
        throw InputError("group table element " + std::to_string(a)
                         + " has no inverse");
      }
    }
    return G;
  }

  FiniteGroup FiniteGroup::trivial() {
    return FiniteGroup();
  }

  FiniteGroup FiniteGroup::cyclic(std::size_t k) {
    if (k == 0) {
      throw InputError("cyclic group of order 0");
    }
    std::vector<std::vector<Index>> t(k, std::vector<Index>(k));
    for (Index a = 0; a < k; ++a) {
      for (Index b = 0; b < k; ++b) {
        t[a][b] = (a + b) % k;
      }
    }
    return from_table(std::move(t));
  }

  FiniteGroup FiniteGroup::symmetric(std::size_t k) {
    if (k == 0) {
      throw InputError("symmetric group on 0 points");
    }
    std::vector<std::vector<Index>> perms;
    std::vector<Index>              p(k);
    std::iota(p.begin(), p.end(), Index(0));
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::unordered_map<std::vector<Index>, Index, VectorHash> idx;
    for (Index i = 0; i < perms.size(); ++i) {
      idx.emplace(perms[i], i);
    }
    std::vector<std::vector<Index>> t(perms.size(), std::vector<Index>(perms.size()));
    for (Index a = 0; a < perms.size(); ++a) {
      for (Index b = 0; b < perms.size(); ++b) {
        std::vector<Index> c(k);
        for (std::size_t i = 0; i < k; ++i) {
          c[i] = perms[b][perms[a][i]];
        }
        t[a][b] = idx.at(c);
      }
    }
    return from_table(std::move(t));
  }

  FiniteGroup FiniteGroup::direct_product(FiniteGroup const& G, FiniteGroup const& H) {
    std::size_t const               m = G.order(), n = H.order();
    std::vector<std::vector<Index>> t(m * n, std::vector<Index>(m * n));
    for (Index a = 0; a < m * n; ++a) {
      for (Index b = 0; b < m * n; ++b) {
        t[a][b] = G.mul(a / n, b / n) * n + H.mul(a % n, b % n);
      }
    }
    return from_table(std::move(t));
  }

  std::vector<std::vector<Index>> FiniteGroup::table() const {
    std::vector<std::vector<Index>> t(order(), std::vector<Index>(order()));
    for (Index a = 0; a < order(); ++a) {
      for (Index b = 0; b < order(); ++b) {
        t[a][b] = mul(a, b);
      }
    }
    return t;
  }

  bool is_isomorphism(FiniteGroup const&        G,
                      FiniteGroup const&        H,
                      std::vector<Index> const& phi) {
    if (G.order() != H.order() || phi.size() != G.order()) {
      return false;
    }
    std::vector<bool> hit(H.order(), false);
    for (auto v : phi) {
      if (v >= H.order() || hit[v]) {
        return false;
      }
      hit[v] = true;
    }
    for (Index a = 0; a < G.order(); ++a) {
      for (Index b = 0; b < G.order(); ++b) {
        if (phi[G.mul(a, b)] != H.mul(phi[a], phi[b])) {
          return false;
        }
      }
    }
    return true;
  }

  Subgroup maximal_subgroup(FiniteSemigroup const& S,
                            GreenStructure const&  green,
                            Index                  e) {
    if (e >= S.size() || !S.is_idempotent(e)) {
      throw InputError("maximal_subgroup requires an idempotent");
    }
    Subgroup H;
    H.members.push_back(e);
    for (auto s : green.h_classes[green.h_of[e]]) {
      if (s != e) {
        H.members.push_back(s);
      }
    }
    std::unordered_map<Index, Index> pos;
    for (Index i = 0; i < H.members.size(); ++i) {
      pos.emplace(H.members[i], i);
    }
    std::vector<std::vector<Index>> t(H.members.size(),
                                      std::vector<Index>(H.members.size()));
    for (Index a = 0; a < H.members.size(); ++a) {
      for (Index b = 0; b < H.members.size(); ++b) {
        auto it = pos.find(S.mul(H.members[a], H.members[b]));
        if (it == pos.end()) {
          throw VerificationError("H-class of an idempotent is not closed");
        }
        t[a][b] = it->second;
      }
    }
    try {
      H.group = FiniteGroup::from_table(std::move(t));
    } catch (InputError const& err) {
      throw VerificationError(std::string("H-class of an idempotent is not a group: ")
                              + err.what());
    }
    if (H.group.identity() != 0) {
      throw VerificationError("idempotent is not the identity of its H-class");
    }
    return H;
  }

  Subgroup maximal_subgroup(FiniteSemigroup const& S, Index e) {
    return maximal_subgroup(S, green(S), e);
  }

  Index power(FiniteSemigroup const& S, Index s, std::size_t k) {
    if (k == 0) {
      throw InputError("power exponent must be positive");
    }
    Index result = kNone;
    Index base   = s;
    while (k > 0) {
      if (k & 1) {
        result = result == kNone ? base : S.mul(result, base);
      }
      k >>= 1;
      if (k > 0) {
        base = S.mul(base, base);
      }
    }
    return result;
  }

  bool is_aperiodic(FiniteSemigroup const& S, GreenStructure const& green) {
    std::size_t const n         = S.size();
    bool              by_powers = true;
    for (Index s = 0; s < n && by_powers; ++s) {
      Index p   = power(S, s, n);
      by_powers = S.mul(p, s) == p;
    }
    bool by_groups = true;
    for (auto e : green.idempotents) {
      if (green.h_classes[green.h_of[e]].size() != 1) {
        by_groups = false;
        break;
      }
    }
    if (by_powers != by_groups) {
      throw VerificationError("aperiodicity criteria disagree");
    }
    return by_powers;
  }

  bool is_aperiodic(FiniteSemigroup const& S) {
    return is_aperiodic(S, green(S));
  }

}  // namespace krc
