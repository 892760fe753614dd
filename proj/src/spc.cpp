#include "krc/spc.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace krc {

  std::size_t SPC::num_blocks() const {
    Index m = 0;
    for (auto b : block_of) {
      if (b != kNone) {
        m = std::max(m, b + 1);
      }
    }
    return m;
  }

  std::vector<Index> SPC::w() const {
    std::vector<Index> out;
    for (Index b = 0; b < degree(); ++b) {
      if (in_w(b)) {
        out.push_back(b);
      }
    }
    return out;
  }

  std::vector<std::vector<Index>> SPC::blocks() const {
    std::vector<std::vector<Index>> out(num_blocks());
    for (Index b = 0; b < degree(); ++b) {
      if (in_w(b)) {
        out[block_of[b]].push_back(b);
      }
    }
    return out;
  }

  namespace {

    // Renumbers blocks by least member.
    void number_blocks(std::vector<Index>& block_of) {
      std::map<Index, Index> renum;
      for (auto& v : block_of) {
        if (v != kNone) {
          auto it = renum.emplace(v, static_cast<Index>(renum.size())).first;
          v       = it->second;
        }
      }
    }

  }  // namespace

  SPC make_spc(std::size_t                            n,
               std::vector<std::vector<Index>> const& blocks,
               std::vector<Index> const&              mu,
               FiniteGroup const&                     G) {
    if (mu.size() != n) {
      throw InputError("SPC labelling has the wrong length");
    }
    SPC x{std::vector<Index>(n, kNone), std::vector<Index>(n, kNone)};
    for (Index i = 0; i < blocks.size(); ++i) {
      if (blocks[i].empty()) {
        throw InputError("SPC block is empty");
      }
      for (auto b : blocks[i]) {
        if (b >= n) {
          throw InputError("SPC point " + std::to_string(b + 1) + " out of range");
        }
        if (x.block_of[b] != kNone) {
          throw InputError("SPC blocks overlap at point " + std::to_string(b + 1));
        }
        if (mu[b] == kNone) {
          throw InputError("SPC labelling is partial on W at point "
                           + std::to_string(b + 1));
        }
        if (mu[b] >= G.order()) {
          throw InputError("SPC label out of range");
        }
        x.block_of[b] = i;
        x.mu[b]       = mu[b];
      }
    }
    number_blocks(x.block_of);
    return x;
  }

  SPC empty_spc(std::size_t n) {
    return {std::vector<Index>(n, kNone), std::vector<Index>(n, kNone)};
  }

  SPC canonicalize(SPC const& x, FiniteGroup const& G) {
    std::vector<Index> g(x.num_blocks(), kNone);
    for (Index b = 0; b < x.degree(); ++b) {
      if (x.in_w(b) && g[x.block_of[b]] == kNone) {
        g[x.block_of[b]] = G.inverse(x.mu[b]);
      }
    }
    return relabel(x, g, G);
  }

  SPC relabel(SPC const& x, std::vector<Index> const& g, FiniteGroup const& G) {
    SPC y = x;
    number_blocks(y.block_of);
    for (Index b = 0; b < y.degree(); ++b) {
      if (y.in_w(b)) {
        y.mu[b] = G.mul(g.at(y.block_of[b]), x.mu[b]);
      }
    }
    return y;
  }

  bool leq(SPC const& x, SPC const& y, FiniteGroup const& G) {
    if (x.degree() != y.degree()) {
      throw InputError("SPCs over different sets");
    }
    // Per block of x: the containing block of y and the constant mu_x mu_y^-1.
    std::vector<Index> target(x.num_blocks(), kNone), ratio(x.num_blocks(), kNone);
    for (Index b = 0; b < x.degree(); ++b) {
      if (!x.in_w(b)) {
        continue;
      }
      if (!y.in_w(b)) {
        return false;
      }
      Index const i = x.block_of[b];
      Index const r = G.mul(x.mu[b], G.inverse(y.mu[b]));
      if (target[i] == kNone) {
        target[i] = y.block_of[b];
        ratio[i]  = r;
      } else if (target[i] != y.block_of[b] || ratio[i] != r) {
        return false;
      }
    }
    return true;
  }

  SPC meet(SPC const& x, SPC const& y, FiniteGroup const& G) {
    if (x.degree() != y.degree()) {
      throw InputError("SPCs over different sets");
    }
    SPC                                         z = empty_spc(x.degree());
    std::map<std::array<Index, 3>, Index> key;
    for (Index b = 0; b < x.degree(); ++b) {
      if (!x.in_w(b) || !y.in_w(b)) {
        continue;
      }
      std::array<Index, 3> k{
          x.block_of[b], y.block_of[b], G.mul(x.mu[b], G.inverse(y.mu[b]))};
      auto it      = key.emplace(k, static_cast<Index>(key.size())).first;
      z.block_of[b] = it->second;
      z.mu[b]       = x.mu[b];
    }
    return canonicalize(z, G);
  }

  bool leq(RhodesElement const& x, RhodesElement const& y, FiniteGroup const& G) {
    if (!y) {
      return true;
    }
    if (!x) {
      return false;
    }
    return leq(*x, *y, G);
  }

  RhodesElement join(RhodesElement const& x, RhodesElement const& y, FiniteGroup const& G) {
    if (!x || !y) {
      return std::nullopt;
    }
    if (x->degree() != y->degree()) {
      throw InputError("SPCs over different sets");
    }
    // Nodes: blocks of x, then blocks of y. A point in both W's ties its two
    // blocks with offset c_y = c_x mu_x(b) mu_y(b)^-1, where the joined
    // labelling is c_block mu_source on each source block.
    std::size_t const nx = x->num_blocks(), ny = y->num_blocks(), n = x->degree();
    std::vector<std::vector<std::pair<Index, Index>>> adj(nx + ny);
    for (Index b = 0; b < n; ++b) {
      if (x->in_w(b) && y->in_w(b)) {
        Index const u = x->block_of[b], v = static_cast<Index>(nx) + y->block_of[b];
        Index const r = G.mul(x->mu[b], G.inverse(y->mu[b]));
        adj[u].emplace_back(v, r);
        adj[v].emplace_back(u, G.inverse(r));
      }
    }
    std::vector<Index> offset(nx + ny, kNone), comp(nx + ny, kNone);
    Index              ncomp = 0;
    for (Index s = 0; s < nx + ny; ++s) {
      if (comp[s] != kNone) {
        continue;
      }
      offset[s] = G.identity();
      comp[s]   = ncomp;
      std::vector<Index> stack{s};
      while (!stack.empty()) {
        Index u = stack.back();
        stack.pop_back();
        for (auto [v, r] : adj[u]) {
          Index const want = G.mul(offset[u], r);
          if (comp[v] == kNone) {
            comp[v]   = ncomp;
            offset[v] = want;
            stack.push_back(v);
          } else if (offset[v] != want) {
            return std::nullopt;
          }
        }
      }
      ++ncomp;
    }
    SPC z = empty_spc(n);
    for (Index b = 0; b < n; ++b) {
      if (x->in_w(b)) {
        z.block_of[b] = comp[x->block_of[b]];
        z.mu[b]       = G.mul(offset[x->block_of[b]], x->mu[b]);
      } else if (y->in_w(b)) {
        Index const v = static_cast<Index>(nx) + y->block_of[b];
        z.block_of[b] = comp[v];
        z.mu[b]       = G.mul(offset[v], y->mu[b]);
      }
    }
    return canonicalize(z, G);
  }

  std::vector<SPC> enumerate_spc(std::size_t n, FiniteGroup const& G) {
    if (n > 16) {
      throw ResourceError("SPC enumeration limited to 16 points");
    }
    std::vector<SPC> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
      std::vector<Index> w;
      for (Index b = 0; b < n; ++b) {
        if (mask >> b & 1) {
          w.push_back(b);
        }
      }
      // Restricted growth strings give the set partitions of w.
      std::vector<Index> rgs(w.size(), 0);
      while (true) {
        SPC base = empty_spc(n);
        for (std::size_t i = 0; i < w.size(); ++i) {
          base.block_of[w[i]] = rgs[i];
          base.mu[w[i]]       = G.identity();
        }
        // Labels of non-least block members range over G.
        std::vector<Index> free;
        std::vector<bool>  seen(w.size() + 1, false);
        for (std::size_t i = 0; i < w.size(); ++i) {
          if (seen[rgs[i]]) {
            free.push_back(w[i]);
          }
          seen[rgs[i]] = true;
        }
        std::vector<Index> lab(free.size(), 0);
        while (true) {
          SPC x = base;
          for (std::size_t i = 0; i < free.size(); ++i) {
            x.mu[free[i]] = lab[i];
          }
          out.push_back(std::move(x));
          std::size_t i = 0;
          for (; i < lab.size(); ++i) {
            if (++lab[i] < G.order()) {
              break;
            }
            lab[i] = 0;
          }
          if (i == lab.size()) {
            break;
          }
        }
        // next restricted growth string
        std::size_t i = w.size();
        bool        advanced = false;
        while (i-- > 1) {
          Index mx = *std::max_element(rgs.begin(), rgs.begin() + i);
          if (rgs[i] <= mx) {
            ++rgs[i];
            std::fill(rgs.begin() + i + 1, rgs.end(), 0);
            advanced = true;
            break;
          }
        }
        if (!advanced) {
          break;
        }
      }
    }
    std::stable_sort(out.begin(), out.end(), [](SPC const& a, SPC const& b) {
      auto wa = a.w().size(), wb = b.w().size();
      if (wa != wb) {
        return wa > wb;
      }
      return a < b;
    });
    return out;
  }

  MuAction mu_action(std::vector<Index> const& mu, ElementAction const& s, FiniteGroup const& G) {
    if (mu.size() != s.image.size()) {
      throw InputError("labelling and action differ in degree");
    }
    MuAction           r{std::vector<Index>(mu.size(), kNone), std::nullopt};
    std::vector<Index> source(mu.size(), kNone);
    for (Index b = 0; b < mu.size(); ++b) {
      if (mu[b] == kNone || s.image[b] == kNone) {
        continue;
      }
      Index const bs = s.image[b];
      Index const v  = G.mul(mu[b], s.label[b]);
      if (r.mu[bs] == kNone) {
        r.mu[bs]   = v;
        source[bs] = b;
      } else if (r.mu[bs] != v) {
        r.failure = std::pair{source[bs], b};
        return r;
      }
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text
  ////////////////////////////////////////////////////////////////////////

  std::string to_string(SPC const& x) {
    std::ostringstream out;
    out << "W={";
    auto w = x.w();
    for (std::size_t i = 0; i < w.size(); ++i) {
      out << (i ? "," : "") << w[i] + 1;
    }
    out << "}; blocks=[";
    auto bl = x.blocks();
    for (std::size_t i = 0; i < bl.size(); ++i) {
      out << (i ? " | " : "") << "{";
      for (std::size_t k = 0; k < bl[i].size(); ++k) {
        out << (k ? "," : "") << bl[i][k] + 1;
      }
      out << "}:";
      for (std::size_t k = 0; k < bl[i].size(); ++k) {
        out << (k ? "," : "") << x.mu[bl[i][k]];
      }
    }
    out << "]";
    return out.str();
  }

  namespace {

    class Cursor {
     public:
      explicit Cursor(std::string const& s) : _s(s) {}

      void skip() {
        while (_i < _s.size() && std::isspace(static_cast<unsigned char>(_s[_i]))) {
          ++_i;
        }
      }
      bool peek(char c) {
        skip();
        return _i < _s.size() && _s[_i] == c;
      }
      void expect(char c) {
        if (!peek(c)) {
          fail(std::string("expected '") + c + "'");
        }
        ++_i;
      }
      void expect(std::string const& word) {
        skip();
        if (_s.compare(_i, word.size(), word) != 0) {
          fail("expected '" + word + "'");
        }
        _i += word.size();
      }
      Index number() {
        skip();
        std::size_t j = _i;
        while (j < _s.size() && std::isdigit(static_cast<unsigned char>(_s[j]))) {
          ++j;
        }
        if (j == _i || j - _i > 9) {
          fail("expected a number");
        }
        Index v = static_cast<Index>(std::stoul(_s.substr(_i, j - _i)));
        _i      = j;
        return v;
      }
      // Comma separated numbers, possibly empty, up to the closing char.
      std::vector<Index> list(char close) {
        std::vector<Index> out;
        if (peek(close)) {
          return out;
        }
        out.push_back(number());
        while (peek(',')) {
          ++_i;
          out.push_back(number());
        }
        return out;
      }
      void end() {
        skip();
        if (_i != _s.size()) {
          fail("trailing characters");
        }
      }
      [[noreturn]] void fail(std::string const& what) const {
        throw InputError("SPC text: " + what + " at column " + std::to_string(_i + 1)
                         + " in '" + _s + "'");
      }

     private:
      std::string const& _s;
      std::size_t        _i = 0;
    };

  }  // namespace

  SPC parse_spc(std::string const& text, std::size_t n, FiniteGroup const& G) {
    Cursor c(text);
    c.expect("W=");
    c.expect('{');
    auto w = c.list('}');
    c.expect('}');
    c.expect(';');
    c.expect("blocks=");
    c.expect('[');
    std::vector<std::vector<Index>> blocks;
    std::vector<Index>              mu(n, kNone);
    if (!c.peek(']')) {
      while (true) {
        c.expect('{');
        auto blk = c.list('}');
        c.expect('}');
        c.expect(':');
        auto lab = c.list('|');
        if (lab.size() != blk.size()) {
          c.fail("block and label counts differ");
        }
        for (std::size_t k = 0; k < blk.size(); ++k) {
          if (blk[k] == 0 || blk[k] > n) {
            c.fail("point out of range");
          }
          blk[k] -= 1;
          mu[blk[k]] = lab[k];
        }
        blocks.push_back(std::move(blk));
        if (c.peek('|')) {
          c.expect('|');
          continue;
        }
        break;
      }
    }
    c.expect(']');
    c.end();
    auto x = make_spc(n, blocks, mu, G);
    std::vector<Index> declared;
    for (auto b : w) {
      if (b == 0 || b > n) {
        c.fail("point of W out of range");
      }
      declared.push_back(b - 1);
    }
    std::sort(declared.begin(), declared.end());
    if (declared != x.w()) {
      c.fail("W does not match the union of the blocks");
    }
    return x;
  }

  std::string group_to_string(FiniteGroup const& G) {
    std::ostringstream out;
    out << "order: " << G.order() << "\n";
    for (Index a = 0; a < G.order(); ++a) {
      for (Index b = 0; b < G.order(); ++b) {
        out << (b ? " " : "") << G.mul(a, b);
      }
      out << "\n";
    }
    return out.str();
  }

  FiniteGroup parse_group(std::string const& text) {
    std::istringstream in(text);
    std::string        word;
    std::size_t        k = 0;
    if (!(in >> word) || word != "order:" || !(in >> k) || k == 0) {
      throw InputError("group file must start with 'order: k'");
    }
    std::vector<std::vector<Index>> table(k, std::vector<Index>(k));
    for (auto& row : table) {
      for (auto& v : row) {
        long long x;
        if (!(in >> x) || x < 0) {
          throw InputError("group table is truncated or has a negative entry");
        }
        v = static_cast<Index>(x);
      }
    }
    if (in >> word) {
      throw InputError("group file has trailing data");
    }
    return FiniteGroup::from_table(std::move(table));
  }

}  // namespace krc
