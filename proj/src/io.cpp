#include "krc/io.hpp"

#include "krc/spc.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace krc {

  std::string semigroup_to_string(FiniteSemigroup const& S) {
    std::vector<PartialTransformation> rr;
    if (!S.has_transformations()) {
      rr = S.right_regular_representation();
    }
    auto map_of = [&](Index s) -> PartialTransformation const& {
      return S.has_transformations() ? S.transformation(s) : rr[s];
    };
    std::ostringstream out;
    out << "points: " << map_of(S.generator(0)).degree() << "\ngens:\n";
    for (auto const& g : S.generators()) {
      out << g.name << ":";
      for (auto p : map_of(g.element).images()) {
        out << ' ';
        if (p == kUndefined) {
          out << '-';
        } else {
          out << p;
        }
      }
      out << '\n';
    }
    return out.str();
  }

  FiniteSemigroup parse_semigroup(std::string const& text, std::size_t budget) {
    std::istringstream                                   in(text);
    std::string                                          line;
    std::size_t                                          lineno = 0;
    std::optional<std::size_t>                           n;
    bool                                                 in_gens = false;
    std::vector<std::pair<std::string, PartialTransformation>> gens;
    auto fail = [&](std::string const& what) {
      throw InputError("semigroup line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      std::istringstream ls(line);
      std::string        key;
      if (!(ls >> key)) {
        continue;
      }
      if (key == "points:") {
        std::size_t v;
        if (n || !(ls >> v) || v == 0) {
          fail("expected a single positive 'points: n'");
        }
        n = v;
      } else if (key == "gens:") {
        if (!n || in_gens) {
          fail("'gens:' must follow 'points:' once");
        }
        in_gens = true;
      } else if (in_gens && key.size() > 1 && key.back() == ':') {
        std::string const name = key.substr(0, key.size() - 1);
        for (auto const& g : gens) {
          if (g.first == name) {
            fail("duplicate generator '" + name + "'");
          }
        }
        std::vector<Point> im;
        std::string        tok;
        while (ls >> tok) {
          if (tok == "-") {
            im.push_back(kUndefined);
            continue;
          }
          std::size_t used = 0;
          unsigned long v  = 0;
          try {
            v = std::stoul(tok, &used);
          } catch (std::exception const&) {
            used = 0;
          }
          if (used != tok.size() || v == 0 || v > *n) {
            fail("image '" + tok + "' is not a point in 1.." + std::to_string(*n) + " or '-'");
          }
          im.push_back(static_cast<Point>(v));
        }
        if (im.size() != *n) {
          fail("generator '" + name + "' needs " + std::to_string(*n) + " images");
        }
        gens.emplace_back(name, PartialTransformation(std::move(im)));
      } else {
        fail("unexpected '" + key + "'");
      }
    }
    if (gens.empty()) {
      throw InputError("semigroup file has no generators");
    }
    return generate(gens, budget);
  }

  std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw InputError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write_file(std::string const& path, std::string const& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
      throw InputError("cannot write '" + path + "'");
    }
  }

  FiniteSemigroup load_semigroup(std::string const& path, std::size_t budget) {
    return parse_semigroup(read_file(path), budget);
  }

  FiniteGroup group_by_name(std::string const& spec) {
    auto number = [&](std::size_t from) -> std::size_t {
      auto const t = spec.substr(from);
      if (t.empty() || t.size() > 4 || t.find_first_not_of("0123456789") != std::string::npos) {
        return 0;
      }
      return std::stoul(t);
    };
    if (spec == "trivial" || spec == "1") return FiniteGroup::trivial();
    if (spec.size() > 1 && spec[0] == 'Z' && number(1) > 0) return FiniteGroup::cyclic(number(1));
    if (spec.rfind("Sym", 0) == 0 && number(3) > 0) return FiniteGroup::symmetric(number(3));
    return parse_group(read_file(spec));
  }

}  // namespace krc
