#ifndef KRC_IO_HPP_
#define KRC_IO_HPP_

#include <string>

#include "krc/core.hpp"

namespace krc {

  // Semigroup files:
  //
  //   points: 3
  //   gens:
  //   a: 2 3 1
  //   b: 1 - 3
  //
  // '-' marks an undefined image and '#' starts a comment. An abstract
  // semigroup is written through its right regular representation.
  std::string     semigroup_to_string(FiniteSemigroup const& S);
  FiniteSemigroup parse_semigroup(std::string const& text,
                                  std::size_t        budget = kDefaultElementBudget);

  std::string read_file(std::string const& path);
  void        write_file(std::string const& path, std::string const& text);

  FiniteSemigroup load_semigroup(std::string const& path,
                                 std::size_t        budget = kDefaultElementBudget);

  // "trivial", "Z<k>", "Sym<k>", otherwise the path of a group file.
  FiniteGroup group_by_name(std::string const& spec);

}  // namespace krc

#endif  // KRC_IO_HPP_
