#ifndef KRC_CORPUS_HPP_
#define KRC_CORPUS_HPP_

#include <string>
#include <vector>

#include "krc/complexity.hpp"

namespace krc {

  // One manifest entry: a semigroup file and the values it must reproduce.
  // expect may hold order, aperiodic, group_mapping,
  // generalized_group_mapping and interval ([lower, upper], upper null when
  // unknown); basis records how each expected value is known. The flags
  // inverse, rees and trivial_flow request the corresponding checks.
  struct CorpusEntry {
    std::string name;
    std::string file;  // relative to the corpus directory
    Json        expect;
    Json        basis;
    bool        inverse      = false;
    bool        rees         = false;
    bool        trivial_flow = false;
  };

  std::vector<CorpusEntry> load_manifest(std::string const& dir);

  struct CorpusReport {
    std::string text;
    std::size_t entries    = 0;
    std::size_t mismatches = 0;
  };

  // Runs every entry in manifest order. The report has no timings or paths
  // beyond the entry files, so repeated runs are byte-identical.
  CorpusReport run_corpus(std::string const& dir, EstimateBudget const& budget = {});

}  // namespace krc

#endif  // KRC_CORPUS_HPP_
