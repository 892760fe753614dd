#include "krc/corpus.hpp"

#include <sstream>

#include "krc/flows.hpp"
#include "krc/inverse.hpp"
#include "krc/io.hpp"

namespace krc {

  std::vector<CorpusEntry> load_manifest(std::string const& dir) {
    Json m;
    try {
      m = Json::parse(read_file(dir + "/manifest.json"));
    } catch (Json::parse_error const& e) {
      throw InputError(std::string("manifest is not valid JSON: ") + e.what());
    }
    std::vector<CorpusEntry> out;
    for (auto const& e : m.at("entries")) {
      CorpusEntry c;
      c.name         = e.at("name").get<std::string>();
      c.file         = e.at("file").get<std::string>();
      c.expect       = e.value("expect", Json::object());
      c.basis        = e.value("basis", Json::object());
      c.inverse      = e.value("inverse", false);
      c.rees         = e.value("rees", false);
      c.trivial_flow = e.value("trivial_flow", false);
      for (auto const& [key, v] : c.expect.items()) {
        if (!c.basis.contains(key)) {
          throw InputError("entry " + c.name + ": expected " + key + " has no basis");
        }
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  namespace {

    char const* yes_no(bool b) {
      return b ? "yes" : "no";
    }

    struct EntryRun {
      std::ostringstream line;
      std::vector<std::string> mismatches;

      template <typename T>
      void compare(Json const& expect, std::string const& key, T const& got) {
        if (expect.contains(key) && expect.at(key) != Json(got)) {
          mismatches.push_back(key + " expected " + expect.at(key).dump() + " got "
                               + Json(got).dump());
        }
      }
    };

  }  // namespace

  CorpusReport run_corpus(std::string const& dir, EstimateBudget const& budget) {
    CorpusReport report;
    std::ostringstream out;
    for (auto const& e : load_manifest(dir)) {
      ++report.entries;
      EntryRun r;
      try {
        auto const S = load_semigroup(dir + "/" + e.file, budget.elements);
        auto const G = green(S);
        auto const C = classify(S, G);
        bool const ap = is_aperiodic(S, G);
        r.line << "order " << S.size() << ", aperiodic " << yes_no(ap) << ", gm "
               << yes_no(C.group_mapping) << ", ggm " << yes_no(C.generalized_group_mapping);
        r.compare(e.expect, "order", S.size());
        r.compare(e.expect, "aperiodic", ap);
        r.compare(e.expect, "group_mapping", C.group_mapping);
        r.compare(e.expect, "generalized_group_mapping", C.generalized_group_mapping);

        auto const I = estimate(S, budget);
        r.line << ", interval " << interval_to_string(I.lower, I.upper);
        Json iv = Json::array({I.lower, I.upper ? Json(*I.upper) : Json(nullptr)});
        r.compare(e.expect, "interval", iv);
        auto const rep = replay_certificate(I.certificate, budget.elements);
        r.line << ", replay " << (rep.ok ? "ok" : "FAILED");
        if (!rep.ok) {
          r.mismatches.push_back("replay: " + rep.message);
        }

        if (e.inverse) {
          bool const inv = is_inverse_semigroup(S);
          r.line << ", inverse " << yes_no(inv);
          if (!inv) {
            r.mismatches.push_back("not an inverse semigroup");
          }
        }
        if (e.rees || e.trivial_flow) {
          Index j = kNone;
          if (C.distinguished) {
            j = *C.distinguished;
          } else {
            throw InputError("no distinguished J-class");
          }
          auto const P = present(S, j);
          if (e.rees) {
            // present() has already checked the coordinate transport.
            r.line << ", rees " << P.rees.num_a() << "x" << P.group().order() << "x"
                   << P.num_b();
            if (C.group_mapping) {
              auto const F = fasp_embedding(P);
              r.line << ", fasp " << F.images.size();
            }
          }
          if (e.trivial_flow) {
            auto const F   = trivial_flow(P);
            auto const rep2 = verify_flow(P, F);
            if (!rep2.ok) {
              r.mismatches.push_back("trivial flow fails " + rep2.condition);
            } else {
              auto const W = presentation_construct(P, F, budget.elements);
              r.line << ", trivial flow ok, product " << W.product.size();
              if (W.division.status != DivisionStatus::found) {
                r.mismatches.push_back("trivial flow construction is not a division");
              }
            }
          }
        }
      } catch (std::exception const& ex) {
        r.mismatches.push_back(std::string("error: ") + ex.what());
      }
      out << e.name << ": " << r.line.str();
      if (r.mismatches.empty()) {
        out << " -- ok\n";
      } else {
        ++report.mismatches;
        out << " -- MISMATCH\n";
        for (auto const& m : r.mismatches) {
          out << "  " << m << "\n";
        }
      }
    }
    out << report.entries << " entries, " << report.mismatches << " mismatches\n";
    report.text = out.str();
    return report;
  }

}  // namespace krc
