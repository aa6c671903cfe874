#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace banach {

// One emitted number.  `source` is the provenance chain naming the oracle
// path that produced it; `exact_form` carries the rational string when the
// whole path stayed exact.
struct ReportValue {
  std::string name;
  double value = 0.0;
  bool exact = false;
  std::string source;
  std::optional<std::string> exact_form;
};

struct ReportItem {
  std::vector<std::string> targets;
  std::vector<ReportValue> values;
  std::optional<double> margin;
  std::string verdict;  // verify rows only
  std::string witness;
  std::string error;  // per-item failure; the run continues
};

struct RunReport {
  std::string command;
  std::string catalog_path;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int budget = 0;
  std::vector<ReportItem> items;
  double wall_time_s = 0.0;  // excluded from the determinism contract
};

std::string render_json(const RunReport& r);
std::string render_csv(const RunReport& r);
std::string render_human(const RunReport& r);

}  // namespace banach
