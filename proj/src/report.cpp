#include "banachlab/report.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

namespace banach {
namespace {

using json = nlohmann::ordered_json;

std::string hex_seed(std::uint64_t s) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(s));
  return buf;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

// Shortest round-trip decimal so equal doubles always render identically.
std::string num(double v) {
  json j = v;
  return j.dump();
}

}  // namespace

std::string render_json(const RunReport& r) {
  json root;
  root["command"] = r.command;
  root["catalog"] = r.catalog_path;
  root["seed"] = hex_seed(r.seed);
  root["tol"] = r.tol;
  root["budget"] = r.budget;
  json items = json::array();
  for (const ReportItem& it : r.items) {
    json ji;
    ji["targets"] = it.targets;
    json vals = json::array();
    for (const ReportValue& v : it.values) {
      json jv;
      jv["name"] = v.name;
      jv["value"] = v.value;
      jv["flag"] = v.exact ? "exact" : "heuristic";
      jv["source"] = v.source;
      if (v.exact_form) jv["exact"] = *v.exact_form;
      vals.push_back(std::move(jv));
    }
    ji["values"] = std::move(vals);
    if (it.margin) ji["margin"] = *it.margin;
    if (!it.verdict.empty()) ji["verdict"] = it.verdict;
    if (!it.witness.empty()) ji["witness"] = it.witness;
    if (!it.error.empty()) ji["error"] = it.error;
    items.push_back(std::move(ji));
  }
  root["items"] = std::move(items);
  root["wall_time_s"] = r.wall_time_s;
  return root.dump(2) + "\n";
}

std::string render_csv(const RunReport& r) {
  std::ostringstream out;
  out << "command,targets,value,flag,margin,verdict,seed\n";
  for (const ReportItem& it : r.items) {
    std::string targets = join(it.targets, ';');
    if (it.values.empty()) {
      out << r.command << ',' << targets << ",,," << (it.margin ? num(*it.margin) : "") << ','
          << it.verdict << ',' << hex_seed(r.seed) << '\n';
      continue;
    }
    for (const ReportValue& v : it.values)
      out << r.command << ',' << targets << ',' << num(v.value) << ','
          << (v.exact ? "exact" : "heuristic") << ',' << (it.margin ? num(*it.margin) : "") << ','
          << it.verdict << ',' << hex_seed(r.seed) << '\n';
  }
  return out.str();
}

std::string render_human(const RunReport& r) {
  std::ostringstream out;
  out << r.command << "  seed=" << hex_seed(r.seed) << "  catalog=" << r.catalog_path << "\n";
  for (const ReportItem& it : r.items) {
    out << "  [" << join(it.targets, ',') << "]";
    if (!it.verdict.empty()) out << "  " << it.verdict;
    if (it.margin) out << "  margin=" << num(*it.margin);
    out << "\n";
    for (const ReportValue& v : it.values) {
      out << "    " << v.name << " = " << num(v.value) << "  ["
          << (v.exact ? "exact" : "heuristic") << "]  " << v.source;
      if (v.exact_form) out << "  = " << *v.exact_form;
      out << "\n";
    }
    if (!it.witness.empty()) out << "    witness: " << it.witness << "\n";
    if (!it.error.empty()) out << "    error: " << it.error << "\n";
  }
  out << "  wall time " << num(r.wall_time_s) << " s\n";
  return out.str();
}

}  // namespace banach
