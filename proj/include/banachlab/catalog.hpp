#pragma once

#include "banachlab/op.hpp"
#include "banachlab/tensor.hpp"

#include <string>
#include <vector>

namespace banach {

// Parsed catalog: named spaces plus operator and tensor literals over them.
// Load-time validation runs every norm-geometry invariant it can afford
// (vertex-on-sphere, vertex/facet polarity) and reports failures naming the
// offending entry; checks skipped for guardrail reasons become warnings.
struct Catalog {
  std::vector<SpacePtr> spaces;
  std::vector<std::pair<std::string, Operator>> operators;
  std::vector<std::pair<std::string, TensorElement>> tensors;
  std::vector<std::string> warnings;

  SpacePtr find_space(const std::string& label) const;  // throws on unknown label
  const Operator* find_operator(const std::string& label) const;        // nullptr if absent
  const TensorElement* find_tensor(const std::string& label) const;     // nullptr if absent
  bool has_space(const std::string& label) const;
};

Catalog parse_catalog_text(const std::string& text, const Config& cfg = default_config());
Catalog load_catalog(const std::string& path, const Config& cfg = default_config());

// The catalog shipped with the tool; parse_catalog_text(default_catalog_json())
// loads with zero warnings.
std::string default_catalog_json();

// Round-trip serialization; rational coordinates are emitted as exact
// fraction strings.
std::string dump_catalog(const Catalog& c);

}  // namespace banach
