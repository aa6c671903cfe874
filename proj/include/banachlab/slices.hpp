#pragma once

#include "banachlab/space.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace banach {

// A slice of a finite point family: the points of `set` whose re x*(x) comes
// within `depth` of the maximum.
struct SliceSpec {
  std::vector<CVec> set;
  Functional functional;
  double depth = 0.0;
};

// Separation certificate: re functional(point) exceeds the maximum of re
// functional over the tested hull by `margin`.  The functional has unit
// l1 norm over the flattened real coordinates, so the certificate can be
// re-verified by direct evaluation.
struct Separation {
  CVec point;
  CVec functional;
  double margin = 0.0;
  int point_index = -1;
};

struct ContainmentReport {
  bool contained = true;
  std::optional<Separation> separator;
};

struct FalsifierResolution {
  int restarts = 0;
  int found_at = -1;  // restart index of the first counterexample, -1 if none
  double eta = 0.0;
  std::uint64_t seed = 0;
};

struct DeterminingVerdict {
  bool counterexample_found = false;
  std::vector<CVec> subset;  // B: hits every slice of the family
  std::optional<Separation> separator;
  FalsifierResolution resolution;
};

struct ExposureReport {
  bool passed = true;
  int tested = 0;
  int in_slice = 0;
  double worst_dist = 0.0;
  std::optional<CVec> counterexample;
};

// Points of spec.set within spec.depth of the maximal re spec.functional
// value.  Always contains the maximizer; throws on an empty set or a
// non-positive depth.
std::vector<CVec> slice(const SliceSpec& spec);

// Does every point of `a` lie within eta of conv(b)?  Distance is measured
// in the max norm of the flattened real coordinates and decided by an exact
// rational linear program per point; on failure the report carries the
// worst point together with a separating functional.  Throws on empty b.
ContainmentReport contains_in_conv(const std::vector<CVec>& a, const std::vector<CVec>& b,
                                   double eta, const Config& cfg = default_config());

// Searches for a subset B of `a` that intersects every slice of the family
// yet fails contains_in_conv(a, B, eta).  Randomized greedy over `budget`
// restarts, deterministic in cfg.seed; a verdict without counterexample
// means none was found at this resolution, not that the family is
// determining.
DeterminingVerdict determining_falsifier(const std::vector<CVec>& a,
                                         const std::vector<SliceSpec>& family, double eta,
                                         int budget, const Config& cfg = default_config());

// Samples functionals from the dual unit sphere of y (biased toward
// y0_star) and tests the implication re y*(y0) > 1 - delta  =>
// ||y0_star - y*||_dual < eps.
ExposureReport strongly_exposed_check(const SpacePtr& y, const CVec& y0,
                                      const Functional& y0_star, double delta, double eps,
                                      int samples, const Config& cfg = default_config());

}  // namespace banach
