#pragma once

#include <cstdint>

namespace banach {

// Tolerances, iteration budgets and dimension guardrails shared by all
// modules.  Every heuristic path derives its randomness from `seed`, so a
// fixed Config makes every result reproducible.
struct Config {
  // exact pipelines (rational arithmetic, closed forms)
  double exact_tol = 1e-9;
  // optimization pipelines (multistart ascent/descent)
  double opt_tol = 1e-6;
  // stopping gap for the delta-schedule of the numerical radius
  double schedule_tol = 1e-7;

  // multistart budgets
  int opnorm_starts = 64;
  int opnorm_iters = 500;
  int index_starts = 256;
  int index_iters = 1000;
  int vdelta_starts = 24;
  int vdelta_iters = 60;

  std::uint64_t seed = 0x5EED;

  // dimension guardrails
  int op_space_max_dim = 16;       // dim(X)*dim(Y) for L(X,Y) and tensor spaces
  int poly_convert_max_dim = 8;    // vertex<->facet polarity conversions
  int exact_index_max_dim_sq = 9;  // dim(X)^2 for exact index enumeration
};

inline const Config& default_config() {
  static const Config c{};
  return c;
}

}  // namespace banach
