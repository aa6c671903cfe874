#pragma once

#include "banachlab/op.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace banach {

// A point of the (relaxed) state space: x in B_X, x* in B_{X*},
// gap = 1 - re x*(x).  gap == 0 pairs generate the classical numerical range.
struct StatePair {
  CVec x;
  Functional x_star;
  double gap = 0.0;
};

struct RadiusResult {
  double value = 0.0;
  StatePair witness;
  bool exact = false;
  // (delta, v_delta) along the evaluated schedule, largest delta first.
  std::vector<std::pair<double, double>> delta_schedule;
};

struct DaugavetReport {
  double defect = 0.0;    // 1 + ||T|| - ||Id + T||
  double sup_re_v = 0.0;  // sup re V(T)
  double norm_t = 0.0;
  double norm_id_plus_t = 0.0;
};

// Elements of V(T).  Polyhedral domains return the exact finite value set
// over (ball vertex, incident facet functional) pairs; other domains return
// n_samples random unit vectors paired with duality-map images.
std::vector<Cx> numerical_range_sample(const Operator& t, int n_samples,
                                       const Config& cfg = default_config());

// sup{|x*(Tx)| : x in B_X, x* in B_{X*}, re x*(x) > 1 - delta}.  When points
// or functionals are supplied the sup runs over those finite sets instead
// (both sides must be given on non-polyhedral spaces); conv-closure of the
// supplied sets is the caller's responsibility and is not verified here.
double v_delta(const Operator& t, double delta,
               const std::optional<std::vector<CVec>>& points = std::nullopt,
               const std::optional<std::vector<CVec>>& functionals = std::nullopt,
               const Config& cfg = default_config());

// v(T).  Real polyhedral domains: exact maximum over the finite incident
// pairs.  Otherwise the geometric schedule delta_k = 4^-k is walked until two
// consecutive v_delta values agree to cfg.schedule_tol.
RadiusResult numerical_radius(const Operator& t,
                              const Config& cfg = default_config());

// Schedule-based estimate regardless of the domain kind (exact stays false).
// On polyhedral domains each level is still the exact finite-pair maximum.
RadiusResult radius_schedule(const Operator& t,
                             const Config& cfg = default_config());

DaugavetReport daugavet_defect(const Operator& t,
                               const Config& cfg = default_config());

}  // namespace banach
