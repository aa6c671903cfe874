#pragma once

#include "banachlab/numrange.hpp"

#include <optional>
#include <string>

namespace banach {

// Certificate for a numerical index computation.  The witness operator has
// norm one and its numerical radius certifies n(X) <= witness_value; on the
// exact path value equals witness_value and both are exact rationals.
struct IndexCertificate {
  double value = 0.0;
  Operator witness_operator;
  double witness_value = 0.0;
  bool exact = false;
  std::string method;  // polyhedral-enumeration | multistart | witness-only
  std::optional<Rat> value_exact;
};

// Exact numerical index of a real polyhedral space with dim^2 within the
// configured guardrail.  Uses n(X) = 1 / max{ ||T|| : v(T) <= 1 }: the
// feasible set Q is the polytope cut out by the incident (vertex, facet)
// pair functionals, and the maximum is taken over its vertices (up to nine
// variables) or over atom LPs against Q (above that).  If the pair
// functionals fail to span the operator space the index is exactly zero and
// the witness comes from the null space.
IndexCertificate numerical_index_exact(const SpacePtr& x,
                                       const Config& cfg = default_config());

// Heuristic upper estimate: multistart minimization of v(T)/||T|| over
// nonzero endomorphisms, deterministic for a fixed seed.  budget > 0 caps
// the number of starts at budget / index_iters; budget <= 0 uses the config
// defaults.  The reported value is the recomputed ratio of the winning
// witness, so value == witness_value and exact is false.
IndexCertificate numerical_index_estimate(const SpacePtr& x, int budget = 0,
                                          const Config& cfg = default_config());

// v(T)/||T|| for a nonzero endomorphism of x: an upper bound for n(X).
double index_upper_certificate(const SpacePtr& x, const Operator& t,
                               const Config& cfg = default_config());

}  // namespace banach
