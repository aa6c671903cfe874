#pragma once

#include "banachlab/op.hpp"
#include "banachlab/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace banach {

struct RankOneTerm {
  CVec x, y;
};

struct PiResult {
  double value = 0.0;
  double primal = 0.0;  // upper bound from a feasible decomposition
  double dual = 0.0;    // lower bound from a feasible dual operator
  bool exact = false;   // primal-dual gap within tolerance
  bool dual_exact = false;
  std::string method;
  std::vector<RankOneTerm> decomposition;  // primal witness, sums to u
  CMat dual_witness;                       // B with ||B|| <= 1, <B,u> = dual
  std::optional<Rat> value_exact;
};

struct EpsResult {
  double value = 0.0;
  bool exact = false;
  std::string method;
  CVec left_witness, right_witness;  // dual pair achieving the value
  std::optional<Rat> value_exact;
};

struct TensorElement {
  CMat c;  // dim(X) x dim(Y), left-index-major when flattened
  SpacePtr left, right;

  struct Cache;
  std::shared_ptr<Cache> cache;
};

struct TensorElement::Cache {
  std::once_flag pi_once, eps_once;
  std::shared_ptr<const PiResult> pi;
  std::shared_ptr<const EpsResult> eps;
};

TensorElement make_tensor(CMat c, SpacePtr left, SpacePtr right);
TensorElement tensor_of_vec(const CVec& v, const SpacePtr& x, const SpacePtr& y);
CVec vec_of_tensor(const TensorElement& u);

EpsResult eps_norm(const TensorElement& u, const Config& cfg = default_config());
PiResult pi_norm(const TensorElement& u, const Config& cfg = default_config());

SpacePtr tensor_space(const SpacePtr& x, const SpacePtr& y, NormKind kind,
                      const Config& cfg = default_config());

Operator tensor_lift(const Operator& s, const Operator& t, NormKind kind,
                     const Config& cfg = default_config());

PiResult nuclear_norm_operator(const Operator& t,
                               const Config& cfg = default_config());

}  // namespace banach
