#pragma once

#include "banachlab/space.hpp"

#include <optional>
#include <string>

namespace banach {

struct NormResult {
  double value = 0.0;
  CVec witness;  // unit vector with eval_norm(Y, T witness) ~ value
  bool exact = false;
  std::string method;              // vertex-max | svd | multistart
  std::optional<Rat> value_exact;  // present when the whole path was rational
};

struct Operator {
  CMat m;  // dim(Y) x dim(X)
  SpacePtr domain, codomain;

  struct Cache;
  std::shared_ptr<Cache> cache;
};

struct Operator::Cache {
  std::once_flag once;
  std::shared_ptr<const NormResult> norm;
};

Operator make_operator(CMat m, SpacePtr domain, SpacePtr codomain);
Operator identity(const SpacePtr& x);
// rank one f (x) y : x -> f(x) y with the bilinear pairing
Operator rank_one(const CVec& f, const CVec& y, const SpacePtr& domain,
                  const SpacePtr& codomain);

NormResult op_norm(const Operator& t, const Config& cfg = default_config());

Operator compose(const Operator& a, const Operator& b);  // a after b
Operator adjoint(const Operator& t, const Config& cfg = default_config());

// L(X, Y) as a space; elements are vec(T) with vec[i*dimY + j] = T(j, i).
SpacePtr operator_space(const SpacePtr& x, const SpacePtr& y,
                        const Config& cfg = default_config());

CVec vec_of_operator(const Operator& t);
Operator operator_of_vec(const CVec& v, const SpacePtr& x, const SpacePtr& y);

}  // namespace banach
