#pragma once

// Sampled state pairs (u, f) with f(u) = 1 on both sides of the unit sphere.
// Derived kinds (tensor products, operator spaces, formal duals) get their
// pairs from factor norming pairs, which keeps every sample exact up to the
// factor norming tolerance.  Used as cheap lower-bound evaluators for the
// numerical radius and the operator norm where the norm oracle is too slow
// for an inner loop.

#include "banachlab/rng.hpp"
#include "banachlab/space.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace banach::detail {

struct StatePairs {
  std::vector<CVec> us, fs;
};

inline bool sampled_pair(const SpacePtr& sp, Rng& rng, const Config& cfg, CVec& x, CVec& f) {
  const int n = sp->dim;
  for (int tries = 0; tries < 24; ++tries) {
    CVec c(n);
    for (int i = 0; i < n; ++i)
      c[i] = sp->field == Field::cplx ? Cx(rng.normal(), rng.normal()) : Cx(rng.normal(), 0.0);
    double nx = eval_norm(*sp, c);
    if (nx < 1e-9) continue;
    c /= nx;
    try {
      auto nf = norming_functionals(sp, c, 0.0, cfg);
      if (nf.empty()) continue;
      x = c;
      f = nf.front().coeffs;
      return true;
    } catch (const std::exception&) {
      continue;
    }
  }
  return false;
}

inline StatePairs build_state_pairs(const SpacePtr& x, int count, unsigned long long salt,
                                    const Config& cfg) {
  const Space& s = *x;
  StatePairs q;
  Rng rng(mix_seed(cfg.seed, salt));
  const bool product_kind = s.kind == NormKind::tensor_pi || s.kind == NormKind::tensor_eps ||
                            s.kind == NormKind::operator_space;
  for (int k = 0; k < count; ++k) {
    CVec u, f;
    if (product_kind) {
      CVec xa, fa, yb, gb;
      if (!sampled_pair(s.a, rng, cfg, xa, fa) || !sampled_pair(s.b, rng, cfg, yb, gb)) continue;
      const int dB = s.b->dim;
      u.resize(s.dim);
      f.resize(s.dim);
      for (int i = 0; i < s.a->dim; ++i)
        for (int j = 0; j < dB; ++j) {
          if (s.kind == NormKind::operator_space) {
            u[i * dB + j] = fa[i] * yb[j];
            f[i * dB + j] = xa[i] * gb[j];
          } else {
            u[i * dB + j] = xa[i] * yb[j];
            f[i * dB + j] = fa[i] * gb[j];
          }
        }
    } else if (s.kind == NormKind::dual_of) {
      CVec xp, fp;
      if (!sampled_pair(s.a, rng, cfg, xp, fp)) continue;
      u = fp;
      f = xp;
    } else {
      if (!sampled_pair(x, rng, cfg, u, f)) continue;
    }
    q.us.push_back(std::move(u));
    q.fs.push_back(std::move(f));
  }
  if (q.us.empty()) throw std::runtime_error("state pairs: could not sample the sphere");
  return q;
}

// max_k |f_k(T u_k)|: a lower bound of the numerical radius of T.
inline double pairs_v(const StatePairs& q, const CMat& m) {
  double best = 0.0;
  for (std::size_t k = 0; k < q.us.size(); ++k) {
    CVec tu = m * q.us[k];
    double a = std::abs((q.fs[k].array() * tu.array()).sum());
    if (a > best) best = a;
  }
  return best;
}

// max over all (u_j, f_k) of |f_k(T u_j)|: a lower bound of ||T||.
inline double pairs_norm(const StatePairs& q, const CMat& m) {
  double best = 0.0;
  for (const CVec& u : q.us) {
    CVec tu = m * u;
    for (const CVec& f : q.fs) {
      double a = std::abs((f.array() * tu.array()).sum());
      if (a > best) best = a;
    }
  }
  return best;
}

}  // namespace banach::detail
