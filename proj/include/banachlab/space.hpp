#pragma once

#include "banachlab/config.hpp"
#include "banachlab/rat.hpp"
#include "banachlab/scalar.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace banach {

enum class NormKind {
  lp,
  polyhedral,
  euclidean_weighted,
  tensor_pi,
  tensor_eps,
  operator_space,
  dual_of,
};

// Exact unit-ball data for real polyhedral-like norms.  verts and facets are
// mutual polars; the double mirrors back the fast float paths.
struct PolyData {
  std::vector<QVec> verts;
  std::vector<QVec> facets;
  std::vector<std::vector<double>> verts_d;
  std::vector<std::vector<double>> facets_d;
};

struct Space;
using SpacePtr = std::shared_ptr<const Space>;

struct Space {
  std::string label;
  int dim = 0;
  Field field = Field::real;
  NormKind kind = NormKind::lp;
  double p = 2.0;                // lp kinds; HUGE_VAL encodes the sup norm
  std::vector<double> weights;   // euclidean_weighted
  SpacePtr a, b;                 // factor spaces, or the predual for dual_of

  // Derived kinds (tensor, operator space, dual_of) plug their norm in here;
  // the plain kinds dispatch on closed forms.
  std::function<double(const CVec&)> oracle;
  std::function<double(const CVec&)> dual_oracle;
  std::function<SpacePtr()> make_dual;

  mutable std::shared_ptr<const PolyData> poly;
  mutable std::once_flag poly_once;

  bool is_l1() const { return kind == NormKind::lp && p == 1.0; }
  bool is_linf() const { return kind == NormKind::lp && std::isinf(p); }
  // True when exact rational vertex/facet data can be produced.
  bool polyhedral_capable() const;
};

struct Functional {
  CVec coeffs;
  SpacePtr space;
};

SpacePtr make_lp(const std::string& label, int dim, double p,
                 Field field = Field::real);
SpacePtr make_polyhedral(const std::string& label, std::vector<QVec> vertices);
SpacePtr make_euclidean_weighted(const std::string& label,
                                 std::vector<double> weights,
                                 Field field = Field::real);

double eval_norm(const Space& s, const CVec& x);
double dual_norm(const Space& s, const CVec& f);

// Float-only mirror of eval_norm for inner optimization loops: polyhedral
// kinds use the double facet table instead of rational arithmetic.  Exact
// verdicts must go through eval_norm / eval_norm_exact.
double eval_norm_fast(const Space& s, const CVec& x);

// Exact paths; throw on kinds without rational data.
Rat eval_norm_exact(const Space& s, const QVec& x,
                    const Config& cfg = default_config());
Rat dual_norm_exact(const Space& s, const QVec& f,
                    const Config& cfg = default_config());

// Unit functionals with re f(x) > 1 - delta.  Polyhedral spaces at delta = 0
// return exactly the facets containing x (|f(x)-1| <= 1e-9); smooth kinds
// return the duality-map image; remaining kinds fall back to the norm
// gradient and may return an empty list when that fails the check.
std::vector<Functional> norming_functionals(const SpacePtr& s, const CVec& x,
                                            double delta,
                                            const Config& cfg = default_config());

// Exact vertex list of the unit ball; throws for non-polyhedral norms.
std::vector<QVec> extreme_points(const Space& s,
                                 const Config& cfg = default_config());

SpacePtr dual_space(const SpacePtr& s, const Config& cfg = default_config());

// Completes (and caches) vertex/facet data, subject to the conversion
// guardrail.  Throws for kinds that have none.
const PolyData& ensure_poly(const Space& s, const Config& cfg = default_config());

bool same_space(const Space& x, const Space& y);

// Generic projected-ascent fallback: sup |f(x)| over the unit ball of s,
// using only eval_norm.  Deterministic for a fixed cfg.seed.
double dual_norm_ascent(const Space& s, const CVec& f, const Config& cfg);

// Exact rationalization of a real vector; throws on a nonzero imaginary part.
QVec real_qvec(const CVec& x);

}  // namespace banach
