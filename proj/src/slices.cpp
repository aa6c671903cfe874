#include "banachlab/slices.hpp"

#include "banachlab/lp.hpp"
#include "banachlab/parallel.hpp"
#include "banachlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace banach {
namespace {

constexpr unsigned long long kStream = 0x51C35ULL;

double re_pair(const CVec& f, const CVec& x) {
  return ((f.array() * x.array()).sum()).real();
}

bool any_imag(const std::vector<CVec>& pts) {
  for (const CVec& p : pts)
    for (int i = 0; i < p.size(); ++i)
      if (p[i].imag() != 0.0) return true;
  return false;
}

// Real coordinates carrying the bilinear re pairing: a point (re, im)
// matches a functional (re, -im).
std::vector<double> flat_point(const CVec& x, bool cplx) {
  std::vector<double> out;
  out.reserve(cplx ? 2 * x.size() : x.size());
  for (int i = 0; i < x.size(); ++i) out.push_back(x[i].real());
  if (cplx)
    for (int i = 0; i < x.size(); ++i) out.push_back(x[i].imag());
  return out;
}

CVec unflat_functional(const QVec& g, int d, bool cplx) {
  CVec f(d);
  for (int i = 0; i < d; ++i)
    f[i] = Cx(g[i].get_d(), cplx ? -g[d + i].get_d() : 0.0);
  return f;
}

struct PointCheck {
  bool inside = true;
  Rat dist;       // optimal max-norm distance to the hull
  QVec sep;       // l1-unit separating functional on the flat coordinates
  Rat margin;     // direct evaluation of the separation, >= dist
};

// Exact LP: minimize t subject to |a - sum lambda_j b_j|_inf <= t over the
// simplex.  Variables lambda (m), t, and two slack blocks.
PointCheck hull_distance(const QVec& ap, const std::vector<QVec>& bf) {
  const int dim = static_cast<int>(ap.size());
  const int m = static_cast<int>(bf.size());
  const int ncols = m + 1 + 2 * dim;
  const int nrows = 2 * dim + 1;
  QMat acons(nrows, QVec(ncols, Rat(0)));
  QVec rhs(nrows, Rat(0)), cost(ncols, Rat(0));
  cost[m] = Rat(1);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < m; ++j) {
      acons[i][j] = bf[j][i];
      acons[dim + i][j] = bf[j][i];
    }
    acons[i][m] = Rat(1);
    acons[i][m + 1 + i] = Rat(-1);
    acons[dim + i][m] = Rat(-1);
    acons[dim + i][m + 1 + dim + i] = Rat(1);
    rhs[i] = ap[i];
    rhs[dim + i] = ap[i];
  }
  for (int j = 0; j < m; ++j) acons[2 * dim][j] = Rat(1);
  rhs[2 * dim] = Rat(1);

  LpResult res = lp_min_eq(acons, rhs, cost);
  if (res.status != LpStatus::optimal)
    throw std::runtime_error("contains_in_conv: distance LP did not solve");

  PointCheck pc;
  pc.dist = res.value;
  QVec f(dim, Rat(0));
  Rat l1(0);
  for (int i = 0; i < dim; ++i) {
    f[i] = res.y[i] + res.y[dim + i];
    l1 += abs(f[i]);
  }
  if (l1 != 0) {
    for (Rat& c : f) c /= l1;
    Rat best;
    bool first = true;
    for (const QVec& bj : bf) {
      Rat v = qdot(f, bj);
      if (first || v > best) best = v;
      first = false;
    }
    pc.margin = qdot(f, ap) - best;
    pc.sep = std::move(f);
  }
  return pc;
}

std::vector<int> slice_indices_over(const std::vector<CVec>& a, const SliceSpec& spec) {
  SliceSpec local = spec;
  if (local.set.empty()) local.set = a;
  std::vector<CVec> members = slice(local);
  std::vector<int> idx;
  for (const CVec& mpt : members)
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (a[i].size() != mpt.size()) continue;
      if ((a[i] - mpt).cwiseAbs().maxCoeff() < 1e-12) {
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
        break;
      }
    }
  if (idx.empty())
    throw std::runtime_error("determining falsifier: a slice has no representative in the family");
  return idx;
}

}  // namespace

std::vector<CVec> slice(const SliceSpec& spec) {
  if (spec.set.empty()) throw std::invalid_argument("slice: empty point set");
  if (!(spec.depth > 0.0)) throw std::invalid_argument("slice: depth must be positive");
  double sup = -std::numeric_limits<double>::infinity();
  for (const CVec& p : spec.set) sup = std::max(sup, re_pair(spec.functional.coeffs, p));
  std::vector<CVec> out;
  for (const CVec& p : spec.set)
    if (re_pair(spec.functional.coeffs, p) > sup - spec.depth) out.push_back(p);
  return out;
}

ContainmentReport contains_in_conv(const std::vector<CVec>& a, const std::vector<CVec>& b,
                                   double eta, const Config&) {
  if (b.empty()) throw std::invalid_argument("contains_in_conv: empty hull family");
  if (eta < 0.0) throw std::invalid_argument("contains_in_conv: eta must be non-negative");
  ContainmentReport rep;
  if (a.empty()) return rep;
  const int d = static_cast<int>(a[0].size());
  for (const CVec& p : a)
    if (p.size() != d) throw std::invalid_argument("contains_in_conv: mixed dimensions");
  for (const CVec& p : b)
    if (p.size() != d) throw std::invalid_argument("contains_in_conv: mixed dimensions");

  const bool cplx = any_imag(a) || any_imag(b);
  std::vector<QVec> bf;
  bf.reserve(b.size());
  for (const CVec& p : b) bf.push_back(qvec_of(flat_point(p, cplx)));
  const Rat etar(eta);

  Rat worst(0);
  int worst_idx = -1;
  QVec worst_sep;
  Rat worst_margin;
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    PointCheck pc = hull_distance(qvec_of(flat_point(a[i], cplx)), bf);
    if (pc.dist > etar && (worst_idx < 0 || pc.dist > worst)) {
      worst = pc.dist;
      worst_idx = i;
      worst_sep = pc.sep;
      worst_margin = pc.margin;
    }
  }
  if (worst_idx >= 0) {
    rep.contained = false;
    Separation s;
    s.point = a[worst_idx];
    s.point_index = worst_idx;
    s.functional = unflat_functional(worst_sep, d, cplx);
    s.margin = worst_margin.get_d();
    rep.separator = std::move(s);
  }
  return rep;
}

DeterminingVerdict determining_falsifier(const std::vector<CVec>& a,
                                         const std::vector<SliceSpec>& family, double eta,
                                         int budget, const Config& cfg) {
  if (a.empty()) throw std::invalid_argument("determining falsifier: empty point family");
  if (family.empty()) throw std::invalid_argument("determining falsifier: empty slice family");
  std::vector<std::vector<int>> slices;
  slices.reserve(family.size());
  for (const SliceSpec& spec : family) slices.push_back(slice_indices_over(a, spec));

  const int restarts = std::max(1, budget);
  std::vector<char> found(restarts, 0);
  std::vector<std::vector<int>> picks(restarts);
  std::vector<Separation> seps(restarts);

  par::for_each(restarts, [&](long r) {
    Rng rng(mix_seed(cfg.seed, kStream ^ (0xFA15ULL + static_cast<std::uint64_t>(r))));
    std::vector<int> chosen;
    // keep the pick stream prefix-stable: a slice already hit consumes no
    // randomness, so enlarging the family can only enlarge the subset
    for (const std::vector<int>& mem : slices) {
      bool covered = false;
      for (int i : mem)
        if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) {
          covered = true;
          break;
        }
      if (covered) continue;
      size_t k = static_cast<size_t>(rng.uniform() * mem.size());
      chosen.push_back(mem[std::min(k, mem.size() - 1)]);
    }
    std::sort(chosen.begin(), chosen.end());
    std::vector<CVec> bpts;
    bpts.reserve(chosen.size());
    for (int i : chosen) bpts.push_back(a[i]);
    ContainmentReport rep = contains_in_conv(a, bpts, eta, cfg);
    if (!rep.contained) {
      found[r] = 1;
      picks[r] = std::move(chosen);
      seps[r] = std::move(*rep.separator);
    }
  });

  DeterminingVerdict v;
  v.resolution = {restarts, -1, eta, cfg.seed};
  for (int r = 0; r < restarts; ++r)
    if (found[r]) {
      v.counterexample_found = true;
      v.resolution.found_at = r;
      for (int i : picks[r]) v.subset.push_back(a[i]);
      v.separator = seps[r];
      break;
    }
  return v;
}

ExposureReport strongly_exposed_check(const SpacePtr& y, const CVec& y0,
                                      const Functional& y0_star, double delta, double eps,
                                      int samples, const Config& cfg) {
  if (!(delta > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("strongly_exposed_check: delta and eps must be positive");
  if (samples <= 0) samples = 200;
  ExposureReport rep;

  auto test = [&](CVec f) {
    double dn = dual_norm(*y, f);
    if (dn < 1e-12) return;
    f /= dn;
    ++rep.tested;
    if (re_pair(f, y0) > 1.0 - delta) {
      ++rep.in_slice;
      CVec diff = y0_star.coeffs - f;
      double dist = dual_norm(*y, diff);
      rep.worst_dist = std::max(rep.worst_dist, dist);
      if (dist >= eps && !rep.counterexample) {
        rep.passed = false;
        rep.counterexample = std::move(f);
      }
    }
  };

  if (y->polyhedral_capable() && y->dim <= cfg.poly_convert_max_dim) {
    const PolyData& pd = ensure_poly(*y, cfg);
    for (const auto& fc : pd.facets_d) test(cvec_of(fc));
  }
  Rng rng(mix_seed(cfg.seed, kStream ^ 0xE4905EULL));
  for (int k = 0; k < samples; ++k) {
    double spread = 0.05 + 1.95 * rng.uniform() * rng.uniform();
    CVec g = y0_star.coeffs;
    for (int i = 0; i < g.size(); ++i)
      g[i] += y->field == Field::cplx ? Cx(spread * rng.normal(), spread * rng.normal())
                                      : Cx(spread * rng.normal(), 0.0);
    test(std::move(g));
  }
  return rep;
}

}  // namespace banach
