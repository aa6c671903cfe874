#include "banachlab/numrange.hpp"

#include "banachlab/parallel.hpp"
#include "banachlab/rng.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace banach {
namespace {

constexpr std::uint64_t kStream = 0xDE17AULL;

Cx bilin(const CVec& f, const CVec& x) { return (f.array() * x.array()).sum(); }

void require_endo(const Operator& t, const char* who) {
  if (!t.domain || !t.codomain || !same_space(*t.domain, *t.codomain))
    throw std::runtime_error(std::string(who) +
                             ": operator must map a space to itself");
}

CVec cvec_of_q(const QVec& v) {
  CVec x(static_cast<int>(v.size()));
  for (int i = 0; i < x.size(); ++i)
    x[i] = v[static_cast<std::size_t>(i)].get_d();
  return x;
}

// ---------------------------------------------------------------------------
// Finite pair table for real polyhedral domains.  The admissible pairs of
// Lemma-style relaxations over A = ball vertices, B = dual-ball vertices are
// the rows with ip > 1 - delta; ip == 1 rows are the classical state pairs.

struct PolyPairs {
  std::vector<CVec> verts, facets;
  std::vector<CVec> tverts;  // T * vert
  QMat qverts, qfacets, tq;
  struct Entry {
    int vi, fi;
    Rat ip;  // x*(x), exact
    Cx val;  // x*(Tx), double
  };
  std::vector<Entry> entries;
  std::optional<Rat> second_ip;  // largest ip strictly below 1
};

PolyPairs build_pairs(const Operator& t, const Config& cfg) {
  const Space& s = *t.domain;
  const PolyData& pd = ensure_poly(s, cfg);
  if (pd.verts.size() * pd.facets.size() > 2000000)
    throw std::runtime_error("pair table too large");
  PolyPairs pp;
  pp.qverts = pd.verts;
  pp.qfacets = pd.facets;
  const int d = s.dim;
  pp.tq.assign(d, QVec(d, Rat(0)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Cx e = t.m(i, j);
      if (e.imag() != 0.0)
        throw std::runtime_error("pair table needs a real matrix");
      pp.tq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          rat_of(e.real());
    }
  for (const QVec& v : pd.verts) pp.verts.push_back(cvec_of_q(v));
  for (const QVec& f : pd.facets) pp.facets.push_back(cvec_of_q(f));
  for (const CVec& v : pp.verts) pp.tverts.push_back(t.m * v);
  for (int vi = 0; vi < static_cast<int>(pp.verts.size()); ++vi)
    for (int fi = 0; fi < static_cast<int>(pp.facets.size()); ++fi) {
      Rat ip = qdot(pp.qfacets[static_cast<std::size_t>(fi)],
                    pp.qverts[static_cast<std::size_t>(vi)]);
      Cx val = bilin(pp.facets[static_cast<std::size_t>(fi)],
                     pp.tverts[static_cast<std::size_t>(vi)]);
      if (ip < 1 && (!pp.second_ip || ip > *pp.second_ip)) pp.second_ip = ip;
      pp.entries.push_back({vi, fi, std::move(ip), val});
    }
  return pp;
}

QVec qmatvec(const QMat& m, const QVec& v) {
  QVec out(m.size(), Rat(0));
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = qdot(m[i], v);
  return out;
}

struct PolyBest {
  Rat value;
  int vi = -1, fi = -1;
  bool has = false;
};

// Exact maximum of |x*(Tx)| (or re x*(Tx)) over the incident pairs.
PolyBest poly_incident_best(const PolyPairs& pp, bool real_part) {
  PolyBest best;
  std::vector<QVec> tqv(pp.qverts.size());
  for (const auto& e : pp.entries) {
    if (e.ip != 1) continue;
    QVec& tv = tqv[static_cast<std::size_t>(e.vi)];
    if (tv.empty()) tv = qmatvec(pp.tq, pp.qverts[static_cast<std::size_t>(e.vi)]);
    Rat v = qdot(pp.qfacets[static_cast<std::size_t>(e.fi)], tv);
    Rat obj = real_part ? v : Rat(abs(v));
    if (!best.has || obj > best.value) {
      best.value = obj;
      best.vi = e.vi;
      best.fi = e.fi;
      best.has = true;
    }
  }
  if (!best.has) throw std::runtime_error("no incident pair found");
  return best;
}

StatePair pair_of(const PolyPairs& pp, int vi, int fi, const SpacePtr& xd,
                  double gap) {
  return StatePair{pp.verts[static_cast<std::size_t>(vi)],
                   Functional{pp.facets[static_cast<std::size_t>(fi)], xd},
                   std::max(0.0, gap)};
}

// Schedule over the fixed finite pair set.  The admissible set shrinks as
// delta decreases, so the reported levels are monotone without adjustment.
// Once 1 - delta exceeds every ip < 1 only incident pairs remain and the
// levels are frozen; we run one level past that threshold and stop on the
// usual consecutive-gap rule.
RadiusResult schedule_pairs(const Operator& t, const PolyPairs& pp,
                            bool real_part, const Config& cfg) {
  std::vector<std::pair<double, double>> sched;
  int besti = -1;
  for (int k = 0; k < 60; ++k) {
    double delta = std::pow(0.25, k);
    Rat thr = Rat(1) - rat_of(delta);
    double v = -HUGE_VAL;
    int bi = -1;
    for (int i = 0; i < static_cast<int>(pp.entries.size()); ++i) {
      const auto& e = pp.entries[static_cast<std::size_t>(i)];
      if (!(e.ip > thr)) continue;
      double obj = real_part ? e.val.real() : std::abs(e.val);
      if (obj > v) {
        v = obj;
        bi = i;
      }
    }
    sched.emplace_back(delta, v);
    besti = bi;
    bool frozen = !pp.second_ip || thr > *pp.second_ip;
    if (frozen && k >= 1 &&
        std::abs(sched[static_cast<std::size_t>(k - 1)].second - v) <
            cfg.schedule_tol)
      break;
  }
  RadiusResult r;
  r.delta_schedule = sched;
  r.value = sched.back().second;
  r.exact = false;
  const auto& e = pp.entries[static_cast<std::size_t>(besti)];
  r.witness = pair_of(pp, e.vi, e.fi, dual_space(t.domain, cfg),
                      1.0 - e.ip.get_d());
  return r;
}

double vdelta_pairs(const PolyPairs& pp, double delta) {
  Rat thr = Rat(1) - rat_of(delta);
  double best = -HUGE_VAL;
  for (const auto& e : pp.entries)
    if (e.ip > thr) best = std::max(best, std::abs(e.val));
  if (best == -HUGE_VAL) throw std::runtime_error("no admissible pair");
  return best;
}

// ---------------------------------------------------------------------------
// Relaxed-pair search on non-polyhedral domains: alternating cap
// maximizations of |x*(Tx)| over re x*(x) > 1 - delta, with the cap steps
// solved through norming functionals of Lagrangian mixes.

struct EngState {
  CVec x, f;
  double gap = 0.0;
  Cx val{0.0, 0.0};
  bool ok = false;
};

struct Engine {
  const Operator& t;
  SpacePtr xs, xd;
  const Config& cfg;
  bool real_part;
  bool cheap_dual;

  Engine(const Operator& op, bool re_obj, const Config& c)
      : t(op), xs(op.domain), xd(dual_space(op.domain, c)), cfg(c),
        real_part(re_obj) {
    NormKind k = xs->kind;
    cheap_dual = k == NormKind::lp || k == NormKind::euclidean_weighted ||
                 k == NormKind::polyhedral;
  }

  double score(const Cx& v) const { return real_part ? v.real() : std::abs(v); }

  Cx phase(const Cx& v) const {
    if (real_part) return Cx(1.0, 0.0);
    double a = std::abs(v);
    return a > 1e-300 ? v / a : Cx(1.0, 0.0);
  }

  std::optional<CVec> norming1(const SpacePtr& sp, const CVec& v) const {
    auto fs = norming_functionals(sp, v, 0.0, cfg);
    if (fs.empty()) return std::nullopt;
    return fs.front().coeffs;
  }

  std::optional<EngState> init_state(const CVec& x0) const {
    double n = eval_norm(*xs, x0);
    if (!(n > 1e-12)) return std::nullopt;
    CVec x = x0 / n;
    auto f = norming1(xs, x);
    if (!f) return std::nullopt;
    EngState st;
    st.x = std::move(x);
    st.f = *f;
    st.val = bilin(st.f, CVec(t.m * st.x));
    st.gap = std::max(0.0, 1.0 - bilin(st.f, st.x).real());
    st.ok = true;
    return st;
  }

  std::optional<CVec> cap_f(const CVec& zh, const CVec& x, double mu) const {
    CVec w = zh + mu * x;
    double wn = eval_norm(*xs, w);
    if (!(wn > 1e-14)) return std::nullopt;
    return norming1(xs, CVec(w / wn));
  }

  std::optional<CVec> cap_x(const CVec& hh, const CVec& f, double nu) const {
    CVec w = hh + nu * f;
    double wn = eval_norm(*xd, w);
    if (!(wn > 1e-14)) return std::nullopt;
    return norming1(xd, CVec(w / wn));
  }

  // best functional for the current x
  void f_step(EngState& st, double delta) const {
    CVec tx = t.m * st.x;
    CVec z = std::conj(phase(st.val)) * tx;
    double zn = eval_norm(*xs, z);
    if (!(zn > 1e-14)) return;
    CVec zh = z / zn;
    double dlim = delta * (1.0 - 1e-6);
    double c0 = 1.0 - dlim;

    auto push = [&](const CVec& fc) {
      CVec f = fc;
      if (cheap_dual) {
        double fn = dual_norm(*xs, f);
        if (fn > 1e-14) f /= fn;
      }
      double g = 1.0 - bilin(f, st.x).real();
      if (!(g < delta)) return;
      Cx v = bilin(f, tx);
      if (score(v) > score(st.val)) {
        st.f = std::move(f);
        st.val = v;
        st.gap = std::max(0.0, g);
      }
    };

    auto g0 = norming1(xs, zh);
    if (!g0) return;
    double cg = bilin(*g0, st.x).real();
    if (cg >= c0) {
      push(*g0);
      return;
    }
    // segment from the current functional toward the unconstrained best
    double gc = 1.0 - bilin(st.f, st.x).real();
    double denom = (1.0 - cg) - gc;
    if (denom > 1e-15) {
      double tt = std::clamp((dlim - gc) / denom, 0.0, 1.0);
      push(CVec((1.0 - tt) * st.f + tt * *g0));
    }
    // Lagrangian mix z + mu x, mu raised until the cap constraint holds
    double lo = 0.0, hi = 1.0;
    bool bracket = false;
    for (int e = 0; e < 40; ++e) {
      auto g = cap_f(zh, st.x, hi);
      if (g && bilin(*g, st.x).real() >= c0) {
        bracket = true;
        break;
      }
      lo = hi;
      hi *= 2.0;
    }
    if (!bracket) return;
    for (int e = 0; e < 30; ++e) {
      double mid = 0.5 * (lo + hi);
      auto g = cap_f(zh, st.x, mid);
      if (g && bilin(*g, st.x).real() >= c0)
        hi = mid;
      else
        lo = mid;
    }
    if (auto g = cap_f(zh, st.x, hi)) push(*g);
  }

  // best vector for the current functional
  void x_step(EngState& st, double delta) const {
    CVec h = std::conj(phase(st.val)) * CVec(t.m.transpose() * st.f);
    double hn = eval_norm(*xd, h);
    if (!(hn > 1e-14)) return;
    CVec hh = h / hn;
    double dlim = delta * (1.0 - 1e-6);
    double c0 = 1.0 - dlim;

    auto push = [&](const CVec& uc) {
      CVec u = uc;
      double un = eval_norm(*xs, u);
      if (un > 1e-14) u /= un;
      double g = 1.0 - bilin(st.f, u).real();
      if (!(g < delta)) return;
      Cx v = bilin(st.f, CVec(t.m * u));
      if (score(v) > score(st.val)) {
        st.x = std::move(u);
        st.val = v;
        st.gap = std::max(0.0, g);
      }
    };

    auto u0 = norming1(xd, hh);
    if (!u0) return;
    double cu = bilin(st.f, *u0).real();
    if (cu >= c0) {
      push(*u0);
      return;
    }
    double gc = 1.0 - bilin(st.f, st.x).real();
    double denom = (1.0 - cu) - gc;
    if (denom > 1e-15) {
      double tt = std::clamp((dlim - gc) / denom, 0.0, 1.0);
      push(CVec((1.0 - tt) * st.x + tt * *u0));
    }
    double lo = 0.0, hi = 1.0;
    bool bracket = false;
    for (int e = 0; e < 40; ++e) {
      auto u = cap_x(hh, st.f, hi);
      if (u && bilin(st.f, *u).real() >= c0) {
        bracket = true;
        break;
      }
      lo = hi;
      hi *= 2.0;
    }
    if (!bracket) return;
    for (int e = 0; e < 30; ++e) {
      double mid = 0.5 * (lo + hi);
      auto u = cap_x(hh, st.f, mid);
      if (u && bilin(st.f, *u).real() >= c0)
        hi = mid;
      else
        lo = mid;
    }
    if (auto u = cap_x(hh, st.f, hi)) push(*u);
  }

  void improve(EngState& st, double delta, int iters) const {
    double last = score(st.val);
    int stall = 0;
    for (int it = 0; it < iters; ++it) {
      f_step(st, delta);
      x_step(st, delta);
      double s = score(st.val);
      if (s <= last + 1e-13 * std::max(1.0, std::abs(last))) {
        if (++stall >= 2) break;
      } else {
        stall = 0;
      }
      last = s;
    }
  }
};

CVec random_unit(const Space& s, Rng& rng) {
  CVec x(s.dim);
  for (int i = 0; i < s.dim; ++i) {
    double re = rng.normal();
    double im = s.field == Field::cplx ? rng.normal() : 0.0;
    x[i] = Cx(re, im);
  }
  if (x.norm() < 1e-12) x[0] = 1.0;
  return x;
}

// Spectral seeds on euclidean balls plus the operator-norm witness and a few
// basis vectors; random starts are appended by the callers.
std::vector<CVec> structured_seeds(const Operator& t, bool real_part,
                                   const Config& cfg) {
  std::vector<CVec> out;
  const Space& s = *t.domain;
  const int d = s.dim;
  NormResult nr = op_norm(t, cfg);
  if (nr.witness.size() == d && nr.witness.norm() > 1e-12)
    out.push_back(nr.witness);
  bool euc = (s.kind == NormKind::lp && s.p == 2.0) ||
             s.kind == NormKind::euclidean_weighted;
  if (euc) {
    Eigen::VectorXd sq = Eigen::VectorXd::Ones(d);
    if (s.kind == NormKind::euclidean_weighted)
      for (int i = 0; i < d; ++i) sq[i] = std::sqrt(s.weights[static_cast<std::size_t>(i)]);
    CMat sm(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) sm(i, j) = t.m(i, j) * sq[i] / sq[j];
    auto push_u = [&](const CVec& u) {
      CVec x(d);
      for (int i = 0; i < d; ++i) x[i] = u[i] / sq[i];
      out.push_back(x);
    };
    if (s.field == Field::real) {
      Eigen::MatrixXd re = sm.real();
      Eigen::MatrixXd sym = 0.5 * (re + re.transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
      if (es.info() == Eigen::Success) {
        push_u(es.eigenvectors().col(0).cast<Cx>());
        push_u(es.eigenvectors().col(d - 1).cast<Cx>());
      }
    } else {
      auto top = [&](double th) {
        CMat r = std::polar(1.0, th) * sm;
        CMat herm = 0.5 * (r + CMat(r.adjoint()));
        Eigen::SelfAdjointEigenSolver<CMat> es(herm);
        return std::make_pair(es.eigenvalues()[d - 1],
                              CVec(es.eigenvectors().col(d - 1)));
      };
      if (real_part) {
        push_u(top(0.0).second);
      } else {
        const int grid = 64;
        double bestth = 0.0, bestv = -HUGE_VAL;
        for (int g = 0; g < grid; ++g) {
          double th = 2.0 * M_PI * g / grid;
          double v = top(th).first;
          if (v > bestv) {
            bestv = v;
            bestth = th;
          }
        }
        double a = bestth - 2.0 * M_PI / grid, b = bestth + 2.0 * M_PI / grid;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        double f1 = top(c1).first, f2 = top(c2).first;
        for (int it = 0; it < 40; ++it) {
          if (f1 < f2) {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + gr * (b - a);
            f2 = top(c2).first;
          } else {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - gr * (b - a);
            f1 = top(c1).first;
          }
        }
        push_u(top(0.5 * (a + b)).second);
      }
    }
  }
  for (int i = 0; i < d && i < 6; ++i) {
    CVec e = CVec::Zero(d);
    e[i] = 1.0;
    out.push_back(e);
  }
  return out;
}

std::vector<EngState> run_level(const Engine& eng,
                                const std::vector<CVec>& seeds, double delta,
                                int iters) {
  std::vector<std::vector<EngState>> slots(seeds.size());
  par::for_each(static_cast<long>(seeds.size()), [&](long i) {
    auto st = eng.init_state(seeds[static_cast<std::size_t>(i)]);
    if (!st) return;
    slots[static_cast<std::size_t>(i)].push_back(*st);
    eng.improve(*st, delta, iters);
    slots[static_cast<std::size_t>(i)].push_back(*st);
  });
  std::vector<EngState> out;
  for (auto& sl : slots)
    for (auto& st : sl) out.push_back(std::move(st));
  return out;
}

// gap-0 re-projection of a relaxed state: a classical numerical range sample
// at the same vector
std::optional<EngState> project_state(const Engine& eng, const EngState& st) {
  return eng.init_state(st.x);
}

RadiusResult schedule_smooth(const Operator& t, bool real_part,
                             const Config& cfg) {
  Engine eng(t, real_part, cfg);
  std::vector<CVec> structured = structured_seeds(t, real_part, cfg);
  std::vector<EngState> pool;
  std::vector<std::pair<double, double>> sched;
  auto pool_best = [&](double delta) {
    double v = -HUGE_VAL;
    int bi = -1;
    for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
      const auto& st = pool[static_cast<std::size_t>(i)];
      if (st.gap >= delta) continue;
      double s = eng.score(st.val);
      if (s > v) {
        v = s;
        bi = i;
      }
    }
    return std::make_pair(v, bi);
  };
  for (int k = 0; k < 26; ++k) {
    double delta = std::pow(0.25, k);
    std::vector<CVec> seeds;
    if (k == 0) {
      seeds = structured;
      int want = std::max(cfg.vdelta_starts, static_cast<int>(seeds.size()));
      for (int i = static_cast<int>(seeds.size()); i < want; ++i) {
        Rng rng(mix_seed(cfg.seed ^ kStream, static_cast<std::uint64_t>(i)));
        seeds.push_back(random_unit(*t.domain, rng));
      }
    } else {
      std::vector<int> idx(pool.size());
      for (int i = 0; i < static_cast<int>(idx.size()); ++i)
        idx[static_cast<std::size_t>(i)] = i;
      std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        double sa = eng.score(pool[static_cast<std::size_t>(a)].val);
        double sb = eng.score(pool[static_cast<std::size_t>(b)].val);
        if (sa != sb) return sa > sb;
        return a < b;
      });
      for (int i = 0; i < static_cast<int>(idx.size()) && i < 8; ++i)
        seeds.push_back(pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])].x);
      for (std::size_t i = 0; i < structured.size() && i < 3; ++i)
        seeds.push_back(structured[i]);
      for (int i = 0; i < 4; ++i) {
        Rng rng(mix_seed(cfg.seed ^ kStream,
                         static_cast<std::uint64_t>(k) * 4096 +
                             static_cast<std::uint64_t>(i)));
        seeds.push_back(random_unit(*t.domain, rng));
      }
    }
    int iters = k == 0 ? cfg.vdelta_iters : std::max(12, cfg.vdelta_iters / 4);
    auto found = run_level(eng, seeds, delta, iters);
    for (auto& st : found) {
      if (auto pr = project_state(eng, st)) pool.push_back(std::move(*pr));
      pool.push_back(std::move(st));
    }
    if (pool.empty())
      throw std::runtime_error("numerical radius: no admissible state pairs");
    auto [v, bi] = pool_best(delta);
    (void)bi;
    sched.emplace_back(delta, v);
    // stop once consecutive levels agree AND the level sits on top of the
    // best classical sample; the second clause keeps a v_delta plateau above
    // v(T) (typically at ||T||) from ending the walk early
    double floorv = -HUGE_VAL;
    for (const auto& st : pool)
      if (st.gap <= 1e-9) floorv = std::max(floorv, eng.score(st.val));
    bool settled =
        v - floorv <= std::max(10.0 * cfg.schedule_tol, 1e-6 * std::abs(v));
    if (k >= 1 && settled &&
        std::abs(sched[static_cast<std::size_t>(k - 1)].second - v) <
            cfg.schedule_tol)
      break;
  }
  // recompute every level from the final pool: maxima over nested admissible
  // subsets of one fixed set, hence monotone
  int besti = -1;
  for (std::size_t k = 0; k < sched.size(); ++k) {
    auto [v, bi] = pool_best(sched[k].first);
    sched[k].second = v;
    if (k + 1 == sched.size()) besti = bi;
  }
  RadiusResult r;
  r.delta_schedule = sched;
  r.value = sched.back().second;
  r.exact = false;
  const auto& st = pool[static_cast<std::size_t>(besti)];
  r.witness = StatePair{st.x, Functional{st.f, eng.xd}, st.gap};
  return r;
}

double smooth_level(const Operator& t, double delta, const Config& cfg) {
  Engine eng(t, false, cfg);
  std::vector<CVec> seeds = structured_seeds(t, false, cfg);
  int want = std::max(cfg.vdelta_starts, static_cast<int>(seeds.size()));
  for (int i = static_cast<int>(seeds.size()); i < want; ++i) {
    Rng rng(mix_seed(cfg.seed ^ kStream, 0x70000 + static_cast<std::uint64_t>(i)));
    seeds.push_back(random_unit(*t.domain, rng));
  }
  auto found = run_level(eng, seeds, delta, cfg.vdelta_iters);
  double best = -HUGE_VAL;
  for (const auto& st : found)
    if (st.gap < delta) best = std::max(best, eng.score(st.val));
  if (best == -HUGE_VAL)
    throw std::runtime_error("v_delta: no admissible pair found");
  return best;
}

}  // namespace

std::vector<Cx> numerical_range_sample(const Operator& t, int n_samples,
                                       const Config& cfg) {
  require_endo(t, "numerical_range_sample");
  if (t.domain->polyhedral_capable()) {
    try {
      PolyPairs pp = build_pairs(t, cfg);
      std::vector<QVec> tqv(pp.qverts.size());
      std::set<Rat> vals;
      for (const auto& e : pp.entries) {
        if (e.ip != 1) continue;
        QVec& tv = tqv[static_cast<std::size_t>(e.vi)];
        if (tv.empty())
          tv = qmatvec(pp.tq, pp.qverts[static_cast<std::size_t>(e.vi)]);
        vals.insert(qdot(pp.qfacets[static_cast<std::size_t>(e.fi)], tv));
      }
      std::vector<Cx> out;
      for (const Rat& v : vals) out.emplace_back(v.get_d(), 0.0);
      return out;
    } catch (const std::runtime_error&) {
    }
  }
  std::vector<Cx> out;
  if (n_samples <= 0) return out;
  Rng rng(mix_seed(cfg.seed ^ kStream, 0xFACE));
  int tries = 0;
  while (static_cast<int>(out.size()) < n_samples &&
         tries < 20 * n_samples + 100) {
    ++tries;
    CVec x = random_unit(*t.domain, rng);
    double n = eval_norm(*t.domain, x);
    if (!(n > 1e-12)) continue;
    x /= n;
    auto fs = norming_functionals(t.domain, x, 0.0, cfg);
    if (fs.empty()) continue;
    out.push_back(bilin(fs.front().coeffs, CVec(t.m * x)));
  }
  return out;
}

double v_delta(const Operator& t, double delta,
               const std::optional<std::vector<CVec>>& points,
               const std::optional<std::vector<CVec>>& functionals,
               const Config& cfg) {
  require_endo(t, "v_delta");
  if (!(delta > 0)) throw std::runtime_error("v_delta: delta must be positive");
  if (points || functionals) {
    std::vector<CVec> a = points ? *points : std::vector<CVec>{};
    std::vector<CVec> b = functionals ? *functionals : std::vector<CVec>{};
    if (!points || !functionals) {
      if (!t.domain->polyhedral_capable())
        throw std::runtime_error(
            "v_delta: custom pair sets need both sides on this space");
      const PolyData& pd = ensure_poly(*t.domain, cfg);
      if (!points)
        for (const QVec& v : pd.verts) a.push_back(cvec_of_q(v));
      if (!functionals)
        for (const QVec& f : pd.facets) b.push_back(cvec_of_q(f));
    }
    double best = -HUGE_VAL;
    for (const CVec& x : a)
      for (const CVec& f : b) {
        if (x.size() != t.domain->dim || f.size() != t.domain->dim)
          throw std::runtime_error("v_delta: pair set dimension mismatch");
        if (1.0 - bilin(f, x).real() >= delta) continue;
        best = std::max(best, std::abs(bilin(f, CVec(t.m * x))));
      }
    if (best == -HUGE_VAL)
      throw std::runtime_error("v_delta: no admissible pair in the given sets");
    return best;
  }
  if (t.domain->polyhedral_capable()) {
    try {
      PolyPairs pp = build_pairs(t, cfg);
      return vdelta_pairs(pp, delta);
    } catch (const std::runtime_error&) {
    }
  }
  return smooth_level(t, delta, cfg);
}

RadiusResult numerical_radius(const Operator& t, const Config& cfg) {
  require_endo(t, "numerical_radius");
  if (t.domain->polyhedral_capable()) {
    try {
      PolyPairs pp = build_pairs(t, cfg);
      PolyBest best = poly_incident_best(pp, false);
      RadiusResult r;
      r.value = best.value.get_d();
      r.exact = true;
      r.witness = pair_of(pp, best.vi, best.fi, dual_space(t.domain, cfg), 0.0);
      return r;
    } catch (const std::runtime_error&) {
    }
  }
  return radius_schedule(t, cfg);
}

RadiusResult radius_schedule(const Operator& t, const Config& cfg) {
  require_endo(t, "radius_schedule");
  if (t.domain->polyhedral_capable()) {
    try {
      PolyPairs pp = build_pairs(t, cfg);
      return schedule_pairs(t, pp, false, cfg);
    } catch (const std::runtime_error&) {
    }
  }
  return schedule_smooth(t, false, cfg);
}

DaugavetReport daugavet_defect(const Operator& t, const Config& cfg) {
  require_endo(t, "daugavet_defect");
  const int d = t.domain->dim;
  double nt = op_norm(t, cfg).value;
  Operator idt = make_operator(CMat(t.m + CMat::Identity(d, d)), t.domain,
                               t.codomain);
  double nidt = op_norm(idt, cfg).value;
  double supre = 0.0;
  bool done = false;
  if (t.domain->polyhedral_capable()) {
    try {
      PolyPairs pp = build_pairs(t, cfg);
      supre = poly_incident_best(pp, true).value.get_d();
      done = true;
    } catch (const std::runtime_error&) {
    }
  }
  if (!done) supre = schedule_smooth(t, true, cfg).value;
  DaugavetReport rep;
  rep.defect = 1.0 + nt - nidt;
  rep.sup_re_v = supre;
  rep.norm_t = nt;
  rep.norm_id_plus_t = nidt;
  return rep;
}

}  // namespace banach
