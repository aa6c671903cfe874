#include "banachlab/numindex.hpp"

#include "banachlab/dd.hpp"
#include "banachlab/detail/statepairs.hpp"
#include "banachlab/lp.hpp"
#include "banachlab/parallel.hpp"
#include "banachlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>

namespace banach {
namespace {

constexpr unsigned long long kStream = 0x1DEA5ULL;

// Coefficients of T -> f(Tv) on vec(T), vec[i*d + j] = T(j, i).
QVec pair_row(const QVec& v, const QVec& f) {
  const int d = static_cast<int>(v.size());
  QVec row(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) row[i * d + j] = v[i] * f[j];
  return row;
}

struct PairProblem {
  const PolyData* pd = nullptr;
  std::vector<std::pair<int, int>> incident;
  QMat rows;
};

PairProblem incident_problem(const Space& s, const Config& cfg) {
  PairProblem pp;
  pp.pd = &ensure_poly(s, cfg);
  const Rat one(1);
  for (std::size_t vi = 0; vi < pp.pd->verts.size(); ++vi)
    for (std::size_t fi = 0; fi < pp.pd->facets.size(); ++fi)
      if (qdot(pp.pd->facets[fi], pp.pd->verts[vi]) == one) {
        pp.incident.push_back({static_cast<int>(vi), static_cast<int>(fi)});
        pp.rows.push_back(pair_row(pp.pd->verts[vi], pp.pd->facets[fi]));
      }
  return pp;
}

// Exact operator norm of vec(T): max |f(Tv)| over every (vertex, facet) pair.
Rat op_norm_exact_vec(const PolyData& pd, const QVec& t, int d) {
  Rat best(0);
  for (const QVec& v : pd.verts) {
    for (const QVec& f : pd.facets) {
      Rat acc(0);
      for (int i = 0; i < d; ++i) {
        if (v[i] == 0) continue;
        Rat inner(0);
        for (int j = 0; j < d; ++j) inner += f[j] * t[i * d + j];
        acc += v[i] * inner;
      }
      if (acc < 0) acc = -acc;
      if (acc > best) best = acc;
    }
  }
  return best;
}

Operator operator_of_qvec(const QVec& t, const SpacePtr& x) {
  CVec v(static_cast<Eigen::Index>(t.size()));
  for (std::size_t k = 0; k < t.size(); ++k) v[static_cast<Eigen::Index>(k)] = t[k].get_d();
  return operator_of_vec(v, x, x);
}

// --- estimate machinery ---------------------------------------------------

CMat mat_of_vars(const Eigen::VectorXd& z, int d, bool cplx) {
  CMat m(d, d);
  const int dd = d * d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      m(j, i) = Cx(z[i * d + j], cplx ? z[dd + i * d + j] : 0.0);
  return m;
}

void push_vars(std::vector<Eigen::VectorXd>& out, const CMat& m, int nvar, bool cplx) {
  const int d = static_cast<int>(m.rows());
  const int dd = d * d;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(nvar);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      z[i * d + j] = m(j, i).real();
      if (cplx) z[dd + i * d + j] = m(j, i).imag();
    }
  out.push_back(std::move(z));
}

using QuickSet = detail::StatePairs;

QuickSet build_quick(const SpacePtr& x, int count, unsigned long long salt, const Config& cfg) {
  return detail::build_state_pairs(x, count, kStream ^ salt, cfg);
}

double quick_v(const QuickSet& q, const CMat& m) { return detail::pairs_v(q, m); }
double quick_norm(const QuickSet& q, const CMat& m) { return detail::pairs_norm(q, m); }

// Numerical radius of a 2x2 complex matrix through the elliptical range
// theorem: W(A) is the ellipse with foci at the eigenvalues and minor axis
// sqrt(tr(A*A) - |l1|^2 - |l2|^2).
double ellipse_v(const CMat& m) {
  const Cx tr = m(0, 0) + m(1, 1);
  const Cx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Cx disc = std::sqrt(tr * tr - 4.0 * det);
  const Cx l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
  const double fro2 = m.cwiseAbs2().sum();
  const double minor2 = std::max(0.0, fro2 - std::norm(l1) - std::norm(l2));
  const Cx c = 0.5 * (l1 + l2);
  const Cx diff = l1 - l2;
  const double a = 0.5 * std::sqrt(minor2 + std::norm(diff));
  const double b = 0.5 * std::sqrt(minor2);
  const Cx dir = std::abs(diff) > 1e-15 ? diff / std::abs(diff) : Cx(1, 0);
  // max over the ellipse c + dir*(a cos t + i b sin t); the cross term
  // vanishes, so for fixed cos t the sine sign is free.
  const double alpha = (std::conj(c) * dir).real() * a;
  const double beta = std::abs((std::conj(c) * dir * Cx(0, 1)).real()) * b;
  const double c2 = std::norm(c) + b * b;
  const double quad = a * a - b * b;
  auto g = [&](double u) { return c2 + quad * u * u + 2.0 * alpha * u + 2.0 * beta * std::sqrt(std::max(0.0, 1.0 - u * u)); };
  double bu = -1.0, bg = g(-1.0);
  for (int i = 1; i <= 128; ++i) {
    double u = -1.0 + 2.0 * i / 128.0;
    double gu = g(u);
    if (gu > bg) {
      bg = gu;
      bu = u;
    }
  }
  double lo = std::max(-1.0, bu - 2.0 / 128.0), hi = std::min(1.0, bu + 2.0 / 128.0);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double u1 = hi - gr * (hi - lo), u2 = lo + gr * (hi - lo);
  double g1 = g(u1), g2 = g(u2);
  for (int it = 0; it < 48; ++it) {
    if (g1 < g2) {
      lo = u1;
      u1 = u2;
      g1 = g2;
      u2 = lo + gr * (hi - lo);
      g2 = g(u2);
    } else {
      hi = u2;
      u2 = u1;
      g2 = g1;
      u1 = hi - gr * (hi - lo);
      g1 = g(u1);
    }
  }
  return std::sqrt(std::max({bg, g1, g2}));
}

double theta_scan_v(const CMat& m) {
  auto lmax = [&](double th) {
    CMat r = std::polar(1.0, th) * m;
    CMat h = 0.5 * (r + r.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    return es.eigenvalues().maxCoeff();
  };
  const double tau = 2.0 * M_PI;
  double bt = 0.0, bv = lmax(0.0);
  for (int i = 1; i < 48; ++i) {
    double th = tau * i / 48.0;
    double v = lmax(th);
    if (v > bv) {
      bv = v;
      bt = th;
    }
  }
  double lo = bt - tau / 48.0, hi = bt + tau / 48.0;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double t1 = hi - gr * (hi - lo), t2 = lo + gr * (hi - lo);
  double v1 = lmax(t1), v2 = lmax(t2);
  for (int it = 0; it < 40; ++it) {
    if (v1 < v2) {
      lo = t1;
      t1 = t2;
      v1 = v2;
      t2 = lo + gr * (hi - lo);
      v2 = lmax(t2);
    } else {
      hi = t2;
      t2 = t1;
      v2 = v1;
      t1 = hi - gr * (hi - lo);
      v1 = lmax(t1);
    }
  }
  return std::max({bv, v1, v2});
}

struct InnerEval {
  int nvar = 0;
  bool cplx = false;
  bool subgrad = false;
  bool central = true;  // central differences; sampled evaluators use forward
  Eigen::MatrixXd P, N;  // polyhedral pair tables, v = |Pz|_inf, norm = |Nz|_inf
  std::function<double(const Eigen::VectorXd&)> vfun, nfun;
};

InnerEval poly_inner(const SpacePtr& x, const Config& cfg) {
  const Space& s = *x;
  const PolyData& pd = ensure_poly(s, cfg);
  const int d = s.dim, dd = d * d;
  InnerEval ev;
  ev.cplx = false;
  ev.nvar = dd;
  ev.subgrad = true;
  std::vector<Eigen::VectorXd> inc, all;
  for (std::size_t vi = 0; vi < pd.verts.size(); ++vi)
    for (std::size_t fi = 0; fi < pd.facets.size(); ++fi) {
      Eigen::VectorXd row(dd);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) row[i * d + j] = pd.verts_d[vi][i] * pd.facets_d[fi][j];
      all.push_back(row);
      if (qdot(pd.facets[fi], pd.verts[vi]) == Rat(1)) inc.push_back(row);
    }
  ev.P.resize(static_cast<Eigen::Index>(inc.size()), dd);
  for (std::size_t k = 0; k < inc.size(); ++k) ev.P.row(static_cast<Eigen::Index>(k)) = inc[k];
  ev.N.resize(static_cast<Eigen::Index>(all.size()), dd);
  for (std::size_t k = 0; k < all.size(); ++k) ev.N.row(static_cast<Eigen::Index>(k)) = all[k];
  return ev;
}

InnerEval euclid_inner(const SpacePtr& x) {
  const Space& s = *x;
  const int d = s.dim;
  Eigen::VectorXd sq(d);
  for (int i = 0; i < d; ++i) sq[i] = std::sqrt(s.weights.empty() ? 1.0 : s.weights[i]);
  const bool cplx = s.field == Field::cplx;
  InnerEval ev;
  ev.cplx = cplx;
  ev.nvar = (cplx ? 2 : 1) * d * d;
  auto similar = [d, sq, cplx](const Eigen::VectorXd& z) {
    CMat a = mat_of_vars(z, d, cplx);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) a(r, c) *= sq[r] / sq[c];
    return a;
  };
  if (!cplx) {
    ev.vfun = [similar](const Eigen::VectorXd& z) {
      CMat a = similar(z);
      Eigen::MatrixXd h = 0.5 * (a.real() + a.real().transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      return es.eigenvalues().cwiseAbs().maxCoeff();
    };
  } else if (d == 2) {
    ev.vfun = [similar](const Eigen::VectorXd& z) { return ellipse_v(similar(z)); };
  } else {
    ev.vfun = [similar](const Eigen::VectorXd& z) { return theta_scan_v(similar(z)); };
  }
  ev.nfun = [similar](const Eigen::VectorXd& z) {
    Eigen::JacobiSVD<CMat> svd(similar(z));
    return svd.singularValues()[0];
  };
  return ev;
}

InnerEval quick_inner(const SpacePtr& x, const Config& cfg) {
  const Space& s = *x;
  InnerEval ev;
  ev.cplx = s.field == Field::cplx;
  ev.nvar = (ev.cplx ? 2 : 1) * s.dim * s.dim;
  auto qs = std::make_shared<QuickSet>(build_quick(x, 48, 0x9A1EULL, cfg));
  ev.central = false;
  const int d = s.dim;
  const bool cplx = ev.cplx;
  ev.vfun = [qs, d, cplx](const Eigen::VectorXd& z) { return quick_v(*qs, mat_of_vars(z, d, cplx)); };
  ev.nfun = [qs, d, cplx](const Eigen::VectorXd& z) { return quick_norm(*qs, mat_of_vars(z, d, cplx)); };
  return ev;
}

bool is_euclid(const Space& s) {
  return s.kind == NormKind::euclidean_weighted || (s.kind == NormKind::lp && s.p == 2.0);
}

InnerEval make_inner(const SpacePtr& x, const Config& cfg) {
  const Space& s = *x;
  if (s.polyhedral_capable() && s.dim <= cfg.poly_convert_max_dim) {
    try {
      return poly_inner(x, cfg);
    } catch (const std::exception&) {
    }
  }
  if (is_euclid(s)) return euclid_inner(x);
  return quick_inner(x, cfg);
}

double inner_v(const InnerEval& ev, const Eigen::VectorXd& z) {
  return ev.subgrad ? (ev.P * z).cwiseAbs().maxCoeff() : ev.vfun(z);
}

double inner_n(const InnerEval& ev, const Eigen::VectorXd& z) {
  return ev.subgrad ? (ev.N * z).cwiseAbs().maxCoeff() : ev.nfun(z);
}

struct StartOut {
  double ratio = HUGE_VAL;
  Eigen::VectorXd z;
};

// Minimizes v(z) on the sphere |z|_op = 1: subgradient steps on polyhedral
// tables, central differences elsewhere, then a shrinking jitter polish.
StartOut descend(const InnerEval& ev, Eigen::VectorXd z, int iters, unsigned long long tag,
                 const Config& cfg) {
  StartOut out;
  double nn = inner_n(ev, z);
  if (!(nn > 1e-12)) return out;
  z /= nn;
  out.ratio = inner_v(ev, z);
  out.z = z;
  Eigen::VectorXd g(ev.nvar);
  for (int it = 0; it < iters; ++it) {
    double v = inner_v(ev, z);
    if (ev.subgrad) {
      Eigen::VectorXd pv = ev.P * z, nv2 = ev.N * z;
      Eigen::Index kp, kn;
      pv.cwiseAbs().maxCoeff(&kp);
      nv2.cwiseAbs().maxCoeff(&kn);
      const double sp = pv[kp] >= 0 ? 1.0 : -1.0;
      const double sn = nv2[kn] >= 0 ? 1.0 : -1.0;
      g = sp * ev.P.row(kp).transpose() - v * sn * ev.N.row(kn).transpose();
    } else {
      const double h = 1e-4;
      auto ratio = [&](const Eigen::VectorXd& w) {
        const double n2 = ev.nfun(w);
        return n2 > 1e-12 ? ev.vfun(w) / n2 : HUGE_VAL;
      };
      const double r0 = ev.central ? 0.0 : v;  // z is normalized, so the ratio is v
      for (int k = 0; k < ev.nvar; ++k) {
        Eigen::VectorXd zp = z;
        zp[k] += h;
        const double rp = ratio(zp);
        if (ev.central) {
          Eigen::VectorXd zm = z;
          zm[k] -= h;
          g[k] = (rp - ratio(zm)) / (2.0 * h);
        } else {
          g[k] = (rp - r0) / h;
        }
      }
    }
    const double eta = (ev.subgrad ? 0.5 : 0.35) / (1.0 + 4.0 * it / std::max(1, iters));
    z -= eta * g;
    nn = inner_n(ev, z);
    if (!(nn > 1e-12)) break;
    z /= nn;
    const double r = inner_v(ev, z);
    if (r < out.ratio) {
      out.ratio = r;
      out.z = z;
    }
  }
  // jitter polish around the best point seen
  Rng rng(mix_seed(cfg.seed, kStream ^ (0xF1AEULL + tag)));
  z = out.z;
  double scale = 0.02;
  const int polish = std::min(400, std::max(40, iters / 2));
  for (int it = 0; it < polish; ++it) {
    Eigen::VectorXd w = z;
    for (int k = 0; k < ev.nvar; ++k) w[k] += scale * rng.normal();
    nn = inner_n(ev, w);
    if (nn > 1e-12) {
      w /= nn;
      const double r = inner_v(ev, w);
      if (r < out.ratio) {
        out.ratio = r;
        out.z = w;
        z = w;
      }
    }
    scale *= 0.975;
  }
  return out;
}

CMat factor_witness(const SpacePtr& f, const Config& cfg) {
  const Space& s = *f;
  const int d = s.dim;
  if (s.polyhedral_capable() && d * d <= cfg.exact_index_max_dim_sq) {
    try {
      return numerical_index_exact(f, cfg).witness_operator.m;
    } catch (const std::exception&) {
    }
  }
  CMat m = CMat::Zero(d, d);
  if (d >= 2) {
    if (s.field == Field::real) {
      m(0, 1) = -1;
      m(1, 0) = 1;
    } else {
      m(0, 1) = 1;
    }
  } else {
    m(0, 0) = 1;
  }
  return m;
}

std::vector<Eigen::VectorXd> seed_list(const SpacePtr& x, const InnerEval& ev, int starts,
                                       const Config& cfg) {
  const Space& s = *x;
  const int d = s.dim;
  std::vector<Eigen::VectorXd> seeds;
  push_vars(seeds, CMat::Identity(d, d), ev.nvar, ev.cplx);
  if (d >= 2) {
    CMat m = CMat::Zero(d, d);
    if (s.field == Field::real) {
      m(0, 1) = -1;
      m(1, 0) = 1;
    } else {
      m(0, 1) = 1;
    }
    push_vars(seeds, m, ev.nvar, ev.cplx);
  }
  if (s.kind == NormKind::tensor_pi || s.kind == NormKind::tensor_eps) {
    // lifted factor witnesses: S (x) Id and Id (x) S
    const int dA = s.a->dim, dB = s.b->dim;
    CMat wa = factor_witness(s.a, cfg), wb = factor_witness(s.b, cfg);
    CMat l1 = CMat::Zero(d, d), l2 = CMat::Zero(d, d);
    for (int i2 = 0; i2 < dA; ++i2)
      for (int j2 = 0; j2 < dB; ++j2)
        for (int i1 = 0; i1 < dA; ++i1)
          for (int j1 = 0; j1 < dB; ++j1) {
            if (j1 == j2) l1(i2 * dB + j2, i1 * dB + j1) = wa(i2, i1);
            if (i1 == i2) l2(i2 * dB + j2, i1 * dB + j1) = wb(j2, j1);
          }
    push_vars(seeds, l1, ev.nvar, ev.cplx);
    push_vars(seeds, l2, ev.nvar, ev.cplx);
  }
  if (s.kind == NormKind::operator_space) {
    // pre/post composition by factor witnesses
    const int dA = s.a->dim, dB = s.b->dim;
    CMat j = factor_witness(s.a, cfg), w = factor_witness(s.b, cfg);
    CMat pre = CMat::Zero(d, d), post = CMat::Zero(d, d);
    for (int i = 0; i < dA; ++i)
      for (int jj = 0; jj < dB; ++jj)
        for (int k = 0; k < dA; ++k) pre(i * dB + jj, k * dB + jj) = j(k, i);
    for (int i = 0; i < dA; ++i)
      for (int jj = 0; jj < dB; ++jj)
        for (int k = 0; k < dB; ++k) post(i * dB + jj, i * dB + k) = w(jj, k);
    push_vars(seeds, pre, ev.nvar, ev.cplx);
    push_vars(seeds, post, ev.nvar, ev.cplx);
  }
  if (s.polyhedral_capable() && s.dim <= cfg.poly_convert_max_dim) {
    const PolyData& pd = ensure_poly(s, cfg);
    int pushed = 0;
    for (std::size_t vi = 0; vi < pd.verts_d.size() && pushed < 24; ++vi)
      for (std::size_t fi = 0; fi < pd.facets_d.size() && pushed < 24; ++fi, ++pushed) {
        CMat m(d, d);
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) m(r, c) = pd.verts_d[vi][r] * pd.facets_d[fi][c];
        push_vars(seeds, m, ev.nvar, ev.cplx);
      }
  }
  if (static_cast<int>(seeds.size()) > starts) seeds.resize(starts);
  int k = 0;
  while (static_cast<int>(seeds.size()) < starts) {
    Rng rng(mix_seed(cfg.seed, kStream ^ (0x51A7ULL + 131 * k++)));
    Eigen::VectorXd z(ev.nvar);
    for (int i = 0; i < ev.nvar; ++i) z[i] = rng.normal();
    seeds.push_back(std::move(z));
  }
  return seeds;
}

bool cheap_radius_kind(const Space& s) {
  return s.kind == NormKind::lp || s.kind == NormKind::polyhedral ||
         s.kind == NormKind::euclidean_weighted ||
         (s.polyhedral_capable() && s.dim <= 8);
}

}  // namespace

IndexCertificate numerical_index_exact(const SpacePtr& x, const Config& cfg) {
  const Space& s = *x;
  if (s.field != Field::real || !s.polyhedral_capable())
    throw std::runtime_error("numerical_index_exact: real polyhedral spaces only");
  const int d = s.dim, dd = d * d;
  if (dd > cfg.exact_index_max_dim_sq)
    throw std::runtime_error("numerical_index_exact: dim^2 exceeds the exact guardrail");
  PairProblem pp = incident_problem(s, cfg);

  IndexCertificate cert;
  cert.exact = true;
  cert.method = "polyhedral-enumeration";

  if (qrank(pp.rows) < dd) {
    // pair functionals do not span: some nonzero T has v(T) = 0
    QVec nz = qnullspace(pp.rows, dd).front();
    Rat nn = op_norm_exact_vec(*pp.pd, nz, d);
    cert.value = 0.0;
    cert.value_exact = Rat(0);
    cert.witness_value = 0.0;
    cert.witness_operator = operator_of_qvec(qscale(nz, Rat(1) / nn), x);
    return cert;
  }

  // n(X) = 1 / max{ ||T|| : T in Q }, Q = { |f(Tv)| <= 1 on incident pairs }
  Rat best(0);
  QVec bestt;
  if (dd <= 9) {
    QMat hrep;
    hrep.reserve(2 * pp.rows.size());
    for (const QVec& r : pp.rows) {
      hrep.push_back(r);
      hrep.push_back(qscale(r, Rat(-1)));
    }
    for (const QVec& t : enumerate_vertices(hrep, dd)) {
      Rat nn = op_norm_exact_vec(*pp.pd, t, d);
      if (nn > best) {
        best = nn;
        bestt = t;
      }
    }
  } else {
    // ||T|| = max over atoms (u, g) of g(Tu): one exact LP per atom over Q
    QMat a;
    QVec b;
    a.reserve(2 * pp.rows.size());
    for (const QVec& r : pp.rows) {
      a.push_back(r);
      a.push_back(qscale(r, Rat(-1)));
      b.push_back(Rat(1));
      b.push_back(Rat(1));
    }
    QMat atoms;
    for (const QVec& v : pp.pd->verts)
      for (const QVec& f : pp.pd->facets) {
        QVec c = pair_row(v, f);
        auto nzit = std::find_if(c.begin(), c.end(), [](const Rat& r) { return r != 0; });
        if (nzit == c.end() || *nzit < 0) continue;  // antipodal atom covered by symmetry
        atoms.push_back(std::move(c));
      }
    std::vector<Rat> vals(atoms.size(), Rat(0));
    std::vector<QVec> sols(atoms.size());
    std::vector<char> ok(atoms.size(), 0);
    par::for_each(static_cast<long>(atoms.size()), [&](long i) {
      LpResult r = lp_max_ineq(a, b, atoms[i]);
      if (r.status == LpStatus::optimal) {
        vals[i] = r.value;
        sols[i] = r.x;
        ok[i] = 1;
      }
    });
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (!ok[i]) throw std::runtime_error("numerical_index_exact: atom LP failed");
      if (vals[i] > best) {
        best = vals[i];
        bestt = sols[i];
      }
    }
    // the LP optimum sits on the boundary of Q, so v(bestt) = 1 exactly
  }
  if (!(best > 0)) throw std::runtime_error("numerical_index_exact: empty feasible set");
  Rat nval = Rat(1) / best;
  cert.value_exact = nval;
  cert.value = nval.get_d();
  cert.witness_value = cert.value;
  cert.witness_operator = operator_of_qvec(qscale(bestt, nval), x);
  return cert;
}

IndexCertificate numerical_index_estimate(const SpacePtr& x, int budget, const Config& cfg) {
  const Space& s = *x;
  if (s.dim <= 0) throw std::invalid_argument("numerical_index_estimate: empty space");
  InnerEval ev = make_inner(x, cfg);
  const int iters = cfg.index_iters;
  int starts = cfg.index_starts;
  if (budget > 0) starts = std::max(1, std::min(starts, budget / std::max(1, iters)));
  auto seeds = seed_list(x, ev, starts, cfg);
  starts = static_cast<int>(seeds.size());

  std::vector<StartOut> slot(starts);
  par::for_each(starts, [&](long i) {
    slot[i] = descend(ev, seeds[i], iters, static_cast<unsigned long long>(i), cfg);
  });
  int win = -1;
  double bestr = HUGE_VAL;
  for (int i = 0; i < starts; ++i)
    if (slot[i].ratio < bestr) {
      bestr = slot[i].ratio;
      win = i;
    }
  if (win < 0) throw std::runtime_error("numerical_index_estimate: no usable start");

  // recompute the winner with the honest evaluators
  CMat wm = mat_of_vars(slot[win].z, s.dim, ev.cplx);
  IndexCertificate cert;
  cert.exact = false;
  cert.method = "multistart";
  if (cheap_radius_kind(s)) {
    NormResult nr = op_norm(make_operator(wm, x, x), cfg);
    CMat scaled = wm * Cx(1.0 / nr.value, 0.0);
    Operator w = make_operator(scaled, x, x);
    RadiusResult rr = numerical_radius(w, cfg);
    cert.value = std::min(rr.value, 1.0);
    cert.witness_value = rr.value;
    cert.witness_operator = w;
  } else {
    // kinds whose norm oracle is too slow for an ascent: normalize by a large
    // sampled pair table instead, a lower bound of the true norm
    QuickSet qs = build_quick(x, 512, 0xB16ULL, cfg);
    double nn = quick_norm(qs, wm);
    if (!(nn > 1e-12)) throw std::runtime_error("numerical_index_estimate: zero winner");
    CMat scaled = wm * Cx(1.0 / nn, 0.0);
    double vv = quick_v(qs, scaled);
    cert.value = std::min(vv, 1.0);
    cert.witness_value = vv;
    cert.witness_operator = make_operator(scaled, x, x);
  }
  return cert;
}

double index_upper_certificate(const SpacePtr& x, const Operator& t, const Config& cfg) {
  if (!same_space(*t.domain, *x) || !same_space(*t.codomain, *x))
    throw std::invalid_argument("index_upper_certificate: not an endomorphism of x");
  if (t.m.size() == 0 || t.m.norm() == 0.0)
    throw std::invalid_argument("index_upper_certificate: zero operator");
  NormResult nr = op_norm(t, cfg);
  CMat scaled = t.m * Cx(1.0 / nr.value, 0.0);
  RadiusResult rr = numerical_radius(make_operator(scaled, t.domain, t.codomain), cfg);
  return rr.value;
}

}  // namespace banach
