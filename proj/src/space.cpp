#include "banachlab/space.hpp"

#include "banachlab/dd.hpp"
#include "banachlab/parallel.hpp"
#include "banachlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace banach {
namespace {

std::vector<double> dmirror(const QVec& q) { return dvec_of(q); }

void fill_mirrors(PolyData& pd) {
  pd.verts_d.clear();
  pd.facets_d.clear();
  for (const QVec& v : pd.verts) pd.verts_d.push_back(dmirror(v));
  for (const QVec& f : pd.facets) pd.facets_d.push_back(dmirror(f));
}

std::vector<QVec> signed_units(int dim) {
  std::vector<QVec> pts;
  for (int i = 0; i < dim; ++i) {
    for (int sg : {1, -1}) {
      QVec v(dim, Rat(0));
      v[i] = sg;
      pts.push_back(std::move(v));
    }
  }
  return pts;
}

std::vector<QVec> sign_vectors(int dim) {
  if (dim > 12) throw std::runtime_error("sign_vectors: dimension too large");
  std::vector<QVec> pts;
  for (int m = 0; m < (1 << dim); ++m) {
    QVec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = (m >> i) & 1 ? Rat(-1) : Rat(1);
    pts.push_back(std::move(v));
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

double lp_norm(double p, const CVec& x) {
  if (std::isinf(p)) {
    double m = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i]));
    return m;
  }
  if (p == 1.0) {
    double s = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += std::abs(x[i]);
    return s;
  }
  if (p == 2.0) return x.norm();
  double s = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), p);
  return std::pow(s, 1.0 / p);
}

double conjugate_exponent(double p) {
  if (p == 1.0) return HUGE_VAL;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

// The pairing is bilinear throughout: sum f_i x_i, no conjugation.
Cx pair_sum(const CVec& f, const CVec& x) {
  return (f.array() * x.array()).sum();
}

}  // namespace

QVec real_qvec(const CVec& x) {
  QVec q(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i].imag() != 0.0)
      throw std::invalid_argument("expected a real vector");
    q[i] = rat_of(x[i].real());
  }
  return q;
}

bool Space::polyhedral_capable() const {
  if (field != Field::real) return false;
  switch (kind) {
    case NormKind::lp:
      return is_l1() || is_linf();
    case NormKind::polyhedral:
      return true;
    case NormKind::tensor_pi:
    case NormKind::tensor_eps:
    case NormKind::operator_space:
      return a && b && a->polyhedral_capable() && b->polyhedral_capable();
    case NormKind::dual_of:
      return a && a->polyhedral_capable();
    default:
      return false;
  }
}

SpacePtr make_lp(const std::string& label, int dim, double p, Field field) {
  if (dim <= 0) throw std::invalid_argument("make_lp: dim must be positive");
  if (!(p >= 1.0)) throw std::invalid_argument("make_lp: need p >= 1");
  auto s = std::make_shared<Space>();
  s->label = label;
  s->dim = dim;
  s->field = field;
  s->kind = NormKind::lp;
  s->p = p;
  return s;
}

SpacePtr make_polyhedral(const std::string& label, std::vector<QVec> vertices) {
  if (vertices.empty()) throw std::invalid_argument("make_polyhedral: no vertices");
  int dim = static_cast<int>(vertices[0].size());
  for (const QVec& v : vertices)
    if (static_cast<int>(v.size()) != dim)
      throw std::invalid_argument("make_polyhedral: ragged vertex list");
  auto s = std::make_shared<Space>();
  s->label = label;
  s->dim = dim;
  s->field = Field::real;
  s->kind = NormKind::polyhedral;
  auto pd = std::make_shared<PolyData>();
  pd->verts = std::move(vertices);
  std::sort(pd->verts.begin(), pd->verts.end());
  s->poly = std::move(pd);  // facets completed on first ensure_poly
  return s;
}

SpacePtr make_euclidean_weighted(const std::string& label,
                                 std::vector<double> weights, Field field) {
  if (weights.empty())
    throw std::invalid_argument("make_euclidean_weighted: empty weights");
  for (double w : weights)
    if (!(w > 0)) throw std::invalid_argument("make_euclidean_weighted: weights must be positive");
  auto s = std::make_shared<Space>();
  s->label = label;
  s->dim = static_cast<int>(weights.size());
  s->field = field;
  s->kind = NormKind::euclidean_weighted;
  s->weights = std::move(weights);
  return s;
}

const PolyData& ensure_poly(const Space& s, const Config& cfg) {
  if (!s.polyhedral_capable())
    throw std::runtime_error("space '" + s.label + "': no polyhedral data for this norm kind");
  std::call_once(s.poly_once, [&] {
    auto pd = s.poly ? std::make_shared<PolyData>(*s.poly)
                     : std::make_shared<PolyData>();
    auto guard = [&](const char* what) {
      if (s.dim > cfg.poly_convert_max_dim)
        throw std::runtime_error(std::string("space '") + s.label + "': " + what +
                                 " refused above dimension " +
                                 std::to_string(cfg.poly_convert_max_dim));
    };
    switch (s.kind) {
      case NormKind::lp:
        if (s.is_l1()) {
          pd->verts = signed_units(s.dim);
          pd->facets = sign_vectors(s.dim);
        } else {
          pd->verts = sign_vectors(s.dim);
          pd->facets = signed_units(s.dim);
        }
        std::sort(pd->verts.begin(), pd->verts.end());
        std::sort(pd->facets.begin(), pd->facets.end());
        break;
      case NormKind::polyhedral: {
        guard("vertex/facet conversion");
        pd->facets = facets_of_hull(pd->verts, s.dim);
        // polarity back prunes points that were not extreme
        pd->verts = enumerate_vertices(QMat(pd->facets.begin(), pd->facets.end()), s.dim);
        break;
      }
      case NormKind::operator_space: {
        guard("operator-ball conversion");
        const PolyData& pa = ensure_poly(*s.a, cfg);
        const PolyData& pb = ensure_poly(*s.b, cfg);
        int dy = s.b->dim;
        QMat rows;
        for (const QVec& x : pa.verts) {
          for (const QVec& g : pb.facets) {
            QVec r(s.dim);
            for (int i = 0; i < s.a->dim; ++i)
              for (int j = 0; j < dy; ++j) r[i * dy + j] = x[i] * g[j];
            rows.push_back(std::move(r));
          }
        }
        pd->verts = enumerate_vertices(rows, s.dim);
        pd->facets = facets_of_hull(pd->verts, s.dim);
        break;
      }
      case NormKind::tensor_pi: {
        guard("tensor-ball conversion");
        const PolyData& pa = ensure_poly(*s.a, cfg);
        const PolyData& pb = ensure_poly(*s.b, cfg);
        int dy = s.b->dim;
        std::vector<QVec> prods;
        for (const QVec& v : pa.verts) {
          for (const QVec& w : pb.verts) {
            QVec r(s.dim);
            for (int i = 0; i < s.a->dim; ++i)
              for (int j = 0; j < dy; ++j) r[i * dy + j] = v[i] * w[j];
            prods.push_back(std::move(r));
          }
        }
        std::sort(prods.begin(), prods.end());
        prods.erase(std::unique(prods.begin(), prods.end()), prods.end());
        pd->facets = facets_of_hull(prods, s.dim);
        pd->verts = enumerate_vertices(QMat(pd->facets.begin(), pd->facets.end()), s.dim);
        break;
      }
      case NormKind::tensor_eps: {
        guard("tensor-ball conversion");
        const PolyData& pa = ensure_poly(*s.a, cfg);
        const PolyData& pb = ensure_poly(*s.b, cfg);
        int dy = s.b->dim;
        QMat rows;
        for (const QVec& f : pa.facets) {
          for (const QVec& g : pb.facets) {
            QVec r(s.dim);
            for (int i = 0; i < s.a->dim; ++i)
              for (int j = 0; j < dy; ++j) r[i * dy + j] = f[i] * g[j];
            rows.push_back(std::move(r));
          }
        }
        pd->verts = enumerate_vertices(rows, s.dim);
        pd->facets = facets_of_hull(pd->verts, s.dim);
        break;
      }
      case NormKind::dual_of: {
        const PolyData& inner = ensure_poly(*s.a, cfg);
        pd->verts = inner.facets;
        pd->facets = inner.verts;
        break;
      }
      default:
        throw std::runtime_error("space '" + s.label + "': no polyhedral data");
    }
    fill_mirrors(*pd);
    s.poly = std::move(pd);
  });
  return *s.poly;
}

double eval_norm(const Space& s, const CVec& x) {
  if (x.size() != s.dim) throw std::invalid_argument("eval_norm: dimension mismatch");
  switch (s.kind) {
    case NormKind::lp:
      return lp_norm(s.p, x);
    case NormKind::polyhedral: {
      const PolyData& pd = ensure_poly(s);
      QVec q = real_qvec(x);
      Rat best = 0;
      for (const QVec& f : pd.facets) best = std::max(best, Rat(qdot(f, q)));
      return best.get_d();
    }
    case NormKind::euclidean_weighted: {
      double s2 = 0;
      for (Eigen::Index i = 0; i < x.size(); ++i)
        s2 += s.weights[i] * std::norm(x[i]);
      return std::sqrt(s2);
    }
    default:
      if (!s.oracle) throw std::runtime_error("space '" + s.label + "': no norm oracle");
      return s.oracle(x);
  }
}

double eval_norm_fast(const Space& s, const CVec& x) {
  if (s.kind != NormKind::lp && s.kind != NormKind::euclidean_weighted &&
      s.polyhedral_capable()) {
    try {
      const PolyData& pd = ensure_poly(s);
      double best = 0;
      for (const auto& f : pd.facets_d) {
        double v = 0;
        for (int i = 0; i < s.dim; ++i) v += f[i] * x[i].real();
        best = std::max(best, v);
      }
      return best;
    } catch (const std::runtime_error&) {
      // above the conversion guardrail: use the oracle below
    }
  }
  return eval_norm(s, x);
}

Rat eval_norm_exact(const Space& s, const QVec& x, const Config& cfg) {
  if (static_cast<int>(x.size()) != s.dim)
    throw std::invalid_argument("eval_norm_exact: dimension mismatch");
  if (s.field != Field::real)
    throw std::runtime_error("eval_norm_exact: real spaces only");
  if (s.is_l1()) {
    Rat t = 0;
    for (const Rat& q : x) t += abs(q);
    return t;
  }
  if (s.is_linf()) {
    Rat t = 0;
    for (const Rat& q : x) t = std::max(t, Rat(abs(q)));
    return t;
  }
  if (s.polyhedral_capable()) {
    const PolyData& pd = ensure_poly(s, cfg);
    Rat best = 0;
    for (const QVec& f : pd.facets) best = std::max(best, Rat(qdot(f, x)));
    return best;
  }
  throw std::runtime_error("space '" + s.label + "': no exact norm path");
}

double dual_norm(const Space& s, const CVec& f) {
  if (f.size() != s.dim) throw std::invalid_argument("dual_norm: dimension mismatch");
  switch (s.kind) {
    case NormKind::lp:
      return lp_norm(conjugate_exponent(s.p), f);
    case NormKind::polyhedral: {
      const PolyData& pd = ensure_poly(s);
      QVec q = real_qvec(f);
      Rat best = 0;
      for (const QVec& v : pd.verts) best = std::max(best, Rat(abs(qdot(v, q))));
      return best.get_d();
    }
    case NormKind::euclidean_weighted: {
      double s2 = 0;
      for (Eigen::Index i = 0; i < f.size(); ++i)
        s2 += std::norm(f[i]) / s.weights[i];
      return std::sqrt(s2);
    }
    default:
      if (s.dual_oracle) return s.dual_oracle(f);
      return dual_norm_ascent(s, f, default_config());
  }
}

Rat dual_norm_exact(const Space& s, const QVec& f, const Config& cfg) {
  if (static_cast<int>(f.size()) != s.dim)
    throw std::invalid_argument("dual_norm_exact: dimension mismatch");
  if (s.field != Field::real)
    throw std::runtime_error("dual_norm_exact: real spaces only");
  if (s.is_l1()) {
    Rat t = 0;
    for (const Rat& q : f) t = std::max(t, Rat(abs(q)));
    return t;
  }
  if (s.is_linf()) {
    Rat t = 0;
    for (const Rat& q : f) t += abs(q);
    return t;
  }
  if (s.polyhedral_capable()) {
    const PolyData& pd = ensure_poly(s, cfg);
    Rat best = 0;
    for (const QVec& v : pd.verts) best = std::max(best, Rat(abs(qdot(v, f))));
    return best;
  }
  throw std::runtime_error("space '" + s.label + "': no exact dual norm path");
}

double dual_norm_ascent(const Space& s, const CVec& f, const Config& cfg) {
  // Maximizes the scale-invariant ratio |f(d)| / ||d|| by coordinate pattern
  // search on the realified coordinates.  Gradient steps with radial
  // retraction stall here: d proportional to conj(f) is a fixed point of
  // normalize(d + t conj(f)) whatever t is, so probing one coordinate at a
  // time is what escapes the ray and reaches the extreme point.
  const bool cplx = s.field == Field::cplx;
  const int nreal = s.dim * (cplx ? 2 : 1);
  auto ratio = [&](const CVec& d) {
    double nd = eval_norm(s, d);
    if (!(nd > 0)) return 0.0;
    return std::abs(pair_sum(f, d)) / nd;
  };
  auto run_start = [&](long k) {
    CVec d(s.dim);
    if (k == 0) {
      d = f.conjugate();
      if (!cplx)
        for (int i = 0; i < s.dim; ++i) d[i] = d[i].real();
    } else {
      Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(k)));
      for (int i = 0; i < s.dim; ++i)
        d[i] = Cx(rng.normal(), cplx ? rng.normal() : 0.0);
    }
    double nd = eval_norm(s, d);
    if (!(nd > 0)) return 0.0;
    d /= nd;
    double best = ratio(d);
    double h = 1.0;
    for (int it = 0; it < cfg.opnorm_iters && h > 1e-14; ++it) {
      bool moved = false;
      for (int k2 = 0; k2 < nreal; ++k2)
        for (double sgn : {1.0, -1.0}) {
          CVec c = d;
          int i = cplx ? k2 / 2 : k2;
          c[i] += (cplx && (k2 % 2)) ? Cx(0, sgn * h) : Cx(sgn * h, 0);
          double v = ratio(c);
          if (v > best) {
            best = v;
            d = c;
            moved = true;
          }
        }
      if (moved) {
        double nn = eval_norm(s, d);
        if (nn > 0) d /= nn;
      } else {
        h *= 0.5;
      }
    }
    return best;
  };
  par::Best b = par::argmax(cfg.opnorm_starts, run_start);
  return b.value;
}

std::vector<Functional> norming_functionals(const SpacePtr& s, const CVec& x,
                                            double delta, const Config& cfg) {
  double nx = eval_norm(*s, x);
  if (std::abs(nx - 1.0) > cfg.opt_tol)
    throw std::invalid_argument("norming_functionals: x is not on the unit sphere");
  std::vector<Functional> out;
  const Space& sp = *s;
  if (sp.polyhedral_capable()) {
    // Facet route; derived kinds above the conversion guardrail fall through
    // to the gradient path below.
    try {
      const PolyData& pd = ensure_poly(sp, cfg);
      QVec q = real_qvec(x);
      for (std::size_t k = 0; k < pd.facets.size(); ++k) {
        Rat val = qdot(pd.facets[k], q);
        double dv = val.get_d();
        bool take = delta == 0.0 ? std::abs(dv - 1.0) <= 1e-9 : dv > 1.0 - delta;
        if (take) out.push_back({cvec_of(pd.facets_d[k]), s});
      }
      return out;
    } catch (const std::runtime_error&) {
      if (sp.kind == NormKind::polyhedral || sp.kind == NormKind::lp) throw;
    }
  }
  CVec f(sp.dim);
  switch (sp.kind) {
    case NormKind::lp: {
      if (sp.is_l1()) {
        for (int i = 0; i < sp.dim; ++i) {
          double m = std::abs(x[i]);
          f[i] = m == 0 ? Cx(0, 0) : std::conj(x[i]) / m;
        }
      } else if (sp.is_linf()) {
        int arg = 0;
        double m = 0;
        for (int i = 0; i < sp.dim; ++i)
          if (std::abs(x[i]) > m) {
            m = std::abs(x[i]);
            arg = i;
          }
        f.setZero();
        f[arg] = std::conj(x[arg]) / std::abs(x[arg]);
      } else {
        for (int i = 0; i < sp.dim; ++i) {
          double m = std::abs(x[i]);
          f[i] = m == 0 ? Cx(0, 0) : std::conj(x[i]) * std::pow(m, sp.p - 2.0);
        }
        f /= std::pow(nx, sp.p - 1.0);
      }
      break;
    }
    case NormKind::euclidean_weighted: {
      for (int i = 0; i < sp.dim; ++i) f[i] = sp.weights[i] * std::conj(x[i]);
      break;
    }
    default: {
      // norm gradient through central differences on the realified space
      double h = 1e-6;
      for (int i = 0; i < sp.dim; ++i) {
        CVec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        double gre = (eval_norm(sp, xp) - eval_norm(sp, xm)) / (2 * h);
        double gim = 0;
        if (sp.field == Field::cplx) {
          xp = x;
          xm = x;
          xp[i] += Cx(0, h);
          xm[i] -= Cx(0, h);
          gim = (eval_norm(sp, xp) - eval_norm(sp, xm)) / (2 * h);
        }
        f[i] = Cx(gre, -gim);
      }
      double nf = dual_norm(sp, f);
      if (nf <= 0) return out;
      f /= nf;
      break;
    }
  }
  Cx act = Cx(0, 0);
  for (int i = 0; i < sp.dim; ++i) act += f[i] * x[i];
  double slack = delta == 0.0 ? 1e-7 : 0.0;
  if (act.real() > 1.0 - delta - slack && dual_norm(sp, f) <= 1.0 + 1e-7)
    out.push_back({std::move(f), s});
  return out;
}

std::vector<QVec> extreme_points(const Space& s, const Config& cfg) {
  if (!s.polyhedral_capable())
    throw std::runtime_error("space '" + s.label +
                             "': extreme point enumeration needs a polyhedral norm");
  return ensure_poly(s, cfg).verts;
}

SpacePtr dual_space(const SpacePtr& s, const Config& cfg) {
  const Space& sp = *s;
  std::string dlabel = sp.label + "*";
  switch (sp.kind) {
    case NormKind::lp:
      return make_lp(dlabel, sp.dim, conjugate_exponent(sp.p), sp.field);
    case NormKind::polyhedral: {
      const PolyData& pd = ensure_poly(sp, cfg);
      return make_polyhedral(dlabel, pd.facets);
    }
    case NormKind::euclidean_weighted: {
      std::vector<double> w;
      w.reserve(sp.weights.size());
      for (double wi : sp.weights) w.push_back(1.0 / wi);
      return make_euclidean_weighted(dlabel, std::move(w), sp.field);
    }
    default:
      if (sp.make_dual) return sp.make_dual();
      if (sp.kind == NormKind::dual_of && sp.a) return sp.a;
      throw std::runtime_error("space '" + sp.label + "': no dual construction");
  }
}

bool same_space(const Space& x, const Space& y) {
  return x.dim == y.dim && x.field == y.field && x.kind == y.kind &&
         x.label == y.label;
}

}  // namespace banach
