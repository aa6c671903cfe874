#include "banachlab/op.hpp"

#include "banachlab/parallel.hpp"
#include "banachlab/rng.hpp"
#include "banachlab/tensor.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace banach {
namespace {

bool euclidean_kind(const Space& s) {
  return (s.kind == NormKind::lp && s.p == 2.0) ||
         s.kind == NormKind::euclidean_weighted;
}

Eigen::VectorXd sqrt_weights(const Space& s) {
  Eigen::VectorXd w(s.dim);
  for (int i = 0; i < s.dim; ++i)
    w[i] = s.kind == NormKind::euclidean_weighted ? std::sqrt(s.weights[i]) : 1.0;
  return w;
}

QMat rational_matrix(const CMat& m) {
  QMat q(m.rows(), QVec(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c).imag() != 0.0)
        throw std::runtime_error("rational_matrix: complex entries");
      q[r][c] = rat_of(m(r, c).real());
    }
  return q;
}

CVec random_unit(const Space& s, Rng& rng) {
  CVec x(s.dim);
  for (int i = 0; i < s.dim; ++i) {
    double re = rng.normal();
    double im = s.field == Field::cplx ? rng.normal() : 0.0;
    x[i] = Cx(re, im);
  }
  double n = eval_norm(s, x);
  if (n == 0) {
    x.setZero();
    x[0] = 1;
    n = eval_norm(s, x);
  }
  return x / n;
}

// Subgradient of x -> ||Tx||_Y at a point with Tx != 0, as an ascent
// direction on the realified domain coordinates.
CVec ascent_direction(const Operator& t, const CVec& x, const CVec& tx,
                      double ntx, const Config& cfg) {
  CVec g;
  auto fs = norming_functionals(t.codomain, tx / ntx, 1e-9, cfg);
  if (!fs.empty()) {
    g = fs.front().coeffs;
  } else {
    // central-difference gradient of the codomain norm at tx/ntx
    const Space& y = *t.codomain;
    CVec base = tx / ntx;
    g.resize(y.dim);
    double h = 1e-6;
    for (int j = 0; j < y.dim; ++j) {
      CVec p = base, q = base;
      p[j] += h;
      q[j] -= h;
      double gre = (eval_norm(y, p) - eval_norm(y, q)) / (2 * h);
      double gim = 0;
      if (y.field == Field::cplx) {
        p = base;
        q = base;
        p[j] += Cx(0, h);
        q[j] -= Cx(0, h);
        gim = (eval_norm(y, p) - eval_norm(y, q)) / (2 * h);
      }
      g[j] = Cx(gre, -gim);
    }
  }
  CVec h = t.m.transpose() * g;  // functional x -> g(Tx)
  CVec dir = h.conjugate();      // gradient of re g(T .)
  if (t.domain->field == Field::real)
    for (int i = 0; i < dir.size(); ++i) dir[i] = dir[i].real();
  return dir;
}

double ascent_from(const Operator& t, CVec x, const Config& cfg, CVec* out) {
  const Space& xs = *t.domain;
  const Space& ys = *t.codomain;
  double best = eval_norm(ys, t.m * x);
  double step = 0.5;
  for (int it = 0; it < cfg.opnorm_iters; ++it) {
    CVec tx = t.m * x;
    double ntx = eval_norm(ys, tx);
    if (ntx == 0) break;
    CVec dir = ascent_direction(t, x, tx, ntx, cfg);
    CVec cand = x + step * dir;
    double nc = eval_norm(xs, cand);
    if (nc == 0) break;
    cand /= nc;
    double v = eval_norm(ys, t.m * cand);
    if (v > best + 1e-15) {
      best = v;
      x = cand;
    } else {
      step *= 0.5;
      if (step < 1e-12) break;
    }
  }
  if (out) *out = x;
  return best;
}

NormResult compute_norm(const Operator& t, const Config& cfg) {
  NormResult res;
  const Space& xs = *t.domain;
  const Space& ys = *t.codomain;

  if (xs.polyhedral_capable()) {
    try {
      const PolyData& pd = ensure_poly(xs, cfg);
      bool exact_codomain = true;
      QMat tq;
      try {
        tq = rational_matrix(t.m);
      } catch (const std::runtime_error&) {
        exact_codomain = false;
      }
      Rat best_q = 0;
      double best_d = 0;
      std::size_t arg = 0;
      for (std::size_t k = 0; k < pd.verts.size(); ++k) {
        if (exact_codomain) {
          QVec img(ys.dim, Rat(0));
          for (int r = 0; r < ys.dim; ++r)
            for (int c = 0; c < xs.dim; ++c) img[r] += tq[r][c] * pd.verts[k][c];
          try {
            Rat n = eval_norm_exact(ys, img, cfg);
            if (n > best_q) {
              best_q = n;
              arg = k;
            }
            continue;
          } catch (const std::runtime_error&) {
            exact_codomain = false;
            best_d = best_q.get_d();
          }
        }
        double n = eval_norm(ys, t.m * cvec_of(pd.verts_d[k]));
        if (n > best_d) {
          best_d = n;
          arg = k;
        }
      }
      res.exact = true;
      res.method = "vertex-max";
      res.witness = cvec_of(pd.verts_d[arg]);
      if (exact_codomain) {
        res.value_exact = best_q;
        res.value = best_q.get_d();
      } else {
        res.value = best_d;
      }
      return res;
    } catch (const std::runtime_error&) {
      // guardrail exceeded: fall through to the heuristic
    }
  }

  if (euclidean_kind(xs) && euclidean_kind(ys) && xs.field == ys.field) {
    Eigen::VectorXd dx = sqrt_weights(xs), dy = sqrt_weights(ys);
    CMat scaled = dy.asDiagonal() * t.m * dx.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<CMat> svd(scaled, Eigen::ComputeThinV);
    res.value = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    CVec v = svd.matrixV().col(0);
    res.witness = dx.cwiseInverse().asDiagonal() * v;
    res.exact = true;
    res.method = "svd";
    return res;
  }

  auto run_start = [&](long k) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    CVec x0 = random_unit(xs, rng);
    return ascent_from(t, x0, cfg, nullptr);
  };
  par::Best b = par::argmax(cfg.opnorm_starts, run_start);
  Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(b.index)));
  CVec x0 = random_unit(xs, rng);
  CVec wit;
  res.value = ascent_from(t, x0, cfg, &wit);
  res.witness = wit;
  res.exact = false;
  res.method = "multistart";
  return res;
}

}  // namespace

Operator make_operator(CMat m, SpacePtr domain, SpacePtr codomain) {
  if (!domain || !codomain) throw std::invalid_argument("make_operator: null space");
  if (m.rows() != codomain->dim || m.cols() != domain->dim)
    throw std::invalid_argument("make_operator: matrix shape mismatch");
  if (domain->field != codomain->field)
    throw std::invalid_argument("make_operator: mixed scalar fields");
  if (domain->field == Field::real)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        if (m(r, c).imag() != 0.0)
          throw std::invalid_argument("make_operator: complex entries on a real space");
  Operator t;
  t.m = std::move(m);
  t.domain = std::move(domain);
  t.codomain = std::move(codomain);
  t.cache = std::make_shared<Operator::Cache>();
  return t;
}

Operator identity(const SpacePtr& x) {
  return make_operator(CMat::Identity(x->dim, x->dim), x, x);
}

Operator rank_one(const CVec& f, const CVec& y, const SpacePtr& domain,
                  const SpacePtr& codomain) {
  if (f.size() != domain->dim || y.size() != codomain->dim)
    throw std::invalid_argument("rank_one: size mismatch");
  CMat m = y * f.transpose();
  return make_operator(std::move(m), domain, codomain);
}

NormResult op_norm(const Operator& t, const Config& cfg) {
  std::call_once(t.cache->once,
                 [&] { t.cache->norm = std::make_shared<NormResult>(compute_norm(t, cfg)); });
  return *t.cache->norm;
}

Operator compose(const Operator& a, const Operator& b) {
  if (!same_space(*a.domain, *b.codomain))
    throw std::invalid_argument("compose: inner spaces disagree");
  return make_operator(a.m * b.m, b.domain, a.codomain);
}

Operator adjoint(const Operator& t, const Config& cfg) {
  return make_operator(t.m.adjoint(), dual_space(t.codomain, cfg),
                       dual_space(t.domain, cfg));
}

CVec vec_of_operator(const Operator& t) {
  int dx = t.domain->dim, dy = t.codomain->dim;
  CVec v(dx * dy);
  for (int i = 0; i < dx; ++i)
    for (int j = 0; j < dy; ++j) v[i * dy + j] = t.m(j, i);
  return v;
}

Operator operator_of_vec(const CVec& v, const SpacePtr& x, const SpacePtr& y) {
  int dx = x->dim, dy = y->dim;
  if (v.size() != dx * dy) throw std::invalid_argument("operator_of_vec: size mismatch");
  CMat m(dy, dx);
  for (int i = 0; i < dx; ++i)
    for (int j = 0; j < dy; ++j) m(j, i) = v[i * dy + j];
  return make_operator(std::move(m), x, y);
}

SpacePtr operator_space(const SpacePtr& x, const SpacePtr& y, const Config& cfg) {
  if (x->field != y->field)
    throw std::invalid_argument("operator_space: mixed scalar fields");
  if (x->dim * y->dim > cfg.op_space_max_dim)
    throw std::runtime_error("operator_space: dimension guardrail exceeded");
  auto s = std::make_shared<Space>();
  s->label = "L(" + x->label + "," + y->label + ")";
  s->dim = x->dim * y->dim;
  s->field = x->field;
  s->kind = NormKind::operator_space;
  s->a = x;
  s->b = y;
  SpacePtr xc = x, yc = y;
  s->oracle = [xc, yc, cfg](const CVec& v) {
    return op_norm(operator_of_vec(v, xc, yc), cfg).value;
  };
  // Trace duality: L(X,Y)* = X (pi) Y*, and the pairing of coordinate
  // vectors is the plain dot product under the shared vec convention.
  s->dual_oracle = [xc, yc, cfg](const CVec& v) {
    return eval_norm(*tensor_space(xc, dual_space(yc, cfg), NormKind::tensor_pi, cfg), v);
  };
  s->make_dual = [xc, yc, cfg]() {
    return tensor_space(xc, dual_space(yc, cfg), NormKind::tensor_pi, cfg);
  };
  return s;
}

}  // namespace banach
