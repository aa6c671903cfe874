#include "banachlab/tensor.hpp"

#include "banachlab/parallel.hpp"
#include "banachlab/rng.hpp"

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

QMat rational_coeffs(const CMat& c) {
  QMat q(c.rows(), QVec(c.cols()));
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      if (c(i, j).imag() != 0.0)
        throw std::runtime_error("rational_coeffs: complex entries");
      q[i][j] = rat_of(c(i, j).real());
    }
  return q;
}

bool poly_pair(const TensorElement& u, const Config& cfg) {
  return u.left->polyhedral_capable() && u.right->polyhedral_capable() &&
         u.left->dim * u.right->dim <= cfg.op_space_max_dim &&
         u.left->field == Field::real && u.right->field == Field::real;
}

CVec random_dual_unit(const Space& s, Rng& rng) {
  CVec f(s.dim);
  for (int i = 0; i < s.dim; ++i) {
    double re = rng.normal();
    double im = s.field == Field::cplx ? rng.normal() : 0.0;
    f[i] = Cx(re, im);
  }
  double n = dual_norm(s, f);
  if (n == 0) {
    f.setZero();
    f[0] = 1;
    n = dual_norm(s, f);
  }
  return f / n;
}

}  // namespace

TensorElement make_tensor(CMat c, SpacePtr left, SpacePtr right) {
  if (!left || !right) throw std::invalid_argument("make_tensor: null factor");
  if (c.rows() != left->dim || c.cols() != right->dim)
    throw std::invalid_argument("make_tensor: coefficient shape mismatch");
  if (left->field != right->field)
    throw std::invalid_argument("make_tensor: mixed scalar fields");
  if (left->field == Field::real)
    for (Eigen::Index i = 0; i < c.rows(); ++i)
      for (Eigen::Index j = 0; j < c.cols(); ++j)
        if (c(i, j).imag() != 0.0)
          throw std::invalid_argument("make_tensor: complex entries on real factors");
  TensorElement u;
  u.c = std::move(c);
  u.left = std::move(left);
  u.right = std::move(right);
  u.cache = std::make_shared<TensorElement::Cache>();
  return u;
}

TensorElement tensor_of_vec(const CVec& v, const SpacePtr& x, const SpacePtr& y) {
  if (v.size() != x->dim * y->dim)
    throw std::invalid_argument("tensor_of_vec: size mismatch");
  CMat c(x->dim, y->dim);
  for (int i = 0; i < x->dim; ++i)
    for (int j = 0; j < y->dim; ++j) c(i, j) = v[i * y->dim + j];
  return make_tensor(std::move(c), x, y);
}

CVec vec_of_tensor(const TensorElement& u) {
  CVec v(u.left->dim * u.right->dim);
  for (int i = 0; i < u.left->dim; ++i)
    for (int j = 0; j < u.right->dim; ++j) v[i * u.right->dim + j] = u.c(i, j);
  return v;
}

namespace {

EpsResult compute_eps(const TensorElement& u, const Config& cfg) {
  EpsResult res;
  const Space& xs = *u.left;
  const Space& ys = *u.right;

  if (poly_pair(u, cfg)) {
    const PolyData& px = ensure_poly(xs, cfg);
    const PolyData& py = ensure_poly(ys, cfg);
    QMat cq = rational_coeffs(u.c);
    Rat best = 0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < px.facets.size(); ++i) {
      for (std::size_t j = 0; j < py.facets.size(); ++j) {
        Rat s = 0;
        for (int a = 0; a < xs.dim; ++a)
          for (int b = 0; b < ys.dim; ++b)
            s += px.facets[i][a] * py.facets[j][b] * cq[a][b];
        if (abs(s) > best) {
          best = abs(s);
          bi = i;
          bj = j;
        }
      }
    }
    res.value_exact = best;
    res.value = best.get_d();
    res.left_witness = cvec_of(px.facets_d[bi]);
    res.right_witness = cvec_of(py.facets_d[bj]);
    res.exact = true;
    res.method = "dual-vertex-pairs";
    return res;
  }

  if (euclidean_kind(xs) && euclidean_kind(ys)) {
    Eigen::VectorXd dx = sqrt_weights(xs), dy = sqrt_weights(ys);
    CMat m = dx.asDiagonal() * u.c * dy.asDiagonal();
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    res.value = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    res.left_witness = dx.asDiagonal() * svd.matrixU().col(0).conjugate();
    res.right_witness = dy.asDiagonal() * svd.matrixV().col(0);
    res.exact = true;
    res.method = "svd";
    return res;
  }

  // alternating maximization: each half-step is a norming-functional pick
  auto run_start = [&](long k) {
    Rng rng(mix_seed(cfg.seed ^ 0xE55ULL, static_cast<std::uint64_t>(k)));
    CVec ystar = random_dual_unit(ys, rng);
    double best = 0;
    for (int it = 0; it < 40; ++it) {
      CVec v = u.c * ystar;  // element of X
      double nv = eval_norm(xs, v);
      if (nv == 0) break;
      auto fx = norming_functionals(u.left, v / nv, 1e-9, cfg);
      if (fx.empty()) break;
      CVec xstar = fx.front().coeffs;
      CVec w = u.c.transpose() * xstar;  // element of Y
      double nw = eval_norm(ys, w);
      if (nw == 0) break;
      auto fy = norming_functionals(u.right, w / nw, 1e-9, cfg);
      if (fy.empty()) break;
      ystar = fy.front().coeffs;
      if (nw <= best + 1e-14) {
        best = std::max(best, nw);
        break;
      }
      best = nw;
    }
    return best;
  };
  par::Best b = par::argmax(cfg.opnorm_starts, run_start);
  res.value = b.value;
  res.exact = false;
  res.method = "alternating";
  // rebuild the winning pair for the witness
  {
    Rng rng(mix_seed(cfg.seed ^ 0xE55ULL, static_cast<std::uint64_t>(b.index)));
    CVec ystar = random_dual_unit(ys, rng);
    CVec xstar = CVec::Zero(xs.dim);
    for (int it = 0; it < 40; ++it) {
      CVec v = u.c * ystar;
      double nv = eval_norm(xs, v);
      if (nv == 0) break;
      auto fx = norming_functionals(u.left, v / nv, 1e-9, cfg);
      if (fx.empty()) break;
      xstar = fx.front().coeffs;
      CVec w = u.c.transpose() * xstar;
      double nw = eval_norm(ys, w);
      if (nw == 0) break;
      auto fy = norming_functionals(u.right, w / nw, 1e-9, cfg);
      if (fy.empty()) break;
      CVec ynext = fy.front().coeffs;
      if (nw >= b.value - 1e-12) {
        ystar = ynext;
        break;
      }
      ystar = ynext;
    }
    res.left_witness = xstar;
    res.right_witness = ystar;
  }
  return res;
}

// sup{ <B,u> : ||B|| <= 1 in L(X, Y*) }, which by trace duality equals the
// projective norm of u.  Exact column/row formulas for l1 factors, exact
// vertex maximization for polyhedral pairs, normalized ascent otherwise.
struct SupportResult {
  double value = 0.0;
  bool exact = false;
  std::string method;
  CMat witness;  // dy x dx matrix of B, pairing sum_ij c_ij B(j,i)
  std::optional<Rat> value_exact;
};

SupportResult support_opball(const TensorElement& u, const Config& cfg) {
  SupportResult res;
  const Space& xs = *u.left;
  const Space& ys = *u.right;
  int dx = xs.dim, dy = ys.dim;

  if (xs.is_l1()) {
    // ball of L(l1, Y*) is a product of Y*-balls over columns
    res.value = 0;
    res.witness = CMat::Zero(dy, dx);
    Rat total = 0;
    bool all_exact = true;
    for (int i = 0; i < dx; ++i) {
      CVec row = u.c.row(i).transpose();
      double n = eval_norm(ys, row);
      res.value += n;
      if (all_exact) {
        try {
          total += eval_norm_exact(ys, real_qvec(row), cfg);
        } catch (const std::exception&) {
          all_exact = false;
        }
      }
      if (n > 0) {
        auto fs = norming_functionals(u.right, row / n, 1e-9, cfg);
        if (!fs.empty()) res.witness.col(i) = fs.front().coeffs;
      }
    }
    if (all_exact) res.value_exact = total;
    res.exact = true;
    res.method = "l1-rows";
    return res;
  }
  if (ys.is_l1()) {
    res.value = 0;
    res.witness = CMat::Zero(dy, dx);
    Rat total = 0;
    bool all_exact = true;
    for (int j = 0; j < dy; ++j) {
      CVec col = u.c.col(j);
      double n = eval_norm(xs, col);
      res.value += n;
      if (all_exact) {
        try {
          total += eval_norm_exact(xs, real_qvec(col), cfg);
        } catch (const std::exception&) {
          all_exact = false;
        }
      }
      if (n > 0) {
        auto fs = norming_functionals(u.left, col / n, 1e-9, cfg);
        if (!fs.empty()) res.witness.row(j) = fs.front().coeffs.transpose();
      }
    }
    if (all_exact) res.value_exact = total;
    res.exact = true;
    res.method = "l1-cols";
    return res;
  }

  if (poly_pair(u, cfg) && dx * dy <= cfg.poly_convert_max_dim) {
    SpacePtr lxy = operator_space(u.left, dual_space(u.right, cfg), cfg);
    const PolyData& pd = ensure_poly(*lxy, cfg);
    QMat cq = rational_coeffs(u.c);
    QVec uv(dx * dy);
    for (int i = 0; i < dx; ++i)
      for (int j = 0; j < dy; ++j) uv[i * dy + j] = cq[i][j];
    Rat best = 0;
    std::size_t arg = 0;
    bool found = false;
    for (std::size_t k = 0; k < pd.verts.size(); ++k) {
      Rat s = qdot(pd.verts[k], uv);
      if (!found || s > best) {
        best = s;
        arg = k;
        found = true;
      }
    }
    res.value_exact = best;
    res.value = best.get_d();
    res.exact = true;
    res.method = "opball-vertices";
    res.witness = CMat::Zero(dy, dx);
    for (int i = 0; i < dx; ++i)
      for (int j = 0; j < dy; ++j)
        res.witness(j, i) = pd.verts_d[arg][i * dy + j];
    return res;
  }

  // heuristic: normalized ascent of the linear objective over the ball,
  // with reduced-budget operator norms inside
  Config inner = cfg;
  inner.opnorm_starts = 8;
  inner.opnorm_iters = 120;
  SpacePtr ydual = dual_space(u.right, cfg);
  auto opnorm_of = [&](const CMat& b) {
    return op_norm(make_operator(b, u.left, ydual), inner).value;
  };
  auto run_start = [&](long k) {
    Rng rng(mix_seed(cfg.seed ^ 0x5D7ULL, static_cast<std::uint64_t>(k)));
    CMat b(dy, dx);
    for (int j = 0; j < dy; ++j)
      for (int i = 0; i < dx; ++i)
        b(j, i) = Cx(rng.normal(),
                     xs.field == Field::cplx ? rng.normal() : 0.0);
    double nb = opnorm_of(b);
    if (nb == 0) return 0.0;
    b /= nb;
    auto score = [&](const CMat& m) {
      Cx s = 0;
      for (int i = 0; i < dx; ++i)
        for (int j = 0; j < dy; ++j) s += u.c(i, j) * m(j, i);
      return s.real();
    };
    double best = score(b);
    double step = 0.5;
    for (int it = 0; it < 80; ++it) {
      CMat grad(dy, dx);
      for (int i = 0; i < dx; ++i)
        for (int j = 0; j < dy; ++j) grad(j, i) = std::conj(u.c(i, j));
      if (xs.field == Field::real) grad = grad.real().cast<Cx>();
      CMat cand = b + step * grad;
      double nc = opnorm_of(cand);
      if (nc == 0) break;
      cand /= nc;
      double v = score(cand);
      if (v > best + 1e-12) {
        best = v;
        b = cand;
      } else {
        step *= 0.5;
        if (step < 1e-10) break;
      }
    }
    return best;
  };
  par::Best b = par::argmax(std::min(cfg.opnorm_starts, 16), run_start);
  res.value = b.value;
  res.exact = false;
  res.method = "opball-ascent";
  res.witness = CMat::Zero(dy, dx);
  return res;
}

double decomposition_cost(const std::vector<RankOneTerm>& terms,
                          const Space& xs, const Space& ys) {
  double s = 0;
  for (const auto& t : terms)
    s += eval_norm_fast(xs, t.x) * eval_norm_fast(ys, t.y);
  return s;
}

// Local search over decompositions connected by the transfer moves
// (x_i, y_i), (x_j, y_j) -> (x_i + t x_j, y_i), (x_j, y_j - t y_i), which
// preserve the represented tensor.  The one-dimensional cost in t is convex,
// so a short ternary search finds the step.
double primal_search(const TensorElement& u, const Config& cfg,
                     std::vector<RankOneTerm>* out) {
  const Space& xs = *u.left;
  const Space& ys = *u.right;
  int dx = xs.dim, dy = ys.dim;
  int r = dx * dy;

  auto init_terms = [&]() {
    std::vector<RankOneTerm> terms(r);
    for (int i = 0; i < dx; ++i) {
      terms[i].x = CVec::Zero(dx);
      terms[i].x[i] = 1;
      terms[i].y = u.c.row(i).transpose();
    }
    for (int k = dx; k < r; ++k) {
      terms[k].x = CVec::Zero(dx);
      terms[k].y = CVec::Zero(dy);
    }
    return terms;
  };

  auto improve = [&](std::vector<RankOneTerm>& terms, Rng& rng, int iters) {
    for (int it = 0; it < iters; ++it) {
      int i = static_cast<int>(rng.next() % r);
      int j = static_cast<int>(rng.next() % r);
      if (i == j) continue;
      bool xside = rng.next() & 1;
      auto cost_at = [&](double t) {
        if (xside) {
          CVec xi = terms[i].x + t * terms[j].x;
          CVec yj = terms[j].y - t * terms[i].y;
          double c = eval_norm_fast(xs, xi) * eval_norm_fast(ys, terms[i].y) +
                     eval_norm_fast(xs, terms[j].x) * eval_norm_fast(ys, yj);
          return c;
        }
        CVec yi = terms[i].y + t * terms[j].y;
        CVec xj = terms[j].x - t * terms[i].x;
        return eval_norm_fast(xs, terms[i].x) * eval_norm_fast(ys, yi) +
               eval_norm_fast(xs, xj) * eval_norm_fast(ys, terms[j].y);
      };
      double base = cost_at(0.0);
      double lo = -4.0, hi = 4.0;
      for (int probe = 0; probe < 48; ++probe) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (cost_at(m1) <= cost_at(m2))
          hi = m2;
        else
          lo = m1;
      }
      double t = 0.5 * (lo + hi);
      double cand = cost_at(t);
      if (cand < base - 1e-13) {
        if (xside) {
          terms[i].x += t * terms[j].x;
          terms[j].y -= t * terms[i].y;
        } else {
          terms[i].y += t * terms[j].y;
          terms[j].x -= t * terms[i].x;
        }
      }
    }
    return decomposition_cost(terms, xs, ys);
  };

  long nstarts = std::max(4, cfg.opnorm_starts / 4);
  auto start_value = [&](long s) {
    Rng rng(mix_seed(cfg.seed ^ 0x9117ULL, static_cast<std::uint64_t>(s)));
    auto terms = init_terms();
    // jiggle: a few random transfers to decorrelate the starts
    for (int w = 0; w < 8 * static_cast<int>(s % 4); ++w) {
      int i = static_cast<int>(rng.next() % r);
      int j = static_cast<int>(rng.next() % r);
      if (i == j) continue;
      double t = rng.normal();
      terms[i].x += t * terms[j].x;
      terms[j].y -= t * terms[i].y;
    }
    return improve(terms, rng, cfg.opnorm_iters);
  };
  par::Best best = par::argmin(nstarts, start_value);

  // rebuild the winner for the witness
  Rng rng(mix_seed(cfg.seed ^ 0x9117ULL, static_cast<std::uint64_t>(best.index)));
  auto terms = init_terms();
  for (int w = 0; w < 8 * static_cast<int>(best.index % 4); ++w) {
    int i = static_cast<int>(rng.next() % r);
    int j = static_cast<int>(rng.next() % r);
    if (i == j) continue;
    double t = rng.normal();
    terms[i].x += t * terms[j].x;
    terms[j].y -= t * terms[i].y;
  }
  double val = improve(terms, rng, cfg.opnorm_iters);
  if (out) *out = terms;
  return val;
}

PiResult compute_pi(const TensorElement& u, const Config& cfg) {
  PiResult res;
  const Space& xs = *u.left;
  const Space& ys = *u.right;

  if (euclidean_kind(xs) && euclidean_kind(ys)) {
    Eigen::VectorXd dxw = sqrt_weights(xs), dyw = sqrt_weights(ys);
    CMat m = dxw.asDiagonal() * u.c * dyw.asDiagonal();
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double total = svd.singularValues().sum();
    res.value = res.primal = res.dual = total;
    res.exact = true;
    res.dual_exact = true;
    res.method = "nuclear-svd";
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
      RankOneTerm t;
      t.x = dxw.cwiseInverse().asDiagonal() *
            (svd.matrixU().col(k) * svd.singularValues()[k]);
      t.y = dyw.cwiseInverse().asDiagonal() * svd.matrixV().col(k).conjugate();
      res.decomposition.push_back(std::move(t));
    }
    CMat w = svd.matrixV() * svd.matrixU().adjoint();
    res.dual_witness = dyw.asDiagonal() * w * dxw.asDiagonal();
    return res;
  }

  SupportResult sup = support_opball(u, cfg);
  res.dual = sup.value;
  res.dual_exact = sup.exact;
  res.dual_witness = sup.witness;
  res.value_exact = sup.value_exact;

  std::vector<RankOneTerm> terms;
  res.primal = primal_search(u, cfg, &terms);
  res.decomposition = std::move(terms);
  if (res.dual_exact && res.primal < res.dual && res.dual - res.primal < 1e-9) {
    // float noise on the feasible side of an exact bound
    res.primal = res.dual;
  }
  res.exact = res.primal - res.dual <= cfg.opt_tol;
  res.value = res.dual_exact ? res.dual : res.primal;
  res.method = sup.method + "+transfer-search";
  return res;
}

}  // namespace

EpsResult eps_norm(const TensorElement& u, const Config& cfg) {
  std::call_once(u.cache->eps_once, [&] {
    u.cache->eps = std::make_shared<EpsResult>(compute_eps(u, cfg));
  });
  return *u.cache->eps;
}

PiResult pi_norm(const TensorElement& u, const Config& cfg) {
  std::call_once(u.cache->pi_once, [&] {
    u.cache->pi = std::make_shared<PiResult>(compute_pi(u, cfg));
  });
  return *u.cache->pi;
}

SpacePtr tensor_space(const SpacePtr& x, const SpacePtr& y, NormKind kind,
                      const Config& cfg) {
  if (kind != NormKind::tensor_pi && kind != NormKind::tensor_eps)
    throw std::invalid_argument("tensor_space: kind must be tensor_pi or tensor_eps");
  if (x->field != y->field)
    throw std::invalid_argument("tensor_space: mixed scalar fields");
  if (x->dim * y->dim > cfg.op_space_max_dim)
    throw std::runtime_error("tensor_space: dimension guardrail exceeded");
  auto s = std::make_shared<Space>();
  s->label = (kind == NormKind::tensor_pi ? "pi(" : "eps(") + x->label + "," +
             y->label + ")";
  s->dim = x->dim * y->dim;
  s->field = x->field;
  s->kind = kind;
  s->a = x;
  s->b = y;
  SpacePtr xc = x, yc = y;
  if (kind == NormKind::tensor_pi) {
    s->oracle = [xc, yc, cfg](const CVec& v) {
      return pi_norm(tensor_of_vec(v, xc, yc), cfg).value;
    };
    s->dual_oracle = [xc, yc, cfg](const CVec& v) {
      return eps_norm(tensor_of_vec(v, dual_space(xc, cfg), dual_space(yc, cfg)), cfg)
          .value;
    };
    s->make_dual = [xc, yc, cfg]() {
      return tensor_space(dual_space(xc, cfg), dual_space(yc, cfg),
                          NormKind::tensor_eps, cfg);
    };
  } else {
    s->oracle = [xc, yc, cfg](const CVec& v) {
      return eps_norm(tensor_of_vec(v, xc, yc), cfg).value;
    };
    s->dual_oracle = [xc, yc, cfg](const CVec& v) {
      return pi_norm(tensor_of_vec(v, dual_space(xc, cfg), dual_space(yc, cfg)), cfg)
          .value;
    };
    s->make_dual = [xc, yc, cfg]() {
      return tensor_space(dual_space(xc, cfg), dual_space(yc, cfg),
                          NormKind::tensor_pi, cfg);
    };
  }
  return s;
}

Operator tensor_lift(const Operator& s, const Operator& t, NormKind kind,
                     const Config& cfg) {
  SpacePtr dom = tensor_space(s.domain, t.domain, kind, cfg);
  SpacePtr cod = tensor_space(s.codomain, t.codomain, kind, cfg);
  int dx1 = s.domain->dim, dy1 = t.domain->dim;
  int dx2 = s.codomain->dim, dy2 = t.codomain->dim;
  CMat k = CMat::Zero(dx2 * dy2, dx1 * dy1);
  for (int i2 = 0; i2 < dx2; ++i2)
    for (int j2 = 0; j2 < dy2; ++j2)
      for (int i1 = 0; i1 < dx1; ++i1)
        for (int j1 = 0; j1 < dy1; ++j1)
          k(i2 * dy2 + j2, i1 * dy1 + j1) = s.m(i2, i1) * t.m(j2, j1);
  return make_operator(std::move(k), dom, cod);
}

PiResult nuclear_norm_operator(const Operator& t, const Config& cfg) {
  CMat coeffs = t.m.transpose();
  return pi_norm(
      make_tensor(std::move(coeffs), dual_space(t.domain, cfg), t.codomain), cfg);
}

}  // namespace banach
