#include "banachlab/ideals.hpp"

#include "banachlab/detail/statepairs.hpp"
#include "banachlab/rng.hpp"
#include "banachlab/tensor.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace banach {
namespace {

constexpr unsigned long long kStream = 0x1DEA15ULL;

bool endo(const Operator& t) { return same_space(*t.domain, *t.codomain); }

bool cheap_radius_kind(const Space& s) {
  return s.kind == NormKind::lp || s.kind == NormKind::polyhedral ||
         s.kind == NormKind::euclidean_weighted ||
         (s.polyhedral_capable() && s.dim <= 8);
}

// v(T), exact where the finite-pair path applies, otherwise a sampled lower
// bound.  The schedule engine is avoided on derived kinds whose norm oracle
// is itself an optimization.
SideValue radius_of(const Operator& t, unsigned long long salt, const Config& cfg) {
  if (cheap_radius_kind(*t.domain)) {
    RadiusResult r = numerical_radius(t, cfg);
    return {r.value, r.exact, r.exact ? "finite-pair-max" : "delta-schedule"};
  }
  auto q = detail::build_state_pairs(t.domain, 512, kStream ^ salt, cfg);
  return {detail::pairs_v(q, t.m), false, "sampled-pairs"};
}

SideValue index_of(const SpacePtr& s, const Config& cfg) {
  const long long dd = static_cast<long long>(s->dim) * s->dim;
  if (s->field == Field::real && s->polyhedral_capable() && dd <= cfg.exact_index_max_dim_sq) {
    IndexCertificate c = numerical_index_exact(s, cfg);
    return {c.value, c.exact, c.method};
  }
  int budget = 0;
  if (!cheap_radius_kind(*s)) budget = 24 * cfg.index_iters;
  IndexCertificate c = numerical_index_estimate(s, budget, cfg);
  return {c.value, false, c.method};
}

Operator random_endo(const SpacePtr& s, Rng& rng) {
  CMat m(s->dim, s->dim);
  for (int r = 0; r < s->dim; ++r)
    for (int c = 0; c < s->dim; ++c)
      m(r, c) = s->field == Field::cplx ? Cx(rng.normal(), rng.normal()) : Cx(rng.normal(), 0.0);
  return make_operator(std::move(m), s, s);
}

}  // namespace

std::string judge(InequalityReport& r) {
  r.margin = r.rhs.value - r.lhs.value;
  if (r.tol <= 0.0) r.tol = (r.lhs.exact && r.rhs.exact) ? 1e-9 : 1e-4;
  if (r.margin >= 0.0)
    r.verdict = "holds";
  else if (r.margin >= -r.tol)
    r.verdict = "holds-within-tolerance";
  else if (r.lhs.exact && r.rhs.exact)
    r.verdict = "violated";
  else
    r.verdict = "inconclusive-heuristic";
  return r.verdict;
}

Operator embed_precompose(const Operator& j, const SpacePtr& y, const Config& cfg) {
  if (!endo(j)) throw std::invalid_argument("precompose embedding: J must be an endomorphism");
  const SpacePtr& x = j.domain;
  SpacePtr ls = operator_space(x, y, cfg);
  const int dx = x->dim, dy = y->dim;
  CMat m = CMat::Zero(dx * dy, dx * dy);
  // vec(T)[i*dy + r] = T(r, i); (T o J)(r, i) = sum_k J(k, i) T(r, k)
  for (int i = 0; i < dx; ++i)
    for (int k = 0; k < dx; ++k) {
      Cx w = j.m(k, i);
      if (w == Cx(0.0, 0.0)) continue;
      for (int r = 0; r < dy; ++r) m(i * dy + r, k * dy + r) = w;
    }
  return make_operator(std::move(m), ls, ls);
}

Operator embed_postcompose(const Operator& s, const SpacePtr& x, const Config& cfg) {
  if (!endo(s)) throw std::invalid_argument("postcompose embedding: S must be an endomorphism");
  const SpacePtr& y = s.domain;
  SpacePtr ls = operator_space(x, y, cfg);
  const int dx = x->dim, dy = y->dim;
  CMat m = CMat::Zero(dx * dy, dx * dy);
  // (S o T)(r, i) = sum_k S(r, k) T(k, i)
  for (int i = 0; i < dx; ++i)
    for (int r = 0; r < dy; ++r)
      for (int k = 0; k < dy; ++k) {
        Cx w = s.m(r, k);
        if (w == Cx(0.0, 0.0)) continue;
        m(i * dy + r, i * dy + k) = w;
      }
  return make_operator(std::move(m), ls, ls);
}

std::vector<InequalityReport> verify_suite(const std::vector<SpacePtr>& catalog,
                                           const Config& cfg) {
  std::vector<InequalityReport> out;
  // keyed by owned pointers: derived spaces are temporaries and a raw-address
  // key would alias freed entries
  std::map<SpacePtr, SideValue> index_cache;

  auto n_of = [&](const SpacePtr& s) {
    auto it = index_cache.find(s);
    if (it != index_cache.end()) return it->second;
    SideValue v = index_of(s, cfg);
    index_cache.emplace(s, v);
    return v;
  };

  auto guarded = [&](InequalityReport r, auto&& fill) {
    try {
      fill(r);
      judge(r);
    } catch (const std::exception& e) {
      r.verdict = "inconclusive-heuristic";
      r.witnesses = e.what();
    }
    out.push_back(std::move(r));
  };

  for (const SpacePtr& x : catalog) {
    InequalityReport r;
    r.name = "dual-index/" + x->label;
    guarded(r, [&](InequalityReport& q) {
      q.rhs = n_of(x);
      q.lhs = n_of(dual_space(x, cfg));
      q.witnesses = "lhs " + q.lhs.source + "; rhs " + q.rhs.source;
    });
  }

  std::uint64_t pair_tag = 0;
  for (const SpacePtr& x : catalog)
    for (const SpacePtr& y : catalog) {
      ++pair_tag;
      const std::string pq = x->label + "," + y->label;

      SideValue floor_rhs;
      bool have_floor = false;
      auto min_index = [&] {
        if (!have_floor) {
          SideValue nx = n_of(x), ny = n_of(y);
          floor_rhs = nx.value <= ny.value ? nx : ny;
          floor_rhs.exact = nx.exact && ny.exact;
          floor_rhs.source = "min(" + nx.source + ", " + ny.source + ")";
          have_floor = true;
        }
        return floor_rhs;
      };

      guarded({.name = "op-index/" + pq}, [&](InequalityReport& q) {
        q.rhs = min_index();
        q.lhs = n_of(operator_space(x, y, cfg));
        q.witnesses = "lhs " + q.lhs.source;
      });
      guarded({.name = "pi-index/" + pq}, [&](InequalityReport& q) {
        q.rhs = min_index();
        q.lhs = n_of(tensor_space(x, y, NormKind::tensor_pi, cfg));
        q.witnesses = "lhs " + q.lhs.source;
      });
      guarded({.name = "eps-index/" + pq}, [&](InequalityReport& q) {
        q.rhs = min_index();
        q.lhs = n_of(tensor_space(x, y, NormKind::tensor_eps, cfg));
        q.witnesses = "lhs " + q.lhs.source;
      });

      Rng rng(mix_seed(cfg.seed, kStream ^ (0xAB1EULL + pair_tag)));
      Operator j = random_endo(x, rng);
      Operator s = random_endo(y, rng);

      guarded({.name = "pre-transport/" + pq}, [&](InequalityReport& q) {
        q.rhs = radius_of(j, 2 * pair_tag, cfg);
        q.lhs = radius_of(embed_precompose(j, y, cfg), 2 * pair_tag, cfg);
        q.tol = 1e-8;
        q.witnesses = "seeded J on " + x->label + "; lhs " + q.lhs.source + ", rhs " + q.rhs.source;
      });
      guarded({.name = "post-transport/" + pq}, [&](InequalityReport& q) {
        q.rhs = radius_of(s, 2 * pair_tag + 1, cfg);
        q.lhs = radius_of(embed_postcompose(s, x, cfg), 2 * pair_tag + 1, cfg);
        q.tol = 1e-8;
        q.witnesses = "seeded S on " + y->label + "; lhs " + q.lhs.source + ", rhs " + q.rhs.source;
      });
      guarded({.name = "pi-lift-transport/" + pq}, [&](InequalityReport& q) {
        q.rhs = radius_of(j, 2 * pair_tag, cfg);
        q.lhs = radius_of(tensor_lift(j, identity(y), NormKind::tensor_pi, cfg), 3 * pair_tag, cfg);
        q.tol = 1e-8;
        q.witnesses = "seeded J on " + x->label + " lifted; lhs " + q.lhs.source;
      });
      guarded({.name = "eps-lift-transport/" + pq}, [&](InequalityReport& q) {
        q.rhs = radius_of(j, 2 * pair_tag, cfg);
        q.lhs = radius_of(tensor_lift(j, identity(y), NormKind::tensor_eps, cfg), 3 * pair_tag + 1, cfg);
        q.tol = 1e-8;
        q.witnesses = "seeded J on " + x->label + " lifted; lhs " + q.lhs.source;
      });
    }

  return out;
}

}  // namespace banach
