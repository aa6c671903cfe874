#include "banachlab/ideals.hpp"
#include "banachlab/numrange.hpp"
#include "banachlab/rng.hpp"

#include <doctest.h>

#include "helpers.hpp"

using namespace banach;
using testutil::m2;

TEST_CASE("precompose embedding is unital and isometric on the anchor pair") {
  Config cfg = default_config();
  auto li = make_lp("li", 2, HUGE_VAL);
  auto l1 = make_lp("l1", 2, 1.0);

  Operator phi_id = embed_precompose(identity(li), l1, cfg);
  CHECK(phi_id.m == CMat(CMat::Identity(4, 4)));

  Operator j = make_operator(m2(1, 1, 0, 1), li, li);
  Operator phi = embed_precompose(j, l1, cfg);
  NormResult nj = op_norm(j, cfg);
  NormResult np = op_norm(phi, cfg);
  CHECK(nj.value == 2.0);
  CHECK(np.value == 2.0);
  CHECK(nj.exact);
  CHECK(np.exact);
}

TEST_CASE("precompose is contravariant, postcompose covariant") {
  Config cfg = default_config();
  auto li = make_lp("li", 2, HUGE_VAL);
  auto l1 = make_lp("l1", 2, 1.0);
  Rng rng(83);
  for (int k = 0; k < 10; ++k) {
    Operator j1 = make_operator(m2(rng.normal(), rng.normal(), rng.normal(), rng.normal()), li, li);
    Operator j2 = make_operator(m2(rng.normal(), rng.normal(), rng.normal(), rng.normal()), li, li);
    CMat lhs = embed_precompose(compose(j1, j2), l1, cfg).m;
    CMat rhs = compose(embed_precompose(j2, l1, cfg), embed_precompose(j1, l1, cfg)).m;
    CHECK(CMat(lhs - rhs).norm() == 0.0);

    Operator s1 = make_operator(m2(rng.normal(), rng.normal(), rng.normal(), rng.normal()), l1, l1);
    Operator s2 = make_operator(m2(rng.normal(), rng.normal(), rng.normal(), rng.normal()), l1, l1);
    CMat lps = embed_postcompose(compose(s1, s2), li, cfg).m;
    CMat rps = compose(embed_postcompose(s1, li, cfg), embed_postcompose(s2, li, cfg)).m;
    CHECK(CMat(lps - rps).norm() == 0.0);
  }
}

TEST_CASE("embeddings transport norms and radii on seeded samples") {
  Config cfg = default_config();
  auto li = make_lp("li", 2, HUGE_VAL);
  auto l1 = make_lp("l1", 2, 1.0);
  Rng rng(89);
  for (int k = 0; k < 20; ++k) {
    Operator j = make_operator(m2(rng.normal(), rng.normal(), rng.normal(), rng.normal()), li, li);
    Operator phi = embed_precompose(j, l1, cfg);
    CHECK(op_norm(phi, cfg).value == doctest::Approx(op_norm(j, cfg).value).epsilon(1e-12));
    CHECK(numerical_radius(phi, cfg).value <= numerical_radius(j, cfg).value + 1e-8);

    Operator s = make_operator(m2(rng.normal(), rng.normal(), rng.normal(), rng.normal()), l1, l1);
    Operator psi = embed_postcompose(s, li, cfg);
    CHECK(op_norm(psi, cfg).value == doctest::Approx(op_norm(s, cfg).value).epsilon(1e-12));
    CHECK(numerical_radius(psi, cfg).value <= numerical_radius(s, cfg).value + 1e-8);
  }
}

TEST_CASE("inequality judge applies one sided tolerance") {
  auto mk = [](double lhs, bool le, double rhs, bool re) {
    InequalityReport r;
    r.name = "t";
    r.lhs = {lhs, le, "test"};
    r.rhs = {rhs, re, "test"};
    return r;
  };
  {
    InequalityReport r = mk(1.0, true, 1.0, true);
    CHECK(judge(r) == "holds");
    CHECK(r.margin == 0.0);
  }
  {
    InequalityReport r = mk(1.0 + 1e-10, true, 1.0, true);
    CHECK(judge(r) == "holds-within-tolerance");
  }
  {
    InequalityReport r = mk(2.0, true, 1.0, true);
    CHECK(judge(r) == "violated");
  }
  {
    // heuristic right side can never be blamed for a violation
    InequalityReport r = mk(2.0, true, 1.0, false);
    CHECK(judge(r) == "inconclusive-heuristic");
  }
  {
    InequalityReport r = mk(0.5, false, 1.0, true);
    CHECK(judge(r) == "holds");
  }
}

TEST_CASE("suite on the classic pair holds everywhere") {
  Config cfg = default_config();
  auto reports = verify_suite({make_lp("l1-2", 2, 1.0), make_lp("linf2", 2, HUGE_VAL)}, cfg);
  CHECK(reports.size() >= 20);
  int holds = 0;
  for (const auto& r : reports) {
    CHECK(r.verdict != "violated");
    if (r.verdict == "holds") ++holds;
    if (r.lhs.exact && r.rhs.exact) CHECK(r.margin >= -1e-9);
  }
  CHECK(holds == static_cast<int>(reports.size()));
}

TEST_CASE("suite on a single one dimensional space is all equalities") {
  Config cfg = default_config();
  auto reports = verify_suite({make_lp("r", 1, 1.0)}, cfg);
  for (const auto& r : reports) {
    CHECK((r.verdict == "holds" || r.verdict == "holds-within-tolerance"));
    if (r.name.rfind("dual-index", 0) == 0 || r.name.rfind("op-index", 0) == 0)
      CHECK(r.margin == doctest::Approx(0.0).epsilon(1e-9));
  }
}
