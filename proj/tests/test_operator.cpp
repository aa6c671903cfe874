#include "banachlab/op.hpp"
#include "banachlab/rng.hpp"

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace banach;
using testutil::cv;
using testutil::m2;

TEST_CASE("operator norm anchors") {
  Config cfg = default_config();
  auto l1 = make_lp("l1", 2, 1.0);
  auto li = make_lp("li", 2, HUGE_VAL);

  NormResult id = op_norm(identity(l1), cfg);
  CHECK(id.value == 1.0);
  CHECK(id.exact);

  Operator swap = make_operator(m2(0, 1, 1, 0), li, li);
  NormResult sw = op_norm(swap, cfg);
  CHECK(sw.value == 1.0);
  CHECK(sw.exact);

  Operator had = make_operator(m2(1, 1, 1, -1), l1, l1);
  NormResult h = op_norm(had, cfg);
  CHECK(h.value == 2.0);
  CHECK(h.exact);
  REQUIRE(h.value_exact.has_value());
  CHECK(*h.value_exact == Rat(2));
}

TEST_CASE("operator norm witness attains the value") {
  Config cfg = default_config();
  auto l1 = make_lp("l1", 2, 1.0);
  Operator had = make_operator(m2(1, 1, 1, -1), l1, l1);
  NormResult h = op_norm(had, cfg);
  CHECK(eval_norm(*l1, h.witness) <= 1 + 1e-12);
  CHECK(eval_norm(*l1, CVec(had.m * h.witness)) == doctest::Approx(h.value).epsilon(1e-12));
}

TEST_CASE("euclidean operator norm is the top singular value") {
  Config cfg = default_config();
  auto l2 = make_lp("l2", 2, 2.0);
  Operator t = make_operator(m2(3, 0, 0, 4), l2, l2);
  NormResult r = op_norm(t, cfg);
  CHECK(r.value == doctest::Approx(4.0));
  CHECK(r.method == "svd");
}

TEST_CASE("composition and adjoint algebra") {
  Config cfg = default_config();
  auto li = make_lp("li", 2, HUGE_VAL);
  Operator swap = make_operator(m2(0, 1, 1, 0), li, li);
  Operator both = compose(swap, swap);
  CHECK(both.m == CMat(CMat::Identity(2, 2)));
  Operator a = make_operator(m2(1, 2, 3, 4), li, li);
  CHECK(compose(a, identity(li)).m == a.m);

  auto l1 = make_lp("l1", 2, 1.0);
  Operator had = make_operator(m2(1, 1, 1, -1), l1, l1);
  Operator adj = adjoint(had, cfg);
  CHECK(adj.domain->is_linf());
  CHECK(op_norm(adj, cfg).value == 2.0);
  // (A o B)* = B* o A*
  Operator b = make_operator(m2(0, 1, 1, 0), l1, l1);
  CMat lhs = adjoint(compose(had, b), cfg).m;
  CMat rhs = compose(adjoint(b, cfg), adjoint(had, cfg)).m;
  CHECK(lhs == rhs);
}

TEST_CASE("rank one operators factor through their norms") {
  Config cfg = default_config();
  auto l1 = make_lp("l1", 2, 1.0);
  auto li = make_lp("li", 2, HUGE_VAL);
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    CVec f = cv({rng.normal(), rng.normal()});
    CVec y = cv({rng.normal(), rng.normal()});
    Operator t = rank_one(f, y, l1, li);
    double expect = dual_norm(*l1, f) * eval_norm(*li, y);
    CHECK(op_norm(t, cfg).value == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("rank one composed with J is the pullback rank one") {
  auto l1 = make_lp("l1", 2, 1.0);
  CVec f = cv({2, -1});
  CVec y = cv({1, 3});
  Operator t = rank_one(f, y, l1, l1);
  Operator j = make_operator(m2(0, 1, 1, 1), l1, l1);
  CVec jf = j.m.transpose() * f;
  Operator expect = rank_one(jf, y, l1, l1);
  CHECK(CMat(compose(t, j).m - expect.m).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("submultiplicativity on random compositions") {
  Config cfg = default_config();
  Rng rng(17);
  auto li = make_lp("li", 2, HUGE_VAL);
  for (int k = 0; k < 25; ++k) {
    Operator a = make_operator(m2(rng.normal(), rng.normal(), rng.normal(), rng.normal()), li, li);
    Operator b = make_operator(m2(rng.normal(), rng.normal(), rng.normal(), rng.normal()), li, li);
    CHECK(op_norm(compose(a, b), cfg).value <=
          op_norm(a, cfg).value * op_norm(b, cfg).value + 1e-9);
  }
}

TEST_CASE("operator space norms agree with op_norm") {
  Config cfg = default_config();
  auto l1 = make_lp("l1", 2, 1.0);
  auto li = make_lp("li", 2, HUGE_VAL);
  SpacePtr lxy = operator_space(l1, li, cfg);
  CHECK(lxy->dim == 4);
  Rng rng(23);
  for (int k = 0; k < 10; ++k) {
    Operator t = make_operator(m2(rng.normal(), rng.normal(), rng.normal(), rng.normal()), l1, li);
    CHECK(eval_norm(*lxy, vec_of_operator(t)) ==
          doctest::Approx(op_norm(t, cfg).value).epsilon(1e-12));
  }
  // unit ball of L(l1^2, linf^2) is the cube: |T_ij| <= 1
  auto ep = extreme_points(*lxy, cfg);
  CHECK(ep.size() == 16);
  for (const QVec& v : ep)
    for (const Rat& c : v) CHECK(abs(c) == Rat(1));
}

TEST_CASE("identity norm in operator space is 1") {
  Config cfg = default_config();
  auto li = make_lp("li", 2, HUGE_VAL);
  SpacePtr ll = operator_space(li, li, cfg);
  CHECK(eval_norm(*ll, vec_of_operator(identity(li))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("operator space guardrail") {
  Config cfg = default_config();
  auto big = make_lp("big", 5, HUGE_VAL);
  CHECK_THROWS(operator_space(big, big, cfg));
}

TEST_CASE("vec round trip follows the fixed layout") {
  auto l1 = make_lp("l1", 2, 1.0);
  Operator t = make_operator(m2(1, 2, 3, 4), l1, l1);
  CVec v = vec_of_operator(t);
  // vec[i*dimY + j] = T(j, i): column-major over the domain index
  CHECK(v[0] == Cx(1, 0));
  CHECK(v[1] == Cx(3, 0));
  CHECK(v[2] == Cx(2, 0));
  CHECK(v[3] == Cx(4, 0));
  Operator back = operator_of_vec(v, l1, l1);
  CHECK(back.m == t.m);
}
