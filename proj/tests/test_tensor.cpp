#include "banachlab/rng.hpp"
#include "banachlab/tensor.hpp"

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace banach;
using testutil::cv;
using testutil::m2;

namespace {

TensorElement rank_one_tensor(const CVec& x, const CVec& y, const SpacePtr& xs,
                              const SpacePtr& ys) {
  CMat c = x * y.transpose();
  return make_tensor(c, xs, ys);
}

Eigen::Matrix2cd as2(const CMat& m) {
  Eigen::Matrix2cd out;
  out << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  return out;
}

}  // namespace

TEST_CASE("cross norm on elementary tensors") {
  Config cfg = default_config();
  Rng rng(43);
  auto l1 = make_lp("l1", 2, 1.0);
  auto li = make_lp("li", 2, HUGE_VAL);
  auto l2 = make_lp("l2", 2, 2.0);
  for (auto& xs : {l1, li, l2})
    for (auto& ys : {l1, li, l2})
      for (int k = 0; k < 6; ++k) {
        CVec x = cv({rng.normal(), rng.normal()});
        CVec y = cv({rng.normal(), rng.normal()});
        TensorElement u = rank_one_tensor(x, y, xs, ys);
        double expect = eval_norm(*xs, x) * eval_norm(*ys, y);
        CHECK(pi_norm(u, cfg).value == doctest::Approx(expect).epsilon(1e-9));
        CHECK(eps_norm(u, cfg).value == doctest::Approx(expect).epsilon(1e-9));
      }
}

TEST_CASE("identity tensor anchors") {
  Config cfg = default_config();
  auto l2 = make_lp("l2", 2, 2.0);
  auto li = make_lp("li", 2, HUGE_VAL);
  TensorElement id2 = make_tensor(CMat::Identity(2, 2), l2, l2);
  CHECK(eps_norm(id2, cfg).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pi_norm(id2, cfg).value == doctest::Approx(2.0).epsilon(1e-9));
  TensorElement idi = make_tensor(CMat::Identity(2, 2), li, li);
  CHECK(eps_norm(idi, cfg).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("l1 factor block formula for pi") {
  Config cfg = default_config();
  Rng rng(47);
  auto l1 = make_lp("l1", 2, 1.0);
  auto targets = {std::pair{make_lp("y1", 2, 1.0), oracle::RowNorm::l1},
                  std::pair{make_lp("yi", 2, HUGE_VAL), oracle::RowNorm::linf},
                  std::pair{make_lp("y2", 2, 2.0), oracle::RowNorm::l2}};
  for (auto& [ys, rn] : targets)
    for (int k = 0; k < 12; ++k) {
      CMat c = m2(rng.normal(), rng.normal(), rng.normal(), rng.normal());
      TensorElement u = make_tensor(c, l1, ys);
      CHECK(pi_norm(u, cfg).value == doctest::Approx(oracle::pi_l1_left(as2(c), rn)).epsilon(1e-9));
    }
}

TEST_CASE("linf factor block formula for eps") {
  Config cfg = default_config();
  Rng rng(53);
  auto li = make_lp("li", 2, HUGE_VAL);
  auto targets = {std::pair{make_lp("y1", 2, 1.0), oracle::RowNorm::l1},
                  std::pair{make_lp("yi", 2, HUGE_VAL), oracle::RowNorm::linf},
                  std::pair{make_lp("y2", 2, 2.0), oracle::RowNorm::l2}};
  for (auto& [ys, rn] : targets)
    for (int k = 0; k < 12; ++k) {
      CMat c = m2(rng.normal(), rng.normal(), rng.normal(), rng.normal());
      TensorElement u = make_tensor(c, li, ys);
      CHECK(eps_norm(u, cfg).value ==
            doctest::Approx(oracle::eps_linf_left(as2(c), rn)).epsilon(1e-9));
    }
}

TEST_CASE("euclidean pair matches the closed form singular values") {
  Config cfg = default_config();
  Rng rng(59);
  auto l2 = make_lp("l2", 2, 2.0);
  for (int k = 0; k < 20; ++k) {
    CMat c = m2(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    TensorElement u = make_tensor(c, l2, l2);
    CHECK(pi_norm(u, cfg).value == doctest::Approx(oracle::nuclear_2x2(as2(c))).epsilon(1e-6));
    CHECK(eps_norm(u, cfg).value == doctest::Approx(oracle::spectral_2x2(as2(c))).epsilon(1e-6));
  }
}

TEST_CASE("eps below pi with certified pi gap") {
  Config cfg = default_config();
  Rng rng(61);
  auto l1 = make_lp("l1", 2, 1.0);
  auto li = make_lp("li", 2, HUGE_VAL);
  auto l2 = make_lp("l2", 2, 2.0);
  for (auto& xs : {l1, li, l2})
    for (auto& ys : {l1, li, l2})
      for (int k = 0; k < 6; ++k) {
        CMat c = m2(rng.normal(), rng.normal(), rng.normal(), rng.normal());
        TensorElement u = make_tensor(c, xs, ys);
        PiResult pi = pi_norm(u, cfg);
        EpsResult ep = eps_norm(u, cfg);
        CHECK(ep.value <= pi.value + 1e-8);
        if (pi.exact) CHECK(pi.primal - pi.dual <= 1e-6);
        // the decomposition reassembles the tensor
        CMat sum = CMat::Zero(2, 2);
        for (const RankOneTerm& t : pi.decomposition) sum += t.x * t.y.transpose();
        CHECK(CMat(sum - u.c).norm() <= 1e-7 * std::max(1.0, pi.value));
      }
}

TEST_CASE("tensor space balls of the classic pairs") {
  Config cfg = default_config();
  auto l1 = make_lp("l1", 2, 1.0);
  auto li = make_lp("li", 2, HUGE_VAL);
  SpacePtr pi4 = tensor_space(l1, l1, NormKind::tensor_pi, cfg);
  auto ep = extreme_points(*pi4, cfg);
  CHECK(ep.size() == 8);  // cross-polytope in dimension 4
  for (const QVec& v : ep) {
    Rat sum = 0;
    for (const Rat& c : v) sum += abs(c);
    CHECK(sum == Rat(1));
  }
  SpacePtr eps4 = tensor_space(li, li, NormKind::tensor_eps, cfg);
  auto fp = extreme_points(*eps4, cfg);
  CHECK(fp.size() == 16);  // cube in dimension 4
  for (const QVec& v : fp)
    for (const Rat& c : v) CHECK(abs(c) == Rat(1));
}

TEST_CASE("tensor space norm oracle agrees with the reshaped norms") {
  Config cfg = default_config();
  Rng rng(67);
  auto l1 = make_lp("l1", 2, 1.0);
  auto li = make_lp("li", 2, HUGE_VAL);
  SpacePtr sp = tensor_space(l1, li, NormKind::tensor_pi, cfg);
  SpacePtr se = tensor_space(l1, li, NormKind::tensor_eps, cfg);
  for (int k = 0; k < 8; ++k) {
    CMat c = m2(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    TensorElement u = make_tensor(c, l1, li);
    CHECK(eval_norm(*sp, vec_of_tensor(u)) == doctest::Approx(pi_norm(u, cfg).value).epsilon(1e-9));
    CHECK(eval_norm(*se, vec_of_tensor(u)) ==
          doctest::Approx(eps_norm(u, cfg).value).epsilon(1e-9));
  }
}

TEST_CASE("pi and eps duality on a real polyhedral pair") {
  Config cfg = default_config();
  auto l1 = make_lp("l1", 2, 1.0);
  auto li = make_lp("li", 2, HUGE_VAL);
  // (l1 (x)_pi li)* = L(l1, l1) = li (x)_eps l1 on the dual data
  SpacePtr pi_sp = tensor_space(l1, li, NormKind::tensor_pi, cfg);
  SpacePtr eps_dual = tensor_space(dual_space(l1, cfg), dual_space(li, cfg), NormKind::tensor_eps, cfg);
  Rng rng(71);
  for (int k = 0; k < 10; ++k) {
    CVec f = cv({rng.normal(), rng.normal(), rng.normal(), rng.normal()});
    CHECK(dual_norm(*pi_sp, f) == doctest::Approx(eval_norm(*eps_dual, f)).epsilon(1e-8));
  }
}

TEST_CASE("tensor lifts") {
  Config cfg = default_config();
  auto li = make_lp("li", 2, HUGE_VAL);
  auto l1 = make_lp("l1", 2, 1.0);
  Operator lift_id = tensor_lift(identity(li), identity(l1), NormKind::tensor_pi, cfg);
  CHECK(lift_id.m == CMat(CMat::Identity(4, 4)));

  Rng rng(73);
  for (int k = 0; k < 10; ++k) {
    Operator s = make_operator(m2(rng.normal(), rng.normal(), rng.normal(), rng.normal()), li, li);
    Operator t = make_operator(m2(rng.normal(), rng.normal(), rng.normal(), rng.normal()), l1, l1);
    Operator lift = tensor_lift(s, t, NormKind::tensor_pi, cfg);
    CVec x = cv({rng.normal(), rng.normal()});
    CVec y = cv({rng.normal(), rng.normal()});
    TensorElement xy = rank_one_tensor(x, y, li, l1);
    CVec lhs = lift.m * vec_of_tensor(xy);
    TensorElement expect = rank_one_tensor(CVec(s.m * x), CVec(t.m * y), li, l1);
    CHECK((lhs - vec_of_tensor(expect)).norm() <= 1e-12);
  }

  for (int k = 0; k < 5; ++k) {
    Operator s = make_operator(m2(rng.normal(), rng.normal(), rng.normal(), rng.normal()), li, li);
    Operator lift = tensor_lift(s, identity(l1), NormKind::tensor_pi, cfg);
    CHECK(op_norm(lift, cfg).value == doctest::Approx(op_norm(s, cfg).value).epsilon(1e-9));
  }
}

TEST_CASE("nuclear norm anchors") {
  Config cfg = default_config();
  auto l2 = make_lp("l2", 2, 2.0);
  auto li = make_lp("li", 2, HUGE_VAL);
  auto l1 = make_lp("l1", 2, 1.0);
  CHECK(nuclear_norm_operator(identity(l2), cfg).value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(nuclear_norm_operator(identity(li), cfg).value == doctest::Approx(2.0).epsilon(1e-9));

  Rng rng(79);
  for (int k = 0; k < 10; ++k) {
    CVec f = cv({rng.normal(), rng.normal()});
    CVec y = cv({rng.normal(), rng.normal()});
    Operator t = rank_one(f, y, l1, li);
    double expect = dual_norm(*l1, f) * eval_norm(*li, y);
    CHECK(nuclear_norm_operator(t, cfg).value == doctest::Approx(expect).epsilon(1e-8));
  }
}
