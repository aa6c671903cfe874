#include "banachlab/slices.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"

using namespace banach;
using testutil::cv;

namespace {

std::vector<CVec> square_vertices() {
  std::vector<CVec> a;
  for (double s : {1.0, -1.0})
    for (double t : {1.0, -1.0}) a.push_back(cv({s, t}));
  return a;
}

bool contains_point(const std::vector<CVec>& pts, const CVec& p) {
  return std::any_of(pts.begin(), pts.end(),
                     [&](const CVec& q) { return (q - p).norm() <= 1e-12; });
}

SliceSpec at(const std::vector<CVec>& a, const SpacePtr& s, const CVec& f, double depth) {
  return SliceSpec{a, Functional{f, s}, depth};
}

}  // namespace

TEST_CASE("slices of the square") {
  auto li = make_lp("li", 2, HUGE_VAL);
  auto a = square_vertices();
  auto got = slice(at(a, li, cv({1, 0}), 0.5));
  REQUIRE(got.size() == 2);
  CHECK(contains_point(got, cv({1, 1})));
  CHECK(contains_point(got, cv({1, -1})));

  CHECK(slice(at(a, li, cv({1, 0}), 2.5)).size() == 4);

  std::vector<CVec> seg = {cv({-1, 0}), cv({1, 0})};
  auto one = slice(at(seg, li, cv({1, 0}), 0.1));
  REQUIRE(one.size() == 1);
  CHECK(contains_point(one, cv({1, 0})));
}

TEST_CASE("every slice contains a maximizer and rejects bad specs") {
  auto li = make_lp("li", 2, HUGE_VAL);
  auto a = square_vertices();
  for (double depth : {0.01, 0.3, 1.0}) {
    auto got = slice(at(a, li, cv({0.37, -0.92}), depth));
    CHECK(!got.empty());
  }
  CHECK_THROWS(slice(at({}, li, cv({1, 0}), 0.5)));
  CHECK_THROWS(slice(at(a, li, cv({1, 0}), 0.0)));
}

TEST_CASE("convex hull membership") {
  Config cfg = default_config();
  auto b = square_vertices();
  CHECK(contains_in_conv({b[0]}, b, 0.0, cfg).contained);
  CHECK(contains_in_conv({cv({0, 0})}, b, 0.0, cfg).contained);

  ContainmentReport out = contains_in_conv({cv({2, 0})}, b, 0.1, cfg);
  REQUIRE_FALSE(out.contained);
  REQUIRE(out.separator.has_value());
  const Separation& sep = *out.separator;
  CHECK(sep.functional[0].real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sep.functional[1].real() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sep.margin == doctest::Approx(1.0).epsilon(1e-9));

  // re-verify the separator directly
  double fa = (sep.functional.conjugate().array() * cv({2, 0}).array()).sum().real();
  double fb = -1e300;
  for (const CVec& p : b)
    fb = std::max(fb, (sep.functional.conjugate().array() * p.array()).sum().real());
  CHECK(fa - fb >= sep.margin - 1e-9);
}

TEST_CASE("hull membership of the whole set in itself") {
  Config cfg = default_config();
  auto a = square_vertices();
  CHECK(contains_in_conv(a, a, 0.0, cfg).contained);
  CHECK_THROWS(contains_in_conv(a, {}, 0.0, cfg));
}

TEST_CASE("falsifier finds the one slice counterexample") {
  Config cfg = default_config();
  auto li = make_lp("li", 2, HUGE_VAL);
  auto a = square_vertices();
  std::vector<SliceSpec> fam = {at(a, li, cv({0.5, 0.5}), 0.1)};
  DeterminingVerdict v = determining_falsifier(a, fam, 0.25, 32, cfg);
  REQUIRE(v.counterexample_found);
  CHECK(v.subset.size() == 1);
  CHECK(contains_point(v.subset, cv({1, 1})));
  REQUIRE(v.separator.has_value());
  CHECK(v.separator->margin > 0.25);
}

TEST_CASE("falsifier finds nothing when every vertex carries a slice") {
  Config cfg = default_config();
  auto li = make_lp("li", 2, HUGE_VAL);
  auto a = square_vertices();
  std::vector<SliceSpec> fam;
  for (const CVec& p : a) fam.push_back(at(a, li, CVec(p / 2.0), 0.1));
  DeterminingVerdict v = determining_falsifier(a, fam, 0.25, 32, cfg);
  CHECK_FALSE(v.counterexample_found);
  CHECK(v.resolution.found_at == -1);
}

TEST_CASE("falsifier on a two point segment") {
  Config cfg = default_config();
  auto li = make_lp("li", 2, HUGE_VAL);
  std::vector<CVec> seg = {cv({-1, 0}), cv({1, 0})};
  double delta = 0.1;
  std::vector<SliceSpec> fam = {at(seg, li, cv({1, 0}), delta), at(seg, li, cv({-1, 0}), delta)};
  DeterminingVerdict v = determining_falsifier(seg, fam, 2 * delta, 32, cfg);
  CHECK_FALSE(v.counterexample_found);
}

TEST_CASE("falsifier verdicts are deterministic and monotone in the family") {
  Config cfg = default_config();
  auto li = make_lp("li", 2, HUGE_VAL);
  auto a = square_vertices();
  std::vector<SliceSpec> small = {at(a, li, cv({0.5, 0.5}), 0.1),
                                  at(a, li, cv({-0.5, 0.5}), 0.1)};
  DeterminingVerdict v1 = determining_falsifier(a, small, 0.25, 16, cfg);
  DeterminingVerdict v2 = determining_falsifier(a, small, 0.25, 16, cfg);
  CHECK(v1.counterexample_found == v2.counterexample_found);
  REQUIRE(v1.counterexample_found);
  REQUIRE(v2.counterexample_found);
  CHECK(v1.subset.size() == v2.subset.size());
  CHECK(v1.resolution.found_at == v2.resolution.found_at);

  // enlarging the family keeps prefix randomness aligned, so a found
  // counterexample can only disappear, never change the no-counterexample
  // verdict into a found one for the same seed and budget
  std::vector<SliceSpec> big = small;
  for (const CVec& p : a) big.push_back(at(a, li, CVec(p / 2.0), 0.1));
  DeterminingVerdict v3 = determining_falsifier(a, big, 0.25, 16, cfg);
  CHECK_FALSE(v3.counterexample_found);
}

TEST_CASE("strongly exposed check separates smooth from flat unit balls") {
  Config cfg = default_config();
  auto l2 = make_lp("l2", 2, 2.0);
  CVec e1 = cv({1, 0});
  ExposureReport smooth =
      strongly_exposed_check(l2, e1, Functional{e1, l2}, 0.002, 0.2, 400, cfg);
  CHECK(smooth.passed);
  CHECK(smooth.in_slice > 0);

  auto l1 = make_lp("l1", 2, 1.0);
  ExposureReport flat = strongly_exposed_check(l1, e1, Functional{e1, l1}, 0.002, 0.2, 400, cfg);
  CHECK_FALSE(flat.passed);
  REQUIRE(flat.counterexample.has_value());
  CHECK_THROWS(strongly_exposed_check(l1, e1, Functional{e1, l1}, 0.0, 0.2, 10, cfg));
}
