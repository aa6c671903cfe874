#include "banachlab/dd.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

using namespace banach;

namespace {

QVec vec(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::set<std::string> keyset(const std::vector<QVec>& vs) {
  std::set<std::string> out;
  for (const QVec& v : vs) {
    std::string k;
    for (const Rat& q : v) k += q.get_str() + ",";
    out.insert(k);
  }
  return out;
}

}  // namespace

TEST_CASE("vertex enumeration of the square") {
  QMat rows = {vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1})};
  auto vs = enumerate_vertices(rows, 2);
  REQUIRE(vs.size() == 4);
  auto ks = keyset(vs);
  CHECK(ks.count("1,1,"));
  CHECK(ks.count("-1,-1,"));
}

TEST_CASE("vertex enumeration of the 3-cube and its polar") {
  QMat rows;
  for (int i = 0; i < 3; ++i)
    for (int s : {1, -1}) {
      QVec r(3, Rat(0));
      r[i] = s;
      rows.push_back(r);
    }
  auto cube = enumerate_vertices(rows, 3);
  CHECK(cube.size() == 8);
  auto facets = facets_of_hull(cube, 3);
  CHECK(facets.size() == 6);
  // polar of the cube is the cross-polytope: facets +-e_i
  auto ks = keyset(facets);
  CHECK(ks.count("1,0,0,"));
  CHECK(ks.count("0,-1,0,"));
}

TEST_CASE("hull facets of the cross-polytope are the cube") {
  std::vector<QVec> pts;
  for (int i = 0; i < 3; ++i)
    for (int s : {1, -1}) {
      QVec p(3, Rat(0));
      p[i] = s;
      pts.push_back(p);
    }
  auto facets = facets_of_hull(pts, 3);
  CHECK(facets.size() == 8);
  for (const QVec& f : facets)
    for (const Rat& c : f) CHECK(abs(c) == Rat(1));
}

TEST_CASE("enumeration output is sorted and duplicate-free") {
  QMat rows = {vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1}),
               vec({1, 0})};  // repeated constraint must not duplicate vertices
  auto vs = enumerate_vertices(rows, 2);
  CHECK(vs.size() == 4);
  CHECK(std::is_sorted(vs.begin(), vs.end(), [](const QVec& a, const QVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }));
}

TEST_CASE("rational data survives enumeration exactly") {
  // triangle with a 1/3 coordinate
  QMat rows = {vec({3, 0}), vec({-3, 0}), vec({0, 1})};
  rows.push_back(vec({0, -1}));
  auto vs = enumerate_vertices(rows, 2);
  bool found = false;
  for (const QVec& v : vs)
    if (v[0] == Rat(1, 3) && v[1] == Rat(1)) found = true;
  CHECK(found);
}
