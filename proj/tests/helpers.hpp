#pragma once

#include "banachlab/space.hpp"

#include <initializer_list>

namespace testutil {

using banach::CMat;
using banach::CVec;
using banach::Cx;

inline CVec cv(std::initializer_list<double> xs) {
  CVec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = Cx(x, 0.0);
  return v;
}

inline CVec cvc(std::initializer_list<Cx> xs) {
  CVec v(static_cast<int>(xs.size()));
  int i = 0;
  for (Cx x : xs) v[i++] = x;
  return v;
}

inline CMat m2(double a, double b, double c, double d) {
  CMat m(2, 2);
  m << Cx(a, 0), Cx(b, 0), Cx(c, 0), Cx(d, 0);
  return m;
}

inline banach::QVec qv(std::initializer_list<long> xs) {
  banach::QVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace testutil
