#pragma once

#include <Eigen/Dense>

#include <complex>

namespace banach {

enum class Field { real, cplx };

using Cx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline bool is_real_vec(const CVec& v, double tol = 0.0) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i].imag()) > tol) return false;
  return true;
}

inline CVec cvec_of(const std::vector<double>& v) {
  CVec r(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) r[static_cast<Eigen::Index>(i)] = v[i];
  return r;
}

}  // namespace banach
