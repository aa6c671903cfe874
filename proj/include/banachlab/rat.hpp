#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace banach {

using Rat = mpq_class;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

// mpq_class(double) performs an exact binary expansion, so going through
// doubles never loses information.
inline Rat rat_of(double x) {
  Rat q(x);
  q.canonicalize();
  return q;
}

// Accepts "3", "-7/2", "0.25" (decimal expansions become exact rationals).
Rat parse_rat(const std::string& s);

std::string rat_str(const Rat& q);

inline QVec qvec_of(const std::vector<double>& v) {
  QVec q;
  q.reserve(v.size());
  for (double x : v) q.push_back(rat_of(x));
  return q;
}

inline std::vector<double> dvec_of(const QVec& q) {
  std::vector<double> v;
  v.reserve(q.size());
  for (const Rat& x : q) v.push_back(x.get_d());
  return v;
}

inline Rat qdot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("qdot: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline QVec qscale(const QVec& a, const Rat& c) {
  QVec r = a;
  for (Rat& x : r) x *= c;
  return r;
}

inline QVec qaxpy(const Rat& c, const QVec& x, const QVec& y) {
  QVec r = y;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += c * x[i];
  return r;
}

// Row-reduces a copy of m and returns its rank.
int qrank(QMat m);

// Solves m * x = rhs by Gaussian elimination; throws if singular.
QVec qsolve(QMat m, QVec rhs);

// A basis of the null space of m (vectors x with m * x = 0).
std::vector<QVec> qnullspace(const QMat& m, int ncols);

inline Rat parse_rat(const char* s) { return parse_rat(std::string(s)); }

// ---- implementation of the small parsing helpers ----

inline Rat parse_rat(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("parse_rat: empty string");
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    if (t.find('/') != std::string::npos)
      throw std::invalid_argument("parse_rat: mixed decimal and fraction: " + s);
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    std::size_t frac_len = t.size() - dot - 1;
    std::string den = "1" + std::string(frac_len, '0');
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), (digits + "/" + den).c_str(), 10) != 0)
      throw std::invalid_argument("parse_rat: bad number: " + s);
    q.canonicalize();
    return q;
  }
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0)
    throw std::invalid_argument("parse_rat: bad number: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("parse_rat: zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline int qrank(QMat m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  std::size_t lead = 0;
  for (std::size_t r = 0; r < rows && lead < cols; ++lead) {
    std::size_t piv = r;
    while (piv < rows && m[piv][lead] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i != r && m[i][lead] != 0) {
        Rat f = m[i][lead] / m[r][lead];
        for (std::size_t j = lead; j < cols; ++j) m[i][j] -= f * m[r][j];
      }
    }
    ++r;
    ++rank;
  }
  return rank;
}

inline QVec qsolve(QMat m, QVec rhs) {
  std::size_t n = m.size();
  if (n == 0 || m[0].size() != n || rhs.size() != n)
    throw std::invalid_argument("qsolve: need square system");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw std::runtime_error("qsolve: singular matrix");
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != c && m[i][c] != 0) {
        Rat f = m[i][c] / m[c][c];
        for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        rhs[i] -= f * rhs[c];
      }
    }
  }
  QVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

inline std::vector<QVec> qnullspace(const QMat& m_in, int ncols) {
  QMat m = m_in;
  std::size_t rows = m.size(), cols = static_cast<std::size_t>(ncols);
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t lead = 0; lead < cols && r < rows; ++lead) {
    std::size_t piv = r;
    while (piv < rows && m[piv][lead] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i != r && m[i][lead] != 0) {
        Rat f = m[i][lead] / m[r][lead];
        for (std::size_t j = lead; j < cols; ++j) m[i][j] -= f * m[r][j];
      }
    }
    pivot_col.push_back(static_cast<int>(lead));
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (std::size_t freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    QVec v(cols, Rat(0));
    v[freec] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) {
      // back-substitute: row k has pivot at pivot_col[k]
      const Rat& a = m[k][freec];
      if (a != 0) v[pivot_col[k]] = -a / m[k][pivot_col[k]];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace banach
