#include "banachlab/lp.hpp"

#include <stdexcept>

namespace banach {
namespace {

struct Tableau {
  QMat t;                  // m rows of length n_total + 1, last entry is rhs
  std::vector<int> basis;  // basic column per row
  int m = 0;
  int n_total = 0;
};

// One pivot step on (row r, col j).
void pivot(Tableau& tb, QVec& red, Rat& obj, int r, int j) {
  QVec& row = tb.t[r];
  Rat p = row[j];
  for (auto& v : row) v /= p;
  for (int i = 0; i < tb.m; ++i) {
    if (i == r) continue;
    Rat f = tb.t[i][j];
    if (f == 0) continue;
    for (int k = 0; k <= tb.n_total; ++k) tb.t[i][k] -= f * row[k];
  }
  Rat f = red[j];
  if (f != 0) {
    for (int k = 0; k < tb.n_total; ++k) red[k] -= f * row[k];
    obj += f * row[tb.n_total];
  }
  tb.basis[r] = j;
}

// Bland: entering column is the smallest index with a negative reduced
// cost, leaving row is the smallest ratio with ties broken by the smallest
// basic index.  Returns false once optimal, throws on an unbounded column.
bool simplex_step(Tableau& tb, QVec& red, Rat& obj, int n_limit) {
  int enter = -1;
  for (int j = 0; j < n_limit; ++j) {
    if (red[j] < 0) {
      enter = j;
      break;
    }
  }
  if (enter < 0) return false;
  int leave = -1;
  Rat best;
  for (int i = 0; i < tb.m; ++i) {
    if (tb.t[i][enter] <= 0) continue;
    Rat ratio = tb.t[i][tb.n_total] / tb.t[i][enter];
    if (leave < 0 || ratio < best ||
        (ratio == best && tb.basis[i] < tb.basis[leave])) {
      leave = i;
      best = ratio;
    }
  }
  if (leave < 0) throw LpStatus::unbounded;
  pivot(tb, red, obj, leave, enter);
  return true;
}

void run(Tableau& tb, QVec& red, Rat& obj, int n_limit) {
  long cap = 200000L + 200L * (tb.m + tb.n_total);
  while (simplex_step(tb, red, obj, n_limit)) {
    if (--cap < 0) throw std::runtime_error("lp: pivot cap exceeded");
  }
}

// Multipliers from the current basis: solve B^T y = c_B against the
// original sign-adjusted columns.
QVec basis_dual(const QMat& a_cols, const QVec& cost, const Tableau& tb) {
  int m = tb.m;
  QMat bt(m, QVec(m));
  QVec cb(m);
  for (int k = 0; k < m; ++k) {
    int col = tb.basis[k];
    for (int i = 0; i < m; ++i) bt[k][i] = a_cols[i][col];
    cb[k] = cost[col];
  }
  return qsolve(bt, cb);
}

}  // namespace

LpResult lp_min_eq(const QMat& a_in, const QVec& b_in, const QVec& c) {
  int m = static_cast<int>(a_in.size());
  int n = static_cast<int>(c.size());
  LpResult res;
  if (m == 0) {
    res.status = LpStatus::optimal;
    res.x.assign(n, Rat(0));
    res.value = 0;
    for (const Rat& cj : c)
      if (cj < 0) res.status = LpStatus::unbounded;
    return res;
  }

  // Sign-adjust rows so the rhs is nonnegative, remember the flips.
  std::vector<int> sign(m, 1);
  QMat a(m, QVec(n + m, Rat(0)));
  QVec b(m);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(a_in[i].size()) != n)
      throw std::invalid_argument("lp_min_eq: row size mismatch");
    sign[i] = (b_in[i] < 0) ? -1 : 1;
    for (int j = 0; j < n; ++j) a[i][j] = sign[i] * a_in[i][j];
    a[i][n + i] = 1;  // artificial
    b[i] = sign[i] * b_in[i];
  }

  Tableau tb;
  tb.m = m;
  tb.n_total = n + m;
  tb.basis.resize(m);
  tb.t.assign(m, QVec(n + m + 1, Rat(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n + m; ++j) tb.t[i][j] = a[i][j];
    tb.t[i][n + m] = b[i];
    tb.basis[i] = n + i;
  }

  // Phase 1: minimize the artificial mass.
  QVec red(n + m, Rat(0));
  Rat obj = 0;
  for (int j = 0; j < n; ++j) {
    Rat s = 0;
    for (int i = 0; i < m; ++i) s += a[i][j];
    red[j] = -s;
  }
  for (int i = 0; i < m; ++i) obj += b[i];
  try {
    run(tb, red, obj, n + m);
  } catch (LpStatus) {
    throw std::runtime_error("lp: phase 1 unbounded");
  }

  QVec art_cost(n + m, Rat(0));
  for (int i = 0; i < m; ++i) art_cost[n + i] = 1;
  if (obj != 0) {
    res.status = LpStatus::infeasible;
    QVec y = basis_dual(a, art_cost, tb);
    res.y.resize(m);
    for (int i = 0; i < m; ++i) res.y[i] = sign[i] * y[i];
    res.value = obj;
    return res;
  }

  // Drive leftover artificials out of the basis where the row allows it.
  for (int i = 0; i < m; ++i) {
    if (tb.basis[i] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (tb.t[i][j] != 0) {
        pivot(tb, red, obj, i, j);
        break;
      }
    }
  }

  // Phase 2: rebuild reduced costs for the true objective and ban
  // artificial columns from entering.
  QVec cost(n + m, Rat(0));
  for (int j = 0; j < n; ++j) cost[j] = c[j];
  QVec y0 = basis_dual(a, cost, tb);
  obj = 0;
  for (int j = 0; j < n; ++j) {
    red[j] = c[j];
    for (int i = 0; i < m; ++i) red[j] -= y0[i] * a[i][j];
  }
  for (int j = n; j < n + m; ++j) red[j] = 0;
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] < n) obj += c[tb.basis[i]] * tb.t[i][n + m];
  try {
    run(tb, red, obj, n);
  } catch (LpStatus) {
    res.status = LpStatus::unbounded;
    return res;
  }

  res.status = LpStatus::optimal;
  res.x.assign(n, Rat(0));
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] < n) res.x[tb.basis[i]] = tb.t[i][n + m];
  res.value = 0;
  for (int j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  QVec y = basis_dual(a, cost, tb);
  res.y.resize(m);
  for (int i = 0; i < m; ++i) res.y[i] = sign[i] * y[i];
  return res;
}

LpResult lp_max_ineq(const QMat& a, const QVec& b, const QVec& c) {
  int m = static_cast<int>(a.size());
  int n = static_cast<int>(c.size());
  // Dual: min b.y  s.t.  A^T y = c, y >= 0.
  QMat at(n, QVec(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) at[j][i] = a[i][j];
  LpResult d = lp_min_eq(at, c, b);
  LpResult res;
  if (d.status == LpStatus::infeasible) {
    res.status = LpStatus::unbounded;
    return res;
  }
  if (d.status == LpStatus::unbounded) {
    res.status = LpStatus::infeasible;
    return res;
  }
  res.status = LpStatus::optimal;
  res.value = d.value;
  res.x = d.y;  // multipliers of A^T y = c are the primal maximizer
  res.y = d.x;
  return res;
}

}  // namespace banach
