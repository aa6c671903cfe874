#include "banachlab/dd.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace banach {
namespace {

constexpr int kMaskWords = 4;
constexpr int kMaxRows = 64 * kMaskWords;

struct Mask {
  std::uint64_t w[kMaskWords] = {0, 0, 0, 0};
  void set(int i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
  friend Mask operator&(const Mask& a, const Mask& b) {
    Mask r;
    for (int k = 0; k < kMaskWords; ++k) r.w[k] = a.w[k] & b.w[k];
    return r;
  }
  bool contains(const Mask& sub) const {
    for (int k = 0; k < kMaskWords; ++k)
      if (sub.w[k] & ~w[k]) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (int k = 0; k < kMaskWords; ++k) c += __builtin_popcountll(w[k]);
    return c;
  }
};

struct Ray {
  QVec v;  // length D = d+1, homogeneous (x, t)
  Mask active;
};

// Scale to a primitive integer vector, preserving orientation.
void canonicalize(QVec& v) {
  mpz_class den_lcm = 1;
  for (const Rat& q : v) {
    mpz_class d = q.get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    den_lcm = den_lcm / g * d;
  }
  mpz_class num_gcd = 0;
  for (Rat& q : v) {
    q *= Rat(den_lcm);
    q.canonicalize();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            q.get_num().get_mpz_t());
  }
  if (num_gcd == 0) return;
  for (Rat& q : v) {
    q /= Rat(num_gcd);
    q.canonicalize();
  }
}

// d+1 rows of hom with exact rank d+1, chosen greedily in input order.
std::vector<int> independent_rows(const QMat& hom, int D) {
  std::vector<int> picked;
  QMat acc;
  for (int i = 0; i < static_cast<int>(hom.size()); ++i) {
    acc.push_back(hom[i]);
    if (qrank(acc) == static_cast<int>(acc.size())) {
      picked.push_back(i);
      if (static_cast<int>(picked.size()) == D) return picked;
    } else {
      acc.pop_back();
    }
  }
  throw std::runtime_error("dd: constraint rows do not span (unbounded set)");
}

}  // namespace

std::vector<QVec> enumerate_vertices(const QMat& rows, int d) {
  int k = static_cast<int>(rows.size());
  int D = d + 1;
  if (k > kMaxRows) throw std::runtime_error("dd: too many rows");
  if (k < D) throw std::runtime_error("dd: too few rows for a bounded set");

  // Homogenize a.x <= 1 to a.x - t <= 0.
  QMat hom(k, QVec(D));
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(rows[i].size()) != d)
      throw std::invalid_argument("dd: row size mismatch");
    for (int j = 0; j < d; ++j) hom[i][j] = rows[i][j];
    hom[i][d] = -1;
  }

  std::vector<int> init = independent_rows(hom, D);
  std::vector<bool> is_init(k, false);
  for (int i : init) is_init[i] = true;

  // Simplicial start: rays are the columns of -M^{-1}.
  QMat m(D, QVec(D));
  for (int j = 0; j < D; ++j) m[j] = hom[init[j]];
  std::vector<Ray> rays;
  for (int j = 0; j < D; ++j) {
    QVec e(D, Rat(0));
    e[j] = -1;
    Ray r;
    r.v = qsolve(m, e);
    canonicalize(r.v);
    rays.push_back(std::move(r));
  }

  std::vector<int> processed = init;
  auto refresh_active = [&](Ray& r) {
    r.active = Mask();
    for (int i : processed)
      if (qdot(hom[i], r.v) == 0) r.active.set(i);
  };
  for (Ray& r : rays) refresh_active(r);

  for (int row = 0; row < k; ++row) {
    if (is_init[row]) continue;
    std::vector<Rat> s(rays.size());
    bool any_pos = false;
    for (std::size_t j = 0; j < rays.size(); ++j) {
      s[j] = qdot(hom[row], rays[j].v);
      if (s[j] > 0) any_pos = true;
    }
    if (!any_pos) {
      processed.push_back(row);
      for (std::size_t j = 0; j < rays.size(); ++j)
        if (s[j] == 0) rays[j].active.set(row);
      continue;
    }
    std::vector<Ray> next;
    std::vector<std::size_t> neg, pos;
    for (std::size_t j = 0; j < rays.size(); ++j) {
      if (s[j] < 0) {
        neg.push_back(j);
      } else if (s[j] > 0) {
        pos.push_back(j);
      } else {
        rays[j].active.set(row);
        next.push_back(rays[j]);
      }
    }
    for (std::size_t j : neg) next.push_back(rays[j]);
    std::vector<Ray> born;
    for (std::size_t p : neg) {
      for (std::size_t q : pos) {
        Mask common = rays[p].active & rays[q].active;
        if (common.count() < D - 2) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size(); ++r) {
          if (r == p || r == q) continue;
          if (rays[r].active.contains(common)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        Ray nr;
        nr.v.resize(D);
        for (int t = 0; t < D; ++t)
          nr.v[t] = s[q] * rays[p].v[t] - s[p] * rays[q].v[t];
        canonicalize(nr.v);
        born.push_back(std::move(nr));
      }
    }
    processed.push_back(row);
    for (Ray& r : born) {
      refresh_active(r);
      next.push_back(std::move(r));
    }
    rays = std::move(next);
  }

  std::vector<QVec> verts;
  verts.reserve(rays.size());
  for (const Ray& r : rays) {
    const Rat& t = r.v[d];
    if (t <= 0)
      throw std::runtime_error("dd: recession direction, set is unbounded");
    QVec x(d);
    for (int j = 0; j < d; ++j) x[j] = r.v[j] / t;
    verts.push_back(std::move(x));
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

std::vector<QVec> facets_of_hull(const std::vector<QVec>& points, int d) {
  QMat rows(points.begin(), points.end());
  return enumerate_vertices(rows, d);
}

}  // namespace banach
