#pragma once

// Brute-force reference values computed without the library: own group tables,
// own elimination over F_p, ranks of a minimal free resolution of k.

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using Table = std::vector<std::vector<int>>;
using Vec = std::vector<int>;
using Mat = std::vector<Vec>;  // row-major, entries in [0, p)

inline Table cyclic(int n) {
  Table t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

inline Table klein() {
  Table t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return t;
}

// Unit quaternions +-1, +-i, +-j, +-k as (sign, unit) pairs.
inline Table quaternion() {
  // unit products: 0=1, 1=i, 2=j, 3=k
  const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  auto idx = [](int s, int u) { return u * 2 + (s < 0 ? 1 : 0); };
  Table t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ua = a / 2, ub = b / 2;
      int s = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * sign[ua][ub];
      t[a][b] = idx(s, unit[ua][ub]);
    }
  return t;
}

inline int modp(long v, int p) {
  long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

inline int inv_mod(int a, int p) {
  int r = 1;
  for (int e = p - 2, b = a; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

// Row echelon form of a list of vectors; returns rank and keeps the reduced rows.
struct Echelon {
  int p;
  std::vector<Vec> rows;
  std::vector<int> pivots;

  explicit Echelon(int prime) : p(prime) {}

  Vec reduce(Vec v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      int c = pivots[r];
      if (v[c] == 0) continue;
      int f = v[c];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = modp(v[j] - f * rows[r][j], p);
    }
    return v;
  }

  bool add(Vec v) {
    v = reduce(std::move(v));
    std::size_t c = 0;
    while (c < v.size() && v[c] == 0) ++c;
    if (c == v.size()) return false;
    int s = inv_mod(v[c], p);
    for (auto& x : v) x = x * s % p;
    for (auto& row : rows) {
      int f = row[c];
      if (f == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) row[j] = modp(row[j] - f * v[j], p);
    }
    rows.push_back(std::move(v));
    pivots.push_back(static_cast<int>(c));
    return true;
  }
};

// A module by the action of every group element on column vectors.
struct Rep {
  int dim = 0;
  std::vector<Mat> act;
};

inline Vec apply(const Mat& a, const Vec& v, int p) {
  Vec out(a.size(), 0);
  for (std::size_t r = 0; r < a.size(); ++r) {
    long s = 0;
    for (std::size_t c = 0; c < v.size(); ++c) s += a[r][c] * v[c];
    out[r] = modp(s, p);
  }
  return out;
}

// Kernel of the linear map given by column images (cols[j] = image of e_j).
inline std::vector<Vec> kernel(const std::vector<Vec>& cols, int rows, int p) {
  int n = static_cast<int>(cols.size());
  // augment [A^T | I] and eliminate
  std::vector<Vec> aug;
  for (int j = 0; j < n; ++j) {
    Vec v(rows + n, 0);
    for (int r = 0; r < rows; ++r) v[r] = cols[j][r];
    v[rows + j] = 1;
    aug.push_back(std::move(v));
  }
  Echelon e(p);
  for (auto& v : aug) e.add(v);
  std::vector<Vec> out;
  for (std::size_t r = 0; r < e.rows.size(); ++r)
    if (e.pivots[r] >= rows) out.emplace_back(e.rows[r].begin() + rows, e.rows[r].end());
  return out;
}

// dim H^n(G, k) for 0 <= n <= top, i.e. the ranks of a minimal free resolution of k.
inline std::vector<int> resolution_ranks(const Table& t, int p, int top) {
  int g = static_cast<int>(t.size());
  Rep m{1, std::vector<Mat>(g, Mat{{1}})};
  std::vector<int> ranks;
  for (int n = 0; n <= top; ++n) {
    Echelon rad(p);
    for (int x = 0; x < g; ++x)
      for (int c = 0; c < m.dim; ++c) {
        Vec col(m.dim);
        for (int r = 0; r < m.dim; ++r) col[r] = modp(m.act[x][r][c] - (r == c ? 1 : 0), p);
        rad.add(col);
      }
    std::vector<Vec> tops;
    for (int c = 0; c < m.dim; ++c) {
      Vec e(m.dim, 0);
      e[c] = 1;
      if (rad.add(e)) tops.push_back(e);
    }
    int r = static_cast<int>(tops.size());
    ranks.push_back(r);
    if (n == top) break;
    // cover: basis (i, h) maps to h . t_i
    std::vector<Vec> cols;
    for (int i = 0; i < r; ++i)
      for (int h = 0; h < g; ++h) cols.push_back(apply(m.act[h], tops[i], p));
    auto ker = kernel(cols, m.dim, p);
    int kd = static_cast<int>(ker.size());
    int pd = r * g;
    // coordinates of vectors of P in the kernel basis through its echelon form
    Echelon kb(p);
    std::vector<Vec> combo;  // echelon row -> combination of ker vectors
    {
      std::vector<Vec> aug;
      for (int j = 0; j < kd; ++j) {
        Vec v(pd + kd, 0);
        for (int q = 0; q < pd; ++q) v[q] = ker[j][q];
        v[pd + j] = 1;
        aug.push_back(v);
      }
      for (auto& v : aug) kb.add(v);
    }
    Rep next{kd, std::vector<Mat>(g, Mat(kd, Vec(kd, 0)))};
    for (int x = 0; x < g; ++x)
      for (int j = 0; j < kd; ++j) {
        Vec img(pd, 0);
        for (int i = 0; i < r; ++i)
          for (int h = 0; h < g; ++h) img[i * g + t[x][h]] = ker[j][i * g + h];
        // express img = sum c_l ker[l]: eliminate with the augmented echelon rows
        Vec v(pd + kd, 0);
        for (int q = 0; q < pd; ++q) v[q] = img[q];
        for (std::size_t row = 0; row < kb.rows.size(); ++row) {
          int c = kb.pivots[row];
          if (v[c] == 0) continue;
          int f = v[c];
          for (std::size_t q = 0; q < v.size(); ++q) v[q] = modp(v[q] - f * kb.rows[row][q], p);
        }
        // v = img - sum(...) restricted: the tail holds -coefficients
        for (int l = 0; l < kd; ++l) next.act[x][l][j] = modp(-v[pd + l], p);
      }
    m = std::move(next);
  }
  return ranks;
}

// dim of Tate cohomology with trivial coefficients for lo <= i <= hi (p divides |G|):
// H^i = r_i for i >= 0 and H^-m = r_{m-1} for m >= 1.
inline std::vector<int> tate_dims(const Table& t, int p, int lo, int hi) {
  int top = std::max(hi, -lo - 1);
  auto r = resolution_ranks(t, p, std::max(top, 0));
  std::vector<int> out;
  for (int i = lo; i <= hi; ++i) out.push_back(i >= 0 ? r[i] : r[-i - 1]);
  return out;
}

}  // namespace oracle
