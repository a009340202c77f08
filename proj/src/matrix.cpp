#include "scriptgeo/matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace scriptgeo {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

IntMatrix IntMatrix::from_dense(const Dense& d, std::size_t cols) {
  if (!d.empty()) cols = d[0].size();
  IntMatrix m(d.size(), cols);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d[i].size(); ++j) m.set(i, j, d[i][j]);
  return m;
}

Integer IntMatrix::at(std::size_t r, std::size_t c) const {
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Integer(0) : it->second;
}

void IntMatrix::set(std::size_t r, std::size_t c, const Integer& v) {
  if (r >= rows_ || c >= cols_) throw BadParameter("matrix index out of range");
  if (v == 0)
    entries_.erase({r, c});
  else
    entries_[{r, c}] = v;
}

void IntMatrix::add(std::size_t r, std::size_t c, const Integer& v) { set(r, c, at(r, c) + v); }

Dense IntMatrix::dense() const {
  Dense d(rows_, std::vector<Integer>(cols_, 0));
  for (auto& [rc, v] : entries_) d[rc.first][rc.second] = v;
  return d;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (auto& [rc, v] : entries_) t.entries_[{rc.second, rc.first}] = v;
  return t;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  IntMatrix m(rows.size(), cols_);
  std::map<std::size_t, std::vector<std::size_t>> pos;
  for (std::size_t i = 0; i < rows.size(); ++i) pos[rows[i]].push_back(i);
  for (auto& [rc, v] : entries_) {
    auto it = pos.find(rc.first);
    if (it != pos.end())
      for (auto i : it->second) m.entries_[{i, rc.second}] = v;
  }
  return m;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& cols) const {
  return transpose().select_rows(cols).transpose();
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
  std::vector<Integer> v(rows_, 0);
  for (auto& [rc, x] : entries_)
    if (rc.second == c) v[rc.first] = x;
  return v;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& x) const {
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  std::vector<Integer> y(rows_, 0);
  for (auto& [rc, v] : entries_) y[rc.first] += v * x[rc.second];
  return y;
}

Integer IntMatrix::frobenius_squared() const {
  Integer s = 0;
  for (auto& [rc, v] : entries_) s += v * v;
  return s;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product size mismatch");
  std::vector<std::vector<std::pair<std::size_t, Integer>>> brows(b.rows_);
  for (auto& [rc, v] : b.entries_) brows[rc.first].push_back({rc.second, v});
  IntMatrix c(a.rows_, b.cols_);
  for (auto& [rc, v] : a.entries_)
    for (auto& [j, w] : brows[rc.second]) c.add(rc.first, j, v * w);
  return c;
}

void write_matrix(std::ostream& os, const IntMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (auto& [rc, v] : m.entries()) os << rc.first << ' ' << rc.second << ' ' << v << '\n';
}

IntMatrix read_matrix(std::istream& is) {
  std::size_t r = 0, c = 0;
  if (!(is >> r >> c)) throw BadParameter("matrix header expected");
  IntMatrix m(r, c);
  std::size_t i, j;
  std::string v;
  while (is >> i >> j >> v) m.set(i, j, Integer(v));
  return m;
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < rank; ++i) d.push_back(D.at(i, i));
  return d;
}

namespace {

struct DenseSnf {
  Dense A, U, V;
  std::size_t m, n, rank = 0;
  bool track;

  DenseSnf(Dense a, std::size_t rows, std::size_t cols, bool track_transforms)
      : A(std::move(a)), m(rows), n(cols), track(track_transforms) {
    if (track) {
      U.assign(m, std::vector<Integer>(m, 0));
      V.assign(n, std::vector<Integer>(n, 0));
      for (std::size_t i = 0; i < m; ++i) U[i][i] = 1;
      for (std::size_t i = 0; i < n; ++i) V[i][i] = 1;
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(A[i], A[j]);
    if (track) std::swap(U[i], U[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : A) std::swap(row[i], row[j]);
    if (track)
      for (auto& row : V) std::swap(row[i], row[j]);
  }
  // row i += k * row j
  void add_row(std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t c = 0; c < n; ++c)
      if (A[j][c] != 0) A[i][c] += k * A[j][c];
    if (track)
      for (std::size_t c = 0; c < m; ++c)
        if (U[j][c] != 0) U[i][c] += k * U[j][c];
  }
  // col i += k * col j
  void add_col(std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t r = 0; r < m; ++r)
      if (A[r][j] != 0) A[r][i] += k * A[r][j];
    if (track)
      for (std::size_t r = 0; r < n; ++r)
        if (V[r][j] != 0) V[r][i] += k * V[r][j];
  }
  void negate_row(std::size_t i) {
    for (auto& x : A[i]) x = -x;
    if (track)
      for (auto& x : U[i]) x = -x;
  }

  void run() {
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      // global pivot: minimal |entry|, ties by lowest row then column
      bool found = false;
      std::size_t pi = 0, pj = 0;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (A[i][j] != 0 && (!found || abs(A[i][j]) < best)) {
            found = true;
            best = abs(A[i][j]);
            pi = i;
            pj = j;
          }
      if (!found) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      for (;;) {
        for (std::size_t i = t + 1; i < m; ++i)
          if (A[i][t] != 0) {
            Integer q = A[i][t] / A[t][t];
            if (q != 0) add_row(i, t, -q);
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (A[t][j] != 0) {
            Integer q = A[t][j] / A[t][t];
            if (q != 0) add_col(j, t, -q);
          }
        // remainders left in the pivot row/column are smaller than the pivot
        bool rem = false;
        std::size_t ri = 0, rj = 0;
        Integer rb;
        for (std::size_t i = t + 1; i < m; ++i)
          if (A[i][t] != 0 && (!rem || abs(A[i][t]) < rb)) {
            rem = true;
            rb = abs(A[i][t]);
            ri = i;
            rj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (A[t][j] != 0 && (!rem || abs(A[t][j]) < rb)) {
            rem = true;
            rb = abs(A[t][j]);
            ri = t;
            rj = j;
          }
        if (rem) {
          swap_rows(t, ri);
          swap_cols(t, rj);
          continue;
        }
        bool fixed = false;
        for (std::size_t i = t + 1; i < m && !fixed; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (A[i][j] % A[t][t] != 0) {
              add_row(t, i, 1);
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (A[t][t] < 0) negate_row(t);
    }
    rank = t;
  }
};

std::size_t compact_to_dense(const std::vector<std::map<std::size_t, Integer>>& rows, Dense& out) {
  std::map<std::size_t, std::size_t> colmap;
  for (auto& r : rows)
    for (auto& [c, v] : r) colmap.emplace(c, 0);
  std::size_t k = 0;
  for (auto& [c, idx] : colmap) idx = k++;
  out.clear();
  for (auto& r : rows) {
    if (r.empty()) continue;
    std::vector<Integer> row(k, 0);
    for (auto& [c, v] : r) row[colmap[c]] = v;
    out.push_back(std::move(row));
  }
  return k;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  DenseSnf s(a.dense(), a.rows(), a.cols(), true);
  s.run();
  SmithForm f;
  f.U = IntMatrix::from_dense(s.U, a.rows());
  f.V = IntMatrix::from_dense(s.V, a.cols());
  f.D = IntMatrix::from_dense(s.A, a.cols());
  f.rank = s.rank;
  if (!(f.U * a * f.V == f.D)) throw InternalError("Smith form reconstruction failed");
  for (std::size_t i = 0; i < f.rank; ++i) {
    if (f.D.at(i, i) <= 0) throw InternalError("Smith form diagonal not positive");
    if (i + 1 < f.rank && f.D.at(i + 1, i + 1) % f.D.at(i, i) != 0)
      throw InternalError("Smith form divisibility chain broken");
  }
  if (f.D.nonzeros() != f.rank) throw InternalError("Smith form not diagonal");
  return f;
}

std::vector<Integer> invariant_factors(const IntMatrix& a) {
  std::vector<std::map<std::size_t, Integer>> rows(a.rows());
  std::vector<std::set<std::size_t>> cols(a.cols());
  for (auto& [rc, v] : a.entries()) {
    rows[rc.first][rc.second] = v;
    cols[rc.second].insert(rc.first);
  }
  std::size_t units = 0;
  for (;;) {
    // unit pivot with the smallest fill estimate
    bool found = false;
    std::size_t pr = 0, pc = 0, cost = 0;
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (auto& [c, v] : rows[r])
        if (abs(v) == 1) {
          std::size_t k = (rows[r].size() - 1) * (cols[c].size() - 1);
          if (!found || k < cost) {
            found = true;
            cost = k;
            pr = r;
            pc = c;
          }
        }
    if (!found) break;
    Integer p = rows[pr][pc];
    std::vector<std::size_t> targets(cols[pc].begin(), cols[pc].end());
    for (auto r : targets) {
      if (r == pr) continue;
      Integer f = rows[r][pc] * p;  // p is its own inverse
      for (auto& [c, v] : rows[pr]) {
        Integer nv = rows[r][c] - f * v;
        if (nv == 0) {
          rows[r].erase(c);
          cols[c].erase(r);
        } else {
          rows[r][c] = nv;
          cols[c].insert(r);
        }
      }
    }
    for (auto& [c, v] : rows[pr]) cols[c].erase(pr);
    rows[pr].clear();
    ++units;
  }
  std::vector<Integer> out(units, 1);
  Dense rest;
  std::size_t k = compact_to_dense(rows, rest);
  if (!rest.empty()) {
    DenseSnf s(rest, rest.size(), k, false);
    s.run();
    for (std::size_t i = 0; i < s.rank; ++i) out.push_back(s.A[i][i]);
  }
  return out;
}

std::size_t rank(const IntMatrix& a) { return invariant_factors(a).size(); }

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
  std::size_t n = a.rows();
  if (n == 0) return 1;
  Dense M = a.dense();
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && M[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(M[k], M[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    }
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

std::vector<Integer> primitive(std::vector<Integer> v) {
  Integer g = 0;
  for (auto& x : v) g = gcd(g, x);
  if (g == 0) return v;
  for (auto& x : v) x /= g;
  for (auto& x : v)
    if (x != 0) {
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
  return v;
}

IntMatrix from_columns(const std::vector<std::vector<Integer>>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
  return m;
}

std::vector<std::vector<Integer>> kernel_basis(const IntMatrix& a) {
  std::vector<std::vector<Integer>> out;
  if (a.cols() == 0) return out;
  if (a.rows() == 0) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::vector<Integer> e(a.cols(), 0);
      e[j] = 1;
      out.push_back(e);
    }
    return out;
  }
  auto f = smith_normal_form(a);
  for (std::size_t j = f.rank; j < a.cols(); ++j) out.push_back(primitive(f.V.column(j)));
  return out;
}

std::optional<std::vector<Integer>> solve_in_lattice(const std::vector<std::vector<Integer>>& basis,
                                                     const std::vector<Integer>& b) {
  std::size_t n = b.size();
  if (basis.empty()) {
    for (auto& x : b)
      if (x != 0) return std::nullopt;
    return std::vector<Integer>{};
  }
  auto K = from_columns(basis, n);
  auto f = smith_normal_form(K);
  IntMatrix bm(n, 1);
  for (std::size_t i = 0; i < n; ++i) bm.set(i, 0, b[i]);
  auto y = (f.U * bm).column(0);
  std::vector<Integer> z(basis.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < f.rank) {
      Integer d = f.D.at(i, i);
      if (y[i] % d != 0) return std::nullopt;
      z[i] = y[i] / d;
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return f.V.apply(z);
}

}  // namespace scriptgeo
