#include "scriptgeo/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace scriptgeo {

std::vector<CellId> dirac_basis(const Script& s) {
  std::vector<CellId> b;
  if (s.has_accumulator()) b.push_back(s.accumulator());
  for (auto& c : s.all_cells()) b.push_back(c);
  return b;
}

IntMatrix dirac_matrix(const Script& s) {
  auto basis = dirac_basis(s);
  std::map<CellId, std::size_t> at;
  for (std::size_t i = 0; i < basis.size(); ++i) at[basis[i]] = i;
  IntMatrix D(basis.size(), basis.size());
  for (auto& c : s.all_cells()) {
    std::size_t i = at.at(c);
    const Chain& b = s.boundary(c);
    for (auto& [n, k] : b.terms()) {
      if (k == 0) continue;
      std::size_t j = at.at(CellId{b.dim(), n});
      D.set(j, i, k);
      D.set(i, j, k);
    }
  }
  return D;
}

IntMatrix laplace_matrix(const Script& s) {
  auto basis = dirac_basis(s);
  IntMatrix D = dirac_matrix(s);
  IntMatrix L = D * D;
  for (auto& [rc, v] : L.entries())
    if (basis[rc.first].dim != basis[rc.second].dim) throw InternalError("Laplace matrix is not block diagonal");
  return L;
}

std::size_t Spectrum::size() const {
  std::size_t n = 0;
  for (auto& c : eigenvalues) n += c.multiplicity;
  return n;
}

std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a, double tol, int max_sweeps) {
  std::size_t n = a.size();
  auto off = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a[i][j] * a[i][j];
    return std::sqrt(s);
  };
  int sweep = 0;
  while (off() >= tol) {
    if (sweep++ >= max_sweeps) throw NoConvergence("Jacobi did not converge in " + std::to_string(max_sweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a[p][q];
        if (apq == 0) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        a[p][q] = a[q][p] = 0;
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<Cluster> cluster(std::vector<double> values, double tol) {
  std::sort(values.begin(), values.end());
  std::vector<Cluster> out;
  double sum = 0, last = 0;
  std::size_t count = 0;
  for (double v : values) {
    if (count > 0 && v - last > tol) {
      out.push_back({sum / static_cast<double>(count), count});
      sum = 0;
      count = 0;
    }
    sum += v;
    last = v;
    ++count;
  }
  if (count > 0) out.push_back({sum / static_cast<double>(count), count});
  for (auto& c : out)
    if (std::fabs(c.value) < tol) c.value = 0;
  return out;
}

Integer sound(const Script& s) { return dirac_matrix(s).frobenius_squared(); }

Spectrum spectrum(const Script& s) {
  IntMatrix D = dirac_matrix(s);
  std::vector<std::vector<double>> a(D.rows(), std::vector<double>(D.cols(), 0.0));
  for (auto& [rc, v] : D.entries()) a[rc.first][rc.second] = v.convert_to<double>();
  auto ev = jacobi_eigenvalues(a);
  Spectrum sp;
  sp.eigenvalues = cluster(ev);
  sp.sound_exact = D.frobenius_squared();
  for (double x : ev) sp.sound_float += x * x;
  double tol = 1e-6 * std::max<double>(1, static_cast<double>(ev.size()));
  if (std::fabs(sp.sound_float - sp.sound_exact.convert_to<double>()) > tol)
    throw InternalError("sound cross-check failed");
  return sp;
}

// ---- exact kernels ----

namespace {

void normalize_row(std::vector<Integer>& r) {
  Integer g = 0;
  for (auto& x : r) g = gcd(g, x);
  if (g > 1)
    for (auto& x : r) x /= g;
}

struct Echelon {
  Dense M;
  std::vector<std::size_t> pivots;  // pivot column of row i
};

Echelon reduce(const IntMatrix& a) {
  Echelon e{a.dense(), {}};
  auto& M = e.M;
  std::size_t rows = a.rows(), cols = a.cols(), row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t best = rows;
    for (std::size_t i = row; i < rows; ++i)
      if (M[i][col] != 0 && (best == rows || abs(M[i][col]) < abs(M[best][col]))) best = i;
    if (best == rows) continue;
    std::swap(M[row], M[best]);
    normalize_row(M[row]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || M[i][col] == 0) continue;
      Integer p = M[row][col], q = M[i][col], g = gcd(p, q);
      Integer fp = p / g, fq = q / g;
      for (std::size_t j = 0; j < cols; ++j) M[i][j] = fp * M[i][j] - fq * M[row][j];
      normalize_row(M[i]);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

}  // namespace

std::size_t rational_rank(const IntMatrix& a) { return reduce(a).pivots.size(); }

std::vector<std::vector<Integer>> rational_kernel(const IntMatrix& a) {
  auto e = reduce(a);
  std::size_t n = a.cols();
  std::vector<char> is_pivot(n, 0);
  for (auto c : e.pivots) is_pivot[c] = 1;
  Integer L = 1;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    Integer p = abs(e.M[r][e.pivots[r]]);
    L = L / gcd(L, p) * p;
  }
  std::vector<std::vector<Integer>> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Integer> x(n, 0);
    x[f] = L;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      std::size_t c = e.pivots[r];
      x[c] = -e.M[r][f] * L / e.M[r][c];
    }
    out.push_back(primitive(x));
  }
  return out;
}

bool same_span(const std::vector<std::vector<Integer>>& a, const std::vector<std::vector<Integer>>& b) {
  auto rk = [](const std::vector<std::vector<Integer>>& v) -> std::size_t {
    if (v.empty()) return 0;
    Dense d(v.begin(), v.end());
    return rational_rank(IntMatrix::from_dense(d));
  };
  std::vector<std::vector<Integer>> both = a;
  both.insert(both.end(), b.begin(), b.end());
  std::size_t ra = rk(a), rb = rk(b);
  return ra == rb && rk(both) == ra;
}

MixedChain to_mixed(const std::vector<Integer>& v, const std::vector<CellId>& basis) {
  MixedChain m;
  for (std::size_t i = 0; i < basis.size(); ++i) m.add(basis[i], v[i]);
  return m;
}

std::vector<Integer> from_mixed(const MixedChain& f, const std::vector<CellId>& basis) {
  std::vector<Integer> v(basis.size(), 0);
  std::map<CellId, std::size_t> at;
  for (std::size_t i = 0; i < basis.size(); ++i) at[basis[i]] = i;
  for (auto& [c, k] : f.terms) {
    auto it = at.find(c);
    if (it == at.end()) throw UnknownCell(to_string(c));
    v[it->second] = k;
  }
  return v;
}

std::vector<MixedChain> monogenic_kernel(const Script& s) {
  auto basis = dirac_basis(s);
  std::vector<MixedChain> out;
  for (auto& v : rational_kernel(dirac_matrix(s))) out.push_back(to_mixed(v, basis));
  return out;
}

std::vector<MixedChain> harmonic_kernel(const Script& s) {
  auto basis = dirac_basis(s);
  auto h = rational_kernel(laplace_matrix(s));
  auto m = rational_kernel(dirac_matrix(s));
  if (!same_span(h, m)) throw InternalError("harmonic and monogenic kernels differ");
  std::vector<MixedChain> out;
  for (auto& v : h) out.push_back(to_mixed(v, basis));
  return out;
}

bool hodge_check(const Script& s, const MixedChain& f) {
  if (f.terms.empty()) return true;
  int k = f.terms.begin()->first.dim;
  for (auto& [c, x] : f.terms)
    if (c.dim != k) throw NonHomogeneous("chain mixes dimensions " + std::to_string(k) + " and " + std::to_string(c.dim));
  Chain del(k - 1), d(k + 1);
  for (auto& [c, x] : f.terms) {
    if (!(c == s.accumulator())) del += s.boundary(c) * x;
    d += dual_boundary(s, c) * x;
  }
  return del.is_zero() && d.is_zero();
}

}  // namespace scriptgeo
