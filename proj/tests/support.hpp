#pragma once

// shared fixtures for the unit tests and the acceptance runner

#include "scriptgeo/catalog.hpp"
#include "scriptgeo/equivalence.hpp"
#include "scriptgeo/format.hpp"
#include "scriptgeo/homology.hpp"
#include "scriptgeo/matrix.hpp"
#include "scriptgeo/ops.hpp"
#include "scriptgeo/products.hpp"
#include "scriptgeo/spectral.hpp"
#include "scriptgeo/tightness.hpp"

#include <cmath>
#include <random>

namespace testsupport {

using namespace scriptgeo;

// random valid script: each new boundary is a small combination of a lattice
// basis of the cycles one dimension down, so d^2 = 0 by construction
inline Script random_script(std::mt19937& rng, int max_dim = 3, int max_per_dim = 6, bool unit_acc = false) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Script s("fuzz");
  int n0 = pick(1, max_per_dim);
  for (int i = 0; i < n0; ++i) {
    int a = unit_acc ? 1 : std::vector<int>{1, 1, 1, -1, 2}[pick(0, 4)];
    s.add_point("p" + std::to_string(i), a);
  }
  for (int k = 1; k <= max_dim; ++k) {
    auto rows = row_basis(s, k - 1);
    auto cols = s.cells(k - 1);
    auto Z = kernel_basis(boundary_matrix(s, k - 1));
    if (Z.empty()) break;
    int nk = pick(0, max_per_dim);
    if (nk == 0) break;
    int made = 0;
    for (int i = 0; i < nk; ++i) {
      std::vector<Integer> v(cols.size(), 0);
      int terms = pick(1, std::min<int>(2, static_cast<int>(Z.size())));
      for (int t = 0; t < terms; ++t) {
        const auto& z = Z[pick(0, static_cast<int>(Z.size()) - 1)];
        int c = pick(-2, 2);
        if (c == 0) c = 1;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += z[j] * c;
      }
      Chain b(k - 1);
      for (std::size_t j = 0; j < v.size(); ++j) b.add(cols[j], v[j]);
      if (b.is_zero()) continue;
      s.add_cell(k, "c" + std::to_string(k) + "_" + std::to_string(made++), b);
    }
    if (made == 0) break;
  }
  return s;
}

// rank modulo a prime by plain Gaussian elimination (independent of the library's elimination)
inline std::size_t rank_mod(const IntMatrix& a, long long p) {
  std::vector<std::vector<long long>> m(a.rows(), std::vector<long long>(a.cols(), 0));
  for (auto& [rc, v] : a.entries()) {
    Integer r = v % p;
    if (r < 0) r += p;
    m[rc.first][rc.second] = r.convert_to<long long>();
  }
  auto inv = [&](long long x) {
    long long r = 1, e = p - 2;
    x %= p;
    while (e) {
      if (e & 1) r = static_cast<long long>((__int128)r * x % p);
      x = static_cast<long long>((__int128)x * x % p);
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < a.rows() && m[piv][c] == 0) ++piv;
    if (piv == a.rows()) continue;
    std::swap(m[piv], m[rank]);
    long long iv = inv(m[rank][c]);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      long long f = static_cast<long long>((__int128)m[r][c] * iv % p);
      for (std::size_t j = c; j < a.cols(); ++j) m[r][j] = ((m[r][j] - (__int128)f * m[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// dim H_k over F_p from ranks of the boundary matrices
inline std::size_t betti_mod(const Script& s, int k, long long p) {
  std::size_t ck = row_basis(s, k + 1).size();
  std::size_t out = boundary_matrix(s, k).cols() ? rank_mod(boundary_matrix(s, k), p) : 0;
  std::size_t in = rank_mod(boundary_matrix(s, k + 1), p);
  return ck - out - in;
}

inline std::size_t torsion_count(const HomologyGroup& h, long long p) {
  std::size_t n = 0;
  for (auto& t : h.torsion)
    if (t % p == 0) ++n;
  return n;
}

// universal coefficients: dim H_k(F_p) = b_k + t_k(p) + t_{k-1}(p); p large gives b_k
inline bool homology_matches_oracle(const Script& s, std::string* why = nullptr) {
  const long long big = 1000000007LL;
  auto hs = homology_all(s);
  for (int k = s.base_dim(); k <= s.top_dim(); ++k) {
    HomologyGroup h = hs.count(k) ? hs.at(k) : homology(s, k);
    HomologyGroup below = hs.count(k - 1) ? hs.at(k - 1) : HomologyGroup{};
    if (betti_mod(s, k, big) != h.rank) {
      if (why) *why = "rational rank differs at k=" + std::to_string(k);
      return false;
    }
    for (long long p : {2LL, 3LL, 5LL, 7LL}) {
      if (betti_mod(s, k, p) != h.rank + torsion_count(h, p) + torsion_count(below, p)) {
        if (why) *why = "mod " + std::to_string(p) + " rank differs at k=" + std::to_string(k);
        return false;
      }
    }
  }
  return true;
}

inline bool eigen_match(const std::vector<Cluster>& got, const std::vector<EigenCluster>& want, double tol = 1e-6) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (std::fabs(got[i].value - want[i].value) > tol || got[i].multiplicity != want[i].multiplicity) return false;
  return true;
}

inline std::vector<std::vector<Integer>> vectors_of(const std::vector<MixedChain>& basis, const std::vector<CellId>& cells) {
  std::vector<std::vector<Integer>> out;
  for (auto& m : basis) out.push_back(from_mixed(m, cells));
  return out;
}

// chains written against a script, as vectors in its Dirac basis
inline std::vector<std::vector<Integer>> vectors_of(const Script& s, const std::vector<std::string>& chains) {
  auto basis = dirac_basis(s);
  std::vector<std::vector<Integer>> out;
  for (auto& text : chains) {
    Chain c = parse_chain(s, text);
    MixedChain m;
    for (auto& [n, k] : c.terms()) m.add(CellId{c.dim(), n}, k);
    out.push_back(from_mixed(m, basis));
  }
  return out;
}

// d^2 = 0 through the dual boundary
inline bool dual_squares_to_zero(const Script& s) {
  std::vector<CellId> all;
  if (s.has_accumulator()) all.push_back(s.accumulator());
  for (auto& c : s.all_cells()) all.push_back(c);
  for (auto& c : all) {
    Chain d = dual_boundary(s, c);
    Chain dd(d.dim() + 1);
    for (auto& [n, k] : d.terms()) dd += dual_boundary(s, CellId{d.dim(), n}) * k;
    if (!dd.is_zero()) return false;
  }
  return true;
}

inline bool smith_reconstructs(const IntMatrix& a) {
  auto f = smith_normal_form(a);
  if (!(f.U * a * f.V == f.D)) return false;
  auto d = f.diagonal();
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (d[i + 1] % d[i] != 0) return false;
  for (auto& [rc, v] : f.D.entries())
    if (rc.first != rc.second || v <= 0) return false;
  Integer du = determinant(f.U), dv = determinant(f.V);
  return (du == 1 || du == -1) && (dv == 1 || dv == -1);
}

inline const std::vector<Script>& small_generators() {
  static const std::vector<Script> g = [] {
    std::vector<Script> v{gen_interval(), gen_circle()};
    for (int k = 2; k <= 5; ++k) v.push_back(gen_polygon(k));
    for (int m = 1; m <= 2; ++m) v.push_back(gen_sphere(m));
    for (int m = 1; m <= 3; ++m) v.push_back(gen_simplex(m));
    return v;
  }();
  return g;
}

}  // namespace testsupport
