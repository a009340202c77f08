#include "scriptgeo/homology.hpp"

#include <algorithm>

namespace scriptgeo {

std::string to_string(const HomologyGroup& h) {
  std::string s;
  if (h.rank > 0) s = h.rank == 1 ? "Z" : "Z^" + std::to_string(h.rank);
  for (auto& t : h.torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + t.str();
  }
  return s.empty() ? "0" : s;
}

std::vector<CellId> row_basis(const Script& s, int k) {
  std::vector<CellId> r;
  if (k == s.base_dim()) {
    if (s.has_accumulator()) r.push_back(s.accumulator());
    return r;
  }
  for (auto& n : s.cells(k - 1)) r.push_back(CellId{k - 1, n});
  return r;
}

IntMatrix boundary_matrix(const Script& s, int k) {
  auto rows = row_basis(s, k);
  const auto& cols = s.cells(k);
  IntMatrix m(rows.size(), cols.size());
  std::map<std::string, std::size_t> ri;
  for (std::size_t i = 0; i < rows.size(); ++i) ri[rows[i].name] = i;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (auto& [n, c] : s.boundary(CellId{k, cols[j]}).terms()) {
      auto it = ri.find(n);
      if (it == ri.end()) throw UnknownCell(n);
      m.set(it->second, j, c);
    }
  return m;
}

HomologyGroup homology(const Script& s, int k) {
  HomologyGroup h;
  std::size_t nk, rk = 0;
  if (k == s.base_dim() - 1) {
    nk = s.has_accumulator() ? 1 : 0;
  } else {
    nk = s.cells(k).size();
    rk = rank(boundary_matrix(s, k));
  }
  auto f = invariant_factors(boundary_matrix(s, k + 1));
  h.rank = nk - rk - f.size();
  for (auto& x : f)
    if (x > 1) h.torsion.push_back(x);
  std::sort(h.torsion.begin(), h.torsion.end());
  return h;
}

std::map<int, HomologyGroup> homology_all(const Script& s) {
  std::map<int, HomologyGroup> r;
  for (int k = s.base_dim() - 1; k <= std::max(s.top_dim(), s.base_dim() - 1); ++k) r[k] = homology(s, k);
  return r;
}

std::vector<CellId> ordered(const Script& s, const std::set<CellId>& cells) {
  std::vector<CellId> v(cells.begin(), cells.end());
  for (auto& c : v)
    if (!(c == s.accumulator()) && !s.contains(c)) throw UnknownCell(to_string(c));
  auto key = [&](const CellId& c) {
    return std::pair<int, std::size_t>(c.dim, c == s.accumulator() ? 0 : s.index_of(c));
  };
  std::sort(v.begin(), v.end(), [&](const CellId& a, const CellId& b) { return key(a) < key(b); });
  return v;
}

std::vector<Integer> coords(const Chain& c, const std::vector<CellId>& basis) {
  std::vector<Integer> v(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].dim == c.dim()) v[i] = c.coeff(basis[i].name);
  return v;
}

Chain chain_from(const std::vector<Integer>& v, const std::vector<CellId>& basis, int dim) {
  Chain c(dim);
  for (std::size_t i = 0; i < basis.size(); ++i) c.add(basis[i].name, v[i]);
  return c;
}

namespace {

int common_dim(const std::set<CellId>& U) {
  int k = U.begin()->dim;
  for (auto& c : U)
    if (c.dim != k) throw NonHomogeneous("cell set mixes dimensions");
  return k;
}

// matrix of the boundary restricted to U columns, rows outside V
IntMatrix restricted(const Script& s, const std::vector<CellId>& cols, const std::set<CellId>& V, int k,
                     std::vector<CellId>* rows_out = nullptr) {
  std::vector<CellId> rows;
  for (auto& r : row_basis(s, k))
    if (!V.count(r)) rows.push_back(r);
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto col = coords(s.boundary(cols[j]), rows);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set(i, j, col[i]);
  }
  if (rows_out) *rows_out = rows;
  return m;
}

}  // namespace

std::vector<Chain> relative_cycles(const Script& s, const std::set<CellId>& U, const std::set<CellId>& V) {
  std::vector<Chain> out;
  if (U.empty()) return out;
  int k = common_dim(U);
  for (auto& v : V)
    if (v.dim != k - 1) throw DimensionMismatch("V must consist of (k-1)-cells");
  auto cols = ordered(s, U);
  for (auto& v : kernel_basis(restricted(s, cols, V, k))) out.push_back(chain_from(v, cols, k));
  return out;
}

HomologyGroup relative_homology(const Script& s, const std::set<CellId>& U, const std::set<CellId>& V) {
  HomologyGroup h;
  if (U.empty()) return h;
  int k = common_dim(U);
  auto cols = ordered(s, U);
  auto Z = kernel_basis(restricted(s, cols, V, k));
  if (Z.empty()) return h;

  // boundaries of ambient (k+1)-chains whose boundary stays inside U
  std::vector<std::vector<Integer>> gens;
  const auto& up = s.cells(k + 1);
  if (!up.empty()) {
    IntMatrix A = boundary_matrix(s, k + 1);
    std::vector<std::size_t> in, out;
    for (std::size_t i = 0; i < s.cells(k).size(); ++i)
      (U.count(CellId{k, s.cells(k)[i]}) ? in : out).push_back(i);
    std::vector<std::vector<Integer>> L;
    if (out.empty()) {
      for (std::size_t j = 0; j < up.size(); ++j) {
        std::vector<Integer> e(up.size(), 0);
        e[j] = 1;
        L.push_back(e);
      }
    } else {
      L = kernel_basis(A.select_rows(out));
    }
    IntMatrix Ain = A.select_rows(in);
    for (auto& x : L) gens.push_back(Ain.apply(x));
  }
  // cells of U whose boundary support lies in V
  for (std::size_t j = 0; j < cols.size(); ++j) {
    bool inside = true;
    for (auto& f : s.boundary(cols[j]).support())
      if (!V.count(f)) inside = false;
    if (inside) {
      std::vector<Integer> e(cols.size(), 0);
      e[j] = 1;
      gens.push_back(e);
    }
  }
  IntMatrix R(Z.size(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    auto y = solve_in_lattice(Z, gens[j]);
    if (!y) throw InternalError("relative boundary not a relative cycle");
    for (std::size_t i = 0; i < Z.size(); ++i) R.set(i, j, (*y)[i]);
  }
  auto f = invariant_factors(R);
  h.rank = Z.size() - f.size();
  for (auto& x : f)
    if (x > 1) h.torsion.push_back(x);
  std::sort(h.torsion.begin(), h.torsion.end());
  return h;
}

}  // namespace scriptgeo
