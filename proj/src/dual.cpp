#include "scriptgeo/spectral.hpp"

#include "scriptgeo/homology.hpp"

#include <functional>

namespace scriptgeo {

int kronecker(const CellId& a, const CellId& b) { return a == b ? 1 : 0; }

Chain dual_boundary(const Script& s, const CellId& c) {
  if (c == s.accumulator()) {
    Chain r(s.base_dim());
    if (!s.has_accumulator()) return r;
    for (auto& p : s.cells(s.base_dim())) r.add(p, s.acc(p));
    return r;
  }
  if (!s.contains(c)) throw UnknownCell(to_string(c));
  Chain r(c.dim + 1);
  for (auto& n : s.cells(c.dim + 1)) r.add(n, s.boundary(CellId{c.dim + 1, n}).coeff(c.name));
  return r;
}

std::string to_string(DualObstruction::Kind k) {
  switch (k) {
    case DualObstruction::Kind::TopNotSingle: return "top dimension does not consist of a single cell";
    case DualObstruction::Kind::FreeArc: return "cells below the top are in the kernel of d";
    case DualObstruction::Kind::NonUnitPoint: return "new point with accumulator coefficient other than +-1";
  }
  return "";
}

DualResult dual_script(const Script& s, bool require_unit_points) {
  int m = s.top_dim(), b = s.base_dim();
  if (s.empty() || s.cells(m).size() != 1) {
    std::vector<CellId> top;
    for (auto& n : s.cells(m)) top.push_back(CellId{m, n});
    return DualObstruction{DualObstruction::Kind::TopNotSingle, top,
                           std::to_string(s.cells(m).size()) + " cells in the top dimension"};
  }
  CellId T{m, s.cells(m)[0]};
  std::vector<CellId> free;
  for (auto& c : s.all_cells())
    if (c.dim < m && dual_boundary(s, c).is_zero()) free.push_back(c);
  if (!free.empty()) return DualObstruction{DualObstruction::Kind::FreeArc, free, "free arcs must be removed first"};
  if (require_unit_points) {
    std::vector<CellId> bad;
    for (auto& n : s.cells(m - 1))
      if (abs(s.boundary(T).coeff(n)) != 1) bad.push_back(CellId{m - 1, n});
    if (!bad.empty()) return DualObstruction{DualObstruction::Kind::NonUnitPoint, bad, "non-unit coefficient in the top boundary"};
  }

  auto new_dim = [&](int k) { return m - 1 - k + b; };
  Script r(s.name() + "-dual", true, b);
  r.set_modulus(s.modulus());
  for (int j = b; j <= m - 1; ++j) {
    int k = m - 1 - j + b;
    for (auto& n : s.cells(k)) {
      CellId old{k, n};
      Chain d = dual_boundary(s, old);
      if (j == b) {
        r.add_point(n, d.coeff(T.name));
      } else {
        Chain nb(j - 1);
        for (auto& [y, c] : d.terms()) nb.add(y, c);
        r.add_cell(CellId{j, n}, nb);
      }
    }
  }
  if (s.has_accumulator()) {
    std::string top = kDualTopName;
    while (r.contains(CellId{new_dim(b - 1), top})) top += "'";
    Chain d = dual_boundary(s, s.accumulator());
    Chain nb(new_dim(b - 1) - 1);
    for (auto& [p, c] : d.terms()) nb.add(p, c);
    r.add_cell(CellId{new_dim(b - 1), top}, nb);
  }
  std::set<CellId> flips;
  for (auto& p : r.cells(b))
    if (r.acc(p) < 0) flips.insert(CellId{b, p});
  if (!flips.empty()) r = relabel_equivalent(r, flips);
  require_valid(r);
  return r;
}

std::optional<Chain> orientation(const Script& s, std::size_t budget) {
  int m = s.top_dim();
  Chain result(m);
  if (s.empty()) return result;
  IntMatrix A = boundary_matrix(s, m);
  std::size_t n = A.cols();
  std::vector<std::vector<std::pair<std::size_t, Integer>>> rows(A.rows()), cols(n);
  for (auto& [rc, v] : A.entries()) {
    rows[rc.first].push_back({rc.second, v});
    cols[rc.second].push_back({rc.first, v});
  }
  std::vector<int> x(n, 0);
  std::vector<std::size_t> trail;
  std::size_t nodes = 0;

  // assign and propagate forced values; false on conflict
  std::function<bool(std::size_t, int)> assign = [&](std::size_t j, int v) -> bool {
    if (x[j] != 0) return x[j] == v;
    x[j] = v;
    trail.push_back(j);
    for (auto& [r, a] : cols[j]) {
      Integer sum = 0;
      std::size_t open = 0, last = 0;
      Integer la;
      for (auto& [jj, aa] : rows[r]) {
        if (x[jj] == 0) {
          ++open;
          last = jj;
          la = aa;
        } else {
          sum += aa * x[jj];
        }
      }
      if (open == 0 && sum != 0) return false;
      if (open == 1) {
        if (sum % la != 0) return false;
        Integer want = -sum / la;
        if (want != 1 && want != -1) return false;
        if (!assign(last, want == 1 ? 1 : -1)) return false;
      }
    }
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      x[trail.back()] = 0;
      trail.pop_back();
    }
  };
  std::function<bool(const std::vector<std::size_t>&, std::size_t)> search =
      [&](const std::vector<std::size_t>& comp, std::size_t pos) -> bool {
    while (pos < comp.size() && x[comp[pos]] != 0) ++pos;
    if (pos == comp.size()) return true;
    for (int v : {1, -1}) {
      if (++nodes > budget) throw SearchBudgetExceeded("orientation search exceeded budget");
      std::size_t mark = trail.size();
      if (assign(comp[pos], v) && search(comp, pos + 1)) return true;
      undo(mark);
    }
    return false;
  };

  // connected components through shared faces
  std::vector<int> comp_of(n, -1);
  for (std::size_t start = 0; start < n; ++start) {
    if (comp_of[start] >= 0) continue;
    std::vector<std::size_t> comp{start};
    comp_of[start] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (auto& [r, a] : cols[comp[i]])
        for (auto& [jj, aa] : rows[r])
          if (comp_of[jj] < 0) {
            comp_of[jj] = 1;
            comp.push_back(jj);
          }
    std::size_t mark = trail.size();
    if (!assign(comp[0], 1) || !search(comp, 1)) {
      undo(mark);
      return std::nullopt;
    }
  }
  for (std::size_t j = 0; j < n; ++j) result.add(s.cells(m)[j], x[j]);
  return result;
}

bool is_orientable(const Script& s) { return orientation(s).has_value(); }

}  // namespace scriptgeo
