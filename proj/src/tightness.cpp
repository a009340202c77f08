#include "scriptgeo/tightness.hpp"

namespace scriptgeo {

STightness is_s_tight(const Script& s, const std::set<CellId>& U) {
  STightness r;
  if (U.empty()) return r;
  auto Z = relative_cycles(s, U, {});
  r.rank = Z.size();
  if (r.rank == 1) {
    r.tight = true;
    r.generator = Z[0];
  }
  return r;
}

namespace {

std::string point_verdict(const Script& s, const CellId& c) {
  if (!s.has_accumulator()) return "pathological";
  Integer a = s.acc(c.name);
  if (a == 0) return "pathological";
  if (abs(a) != 1) return "accumulator coefficient " + a.str() + " is not a generator";
  return "";
}

// empty string when tight
std::string cell_verdict(const Script& s, const CellId& c) {
  if (c.dim == s.base_dim()) return point_verdict(s, c);
  const Chain& b = s.boundary(c);
  if (b.is_zero()) return "pathological";
  auto Z = relative_cycles(s, b.support(), {});
  if (Z.size() != 1) return "cycle module of the boundary support has rank " + std::to_string(Z.size());
  if (!(b == Z[0]) && !(b == -Z[0])) return "boundary is not a generator of the cycle module";
  return "";
}

}  // namespace

bool is_cell_tight(const Script& s, const CellId& c) {
  if (!s.contains(c)) throw UnknownCell(to_string(c));
  return cell_verdict(s, c).empty();
}

bool is_c_tight(const Script& s, const Chain& c) {
  if (c.is_zero()) return false;
  for (auto& id : c.support())
    if (!s.contains(id)) throw UnknownCell(to_string(id));
  if (c.content() != 1) return false;
  auto Z = relative_cycles(s, c.support(), s.boundary_of(c).support());
  return Z.size() == 1 && (c == Z[0] || c == -Z[0]);
}

std::vector<CellId> TightnessReport::failing() const {
  std::vector<CellId> r;
  for (auto& v : cells)
    if (v.status != CellVerdict::Status::Tight) r.push_back(v.cell);
  return r;
}

TightnessReport script_tightness(const Script& s) {
  TightnessReport rep;
  std::map<CellId, const CellVerdict*> tight_lines;
  rep.cells.reserve(s.cell_count());
  for (auto& id : s.all_cells()) {
    CellVerdict v;
    v.cell = id;
    auto why = cell_verdict(s, id);
    if (why == "pathological") {
      v.status = CellVerdict::Status::Pathological;
      v.reason = "boundary is zero";
    } else if (!why.empty()) {
      v.status = CellVerdict::Status::NotTight;
      v.reason = why;
    }
    rep.cells.push_back(v);
  }
  std::map<CellId, std::size_t> at;
  for (std::size_t i = 0; i < rep.cells.size(); ++i) at[rep.cells[i].cell] = i;
  auto tight = [&](const CellId& c) { return rep.cells[at.at(c)].status == CellVerdict::Status::Tight; };

  for (auto& v : rep.cells) {
    if (v.status != CellVerdict::Status::Tight) {
      rep.script_tight = false;
      continue;
    }
    const Chain& b = s.boundary(v.cell);
    if (v.cell.dim == s.base_dim() + 1) {
      // endpoints of a tight line between unit points
      bool unit = s.has_accumulator();
      for (auto& p : b.support()) unit = unit && s.acc(p.name) == 1;
      if (!unit) continue;
      std::string from, to;
      bool ok = b.size() == 2;
      for (auto& [n, k] : b.terms()) {
        if (k == -1) from = n;
        else if (k == 1) to = n;
        else ok = false;
      }
      if (!ok || from.empty() || to.empty())
        throw InternalError("tight line " + v.cell.name + " is not an oriented segment");
      v.endpoints = {from, to};
    } else if (v.cell.dim == s.base_dim() + 2) {
      // polygon walk over tight, oriented lines
      struct Edge {
        std::string tail, head, line;
        int sign;
        bool used = false;
      };
      std::vector<Edge> edges;
      bool all = true;
      for (auto& l : ordered(s, b.support())) {
        auto& lv = rep.cells[at.at(l)];
        if (!tight(l) || !lv.endpoints) {
          all = false;
          break;
        }
        Integer k = b.coeff(l.name);
        if (abs(k) != 1) {
          all = false;
          break;
        }
        if (k == 1)
          edges.push_back({lv.endpoints->first, lv.endpoints->second, l.name, 1});
        else
          edges.push_back({lv.endpoints->second, lv.endpoints->first, l.name, -1});
      }
      if (!all || edges.empty()) continue;
      auto fail = [&](const std::string& why) {
        throw InternalError("tight 2-cell " + v.cell.name + " is not a polygon: " + why);
      };
      edges[0].used = true;
      v.polygon.push_back({edges[0].line, edges[0].sign});
      std::string start = edges[0].tail, cur = edges[0].head;
      for (std::size_t step = 1; step < edges.size(); ++step) {
        Edge* next = nullptr;
        for (auto& e : edges)
          if (!e.used && e.tail == cur) {
            if (next) fail("branching at " + cur);
            next = &e;
          }
        if (!next) fail("dead end at " + cur);
        next->used = true;
        v.polygon.push_back({next->line, next->sign});
        cur = next->head;
      }
      if (cur != start) fail("walk does not close");
    }
  }
  return rep;
}

bool is_geoscript(const Script& s) { return is_unitary(s) && script_tightness(s).script_tight; }

Script solve_assignment(const Script& partial, const std::vector<std::pair<CellId, std::vector<CellId>>>& rows) {
  Script s = partial;
  for (auto& [cell, faces] : rows) {
    if (faces.empty()) throw NoSolution("empty boundary support for " + cell.name);
    if (faces.size() == 1 && faces[0] == s.accumulator()) {
      s.add_point(cell.name, 1);
      continue;
    }
    int k = cell.dim;
    for (auto& f : faces) {
      if (f.dim != k - 1) throw DimensionMismatch("face " + f.name + " has the wrong dimension");
      if (!s.contains(f)) throw UnknownCell(to_string(f));
    }
    auto rb = row_basis(s, k - 1);
    IntMatrix m(rb.size(), faces.size());
    for (std::size_t j = 0; j < faces.size(); ++j) {
      auto col = coords(s.boundary(faces[j]), rb);
      for (std::size_t i = 0; i < rb.size(); ++i) m.set(i, j, col[i]);
    }
    auto Z = kernel_basis(m);
    if (Z.empty()) throw NoSolution("no cycle over the boundary support of " + cell.name);
    if (Z.size() > 1)
      throw NotTight("cycle module over the boundary support of " + cell.name + " has rank " +
                     std::to_string(Z.size()));
    auto z = Z[0];
    for (auto& x : z)
      if (x == 0) throw NoSolution("generator does not cover the boundary support of " + cell.name);
    if (z[0] < 0)
      for (auto& x : z) x = -x;
    Chain b(k - 1);
    for (std::size_t j = 0; j < faces.size(); ++j) b.add(faces[j].name, z[j]);
    s.add_cell(cell, b);
  }
  return s;
}

Script reconstruct_from_offprint(const Script& s) {
  Script r(s.name(), true, s.base_dim());
  auto op = offprint(s);
  for (auto d : s.dims()) {
    std::vector<std::pair<CellId, std::vector<CellId>>> rows;
    for (auto& n : s.cells(d)) {
      CellId id{d, n};
      auto& sup = op.at(id);
      std::vector<CellId> faces = d == s.base_dim() ? std::vector<CellId>(sup.begin(), sup.end()) : ordered(s, sup);
      rows.push_back({id, faces});
    }
    r = solve_assignment(r, rows);
  }
  return r;
}

}  // namespace scriptgeo
