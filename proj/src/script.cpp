#include "scriptgeo/core.hpp"

#include <algorithm>

namespace scriptgeo {

namespace {
const std::vector<std::string> kNoCells;
}

Script::Script(std::string name, bool has_accumulator, int base_dim)
    : name_(std::move(name)), has_accumulator_(has_accumulator), base_dim_(base_dim) {}

void Script::reindex(int dim) {
  auto& dc = cells_[dim];
  dc.index.clear();
  for (std::size_t i = 0; i < dc.names.size(); ++i) dc.index[dc.names[i]] = i;
  if (dc.names.empty()) cells_.erase(dim);
}

void Script::add_cell(const CellId& id, const Chain& boundary) {
  auto& dc = cells_[id.dim];
  insert_cell(id, boundary, dc.names.size());
}

void Script::add_cell(const CellId& id) {
  if (id.dim == base_dim_ && has_accumulator_)
    add_cell(id, Chain::cell(base_dim_ - 1, kAccumulator, 1));
  else
    add_cell(id, Chain(id.dim - 1));
}

void Script::add_point(const std::string& name, const Integer& acc) {
  add_cell(CellId{base_dim_, name}, Chain::cell(base_dim_ - 1, kAccumulator, acc));
}

void Script::insert_cell(const CellId& id, const Chain& boundary, std::size_t position) {
  if (id.dim < base_dim_)
    throw DimensionMismatch("cell " + id.name + " below base dimension " + std::to_string(base_dim_));
  if (contains(id)) throw ComplexViolation("duplicate cell " + to_string(id));
  auto& dc = cells_[id.dim];
  if (position > dc.names.size()) position = dc.names.size();
  dc.names.insert(dc.names.begin() + static_cast<std::ptrdiff_t>(position), id.name);
  reindex(id.dim);
  Chain b = boundary;
  if (b.is_zero() && !b.has_zero_terms()) b = Chain(id.dim - 1);
  boundary_[id] = b;
}

void Script::set_boundary(const CellId& id, const Chain& boundary) {
  if (!contains(id)) throw UnknownCell(to_string(id));
  Chain b = boundary;
  if (b.is_zero() && !b.has_zero_terms()) b = Chain(id.dim - 1);
  boundary_[id] = b;
}

void Script::set_acc(const std::string& name, const Integer& acc) {
  CellId id{base_dim_, name};
  if (!contains(id)) throw UnknownCell(to_string(id));
  boundary_[id] = Chain::cell(base_dim_ - 1, kAccumulator, acc);
}

void Script::set_has_accumulator(bool b) {
  if (b == has_accumulator_) return;
  has_accumulator_ = b;
  for (auto& n : cells(base_dim_))
    boundary_[CellId{base_dim_, n}] = b ? Chain::cell(base_dim_ - 1, kAccumulator, 1) : Chain(base_dim_ - 1);
}

void Script::remove_cell(const CellId& id) {
  if (!contains(id)) throw UnknownCell(to_string(id));
  auto& dc = cells_[id.dim];
  dc.names.erase(dc.names.begin() + static_cast<std::ptrdiff_t>(dc.index.at(id.name)));
  boundary_.erase(id);
  reindex(id.dim);
}

void Script::rename_cell(const CellId& id, const std::string& new_name) {
  if (!contains(id)) throw UnknownCell(to_string(id));
  if (new_name == id.name) return;
  CellId nid{id.dim, new_name};
  if (contains(nid)) throw ComplexViolation("duplicate cell " + to_string(nid));
  auto& dc = cells_[id.dim];
  dc.names[dc.index.at(id.name)] = new_name;
  reindex(id.dim);
  boundary_[nid] = boundary_.at(id);
  boundary_.erase(id);
  for (auto& n : cells(id.dim + 1)) {
    Chain& b = boundary_[CellId{id.dim + 1, n}];
    auto c = b.coeff(id.name);
    if (c != 0) {
      b.erase(id.name);
      b.add(new_name, c);
    }
  }
}

int Script::top_dim() const { return cells_.empty() ? base_dim_ - 1 : cells_.rbegin()->first; }

bool Script::empty() const { return cells_.empty(); }

std::size_t Script::cell_count() const {
  std::size_t n = 0;
  for (auto& [d, dc] : cells_) n += dc.names.size();
  return n;
}

std::vector<int> Script::dims() const {
  std::vector<int> r;
  for (auto& [d, dc] : cells_) r.push_back(d);
  return r;
}

const std::vector<std::string>& Script::cells(int dim) const {
  auto it = cells_.find(dim);
  return it == cells_.end() ? kNoCells : it->second.names;
}

std::vector<CellId> Script::all_cells() const {
  std::vector<CellId> r;
  for (auto& [d, dc] : cells_)
    for (auto& n : dc.names) r.push_back(CellId{d, n});
  return r;
}

bool Script::contains(const CellId& id) const {
  auto it = cells_.find(id.dim);
  return it != cells_.end() && it->second.index.count(id.name);
}

std::size_t Script::index_of(const CellId& id) const {
  auto it = cells_.find(id.dim);
  if (it == cells_.end()) throw UnknownCell(to_string(id));
  auto jt = it->second.index.find(id.name);
  if (jt == it->second.index.end()) throw UnknownCell(to_string(id));
  return jt->second;
}

const Chain& Script::boundary(const CellId& id) const {
  auto it = boundary_.find(id);
  if (it == boundary_.end()) throw UnknownCell(to_string(id));
  return it->second;
}

Integer Script::acc(const std::string& point) const {
  return boundary(CellId{base_dim_, point}).coeff(kAccumulator);
}

Chain Script::boundary_of(const Chain& c) const {
  Chain r(c.dim() - 1);
  for (auto& [n, k] : c.terms()) {
    if (k == 0) continue;
    r += boundary(CellId{c.dim(), n}) * k;
  }
  return r;
}

std::set<CellId> Script::cofaces(const CellId& id) const {
  std::set<CellId> r;
  for (auto& n : cells(id.dim + 1))
    if (boundary_.at(CellId{id.dim + 1, n}).coeff(id.name) != 0) r.insert(CellId{id.dim + 1, n});
  return r;
}

bool Script::operator==(const Script& o) const {
  if (has_accumulator_ != o.has_accumulator_ || base_dim_ != o.base_dim_ || modulus_ != o.modulus_) return false;
  if (dims() != o.dims()) return false;
  for (auto d : dims())
    if (cells(d) != o.cells(d)) return false;
  for (auto& [id, b] : boundary_)
    if (!(b == o.boundary(id))) return false;
  return true;
}

// ---- validation ----

std::vector<Violation> validate(const Script& s) {
  std::vector<Violation> out;
  const auto& mod = s.modulus();
  auto reduce = [&](Chain c) {
    if (!mod) return c;
    Chain r(c.dim());
    for (auto& [n, k] : c.terms()) r.add(n, mod_floor(k, *mod));
    return r;
  };
  for (auto& id : s.all_cells()) {
    const Chain& b = s.boundary(id);
    if (!b.is_zero() && b.dim() != id.dim - 1) {
      out.push_back({Violation::Kind::WrongDimension, id, "boundary has dimension " + std::to_string(b.dim())});
      continue;
    }
    bool dangling = false;
    for (auto& [n, k] : b.terms()) {
      if (k == 0) out.push_back({Violation::Kind::ZeroCoefficient, id, "zero coefficient on " + n});
      if (mod && (k < 0 || k >= *mod))
        out.push_back({Violation::Kind::BadModulusCoefficient, id, "coefficient " + to_string(k) + " outside [0, n)"});
      if (id.dim == s.base_dim()) {
        if (n != kAccumulator || !s.has_accumulator()) {
          out.push_back({Violation::Kind::DanglingReference, id, "base cell refers to " + n});
          dangling = true;
        }
      } else if (!s.contains(CellId{id.dim - 1, n})) {
        out.push_back({Violation::Kind::DanglingReference, id, "boundary mentions unknown cell " + n});
        dangling = true;
      }
    }
    if (dangling || id.dim == s.base_dim()) continue;
    Chain bb = reduce(s.boundary_of(b.canonical()));
    if (!bb.is_zero()) out.push_back({Violation::Kind::BoundarySquare, id, "boundary of boundary is not zero"});
  }
  return out;
}

bool is_valid(const Script& s) { return validate(s).empty(); }

void require_valid(const Script& s) {
  auto v = validate(s);
  if (!v.empty()) throw ComplexViolation(to_string(v.front().cell) + ": " + v.front().message);
}

Offprint offprint(const Script& s) {
  Offprint o;
  for (auto& id : s.all_cells()) {
    auto sup = s.boundary(id).support();
    if (s.modulus()) {
      std::set<CellId> r;
      for (auto& c : sup)
        if (mod_floor(s.boundary(id).coeff(c.name), *s.modulus()) != 0) r.insert(c);
      sup = r;
    }
    o[id] = sup;
  }
  return o;
}

Script subscript_generated_by(const Script& s, const std::set<CellId>& seed) {
  std::set<CellId> keep;
  std::vector<CellId> stack(seed.begin(), seed.end());
  while (!stack.empty()) {
    CellId c = stack.back();
    stack.pop_back();
    if (c.dim < s.base_dim()) continue;
    if (!s.contains(c)) throw UnknownCell(to_string(c));
    if (!keep.insert(c).second) continue;
    for (auto& f : s.boundary(c).support()) stack.push_back(f);
  }
  Script r(s.name(), s.has_accumulator(), s.base_dim());
  r.set_modulus(s.modulus());
  r.set_tuple_arity(s.tuple_arity());
  for (auto& id : s.all_cells())
    if (keep.count(id)) r.add_cell(id, s.boundary(id));
  return r;
}

Script relabel_equivalent(const Script& s, const std::set<CellId>& flips) {
  for (auto& f : flips)
    if (!s.contains(f)) throw UnknownCell(to_string(f));
  Script r = s;
  for (auto& id : s.all_cells()) {
    const Chain& b = s.boundary(id);
    Chain nb(b.dim());
    for (auto& [n, k] : b.terms()) {
      Integer c = k;
      if (flips.count(CellId{b.dim(), n})) c = -c;
      nb.add(n, c);
    }
    if (flips.count(id)) nb *= -1;
    if (s.modulus()) {
      Chain m(nb.dim());
      for (auto& [n, k] : nb.terms()) m.add(n, mod_floor(k, *s.modulus()));
      nb = m;
    }
    r.set_boundary(id, nb);
  }
  return r;
}

bool is_unitary(const Script& s) {
  for (auto& id : s.all_cells())
    for (auto& [n, k] : s.boundary(id).terms()) {
      if (s.modulus()) {
        auto m = mod_floor(k, *s.modulus());
        if (m != 1 && m != *s.modulus() - 1) return false;
      } else if (abs(k) != 1) {
        return false;
      }
    }
  return true;
}

bool is_minimal(const Script& s) {
  for (auto& id : s.all_cells()) {
    const Chain& b = s.boundary(id);
    if (b.is_zero()) {
      if (id.dim == s.base_dim() && !s.has_accumulator()) continue;
      if (!s.cofaces(id).empty()) return false;
      continue;
    }
    if (b.content() != 1) return false;
  }
  return true;
}

Script reduce_mod(const Script& s, const Integer& n) {
  if (n < 2) throw BadParameter("modulus must be at least 2");
  Script r = s;
  r.set_modulus(n);
  for (auto& id : s.all_cells()) {
    Chain m(s.boundary(id).dim());
    for (auto& [name, k] : s.boundary(id).terms()) m.add(name, mod_floor(k, n));
    r.set_boundary(id, m);
  }
  return r;
}

bool same_structure(const Script& a, const Script& b) {
  if (a.has_accumulator() != b.has_accumulator() || a.base_dim() != b.base_dim() || a.modulus() != b.modulus())
    return false;
  if (a.dims() != b.dims()) return false;
  for (auto d : a.dims()) {
    auto x = a.cells(d), y = b.cells(d);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
  }
  for (auto& id : a.all_cells())
    if (!(a.boundary(id) == b.boundary(id))) return false;
  return true;
}

}  // namespace scriptgeo
