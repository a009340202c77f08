#include "scriptgeo/equivalence.hpp"

#include <algorithm>
#include <deque>

namespace scriptgeo {

namespace {

struct Graph {
  std::vector<CellId> cells;
  std::map<CellId, int> idx;
  std::vector<std::vector<std::pair<int, Integer>>> faces, cofaces;
  std::vector<Integer> acc;
  std::vector<int> fp;
};

struct Interner {
  std::map<std::string, int> ids;
  int operator()(const std::string& k) { return ids.emplace(k, static_cast<int>(ids.size())).first->second; }
};

Graph build(const Script& s) {
  Graph g;
  g.cells = s.all_cells();
  for (std::size_t i = 0; i < g.cells.size(); ++i) g.idx[g.cells[i]] = static_cast<int>(i);
  std::size_t n = g.cells.size();
  g.faces.resize(n);
  g.cofaces.resize(n);
  g.acc.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = g.cells[i];
    const Chain& b = s.boundary(c);
    if (c.dim == s.base_dim()) {
      g.acc[i] = b.coeff(kAccumulator);
      continue;
    }
    for (auto& [name, k] : b.terms()) {
      if (k == 0) continue;
      int j = g.idx.at(CellId{c.dim - 1, name});
      g.faces[i].push_back({j, k});
      g.cofaces[j].push_back({static_cast<int>(i), k});
    }
  }
  return g;
}

std::string mag(const Integer& c, const std::optional<Integer>& mod) {
  if (!mod) return abs(c).str();
  Integer r = mod_floor(c, *mod);
  return std::min(r, *mod - r).str();
}

void fingerprint(Graph& g, Interner& intern, const std::optional<Integer>& mod, int rounds) {
  std::size_t n = g.cells.size();
  g.fp.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> f, cf;
    for (auto& [j, k] : g.faces[i]) f.push_back(mag(k, mod));
    for (auto& [j, k] : g.cofaces[i]) cf.push_back(mag(k, mod));
    std::sort(f.begin(), f.end());
    std::sort(cf.begin(), cf.end());
    std::string key = std::to_string(g.cells[i].dim) + "|" + mag(g.acc[i], mod) + "|";
    for (auto& x : f) key += x + ",";
    key += "|";
    for (auto& x : cf) key += x + ",";
    g.fp[i] = intern(key);
  }
  for (int r = 0; r < rounds; ++r) {
    std::vector<int> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::string> f, cf;
      for (auto& [j, k] : g.faces[i]) f.push_back(std::to_string(g.fp[j]) + ":" + mag(k, mod));
      for (auto& [j, k] : g.cofaces[i]) cf.push_back(std::to_string(g.fp[j]) + ":" + mag(k, mod));
      std::sort(f.begin(), f.end());
      std::sort(cf.begin(), cf.end());
      std::string key = "r" + std::to_string(g.fp[i]) + "|";
      for (auto& x : f) key += x + ",";
      key += "|";
      for (auto& x : cf) key += x + ",";
      next[i] = intern(key);
    }
    g.fp = next;
  }
}

struct Search {
  const Graph& A;
  const Graph& B;
  std::optional<Integer> mod;
  std::size_t budget, nodes = 0;
  std::vector<int> order;
  std::vector<int> phi, used;
  std::vector<int> sign;
  std::vector<int> trail;  // cells whose sign was set, for undo

  bool same(const Integer& mu, const Integer& lambda, int r) const {
    if (!mod) return mu == lambda * r;
    return mod_floor(mu - lambda * r, *mod) == 0;
  }

  void make_order() {
    std::size_t n = A.cells.size();
    std::vector<int> missing(n);
    std::vector<char> placed(n, 0);
    for (std::size_t i = 0; i < n; ++i) missing[i] = static_cast<int>(A.faces[i].size());
    std::deque<int> frontier;  // faceless cells reached through shared cofaces
    auto place = [&](int x, auto&& self) -> void {
      placed[x] = 1;
      order.push_back(x);
      for (auto& [y, k] : A.cofaces[x]) {
        // faceless neighbours of the coface come next
        for (auto& [z, kk] : A.faces[y])
          if (!placed[z] && A.faces[z].empty()) frontier.push_back(z);
        if (--missing[y] == 0 && !placed[y]) self(y, self);
      }
    };
    for (;;) {
      int next = -1;
      while (!frontier.empty()) {
        int z = frontier.front();
        frontier.pop_front();
        if (!placed[z]) {
          next = z;
          break;
        }
      }
      if (next < 0)
        for (std::size_t i = 0; i < n; ++i)
          if (!placed[i] && missing[i] == 0) {
            next = static_cast<int>(i);
            break;
          }
      if (next < 0) break;
      place(next, place);
    }
  }

  void set_sign(int x, int s) {
    sign[x] = s;
    trail.push_back(x);
  }
  void undo(std::size_t mark) {
    while (trail.size() > mark) {
      sign[trail.back()] = 0;
      trail.pop_back();
    }
  }

  // try x -> d with own sign s (0: undetermined); returns false on conflict
  bool constrain(int x, int d, int s) {
    if (A.faces[x].size() != B.faces[d].size()) return false;
    if (A.faces[x].empty()) {
      // base cell: accumulator coefficient fixes the sign unless it is zero
      if (A.acc[x] != 0 || B.acc[d] != 0) {
        bool plus = same(B.acc[d], A.acc[x], 1), minus = same(B.acc[d], A.acc[x], -1);
        if (!plus && !minus) return false;
        if (plus != minus) set_sign(x, plus ? 1 : -1);
      }
      return true;
    }
    std::vector<std::pair<int, int>> rel;  // face, ratio
    for (auto& [f, lambda] : A.faces[x]) {
      int fd = phi[f];
      Integer mu = 0;
      for (auto& [g, m] : B.faces[d])
        if (g == fd) mu = m;
      if (mu == 0) return false;
      int r = same(mu, lambda, 1) ? 1 : (same(mu, lambda, -1) ? -1 : 0);
      if (r == 0) return false;
      rel.push_back({f, r});
    }
    if (sign[x] == 0) {
      if (s != 0) {
        set_sign(x, s);
      } else {
        for (auto& [f, r] : rel)
          if (sign[f] != 0) {
            set_sign(x, r * sign[f]);
            break;
          }
        if (sign[x] == 0) return false;  // caller branches
      }
    }
    for (auto& [f, r] : rel) {
      int want = r * sign[x];
      if (sign[f] == 0)
        set_sign(f, want);
      else if (sign[f] != want && !(mod && *mod == 2))
        return false;
    }
    return true;
  }

  bool needs_branch(int x) const {
    if (sign[x] != 0 || A.faces[x].empty()) return false;
    for (auto& [f, k] : A.faces[x])
      if (sign[f] != 0) return false;
    return true;
  }

  bool rec(std::size_t pos) {
    if (pos == order.size()) return true;
    int x = order[pos];
    std::vector<int> cand;
    if (!A.faces[x].empty()) {
      int f0 = A.faces[x][0].first;
      for (auto& [y, k] : B.cofaces[phi[f0]])
        if (!used[y] && B.fp[y] == A.fp[x]) cand.push_back(y);
    } else {
      for (std::size_t y = 0; y < B.cells.size(); ++y)
        if (!used[y] && B.fp[y] == A.fp[x] && B.faces[y].empty()) cand.push_back(static_cast<int>(y));
    }
    bool branch = needs_branch(x);
    for (int d : cand) {
      for (int s : branch ? std::vector<int>{1, -1} : std::vector<int>{0}) {
        if (++nodes > budget) throw SearchBudgetExceeded("equivalence search exceeded " + std::to_string(budget) + " nodes");
        std::size_t mark = trail.size();
        if (constrain(x, d, s)) {
          phi[x] = d;
          used[d] = 1;
          if (rec(pos + 1)) return true;
          used[d] = 0;
          phi[x] = -1;
        }
        undo(mark);
      }
    }
    return false;
  }
};

}  // namespace

std::optional<Equivalence> find_equivalence(const Script& a, const Script& b, std::size_t budget) {
  if (a.has_accumulator() != b.has_accumulator() || a.base_dim() != b.base_dim() || a.modulus() != b.modulus())
    return std::nullopt;
  if (a.dims() != b.dims()) return std::nullopt;
  for (auto d : a.dims())
    if (a.cells(d).size() != b.cells(d).size()) return std::nullopt;
  Graph A = build(a), B = build(b);
  Interner intern;
  fingerprint(A, intern, a.modulus(), 3);
  fingerprint(B, intern, a.modulus(), 3);
  auto fa = A.fp, fb = B.fp;
  std::sort(fa.begin(), fa.end());
  std::sort(fb.begin(), fb.end());
  if (fa != fb) return std::nullopt;

  Search S{A, B, a.modulus(), budget, 0, {}, {}, {}, {}, {}};
  S.phi.assign(A.cells.size(), -1);
  S.used.assign(B.cells.size(), 0);
  S.sign.assign(A.cells.size(), 0);
  S.make_order();
  if (S.order.size() != A.cells.size()) throw InternalError("equivalence ordering incomplete");
  if (!S.rec(0)) return std::nullopt;
  Equivalence w;
  for (std::size_t i = 0; i < A.cells.size(); ++i)
    w.map[A.cells[i]] = {B.cells[S.phi[i]].name, S.sign[i] == 0 ? 1 : S.sign[i]};
  return w;
}

bool are_equivalent(const Script& a, const Script& b, std::size_t budget) {
  return find_equivalence(a, b, budget).has_value();
}

Script apply_equivalence(const Script& a, const Equivalence& w) {
  std::set<CellId> flips;
  for (auto& [c, m] : w.map)
    if (m.second < 0) flips.insert(c);
  Script f = relabel_equivalent(a, flips);
  Script r(a.name(), a.has_accumulator(), a.base_dim());
  r.set_modulus(a.modulus());
  r.set_tuple_arity(a.tuple_arity());
  for (auto& id : f.all_cells()) {
    const Chain& b = f.boundary(id);
    Chain nb(b.dim());
    for (auto& [n, k] : b.terms()) {
      if (id.dim == a.base_dim())
        nb.add(n, k);
      else
        nb.add(w.map.at(CellId{b.dim(), n}).first, k);
    }
    r.add_cell(CellId{id.dim, w.map.at(id).first}, nb);
  }
  return r;
}

}  // namespace scriptgeo
