#include "scriptgeo/products.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace scriptgeo {

namespace {

struct Factor {
  std::vector<CellId> cells;  // unit first in simplicial mode, then all_cells()
  std::map<CellId, Chain> boundary;
  std::map<CellId, std::string> label;
  int arity = 1;
};

std::string strip(const std::string& n, int arity) {
  if (arity > 1 && n.size() >= 2 && n.front() == '(' && n.back() == ')') return n.substr(1, n.size() - 2);
  return n;
}

Factor extended(const Script& s, bool simplicial) {
  Factor f;
  f.arity = s.tuple_arity();
  if (simplicial) {
    CellId u = s.accumulator();
    f.cells.push_back(u);
    f.boundary[u] = Chain(u.dim - 1);
    std::string unit = "1";
    for (int i = 1; i < f.arity; ++i) unit += ",1";
    f.label[u] = unit;
  }
  for (auto& c : s.all_cells()) {
    f.cells.push_back(c);
    if (c.dim == s.base_dim())
      f.boundary[c] = simplicial ? Chain::cell(s.accumulator(), s.acc(c.name)) : Chain(c.dim - 1);
    else
      f.boundary[c] = s.boundary(c);
    f.label[c] = strip(c.name, f.arity);
  }
  return f;
}

Script product(const Script& a, const Script& b, bool simplicial) {
  if (simplicial && (!a.has_accumulator() || !b.has_accumulator()))
    throw MissingAccumulator("simplicial product needs factors with an accumulator");
  Factor A = extended(a, simplicial), B = extended(b, simplicial);
  int base = a.base_dim() + b.base_dim() - (simplicial ? 1 : 0);
  Script r(a.name() + "x" + b.name(), simplicial, base);
  r.set_tuple_arity(A.arity + B.arity);

  CellId uA = a.accumulator(), uB = b.accumulator();
  auto name = [&](const CellId& x, const CellId& y) -> std::string {
    if (simplicial && x == uA && y == uB) return kAccumulator;
    return "(" + A.label.at(x) + "," + B.label.at(y) + ")";
  };

  std::map<int, std::vector<std::pair<CellId, Chain>>> by_dim;
  for (auto& x : A.cells)
    for (auto& y : B.cells) {
      int d = x.dim + y.dim;
      if (d < base) continue;  // the all-unit cell is the accumulator
      Chain bd(d - 1);
      for (auto& [n, k] : A.boundary.at(x).terms()) bd.add(name(CellId{x.dim - 1, n}, y), k);
      Integer sign = (x.dim % 2 == 0) ? 1 : -1;
      for (auto& [n, k] : B.boundary.at(y).terms()) bd.add(name(x, CellId{y.dim - 1, n}), sign * k);
      by_dim[d].push_back({CellId{d, name(x, y)}, bd});
    }
  for (auto& [d, cells] : by_dim)
    for (auto& [id, bd] : cells) r.add_cell(id, bd);
  require_valid(r);
  return r;
}

Script fold(const std::vector<Script>& fs, bool simplicial) {
  if (fs.empty()) throw BadParameter("product of zero factors");
  Script r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = product(r, fs[i], simplicial);
  return r;
}

void positive(int v, const char* what) {
  if (v < 1) throw BadParameter(std::string(what) + " must be positive, got " + std::to_string(v));
}

}  // namespace

Script cubic_product(const Script& a, const Script& b) { return product(a, b, false); }
Script cubic_product(const std::vector<Script>& fs) {
  if (fs.size() == 1) {
    Script r = fs[0];
    r.set_has_accumulator(false);
    return r;
  }
  return fold(fs, false);
}

Script extend_with_accumulator(const Script& p) {
  Script r = p;
  r.set_has_accumulator(true);
  require_valid(r);
  return r;
}

Script simplicial_product(const Script& a, const Script& b, bool renorm) {
  Script r = product(a, b, true);
  return renorm ? renormalize(r) : r;
}

Script simplicial_product(const std::vector<Script>& fs, bool renorm) {
  Script r = fold(fs, true);
  return renorm ? renormalize(r) : r;
}

Script renormalize(const Script& s) {
  int shift = -s.base_dim();
  Script r(s.name(), s.has_accumulator(), 0);
  r.set_modulus(s.modulus());
  r.set_tuple_arity(s.tuple_arity());
  for (auto& c : s.all_cells()) {
    const Chain& b = s.boundary(c);
    Chain nb(b.dim() + shift);
    for (auto& [n, k] : b.terms()) nb.add(n, k);
    r.add_cell(CellId{c.dim + shift, c.name}, nb);
  }
  std::set<CellId> flips;
  if (r.has_accumulator())
    for (auto& p : r.cells(0))
      if (r.acc(p) < 0) flips.insert(CellId{0, p});
  if (!flips.empty()) r = relabel_equivalent(r, flips);
  require_valid(r);
  return r;
}

// ---- generators ----

Script gen_interval() {
  Script s("interval");
  s.add_point("p");
  s.add_point("q");
  s.add_cell(1, "l", Chain::cell(0, "p") - Chain::cell(0, "q"));
  return s;
}

Script gen_circle() {
  Script s("circle");
  s.add_point("p1");
  s.add_point("p2");
  for (auto n : {"l1", "l2"}) s.add_cell(1, n, Chain::cell(0, "p1") - Chain::cell(0, "p2"));
  return s;
}

namespace {
std::string sphere_cell(int k, int j) {
  static const char* letters[] = {"p", "l", "v", "w"};
  if (k < 4) return letters[k] + std::to_string(j);
  return "c" + std::to_string(k) + "_" + std::to_string(j);
}
}  // namespace

Script gen_sphere(int m) {
  if (m < 0) throw BadParameter("sphere dimension must be >= 0");
  Script s("sphere" + std::to_string(m));
  s.add_point(sphere_cell(0, 1));
  s.add_point(sphere_cell(0, 2));
  for (int k = 1; k <= m; ++k)
    for (int j = 1; j <= 2; ++j)
      s.add_cell(k, sphere_cell(k, j), Chain::cell(k - 1, sphere_cell(k - 1, 1)) - Chain::cell(k - 1, sphere_cell(k - 1, 2)));
  return s;
}

Script gen_ball(int m) {
  positive(m, "ball dimension");
  Script s = gen_sphere(m - 1);
  s.set_name("ball" + std::to_string(m));
  s.add_cell(m, sphere_cell(m, 1), Chain::cell(m - 1, sphere_cell(m - 1, 1)) - Chain::cell(m - 1, sphere_cell(m - 1, 2)));
  return s;
}

namespace {
std::string simplex_name(const std::vector<int>& v) {
  std::string n = "[";
  for (std::size_t i = 0; i < v.size(); ++i) n += (i ? "," : "") + std::to_string(v[i]);
  return n + "]";
}
}  // namespace

Script gen_simplex(int m) {
  if (m < 0) throw BadParameter("simplex dimension must be >= 0");
  if (m > 16) throw BadParameter("simplex dimension too large");
  Script s("simplex" + std::to_string(m));
  for (int k = 0; k <= m; ++k) {
    // combinations of k+1 vertices in lexicographic order
    std::vector<int> v(k + 1);
    for (int i = 0; i <= k; ++i) v[i] = i;
    while (true) {
      if (k == 0) {
        s.add_point(simplex_name(v));
      } else {
        Chain b(k - 1);
        for (int j = 0; j <= k; ++j) {
          std::vector<int> f = v;
          f.erase(f.begin() + j);
          b.add(simplex_name(f), j % 2 == 0 ? 1 : -1);
        }
        s.add_cell(k, simplex_name(v), b);
      }
      int i = k;
      while (i >= 0 && v[i] == m - k + i) --i;
      if (i < 0) break;
      ++v[i];
      for (int j = i + 1; j <= k; ++j) v[j] = v[j - 1] + 1;
    }
  }
  return s;
}

namespace {
// Z_k° : p0..pk, l1..lk with dl_j = p_j - p_{j-1}
Script segment(int k) {
  Script s("Q" + std::to_string(k));
  for (int j = 0; j <= k; ++j) s.add_point("p" + std::to_string(j));
  for (int j = 1; j <= k; ++j) {
    std::string n = k == 1 ? "l" : "l" + std::to_string(j);
    s.add_cell(1, n, Chain::cell(0, "p" + std::to_string(j)) - Chain::cell(0, "p" + std::to_string(j - 1)));
  }
  return s;
}
}  // namespace

Script gen_cube(int l) {
  positive(l, "cube dimension");
  std::vector<Script> fs(l, segment(1));
  Script r = extend_with_accumulator(cubic_product(fs));
  r.set_name("cube" + std::to_string(l));
  return r;
}

Script gen_multicube(const std::vector<int>& lengths) {
  if (lengths.empty()) throw BadParameter("multicube needs at least one length");
  std::vector<Script> fs;
  for (int k : lengths) {
    positive(k, "multicube length");
    fs.push_back(segment(k));
  }
  Script r = extend_with_accumulator(cubic_product(fs));
  r.set_name("multicube");
  return r;
}

Script gen_line_window(int lo, int hi) {
  if (lo > hi) throw BadParameter("window needs lo <= hi");
  Script s("Z[" + std::to_string(lo) + "," + std::to_string(hi) + "]");
  auto p = [](int j) { return "p[" + std::to_string(j) + "]"; };
  for (int j = lo; j <= hi; ++j) s.add_point(p(j));
  for (int j = lo + 1; j <= hi; ++j)
    s.add_cell(1, "l[" + std::to_string(j) + "]", Chain::cell(0, p(j)) - Chain::cell(0, p(j - 1)));
  return s;
}

Script gen_grid_window(int m, int lo, int hi) {
  positive(m, "grid dimension");
  std::vector<Script> fs(m, gen_line_window(lo, hi));
  Script r = extend_with_accumulator(cubic_product(fs));
  r.set_name("grid" + std::to_string(m));
  return r;
}

Script gen_polygon(int k) {
  if (k < 2) throw BadParameter("polygon needs at least 2 sides");
  Script s("Z" + std::to_string(k));
  for (int j = 0; j < k; ++j) s.add_point("p" + std::to_string(j));
  for (int j = 1; j <= k; ++j)
    s.add_cell(1, "l" + std::to_string(j),
               Chain::cell(0, "p" + std::to_string(j % k)) - Chain::cell(0, "p" + std::to_string(j - 1)));
  return s;
}

Script gen_torus(const std::vector<int>& ks) {
  if (ks.empty()) throw BadParameter("torus needs at least one factor");
  std::vector<Script> fs;
  for (int k : ks) fs.push_back(gen_polygon(k));
  Script r = extend_with_accumulator(cubic_product(fs));
  std::string n = "torus";
  for (std::size_t i = 0; i < ks.size(); ++i) n += (i ? "," : "(") + std::to_string(ks[i]);
  r.set_name(n + ")");
  return r;
}

Script gen_addition(int n) {
  positive(n, "number of points");
  Script s("addition" + std::to_string(n));
  for (int j = 1; j <= n; ++j) s.add_point("p" + std::to_string(j));
  return s;
}

std::vector<std::string> generator_kinds() {
  return {"interval", "circle", "sphere", "ball", "simplex", "cube", "multicube", "grid", "line", "polygon", "torus", "addition"};
}

Script generate(const std::string& kind, const std::vector<int>& a) {
  auto need = [&](std::size_t n) {
    if (a.size() != n)
      throw BadParameter("generator " + kind + " takes " + std::to_string(n) + " argument(s), got " + std::to_string(a.size()));
  };
  if (kind == "interval") return need(0), gen_interval();
  if (kind == "circle") return need(0), gen_circle();
  if (kind == "sphere") return need(1), gen_sphere(a[0]);
  if (kind == "ball") return need(1), gen_ball(a[0]);
  if (kind == "simplex") return need(1), gen_simplex(a[0]);
  if (kind == "cube") return need(1), gen_cube(a[0]);
  if (kind == "multicube") return gen_multicube(a);
  if (kind == "grid") return need(3), gen_grid_window(a[0], a[1], a[2]);
  if (kind == "line") return need(2), gen_line_window(a[0], a[1]);
  if (kind == "polygon") return need(1), gen_polygon(a[0]);
  if (kind == "torus") return gen_torus(a);
  if (kind == "addition") return need(1), gen_addition(a[0]);
  throw BadParameter("unknown generator " + kind);
}

// ---- refinement ----

RefineResult simplicial_refine(const Script& s) {
  if (!s.has_accumulator()) throw MissingAccumulator("refinement needs an accumulator");
  int base = s.base_dim();
  RefineResult res{Script(s.name() + "-refined", true, base), {}, {}};
  Script& r = res.script;
  std::map<std::string, std::size_t> order;  // global vertex order
  std::set<std::string> used;
  for (auto& c : s.all_cells()) used.insert(c.name);

  auto join = [](const std::vector<std::string>& vs) {
    std::string n = "[";
    for (std::size_t i = 0; i < vs.size(); ++i) n += (i ? "," : "") + vs[i];
    return n + "]";
  };
  // faces first, so every boundary refers to existing simplexes
  std::function<std::string(const std::vector<std::string>&)> simplex = [&](const std::vector<std::string>& vs) {
    std::string n = join(vs);
    CellId id{base + static_cast<int>(vs.size()) - 1, n};
    if (r.contains(id)) return n;
    if (vs.size() == 1) {
      r.add_point(n);
    } else {
      Chain b(id.dim - 1);
      for (std::size_t j = 0; j < vs.size(); ++j) {
        std::vector<std::string> f = vs;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
        b.add(simplex(f), j % 2 == 0 ? 1 : -1);
      }
      r.add_cell(id, b);
    }
    res.simplices[n] = vs;
    return n;
  };

  for (auto& p : s.cells(base)) {
    order[p] = order.size();
    res.sigma[CellId{base, p}] = Chain::cell(base, simplex({p}), s.acc(p));
  }
  for (int k = base + 1; k <= s.top_dim(); ++k) {
    for (auto& n : s.cells(k)) {
      CellId c{k, n};
      std::string apex = n + "^";
      while (used.count(apex) || order.count(apex)) apex += "^";
      used.insert(apex);
      order[apex] = order.size();
      simplex({apex});
      Chain sd(k - 1);
      for (auto& [f, x] : s.boundary(c).terms()) sd += res.sigma.at(CellId{k - 1, f}) * x;
      Chain out(k);
      Integer sign = ((k - base) % 2 == 0) ? 1 : -1;
      for (auto& [sn, x] : sd.terms()) {
        std::vector<std::string> vs = res.simplices.at(sn);
        vs.push_back(apex);  // apex is last in the global order, so vs stays sorted
        out.add(simplex(vs), sign * x);
      }
      res.sigma[c] = out;
    }
  }
  require_valid(r);
  for (auto& [c, ch] : res.sigma)
    if (c.dim > base && !(r.boundary_of(ch) == [&] {
          Chain e(c.dim - 1);
          for (auto& [f, x] : s.boundary(c).terms()) e += res.sigma.at(CellId{c.dim - 1, f}) * x;
          return e;
        }()))
      throw InternalError("refinement does not commute with the boundary at " + to_string(c));
  return res;
}

}  // namespace scriptgeo
