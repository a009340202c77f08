#include "scriptgeo/ops.hpp"

#include "scriptgeo/format.hpp"

#include <sstream>

namespace scriptgeo {

namespace {

class Editor {
public:
  Editor(const Script& s, OpLog* log, std::string op) : s_(s), log_(log) {
    if (log_) log_->ops.push_back(std::move(op));
  }

  const Script& script() const { return s_; }

  void add(const CellId& id, const Chain& b) { insert(id, b, s_.cells(id.dim).size()); }
  void insert(const CellId& id, const Chain& b, std::size_t pos) {
    s_.insert_cell(id, b, pos);
    record({Edit::Kind::AddCell, id, b, pos});
  }
  void remove(const CellId& id) {
    s_.remove_cell(id);
    record({Edit::Kind::RemoveCell, id, Chain(), 0});
  }
  void set(const CellId& id, const Chain& b) {
    s_.set_boundary(id, b);
    record({Edit::Kind::SetBoundary, id, b, 0});
  }
  void warn(const std::string& w) {
    if (log_) log_->warnings.push_back(w);
  }

  Script done() {
    require_valid(s_);
    return s_;
  }

private:
  void record(Edit e) {
    if (log_) log_->edits.push_back(std::move(e));
  }
  Script s_;
  OpLog* log_;
};

void require_cell(const Script& s, const CellId& c) {
  if (!s.contains(c)) throw UnknownCell(to_string(c));
}

bool floating(const Script& s, const CellId& c) {
  if (c.dim == s.base_dim()) return s.has_accumulator() && s.acc(c.name) == 0;
  return s.boundary(c).is_zero();
}

}  // namespace

Script replay(const Script& input, const OpLog& log) {
  Script s = input;
  for (auto& e : log.edits) {
    switch (e.kind) {
      case Edit::Kind::AddCell: s.insert_cell(e.cell, e.boundary, e.position); break;
      case Edit::Kind::RemoveCell: s.remove_cell(e.cell); break;
      case Edit::Kind::SetBoundary: s.set_boundary(e.cell, e.boundary); break;
    }
  }
  return s;
}

Script remove_floating_cell(const Script& s, const CellId& c, OpLog* log) {
  require_cell(s, c);
  bool zero = c.dim == s.base_dim() ? (!s.has_accumulator() || s.acc(c.name) == 0) : s.boundary(c).is_zero();
  if (!zero) throw NotFloating(c.name + " has a nonzero boundary");
  Editor e(s, log, "remove-floating cell=" + c.name);
  for (auto& d : s.cofaces(c)) {
    Chain b = s.boundary(d);
    b.erase(c.name);
    e.set(d, b);
  }
  e.remove(c);
  return e.done();
}

Script remove_free_arc(const Script& s, const CellId& c, OpLog* log) {
  require_cell(s, c);
  if (!s.cofaces(c).empty()) throw NotFree(c.name + " appears in a higher boundary");
  Editor e(s, log, "remove-free cell=" + c.name);
  e.remove(c);
  return e.done();
}

Script create_cell(const Script& s, const std::string& name, const Chain& z, OpLog* log) {
  for (auto& f : z.support()) require_cell(s, f);
  if (z.dim() < s.base_dim()) throw BadParameter("cannot create a cell below the base dimension");
  if (!s.boundary_of(z).is_zero()) throw NotACycle("boundary of the given chain is not zero");
  Editor e(s, log, "create name=" + name);
  e.add(CellId{z.dim() + 1, name}, z);
  return e.done();
}

Script pull_cells_together(const Script& s, const std::string& name, const std::set<CellId>& cocycle, OpLog* log) {
  if (cocycle.empty()) {
    // isolated floating cell one level up from the base
    Editor e(s, log, "pull name=" + name);
    e.add(CellId{s.base_dim() + 1, name}, Chain(s.base_dim()));
    e.warn("pulling cells together worsens tightness");
    return e.done();
  }
  int k = cocycle.begin()->dim;
  for (auto& c : cocycle) {
    require_cell(s, c);
    if (c.dim != k) throw NonHomogeneous("cocycle mixes dimensions");
  }
  if (k - 1 < s.base_dim()) throw BadParameter("no room for a new cell below dimension " + std::to_string(k));
  for (auto& d : s.cells(k + 1)) {
    Integer sum = 0;
    for (auto& c : cocycle) sum += s.boundary(CellId{k + 1, d}).coeff(c.name);
    if (sum != 0) throw NotACocycle("dual boundary does not vanish on " + d);
  }
  Editor e(s, log, "pull name=" + name);
  CellId nc{k - 1, name};
  if (k - 1 == s.base_dim())
    e.add(nc, s.has_accumulator() ? Chain::cell(k - 2, kAccumulator, 0) : Chain(k - 2));
  else
    e.add(nc, Chain(k - 2));
  for (auto& c : s.all_cells())
    if (cocycle.count(c)) e.set(c, s.boundary(c) + Chain::cell(k - 1, name));
  e.warn("pulling cells together worsens tightness");
  return e.done();
}

Script glue(const Script& s, const CellId& keep, const CellId& remove, int sign, const Integer& lambda,
            const Integer& mu, OpLog* log) {
  require_cell(s, keep);
  require_cell(s, remove);
  if (keep.dim != remove.dim) throw DimensionMismatch("glued cells must have the same dimension");
  if (keep == remove) throw BadParameter("cannot glue a cell to itself");
  if (sign != 1 && sign != -1) throw BadParameter("sign must be 1 or -1");
  if (lambda == 0 || mu == 0) throw BadParameter("scale factors must be nonzero");
  if (!(s.boundary(keep) * lambda == s.boundary(remove) * (mu * sign)))
    throw BoundaryMismatch("boundaries of " + keep.name + " and " + remove.name + " do not match");
  auto cof = s.cofaces(remove);
  for (auto& d : cof) {
    Integer num = s.boundary(d).coeff(remove.name) * sign * lambda;
    if (num % mu != 0) throw NonIntegerReplacement("replacing " + remove.name + " in " + d.name + " is not integral");
  }
  std::ostringstream op;
  op << "glue keep=" << keep.name << " remove=" << remove.name << " sign=" << sign;
  if (lambda != 1 || mu != 1) op << " lambda=" << lambda << " mu=" << mu;
  Editor e(s, log, op.str());
  for (auto& d : cof) {
    Chain b = s.boundary(d);
    Integer c = b.coeff(remove.name);
    b.erase(remove.name);
    b.add(keep.name, c * sign * lambda / mu);
    e.set(d, b);
  }
  e.remove(remove);
  return e.done();
}

Script melt(const Script& s, const std::string& new_name, const std::vector<std::pair<CellId, Integer>>& parts,
            OpLog* log) {
  if (parts.empty()) throw BadParameter("melt needs at least one part");
  int k = parts[0].first.dim;
  std::set<CellId> seen;
  for (auto& [c, a] : parts) {
    require_cell(s, c);
    if (c.dim != k) throw NonHomogeneous("melted parts mix dimensions");
    if (a == 0) throw BadParameter("zero coefficient for " + c.name);
    if (!seen.insert(c).second) throw BadParameter("repeated part " + c.name);
  }
  CellId nc{k, new_name};
  if (s.contains(nc) && !seen.count(nc)) throw ComplexViolation("duplicate cell " + new_name);

  // occurrence coefficient t per higher cell
  std::map<CellId, Integer> t;
  for (auto& d : s.cells(k + 1)) {
    CellId did{k + 1, d};
    const Chain& b = s.boundary(did);
    bool any = false;
    for (auto& [c, a] : parts) any = any || b.coeff(c.name) != 0;
    if (!any) continue;
    const auto& [c0, a0] = parts[0];
    Integer c0v = b.coeff(c0.name);
    if (c0v % a0 != 0) throw ProportionalityViolation("parts in " + d + " are not a multiple of the combination");
    Integer tv = c0v / a0;
    for (auto& [c, a] : parts)
      if (b.coeff(c.name) != tv * a)
        throw ProportionalityViolation("parts in " + d + " are not proportional to the combination");
    t[did] = tv;
  }
  std::ostringstream op;
  op << "melt name=" << new_name << " parts=";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i && parts[i].second > 0) op << "+";
    if (parts[i].second == -1)
      op << "-";
    else if (parts[i].second != 1)
      op << parts[i].second;
    op << parts[i].first.name;
  }
  Editor e(s, log, op.str());
  Chain nb(k - 1);
  for (auto& [c, a] : parts) nb += s.boundary(c) * a;
  for (auto& [d, tv] : t) {
    Chain b = s.boundary(d);
    for (auto& [c, a] : parts) b.erase(c.name);
    e.set(d, b);
  }
  std::size_t pos = s.index_of(parts[0].first);
  for (auto& [c, a] : parts) e.remove(c);
  e.insert(nc, nb, std::min(pos, e.script().cells(k).size()));
  for (auto& [d, tv] : t) e.set(d, e.script().boundary(d) + Chain::cell(k, new_name, tv));
  return e.done();
}

Script cut(const Script& s, const CellId& target, const std::string& new_name, const std::vector<CellId>& replace_in,
           OpLog* log) {
  require_cell(s, target);
  std::ostringstream op;
  op << "cut target=" << target.name << " name=" << new_name;
  if (!replace_in.empty()) {
    op << " in=";
    for (std::size_t i = 0; i < replace_in.size(); ++i) op << (i ? "," : "") << replace_in[i].name;
  }
  for (auto& d : replace_in) {
    require_cell(s, d);
    if (d.dim != target.dim + 1 || s.boundary(d).coeff(target.name) == 0)
      throw BadParameter(d.name + " does not contain " + target.name);
  }
  Editor e(s, log, op.str());
  e.insert(CellId{target.dim, new_name}, s.boundary(target), s.index_of(target) + 1);
  for (auto& d : replace_in) {
    Chain b = s.boundary(d);
    Integer c = b.coeff(target.name);
    b.erase(target.name);
    b.add(new_name, c);
    e.set(d, b);
  }
  return e.done();
}

namespace {

std::set<CellId> boundary_support(const Script& s, const std::set<CellId>& cells) {
  std::set<CellId> r;
  for (auto& c : cells) {
    if (c.dim <= s.base_dim()) continue;
    for (auto& f : s.boundary(c).support()) r.insert(f);
  }
  return r;
}

}  // namespace

ExpandResult expand(const Script& s, const CellId& target, const std::vector<std::pair<std::string, Chain>>& parts,
                    const std::vector<std::pair<CellId, Chain>>& extra, OpLog* log) {
  require_cell(s, target);
  if (parts.empty()) throw BadParameter("expand needs at least one part");
  std::ostringstream op;
  op << "expand target=" << target.name;
  for (auto& [n, b] : extra) op << " new=" << n.name;
  for (auto& [n, b] : parts) op << " part=" << n;
  Editor e(s, log, op.str());
  std::set<CellId> fresh;
  for (auto& [id, b] : extra) {
    for (auto& f : b.support()) require_cell(e.script(), f);
    if (id.dim > s.base_dim() && !e.script().boundary_of(b).is_zero())
      throw NotACycle("boundary of new cell " + id.name + " is not a cycle");
    e.add(id, b);
    fresh.insert(id);
  }
  const Script& cur = e.script();
  Chain sum(target.dim - 1);
  for (auto& [n, b] : parts) {
    for (auto& f : b.support()) require_cell(cur, f);
    sum += b;
  }
  if (!(sum == s.boundary(target))) throw BoundarySumMismatch("parts do not add up to the boundary of " + target.name);

  ExpandResult r;
  std::set<CellId> partset, tset{target};
  Script probe = cur;
  for (auto& [n, b] : parts) {
    CellId id{target.dim, n};
    if (!probe.contains(id)) probe.add_cell(id, b);
    partset.insert(id);
  }
  r.free = true;
  for (auto P = boundary_support(probe, partset), T = boundary_support(probe, tset); !P.empty();
       P = boundary_support(probe, P), T = boundary_support(probe, T))
    for (auto& c : P)
      if (!T.count(c) && !fresh.count(c)) r.free = false;

  auto cof = s.cofaces(target);
  std::size_t pos = cur.index_of(target);
  e.remove(target);
  for (std::size_t i = 0; i < parts.size(); ++i) e.insert(CellId{target.dim, parts[i].first}, parts[i].second, pos + i);
  for (auto& d : cof) {
    Chain b = e.script().boundary(d);
    Integer c = b.coeff(target.name);
    b.erase(target.name);
    for (auto& [n, pb] : parts) b.add(n, c);
    e.set(d, b);
  }
  r.script = e.done();
  return r;
}

Script minimize(const Script& s, OpLog* log) {
  Editor e(s, log, "minimize");
  for (bool changed = true; changed;) {
    changed = false;
    for (auto k : e.script().dims()) {
      auto names = e.script().cells(k);
      for (auto& n : names) {
        CellId c{k, n};
        const Script& cur = e.script();
        if (k == cur.base_dim() && !cur.has_accumulator()) continue;
        const Chain& b = cur.boundary(c);
        if (b.is_zero()) {
          for (auto& d : cur.cofaces(c)) {
            Chain db = cur.boundary(d);
            db.erase(n);
            e.set(d, db);
          }
          e.remove(c);
          changed = true;
          continue;
        }
        Integer g = b.content();
        if (g > 1) {
          Chain nb(b.dim());
          for (auto& [f, x] : b.terms()) nb.add(f, x / g);
          e.set(c, nb);
          for (auto& d : e.script().cofaces(c)) {
            Chain db = e.script().boundary(d);
            Integer x = db.coeff(n);
            db.erase(n);
            db.add(n, x * g);
            e.set(d, db);
          }
          changed = true;
        }
      }
    }
  }
  return e.done();
}

Script clean(const Script& s, OpLog* log) {
  Editor e(s, log, "clean");
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& c : e.script().all_cells()) {
      if (!floating(e.script(), c)) continue;
      if (c.dim == e.script().base_dim() && !e.script().has_accumulator()) continue;
      for (auto& d : e.script().cofaces(c)) {
        Chain db = e.script().boundary(d);
        db.erase(c.name);
        e.set(d, db);
      }
      e.remove(c);
      changed = true;
    }
  }
  return e.done();
}

Script flip(const Script& s, const std::set<CellId>& cells, OpLog* log) {
  std::string op = "flip cells=";
  bool first = true;
  for (auto& c : cells) {
    op += (first ? "" : ",") + c.name;
    first = false;
  }
  Script f = relabel_equivalent(s, cells);
  Editor e(s, log, op);
  for (auto& c : s.all_cells())
    if (!(s.boundary(c) == f.boundary(c))) e.set(c, f.boundary(c));
  return e.done();
}

// ---- pipelines ----

namespace {

struct OpLine {
  std::string verb;
  std::multimap<std::string, std::string> args;
  std::size_t line;

  std::string get(const std::string& k) const {
    auto it = args.find(k);
    if (it == args.end()) throw ParseError(line, 1, verb + ": missing " + k + "=");
    return it->second;
  }
  std::optional<std::string> opt(const std::string& k) const {
    auto it = args.find(k);
    if (it == args.end()) return std::nullopt;
    return it->second;
  }
  std::vector<std::string> all(const std::string& k) const {
    std::vector<std::string> r;
    for (auto [a, b] = args.equal_range(k); a != b; ++a) r.push_back(a->second);
    return r;
  }
};

std::set<CellId> cell_list(const Script& s, const std::string& v) {
  std::set<CellId> r;
  for (auto& n : split_top(v, ','))
    if (!n.empty()) r.insert(resolve_cell(s, n));
  return r;
}

std::pair<std::string, std::string> split_colon(const std::string& v, std::size_t line) {
  int depth = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == '(' || v[i] == '[') ++depth;
    if (v[i] == ')' || v[i] == ']') --depth;
    if (v[i] == ':' && depth == 0) return {v.substr(0, i), v.substr(i + 1)};
  }
  throw ParseError(line, 1, "expected NAME:CHAIN, got " + v);
}

}  // namespace

PipelineResult run_pipeline(const Script& input, const std::string& text) {
  PipelineResult r{input, {}};
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    auto words = split_top(raw, ' ');
    std::vector<std::string> toks;
    for (auto& w : words)
      for (auto& t : split_top(w, '\t'))
        if (!t.empty()) toks.push_back(t);
    if (toks.empty()) continue;
    OpLine op{toks[0], {}, lineno};
    for (std::size_t i = 1; i < toks.size(); ++i) {
      auto eq = toks[i].find('=');
      if (eq == std::string::npos) throw ParseError(lineno, 1, "expected key=value, got " + toks[i]);
      op.args.emplace(toks[i].substr(0, eq), toks[i].substr(eq + 1));
    }
    Script& s = r.script;
    OpLog* log = &r.log;
    const std::string& v = op.verb;
    if (v == "glue") {
      int sign = std::stoi(op.opt("sign").value_or("1"));
      Integer lambda(op.opt("lambda").value_or("1")), mu(op.opt("mu").value_or("1"));
      s = glue(s, resolve_cell(s, op.get("keep")), resolve_cell(s, op.get("remove")), sign, lambda, mu, log);
    } else if (v == "melt") {
      Chain c = parse_chain(s, op.get("parts"));
      std::vector<std::pair<CellId, Integer>> parts;
      // keep the order written in the pipeline
      for (auto& t : parse_terms(op.get("parts"), lineno)) parts.push_back({CellId{c.dim(), t.name}, c.coeff(t.name)});
      s = melt(s, op.get("name"), parts, log);
    } else if (v == "cut") {
      std::vector<CellId> in_cells;
      if (auto x = op.opt("in"))
        for (auto& n : split_top(*x, ','))
          if (!n.empty()) in_cells.push_back(resolve_cell(s, n));
      s = cut(s, resolve_cell(s, op.get("target")), op.get("name"), in_cells, log);
    } else if (v == "expand") {
      CellId target = resolve_cell(s, op.get("target"));
      Script scratch = s;
      std::vector<std::pair<CellId, Chain>> extra;
      for (auto& nv : op.all("new")) {
        auto [name, expr] = split_colon(nv, lineno);
        Chain b = parse_chain(scratch, expr);
        CellId id{b.dim() + 1, name};
        scratch.add_cell(id, b);
        extra.push_back({id, b});
      }
      std::vector<std::pair<std::string, Chain>> parts;
      for (auto& pv : op.all("part")) {
        auto [name, expr] = split_colon(pv, lineno);
        parts.push_back({name, parse_chain(scratch, expr)});
      }
      s = expand(s, target, parts, extra, log).script;
    } else if (v == "create") {
      s = create_cell(s, op.get("name"), parse_chain(s, op.get("boundary")), log);
    } else if (v == "pull") {
      s = pull_cells_together(s, op.get("name"), cell_list(s, op.opt("cells").value_or("")), log);
    } else if (v == "remove-floating") {
      s = remove_floating_cell(s, resolve_cell(s, op.get("cell")), log);
    } else if (v == "remove-free") {
      s = remove_free_arc(s, resolve_cell(s, op.get("cell")), log);
    } else if (v == "minimize") {
      s = minimize(s, log);
    } else if (v == "clean") {
      s = clean(s, log);
    } else if (v == "flip") {
      s = flip(s, cell_list(s, op.get("cells")), log);
    } else if (v == "rename") {
      s.set_name(op.get("name"));
    } else {
      throw ParseError(lineno, 1, "unknown operation " + v);
    }
  }
  return r;
}

}  // namespace scriptgeo
