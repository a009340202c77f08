#include "scriptgeo/format.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace scriptgeo {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool opens(char c) { return c == '(' || c == '['; }
bool closes(char c) { return c == ')' || c == ']'; }

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && is_space(s[a])) ++a;
  while (b > a && is_space(s[b - 1])) --b;
  return s.substr(a, b - a);
}

}  // namespace

std::vector<std::string> split_top(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (opens(c)) ++depth;
    if (closes(c)) --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool valid_name(const std::string& name) {
  if (name.empty() || is_digit(name[0]) || name[0] == '+' || name[0] == '-') return false;
  int depth = 0;
  for (char c : name) {
    if (is_space(c) || c == '\n' || c == '=' || c == '#' || c == ':') return false;
    if (opens(c)) ++depth;
    if (closes(c) && --depth < 0) return false;
    if ((c == '+' || c == '-') && depth == 0) return false;
  }
  return depth == 0;
}

std::vector<Term> parse_terms(const std::string& text, std::size_t line, std::size_t col_offset) {
  std::vector<Term> out;
  std::size_t i = 0, n = text.size();
  auto skip = [&] {
    while (i < n && is_space(text[i])) ++i;
  };
  auto col = [&](std::size_t at) { return col_offset + at; };
  bool first = true, zero_literal = false;
  skip();
  if (i == n) throw ParseError(line, col(i), "empty chain");
  while (true) {
    skip();
    if (i == n) break;
    std::size_t start = i;
    int sign = 1;
    bool had_sign = false;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      had_sign = true;
      ++i;
      skip();
    }
    if (!first && !had_sign) throw ParseError(line, col(start), "expected '+' or '-' between terms");
    Integer coeff = 1;
    bool had_coeff = false;
    if (i < n && is_digit(text[i])) {
      std::size_t a = i;
      while (i < n && is_digit(text[i])) ++i;
      coeff = Integer(text.substr(a, i - a));
      had_coeff = true;
      skip();
    }
    if (i == n || text[i] == '+' || text[i] == '-') {
      if (had_coeff && coeff == 0 && first && !had_sign) {
        skip();
        if (i == n) {
          zero_literal = true;
          break;
        }
      }
      throw ParseError(line, col(i), "expected a cell name");
    }
    std::size_t a = i;
    int depth = 0;
    while (i < n) {
      char c = text[i];
      if (opens(c)) ++depth;
      if (closes(c)) {
        if (depth == 0) throw ParseError(line, col(i), "unbalanced bracket");
        --depth;
      }
      if (depth == 0 && (is_space(c) || c == '+' || c == '-')) break;
      ++i;
    }
    if (depth != 0) throw ParseError(line, col(a), "unbalanced bracket in name");
    std::string name = text.substr(a, i - a);
    if (!valid_name(name)) throw ParseError(line, col(a), "invalid cell name '" + name + "'");
    out.push_back({coeff * sign, name, col(start)});
    first = false;
  }
  if (zero_literal) out.clear();
  return out;
}

CellId resolve_cell(const Script& s, const std::string& name) {
  std::vector<int> found;
  for (auto d : s.dims())
    if (s.contains(CellId{d, name})) found.push_back(d);
  if (found.empty()) throw SemanticError(name, "unknown cell");
  if (found.size() > 1) throw SemanticError(name, "name exists in several dimensions");
  return CellId{found[0], name};
}

Chain parse_chain(const Script& s, const std::string& text) {
  auto terms = parse_terms(text);
  if (terms.empty()) return Chain(s.base_dim());
  int dim = resolve_cell(s, terms[0].name).dim;
  Chain c(dim);
  for (auto& t : terms) {
    if (!s.contains(CellId{dim, t.name})) throw SemanticError(t.name, "not a cell of dimension " + std::to_string(dim));
    c.add(t.name, t.coeff);
  }
  return c;
}

std::string format_terms(const std::vector<std::pair<std::string, Integer>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [name, k] : terms) {
    Integer a = abs(k);
    if (first) {
      if (k < 0) out += "-";
    } else {
      out += k < 0 ? " - " : " + ";
    }
    if (a != 1) out += a.str() + " ";
    out += name;
    first = false;
  }
  return out;
}

std::string format_chain(const Script& s, const Chain& c) {
  std::vector<std::pair<std::string, Integer>> terms(c.terms().begin(), c.terms().end());
  auto key = [&](const std::string& n) -> std::size_t {
    CellId id{c.dim(), n};
    return s.contains(id) ? s.index_of(id) : static_cast<std::size_t>(-1);
  };
  std::stable_sort(terms.begin(), terms.end(), [&](auto& a, auto& b) { return key(a.first) < key(b.first); });
  return format_terms(terms);
}

std::string print_script(const Script& s) {
  std::ostringstream os;
  os << "script " << s.name() << "\n";
  if (s.modulus()) os << "mod " << *s.modulus() << "\n";
  if (!s.has_accumulator()) os << "truncated\n";
  for (auto d : s.dims()) {
    os << "cells " << d << ":";
    for (auto& n : s.cells(d)) os << " " << n;
    os << "\n";
  }
  if (s.has_accumulator())
    for (auto& p : s.cells(s.base_dim())) {
      const Chain& b = s.boundary(CellId{s.base_dim(), p});
      if (b.size() != 1 || b.coeff(kAccumulator) != 1) os << "acc " << p << " = " << b.coeff(kAccumulator) << "\n";
    }
  for (auto d : s.dims()) {
    if (d == s.base_dim()) continue;
    for (auto& n : s.cells(d)) os << "boundary " << n << " = " << format_chain(s, s.boundary(CellId{d, n})) << "\n";
  }
  return os.str();
}

Script parse_script(const std::string& text) {
  struct Decl {
    int dim;
    std::string name;
    std::size_t line, col;
  };
  struct Eq {
    std::string name;
    std::vector<Term> terms;
    std::size_t line, col;
  };
  std::string name = "script";
  std::optional<Integer> modulus;
  bool truncated = false, seen_header = false;
  std::vector<Decl> decls;
  std::vector<Eq> eqs;
  std::vector<std::pair<Eq, Integer>> accs;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size()) continue;
    std::size_t kw_end = i;
    while (kw_end < line.size() && !is_space(line[kw_end]) && line[kw_end] != ':') ++kw_end;
    std::string kw = line.substr(i, kw_end - i);
    std::string rest = line.substr(kw_end);
    std::size_t rest_col = kw_end + 1;

    if (kw == "script") {
      if (seen_header) throw ParseError(lineno, i + 1, "repeated script header");
      name = trim(rest);
      if (name.empty()) throw ParseError(lineno, kw_end + 1, "script name expected");
      seen_header = true;
    } else if (kw == "mod") {
      std::string v = trim(rest);
      if (v.empty() || !std::all_of(v.begin(), v.end(), is_digit)) throw ParseError(lineno, rest_col, "modulus expected");
      modulus = Integer(v);
      if (*modulus < 2) throw ParseError(lineno, rest_col, "modulus must be at least 2");
    } else if (kw == "truncated") {
      if (!trim(rest).empty()) throw ParseError(lineno, rest_col, "unexpected text after 'truncated'");
      truncated = true;
    } else if (kw == "cells") {
      auto colon = rest.find(':');
      if (colon == std::string::npos) throw ParseError(lineno, rest_col, "expected ':' after dimension");
      std::string ds = trim(rest.substr(0, colon));
      bool neg = !ds.empty() && ds[0] == '-';
      std::string digits = neg ? ds.substr(1) : ds;
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), is_digit))
        throw ParseError(lineno, rest_col, "dimension expected");
      int dim = std::stoi(ds);
      std::string names = rest.substr(colon + 1);
      std::size_t base = kw_end + colon + 2;
      std::size_t j = 0;
      while (j < names.size()) {
        while (j < names.size() && is_space(names[j])) ++j;
        if (j == names.size()) break;
        std::size_t a = j;
        int depth = 0;
        while (j < names.size() && (depth > 0 || !is_space(names[j]))) {
          if (opens(names[j])) ++depth;
          if (closes(names[j])) --depth;
          ++j;
        }
        std::string n = names.substr(a, j - a);
        if (!valid_name(n)) throw ParseError(lineno, base + a, "invalid cell name '" + n + "'");
        decls.push_back({dim, n, lineno, base + a});
      }
    } else if (kw == "boundary" || kw == "acc") {
      auto eq = rest.find('=');
      if (eq == std::string::npos) throw ParseError(lineno, rest_col, "expected '='");
      std::string lhs = trim(rest.substr(0, eq));
      if (!valid_name(lhs)) throw ParseError(lineno, rest_col, "invalid cell name '" + lhs + "'");
      std::string rhs = rest.substr(eq + 1);
      std::size_t rhs_col = kw_end + eq + 2;
      if (kw == "boundary") {
        eqs.push_back({lhs, parse_terms(rhs, lineno, rhs_col), lineno, i + 1});
      } else {
        std::string v = trim(rhs);
        bool neg = !v.empty() && v[0] == '-';
        std::string digits = neg || (!v.empty() && v[0] == '+') ? trim(v.substr(1)) : v;
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), is_digit))
          throw ParseError(lineno, rhs_col, "integer expected");
        Integer k(digits);
        if (neg) k = -k;
        accs.push_back({Eq{lhs, {}, lineno, i + 1}, k});
      }
    } else {
      throw ParseError(lineno, i + 1, "unknown keyword '" + kw + "'");
    }
  }

  int base = 0;
  for (auto& d : decls) base = std::min(base, d.dim);
  Script s(name, !truncated, base);
  s.set_modulus(modulus);
  std::map<std::string, std::vector<int>> dims_of;
  for (auto& d : decls) {
    CellId id{d.dim, d.name};
    if (s.contains(id)) throw SemanticError(d.name, "declared twice (line " + std::to_string(d.line) + ")");
    s.add_cell(id);
    dims_of[d.name].push_back(d.dim);
  }
  std::set<CellId> has_eq;
  for (auto& e : eqs) {
    auto it = dims_of.find(e.name);
    if (it == dims_of.end()) throw SemanticError(e.name, "boundary for undeclared cell (line " + std::to_string(e.line) + ")");
    if (it->second.size() > 1) throw SemanticError(e.name, "name declared in several dimensions");
    int dim = it->second[0];
    if (dim == base) throw SemanticError(e.name, "base cells take 'acc', not 'boundary' (line " + std::to_string(e.line) + ")");
    CellId id{dim, e.name};
    if (!has_eq.insert(id).second) throw SemanticError(e.name, "duplicate boundary equation (line " + std::to_string(e.line) + ")");
    Chain c(dim - 1);
    for (auto& t : e.terms) {
      if (!s.contains(CellId{dim - 1, t.name}))
        throw SemanticError(t.name, "undeclared cell of dimension " + std::to_string(dim - 1) + " in boundary of " +
                                        e.name + " (line " + std::to_string(e.line) + ")");
      if (t.coeff == 0)
        c.set_raw(t.name, c.coeff(t.name));
      else
        c.add(t.name, t.coeff);
    }
    s.set_boundary(id, c);
  }
  std::set<std::string> has_acc;
  for (auto& [e, k] : accs) {
    if (!s.contains(CellId{base, e.name}))
      throw SemanticError(e.name, "acc for a cell that is not a declared point (line " + std::to_string(e.line) + ")");
    if (truncated) throw SemanticError(e.name, "acc in a truncated script");
    if (!has_acc.insert(e.name).second) throw SemanticError(e.name, "duplicate acc override");
    s.set_acc(e.name, k);
  }
  for (auto& id : s.all_cells())
    if (id.dim > base && !has_eq.count(id)) throw SemanticError(id.name, "missing boundary equation");
  return s;
}

}  // namespace scriptgeo
