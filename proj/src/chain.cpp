#include "scriptgeo/core.hpp"

namespace scriptgeo {

Integer gcd(const Integer& a, const Integer& b) {
  Integer x = abs(a), y = abs(b);
  while (y != 0) {
    Integer r = x % y;
    x = y;
    y = r;
  }
  return x;
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const CellId& c) { return c.name + "@" + std::to_string(c.dim); }

Integer mod_floor(const Integer& x, const Integer& n) {
  Integer r = x % n;
  if (r < 0) r += n;
  return r;
}

Chain Chain::cell(int dim, const std::string& name, const Integer& c) {
  Chain ch(dim);
  ch.add(name, c);
  return ch;
}

bool Chain::is_zero() const {
  for (auto& [n, c] : terms_)
    if (c != 0) return false;
  return true;
}

bool Chain::has_zero_terms() const {
  for (auto& [n, c] : terms_)
    if (c == 0) return true;
  return false;
}

Integer Chain::coeff(const std::string& name) const {
  auto it = terms_.find(name);
  return it == terms_.end() ? Integer(0) : it->second;
}

void Chain::add(const std::string& name, const Integer& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(name, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Chain Chain::canonical() const {
  Chain r(dim_);
  for (auto& [n, c] : terms_) r.add(n, c);
  return r;
}

std::set<CellId> Chain::support() const {
  std::set<CellId> s;
  for (auto& [n, c] : terms_)
    if (c != 0) s.insert(CellId{dim_, n});
  return s;
}

Integer Chain::content() const {
  Integer g = 0;
  for (auto& [n, c] : terms_) g = gcd(g, c);
  return g;
}

void Chain::check_dim(const Chain& o) const {
  if (o.dim_ != dim_ && !o.terms_.empty() && !terms_.empty())
    throw DimensionMismatch("chains of dimension " + std::to_string(dim_) + " and " + std::to_string(o.dim_));
}

Chain& Chain::operator+=(const Chain& o) {
  check_dim(o);
  if (terms_.empty()) dim_ = o.dim_;
  for (auto& [n, c] : o.terms_) add(n, c);
  return *this;
}

Chain& Chain::operator-=(const Chain& o) {
  check_dim(o);
  if (terms_.empty()) dim_ = o.dim_;
  for (auto& [n, c] : o.terms_) add(n, -c);
  return *this;
}

Chain& Chain::operator*=(const Integer& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [n, c] : terms_) c *= k;
  return *this;
}

Chain Chain::operator-() const {
  Chain r = *this;
  r *= -1;
  return r;
}

bool Chain::operator==(const Chain& o) const {
  if (is_zero() && o.is_zero()) return true;
  return dim_ == o.dim_ && canonical().terms_ == o.canonical().terms_;
}

void MixedChain::add(const CellId& c, const Integer& k) {
  if (k == 0) return;
  auto [it, fresh] = terms.try_emplace(c, k);
  if (!fresh) {
    it->second += k;
    if (it->second == 0) terms.erase(it);
  }
}

std::set<CellId> support(const Chain& c) { return c.support(); }

}  // namespace scriptgeo
