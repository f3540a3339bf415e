#include "kcorr/exactalg/poly.hpp"

#include <algorithm>

#include "kcorr/error.hpp"

namespace kcorr {

std::string to_string(MonomialOrder order) { return order == MonomialOrder::Lex ? "lex" : "degrevlex"; }

Monomial Monomial::variable(std::size_t nvars, std::size_t i, Exponent power) {
  Monomial m(nvars);
  m.exps_[i] = power;
  m.degree_ = power;
  return m;
}

void Monomial::recount() {
  degree_ = 0;
  for (auto e : exps_) degree_ += e;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& other) const {
  Monomial q(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] = static_cast<Exponent>(exps_[i] - other.exps_[i]);
  q.degree_ = degree_ - other.degree_;
  return q;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial l(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) l.exps_[i] = std::max(exps_[i], other.exps_[i]);
  l.recount();
  return l;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] && other.exps_[i]) return false;
  return true;
}

Monomial Monomial::padded(std::size_t nvars) const {
  if (exps_.size() == nvars) return *this;
  if (!exps_.empty()) fail(ErrorKind::AmbientMismatch, "monomial arity does not match ring");
  return Monomial(nvars);
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.exps_.empty()) return b;
  if (b.exps_.empty()) return a;
  Monomial m(a);
  for (std::size_t i = 0; i < m.exps_.size(); ++i) m.exps_[i] = static_cast<Monomial::Exponent>(m.exps_[i] + b.exps_[i]);
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
  const std::size_t n = std::max(a.size(), b.size());
  auto at = [n](const Monomial& m, std::size_t i) -> int { return m.size() == n ? m[i] : 0; };
  if (order == MonomialOrder::DegRevLex) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t i = n; i-- > 0;) {
      const int x = at(a, i), y = at(b, i);
      if (x != y) return x < y ? 1 : -1;
    }
    return 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int x = at(a, i), y = at(b, i);
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

PolyRing::PolyRing(FieldTag field, std::vector<std::string> vars, MonomialOrder order)
    : field_(field), vars_(std::move(vars)), order_(order) {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (std::size_t j = i + 1; j < vars_.size(); ++j)
      if (vars_[i] == vars_[j]) fail(ErrorKind::AmbientMismatch, "duplicate variable '" + vars_[i] + "'");
}

std::ptrdiff_t PolyRing::index_of(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  return it == vars_.end() ? -1 : it - vars_.begin();
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Poly::Poly(long c) {
  if (c != 0) terms_.push_back({Monomial(), Coeff(c)});
}

Poly Poly::constant(RingPtr ring, const Coeff& c) {
  Poly p(std::move(ring));
  const Coeff v = p.ring_ ? c.in(p.ring_->field()) : c;
  if (!v.is_zero()) p.terms_.push_back({Monomial(p.ring_ ? p.ring_->nvars() : 0), v});
  return p;
}

Poly Poly::variable(RingPtr ring, std::size_t i) {
  const std::size_t n = ring->nvars();
  const FieldTag k = ring->field();
  Poly p(std::move(ring));
  p.terms_.push_back({Monomial::variable(n, i), Coeff::one(k)});
  return p;
}

Poly Poly::term(RingPtr ring, Monomial m, const Coeff& c) {
  Poly p(std::move(ring));
  const Coeff v = p.ring_ ? c.in(p.ring_->field()) : c;
  if (!v.is_zero()) p.terms_.push_back({p.ring_ ? m.padded(p.ring_->nvars()) : std::move(m), v});
  return p;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  Poly p(std::move(ring));
  const MonomialOrder order = p.ring_ ? p.ring_->order() : MonomialOrder::DegRevLex;
  if (p.ring_)
    for (auto& t : terms) {
      t.mono = t.mono.padded(p.ring_->nvars());
      t.coeff = t.coeff.in(p.ring_->field());
    }
  std::sort(terms.begin(), terms.end(),
            [order](const Term& a, const Term& b) { return compare(a.mono, b.mono, order) > 0; });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Coeff Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return ring_ ? Coeff::zero(ring_->field()) : Coeff(0);
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

Poly Poly::bound(const RingPtr& ring) const {
  if (ring_) {
    if (!same_ring(ring_, ring)) fail(ErrorKind::AmbientMismatch, "polynomial lives in a different ring");
    return *this;
  }
  Poly p(ring);
  for (const auto& t : terms_) {
    Coeff c = t.coeff.in(ring->field());
    if (!c.is_zero()) p.terms_.push_back({t.mono.padded(ring->nvars()), std::move(c)});
  }
  return p;
}

Poly Poly::remapped(const RingPtr& target, std::span<const std::size_t> var_map) const {
  if (!ring_) return bound(target);
  if (var_map.size() != ring_->nvars()) fail(ErrorKind::AmbientMismatch, "variable map has wrong arity");
  if (ring_->field() != target->field()) fail(ErrorKind::FieldMismatch, "remap across fields");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial::Storage e(target->nvars(), 0);
    for (std::size_t i = 0; i < var_map.size(); ++i) e[var_map[i]] = static_cast<Monomial::Exponent>(e[var_map[i]] + t.mono[i]);
    out.push_back({Monomial(std::move(e)), t.coeff});
  }
  return from_terms(target, std::move(out));
}

Poly Poly::scaled(const Coeff& c) const {
  if (c.is_zero()) return Poly(ring_);
  Poly p(*this);
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Poly Poly::monic() const {
  if (terms_.empty() || terms_.front().coeff.is_one()) return *this;
  return scaled(terms_.front().coeff.inverse());
}

RingPtr Poly::common_ring(const Poly& a, const Poly& b) {
  if (!a.ring_) return b.ring_;
  if (!b.ring_) return a.ring_;
  if (a.ring_ != b.ring_ && !(*a.ring_ == *b.ring_))
    fail(a.ring_->field() == b.ring_->field() ? ErrorKind::AmbientMismatch : ErrorKind::FieldMismatch,
         "polynomials from different rings");
  return a.ring_;
}

namespace {

// Merge two descending term lists: a + sign * b.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b, MonomialOrder order) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size())
      c = -1;
    else if (j == b.size())
      c = 1;
    else
      c = compare(a[i].mono, b[j].mono, order);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(negate_b ? Term{b[j].mono, -b[j].coeff} : b[j]);
      ++j;
    } else {
      Coeff s = negate_b ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!s.is_zero()) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  RingPtr r = common_ring(*this, o);
  if (!r) {
    // Both are unbound literals: constants only.
    Coeff s = constant_term() + o.constant_term();
    terms_.clear();
    if (!s.is_zero()) terms_.push_back({Monomial(), std::move(s)});
    return *this;
  }
  const Poly a = bound(r), b = o.bound(r);
  terms_ = merge(a.terms_, b.terms_, false, r->order());
  ring_ = r;
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  RingPtr r = common_ring(*this, o);
  if (!r) return *this += -o;
  const Poly a = bound(r), b = o.bound(r);
  terms_ = merge(a.terms_, b.terms_, true, r->order());
  ring_ = r;
  return *this;
}

Poly Poly::operator-() const {
  Poly p(*this);
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  RingPtr r = Poly::common_ring(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(r);
  const Poly x = r ? a.bound(r) : a, y = r ? b.bound(r) : b;
  if (x.terms_.size() == 1 || y.terms_.size() == 1) {
    // Multiplying by a single term preserves the order.
    const Poly& one = x.terms_.size() == 1 ? x : y;
    const Poly& many = x.terms_.size() == 1 ? y : x;
    Poly p(r);
    p.terms_.reserve(many.terms_.size());
    for (const auto& t : many.terms_) {
      Coeff c = t.coeff * one.terms_[0].coeff;
      if (!c.is_zero()) p.terms_.push_back({t.mono * one.terms_[0].mono, std::move(c)});
    }
    return p;
  }
  std::vector<Term> prods;
  prods.reserve(x.terms_.size() * y.terms_.size());
  for (const auto& s : x.terms_)
    for (const auto& t : y.terms_) prods.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return Poly::from_terms(r, std::move(prods));
}

Poly Poly::minus_term_times(const Coeff& c, const Monomial& m, const Poly& g) const {
  RingPtr r = common_ring(*this, g);
  std::vector<Term> shifted;
  shifted.reserve(g.terms_.size());
  for (const auto& t : g.terms_) shifted.push_back({t.mono * m, t.coeff * c});
  Poly p(r);
  p.terms_ = merge(bound(r).terms_, shifted, true, r->order());
  return p;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.ring_ && b.ring_) {
    if (a.ring_ != b.ring_ && !(*a.ring_ == *b.ring_)) return false;
  } else if (a.ring_ || b.ring_) {
    const RingPtr& r = a.ring_ ? a.ring_ : b.ring_;
    const Poly x = a.bound(r), y = b.bound(r);
    return x == y;
  }
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string mono;
    if (ring_)
      for (std::size_t i = 0; i < t.mono.size(); ++i) {
        if (!t.mono[i]) continue;
        if (!mono.empty()) mono += '*';
        mono += ring_->vars()[i];
        if (t.mono[i] > 1) mono += '^' + std::to_string(t.mono[i]);
      }
    std::string c = t.coeff.to_string();
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    std::string body;
    if (mono.empty())
      body = c;
    else if (c == "1")
      body = mono;
    else
      body = c + "*" + mono;
    if (first)
      out = negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace kcorr
