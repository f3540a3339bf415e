#include "kcorr/exactalg/field.hpp"

#include "kcorr/error.hpp"

namespace kcorr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::InvalidArity: return "InvalidArity";
    case ErrorKind::InvalidObject: return "InvalidObject";
    case ErrorKind::InvalidMorphism: return "InvalidMorphism";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::InternalLawViolation: return "InternalLawViolation";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::InvalidCertificate: return "InvalidCertificate";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ResolveError: return "ResolveError";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldTag FieldTag::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
    fail(ErrorKind::InvalidArity, "field characteristic " + std::to_string(p) + " is not a prime below 2^31");
  return FieldTag(static_cast<std::uint32_t>(p));
}

std::string FieldTag::to_string() const {
  return is_rational() ? std::string("Q") : "Fp:" + std::to_string(p_);
}

FieldTag FieldTag::parse(const std::string& text) {
  if (text == "Q") return rational();
  std::string digits;
  if (text.rfind("Fp:", 0) == 0)
    digits = text.substr(3);
  else if (text.rfind("Fp", 0) == 0)
    digits = text.substr(2);
  else
    fail(ErrorKind::ParseError, "unknown field '" + text + "' (expected Q or Fp:P)");
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 12)
    fail(ErrorKind::ParseError, "bad field characteristic in '" + text + "'");
  return prime(std::stoull(digits));
}

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::uint64_t mpz_mod_u(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

Coeff Coeff::zero(FieldTag k) { return from_integer(k, 0); }
Coeff Coeff::one(FieldTag k) { return from_integer(k, 1); }

Coeff Coeff::from_integer(FieldTag k, long v) {
  if (k.is_rational()) return Coeff(v);
  const auto p = static_cast<std::int64_t>(k.characteristic());
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return Coeff(Residue{static_cast<std::uint32_t>(r), k.characteristic()});
}

Coeff Coeff::from_rational(FieldTag k, const mpq_class& q) {
  if (k.is_rational()) return Coeff(q);
  const std::uint32_t p = k.characteristic();
  const std::uint64_t den = mpz_mod_u(q.get_den(), p);
  if (den == 0) fail(ErrorKind::DivisionByZero, "denominator of " + q.get_str() + " vanishes in F_" + std::to_string(p));
  const std::uint64_t num = mpz_mod_u(q.get_num(), p);
  return residue_of(num * pow_mod(den, p - 2, p), p);
}

FieldTag Coeff::field() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return FieldTag(r->p);
  return FieldTag::rational();
}

Coeff Coeff::in(FieldTag k) const {
  if (const auto* r = std::get_if<Residue>(&rep_)) {
    if (k.characteristic() != r->p)
      fail(ErrorKind::FieldMismatch, "cannot move an F_" + std::to_string(r->p) + " scalar into " + k.to_string());
    return *this;
  }
  if (k.is_rational()) return *this;
  return from_rational(k, std::get<mpq_class>(rep_));
}

bool Coeff::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return r->r == 0;
  return sgn(std::get<mpq_class>(rep_)) == 0;
}

bool Coeff::is_one() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return r->r == 1;
  return std::get<mpq_class>(rep_) == 1;
}

void Coeff::unify(Coeff& a, Coeff& b) {
  const bool ra = std::holds_alternative<Residue>(a.rep_);
  const bool rb = std::holds_alternative<Residue>(b.rep_);
  if (ra && rb) {
    if (std::get<Residue>(a.rep_).p != std::get<Residue>(b.rep_).p)
      fail(ErrorKind::FieldMismatch, "scalars from different prime fields");
  } else if (ra) {
    b = b.in(a.field());
  } else if (rb) {
    a = a.in(b.field());
  }
}

Coeff& Coeff::operator+=(const Coeff& o) {
  if (auto* r = std::get_if<Residue>(&rep_)) {
    if (const auto* s = std::get_if<Residue>(&o.rep_); s && s->p == r->p) {
      r->r = static_cast<std::uint32_t>((std::uint64_t{r->r} + s->r) % r->p);
      return *this;
    }
  } else if (const auto* s = std::get_if<mpq_class>(&o.rep_)) {
    std::get<mpq_class>(rep_) += *s;
    return *this;
  }
  Coeff b = o;
  unify(*this, b);
  return *this += b;
}

Coeff& Coeff::operator-=(const Coeff& o) { return *this += -o; }

Coeff& Coeff::operator*=(const Coeff& o) {
  if (auto* r = std::get_if<Residue>(&rep_)) {
    if (const auto* s = std::get_if<Residue>(&o.rep_); s && s->p == r->p) {
      r->r = static_cast<std::uint32_t>(std::uint64_t{r->r} * s->r % r->p);
      return *this;
    }
  } else if (const auto* s = std::get_if<mpq_class>(&o.rep_)) {
    std::get<mpq_class>(rep_) *= *s;
    return *this;
  }
  Coeff b = o;
  unify(*this, b);
  return *this *= b;
}

Coeff& Coeff::operator/=(const Coeff& o) { return *this *= o.inverse(); }

Coeff Coeff::operator-() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return residue_of(r->r == 0 ? 0 : r->p - r->r, r->p);
  return Coeff(mpq_class(-std::get<mpq_class>(rep_)));
}

Coeff Coeff::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  if (const auto* r = std::get_if<Residue>(&rep_)) return residue_of(pow_mod(r->r, r->p - 2, r->p), r->p);
  return Coeff(mpq_class(1 / std::get<mpq_class>(rep_)));
}

bool operator==(const Coeff& a, const Coeff& b) {
  const auto* ra = std::get_if<Coeff::Residue>(&a.rep_);
  const auto* rb = std::get_if<Coeff::Residue>(&b.rep_);
  if (!ra && !rb) return std::get<mpq_class>(a.rep_) == std::get<mpq_class>(b.rep_);
  if (ra && rb) return ra->p == rb->p && ra->r == rb->r;
  Coeff x = a, y = b;
  Coeff::unify(x, y);
  return x == y;
}

std::string Coeff::to_string() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return std::to_string(r->r);
  return std::get<mpq_class>(rep_).get_str();
}

}  // namespace kcorr
