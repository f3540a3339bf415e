#include "kcorr/exactalg/parse.hpp"

#include <cctype>

#include "kcorr/error.hpp"

namespace kcorr {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '#' || c == '\'';
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const RingPtr& ring, int line, int column)
      : s_(text), ring_(ring), line_(line), col0_(column) {}

  Poly run() {
    skip();
    if (pos_ == s_.size()) error("empty polynomial");
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) error(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    throw ParseError(line_, col0_ + static_cast<int>(pos_), msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_factor() {
    skip();
    if (pos_ == s_.size()) return false;
    const char c = s_[pos_];
    return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '(';
  }

  Poly constant(const Coeff& c) const { return Poly::constant(ring_, c); }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc *= unary();
      } else if (peek('/')) {
        ++pos_;
        skip();
        const std::size_t at = pos_;
        mpz_class d = integer();
        const Coeff c = Coeff(mpq_class(d)).in(ring_->field());
        if (c.is_zero()) {
          pos_ = at;
          error("division by zero");
        }
        acc = acc.scaled(c.inverse());
      } else if (starts_factor()) {
        acc *= unary();
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      const std::size_t at = pos_;
      mpz_class e = integer();
      if (e > 4096) {
        pos_ = at;
        error("exponent too large");
      }
      Poly r = constant(Coeff::one(ring_->field()));
      for (unsigned long k = e.get_ui(); k; --k) r *= base;
      return r;
    }
    return base;
  }

  mpz_class integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Poly atom() {
    skip();
    if (pos_ == s_.size()) error("unexpected end of polynomial");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!peek(')')) error("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class q(integer());
      // a/b directly after an integer is a rational literal
      if (peek('/')) {
        const std::size_t save = pos_;
        ++pos_;
        skip();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          const std::size_t at = pos_;
          mpz_class d = integer();
          if (d == 0) {
            pos_ = at;
            error("division by zero");
          }
          q /= d;
        } else {
          pos_ = save;
        }
      }
      try {
        return constant(Coeff::from_rational(ring_->field(), q));
      } catch (const Error&) {
        error("literal " + q.get_str() + " is undefined in " + ring_->field().to_string());
      }
    }
    if (ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      const auto idx = ring_->index_of(name);
      if (idx < 0) fail(ErrorKind::UnknownVariable, "unknown variable '" + name + "' at " + std::to_string(line_) + ":" +
                                                        std::to_string(col0_ + static_cast<int>(start)));
      return Poly::variable(ring_, static_cast<std::size_t>(idx));
    }
    error(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  RingPtr ring_;
  int line_;
  int col0_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const RingPtr& ring, int line, int column) {
  return PolyParser(text, ring, line, column).run();
}

}  // namespace kcorr
