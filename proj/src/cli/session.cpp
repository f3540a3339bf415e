#include "kcorr/cli/session.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <set>
#include <sstream>

#include "kcorr/bimod.hpp"
#include "kcorr/cli/laws.hpp"
#include "kcorr/error.hpp"
#include "kcorr/exactalg/parse.hpp"
#include "kcorr/k0.hpp"

namespace kcorr {

const std::string& declaration_name(const Declaration& d) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

namespace {

const std::set<std::string> kCommands{"validate", "compose", "pullback", "pushforward", "box", "rho",
                                      "rho-inv",  "k0",      "compare-bimodule", "laws"};

// Collapse whitespace runs to single spaces and trim.
std::string normalize(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
    } else {
      if (space) out += ' ';
      space = false;
      out += c;
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : s_(src) {}

  Session run() {
    Session out;
    std::set<std::string> names{"pt"};
    bool seen_format = false;
    for (;;) {
      skip(true);
      if (at_end()) break;
      const std::size_t start = pos_;
      const std::string kw = keyword();
      if (kw == "format") {
        if (seen_format || !out.declarations.empty() || !out.commands.empty() || out.field)
          error("'format' must be the first statement", start);
        seen_format = true;
        const std::size_t at = (skip(false), pos_);
        if (integer() != 1) error("unsupported format version", at);
      } else if (kw == "field") {
        if (out.field) error("field declared twice", start);
        out.field = field();
      } else if (kw == "variety" || kw == "map" || kw == "corr" || kw == "morphism" || kw == "aut") {
        skip(false);
        const std::size_t at = pos_;
        Declaration d = declaration(kw);
        const std::string& name = declaration_name(d);
        if (!names.insert(name).second) error("name '" + name + "' is already defined", at);
        out.lines[name] = where(start).first;
        out.declarations.push_back(std::move(d));
      } else if (kCommands.count(kw)) {
        out.commands.push_back(command(kw));
      } else {
        error("unknown statement '" + kw + "'", start);
      }
      end_of_statement();
    }
    return out;
  }

  MatrixLit matrix_only() {
    MatrixLit m = matrix();
    skip(true);
    if (!at_end()) error("unexpected text after matrix", pos_);
    return m;
  }

 private:
  std::pair<int, int> where(std::size_t p) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < p && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }
  [[noreturn]] void error(const std::string& what, std::size_t p) const {
    const auto [line, col] = where(p);
    throw ParseError(line, col, what);
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  void skip(bool newlines) {
    while (!at_end()) {
      const char c = s_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || (c == '\n' && newlines)) {
        ++pos_;
      } else if (c == '#') {
        while (!at_end() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  bool accept(char c, bool newlines = true) {
    skip(newlines);
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c, bool newlines = true) {
    if (!accept(c, newlines)) error(std::string("expected '") + c + "'", pos_);
  }
  void expect_arrow() {
    skip(false);
    if (s_.compare(pos_, 2, "->") != 0) error("expected '->'", pos_);
    pos_ += 2;
  }
  void end_of_statement() {
    skip(false);
    if (accept(';', false)) skip(false);
    if (!at_end() && peek() != '\n') error("unexpected text after statement", pos_);
  }

  std::string keyword() {
    skip(true);
    const std::size_t b = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) ++pos_;
    if (b == pos_) error("expected a statement", b);
    return s_.substr(b, pos_ - b);
  }
  std::string ident(bool newlines = true) {
    skip(newlines);
    if (!ident_start(peek())) error("expected a name", pos_);
    const std::size_t b = pos_;
    while (!at_end() && ident_char(peek())) ++pos_;
    return s_.substr(b, pos_ - b);
  }
  long integer() {
    skip(true);
    const std::size_t b = pos_;
    if (peek() == '-') ++pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (b == pos_ || (pos_ - b == 1 && s_[b] == '-')) error("expected an integer", b);
    if (pos_ - b > 12) error("integer out of range", b);
    return std::stol(s_.substr(b, pos_ - b));
  }
  void key(const char* expected) {
    const std::size_t at = (skip(true), pos_);
    if (ident() != expected) error(std::string("expected '") + expected + "'", at);
  }

  // Expression text up to a stop character at parenthesis depth zero.
  std::string raw(const char* stops, bool newline_stops) {
    skip(false);
    const std::size_t b = pos_;
    int depth = 0;
    while (!at_end()) {
      const char c = s_[pos_];
      if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (depth == 0) error("unbalanced ')'", pos_);
        --depth;
      } else if (depth == 0 && (std::strchr(stops, c) || (c == '\n' && newline_stops))) {
        break;
      } else if (c == '#' && (pos_ == b || std::isspace(static_cast<unsigned char>(s_[pos_ - 1])))) {
        break;
      } else if (c == '{' || c == '}' || c == '[' || c == ']' || c == ';') {
        error(std::string("unexpected '") + c + "' in expression", pos_);
      }
      ++pos_;
    }
    if (depth) error("unbalanced '('", b);
    std::string out = normalize(std::string_view(s_).substr(b, pos_ - b));
    if (out.empty()) error("expected an expression", b);
    return out;
  }

  MatrixLit matrix() {
    MatrixLit m;
    expect('[');
    if (accept(']')) return m;
    do {
      expect('[');
      std::vector<std::string> row;
      do {
        skip(true);
        row.push_back(raw(",]", false));
      } while (accept(','));
      expect(']');
      m.push_back(std::move(row));
    } while (accept(','));
    expect(']');
    return m;
  }

  template <class F>
  void list(F item) {
    expect('[');
    if (accept(']')) return;
    do item();
    while (accept(','));
    expect(']');
  }

  // Items of a { ... } body, separated by ';' or newlines.
  template <class F>
  void body(F item) {
    expect('{', false);
    for (;;) {
      if (accept('}')) return;
      if (at_end()) error("unterminated '{'", pos_);
      item();
      skip(false);
      if (!accept(';', false) && peek() != '\n' && peek() != '}' && peek() != '#') error("expected ';' or a new line", pos_);
    }
  }

  FieldTag field() {
    skip(false);
    const std::size_t at = pos_;
    const std::string name = ident(false);
    if (name == "Q") return FieldTag::rational();
    if (name != "Fp") error("unknown field '" + name + "' (expected Q or Fp P)", at);
    accept(':', false);
    skip(false);
    const std::size_t pat = pos_;
    const long p = integer();
    try {
      if (p < 2) fail(ErrorKind::InvalidArity, "not a prime");
      return FieldTag::prime(static_cast<std::uint64_t>(p));
    } catch (const Error&) {
      error("field characteristic " + std::to_string(p) + " is not a prime below 2^31", pat);
    }
  }

  Declaration declaration(const std::string& kw) {
    if (kw == "variety") return variety();
    if (kw == "map") {
      MapDecl d;
      header(d.name, d.source, d.target);
      body([&] {
        const std::string v = ident();
        expect('=', false);
        d.images.emplace_back(v, raw(";}", true));
      });
      return d;
    }
    if (kw == "corr") {
      CorrDecl d;
      header(d.name, d.source, d.target);
      bool have_n = false, have_unit = false;
      body([&] {
        const std::size_t at = (skip(true), pos_);
        const std::string k = ident();
        if (k == "n") {
          expect('=', false);
          d.n = integer();
          if (d.n < 0) error("n must be non-negative", at);
          have_n = true;
        } else if (k == "unit") {
          expect('=', false);
          d.unit = matrix();
          have_unit = true;
        } else if (k == "gen") {
          const std::string v = ident(false);
          expect('=', false);
          d.gens.emplace_back(v, matrix());
        } else {
          error("unknown corr field '" + k + "'", at);
        }
      });
      if (!have_n || !have_unit) error("corr '" + d.name + "' needs n and unit", pos_ - 1);
      return d;
    }
    if (kw == "morphism") {
      MorphismDecl d;
      header(d.name, d.source, d.target);
      bool have = false;
      body([&] {
        key("matrix");
        expect('=', false);
        d.matrix = matrix();
        have = true;
      });
      if (!have) error("morphism '" + d.name + "' needs a matrix", pos_ - 1);
      return d;
    }
    AutDecl d;
    d.name = ident(false);
    bool have_base = false;
    body([&] {
      const std::size_t at = (skip(true), pos_);
      const std::string k = ident();
      expect('=', false);
      if (k == "base") {
        d.base = ident(false);
        have_base = true;
      } else if (k == "theta") {
        list([&] { d.theta.push_back(matrix()); });
      } else if (k == "theta_inv") {
        list([&] { d.theta_inv.push_back(matrix()); });
      } else {
        error("unknown aut field '" + k + "'", at);
      }
    });
    if (!have_base) error("aut '" + d.name + "' needs a base", pos_ - 1);
    return d;
  }

  void header(std::string& name, std::string& source, std::string& target) {
    name = ident(false);
    expect(':', false);
    source = ident(false);
    expect_arrow();
    target = ident(false);
  }

  VarietyDecl variety() {
    VarietyDecl d;
    d.name = ident(false);
    if (accept('=', false)) {
      skip(false);
      const std::size_t at = pos_;
      const std::string k = ident(false);
      if (k == "product") {
        d.kind = VarietyDecl::Kind::Product;
        expect('(', false);
        d.left = ident();
        expect(',');
        d.right = ident();
        expect(')');
      } else if (k == "gm") {
        d.kind = VarietyDecl::Kind::Torus;
        expect('(', false);
        const std::size_t nat = (skip(true), pos_);
        d.rank = static_cast<int>(integer());
        if (d.rank < 1) error("torus rank must be positive", nat);
        expect(')');
      } else {
        error("expected product(...) or gm(...)", at);
      }
      return d;
    }
    body([&] {
      const std::size_t at = (skip(true), pos_);
      const std::string k = ident();
      if (k == "vars") {
        expect('=', false);
        list([&] { d.vars.push_back(ident()); });
      } else if (k == "ideal") {
        expect('=', false);
        list([&] {
          skip(true);
          d.ideal.push_back(raw(",]", false));
        });
      } else if (k == "integral") {
        d.integral = true;
      } else {
        error("unknown variety field '" + k + "'", at);
      }
    });
    return d;
  }

  Command command(const std::string& verb) {
    Command c{verb, {}};
    for (;;) {
      skip(false);
      if (at_end() || peek() == '\n' || peek() == ';') break;
      const std::size_t b = pos_;
      if (peek() == '[') {
        int depth = 0;
        do {
          if (at_end()) error("unbalanced '['", b);
          if (s_[pos_] == '[') ++depth;
          if (s_[pos_] == ']') --depth;
          ++pos_;
        } while (depth > 0);
      } else {
        while (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ';' && peek() != '#') ++pos_;
      }
      c.args.push_back(normalize(std::string_view(s_).substr(b, pos_ - b)));
    }
    return c;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string print_matrix(const MatrixLit& m) {
  std::vector<std::string> rows;
  for (const auto& r : m) rows.push_back("[" + join(r, ", ") + "]");
  return "[" + join(rows, ", ") + "]";
}

std::string print_matrices(const std::vector<MatrixLit>& ms) {
  std::vector<std::string> parts;
  for (const auto& m : ms) parts.push_back(print_matrix(m));
  return "[" + join(parts, ", ") + "]";
}

struct Printer {
  std::string operator()(const VarietyDecl& d) const {
    switch (d.kind) {
      case VarietyDecl::Kind::Product: return "variety " + d.name + " = product(" + d.left + ", " + d.right + ")";
      case VarietyDecl::Kind::Torus: return "variety " + d.name + " = gm(" + std::to_string(d.rank) + ")";
      case VarietyDecl::Kind::Explicit: break;
    }
    std::string s = "variety " + d.name + " { vars=[" + join(d.vars, ", ") + "]";
    if (!d.ideal.empty()) s += "; ideal=[" + join(d.ideal, ", ") + "]";
    if (d.integral) s += "; integral";
    return s + " }";
  }
  std::string operator()(const MapDecl& d) const {
    std::vector<std::string> items;
    for (const auto& [v, e] : d.images) items.push_back(v + " = " + e);
    return "map " + d.name + " : " + d.source + " -> " + d.target + " { " + join(items, "; ") + (items.empty() ? "}" : " }");
  }
  std::string operator()(const CorrDecl& d) const {
    std::string s = "corr " + d.name + " : " + d.source + " -> " + d.target + " { n=" + std::to_string(d.n) +
                    "; unit=" + print_matrix(d.unit);
    for (const auto& [v, m] : d.gens) s += "; gen " + v + "=" + print_matrix(m);
    return s + " }";
  }
  std::string operator()(const MorphismDecl& d) const {
    return "morphism " + d.name + " : " + d.source + " -> " + d.target + " { matrix=" + print_matrix(d.matrix) + " }";
  }
  std::string operator()(const AutDecl& d) const {
    return "aut " + d.name + " { base=" + d.base + "; theta=" + print_matrices(d.theta) +
           "; theta_inv=" + print_matrices(d.theta_inv) + " }";
  }
};

// Re-raise a library error with the declaration it came from.
[[noreturn]] void rethrow_in(const Error& e, const std::string& name, int line) {
  std::string what = e.what();
  const std::string prefix = std::string(to_string(e.kind())) + ": ";
  if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
  throw Error(e.kind(), "in '" + name + "' (line " + std::to_string(line) + "): " + what);
}

class Resolver {
 public:
  explicit Resolver(const Session& s) : s_(s) {
    w_.field = s.base_field();
    w_.varieties.emplace("pt", point(w_.field));
    for (const auto& d : s.declarations) by_name_.emplace(declaration_name(d), &d);
  }

  Workspace run() {
    for (const auto& d : s_.declarations) need(declaration_name(d), "");
    for (const auto& c : s_.commands) {
      if (c.verb == "laws") continue;
      for (const auto& a : c.args)
        if (a.empty() || a[0] != '[') {
          if (!by_name_.count(a) && a != "pt") fail(ErrorKind::ResolveError, "command '" + c.verb + "' refers to undefined name '" + a + "'");
        }
    }
    return std::move(w_);
  }

 private:
  void need(const std::string& name, const std::string& from) {
    if (name == "pt" || done_.count(name)) return;
    const auto it = by_name_.find(name);
    if (it == by_name_.end()) fail(ErrorKind::ResolveError, "'" + from + "' refers to undefined name '" + name + "'");
    if (!visiting_.insert(name).second) fail(ErrorKind::ResolveError, "cyclic reference through '" + name + "'");
    std::visit([&](const auto& d) { resolve(d); }, *it->second);
    visiting_.erase(name);
    done_.insert(name);
  }

  template <class T>
  const T& get(const std::map<std::string, T>& table, const std::string& name, const std::string& from, const char* kind) {
    need(name, from);
    const auto it = table.find(name);
    if (it == table.end()) fail(ErrorKind::ResolveError, "'" + from + "' expects '" + name + "' to be a " + kind);
    return it->second;
  }
  const VarietyPtr& variety(const std::string& name, const std::string& from) {
    return get(w_.varieties, name, from, "variety");
  }
  const CorrObject& corr(const std::string& name, const std::string& from) {
    return get(w_.corrs, name, from, "corr");
  }

  int line(const std::string& name) const {
    const auto it = s_.lines.find(name);
    return it == s_.lines.end() ? 0 : it->second;
  }

  static QMatrix to_matrix(const MatrixLit& m, const VarietyPtr& x) {
    const auto rows = static_cast<Eigen::Index>(m.size());
    const auto cols = rows ? static_cast<Eigen::Index>(m[0].size()) : 0;
    QMatrix out = zeros(x->coords(), rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (static_cast<Eigen::Index>(m[i].size()) != cols) fail(ErrorKind::ShapeError, "matrix rows have different lengths");
      for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = x->parse(m[i][j]);
    }
    return out;
  }

  // Order named entries by the variables of y.
  template <class T>
  static std::vector<T> by_variable(const std::vector<std::pair<std::string, T>>& named, const VarietyPtr& y,
                                    const char* what) {
    std::vector<std::optional<T>> slots(y->nvars());
    for (const auto& [v, value] : named) {
      const auto idx = y->ring()->index_of(v);
      if (idx < 0) fail(ErrorKind::UnknownVariable, "'" + v + "' is not a coordinate of '" + y->name() + "'");
      if (slots[idx]) fail(ErrorKind::InvalidArity, std::string(what) + " for '" + v + "' given twice");
      slots[idx] = value;
    }
    std::vector<T> out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!slots[i]) fail(ErrorKind::InvalidArity, std::string(what) + " for '" + y->vars()[i] + "' is missing");
      out.push_back(*slots[i]);
    }
    return out;
  }

  void resolve(const VarietyDecl& d) {
    VarietyPtr left, right;
    if (d.kind == VarietyDecl::Kind::Product) {
      left = variety(d.left, d.name);
      right = variety(d.right, d.name);
    }
    try {
      VarietyPtr v;
      switch (d.kind) {
        case VarietyDecl::Kind::Explicit: v = make_variety(d.name, d.vars, d.ideal, w_.field, d.integral); break;
        case VarietyDecl::Kind::Product: v = product(left, right, d.name); break;
        case VarietyDecl::Kind::Torus: {
          const VarietyPtr g = gm_power(d.rank, w_.field);
          v = std::make_shared<const AffVariety>(d.name, w_.field, g->factors(), g->ring()->order());
          break;
        }
      }
      w_.varieties.emplace(d.name, v);
    } catch (const Error& e) {
      rethrow_in(e, d.name, line(d.name));
    }
  }

  void resolve(const MapDecl& d) {
    const VarietyPtr x = variety(d.source, d.name), y = variety(d.target, d.name);
    try {
      w_.maps.emplace(d.name, make_morphism(x, y, by_variable(d.images, y, "image")));
    } catch (const Error& e) {
      rethrow_in(e, d.name, line(d.name));
    }
  }

  void resolve(const CorrDecl& d) {
    const VarietyPtr x = variety(d.source, d.name), y = variety(d.target, d.name);
    try {
      const QMatrix p = to_matrix(d.unit, x);
      if (p.rows() != d.n || p.cols() != d.n)
        fail(ErrorKind::ShapeError, "unit is " + std::to_string(p.rows()) + "x" + std::to_string(p.cols()) + ", expected n = " +
                                        std::to_string(d.n));
      std::vector<std::pair<std::string, QMatrix>> named;
      for (const auto& [v, m] : d.gens) named.emplace_back(v, to_matrix(m, x));
      w_.corrs.emplace(d.name, make_correspondence(x, y, p, by_variable(named, y, "generator")));
    } catch (const Error& e) {
      rethrow_in(e, d.name, line(d.name));
    }
  }

  void resolve(const MorphismDecl& d) {
    const CorrObject& src = corr(d.source, d.name);
    const CorrObject& dst = corr(d.target, d.name);
    try {
      w_.morphisms.emplace(d.name, make_corr_morphism(src, dst, to_matrix(d.matrix, src.X())));
    } catch (const Error& e) {
      rethrow_in(e, d.name, line(d.name));
    }
  }

  void resolve(const AutDecl& d) {
    const CorrObject& base = corr(d.base, d.name);
    try {
      std::vector<QMatrix> theta, inv;
      for (const auto& m : d.theta) theta.push_back(to_matrix(m, base.X()));
      for (const auto& m : d.theta_inv) inv.push_back(to_matrix(m, base.X()));
      w_.auts.emplace(d.name, make_aut_object(base, theta, inv));
    } catch (const Error& e) {
      rethrow_in(e, d.name, line(d.name));
    }
  }

  const Session& s_;
  Workspace w_;
  std::map<std::string, const Declaration*> by_name_;
  std::set<std::string> visiting_, done_;
};

// Command helpers.

void arity(const Command& c, std::size_t lo, std::size_t hi) {
  if (c.args.size() < lo || c.args.size() > hi)
    fail(ErrorKind::InvalidArity, "'" + c.verb + "' takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
                                      " argument(s), got " + std::to_string(c.args.size()));
}

template <class T>
const T* lookup(const std::map<std::string, T>& table, const std::string& name) {
  const auto it = table.find(name);
  return it == table.end() ? nullptr : &it->second;
}

template <class T>
const T& require(const std::map<std::string, T>& table, const std::string& name, const char* kind) {
  if (const T* v = lookup(table, name)) return *v;
  fail(ErrorKind::ResolveError, "'" + name + "' is not a " + kind);
}

// A name for a command's result, e.g. "compose_Phi_Psi".
std::string result_name(const Command& c) {
  std::string out;
  for (char ch : c.verb) out += ch == '-' ? '_' : ch;
  for (const auto& a : c.args)
    if (!a.empty() && a[0] != '[') out += "_" + a;
  return out;
}

std::string header(const char* kind, const std::string& name, const VarietyPtr& x, const VarietyPtr& y) {
  return std::string(kind) + " " + name + " : " + x->name() + " -> " + y->name();
}

std::string show(const CorrObject& obj, const std::string& name) {
  return header("corr", name, obj.X(), obj.Y()) + " { " + format_corr(obj) + " }";
}

std::string show(const CorrMorphism& m, const std::string& name) {
  return header("morphism", name, m.src().X(), m.src().Y()) + " { matrix=" + format_matrix(m.mat()) + " }";
}

void show_aut(const AutObject& a, const std::string& name, std::vector<std::string>& lines) {
  lines.push_back(show(a.base, name));
  for (std::size_t i = 0; i < a.arity(); ++i) {
    lines.push_back("theta" + std::to_string(i + 1) + " = " + format_matrix(a.theta[i].mat()));
    lines.push_back("theta_inv" + std::to_string(i + 1) + " = " + format_matrix(a.theta_inv[i].mat()));
  }
}

void k0_report(const std::vector<std::string>& names, const Workspace& w, std::vector<std::string>& out) {
  std::vector<const CorrObject*> objs;
  for (const auto& name : names) objs.push_back(&w.corrs.at(name));
  K0Ledger ledger(objs[0]->X(), objs[0]->Y());
  out.push_back("ledger " + ledger.X()->name() + " -> " + ledger.Y()->name());
  std::vector<ObjectId> ids;
  for (const auto* o : objs) ids.push_back(ledger.add(*o));
  const bool over_pt = ledger.X()->nvars() == 0 && ledger.Y()->nvars() == 0;
  for (std::size_t i = 0; i < ids.size() && over_pt; ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (ledger.representative(ids[i]) == ledger.representative(ids[j])) continue;
      if (objs[i]->n() > 3 || objs[j]->n() > 3) continue;
      if (auto cert = find_pt_isomorphism(*objs[i], *objs[j])) ledger.register_iso(*cert);
    }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto rk = ledger.rank_of({{ids[i], 1}});
    out.push_back("  " + names[i] + ": rank " + (rk ? std::to_string(*rk) : std::string("unknown")) + ", class " +
                  ledger.class_of(FormalSum{{ids[i], 1}}).to_string());
  }
  std::string blocks;
  for (const auto& block : ledger.partition()) {
    std::vector<std::string> members;
    for (ObjectId id : block)
      for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id && std::find(members.begin(), members.end(), names[i]) == members.end()) members.push_back(names[i]);
    if (!members.empty()) blocks += (blocks.empty() ? "" : " ") + ("{" + join(members, ", ") + "}");
  }
  out.push_back("  partition " + blocks);
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const Verdict v = ledger.compare({{ids[i], 1}}, {{ids[j], 1}});
      out.push_back("  " + names[i] + " vs " + names[j] + ": " + to_string(v) +
                    (v == Verdict::Undetermined ? " (no certificate, no separating rank)" : ""));
    }
}

unsigned long parse_count(const std::string& text, const char* what) {
  if (text.empty() || text.size() > 19 || text.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorKind::ParseError, std::string("expected a non-negative integer for ") + what + ", got '" + text + "'");
  return std::stoul(text);
}

}  // namespace

Session parse_session(const std::string& text) { return Parser(text).run(); }

MatrixLit parse_matrix_literal(const std::string& text) { return Parser(text).matrix_only(); }

std::string print_session(const Session& s) {
  std::string out = "format 1\n";
  if (s.field) out += s.field->is_rational() ? "field Q\n" : "field Fp " + std::to_string(s.field->characteristic()) + "\n";
  for (const auto& d : s.declarations) out += std::visit(Printer{}, d) + "\n";
  for (const auto& c : s.commands) out += c.verb + (c.args.empty() ? "" : " " + join(c.args, " ")) + "\n";
  return out;
}

Workspace load_session(const Session& s) { return Resolver(s).run(); }

std::string format_matrix(const QMatrix& m) { return to_string(m); }

std::string format_corr(const CorrObject& obj) {
  std::string s = "n=" + std::to_string(obj.n()) + "; unit=" + format_matrix(obj.p());
  for (std::size_t j = 0; j < obj.gens().size(); ++j) s += "; gen " + obj.Y()->vars()[j] + "=" + format_matrix(obj.gen(j));
  return s;
}

CommandResult run_command(const Command& c, const Workspace& w) {
  CommandResult r{c, {}, true};
  auto& out = r.lines;
  const std::string label = result_name(c);
  const auto& a = c.args;
  if (c.verb == "validate") {
    if (a.empty()) {
      out.push_back("valid: " + std::to_string(w.varieties.size() - 1) + " varieties, " + std::to_string(w.maps.size()) +
                    " maps, " + std::to_string(w.corrs.size()) + " corrs, " + std::to_string(w.morphisms.size()) +
                    " morphisms, " + std::to_string(w.auts.size()) + " auts");
    }
    for (const auto& name : a) {
      std::string v;
      if (const auto* o = lookup(w.corrs, name)) v = o->violation();
      else if (const auto* m = lookup(w.morphisms, name)) v = m->violation();
      else if (const auto* t = lookup(w.auts, name)) v = t->violation();
      else if (!lookup(w.varieties, name) && !lookup(w.maps, name)) fail(ErrorKind::ResolveError, "unknown name '" + name + "'");
      out.push_back(name + (v.empty() ? ": valid" : ": invalid (" + v + ")"));
      if (!v.empty()) r.ok = false;
    }
  } else if (c.verb == "compose") {
    arity(c, 2, 2);
    if (const auto* first = lookup(w.corrs, a[0])) {
      out.push_back(show(compose_objects(*first, require(w.corrs, a[1], "corr")), label));
    } else {
      const CorrMorphism& m1 = require(w.morphisms, a[0], "corr or morphism");
      out.push_back(show(compose_morphisms(require(w.morphisms, a[1], "morphism"), m1), label));
    }
  } else if (c.verb == "pullback" || c.verb == "pushforward" || c.verb == "box") {
    arity(c, 2, 2);
    const VarMorphism& f = require(w.maps, a[0], "map");
    if (const auto* obj = lookup(w.corrs, a[1])) {
      out.push_back(show(c.verb == "pullback"      ? pullback_obj(f, *obj)
                         : c.verb == "pushforward" ? pushforward_obj(f, *obj)
                                                   : box_product(f, *obj), label));
    } else {
      const CorrMorphism& m = require(w.morphisms, a[1], "corr or morphism");
      out.push_back(show(c.verb == "pullback"      ? pullback_mor(f, m)
                         : c.verb == "pushforward" ? pushforward_mor(f, m)
                                                   : box_mor(f, m), label));
    }
  } else if (c.verb == "rho") {
    arity(c, 1, 1);
    if (const auto* obj = lookup(w.corrs, a[0])) {
      show_aut(rho(*obj), label, out);
    } else {
      const AutMorphism m = rho(require(w.morphisms, a[0], "corr or morphism"));
      out.push_back(show(m.underlying, label));
    }
  } else if (c.verb == "rho-inv") {
    arity(c, 1, 1);
    const AutObject& t = require(w.auts, a[0], "aut");
    out.push_back(show(rho_inverse(t, static_cast<int>(t.arity())), label));
  } else if (c.verb == "k0") {
    std::vector<std::string> names = a;
    if (names.empty())
      for (const auto& [name, obj] : w.corrs) names.push_back(name);
    // One ledger per ambient pair, in order of first appearance.
    std::vector<std::vector<std::string>> groups;
    for (const auto& name : names) {
      const CorrObject& obj = require(w.corrs, name, "corr");
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
        const CorrObject& o = w.corrs.at(g[0]);
        return same_variety(o.X(), obj.X()) && same_variety(o.Y(), obj.Y());
      });
      if (it == groups.end()) groups.push_back({name});
      else it->push_back(name);
    }
    for (const auto& g : groups) k0_report(g, w, out);
  } else if (c.verb == "compare-bimodule") {
    arity(c, 3, 3);
    const CorrObject& src = require(w.corrs, a[0], "corr");
    const CorrObject& dst = require(w.corrs, a[1], "corr");
    const MatrixLit lit = parse_matrix_literal(a[2]);
    QMatrix m = zeros(src.X()->coords(), static_cast<Eigen::Index>(lit.size()),
                      lit.empty() ? 0 : static_cast<Eigen::Index>(lit[0].size()));
    for (std::size_t i = 0; i < lit.size(); ++i) {
      if (lit[i].size() != lit[0].size()) fail(ErrorKind::ShapeError, "matrix rows have different lengths");
      for (std::size_t j = 0; j < lit[i].size(); ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = src.X()->parse(lit[i][j]);
    }
    const bool shape = m.rows() == dst.n() && m.cols() == src.n();
    const bool corr_ok = shape && CorrMorphism(src, dst, m).violation().empty();
    const bool bimod_ok = shape && bimodule_hom_valid(to_bimodule(src), to_bimodule(dst), m);
    out.push_back(std::string("corrcat ") + (corr_ok ? "valid" : "invalid") + ", bimodule " + (bimod_ok ? "valid" : "invalid") +
                  (corr_ok == bimod_ok ? ", agree" : ", DISAGREE"));
    r.ok = corr_ok == bimod_ok;
  } else if (c.verb == "laws") {
    arity(c, 0, 2);
    LawOptions opts;
    if (a.size() > 0) opts.cases = static_cast<int>(parse_count(a[0], "cases"));
    if (a.size() > 1) opts.seed = parse_count(a[1], "seed");
    const LawReport report = law_suite(opts);
    std::istringstream text(report.text());
    for (std::string line; std::getline(text, line);)
      if (line.rfind("wall-time", 0) != 0) out.push_back(line);
    r.ok = report.ok();
  } else {
    fail(ErrorKind::ParseError, "unknown command '" + c.verb + "'");
  }
  return r;
}

}  // namespace kcorr
