#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kcorr/functors.hpp"

namespace kcorr {

/// Rows of entry expressions, kept as source text until resolution.
using MatrixLit = std::vector<std::vector<std::string>>;

struct VarietyDecl {
  enum class Kind { Explicit, Product, Torus };
  std::string name;
  Kind kind = Kind::Explicit;
  std::vector<std::string> vars;
  std::vector<std::string> ideal;
  bool integral = false;
  std::string left, right;  // Product
  int rank = 0;             // Torus
  friend bool operator==(const VarietyDecl&, const VarietyDecl&) = default;
};

struct MapDecl {
  std::string name, source, target;
  std::vector<std::pair<std::string, std::string>> images;
  friend bool operator==(const MapDecl&, const MapDecl&) = default;
};

struct CorrDecl {
  std::string name, source, target;
  long n = 0;
  MatrixLit unit;
  std::vector<std::pair<std::string, MatrixLit>> gens;
  friend bool operator==(const CorrDecl&, const CorrDecl&) = default;
};

struct MorphismDecl {
  std::string name, source, target;
  MatrixLit matrix;
  friend bool operator==(const MorphismDecl&, const MorphismDecl&) = default;
};

struct AutDecl {
  std::string name, base;
  std::vector<MatrixLit> theta, theta_inv;
  friend bool operator==(const AutDecl&, const AutDecl&) = default;
};

using Declaration = std::variant<VarietyDecl, MapDecl, CorrDecl, MorphismDecl, AutDecl>;

struct Command {
  std::string verb;
  std::vector<std::string> args;
  friend bool operator==(const Command&, const Command&) = default;
};

struct Session {
  std::optional<FieldTag> field;
  std::vector<Declaration> declarations;
  std::vector<Command> commands;
  /// Source line of each declaration, for messages; not part of equality.
  std::map<std::string, int> lines;

  FieldTag base_field() const { return field.value_or(FieldTag::rational()); }
  friend bool operator==(const Session& a, const Session& b) {
    return a.field == b.field && a.declarations == b.declarations && a.commands == b.commands;
  }
};

const std::string& declaration_name(const Declaration& d);

/// ParseError with line and column on malformed input.
Session parse_session(const std::string& text);
MatrixLit parse_matrix_literal(const std::string& text);
/// Canonical text; parse_session(print_session(s)) == s.
std::string print_session(const Session& s);

/// The resolved, validated values of a session.
struct Workspace {
  FieldTag field;
  std::map<std::string, VarietyPtr> varieties;
  std::map<std::string, VarMorphism> maps;
  std::map<std::string, CorrObject> corrs;
  std::map<std::string, CorrMorphism> morphisms;
  std::map<std::string, AutObject> auts;
};

/// Resolve every declaration in dependency order. Dangling or cyclic names
/// raise ResolveError; invalid data raises the library's validation error,
/// prefixed with the declaration and its line.
Workspace load_session(const Session& s);

struct CommandResult {
  Command command;
  std::vector<std::string> lines;
  /// False when the command reports a law failure.
  bool ok = true;
};

/// Run one command against a loaded workspace.
CommandResult run_command(const Command& c, const Workspace& w);

/// Text of a matrix as it appears in session files.
std::string format_matrix(const QMatrix& m);
/// Body of a corr declaration for obj.
std::string format_corr(const CorrObject& obj);

}  // namespace kcorr
