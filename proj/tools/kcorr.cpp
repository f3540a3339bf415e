// kcorr: run session files and the randomized law suite.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kcorr/cli/laws.hpp"
#include "kcorr/cli/session.hpp"
#include "kcorr/error.hpp"

namespace {

enum Exit { kOk = 0, kLawFailure = 1, kInputError = 2 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) kcorr::fail(kcorr::ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_session(const std::string& path, bool json) {
  const kcorr::Session session = kcorr::parse_session(read_file(path));
  const kcorr::Workspace ws = kcorr::load_session(session);
  bool ok = true;
  for (const auto& c : session.commands) {
    const kcorr::CommandResult r = kcorr::run_command(c, ws);
    ok = ok && r.ok;
    std::string line = c.verb;
    for (const auto& a : c.args) line += " " + a;
    if (json) {
      std::cout << nlohmann::ordered_json{{"command", line}, {"ok", r.ok}, {"output", r.lines}}.dump() << "\n";
    } else {
      std::cout << "> " << line << "\n";
      for (const auto& l : r.lines) std::cout << l << "\n";
    }
  }
  return ok ? kOk : kLawFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact correspondences between affine varieties: session runner and law suite"};
  app.require_subcommand(1);
  std::string format = "text";
  bool debug = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json-lines"}));
  app.add_flag("--debug-validate", debug, "Re-validate invariants after every operation");

  std::string path;
  auto* run = app.add_subcommand("run", "Load a session file and execute its commands");
  run->add_option("file", path, "Session file")->required();
  auto* check = app.add_subcommand("check", "Parse and validate a session file");
  check->add_option("file", path, "Session file")->required();
  auto* print = app.add_subcommand("print", "Print a session file in canonical form");
  print->add_option("file", path, "Session file")->required();

  auto* k0 = app.add_subcommand("k0", "Print K0 ledgers (partition, ranks, verdicts) for the corrs of a session file");
  k0->add_option("file", path, "Session file")->required();

  auto* laws = app.add_subcommand("laws", "Run the randomized law suite");
  std::uint64_t seed = 42;
  int cases = 200;
  std::string field;
  std::vector<std::string> only;
  bool mutant = false;
  laws->add_option("--seed", seed, "Run seed");
  laws->add_option("--cases", cases, "Cases per law and field")->check(CLI::PositiveNumber);
  laws->add_option("--field", field, "Q or Fp:P (default: both F_5 and Q)");
  laws->add_option("--law", only, "Restrict to these law families");
  laws->add_flag("--mutant", mutant, "Use the shuffled horizontal composite (mutation test)");
  app.fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  kcorr::set_debug_validation(debug);
  const bool json = format == "json-lines";
  try {
    if (*run) return run_session(path, json);
    if (*check) {
      const kcorr::Session s = kcorr::parse_session(read_file(path));
      kcorr::load_session(s);
      std::cout << "ok: " << s.declarations.size() << " declarations, " << s.commands.size() << " commands\n";
      return kOk;
    }
    if (*k0) {
      const kcorr::Workspace ws = kcorr::load_session(kcorr::parse_session(read_file(path)));
      for (const auto& l : kcorr::run_command({"k0", {}}, ws).lines) std::cout << l << "\n";
      return kOk;
    }
    if (*print) {
      std::cout << kcorr::print_session(kcorr::parse_session(read_file(path)));
      return kOk;
    }
    kcorr::LawOptions opts;
    opts.seed = seed;
    opts.cases = cases;
    opts.only = only;
    opts.mutant = mutant;
    if (!field.empty()) opts.fields = {kcorr::FieldTag::parse(field)};
    const kcorr::LawReport report = kcorr::law_suite(opts);
    std::cout << (json ? report.json_lines() : report.text());
    return report.ok() ? kOk : kLawFailure;
  } catch (const kcorr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
