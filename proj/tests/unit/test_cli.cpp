#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "kcorr/cli/laws.hpp"
#include "kcorr/cli/session.hpp"
#include "kcorr/error.hpp"
#include "kcorr/k0.hpp"
#include "oracles/golden.hpp"

using namespace kcorr;

namespace {

std::string data(const std::string& name) {
  std::ifstream in(std::string(KCORR_TEST_DATA) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string without_wall_time(const std::string& text) {
  std::istringstream in(text);
  std::string out, line;
  while (std::getline(in, line))
    if (line.rfind("wall-time", 0) != 0) out += line + "\n";
  return out;
}

}  // namespace

TEST_CASE("session parsing") {
  const Session empty = parse_session("");
  CHECK(empty.declarations.empty());
  CHECK(empty.commands.empty());
  CHECK(parse_session("format 1\n# nothing\n") == empty);

  try {
    parse_session("format 1\nvariety V { vars=[x; }\n");
    FAIL("accepted a malformed body");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(parse_session("field Q\nformat 1\n"), ParseError);
  CHECK_THROWS_AS(parse_session("format 2\n"), ParseError);
  CHECK_THROWS_AS(parse_session("frobnicate X\n"), Error);

  const MatrixLit m = parse_matrix_literal("[[1, x^2], [0, 1/2]]");
  REQUIRE(m.size() == 2);
  CHECK(m[0][1] == "x^2");
}

TEST_CASE("resolution") {
  const Workspace ws = load_session(parse_session(data("two_pts.kcs")));
  CHECK(ws.varieties.count("TwoPts") == 1);
  CHECK(ws.corrs.at("Phi") == test::two_pts_example());
  CHECK(ws.maps.count("collapse") == 1);
  try {
    load_session(parse_session("corr C : pt -> Nowhere { n=1; unit=[[1]] }\n"));
    FAIL("dangling name resolved");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResolveError);
  }
  CHECK_THROWS_AS(load_session(parse_session("variety A = product(B, pt)\nvariety B = product(A, pt)\n")), Error);
  try {
    load_session(parse_session(data("bad_idempotent.kcs")));
    FAIL("non-idempotent unit accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidObject);
    CHECK(std::string(e.what()).find("idempotent") != std::string::npos);
  }
}

TEST_CASE("round trip") {
  for (const char* f : {"two_pts.kcs", "torus.kcs", "bad_idempotent.kcs"}) {
    const Session s = parse_session(data(f));
    const std::string printed = print_session(s);
    CHECK(parse_session(printed) == s);
    CHECK(print_session(parse_session(printed)) == printed);
  }
}

TEST_CASE("commands") {
  const Session s = parse_session(data("two_pts.kcs"));
  const Workspace ws = load_session(s);
  for (const auto& c : s.commands) {
    const CommandResult r = run_command(c, ws);
    CHECK(r.ok);
    CHECK_FALSE(r.lines.empty());
  }
  const CommandResult bad = run_command({"compare-bimodule", {"Phi", "Phi", "[[0, 1], [0, 0]]"}}, ws);
  REQUIRE_FALSE(bad.lines.empty());
  CHECK(bad.lines.back().find("corrcat invalid, bimodule invalid, agree") != std::string::npos);
  // Printed results are themselves session declarations.
  const CommandResult comp = run_command({"compose", {"Phi", "Psi"}}, ws);
  CHECK_NOTHROW(parse_session(comp.lines.back()));
  const Workspace torus = load_session(parse_session(data("torus.kcs")));
  CHECK(run_command({"k0", {}}, torus).ok);
}

TEST_CASE("random objects") {
  for (FieldTag k : test::fields()) {
    const auto cat = catalogue(k);
    std::set<long> ranks;
    const VarietyPtr pt = point(k);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const VarietyPtr x = cat[seed % cat.size()], y = cat[(seed / 4) % cat.size()];
      const CorrObject a = random_object(x, y, seed), b = random_object(x, y, seed);
      CHECK(a == b);
      CHECK(a.violation().empty());
      ranks.insert(rank(random_object(pt, pt, seed)));
    }
    CHECK(ranks.size() >= 2);
  }
}

TEST_CASE("law reports") {
  LawOptions o;
  o.cases = 1;
  o.seed = 9;
  const LawReport a = law_suite(o), b = law_suite(o);
  CHECK(a.ok());
  CHECK(without_wall_time(a.text()) == without_wall_time(b.text()));
  CHECK(a.tallies.size() == law_names().size() * 2);
  CHECK(case_seed(1, "unit", test::Q(), 0) != case_seed(1, "unit", test::F5(), 0));
  o.mutant = true;
  o.cases = 25;
  o.only = {"interchange"};
  const LawReport m = law_suite(o);
  CHECK_FALSE(m.ok());
  REQUIRE_FALSE(m.failures.empty());
  CHECK_FALSE(m.failures[0].inputs.empty());
  CHECK(m.json_lines().find("\"type\":\"failure\"") != std::string::npos);
}

TEST_CASE("golden bases") {
  const auto golden = oracle::read_golden(std::string(KCORR_TEST_DATA) + "/groebner_golden.txt");
  CHECK(golden.size() == 5);
  for (const auto& g : golden) CHECK(oracle::check_golden(g) == "");
}
