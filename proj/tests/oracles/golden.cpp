#include "golden.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bridge.hpp"
#include "kcorr/exactalg/parse.hpp"

namespace oracle {

std::vector<GoldenIdeal> read_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<GoldenIdeal> out;
  kcorr::FieldTag field = kcorr::FieldTag::rational();
  kcorr::MonomialOrder order = kcorr::MonomialOrder::DegRevLex;
  std::vector<std::string> gens, basis, vars;
  std::string name, line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::string rest;
    std::getline(ls, rest);
    if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
    if (key == "ideal") {
      name = rest;
      gens.clear();
      basis.clear();
      vars.clear();
    } else if (key == "field") {
      field = kcorr::FieldTag::parse(rest);
    } else if (key == "order") {
      order = rest == "lex" ? kcorr::MonomialOrder::Lex : kcorr::MonomialOrder::DegRevLex;
    } else if (key == "vars") {
      std::istringstream vs(rest);
      for (std::string v; vs >> v;) vars.push_back(v);
    } else if (key == "gen") {
      gens.push_back(rest);
    } else if (key == "basis") {
      basis.push_back(rest);
    } else if (key == "end") {
      GoldenIdeal g{name, kcorr::PolyRing::make(field, vars, order), {}, {}};
      for (const auto& t : gens) g.gens.push_back(kcorr::parse_poly(t, g.ring));
      for (const auto& t : basis) g.basis.push_back(kcorr::parse_poly(t, g.ring));
      out.push_back(std::move(g));
    }
  }
  return out;
}

std::string check_golden(const GoldenIdeal& g) {
  const std::size_t nv = g.ring->nvars();
  const kcorr::GroebnerBasis gb = kcorr::buchberger(g.ring, g.gens);
  std::vector<OPoly> in;
  for (const auto& f : g.gens) in.push_back(from_poly(f, nv));
  const std::vector<OPoly> naive = reduced_basis(ring_of(g.ring), in);
  if (naive.size() != gb.size()) return g.name + ": library and naive oracle disagree on basis size";
  for (std::size_t i = 0; i < naive.size(); ++i)
    if (from_poly(gb.gens()[i], nv).terms != naive[i].terms) return g.name + ": library and naive oracle differ";
  std::vector<std::string> recorded, library;
  for (const auto& f : g.basis) recorded.push_back(f.monic().to_string());
  for (const auto& f : gb.gens()) library.push_back(f.to_string());
  std::sort(recorded.begin(), recorded.end());
  std::sort(library.begin(), library.end());
  if (recorded != library) return g.name + ": basis differs from the recorded one";
  return {};
}

}  // namespace oracle
