#include "kcorr/cli/laws.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

#include "kcorr/bimod.hpp"
#include "kcorr/error.hpp"

namespace kcorr {

namespace {

struct Case {
  Rng rng;
  FieldTag k;
  bool mutant;
  RandomBounds b;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string failure;

  Case(std::uint64_t seed, FieldTag field, bool mut, const RandomBounds& bounds)
      : rng(seed), k(field), mutant(mut), b(bounds) {}

  VarietyPtr variety(const std::string& name) {
    static std::map<std::uint32_t, std::vector<VarietyPtr>> cache;
    auto it = cache.find(k.characteristic());
    if (it == cache.end()) it = cache.emplace(k.characteristic(), catalogue(k)).first;
    VarietyPtr v = rng.pick(it->second);
    inputs.emplace_back(name, v->name());
    return v;
  }
  CorrObject object(const std::string& name, const VarietyPtr& x, const VarietyPtr& y) {
    CorrObject phi = random_object(rng, x, y, b);
    inputs.emplace_back(name, to_string(phi));
    return phi;
  }
  CorrMorphism morphism_from(const std::string& name, const CorrObject& phi) {
    CorrMorphism a = random_morphism_from(rng, phi, b);
    inputs.emplace_back(name, to_string(a.mat()) + " into " + to_string(a.dst()));
    return a;
  }
  CorrMorphism endomorphism(const std::string& name, const CorrObject& phi) {
    CorrMorphism a = random_endomorphism(rng, phi, b);
    inputs.emplace_back(name, to_string(a.mat()));
    return a;
  }
  VarMorphism map(const std::string& name, const VarietyPtr& x, const VarietyPtr& y) {
    VarMorphism f = random_morphism(rng, x, y, b);
    inputs.emplace_back(name, x->name() + " -> " + y->name() + " " + morphism_key(f));
    return f;
  }
  int arity() {
    const int n = rng.range(1, 2);
    inputs.emplace_back("n", std::to_string(n));
    return n;
  }
  CorrMorphism odot(const CorrMorphism& a2, const CorrMorphism& a1) const {
    return mutant ? compose_morphisms_shuffled(a2, a1) : compose_morphisms(a2, a1);
  }
  void expect(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
  void valid(const CorrMorphism& a, const std::string& what) {
    const std::string v = a.violation();
    expect(v.empty(), what + " is not a morphism: " + v);
  }
};

using LawFn = std::function<void(Case&)>;

void interchange(Case& c) {
  const VarietyPtr v = c.variety("V"), u = c.variety("U"), x = c.variety("X");
  const CorrObject phi1 = c.object("Phi1", v, u), phi2 = c.object("Phi2", u, x);
  const CorrMorphism a1 = c.morphism_from("alpha1", phi1), b1 = c.morphism_from("beta1", a1.dst());
  const CorrMorphism a2 = c.morphism_from("alpha2", phi2), b2 = c.morphism_from("beta2", a2.dst());
  const CorrMorphism a = c.odot(a2, a1), b = c.odot(b2, b1);
  c.valid(a, "alpha2 (.) alpha1");
  c.valid(b, "beta2 (.) beta1");
  if (!c.failure.empty()) return;
  c.expect(compose_vertical(b, a) == c.odot(compose_vertical(b2, a2), compose_vertical(b1, a1)),
           "(beta2 (.) beta1) o (alpha2 (.) alpha1) != (beta2 o alpha2) (.) (beta1 o alpha1)");
  const CorrMorphism e1 = compose_vertical(c.endomorphism("e1", a1.dst()), a1);
  const CorrMorphism e2 = compose_vertical(c.endomorphism("e2", a2.dst()), a2);
  c.expect(c.odot(a2 + e2, a1) == a + c.odot(e2, a1), "(.) is not additive in the outer argument");
  c.expect(c.odot(a2, a1 + e1) == a + c.odot(a2, e1), "(.) is not additive in the inner argument");
  const CorrObject phi1b = c.object("Phi1'", v, u), phi2b = c.object("Phi2'", u, x);
  c.expect(verify_iso(sum_left_certificate(phi1, phi1b, phi2)), "(Phi1 + Phi1') o Phi2 is not certified isomorphic to the sum");
  c.expect(verify_iso(sum_right_certificate(phi1, phi2, phi2b)), "Phi2 o Phi1 is not additive in Phi2");
}

void unit(Case& c) {
  const VarietyPtr x = c.variety("X"), y = c.variety("Y");
  const CorrObject phi = c.object("Phi", x, y);
  const CorrObject ix = identity_object(x), iy = identity_object(y);
  c.expect(compose_objects(ix, phi) == phi, "Phi o id_X != Phi");
  c.expect(compose_objects(phi, iy) == phi, "id_Y o Phi != Phi");
  const CorrMorphism a = c.morphism_from("alpha", phi);
  c.expect(c.odot(a, identity_morphism(ix)) == a, "alpha (.) 1 != alpha");
  c.expect(c.odot(identity_morphism(iy), a) == a, "1 (.) alpha != alpha");
}

void odot_assoc(Case& c) {
  const VarietyPtr v = c.variety("V"), u = c.variety("U"), w = c.variety("W"), x = c.variety("X");
  const CorrMorphism a1 = c.morphism_from("alpha1", c.object("Phi1", v, u));
  const CorrMorphism a2 = c.morphism_from("alpha2", c.object("Phi2", u, w));
  const CorrMorphism a3 = c.morphism_from("alpha3", c.object("Phi3", w, x));
  c.expect(c.odot(c.odot(a3, a2), a1) == c.odot(a3, c.odot(a2, a1)), "(alpha3 (.) alpha2) (.) alpha1 != alpha3 (.) (alpha2 (.) alpha1)");
}

void object_assoc(Case& c) {
  const VarietyPtr v = c.variety("V"), u = c.variety("U"), w = c.variety("W"), x = c.variety("X");
  const CorrObject p1 = c.object("Phi1", v, u), p2 = c.object("Phi2", u, w), p3 = c.object("Phi3", w, x);
  c.expect(strict_associativity_check(p1, p2, p3), "Phi3 o (Phi2 o Phi1) != (Phi3 o Phi2) o Phi1");
}

void sigma(Case& c) {
  const VarietyPtr x = c.variety("X"), y = c.variety("Y"), z = c.variety("Z");
  const VarMorphism f = c.map("f", x, y), g = c.map("g", y, z);
  c.expect(graph_object(compose(g, f)) == compose_objects(graph_object(f), graph_object(g)), "sigma(g o f) != sigma(g) o sigma(f)");
  c.expect(graph_object(identity_morphism(x)) == identity_object(x), "sigma(1_X) != 1_X");
}

void box_compose(Case& c) {
  const VarietyPtr x = c.variety("X"), x1 = c.variety("X'"), x2 = c.variety("X''");
  const VarietyPtr u = c.variety("U"), u1 = c.variety("U'"), u2 = c.variety("U''");
  const CorrObject p1 = c.object("Phi1", x, x1), p2 = c.object("Phi2", x1, x2);
  const VarMorphism f1 = c.map("f1", u, u1), f2 = c.map("f2", u1, u2);
  c.expect(box_product(compose(f2, f1), compose_objects(p1, p2)) == compose_objects(box_product(f1, p1), box_product(f2, p2)),
           "(f2 o f1)*(Phi2 o Phi1) != f2*Phi2 o f1*Phi1");
}

void box_square(Case& c) {
  const VarietyPtr x = c.variety("X"), y = c.variety("Y"), u = c.variety("U"), v = c.variety("V");
  const CorrObject phi = c.object("Phi", x, y);
  const VarMorphism f = c.map("f", u, v);
  const VarMorphism pull = product_morphism(identity_morphism(x), f), push = product_morphism(identity_morphism(y), f);
  const VarMorphism idv = identity_morphism(v), idu = identity_morphism(u);
  c.expect(pullback_obj(pull, box_product(idv, phi)) == pushforward_obj(push, box_product(idu, phi)),
           "(1_X x f)^* 1_V* != (1_Y x f)_* 1_U* on objects");
  const CorrMorphism a = c.morphism_from("alpha", phi);
  c.expect(pullback_mor(pull, box_mor(idv, a)) == pushforward_mor(push, box_mor(idu, a)),
           "(1_X x f)^* 1_V* != (1_Y x f)_* 1_U* on morphisms");
}

void rho_roundtrip(Case& c) {
  const VarietyPtr x = c.variety("X"), y = c.variety("Y");
  const int n = c.arity();
  const VarietyPtr yn = product(y, gm_power(n, c.k));
  const CorrObject phi = c.object("Phi", x, yn);
  c.expect(rho_inverse(rho(phi), n) == phi, "rho^-1 rho Phi != Phi");
  const CorrMorphism a = c.morphism_from("alpha", phi);
  c.expect(rho_inverse(rho(a), n) == a, "rho^-1 rho alpha != alpha");
  const AutObject m = random_aut_object(c.rng, x, y, n, c.b);
  c.inputs.emplace_back("(Psi,theta)", to_string(m.base));
  const CorrObject back = rho_inverse(m, n);
  c.expect(rho(back) == m, "rho rho^-1 (Psi,theta) != (Psi,theta)");
  const CorrMorphism e = compose_vertical(random_endomorphism(c.rng, back, c.b), identity_morphism(back));
  const AutMorphism am = rho(e);
  const AutMorphism again = rho(rho_inverse(am, n));
  c.expect(again.underlying == am.underlying && again.src == am.src && again.dst == am.dst, "rho rho^-1 on morphisms is not the identity");
}

void base_change(Case& c) {
  const VarietyPtr x = c.variety("X"), y = c.variety("Y"), x1 = c.variety("X'"), y1 = c.variety("Y'");
  const VarietyPtr x2 = c.variety("X''"), y2 = c.variety("Y''");
  const CorrObject phi = c.object("Phi", x, y);
  const VarMorphism f = c.map("f", x1, x), g = c.map("g", y, y1), f2 = c.map("f2", x2, x1), g2 = c.map("g2", y1, y2);
  c.expect(pullback_obj(f, pushforward_obj(g, phi)) == pushforward_obj(g, pullback_obj(f, phi)), "f^* g_* != g_* f^*");
  c.expect(pullback_obj(compose(f, f2), phi) == pullback_obj(f2, pullback_obj(f, phi)), "(f o f2)^* != f2^* f^*");
  c.expect(pushforward_obj(compose(g2, g), phi) == pushforward_obj(g2, pushforward_obj(g, phi)), "(g2 o g)_* != g2_* g_*");
  c.expect(pullback_obj(f, phi) == pullback_by_graph(f, phi), "f^* != composition with sigma(f)");
  c.expect(pushforward_obj(g, phi) == pushforward_by_graph(g, phi), "g_* != composition with sigma(g)");
  const CorrMorphism a = c.morphism_from("alpha", phi);
  c.expect(pullback_mor(f, pushforward_mor(g, a)) == pushforward_mor(g, pullback_mor(f, a)), "f^* g_* != g_* f^* on morphisms");
}

void box_graph(Case& c) {
  const VarietyPtr x = c.variety("X"), x1 = c.variety("X'"), u = c.variety("U"), u1 = c.variety("U'");
  const VarMorphism h = c.map("h", x, x1), f = c.map("f", u, u1);
  c.expect(box_product(f, graph_object(h)) == graph_object(product_morphism(h, f)), "f*sigma(h) != sigma(h x f)");
}

void box_functor(Case& c) {
  const VarietyPtr x = c.variety("X"), x1 = c.variety("X'"), x2 = c.variety("X''");
  const VarietyPtr u = c.variety("U"), u1 = c.variety("U'"), u2 = c.variety("U''");
  const VarMorphism f1 = c.map("f1", u, u1), f2 = c.map("f2", u1, u2);
  const CorrObject p1 = c.object("Phi1", x, x1), p2 = c.object("Phi2", x1, x2);
  const CorrMorphism a1 = c.morphism_from("alpha1", p1), a2 = c.morphism_from("alpha2", p2);
  c.expect(box_mor(compose(f2, f1), c.odot(a2, a1)) == c.odot(box_mor(f2, a2), box_mor(f1, a1)),
           "(f2 o f1)*(alpha2 (.) alpha1) != f2*alpha2 (.) f1*alpha1");
  const CorrMorphism b1 = c.morphism_from("beta1", a1.dst());
  c.expect(box_mor(f1, compose_vertical(b1, a1)) == compose_vertical(box_mor(f1, b1), box_mor(f1, a1)), "f* does not preserve composition");
  c.expect(box_mor(f1, identity_morphism(p1)) == identity_morphism(box_product(f1, p1)), "f* does not preserve identities");
}

void big_pullback_law(Case& c) {
  const VarietyPtr x = c.variety("X"), y = c.variety("Y"), x1 = c.variety("X'"), x2 = c.variety("X''");
  const CorrObject phi = c.object("Phi", x, y);
  const VarMorphism g = c.map("g", x1, x), g1 = c.map("g1", x2, x1);
  const BigBimodule m = big_lift(phi);
  const BigBimodule staged = big_pullback(g1, big_pullback(g, m));
  const BigBimodule direct = big_pullback(compose(g, g1), m);
  c.expect(staged.base() == direct.base(), "g1^* g^* != (g o g1)^*");
  c.expect(staged.structure() == direct.structure(), "structure maps differ");
  const BimodulePresentation* entry = m.cached(compose(g, g1));
  c.expect(entry != nullptr && *entry == staged.base(), "cache entry differs from the staged pullback");
  c.expect(staged.base() == pullback_presentation(g1, pullback_presentation(g, to_bimodule(phi))),
           "cached pullback differs from the presentation pullback");
}

void big_pushforward_law(Case& c) {
  const VarietyPtr x = c.variety("X"), y = c.variety("Y"), y1 = c.variety("Y'"), y2 = c.variety("Y''");
  const CorrObject phi = c.object("Phi", x, y);
  const VarMorphism h = c.map("h", y, y1), h1 = c.map("h1", y1, y2);
  const BigBimodule m = big_lift(phi);
  const BigBimodule staged = big_pushforward(h1, big_pushforward(h, m));
  const BigBimodule direct = big_pushforward(compose(h1, h), m);
  c.expect(staged.base() == direct.base(), "h1_* h_* != (h1 o h)_*");
  c.expect(restrict_R(staged) == pushforward_presentation(compose(h1, h), to_bimodule(phi)),
           "restriction differs from the presentation pushforward");
  c.expect(from_bimodule(restrict_R(direct)) == pushforward_obj(compose(h1, h), phi), "bimodule pushforward differs from g_*");
  const VarietyPtr x1 = c.variety("X'");
  const VarMorphism g = c.map("g", x1, x);
  c.expect(big_pushforward(h, big_pullback(g, m)).base() == big_pullback(g, big_pushforward(h, m)).base(), "h_* g^* != g^* h_*");
}

void rho_natural(Case& c) {
  const VarietyPtr x = c.variety("X"), y = c.variety("Y"), x1 = c.variety("X'"), y1 = c.variety("Y'");
  const int n = c.arity();
  const VarietyPtr gm = gm_power(n, c.k);
  const CorrObject phi = c.object("Phi", x, product(y, gm));
  const VarMorphism f = c.map("f", x1, x), g = c.map("g", y, y1);
  c.expect(pullback_aut(f, rho(phi)) == rho(pullback_obj(f, phi)), "(a) f^*_n rho != rho f^*");
  c.expect(pushforward_aut(g, rho(phi)) == rho(pushforward_obj(product_morphism(g, identity_morphism(gm)), phi)),
           "(b) g_*,n rho != rho (g x 1)_*");
}

const std::vector<std::pair<std::string, LawFn>>& registry() {
  static const std::vector<std::pair<std::string, LawFn>> laws{
      {"interchange", interchange},
      {"unit", unit},
      {"odot-assoc", odot_assoc},
      {"object-assoc", object_assoc},
      {"sigma", sigma},
      {"box-compose", box_compose},
      {"box-square", box_square},
      {"rho-roundtrip", rho_roundtrip},
      {"base-change", base_change},
      {"box-graph", box_graph},
      {"box-functor", box_functor},
      {"big-pullback", big_pullback_law},
      {"big-pushforward", big_pushforward_law},
      {"rho-natural", rho_natural},
  };
  return laws;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::uint64_t case_seed(std::uint64_t seed, const std::string& law, FieldTag field, int index) {
  std::uint64_t h = splitmix(seed);
  for (char ch : law) h = splitmix(h ^ static_cast<unsigned char>(ch));
  h = splitmix(h ^ field.characteristic());
  return splitmix(h ^ static_cast<std::uint64_t>(index));
}

std::optional<LawFailure> run_law_case(const std::string& law, FieldTag field, std::uint64_t seed, int index, bool mutant,
                                       const RandomBounds& bounds) {
  const LawFn* fn = nullptr;
  for (const auto& [name, f] : registry())
    if (name == law) fn = &f;
  if (!fn) fail(ErrorKind::UnknownObject, "unknown law '" + law + "'");
  Case c(case_seed(seed, law, field, index), field, mutant, bounds);
  try {
    (*fn)(c);
  } catch (const Error& e) {
    c.failure = std::string(to_string(e.kind())) + ": " + e.what();
  }
  if (c.failure.empty()) return std::nullopt;
  return LawFailure{law, field, seed, index, c.failure, std::move(c.inputs)};
}

LawReport law_suite(const LawOptions& options) {
  if (options.cases < 1) fail(ErrorKind::InvalidArity, "cases must be at least 1");
  for (const auto& name : options.only)
    if (std::find(law_names().begin(), law_names().end(), name) == law_names().end())
      fail(ErrorKind::UnknownObject, "unknown law '" + name + "'");
  const auto start = std::chrono::steady_clock::now();
  LawReport report;
  for (const auto& name : law_names()) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), name) == options.only.end()) continue;
    for (FieldTag k : options.fields) {
      LawTally tally{name, k, options.cases, 0};
      for (int i = 0; i < options.cases; ++i)
        if (auto f = run_law_case(name, k, options.seed, i, options.mutant, options.bounds)) {
          ++tally.failures;
          report.failures.push_back(std::move(*f));
        }
      report.tallies.push_back(tally);
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string LawReport::text() const {
  std::ostringstream out;
  for (const auto& t : tallies)
    out << (t.failures ? "FAIL " : "ok   ") << t.law << " [" << t.field.to_string() << "] " << t.cases - t.failures << "/"
        << t.cases << "\n";
  for (const auto& f : failures) {
    out << "failure " << f.law << " [" << f.field.to_string() << "] seed=" << f.seed << " case=" << f.case_index << ": "
        << f.message << "\n";
    for (const auto& [name, value] : f.inputs) out << "  " << name << " = " << value << "\n";
  }
  out << (ok() ? "all laws hold" : std::to_string(failures.size()) + " failing case(s)") << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", seconds);
  out << "wall-time " << buf << "s\n";
  return out.str();
}

std::string LawReport::json_lines() const {
  using nlohmann::ordered_json;
  std::string out;
  for (const auto& t : tallies)
    out += ordered_json{{"type", "tally"}, {"law", t.law}, {"field", t.field.to_string()}, {"cases", t.cases}, {"failures", t.failures}}
               .dump() + "\n";
  for (const auto& f : failures) {
    ordered_json inputs = ordered_json::array();
    for (const auto& [name, value] : f.inputs) inputs.push_back({{"name", name}, {"value", value}});
    out += ordered_json{{"type", "failure"}, {"law", f.law},       {"field", f.field.to_string()}, {"seed", f.seed},
                        {"case", f.case_index}, {"message", f.message}, {"inputs", inputs}}
               .dump() + "\n";
  }
  out += ordered_json{{"type", "summary"}, {"ok", ok()}, {"failures", failures.size()}, {"wall_time", seconds}}.dump() + "\n";
  return out;
}

}  // namespace kcorr
