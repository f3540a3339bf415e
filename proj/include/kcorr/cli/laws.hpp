#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kcorr/cli/random.hpp"

namespace kcorr {

/// Names of the law families, in report order.
const std::vector<std::string>& law_names();

struct LawOptions {
  std::uint64_t seed = 42;
  int cases = 200;
  std::vector<FieldTag> fields{FieldTag::prime(5), FieldTag::rational()};
  /// Restrict to these families (all when empty).
  std::vector<std::string> only;
  /// Replace the horizontal composite of morphisms with the shuffled variant.
  bool mutant = false;
  RandomBounds bounds;
};

struct LawFailure {
  std::string law;
  FieldTag field;
  std::uint64_t seed = 0;
  int case_index = 0;
  std::string message;
  /// name = serialized value, in construction order.
  std::vector<std::pair<std::string, std::string>> inputs;
};

struct LawTally {
  std::string law;
  FieldTag field;
  int cases = 0;
  int failures = 0;
};

struct LawReport {
  std::vector<LawTally> tallies;
  std::vector<LawFailure> failures;
  double seconds = 0;

  bool ok() const { return failures.empty(); }
  std::string text() const;
  std::string json_lines() const;
};

/// Seed of one case, derived from the run seed, the law, the field and the index.
std::uint64_t case_seed(std::uint64_t seed, const std::string& law, FieldTag field, int index);

/// Run one case; returns the failure, or nothing when the law holds.
std::optional<LawFailure> run_law_case(const std::string& law, FieldTag field, std::uint64_t seed, int index,
                                       bool mutant = false, const RandomBounds& bounds = {});

LawReport law_suite(const LawOptions& options);

}  // namespace kcorr
