#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bowtie/errors.hpp"
#include "bowtie/model.hpp"

namespace bowtie {

/// Outcome of parsing: either a validated model or the complete list of
/// findings (not just the first).
struct ParseResult {
  std::optional<BowTieModel> model;
  std::vector<Diagnostic> errors;

  bool ok() const { return model.has_value() && errors.empty(); }
};

ParseResult parse_model(std::string_view text);

/// Convenience wrapper; throws ValidationError carrying every finding.
BowTieModel parse_model_or_throw(std::string_view text);

/// Canonical serialization: fixed key order, stable number rendering;
/// serialize(parse(x)) is parse-equal to x.
std::string serialize_model(const BowTieModel& model);

/// FNV-1a hash of the canonical serialization, as 16 hex digits.
std::string model_hash(const BowTieModel& model);

/// The bundled separator case study (also shipped as
/// models/case_study_separator.json).
const std::string& case_study_text();
BowTieModel load_case_study();

}  // namespace bowtie
