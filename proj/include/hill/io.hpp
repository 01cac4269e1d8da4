#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "hill/coefficient.hpp"
#include "hill/nonlinear.hpp"

namespace hill {

/// {"period": T, "pieces": [{"from", "to", "expr"}], "removable": [...]}.
/// `period_override` supplies T for documents without one and is rejected
/// when the document has its own. Unknown keys are ignored.
PeriodicCoefficient coefficient_from_json(const nlohmann::json& doc, std::optional<double> period_override = {});
nlohmann::json coefficient_to_json(const PeriodicCoefficient& a);

struct ProblemFile {
  NonlinearProblem problem;
  std::optional<UBox> u_box;
};

/// {"f", "fu"?, "period", "alpha_env"?, "beta_env"?, "u_box"?}. Envelopes may
/// omit their period, which then defaults to the problem's.
ProblemFile problem_from_json(const nlohmann::json& doc, std::optional<double> period_override = {});

/// Reads and parses a JSON file; ParseError on I/O or syntax failure.
nlohmann::json read_json_file(const std::string& path);

}  // namespace hill
