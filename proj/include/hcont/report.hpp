#pragma once

#include <ostream>
#include <vector>

#include <json.hpp>

#include "hcont/solve.hpp"

namespace hcont {

// Complex numbers are written as [re, im] pairs and vectors as lists of pairs.

[[nodiscard]] nlohmann::json to_json(const SolveReport& report);
/// Inverse of to_json; throws nlohmann::json::exception or std::invalid_argument on malformed input.
[[nodiscard]] SolveReport report_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json to_json(const BenchmarkTable& table);
[[nodiscard]] nlohmann::json to_json(const std::vector<PredictorRow>& rows);

void write_csv(std::ostream& out, const BenchmarkTable& table);
void write_csv(std::ostream& out, const std::vector<PredictorRow>& rows);
/// One row per solution: index, multiplicity, residual, then re/im per variable.
void write_csv(std::ostream& out, const SolveReport& report);

}  // namespace hcont
