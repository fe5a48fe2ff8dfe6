#pragma once

#include <string>

#include <json.hpp>

#include "evlcp/bounds.hpp"
#include "evlcp/model.hpp"
#include "evlcp/solver.hpp"
#include "evlcp/wcheck.hpp"

namespace evlcp {

// Problem schema:
//   { "n": int, "k": int,
//     "M": [ k+1 matrices, each as n rows of n numbers ],
//     "q": [ k+1 vectors of n numbers ],
//     "vlcp": bool (optional, default false) }
EvlcpProblem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const EvlcpProblem& p);

EvlcpProblem load_problem(const std::string& path);
void save_problem(const std::string& path, const EvlcpProblem& p);

nlohmann::json to_json(const SolveResult& result);
nlohmann::json to_json(const WCheckReport& report);
nlohmann::json to_json(const BoundSet& set);
nlohmann::json to_json(const BoundReport& report);

// Serializes a double with 17 significant digits (lossless round-trip).
std::string format_double(double v);
double parse_double(const std::string& text);

}  // namespace evlcp
