#pragma once

// JSON interchange for instances and solutions, plus debugging dumps of
// MilpProblems. Canonical form: keys sorted (nlohmann objects), doubles
// rounded to 9 significant digits, trailing newline. save/load round-trips
// are byte-identical on the canonical form.

#include <string>

#include "json.hpp"

#include "drrpvt/milp.hpp"
#include "drrpvt/types.hpp"

namespace drrpvt {

inline constexpr const char* kInstanceSchema = "drrpvt-instance/1";
inline constexpr const char* kSolutionSchema = "drrpvt-solution/1";

// Nearest double with 9 significant decimal digits.
double round9(double v);

nlohmann::json instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const Solution& sol);
Solution solution_from_json(const nlohmann::json& j);

nlohmann::json milp_to_json(const MilpProblem& problem);

// File helpers; load_json wraps parse failures in Error with the byte
// offset, write_text creates parent directories.
nlohmann::json load_json(const std::string& path);
void write_text(const std::string& path, const std::string& content);
std::string canonical_dump(const nlohmann::json& j);

ProblemInstance load_instance(const std::string& path);
void save_instance(const ProblemInstance& instance, const std::string& path);
Solution load_solution(const std::string& path);
void save_solution(const Solution& sol, const std::string& path);

}  // namespace drrpvt
