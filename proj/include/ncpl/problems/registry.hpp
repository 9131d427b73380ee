#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncpl/problem.hpp"

namespace ncpl {

/// Ids accepted by make_problem.
std::vector<std::string> problem_ids();

/// Builds a problem from its id and a JSON object of parameters. Unknown ids,
/// unknown keys and ill-typed values raise ConfigError naming the field.
std::shared_ptr<const MinimaxProblem> make_problem(const std::string& id,
                                                   const nlohmann::json& params);

}  // namespace ncpl
