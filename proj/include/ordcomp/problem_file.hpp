#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "ordcomp/pde.hpp"

namespace ordcomp {

/**
 * Builds a problem from expression sources. F may use coordinates and jet
 * symbols; f only coordinates.
 */
PdeProblem make_problem(const Box& domain, std::size_t order, const std::string& F, const std::string& f);

/**
 * Problem file: `key = value` lines, `#` starts a comment.
 *
 *   dimension = 1
 *   order = 1
 *   lower = 0
 *   upper = 2*pi
 *   F = xi_1
 *   f = cos(x)
 *
 * `lower` / `upper` hold one constant expression per axis, separated by commas.
 * Errors are ParseError with line and column.
 */
PdeProblem parse_problem(std::istream& in);
PdeProblem load_problem(const std::filesystem::path& path);

}  // namespace ordcomp
