#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "ordcomp/grid.hpp"
#include "ordcomp/subsolution.hpp"

namespace ordcomp {

/**
 * Grid file:
 *
 *   dims 1
 *   lower 0
 *   upper 1
 *   resolution 1001
 *   <lo> <hi> <mask>     one line per node, row-major
 *
 * Endpoints are decimal numbers or -inf / +inf; mask is 0 or 1.
 */
void write_grid(std::ostream& out, const GridIntervalFunction& f);
GridIntervalFunction read_grid(std::istream& in);

/**
 * Solution file: a header (eps, side, dimension, domain) and one line per piece
 *
 *   box <lower...> <upper...> delta <d> center <c...> degree <m> coeffs <c_p...> cert <min> <max>
 *
 * with all reals printed round-trip exact.
 */
void write_solution(std::ostream& out, const PiecewiseSolution& solution);
PiecewiseSolution read_solution(std::istream& in);

/// Certificate report with per-piece residual ranges and the audit outcome.
nlohmann::json certificate_report(const PdeProblem& problem, const PiecewiseSolution& solution,
                                  const AuditReport& audit, std::size_t samples_per_box);

/// Refinement table, one row per level and side.
void write_refine_csv(std::ostream& out, const RefinementRun& run);

std::string format_real(double x);

}  // namespace ordcomp
