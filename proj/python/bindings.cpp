// Python bindings for the main operations. Extended reals cross the boundary
// as floats (IEEE infinities); node sets as lists of bools.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ordcomp/baire.hpp"
#include "ordcomp/error.hpp"
#include "ordcomp/io.hpp"
#include "ordcomp/macneille.hpp"
#include "ordcomp/problem_file.hpp"
#include "ordcomp/subsolution.hpp"

namespace py = pybind11;
using namespace ordcomp;

namespace {

GridIntervalFunction make_grid_function(const std::vector<double>& lower, const std::vector<double>& upper,
                                        const std::vector<std::size_t>& resolution, const std::vector<double>& lo,
                                        const std::vector<double>& hi, Mask mask) {
  const GridDomain domain(Box(lower, upper), resolution);
  if (lo.size() != hi.size()) throw InvalidInput("lo and hi differ in length");
  std::vector<ExtInterval> values;
  values.reserve(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) values.emplace_back(lo[i], hi[i]);
  if (mask.empty()) mask = full_mask(domain);
  return GridIntervalFunction(domain, std::move(values), std::move(mask));
}

std::vector<double> endpoints(const GridIntervalFunction& f, bool upper) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = upper ? f[i].hi().value() : f[i].lo().value();
  return out;
}

std::vector<std::string> labels_of(const FinitePoset& p, ElementSet s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (has(s, i)) out.push_back(p.labels()[i]);
  return out;
}

ElementSet set_of(const FinitePoset& p, const std::vector<std::string>& labels) {
  ElementSet s = 0;
  for (const auto& l : labels) {
    const auto i = p.index_of(l);
    if (!i) throw InvalidInput("unknown element '" + l + "'");
    s |= singleton(*i);
  }
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Order completion toolkit core";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<DomainMismatch>(m, "DomainMismatch", base.ptr());
  py::register_exception<NotDense>(m, "NotDense", base.ptr());
  py::register_exception<SolveFailure>(m, "SolveFailure", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<GridIntervalFunction>(m, "GridFunction")
      .def(py::init(&make_grid_function), py::arg("lower"), py::arg("upper"), py::arg("resolution"), py::arg("lo"),
           py::arg("hi"), py::arg("mask") = Mask{})
      .def_property_readonly("lo", [](const GridIntervalFunction& f) { return endpoints(f, false); })
      .def_property_readonly("hi", [](const GridIntervalFunction& f) { return endpoints(f, true); })
      .def_property_readonly("mask", [](const GridIntervalFunction& f) { return f.mask(); })
      .def_property_readonly("points", [](const GridIntervalFunction& f) {
        std::vector<Point> out;
        for (std::size_t i = 0; i < f.size(); ++i) out.push_back(f.domain().node_point(i));
        return out;
      })
      .def("__len__", &GridIntervalFunction::size)
      .def("to_text", [](const GridIntervalFunction& f) {
        std::ostringstream os;
        write_grid(os, f);
        return os.str();
      });

  m.def("graph_completion", [](const GridIntervalFunction& f, std::optional<Mask> D) {
    return graph_completion(f, D ? *D : f.mask());
  }, py::arg("f"), py::arg("D") = py::none());
  m.def("baire_lower", [](const GridIntervalFunction& f) { return baire_lower(f, f.mask()); });
  m.def("baire_upper", [](const GridIntervalFunction& f) { return baire_upper(f, f.mask()); });
  m.def("is_h_continuous", &is_h_continuous);
  m.def("is_nearly_finite", &is_nearly_finite);
  m.def("assimilate_f0", &assimilate_f0);
  m.def("discontinuity_report", [](const GridIntervalFunction& f, const std::vector<double>& eps) {
    const DiscontinuityReport r = discontinuity_report(f, eps);
    py::list levels;
    for (const auto& l : r.levels) {
      py::dict d;
      d["eps"] = l.eps;
      d["nodes"] = l.nodes;
      d["nowhere_dense"] = l.nowhere_dense;
      d["closed"] = l.closed;
      d["max_width"] = l.max_width.value();
      levels.append(d);
    }
    py::dict out;
    out["gamma_nodes"] = r.gamma_nodes;
    out["levels"] = levels;
    return out;
  });

  py::class_<FinitePoset>(m, "Poset")
      .def_static("chain", &FinitePoset::chain)
      .def_static("antichain", &FinitePoset::antichain)
      .def_static("from_relations", &FinitePoset::from_relations, py::arg("labels"), py::arg("relations"))
      .def_static("parse", [](const std::string& text) {
        std::istringstream in(text);
        return parse_poset(in);
      })
      .def_property_readonly("labels", &FinitePoset::labels)
      .def("leq", &FinitePoset::leq)
      .def("__len__", &FinitePoset::size);

  py::class_<CutLattice>(m, "CutLattice")
      .def("__len__", &CutLattice::size)
      .def_property_readonly("cuts", [](const CutLattice& l) {
        std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
        for (const Cut& c : l.cuts()) out.emplace_back(labels_of(l.base(), c.lower), labels_of(l.base(), c.upper));
        return out;
      })
      .def("is_adjoined", &CutLattice::is_adjoined)
      .def("embed", &CutLattice::embed)
      .def("leq", &CutLattice::leq)
      .def("to_dot", [](const CutLattice& l) {
        std::ostringstream os;
        write_lattice_dot(os, l);
        return os.str();
      });

  m.def("macneille_complete", [](const FinitePoset& p) { return macneille_complete(p); });
  m.def("is_complete_lattice", &is_complete_lattice);
  m.def("preserves_bounds", &preserves_bounds_check);
  m.def(
      "solvable",
      [](const std::vector<std::string>& x_labels, const FinitePoset& y, const std::vector<std::size_t>& map,
         const std::vector<std::string>& target_lower) {
        AbstractEquation eq{x_labels, y, map};
        const SolvabilityResult r = solvability_criterion(eq, cut_of(y, set_of(y, target_lower)));
        return r.solvable;
      },
      py::arg("x_labels"), py::arg("y"), py::arg("map"), py::arg("target_lower"),
      "Whether T#(A) = F has a cut solution, F being the cut generated by target_lower.");

  py::enum_<Side>(m, "Side").value("lower", Side::lower).value("upper", Side::upper);

  py::class_<PdeProblem>(m, "Problem")
      .def(py::init([](const Point& lower, const Point& upper, std::size_t order, const std::string& F,
                       const std::string& f) { return make_problem(Box(lower, upper), order, F, f); }),
           py::arg("lower"), py::arg("upper"), py::arg("order"), py::arg("F"), py::arg("f"))
      .def_static("from_text", [](const std::string& text) {
        std::istringstream in(text);
        return parse_problem(in);
      })
      .def("F", [](const PdeProblem& p, const Point& x, const std::vector<double>& jet) { return p.F(x, jet); })
      .def("f", [](const PdeProblem& p, const Point& x) { return p.f(x); });

  py::class_<PiecewiseSolution>(m, "Solution")
      .def_readonly("eps", &PiecewiseSolution::eps)
      .def_readonly("side", &PiecewiseSolution::side)
      .def_property_readonly("box_count", [](const PiecewiseSolution& s) { return s.pieces.size(); })
      .def("value", [](const PiecewiseSolution& s, const Point& x) { return s.value(x); })
      .def("residual", [](const PiecewiseSolution& s, const PdeProblem& p, const Point& x) { return s.residual(p, x); })
      .def("to_text", [](const PiecewiseSolution& s) {
        std::ostringstream os;
        write_solution(os, s);
        return os.str();
      });

  py::class_<AuditReport>(m, "Audit")
      .def_readonly("samples", &AuditReport::samples)
      .def_readonly("min_residual", &AuditReport::min_residual)
      .def_readonly("max_residual", &AuditReport::max_residual)
      .def_readonly("violation_count", &AuditReport::violation_count)
      .def_property_readonly("passed", &AuditReport::passed);

  m.def("check_condition_23", [](const PdeProblem& p, const std::vector<Point>& points) {
    std::vector<bool> out;
    for (const auto& v : check_condition_23(p, points)) out.push_back(v.holds);
    return out;
  });
  m.def("jet_solve", [](const PdeProblem& p, const Point& x, double target) { return jet_solve(p, x, target); });
  m.def("solve", [](const PdeProblem& p, double eps, Side side, std::uint64_t seed) {
    SolverOptions o;
    o.seed = seed;
    return assemble_global(p, eps, side, o);
  }, py::arg("problem"), py::arg("eps"), py::arg("side") = Side::lower, py::arg("seed") = 1);
  m.def("verify", &verify_certificate, py::arg("problem"), py::arg("solution"), py::arg("samples_per_box") = 256,
        py::arg("seed") = 1);
  m.def("refine", [](const PdeProblem& p, double eps0, std::size_t levels, std::size_t samples) {
    const RefinementRun run = refine(p, eps0, levels, samples);
    py::list rows;
    for (const auto& l : run.levels) {
      for (const RefinementSide* s : {&l.lower, &l.upper}) {
        py::dict d;
        d["level"] = l.level;
        d["eps"] = l.eps;
        d["side"] = to_string(s->solution.side);
        d["box_count"] = s->solution.pieces.size();
        d["min_residual"] = s->audit.min_residual;
        d["max_residual"] = s->audit.max_residual;
        d["sup_abs_residual"] = s->sup_abs_residual;
        d["residual_h_continuous"] = s->residual_h_continuous;
        d["assimilated_max_width"] = s->assimilated_max_width;
        rows.append(d);
      }
    }
    return rows;
  }, py::arg("problem"), py::arg("eps0"), py::arg("levels"), py::arg("samples_per_box") = 64);
}
