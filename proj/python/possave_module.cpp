#include "possave/analysis.hpp"
#include "possave/cli.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace possave;

namespace {

py::dict report_dict(const ComparisonReport& r) {
    py::dict d;
    d["R"] = r.R;
    d["s_star"] = r.s_star;
    d["s1_star"] = r.s1_star;
    d["s_dstar"] = r.s_dstar;
    d["prec_prob"] = r.prec_prob;
    d["prec_poss"] = r.prec_poss;
    d["prec_cross"] = r.prec_cross;
    d["var_poss"] = r.var_poss;
    d["var_prob"] = r.var_prob;
    d["rp_at_Rs_star"] = r.rp_at_Rs_star;
    d["rp_at_Rs1_star"] = r.rp_at_Rs1_star;
    d["rs_condition"] = to_string(r.rs_condition.outcome);
    d["prop45"] = to_string(r.cross_condition.outcome);
    d["corollary47"] = to_string(r.cross_classification.outcome);
    d["sign_prob"] = to_string(r.sign_prob);
    d["sign_poss"] = to_string(r.sign_poss);
    d["sign_cross"] = to_string(r.sign_cross);
    return d;
}

} // namespace

PYBIND11_MODULE(_possave, m) {
    m.doc() = "Optimal saving under certain, random and fuzzy interest-rate risk";

    auto base = py::register_exception<Error>(m, "PossaveError");
    py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<EvaluationError>(m, "EvaluationError", base.ptr());
    py::register_exception<CapabilityError>(m, "CapabilityError", base.ptr());
    py::register_exception<SingularityError>(m, "SingularityError", base.ptr());
    py::register_exception<NoInteriorOptimum>(m, "NoInteriorOptimum", base.ptr());
    py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());
    py::register_exception<MeanMismatch>(m, "MeanMismatch", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    py::class_<QuadratureRule>(m, "QuadratureRule")
        .def(py::init<std::size_t>(), py::arg("nodes") = QuadratureRule::default_nodes)
        .def("__len__", &QuadratureRule::size)
        .def_property_readonly("nodes", [](const QuadratureRule& q) {
            return std::vector<double>(q.nodes().begin(), q.nodes().end());
        })
        .def_property_readonly("weights", [](const QuadratureRule& q) {
            return std::vector<double>(q.weights().begin(), q.weights().end());
        });

    py::class_<WeightingFunction>(m, "WeightingFunction")
        .def_static("uniform", &WeightingFunction::uniform)
        .def_static("power", &WeightingFunction::power, py::arg("p"))
        .def_static("linear", &WeightingFunction::linear)
        .def_property_readonly("exponent", &WeightingFunction::exponent)
        .def("__call__", &WeightingFunction::operator());

    py::class_<FuzzyNumber>(m, "FuzzyNumber")
        .def_static("crisp_point", &FuzzyNumber::crisp_point, py::arg("value"))
        .def_static("crisp_interval", &FuzzyNumber::crisp_interval, py::arg("lower"), py::arg("upper"))
        .def_static("triangular", &FuzzyNumber::triangular, py::arg("peak"), py::arg("left"), py::arg("right"))
        .def_static("trapezoidal", &FuzzyNumber::trapezoidal, py::arg("core_lower"), py::arg("core_upper"),
                    py::arg("left"), py::arg("right"))
        .def_static(
            "sampled",
            [](const std::vector<std::tuple<double, double, double>>& rows) {
                std::vector<SampledLevel> levels;
                for (const auto& [g, lo, hi] : rows) levels.push_back({g, lo, hi});
                return FuzzyNumber::sampled(std::move(levels));
            },
            py::arg("levels"))
        .def_property_readonly("shape", &FuzzyNumber::shape_name)
        .def("level_set",
             [](const FuzzyNumber& a, double gamma) {
                 const LevelSet ls = a.level_set(gamma);
                 return std::make_pair(ls.lower, ls.upper);
             })
        .def("shifted", &FuzzyNumber::shifted);

    m.def(
        "possibilistic_expected_utility",
        [](const WeightingFunction& f, const FuzzyNumber& a, const std::function<double(double)>& u, std::size_t nodes) {
            return possibilistic_expected_utility(f, a, u, QuadratureRule(nodes));
        },
        py::arg("f"), py::arg("A"), py::arg("u"), py::arg("nodes") = QuadratureRule::default_nodes);
    m.def(
        "possibilistic_mean",
        [](const WeightingFunction& f, const FuzzyNumber& a, std::size_t nodes) {
            return possibilistic_mean(f, a, QuadratureRule(nodes));
        },
        py::arg("f"), py::arg("A"), py::arg("nodes") = QuadratureRule::default_nodes);
    m.def(
        "possibilistic_variance",
        [](const WeightingFunction& f, const FuzzyNumber& a, std::size_t nodes) {
            return possibilistic_variance(f, a, QuadratureRule(nodes));
        },
        py::arg("f"), py::arg("A"), py::arg("nodes") = QuadratureRule::default_nodes);

    py::class_<Utility>(m, "Utility")
        .def_static("crra", &Utility::crra_or_log, py::arg("gamma"))
        .def_static("log", &Utility::log)
        .def_static("cara", &Utility::cara, py::arg("a"))
        .def_static("quadratic", &Utility::quadratic, py::arg("b"))
        .def_property_readonly("name", &Utility::name)
        .def("eval", &Utility::eval, py::arg("x"), py::arg("order") = 0)
        .def("__call__", [](const Utility& u, double x) { return u(x); });
    m.def("absolute_prudence", &absolute_prudence);
    m.def("relative_prudence", &relative_prudence);

    py::class_<RandomReturn>(m, "RandomReturn")
        .def_static("uniform", &RandomReturn::uniform, py::arg("lower"), py::arg("upper"))
        .def_static(
            "discrete",
            [](const std::vector<std::pair<double, double>>& atoms) {
                std::vector<Atom> out;
                for (const auto& [v, p] : atoms) out.push_back({v, p});
                return RandomReturn::discrete(std::move(out));
            },
            py::arg("atoms"));
    m.def("mean", &possave::mean);
    m.def("variance", &possave::variance);

    py::class_<SavingProblem>(m, "SavingProblem")
        .def_static(
            "certain",
            [](double y0, const Utility& u, double R, std::size_t nodes) {
                return SavingProblem::certain(y0, u, R, QuadratureRule(nodes));
            },
            py::arg("y0"), py::arg("u"), py::arg("R"), py::arg("nodes") = QuadratureRule::default_nodes)
        .def_static(
            "probabilistic",
            [](double y0, const Utility& u, const RandomReturn& x, std::size_t nodes) {
                return SavingProblem::probabilistic(y0, u, x, QuadratureRule(nodes));
            },
            py::arg("y0"), py::arg("u"), py::arg("X"), py::arg("nodes") = QuadratureRule::default_nodes)
        .def_static(
            "possibilistic",
            [](double y0, const Utility& u, const WeightingFunction& f, const FuzzyNumber& a, std::size_t nodes) {
                return SavingProblem::possibilistic(y0, u, f, a, QuadratureRule(nodes));
            },
            py::arg("y0"), py::arg("u"), py::arg("f"), py::arg("A"), py::arg("nodes") = QuadratureRule::default_nodes)
        .def_property_readonly("kind", [](const SavingProblem& p) { return to_string(p.kind()); })
        .def_property_readonly("feasible_interval", [](const SavingProblem& p) {
            return std::make_pair(p.feasible_interval().lower, p.feasible_interval().upper);
        })
        .def("total_utility", [](const SavingProblem& p, double s) { return total_utility(p, s); })
        .def("foc", [](const SavingProblem& p, double s) { return foc(p, s); })
        .def("foc_derivative", [](const SavingProblem& p, double s) { return foc_derivative(p, s); });

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("s_opt", &SolveResult::s_opt)
        .def_readonly("foc_residual", &SolveResult::foc_residual)
        .def_readonly("iterations", &SolveResult::iterations)
        .def_readonly("converged", &SolveResult::converged)
        .def_property_readonly("bracket", [](const SolveResult& r) {
            return std::make_pair(r.bracket.lower, r.bracket.upper);
        });

    m.def(
        "solve_optimum",
        [](const SavingProblem& p, double tol_s, double tol_f, int max_iter) {
            SolveOptions opt;
            opt.tol_s = tol_s;
            opt.tol_f = tol_f;
            opt.max_iter = max_iter;
            return solve_optimum(p, opt);
        },
        py::arg("problem"), py::arg("tol_s") = 1e-12, py::arg("tol_f") = 1e-10, py::arg("max_iter") = 200);

    m.def(
        "build_report",
        [](double y0, const Utility& u, double R, const RandomReturn& x, const WeightingFunction& f,
           const FuzzyNumber& a, std::size_t nodes) {
            return report_dict(build_report(y0, u, R, x, f, a, QuadratureRule(nodes)));
        },
        py::arg("y0"), py::arg("u"), py::arg("R"), py::arg("X"), py::arg("f"), py::arg("A"),
        py::arg("nodes") = QuadratureRule::default_nodes);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line front end in-process; returns (exit_code, stdout, stderr).");
}
