#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dynbc/cli.hpp"
#include "dynbc/datum.hpp"
#include "dynbc/error.hpp"
#include "dynbc/mittag_leffler.hpp"
#include "dynbc/montecarlo.hpp"
#include "dynbc/spectral.hpp"
#include "dynbc/stoch.hpp"
#include "dynbc/symbols.hpp"
#include "dynbc/verify.hpp"

namespace py = pybind11;
using namespace dynbc;

namespace {

Point to_point(const std::vector<double>& v) {
    if (v.size() < 2 || v.size() > 3) throw py::value_error("a point needs 2 or 3 coordinates");
    Point p{};
    for (std::size_t i = 0; i < v.size(); ++i) p[i] = v[i];
    return p;
}

TimeModel make_model(const std::string& model, double alpha, double theta) {
    if (model == "caputo") return Caputo{FractionalOrder(alpha)};
    if (model == "symbol") return theta > 0.0 ? BernsteinSymbol::tempered(alpha, theta) : BernsteinSymbol::stable(alpha);
    throw py::value_error("model must be 'caputo' or 'symbol'");
}

MCConfig make_mc(std::uint64_t paths, std::uint64_t seed, int shards, const TimeModel& model, double step) {
    MCConfig c;
    c.n_paths = paths;
    c.seed = seed;
    c.n_shards = shards;
    c.time_model = model;
    c.tempered_step = step;
    return c;
}

py::dict estimate_dict(const MCEstimate& e) {
    py::dict d;
    d["mean"] = e.mean;
    d["stderr"] = e.std_error;
    d["n"] = e.n;
    d["ci95"] = py::make_tuple(e.ci95_lo, e.ci95_hi);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral and Monte Carlo solvers for dynamic boundary conditions";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("ml_e", py::overload_cast<double, double, double>(&ml_e), py::arg("alpha"), py::arg("beta"), py::arg("z"),
          "Mittag-Leffler function E_{alpha,beta}(z) for z <= 0");

    m.def(
        "phi",
        [](double alpha, double theta, double lam) {
            const auto s = theta > 0.0 ? BernsteinSymbol::tempered(alpha, theta) : BernsteinSymbol::stable(alpha);
            return phi_eval(s, lam);
        },
        py::arg("alpha"), py::arg("theta"), py::arg("lam"), "Bernstein symbol; theta = 0 is the stable one");
    m.def(
        "m_phi",
        [](double alpha, double theta, double Lambda, double lam, double t) {
            const auto s = theta > 0.0 ? BernsteinSymbol::tempered(alpha, theta) : BernsteinSymbol::stable(alpha);
            return m_phi(s, Lambda, lam, t);
        },
        py::arg("alpha"), py::arg("theta"), py::arg("Lambda"), py::arg("lam"), py::arg("t"),
        "E[exp(-(lam + Lambda) L_t)] for the inverse subordinator");

    m.def(
        "eigenvalues",
        [](int dim, double radius, double k, double l, double Lambda, int n_max) {
            const DomainSpec dom(dim, radius);
            const BoundaryParams bp{k, l, Lambda};
            std::vector<double> out;
            for (int d = 0; d <= n_max; ++d) out.push_back(eigenvalue_for_degree(dom, bp, d));
            return out;
        },
        py::arg("dim"), py::arg("radius"), py::arg("k"), py::arg("l"), py::arg("Lambda"), py::arg("n_max"),
        "lambda_d + Lambda for degrees 0..n_max");
    m.def(
        "spectral_condition",
        [](int dim, double radius, double k, double l) {
            const auto c = check_spectral_condition(DomainSpec(dim, radius), {k, l, 0.0});
            py::dict d;
            d["ok"] = c.ok;
            d["first_eigenvalue"] = c.first_eigenvalue;
            d["radius_formula_ok"] = c.radius_formula_ok;
            d["discrepancy"] = c.discrepancy;
            d["warning"] = c.warning;
            return d;
        },
        py::arg("dim"), py::arg("radius"), py::arg("k"), py::arg("l"));

    m.def(
        "solve",
        [](const std::string& datum, double t, const std::vector<double>& x, int dim, double radius, double k,
           double l, double Lambda, const std::string& model, double alpha, double theta, int n_max) {
            const DomainSpec dom(dim, radius);
            const auto field = BoundaryDatum::parse(dom, datum).spectral(n_max);
            return evaluate_solution(field, {k, l, Lambda}, make_model(model, alpha, theta), t, to_point(x));
        },
        py::arg("datum"), py::arg("t"), py::arg("x"), py::arg("dim") = 2, py::arg("radius") = 1.0,
        py::arg("k") = -1.0, py::arg("l") = 1.0, py::arg("Lambda") = 0.0, py::arg("model") = "caputo",
        py::arg("alpha") = 0.5, py::arg("theta") = 0.0, py::arg("n_max") = 16, "u(t, x) by the spectral route");

    m.def(
        "simulate",
        [](const std::string& datum, double t, const std::vector<double>& x, double radius, double k, double l,
           double Lambda, const std::string& model, double alpha, double theta, std::uint64_t paths,
           std::uint64_t seed, int shards, double step) {
            const auto dom = DomainSpec::disk(radius);
            const auto d = BoundaryDatum::parse(dom, datum);
            const BoundaryFunction u0 = [&d](const Point& y) { return d(y); };
            const auto cfg = make_mc(paths, seed, shards, make_model(model, alpha, theta), step);
            py::gil_scoped_release release;
            return estimate_solution(dom, {k, l, Lambda}, u0, t, to_point(x), cfg);
        },
        py::arg("datum"), py::arg("t"), py::arg("x"), py::arg("radius") = 1.0, py::arg("k") = -1.0,
        py::arg("l") = 1.0, py::arg("Lambda") = 0.0, py::arg("model") = "caputo", py::arg("alpha") = 0.5,
        py::arg("theta") = 0.0, py::arg("paths") = 100000, py::arg("seed") = 1, py::arg("shards") = 1,
        py::arg("step") = 0.0, "u(t, x) by Monte Carlo on the disk");

    py::class_<MCEstimate>(m, "MCEstimate")
        .def_readonly("mean", &MCEstimate::mean)
        .def_readonly("stderr", &MCEstimate::std_error)
        .def_readonly("n", &MCEstimate::n)
        .def_property_readonly("ci95", [](const MCEstimate& e) { return py::make_tuple(e.ci95_lo, e.ci95_hi); })
        .def("as_dict", &estimate_dict)
        .def("__repr__", [](const MCEstimate& e) {
            std::ostringstream o;
            o.precision(17);
            o << "MCEstimate(mean=" << e.mean << ", stderr=" << e.std_error << ", n=" << e.n << ")";
            return o.str();
        });

    m.def(
        "sample_stable",
        [](double alpha, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng(seed, stream);
            std::vector<double> out(n);
            for (auto& v : out) v = sample_stable(rng, alpha);
            return out;
        },
        py::arg("alpha"), py::arg("n"), py::arg("seed") = 1, py::arg("stream") = 0);
    m.def(
        "sample_inverse_stable",
        [](double alpha, double t, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng(seed, stream);
            std::vector<double> out(n);
            for (auto& v : out) v = sample_inverse_stable(rng, alpha, t);
            return out;
        },
        py::arg("alpha"), py::arg("t"), py::arg("n"), py::arg("seed") = 1, py::arg("stream") = 0);

    m.def(
        "caputo_l1",
        [](const std::vector<double>& times, const std::vector<double>& values, double alpha) {
            return caputo_l1(times, values, alpha);
        },
        py::arg("times"), py::arg("values"), py::arg("alpha"));
    m.def("relaxation_residual", &relaxation_residual, py::arg("alpha"), py::arg("rate"), py::arg("T"),
          py::arg("n_grid"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = cli::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a dynbc command; returns (exit_code, stdout, stderr)");
}
