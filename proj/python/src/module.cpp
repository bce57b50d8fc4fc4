#include <qconic/bounds.hpp>
#include <qconic/elliptic.hpp>
#include <qconic/errors.hpp>
#include <qconic/harness.hpp>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qconic;

namespace
{

using Coeffs = std::vector<cplx>;

ComplexSeries to_series(const Coeffs &c)
{
    if (c.empty()) {
        throw py::value_error("coefficient list must not be empty");
    }
    return ComplexSeries(c);
}

Coeffs to_list(const ComplexSeries &s)
{
    return {s.coeffs().begin(), s.coeffs().end()};
}

ClassKind parse_kind(const std::string &s)
{
    if (s == "st") {
        return ClassKind::starlike;
    }
    if (s == "ucv") {
        return ClassKind::convex;
    }
    throw py::value_error("class must be 'st' or 'ucv'");
}

ConicParams conic(double k, double alpha, double beta)
{
    ConicParams p{k, alpha, beta};
    validate(p);
    return p;
}

ClassParams class_params(double k, double alpha, double beta, double q, cplx b)
{
    ClassParams p{conic(k, alpha, beta), QParameter(q), b};
    validate(p);
    return p;
}

py::object loads(const std::string &text)
{
    return py::module_::import("json").attr("loads")(text);
}

} // namespace

PYBIND11_MODULE(_qconic, m)
{
    m.doc() = "q-calculus conic-domain classes: series tools, extremal functions, coefficient bounds, scans";

    static py::exception<error> base(m, "QconicError", PyExc_RuntimeError);
    static py::exception<InvalidParameters> invalid(m, "InvalidParameters", PyExc_ValueError);
    static py::exception<NonpositiveDenominator> nonpositive(m, "NonpositiveDenominator", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const InvalidParameters &e) {
            py::set_error(invalid, e.what());
        } catch (const NonpositiveDenominator &e) {
            py::set_error(nonpositive, e.what());
        } catch (const error &e) {
            py::set_error(base, e.what());
        }
    });

    // series
    m.def("mul", [](const Coeffs &a, const Coeffs &b) { return to_list(mul(to_series(a), to_series(b))); });
    m.def("div", [](const Coeffs &a, const Coeffs &b) { return to_list(div(to_series(a), to_series(b))); });
    m.def("compose", [](const Coeffs &a, const Coeffs &b) { return to_list(compose(to_series(a), to_series(b))); },
          py::arg("outer"), py::arg("inner"));
    m.def("revert", [](const Coeffs &f) { return to_list(revert(to_series(f))); }, py::arg("f"),
          "Coefficients of the compositional inverse of f = z + a2 z^2 + ...");

    // q-calculus
    m.def("q_bracket", [](int n, double q) { return q_bracket(n, QParameter(q)); });
    m.def("sym_q_bracket", [](int n, double q) { return sym_q_bracket(n, QParameter(q)); });
    m.def("q_derivative", [](const Coeffs &f, double q) { return to_list(q_derivative(to_series(f), QParameter(q))); });
    m.def("sym_q_derivative",
          [](const Coeffs &f, double q) { return to_list(sym_q_derivative(to_series(f), QParameter(q))); });

    // elliptic
    m.def("elliptic_K", py::overload_cast<double>(&elliptic_K), py::arg("kappa"));
    m.def("solve_kappa", [](double k) { return solve_kappa(k).kappa; }, py::arg("k"));

    // conic domains
    m.def("domain_margin", [](cplx w, double k, double alpha, double beta) { return domain_margin(w, conic(k, alpha, beta)); },
          py::arg("w"), py::arg("k"), py::arg("alpha") = 1.0, py::arg("beta") = 0.0);
    m.def("boundary_points",
          [](double k, double alpha, double beta, int count, double extent) {
              const auto p = conic(k, alpha, beta);
              const auto pts = k == 0.0 ? boundary_line_points(p, count, extent) : boundary_points(p, count, extent);
              std::vector<std::pair<double, double>> out;
              for (const auto &pt : pts) {
                  out.emplace_back(pt.u, pt.v);
              }
              return out;
          },
          py::arg("k"), py::arg("alpha") = 1.0, py::arg("beta") = 0.0, py::arg("count") = 200, py::arg("extent") = 4.0);
    m.def("extremal_eval", [](cplx z, double k, double alpha, double beta) { return extremal_eval(z, conic(k, alpha, beta)); },
          py::arg("z"), py::arg("k"), py::arg("alpha") = 1.0, py::arg("beta") = 0.0);
    m.def("extremal_coeffs", [](double k, double alpha, double beta, int order) { return extremal_coeffs(conic(k, alpha, beta), order).P; },
          py::arg("k"), py::arg("alpha") = 1.0, py::arg("beta") = 0.0, py::arg("order") = 8,
          "P_1..P_order of the extremal function");

    // bounds
    m.def("bounds",
          [](const std::string &cls, double k, double alpha, double beta, double q, cplx b, double mu) {
              const auto params = class_params(k, alpha, beta, q, b);
              const auto t = bound_table(parse_kind(cls), make_bound_inputs(params, extremal_coeffs(params.conic, 3), mu));
              py::dict d;
              d["a2"] = t.a2;
              if (parse_kind(cls) == ClassKind::convex) {
                  d["a2_without_b"] = t.a2_alt;
              }
              d["a3"] = t.a3;
              d["s"] = t.s;
              d["fekete_szego"] = t.fekete_szego;
              return d;
          },
          py::arg("cls"), py::arg("k"), py::arg("alpha") = 1.0, py::arg("beta") = 0.0, py::arg("q") = 0.5,
          py::arg("b") = cplx(1.0), py::arg("mu") = 0.0);

    // Monte Carlo scan
    m.def("verify",
          [](const std::string &cls, double k, double alpha, double beta, double q, cplx b, std::vector<double> mu,
             long samples, std::uint64_t seed, int order, int jobs, bool until_accepted) {
              ScanConfig cfg;
              cfg.kind = parse_kind(cls);
              cfg.params = class_params(k, alpha, beta, q, b);
              cfg.mu_list = std::move(mu);
              cfg.samples = samples;
              cfg.seed = seed;
              cfg.order = order;
              cfg.jobs = jobs;
              cfg.until_accepted = until_accepted;
              std::string text;
              {
                  py::gil_scoped_release release;
                  text = report_json(run_scan(cfg), false, -1);
              }
              return loads(text);
          },
          py::arg("cls"), py::arg("k"), py::arg("alpha") = 1.0, py::arg("beta") = 0.0, py::arg("q") = 0.5,
          py::arg("b") = cplx(1.0), py::arg("mu") = std::vector<double>{0.0}, py::arg("samples") = 1000,
          py::arg("seed") = 1, py::arg("order") = 48, py::arg("jobs") = 1, py::arg("until_accepted") = false,
          "Run one scan and return the report as a dict (no timing fields)");
}
