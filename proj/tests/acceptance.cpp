// One PASS/FAIL line per acceptance criterion. The exit code is nonzero only
// for implementation failures; bound findings and the scan runtime print
// FAIL without failing the run.

#include "cli.hpp"

#include <qconic/bounds.hpp>
#include <qconic/errors.hpp>
#include <qconic/harness.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

using namespace qconic;
using std::numbers::pi;

namespace
{

struct Outcome
{
    bool pass = false;
    bool blocking = true; // false: reported, but not an implementation failure
    std::string detail;
};

class Clock
{
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - m_start).count();
    }

private:
    std::chrono::steady_clock::time_point m_start = std::chrono::steady_clock::now();
};

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double uniform(std::mt19937_64 &rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

ComplexSeries random_series(std::mt19937_64 &rng, int order)
{
    ComplexSeries f(order);
    for (int n = 0; n <= order; ++n) {
        f[n] = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
    }
    return f;
}

std::vector<ConicParams> box_conics()
{
    std::vector<ConicParams> out;
    for (const auto &p : default_scan_params()) {
        const bool seen = std::any_of(out.begin(), out.end(), [&](const ConicParams &c) {
            return c.k == p.conic.k && c.alpha == p.conic.alpha && c.beta == p.conic.beta;
        });
        if (!seen) {
            out.push_back(p.conic);
        }
    }
    return out;
}

Outcome reversion()
{
    Clock clock;
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const double a2 = uniform(rng, -1, 1), a3 = uniform(rng, -1, 1), a4 = uniform(rng, -1, 1);
        const auto g = revert(ComplexSeries({0.0, 1.0, a2, a3, a4}, 4));
        worst = std::max({worst, std::abs(g[2] + a2), std::abs(g[3] - (2 * a2 * a2 - a3)),
                          std::abs(g[4] + (5 * a2 * a2 * a2 - 5 * a2 * a3 + a4))});
    }
    const double s = clock.seconds();
    return {worst <= 1e-10 && s < 1.0, true, fmt("1000 triples, max error %.2e, %.3f s", worst, s)};
}

Outcome classical_limit()
{
    const QParameter q(1.0 - 1e-3);
    double bracket_gap = 0.0;
    for (int n = 1; n <= 8; ++n) {
        bracket_gap = std::max(bracket_gap, std::abs(sym_q_bracket(n, q) - n));
    }
    std::mt19937_64 rng(102);
    double rel = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto f = random_series(rng, 8);
        const auto d = sym_q_derivative(f, q);
        for (int n = 1; n <= 8; ++n) {
            const cplx exact = static_cast<double>(n) * f[n];
            rel = std::max(rel, std::abs(d[n - 1] - exact) / std::abs(exact));
        }
    }
    return {bracket_gap <= 0.02 && rel <= 0.01, true,
            fmt("max |[n]-n| = %.2e (n <= 8), derivative relative gap %.2e", bracket_gap, rel)};
}

Outcome operator_relation()
{
    std::mt19937_64 rng(103);
    double worst_abs = 0.0, worst_rel = 0.0;
    for (const double q : {0.3, 0.6, 0.9}) {
        for (int t = 0; t < 100; ++t) {
            const auto f = random_series(rng, 8);
            const auto lhs = sym_q_derivative(f, QParameter(q));
            const auto rhs = dilate(q_derivative(f, QParameter(q * q)), 1.0 / q);
            for (int n = 0; n <= lhs.order(); ++n) {
                const double d = std::abs(lhs[n] - rhs[n]);
                worst_abs = std::max(worst_abs, d);
                worst_rel = std::max(worst_rel, d / std::max(1.0, std::abs(lhs[n])));
            }
        }
    }
    return {worst_rel <= 1e-12, true,
            fmt("300 series, max coefficient gap %.2e (relative %.2e)", worst_abs, worst_rel)};
}

Outcome elliptic_kernel()
{
    using boost::math::quadrature::gauss_kronrod;
    const double kappa = 1.0 / std::sqrt(2.0);
    const double oracle = gauss_kronrod<double, 61>::integrate(
        [kappa](double th) { return 1.0 / std::sqrt(1.0 - kappa * kappa * std::sin(th) * std::sin(th)); }, 0.0,
        pi / 2, 15, 1e-15);
    const double K0 = std::abs(elliptic_K(0.0) - pi / 2);
    const double K1 = elliptic_K(kappa);
    double trip = 0.0;
    for (const double kap : {0.2, 0.5, 0.8}) {
        trip = std::max(trip, std::abs(solve_kappa(conic_k_from_modulus(make_modulus(kap))).kappa - kap));
    }
    const bool ok = K0 <= 1e-12 && std::abs(K1 - oracle) <= 1e-8 && std::abs(K1 - 1.854074677) <= 1e-8 && trip <= 1e-9;
    return {ok, true,
            fmt("|K(0)-pi/2| = %.1e, K(1/sqrt2) = %.12f (quadrature %.12f), round trip %.1e", K0, K1, oracle, trip)};
}

Outcome extremal()
{
    double norm = 0.0, margin = 1e300;
    for (const auto &p : box_conics()) {
        const ExtremalFunction fn(p);
        norm = std::max(norm, std::abs(fn(0.0) - 1.0));
        const DiskGrid grid{16, 128, 0.99};
        for (int i = 1; i <= grid.radii; ++i) {
            for (int j = 0; j < grid.angles; ++j) {
                const cplx z = std::polar(grid.max_radius * i / grid.radii, 2 * pi * j / grid.angles);
                margin = std::min(margin, domain_margin(fn(z), p));
            }
        }
    }
    double half = 0.0;
    for (const double beta : {0.0, 0.2, 0.1}) {
        const auto P = extremal_coeffs(ConicParams{0.0, 1.0, beta}, 10);
        for (int n = 1; n <= 10; ++n) {
            half = std::max(half, std::abs(P(n) - 2 * (1 - beta)));
        }
    }
    const double P1 = extremal_coeffs(ConicParams{1.0, 1.0, 0.0}, 1)(1);
    const bool ok = norm <= 1e-8 && margin >= -1e-9 && half <= 1e-10 && std::abs(P1 - 8 / (pi * pi)) <= 1e-6;
    return {ok, true,
            fmt("12 domains: max |p(0)-1| = %.1e, min margin on 16x128 grid to r=0.99 = %.2e; k=0 gap %.1e; "
                "k=1 P1 = %.10f",
                norm, margin, half, P1)};
}

Outcome oracles(long pairs_per_class)
{
    Clock clock;
    const auto box = default_scan_params();
    const auto mus = default_mu_list();
    std::vector<ExtremalCoeffs> P;
    for (const auto &params : box) {
        P.push_back(extremal_coeffs(params.conic, 3));
    }
    double worst = 0.0;
    std::string worst_name;
    long failures = 0;
    std::map<std::string, double> errata;
    for (const ClassKind kind : {ClassKind::starlike, ClassKind::convex}) {
        for (long i = 0; i < pairs_per_class; ++i) {
            const auto c = static_cast<std::size_t>(i) % box.size();
            auto rng = sample_stream(6, kind == ClassKind::starlike ? 1 : 2, static_cast<std::uint64_t>(i));
            const auto h = sample_caratheodory(rng, draw_atom_count(rng), 2);
            const auto pair = pair_from_h(kind, h, box[c], P[c]);
            const auto r = proof_oracle(kind, pair.h, pair.q, box[c], P[c], mus);
            const double m = r.max_residual();
            if (!(m <= kOracleTolerance)) {
                ++failures;
            }
            if (!(m <= worst)) {
                worst = m;
                worst_name = r.worst() ? r.worst()->name : "";
            }
            for (const auto &e : r.errata) {
                const std::string key = std::string(to_string(kind)) + "." + e.name;
                errata[key] = std::max(errata[key], e.deviation);
            }
        }
    }
    const double s = clock.seconds();
    std::string dev;
    for (const auto &[k, v] : errata) {
        if (v > 1e-8) {
            dev += (dev.empty() ? "" : ", ") + k + fmt(" %.2g", v);
        }
    }
    return {failures == 0 && s < 10.0, true,
            fmt("%ld pairs per class, max residual %.2e (%s), %.2f s; printed forms off by: ", pairs_per_class, worst,
                worst_name.c_str(), s) +
                dev};
}

Outcome closed_forms()
{
    const ClassParams params{ConicParams{0.0, 1.0, 0.0}, QParameter(1.0 - 1e-3), 1.0};
    const auto in = make_bound_inputs(params, extremal_coeffs(params.conic, 3), 0.0);
    const double a = st_a2_bound(in), b = st_a3_bound(in), c = st_fekete_szego_bound(in), d = ucv_a2_bound(in),
                 e = ucv_a3_bound(in);
    const bool ok = std::abs(a - std::sqrt(2.0)) <= 0.01 && std::abs(b - 5) <= 0.05 && std::abs(c - 1) <= 0.01
                    && std::abs(d - std::sqrt(2.0) / 2) <= 0.01 && std::abs(e - 4.0 / 3) <= 0.02;
    return {ok, true, fmt("st a2 %.6f, st a3 %.6f, st FS(0) %.6f, ucv a2 %.6f, ucv a3 %.6f", a, b, c, d, e)};
}

Outcome scan(long accepted, int jobs, const std::string &report_path)
{
    ScanConfig base;
    base.samples = accepted;
    base.until_accepted = true;
    base.jobs = jobs;
    std::vector<ScanConfig> cfgs = default_scan_box(ClassKind::starlike, base);
    const auto ucv = default_scan_box(ClassKind::convex, base);
    cfgs.insert(cfgs.end(), ucv.begin(), ucv.end());

    Clock clock;
    const auto reports = run_scans(cfgs);
    const double s = clock.seconds();

    long short_configs = 0, oracle_failures = 0, two_way = 0, st_bad = 0;
    double st_max = 0.0;
    const VerificationReport *st_worst = nullptr;
    std::map<std::string, std::pair<long, const VerificationReport *>> ucv_findings; // functional -> (configs, worst)
    std::map<std::string, double> ucv_worst_ratio;
    for (const auto &r : reports) {
        short_configs += r.accepted < accepted;
        oracle_failures += r.oracle_failures;
        two_way += r.two_way_failures;
        if (r.kind == ClassKind::starlike) {
            st_bad += r.has_violations();
            if (r.max_ratio > st_max) {
                st_max = r.max_ratio;
                st_worst = &r;
            }
            continue;
        }
        for (const auto &f : r.functionals) {
            if (f.violations == 0) {
                continue;
            }
            const std::string key = f.name + (f.mu ? fmt("(mu=%g)", *f.mu) : "");
            auto &[count, worst] = ucv_findings[key];
            ++count;
            if (f.max_ratio > ucv_worst_ratio[key]) {
                ucv_worst_ratio[key] = f.max_ratio;
                worst = &r;
            }
        }
    }

    if (!report_path.empty()) {
        std::ofstream(report_path) << reports_json(reports) << '\n';
    }

    const bool implementation_ok = oracle_failures == 0 && two_way == 0;
    const bool st_ok = st_bad == 0 && st_max <= 1.0 + 1e-9;
    Outcome out;
    out.pass = implementation_ok && st_ok && short_configs == 0 && s < 300.0;
    out.blocking = !implementation_ok;
    out.detail = fmt("%ld accepted per config, 216 configs, %.0f s on %d thread(s); oracle failures %ld, two-way "
                     "mismatches %ld; configs short of the target %ld; ",
                     accepted, s, jobs, oracle_failures, two_way, short_configs);
    out.detail += fmt("st bounds: %ld/108 configs with violations, max ratio %.4g", st_bad, st_max);
    if (st_worst) {
        out.detail += fmt(" (%s, %s, seed %llu, index %ld)", st_worst->experiment.c_str(),
                          st_worst->worst_case.functional.c_str(),
                          static_cast<unsigned long long>(st_worst->seed), st_worst->worst_case.index);
    }
    out.detail += "; ucv bound findings:";
    if (ucv_findings.empty()) {
        out.detail += " none";
    }
    for (const auto &[key, v] : ucv_findings) {
        const auto *w = v.second;
        out.detail += fmt(" %s %ld configs, worst ratio %.4g (%s, seed %llu);", key.c_str(), v.first,
                          ucv_worst_ratio[key], w->experiment.c_str(), static_cast<unsigned long long>(w->seed));
    }
    return out;
}

Outcome determinism()
{
    const auto run = [](const std::string &path, const std::string &jobs) {
        std::ostringstream out, err;
        const int code = cli::run({"verify", "--k", "2", "--alpha", "0.8", "--beta", "0.2", "--q", "0.9", "--b", "0.5",
                                   "--samples", "400", "--seed", "2024", "--mu", "-2", "--mu", "2", "--no-timing",
                                   "--jobs", jobs, "--output", path},
                                  out, err);
        std::ifstream f(path, std::ios::binary);
        std::ostringstream s;
        s << f.rdbuf();
        return std::pair{code, s.str()};
    };
    const auto [c1, a] = run("acceptance_verify_1.json", "1");
    const auto [c2, b] = run("acceptance_verify_2.json", "4");
    const bool ok = c1 == 0 && c2 == 0 && !a.empty() && a == b;
    return {ok, true, fmt("two verify runs (1 and 4 threads), %zu bytes each, identical: %s", a.size(), a == b ? "yes" : "no")};
}

Outcome fekete_szego_continuity()
{
    long curves = 0, steps = 0;
    double worst_excess = -1e300;
    std::string where;
    for (const auto &params : default_scan_params()) {
        const auto P = extremal_coeffs(params.conic, 3);
        for (const ClassKind kind : {ClassKind::starlike, ClassKind::convex}) {
            const bool st = kind == ClassKind::starlike;
            const auto F = [&](double mu) {
                const auto in = make_bound_inputs(params, P, mu);
                return st ? st_fekete_szego_bound(in) : ucv_fekete_szego_bound(in);
            };
            const auto in0 = make_bound_inputs(params, P, 0.0);
            const double c = std::abs(st ? st_s(in0) : ucv_s(in0)); // |s(mu)| = c |1 - mu|
            const double half_width = std::max(3.0, 1.5 / c);
            const double lo = 1.0 - half_width, h = 1e-3;
            const long n = static_cast<long>(2 * half_width / h);
            std::vector<double> v(static_cast<std::size_t>(n + 1));
            for (long i = 0; i <= n; ++i) {
                v[static_cast<std::size_t>(i)] = F(lo + i * h);
            }
            for (std::size_t i = 1; i + 2 < v.size(); ++i) {
                const double jump = std::abs(v[i + 1] - v[i]);
                const double local = std::max(std::abs(v[i] - v[i - 1]), std::abs(v[i + 2] - v[i + 1]));
                const double excess = jump - 10.0 * local - 1e-12 * std::abs(v[i]);
                if (excess > worst_excess) {
                    worst_excess = excess;
                    where = fmt("%s k=%g mu=%.3f", to_string(kind), params.conic.k, lo + i * h);
                }
            }
            ++curves;
            steps += n;
        }
    }
    return {worst_excess <= 0.0, true,
            fmt("%ld curves, %ld steps of 1e-3 across both |s| = 1 crossings, largest jump excess %.2e (%s)", curves,
                steps, worst_excess, where.c_str())};
}

Outcome guarded(const std::function<Outcome()> &fn)
{
    try {
        return fn();
    } catch (const std::exception &e) {
        return {false, true, std::string("exception: ") + e.what()};
    }
}

} // namespace

int main(int argc, char **argv)
{
    long accepted = 10000;
    long pairs = 10000;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::string report, summary;
    CLI::App app{"acceptance criteria"};
    app.add_option("--scan-accepted", accepted, "accepted members per configuration for the Monte Carlo scan")
        ->capture_default_str();
    app.add_option("--oracle-pairs", pairs, "random pairs per class for the proof oracles")->capture_default_str();
    app.add_option("--jobs", jobs, "scan worker threads")->capture_default_str();
    app.add_option("--report", report, "write the full scan reports (JSON) here");
    app.add_option("--summary", summary, "also write the criterion lines here");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"reversion low orders", reversion},
        {"classical limit", classical_limit},
        {"operator relation", operator_relation},
        {"elliptic kernel", elliptic_kernel},
        {"extremal normalization and range", extremal},
        {"proof oracles", [&] { return oracles(pairs); }},
        {"closed-form bound substitutions", closed_forms},
        {"Monte Carlo scan", [&] { return scan(accepted, jobs, report); }},
        {"determinism", determinism},
        {"Fekete-Szego continuity", fekete_szego_continuity},
    };

    std::ofstream summary_file;
    if (!summary.empty()) {
        summary_file.open(summary);
    }
    int blocking_failures = 0;
    int n = 0;
    for (const auto &[name, fn] : criteria) {
        const Outcome o = guarded(fn);
        ++n;
        const std::string line = fmt("criterion %2d %s  ", n, o.pass ? "PASS" : "FAIL") + name + ": " + o.detail;
        std::printf("%s\n", line.c_str());
        summary_file << line << '\n' << std::flush;
        std::fflush(stdout);
        if (!o.pass && o.blocking) {
            ++blocking_failures;
        }
    }
    if (blocking_failures > 0) {
        std::printf("%d implementation failure(s)\n", blocking_failures);
        return 1;
    }
    return 0;
}
