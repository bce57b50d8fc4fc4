#include "support.hpp"

#include <qconic/errors.hpp>
#include <qconic/harness.hpp>

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

using namespace qconic;

namespace
{

const ClassKind kinds[] = {ClassKind::starlike, ClassKind::convex};

using Fn = std::function<cplx(cplx)>;

// Taylor coefficients 0..2 of an analytic function from samples on a small circle
std::array<cplx, 3> low_coeffs(const Fn &F)
{
    constexpr int M = 64;
    constexpr double rho = 0.05;
    std::array<cplx, 3> c{};
    for (int j = 0; j < M; ++j) {
        const cplx w = std::polar(1.0, 2 * std::numbers::pi * j / M);
        const cplx v = F(rho * w);
        for (int n = 0; n < 3; ++n) {
            c[static_cast<std::size_t>(n)] += v * std::pow(std::conj(w), n);
        }
    }
    for (int n = 0; n < 3; ++n) {
        c[static_cast<std::size_t>(n)] /= M * std::pow(rho, n);
    }
    return c;
}

// Class expression of an analytic function given only by point values.
Fn expression(ClassKind kind, const Fn &f, const ClassParams &p)
{
    const double q = p.q.value();
    const auto dq = [q](Fn g) -> Fn { return [g, q](cplx z) { return (g(q * z) - g(z / q)) / ((q - 1.0 / q) * z); }; };
    const Fn d1 = dq(f);
    if (kind == ClassKind::starlike) {
        return [=](cplx z) { return 1.0 + (z * d1(z) / f(z) - 1.0) / p.b; };
    }
    const Fn d2 = dq(d1);
    return [=](cplx z) { return 1.0 + z * d2(z) / d1(z) / p.b; };
}

// h1, h2 from t = p(u), h = (1 + u)/(1 - u): t1 = P1 u1, t2 = P1 u2 + P2 u1^2, h1 = 2 u1, h2 = 2 u2 + 2 u1^2
std::pair<cplx, cplx> caratheodory_low(const std::array<cplx, 3> &t, double P1, double P2)
{
    const cplx u1 = t[1] / P1;
    const cplx u2 = (t[2] - P2 * u1 * u1) / P1;
    return {2.0 * u1, 2.0 * u2 + 2.0 * u1 * u1};
}

} // namespace

TEST_SUITE("harness")
{
    TEST_CASE("constant pair gives zero coefficients")
    {
        const ClassParams params{ConicParams{1.0, 1.0, 0.0}, QParameter(0.5), 1.0};
        const auto P = extremal_coeffs(params.conic, 3);
        const auto one = ComplexSeries::constant(1.0, 2);
        for (const ClassKind kind : kinds) {
            const auto r = proof_oracle(kind, one, one, params, P);
            CHECK(r.max_residual() == 0.0);
            CHECK(r.passed());
            const auto [a2, a3] = formula_coefficients(kind, {one, one}, params, P);
            CHECK(a2 == cplx(0.0));
            CHECK(a3 == cplx(0.0));
        }
    }

    TEST_CASE("h1 must mirror q1")
    {
        const ClassParams params;
        const auto P = extremal_coeffs(params.conic, 3);
        const ComplexSeries h({1.0, 0.5, 0.1}, 2), q({1.0, 0.4, 0.1}, 2);
        CHECK_THROWS_AS(proof_oracle_st(h, q, params, P), InconsistentInput);
        CHECK_THROWS_AS(proof_oracle_ucv(h, q, params, P), InconsistentInput);
    }

    TEST_CASE("equal second coefficients give a3 = a2^2")
    {
        const ClassParams params{ConicParams{0.5, 0.8, 0.2}, QParameter(0.9), 2.0};
        const auto P = extremal_coeffs(params.conic, 3);
        const ComplexSeries h({1.0, cplx(0.3, 0.2), cplx(0.5, -0.1)}, 2);
        const ComplexSeries q({1.0, -h[1], h[2]}, 2);
        for (const ClassKind kind : kinds) {
            const auto [a2, a3] = formula_coefficients(kind, {h, q}, params, P);
            CHECK(a3 == a2 * a2);
        }
    }

    TEST_CASE("identities hold on random valid pairs")
    {
        const std::vector<double> mus{-2.0, 0.0, 0.5, 1.0, 2.0};
        long n = 0;
        for (const auto &params : default_scan_params()) {
            const auto P = extremal_coeffs(params.conic, 3);
            for (const ClassKind kind : kinds) {
                for (int t = 0; t < 5; ++t, ++n) {
                    auto rng = sample_stream(41, 0, static_cast<std::uint64_t>(n));
                    const auto h = sample_caratheodory(rng, draw_atom_count(rng), 2);
                    const auto pair = pair_from_h(kind, h, params, P);
                    const auto r = proof_oracle(kind, pair.h, pair.q, params, P, mus);
                    CHECK(r.identities.size() == 9 + mus.size());
                    CHECK(r.max_residual() <= 1e-10);
                }
            }
        }
    }

    TEST_CASE("second-order identities against independent point evaluations")
    {
        // f is any normalized function; its inverse comes from Newton iteration
        // and both expressions from q-difference quotients, so nothing here goes
        // through the series code.
        std::mt19937_64 rng(42);
        for (const auto &params :
             {ClassParams{ConicParams{1.0, 1.0, 0.0}, QParameter(0.5), 1.0},
              ClassParams{ConicParams{2.0, 0.8, 0.2}, QParameter(0.9), 0.5},
              ClassParams{ConicParams{0.5, 0.6, 0.1}, QParameter(0.7), 2.0}}) {
            const auto P = extremal_coeffs(params.conic, 3);
            const double P1 = P(1), P2 = P(2);
            const double b = params.b.real();
            const double b2 = sym_q_bracket(2, params.q), b3 = sym_q_bracket(3, params.q);
            for (const ClassKind kind : kinds) {
                const cplx a2 = qconic::testing::random_cplx(rng, 0.2), a3 = qconic::testing::random_cplx(rng, 0.1);
                const Fn f = [=](cplx z) { return z + a2 * z * z + a3 * z * z * z; };
                const Fn g = [=](cplx w) {
                    cplx z = w;
                    for (int it = 0; it < 50; ++it) {
                        z -= (f(z) - w) / (1.0 + 2.0 * a2 * z + 3.0 * a3 * z * z);
                    }
                    return z;
                };
                const auto [h1, h2] = caratheodory_low(low_coeffs(expression(kind, f, params)), P1, P2);
                const auto [q1, q2] = caratheodory_low(low_coeffs(expression(kind, g, params)), P1, P2);
                CHECK(std::abs(h1 + q1) < 1e-9);

                const bool st = kind == ClassKind::starlike;
                const double c1 = st ? b2 - 1 : b2, T2 = st ? b2 - 1 : b2 * b2, T3 = st ? b3 - 1 : b2 * b3;
                const double D = b * P1 * P1 * (T3 - T2) + (P1 - P2) * c1 * c1;
                // derived forms hold
                CHECK(std::abs(a2 * a2 - P1 * P1 * P1 * b * b * (h2 + q2) / (4 * D)) < 1e-9);
                CHECK(std::abs(a3 - (a2 * a2 + b * P1 * (h2 - q2) / (4 * T3))) < 1e-9);
                CHECK(std::abs(h1 * h1 + q1 * q1 - 8 * c1 * c1 * a2 * a2 / (P1 * P1 * b * b)) < 1e-9);
                // the printed brackets do not (the convex-type one happens to agree at b = 2)
                const double printed = st ? P1 * P1 * b * (b3 - b2) + 2 * (P1 - P2) * (b2 - 1) * (b2 - 1)
                                          : 2 * b2 * (b3 - b2) * P1 * P1 + b2 * b2 * (P1 - P2);
                if (st || b != 2.0) {
                    CHECK(std::abs(a2 * a2 - P1 * P1 * P1 * b * b * (h2 + q2) / (4 * printed)) > 1e-6 * std::abs(a2 * a2));
                }

                // the library's pair recovery agrees
                const ComplexSeries fs({0.0, 1.0, a2, a3}, 3);
                const auto pair = recover_pair(kind, fs, params, P);
                CHECK(std::abs(pair.h[1] - h1) < 1e-9);
                CHECK(std::abs(pair.h[2] - h2) < 1e-9);
                CHECK(std::abs(pair.q[2] - q2) < 1e-9);
            }
        }
    }

    TEST_CASE("recovered pairs reproduce the sampled Caratheodory function")
    {
        const ClassParams params{ConicParams{1.0, 0.8, 0.2}, QParameter(0.9), 1.0};
        const auto P = extremal_coeffs(params.conic, 20);
        for (const ClassKind kind : kinds) {
            auto rng = sample_stream(43, 0, 0);
            const auto h = sample_caratheodory(rng, 3, 20);
            const auto f = member_from_target(kind, make_target(P, schwarz_from_caratheodory(h), 20), params);
            const auto pair = recover_pair(kind, f, params, P);
            CHECK(std::abs(pair.h[1] - h[1]) < 1e-12);
            CHECK(std::abs(pair.h[2] - h[2]) < 1e-12);
            const auto [a2, a3] = formula_coefficients(kind, pair, params, P);
            CHECK(std::abs(a2 - f[2]) < 1e-12);
            CHECK(std::abs(a3 - f[3]) < 1e-12);
        }
    }

    TEST_CASE("scan reports are deterministic and independent of grouping and threads")
    {
        ScanConfig base;
        base.samples = 120;
        base.order = 32;
        std::vector<ScanConfig> cfgs;
        for (const ClassKind kind : kinds) {
            for (const double b : {0.5, 2.0}) {
                ScanConfig c = base;
                c.kind = kind;
                c.params = ClassParams{ConicParams{1.0, 0.8, 0.2}, QParameter(0.9), b};
                c.mu_list = {0.0, 2.0};
                cfgs.push_back(c);
            }
        }
        const auto group = run_scans(cfgs);
        REQUIRE(group.size() == cfgs.size());
        for (std::size_t i = 0; i < cfgs.size(); ++i) {
            CHECK(report_json(group[i], false) == report_json(run_scan(cfgs[i]), false));
            auto threaded = cfgs[i];
            threaded.jobs = 3;
            CHECK(report_json(group[i], false) == report_json(run_scan(threaded), false));
        }
        CHECK(reports_json(group, false) == reports_json(run_scans(cfgs), false));
        CHECK(report_json(group[0]).find("elapsed_seconds") != std::string::npos);
        CHECK(report_json(group[0], false).find("elapsed_seconds") == std::string::npos);
    }

    TEST_CASE("scan bookkeeping")
    {
        ScanConfig cfg;
        cfg.params = ClassParams{ConicParams{1.0, 1.0, 0.0}, QParameter(0.5), 1.0};
        cfg.samples = 200;
        cfg.mu_list = {0.0, 1.0};
        const auto r = run_scan(cfg);
        CHECK(r.samples == 200);
        CHECK(r.accepted + r.rejected_f_side + r.rejected_g_side + r.rejected_truncation + r.rejected_numerical == 200);
        CHECK(r.accepted > 0);
        CHECK(r.oracle_pairs == r.accepted);
        CHECK(r.oracle_failures == 0);
        CHECK(r.oracle_max_residual <= kOracleTolerance);
        CHECK(r.two_way_failures == 0);
        CHECK(r.max_two_way_delta <= 1e-8);
        CHECK(r.functionals.size() == 4);
        CHECK(r.P1 == doctest::Approx(8 / (std::numbers::pi * std::numbers::pi)));
        const auto json = report_json(r, false);
        for (const char *key : {"\"max_ratio\"", "\"accepted\"", "\"worst_case\"", "\"violations\"", "\"printed_form_deviation\""}) {
            CHECK(json.find(key) != std::string::npos);
        }

        cfg.until_accepted = true;
        cfg.samples = 50;
        const auto u = run_scan(cfg);
        CHECK(u.accepted == 50);

        ScanConfig bad = cfg;
        bad.samples = 0;
        CHECK_THROWS(run_scan(bad));
        bad = cfg;
        bad.mu_list.clear();
        CHECK_THROWS(run_scan(bad));
    }

    TEST_CASE("convex-type scans carry both a2 variants")
    {
        ScanConfig cfg;
        cfg.kind = ClassKind::convex;
        cfg.params = ClassParams{ConicParams{2.0, 1.0, 0.0}, QParameter(0.9), 2.0};
        cfg.samples = 50;
        const auto r = run_scan(cfg);
        REQUIRE(r.functionals.size() == 4);
        CHECK(r.functionals[0].name == "a2");
        CHECK(r.functionals[1].name == "a2_without_b");
        CHECK(*r.functionals[0].bound != doctest::Approx(*r.functionals[1].bound));
    }

    TEST_CASE("violations are recorded and replayable")
    {
        ScanConfig cfg;
        cfg.kind = ClassKind::convex;
        cfg.params = ClassParams{ConicParams{1.0, 1.0, 0.0}, QParameter(0.5), 1.0};
        cfg.samples = 300;
        cfg.bound_scale = 0.05;
        const auto r = run_scan(cfg);
        REQUIRE(r.has_violations());
        CHECK(r.violations.size() == std::min<std::size_t>(r.violation_count, VerificationReport::kMaxListedViolations));
        CHECK(r.max_ratio > 1.0);
        const auto &w = r.worst_case;
        const auto replay = replay_sample(cfg, w.index);
        CHECK(replay.status == SampleOutcome::Status::accepted);
        CHECK(replay.a2 == w.a2);
        CHECK(replay.a3 == w.a3);
        CHECK(replay.atoms.size() == w.atoms.size());
        // the scaled scan sees the same members
        cfg.bound_scale = 1.0;
        const auto plain = run_scan(cfg);
        CHECK(plain.accepted == r.accepted);
        CHECK(plain.max_ratio == doctest::Approx(r.max_ratio * 0.05));
    }

    TEST_CASE("nothing accepted")
    {
        ScanConfig cfg;
        cfg.samples = 20;
        cfg.grid.tail_tolerance = 0.0;
        const auto r = run_scan(cfg);
        CHECK(r.accepted == 0);
        CHECK(r.rejected_truncation == 20);
        CHECK_THROWS_AS(scan_bounds(cfg), NoAcceptedSamples);
    }

    TEST_CASE("rounding to 12 significant digits")
    {
        CHECK(round12(1.0 / 3.0) == 0.333333333333);
        CHECK(round12(2.0) == 2.0);
        CHECK(round12(-123456.7890123456) == -123456.789012);
        CHECK(std::isnan(round12(std::nan(""))));
    }

    TEST_CASE("default scan box")
    {
        const auto params = default_scan_params();
        CHECK(params.size() == 108);
        const auto box = default_scan_box(ClassKind::convex);
        CHECK(box.size() == 108);
        CHECK(box.front().mu_list == default_mu_list());
        CHECK(box.back().kind == ClassKind::convex);
    }
}
