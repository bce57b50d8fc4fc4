#include <qconic/errors.hpp>
#include <qconic/harness.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <thread>

namespace qconic
{

double relative_gap(cplx x, cplx y)
{
    return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
}

double OracleResult::max_residual() const
{
    double m = 0.0;
    for (const auto &r : identities) {
        if (std::isnan(r.residual)) {
            return r.residual;
        }
        m = std::max(m, r.residual);
    }
    return m;
}

const IdentityResidual *OracleResult::worst() const
{
    const IdentityResidual *w = nullptr;
    for (const auto &r : identities) {
        if (!w || std::isnan(r.residual) || r.residual > w->residual) {
            w = &r;
            if (std::isnan(r.residual)) {
                break;
            }
        }
    }
    return w;
}

namespace
{

// Both proofs share one shape once the bracket combinations are named:
//   (1/b) c1 a2 = P1 h1 / 2,   (1/b)(T3 a3 - T2 a2^2) = second-order target term.
struct ClassConstants
{
    double b2, b3;
    double c1, T2, T3;
};

ClassConstants class_constants(ClassKind kind, QParameter q)
{
    const double b2 = sym_q_bracket(2, q), b3 = sym_q_bracket(3, q);
    if (kind == ClassKind::starlike) {
        return {b2, b3, b2 - 1.0, b2 - 1.0, b3 - 1.0};
    }
    return {b2, b3, b2, b2 * b2, b2 * b3};
}

void check_pair_input(const ComplexSeries &h, const ComplexSeries &qser, const ExtremalCoeffs &P)
{
    if (h.order() < 2 || qser.order() < 2) {
        throw std::invalid_argument("the proof oracle needs h and q up to order 2");
    }
    if (P.count() < 2) {
        throw std::invalid_argument("the proof oracle needs P1 and P2");
    }
    if (std::abs(h[0] - 1.0) > 1e-12 || std::abs(qser[0] - 1.0) > 1e-12) {
        throw std::invalid_argument("Caratheodory series need constant term 1");
    }
    if (std::abs(h[1] + qser[1]) > 1e-8 * std::max(1.0, std::abs(h[1]))) {
        throw InconsistentInput("h1 and q1 must satisfy h1 = -q1");
    }
}

OracleResult run_oracle(ClassKind kind, const ComplexSeries &h, const ComplexSeries &qser, const ClassParams &params,
                        const ExtremalCoeffs &P, std::span<const double> mus)
{
    check_pair_input(h, qser, P);
    const auto K = class_constants(kind, params.q);
    const cplx b = params.b;
    const double P1 = P(1), P2 = P(2);
    const cplx h1 = h[1], h2 = h[2], q1 = qser[1], q2 = qser[2];

    // a2, a3 straight from the class recurrence driven by h.
    const ComplexSeries f =
        member_from_target(kind, make_target(P, schwarz_from_caratheodory(h.truncated(2)), 2), params);
    const cplx a2 = f[2], a3 = f[3];
    const cplx a2sq = a2 * a2;

    OracleResult out;
    const auto identity = [&](const char *name, cplx lhs, cplx rhs) {
        out.identities.push_back({name, relative_gap(lhs, rhs)});
    };
    const auto erratum = [&](const char *name, cplx printed, cplx derived) {
        out.errata.push_back({name, printed, derived, relative_gap(printed, derived)});
    };

    identity("a2_linear", K.c1 * a2 / b, P1 * h1 / 2.0);
    identity("a2_linear_mirror", -K.c1 * a2 / b, P1 * q1 / 2.0);
    identity("h1_mirror", h1, -q1);
    identity("f_second_order", (K.T3 * a3 - K.T2 * a2sq) / b, P1 / 2.0 * (h2 - h1 * h1 / 2.0) + P2 * h1 * h1 / 4.0);
    identity("g_second_order", (K.T3 * (2.0 * a2sq - a3) - K.T2 * a2sq) / b,
             P1 / 2.0 * (q2 - q1 * q1 / 2.0) + P2 * q1 * q1 / 4.0);
    const cplx sum_sq = h1 * h1 + q1 * q1;
    identity("h1_sum_squares", sum_sq, 8.0 * K.c1 * K.c1 * a2sq / (P1 * P1 * b * b));

    const cplx D = b * P1 * P1 * (K.T3 - K.T2) + (P1 - P2) * K.c1 * K.c1;
    const cplx P1cube_b2 = P1 * P1 * P1 * b * b;
    identity("a2_squared", a2sq, P1cube_b2 * (h2 + q2) / (4.0 * D));
    const cplx diff_term = b * P1 * (h2 - q2) / (4.0 * K.T3);
    identity("a3_difference", a3, a2sq + diff_term);
    identity("a3_expanded", a3, P1 * P1 * b * b * sum_sq / (8.0 * K.c1 * K.c1) + diff_term);
    const auto split = [&](cplx sv) { return b * P1 / (4.0 * K.T3) * (h2 * (1.0 + sv) + q2 * (sv - 1.0)); };
    for (double mu : mus) {
        const cplx s = (1.0 - mu) * P1 * P1 * b * K.T3 / D;
        identity("fekete_szego_split", a3 - mu * a2sq, split(s));
    }

    // The printed closed forms, compared against the values they should equal.
    const double b2 = K.b2, b3 = K.b3;
    // bracket of the printed Fekete-Szego weight
    cplx Ds;
    if (kind == ClassKind::starlike) {
        const cplx Dp = P1 * P1 * b * (b3 - b2) + 2.0 * (P1 - P2) * (b2 - 1.0) * (b2 - 1.0);
        erratum("a2_squared", P1cube_b2 * (h2 + q2) / (4.0 * Dp), a2sq);
        erratum("a3_expanded", P1cube_b2 * sum_sq / (8.0 * K.c1 * K.c1) + diff_term, a3);
        Ds = Dp;
    } else {
        erratum("h1_sum_squares", 4.0 * b2 * b2 * a2sq / (P1 * P1 * b * b), sum_sq);
        const cplx Dp = 2.0 * b2 * (b3 - b2) * P1 * P1 + b2 * b2 * (P1 - P2);
        erratum("a2_squared", P1cube_b2 * (h2 + q2) / (4.0 * Dp), a2sq);
        Ds = 2.0 * b2 * (b3 - b2) * b * P1 * P1 + b2 * b2 * (P1 - P2);
    }
    for (double mu : mus) {
        const cplx s = (1.0 - mu) * P1 * P1 * b * K.T3 / D;
        const cplx sp = P1 * P1 * b * (1.0 - mu) / (4.0 * Ds);
        erratum("s", sp, s);
        erratum("fekete_szego_split", split(sp), a3 - mu * a2sq);
    }
    return out;
}

} // namespace

OracleResult proof_oracle_st(const ComplexSeries &h, const ComplexSeries &qser, const ClassParams &params,
                             const ExtremalCoeffs &P, double mu)
{
    return run_oracle(ClassKind::starlike, h, qser, params, P, std::span<const double>(&mu, 1));
}

OracleResult proof_oracle_ucv(const ComplexSeries &h, const ComplexSeries &qser, const ClassParams &params,
                              const ExtremalCoeffs &P, double mu)
{
    return run_oracle(ClassKind::convex, h, qser, params, P, std::span<const double>(&mu, 1));
}

OracleResult proof_oracle(ClassKind kind, const ComplexSeries &h, const ComplexSeries &qser,
                          const ClassParams &params, const ExtremalCoeffs &P, double mu)
{
    return run_oracle(kind, h, qser, params, P, std::span<const double>(&mu, 1));
}

OracleResult proof_oracle(ClassKind kind, const ComplexSeries &h, const ComplexSeries &qser,
                          const ClassParams &params, const ExtremalCoeffs &P, std::span<const double> mus)
{
    return run_oracle(kind, h, qser, params, P, mus);
}

namespace
{

ComplexSeries caratheodory_of(ClassKind kind, const ComplexSeries &f3, const ClassParams &params,
                              const ExtremalCoeffs &P)
{
    return caratheodory_from_schwarz(schwarz_from_target(P, subordination_expression(kind, f3, params)));
}

} // namespace

CaratheodoryPair recover_pair(ClassKind kind, const ComplexSeries &f, const ClassParams &params,
                              const ExtremalCoeffs &P)
{
    const ComplexSeries f3 = f.truncated(3);
    return {caratheodory_of(kind, f3, params, P), caratheodory_of(kind, revert(f3), params, P)};
}

CaratheodoryPair pair_from_h(ClassKind kind, const ComplexSeries &h, const ClassParams &params,
                             const ExtremalCoeffs &P)
{
    const ComplexSeries h2 = h.truncated(2);
    const ComplexSeries f = member_from_target(kind, make_target(P, schwarz_from_caratheodory(h2), 2), params);
    return {h2, caratheodory_of(kind, revert(f), params, P)};
}

std::pair<cplx, cplx> formula_coefficients(ClassKind kind, const CaratheodoryPair &pair, const ClassParams &params,
                                           const ExtremalCoeffs &P)
{
    const auto K = class_constants(kind, params.q);
    const cplx b = params.b;
    const double P1 = P(1);
    const cplx a2 = b * P1 * pair.h[1] / (2.0 * K.c1);
    const cplx a3 = a2 * a2 + b * P1 * (pair.h[2] - pair.q[2]) / (4.0 * K.T3);
    return {a2, a3};
}

// ---------------------------------------------------------------------------
// Monte Carlo scan

namespace
{

struct Functional
{
    std::string name;
    std::optional<double> mu;
    std::optional<double> bound;
};

struct ScanSetup
{
    ExtremalCoeffs P;
    std::vector<Functional> functionals;
    std::string bound_error;
};

std::optional<double> try_bound(const std::function<double()> &fn, std::string &error, double scale)
{
    try {
        return fn() * scale;
    } catch (const NonpositiveDenominator &e) {
        if (error.empty()) {
            error = e.what();
        }
        return std::nullopt;
    }
}

void check_config(const ScanConfig &cfg)
{
    validate(cfg.params);
    if (cfg.params.b.imag() != 0.0 || !(cfg.params.b.real() > 0.0)) {
        throw InvalidParameters("the scan needs a real b > 0");
    }
    if (cfg.samples < 1) {
        throw InvalidParameters("samples must be >= 1");
    }
    if (cfg.order < 4) {
        throw InvalidParameters("scan order must be >= 4");
    }
    if (cfg.mu_list.empty()) {
        throw InvalidParameters("the scan needs at least one mu");
    }
}

ScanSetup make_setup(const ScanConfig &cfg)
{
    ScanSetup s;
    // Radius 0.9 keeps the top coefficients well above rounding noise.
    s.P = extremal_coeffs(cfg.params.conic, cfg.order - 1, 0.9, 4096);
    const auto in0 = make_bound_inputs(cfg.params, s.P, cfg.mu_list.front());
    const double sc = cfg.bound_scale;
    if (cfg.kind == ClassKind::starlike) {
        s.functionals.push_back({"a2", std::nullopt, try_bound([&] { return st_a2_bound(in0); }, s.bound_error, sc)});
        s.functionals.push_back({"a3", std::nullopt, try_bound([&] { return st_a3_bound(in0); }, s.bound_error, sc)});
    } else {
        s.functionals.push_back({"a2", std::nullopt, try_bound([&] { return ucv_a2_bound(in0); }, s.bound_error, sc)});
        s.functionals.push_back(
            {"a2_without_b", std::nullopt, try_bound([&] { return ucv_a2_bound_without_b(in0); }, s.bound_error, sc)});
        s.functionals.push_back({"a3", std::nullopt, try_bound([&] { return ucv_a3_bound(in0); }, s.bound_error, sc)});
    }
    for (double mu : cfg.mu_list) {
        const auto in = make_bound_inputs(cfg.params, s.P, mu);
        const auto fn = [&] {
            return cfg.kind == ClassKind::starlike ? st_fekete_szego_bound(in) : ucv_fekete_szego_bound(in);
        };
        s.functionals.push_back({"fekete_szego", mu, try_bound(fn, s.bound_error, sc)});
    }
    return s;
}

constexpr double kInverseGrowthLimit = 1e3;

// One draw shared by every configuration on the same conic domain.
struct Draw
{
    std::vector<HerglotzAtom> atoms;
    std::optional<ComplexSeries> target;
};

Draw make_draw(std::uint64_t seed, long index, AtomRadius mode, const ExtremalCoeffs &P, int order)
{
    Draw d;
    Rng rng = sample_stream(seed, 0, static_cast<std::uint64_t>(index));
    const int atoms = draw_atom_count(rng);
    const double radius = draw_atom_radius(rng, mode);
    const auto hs = draw_herglotz(rng, atoms, radius);
    d.atoms = hs.atoms;
    try {
        d.target = make_target(P, schwarz_from_caratheodory(caratheodory_series(hs, order - 1)), order - 1);
    } catch (const error &) {
        d.target.reset();
    }
    return d;
}

void merge_errata(std::vector<std::pair<std::string, double>> &into, const std::string &name, double dev)
{
    for (auto &[n, d] : into) {
        if (n == name) {
            d = std::max(d, dev);
            return;
        }
    }
    into.emplace_back(name, dev);
}

SampleOutcome evaluate(const ScanConfig &cfg, const ScanSetup &setup, const Draw &draw)
{
    using Status = SampleOutcome::Status;
    SampleOutcome out;
    out.atoms = draw.atoms;
    if (!draw.target) {
        out.status = Status::numerical;
        return out;
    }
    try {
        const ComplexSeries f = member_from_target(cfg.kind, *draw.target, cfg.params);
        out.a2 = f[2];
        out.a3 = f[3];
        const auto f_side = check_expression(subordination_expression(cfg.kind, f, cfg.params), cfg.params.conic,
                                             cfg.grid);
        if (!f_side.inside) {
            out.status = Status::rejected_f_side;
            return out;
        }
        // An inverse whose coefficients already outgrow r^-n cannot pass the tail test.
        const auto g_opt = revert_bounded(f, cfg.grid.max_radius, kInverseGrowthLimit);
        if (!g_opt) {
            out.status = Status::truncation;
            return out;
        }
        const ComplexSeries &g = *g_opt;
        const auto g_side = check_expression(subordination_expression(cfg.kind, g, cfg.params), cfg.params.conic,
                                             cfg.grid);
        if (!g_side.inside) {
            out.status = Status::rejected_g_side;
            return out;
        }
        out.status = Status::accepted;

        const auto pair = recover_pair(cfg.kind, f, cfg.params, setup.P);
        const auto [a2f, a3f] = formula_coefficients(cfg.kind, pair, cfg.params, setup.P);
        out.two_way_delta = std::max(relative_gap(out.a2, a2f), relative_gap(out.a3, a3f));

        const auto oracle = proof_oracle(cfg.kind, pair.h, pair.q, cfg.params, setup.P, cfg.mu_list);
        out.oracle_residual = oracle.max_residual();
        out.oracle_worst = oracle.worst() ? oracle.worst()->name : "";
        for (const auto &e : oracle.errata) {
            merge_errata(out.errata, e.name, e.deviation);
        }
    } catch (const TruncationUnreliable &) {
        out.status = Status::truncation;
    } catch (const error &) {
        out.status = Status::numerical;
    }
    return out;
}

// Single reducer: folds outcomes strictly in index order.
struct Reducer
{
    const ScanConfig &cfg;
    const ScanSetup &setup;
    VerificationReport &rep;

    void fold(long index, const SampleOutcome &o)
    {
        ++rep.samples;
        switch (o.status) {
        case SampleOutcome::Status::rejected_f_side:
            ++rep.rejected_f_side;
            return;
        case SampleOutcome::Status::rejected_g_side:
            ++rep.rejected_g_side;
            return;
        case SampleOutcome::Status::truncation:
            ++rep.rejected_truncation;
            return;
        case SampleOutcome::Status::numerical:
            ++rep.rejected_numerical;
            return;
        case SampleOutcome::Status::accepted:
            break;
        }
        ++rep.accepted;

        rep.max_two_way_delta = std::max(rep.max_two_way_delta, o.two_way_delta);
        if (!(o.two_way_delta <= cfg.two_way_tolerance)) {
            ++rep.two_way_failures;
        }
        ++rep.oracle_pairs;
        if (!std::isnan(rep.oracle_max_residual)
            && (std::isnan(o.oracle_residual) || o.oracle_residual > rep.oracle_max_residual)) {
            rep.oracle_max_residual = o.oracle_residual;
            rep.oracle_worst_identity = o.oracle_worst;
        }
        if (!(o.oracle_residual <= cfg.oracle_tolerance)) {
            ++rep.oracle_failures;
        }
        for (const auto &[name, dev] : o.errata) {
            merge_errata(rep.errata_max_deviation, name, dev);
        }

        for (std::size_t k = 0; k < setup.functionals.size(); ++k) {
            const auto &fn = setup.functionals[k];
            auto &sum = rep.functionals[k];
            double value = 0.0;
            if (fn.mu) {
                value = std::abs(o.a3 - *fn.mu * o.a2 * o.a2);
            } else if (fn.name == "a3") {
                value = std::abs(o.a3);
            } else {
                value = std::abs(o.a2);
            }
            sum.max_value = std::max(sum.max_value, value);
            if (!fn.bound) {
                continue;
            }
            const double ratio = value / *fn.bound;
            if (sum.worst_index < 0 || ratio > sum.max_ratio) {
                sum.max_ratio = ratio;
                sum.worst_index = index;
            }
            if (rep.worst_case.index < 0 || ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.worst_case = {index, fn.name, fn.mu, ratio, o.a2, o.a3, o.atoms};
            }
            if (ratio > 1.0 + cfg.tolerance) {
                ++sum.violations;
                ++rep.violation_count;
                if (rep.violations.size() < VerificationReport::kMaxListedViolations) {
                    rep.violations.push_back({fn.name, fn.mu, index, value, *fn.bound, ratio});
                }
            }
        }
    }
};

std::string default_experiment(const ScanConfig &cfg)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << to_string(cfg.kind) << " k=" << cfg.params.conic.k << " alpha=" << cfg.params.conic.alpha
       << " beta=" << cfg.params.conic.beta << " q=" << cfg.params.q.value() << " b=" << cfg.params.b.real();
    return os.str();
}

VerificationReport empty_report(const ScanConfig &cfg, const ScanSetup &setup)
{
    VerificationReport rep;
    rep.experiment = cfg.experiment.empty() ? default_experiment(cfg) : cfg.experiment;
    rep.kind = cfg.kind;
    rep.params = cfg.params;
    rep.mu_list = cfg.mu_list;
    rep.seed = cfg.seed;
    rep.order = cfg.order;
    rep.tolerance = cfg.tolerance;
    rep.bound_scale = cfg.bound_scale;
    rep.bound_error = setup.bound_error;
    rep.P1 = setup.P(1);
    rep.P2 = setup.P(2);
    rep.P3 = setup.P(3);
    for (const auto &fn : setup.functionals) {
        FunctionalSummary s;
        s.name = fn.name;
        s.mu = fn.mu;
        s.bound = fn.bound;
        rep.functionals.push_back(s);
    }
    return rep;
}

bool same_conic(const ConicParams &a, const ConicParams &b)
{
    return a.k == b.k && a.alpha == b.alpha && a.beta == b.beta;
}

// Scans configurations that share conic domain, seed, order and atom radius
// mode. Each draw's subordination target is built once and handed to every
// configuration still short of its quota; every report equals what a solo
// run_scan of that configuration produces.
std::vector<VerificationReport> scan_group(const std::vector<ScanConfig> &cfgs)
{
    const auto t0 = std::chrono::steady_clock::now();
    const ScanConfig &lead = cfgs.front();
    std::vector<ScanSetup> setups;
    std::vector<VerificationReport> reps;
    std::vector<long> caps;
    for (const auto &cfg : cfgs) {
        check_config(cfg);
        if (!same_conic(cfg.params.conic, lead.params.conic) || cfg.seed != lead.seed || cfg.order != lead.order
            || cfg.atom_radius != lead.atom_radius) {
            throw std::invalid_argument("scan_group needs one conic domain, seed, order and radius mode");
        }
        setups.push_back(make_setup(cfg));
        reps.push_back(empty_report(cfg, setups.back()));
        caps.push_back(cfg.until_accepted ? (cfg.max_draws > 0 ? cfg.max_draws : 100 * cfg.samples) : cfg.samples);
    }
    const ExtremalCoeffs &P = setups.front().P;
    const std::size_t n_cfg = cfgs.size();
    std::vector<char> done(n_cfg, 0);
    const auto finished = [&](std::size_t c, long next_index) {
        return next_index >= caps[c] || (cfgs[c].until_accepted && reps[c].accepted >= cfgs[c].samples);
    };

    const int jobs = std::max(1, lead.jobs);
    const long chunk = 64L * jobs;
    std::vector<std::vector<SampleOutcome>> buf(n_cfg);
    for (long first = 0;; first += chunk) {
        std::vector<std::size_t> active;
        for (std::size_t c = 0; c < n_cfg; ++c) {
            if (!done[c] && !finished(c, first)) {
                active.push_back(c);
            } else {
                done[c] = 1;
            }
        }
        if (active.empty()) {
            break;
        }
        long max_cap = 0;
        for (auto c : active) {
            max_cap = std::max(max_cap, caps[c]);
        }
        const long n = std::min(chunk, max_cap - first);
        for (auto c : active) {
            buf[c].assign(static_cast<std::size_t>(n), SampleOutcome{});
        }
        const auto work = [&](long i) {
            const Draw draw = make_draw(lead.seed, first + i, lead.atom_radius, P, lead.order);
            for (auto c : active) {
                if (first + i < caps[c]) {
                    buf[c][static_cast<std::size_t>(i)] = evaluate(cfgs[c], setups[c], draw);
                }
            }
        };
        if (jobs <= 1 || n < 2) {
            for (long i = 0; i < n; ++i) {
                work(i);
            }
        } else {
            std::atomic<long> next{0};
            std::vector<std::jthread> pool;
            for (int w = 0; w < std::min<long>(jobs, n); ++w) {
                pool.emplace_back([&] {
                    for (long i = next++; i < n; i = next++) {
                        work(i);
                    }
                });
            }
        }
        for (auto c : active) {
            Reducer reducer{cfgs[c], setups[c], reps[c]};
            for (long i = 0; i < n && !finished(c, first + i); ++i) {
                reducer.fold(first + i, buf[c][static_cast<std::size_t>(i)]);
            }
        }
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto &r : reps) {
        r.elapsed_seconds = elapsed;
    }
    return reps;
}

} // namespace

VerificationReport run_scan(const ScanConfig &cfg)
{
    return scan_group({cfg}).front();
}

std::vector<VerificationReport> run_scans(const std::vector<ScanConfig> &cfgs)
{
    // Group by conic domain (and the draw settings), keeping the input order in the output.
    std::vector<VerificationReport> out(cfgs.size());
    std::vector<char> taken(cfgs.size(), 0);
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
        if (taken[i]) {
            continue;
        }
        std::vector<std::size_t> members;
        for (std::size_t j = i; j < cfgs.size(); ++j) {
            if (!taken[j] && same_conic(cfgs[j].params.conic, cfgs[i].params.conic) && cfgs[j].seed == cfgs[i].seed
                && cfgs[j].order == cfgs[i].order && cfgs[j].atom_radius == cfgs[i].atom_radius) {
                members.push_back(j);
                taken[j] = 1;
            }
        }
        std::vector<ScanConfig> group;
        for (auto j : members) {
            group.push_back(cfgs[j]);
        }
        auto reps = scan_group(group);
        for (std::size_t m = 0; m < members.size(); ++m) {
            out[members[m]] = std::move(reps[m]);
        }
    }
    return out;
}

VerificationReport scan_bounds(const ScanConfig &cfg)
{
    auto rep = run_scan(cfg);
    if (rep.accepted == 0) {
        throw NoAcceptedSamples("no constructed member passed both membership checks (" + rep.experiment + ")");
    }
    return rep;
}

SampleOutcome replay_sample(const ScanConfig &cfg, long index)
{
    check_config(cfg);
    const auto setup = make_setup(cfg);
    return evaluate(cfg, setup, make_draw(cfg.seed, index, cfg.atom_radius, setup.P, cfg.order));
}

// ---------------------------------------------------------------------------
// JSON

std::vector<ClassParams> default_scan_params()
{
    std::vector<ClassParams> out;
    for (const double k : {0.0, 0.5, 1.0, 2.0}) {
        for (const auto &[alpha, beta] : {std::pair{1.0, 0.0}, {0.8, 0.2}, {0.6, 0.1}}) {
            for (const double q : {0.5, 0.9, 0.999}) {
                for (const double b : {0.5, 1.0, 2.0}) {
                    out.push_back(ClassParams{ConicParams{k, alpha, beta}, QParameter(q), b});
                }
            }
        }
    }
    return out;
}

std::vector<double> default_mu_list()
{
    return {-2.0, 0.0, 0.5, 1.0, 2.0};
}

std::vector<ScanConfig> default_scan_box(ClassKind kind, const ScanConfig &base)
{
    std::vector<ScanConfig> out;
    for (const auto &params : default_scan_params()) {
        ScanConfig cfg = base;
        cfg.kind = kind;
        cfg.params = params;
        cfg.mu_list = default_mu_list();
        out.push_back(std::move(cfg));
    }
    return out;
}

double round12(double x)
{
    if (!std::isfinite(x) || x == 0.0) {
        return x == 0.0 ? 0.0 : x;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return std::strtod(buf, nullptr);
}

namespace
{

using ojson = nlohmann::ordered_json;

ojson num(double x)
{
    return std::isfinite(x) ? ojson(round12(x)) : ojson(nullptr);
}

ojson opt_num(const std::optional<double> &x)
{
    return x ? num(*x) : ojson(nullptr);
}

ojson complex_json(cplx z)
{
    return ojson::array({num(z.real()), num(z.imag())});
}

ojson report_object(const VerificationReport &r, bool include_timing)
{
    ojson j;
    j["experiment"] = r.experiment;
    j["class"] = to_string(r.kind);
    j["k"] = num(r.params.conic.k);
    j["alpha"] = num(r.params.conic.alpha);
    j["beta"] = num(r.params.conic.beta);
    j["q"] = num(r.params.q.value());
    j["b"] = num(r.params.b.real());
    ojson mus = ojson::array();
    for (double mu : r.mu_list) {
        mus.push_back(num(mu));
    }
    j["mu_list"] = mus;
    j["seed"] = r.seed;
    j["order"] = r.order;
    j["samples"] = r.samples;
    j["accepted"] = r.accepted;
    j["rejected_f_side"] = r.rejected_f_side;
    j["rejected_g_side"] = r.rejected_g_side;
    j["rejected_truncation"] = r.rejected_truncation;
    j["rejected_numerical"] = r.rejected_numerical;
    j["tolerance"] = num(r.tolerance);
    j["bound_scale"] = num(r.bound_scale);
    j["bound_error"] = r.bound_error.empty() ? ojson(nullptr) : ojson(r.bound_error);
    j["P1"] = num(r.P1);
    j["P2"] = num(r.P2);
    j["P3"] = num(r.P3);
    j["max_ratio"] = num(r.max_ratio);

    ojson wc;
    wc["index"] = r.worst_case.index;
    wc["functional"] = r.worst_case.functional;
    wc["mu"] = opt_num(r.worst_case.mu);
    wc["ratio"] = num(r.worst_case.ratio);
    wc["a2"] = complex_json(r.worst_case.a2);
    wc["a3"] = complex_json(r.worst_case.a3);
    ojson atoms = ojson::array();
    for (const auto &a : r.worst_case.atoms) {
        atoms.push_back({{"weight", num(a.weight)}, {"radius", num(std::abs(a.point))}, {"angle", num(std::arg(a.point))}});
    }
    wc["atoms"] = atoms;
    j["worst_case"] = wc;

    ojson fns = ojson::array();
    for (const auto &f : r.functionals) {
        ojson o;
        o["name"] = f.name;
        o["mu"] = opt_num(f.mu);
        o["bound"] = opt_num(f.bound);
        o["max_value"] = num(f.max_value);
        o["max_ratio"] = num(f.max_ratio);
        o["worst_index"] = f.worst_index;
        o["violations"] = f.violations;
        fns.push_back(o);
    }
    j["functionals"] = fns;
    j["violation_count"] = r.violation_count;
    ojson vs = ojson::array();
    for (const auto &v : r.violations) {
        ojson o;
        o["functional"] = v.functional;
        o["mu"] = opt_num(v.mu);
        o["index"] = v.index;
        o["seed"] = r.seed;
        o["value"] = num(v.value);
        o["bound"] = num(v.bound);
        o["ratio"] = num(v.ratio);
        vs.push_back(o);
    }
    j["violations"] = vs;
    j["max_two_way_delta"] = num(r.max_two_way_delta);
    j["two_way_failures"] = r.two_way_failures;
    j["oracle_pairs"] = r.oracle_pairs;
    j["oracle_max_residual"] = num(r.oracle_max_residual);
    j["oracle_worst_identity"] = r.oracle_worst_identity;
    j["oracle_failures"] = r.oracle_failures;
    ojson errata = ojson::object();
    for (const auto &[name, dev] : r.errata_max_deviation) {
        errata[name] = num(dev);
    }
    j["printed_form_deviation"] = errata;
    if (include_timing) {
        j["elapsed_seconds"] = num(r.elapsed_seconds);
    }
    return j;
}

} // namespace

std::string report_json(const VerificationReport &r, bool include_timing, int indent)
{
    return report_object(r, include_timing).dump(indent);
}

std::string reports_json(const std::vector<VerificationReport> &rs, bool include_timing, int indent)
{
    ojson arr = ojson::array();
    for (const auto &r : rs) {
        arr.push_back(report_object(r, include_timing));
    }
    return arr.dump(indent);
}

} // namespace qconic
