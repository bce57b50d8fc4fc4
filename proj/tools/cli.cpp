#include "cli.hpp"

#include <qconic/bounds.hpp>
#include <qconic/conic.hpp>
#include <qconic/errors.hpp>
#include <qconic/harness.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace qconic::cli
{

namespace
{

using ojson = nlohmann::ordered_json;

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Options
{
    double k = 0.0;
    double alpha = 1.0;
    double beta = 0.0;
    double q = 0.5;
    double b = 1.0;
    std::vector<double> mu{0.0};
    long samples = 0; // 0: subcommand default
    std::uint64_t seed = 1;
    int order = 0;    // 0: subcommand default
    std::string output;
    std::string format;
    std::string cls = "both";
    std::string atom_radius = "mixed";
    int jobs = 0;
    double bound_scale = 1.0;
    double oracle_tolerance = kOracleTolerance;
    double extent = 4.0;
    bool until_accepted = false;
    bool no_timing = false;
    bool box = false;
};

std::string num(double x)
{
    if (!std::isfinite(x)) {
        return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", round12(x));
    return buf;
}

ConicParams conic_of(const Options &o)
{
    ConicParams p{o.k, o.alpha, o.beta};
    validate(p);
    return p;
}

ClassParams class_of(const Options &o)
{
    ClassParams p{conic_of(o), QParameter(o.q), cplx{o.b}};
    validate(p);
    if (!(o.b > 0.0)) {
        throw InvalidParameters("b must be > 0");
    }
    return p;
}

std::vector<ClassKind> kinds_of(const Options &o)
{
    if (o.cls == "st") {
        return {ClassKind::starlike};
    }
    if (o.cls == "ucv") {
        return {ClassKind::convex};
    }
    return {ClassKind::starlike, ClassKind::convex};
}

// Writes to --output when given, otherwise to `fallback`.
void emit(const Options &o, std::ostream &fallback, const std::string &text)
{
    if (o.output.empty() || o.output == "-") {
        fallback << text;
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) {
        throw IoError("cannot open " + o.output + " for writing");
    }
    f << text;
    f.close();
    if (!f) {
        throw IoError("write to " + o.output + " failed");
    }
}

// ---- bounds

struct BoundRow
{
    std::string cls;
    std::string functional;
    std::optional<double> mu;
    std::optional<double> value;
};

int cmd_bounds(const Options &o, std::ostream &out, std::ostream &err)
{
    const ClassParams params = class_of(o);
    const ExtremalCoeffs P = extremal_coeffs(params.conic, 3);

    std::vector<BoundRow> rows;
    std::vector<std::string> errors;
    const auto add = [&](const char *cls, std::string name, std::optional<double> mu, const std::function<double()> &fn) {
        BoundRow r{cls, std::move(name), mu, std::nullopt};
        try {
            r.value = fn();
        } catch (const NonpositiveDenominator &e) {
            if (std::find(errors.begin(), errors.end(), e.what()) == errors.end()) {
                errors.emplace_back(e.what());
            }
        }
        rows.push_back(std::move(r));
    };
    for (const ClassKind kind : kinds_of(o)) {
        const char *cls = to_string(kind);
        const BoundInputs in0 = make_bound_inputs(params, P, 0.0);
        const bool st = kind == ClassKind::starlike;
        add(cls, "a2", {}, [&] { return st ? st_a2_bound(in0) : ucv_a2_bound(in0); });
        if (!st) {
            add(cls, "a2_without_b", {}, [&] { return ucv_a2_bound_without_b(in0); });
        }
        add(cls, "a3", {}, [&] { return st ? st_a3_bound(in0) : ucv_a3_bound(in0); });
        for (const double mu : o.mu) {
            const BoundInputs in = make_bound_inputs(params, P, mu);
            add(cls, "s", mu, [&] { return st ? st_s(in) : ucv_s(in); });
            add(cls, "fekete_szego", mu, [&] { return st ? st_fekete_szego_bound(in) : ucv_fekete_szego_bound(in); });
        }
    }

    std::ostringstream os;
    const std::string format = o.format.empty() ? "table" : o.format;
    if (format == "json") {
        ojson j;
        j["k"] = o.k;
        j["alpha"] = o.alpha;
        j["beta"] = o.beta;
        j["q"] = o.q;
        j["b"] = o.b;
        j["branch"] = to_string(params.conic.branch());
        j["P"] = {round12(P(1)), round12(P(2)), round12(P(3))};
        ojson arr = ojson::array();
        for (const auto &r : rows) {
            ojson e;
            e["class"] = r.cls;
            e["functional"] = r.functional;
            e["mu"] = r.mu ? ojson(round12(*r.mu)) : ojson(nullptr);
            e["value"] = r.value ? ojson(round12(*r.value)) : ojson(nullptr);
            arr.push_back(std::move(e));
        }
        j["bounds"] = std::move(arr);
        j["errors"] = errors;
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        os << "class,functional,mu,value\n";
        for (int n = 1; n <= 3; ++n) {
            os << "extremal,P" << n << ",," << num(P(n)) << '\n';
        }
        for (const auto &r : rows) {
            os << r.cls << ',' << r.functional << ',' << (r.mu ? num(*r.mu) : "") << ','
               << (r.value ? num(*r.value) : "") << '\n';
        }
    } else {
        os << "k " << num(o.k) << "  alpha " << num(o.alpha) << "  beta " << num(o.beta) << "  branch "
           << to_string(params.conic.branch()) << '\n';
        os << "q " << num(o.q) << "  b " << num(o.b) << '\n';
        for (int n = 1; n <= 3; ++n) {
            os << 'P' << n << ' ' << num(P(n)) << '\n';
        }
        os << '\n' << std::left << std::setw(6) << "class" << std::setw(14) << "functional" << std::setw(8) << "mu"
           << "bound\n";
        for (const auto &r : rows) {
            os << std::setw(6) << r.cls << std::setw(14) << r.functional << std::setw(8)
               << (r.mu ? num(*r.mu) : "") << (r.value ? num(*r.value) : "n/a") << '\n';
        }
    }
    emit(o, out, os.str());
    for (const auto &e : errors) {
        err << "error: " << e << '\n';
    }
    return errors.empty() ? ok : nonpositive_denominator;
}

// ---- boundary

int cmd_boundary(const Options &o, std::ostream &out, std::ostream &)
{
    const ConicParams p = conic_of(o);
    const int count = o.samples > 0 ? static_cast<int>(o.samples) : 200;
    const auto pts = p.k == 0.0 ? boundary_line_points(p, count, o.extent) : boundary_points(p, count, o.extent);
    std::ostringstream os;
    if (o.format == "json") {
        ojson arr = ojson::array();
        for (const auto &pt : pts) {
            arr.push_back({{"u", pt.u}, {"v", pt.v}});
        }
        os << arr.dump(2) << '\n';
    } else {
        write_boundary_csv(os, pts);
    }
    emit(o, out, os.str());
    return ok;
}

// ---- extremal

int cmd_extremal(const Options &o, std::ostream &out, std::ostream &)
{
    constexpr double r1 = 0.5, r2 = 0.75;
    constexpr int nodes = 2048;
    const ConicParams p = conic_of(o);
    const int order = o.order > 0 ? o.order : 8;
    const ExtremalFunction fn(p);
    const auto A = extremal_coeffs(fn, order, r1, nodes);
    const auto B = extremal_coeffs(fn, order, r2, nodes);
    double worst = 0.0;

    std::ostringstream os;
    if (o.format == "json") {
        ojson j;
        j["branch"] = to_string(p.branch());
        j["radii"] = {r1, r2};
        ojson arr = ojson::array();
        for (int n = 1; n <= order; ++n) {
            const double d = std::abs(A(n) - B(n));
            worst = std::max(worst, d);
            arr.push_back({{"n", n}, {"P", round12(A(n))}, {"P_outer", round12(B(n))}, {"delta", round12(d)}});
        }
        j["coefficients"] = std::move(arr);
        j["max_delta"] = round12(worst);
        os << j.dump(2) << '\n';
    } else if (o.format == "csv") {
        os << "n,P,P_outer,delta\n";
        for (int n = 1; n <= order; ++n) {
            const double d = std::abs(A(n) - B(n));
            os << n << ',' << num(A(n)) << ',' << num(B(n)) << ',' << num(d) << '\n';
        }
    } else {
        os << "branch " << to_string(p.branch()) << "  radii " << r1 << ' ' << r2 << '\n';
        os << std::left << std::setw(4) << "n" << std::setw(22) << "P_n (r=0.5)" << std::setw(22) << "P_n (r=0.75)"
           << "delta\n";
        for (int n = 1; n <= order; ++n) {
            const double d = std::abs(A(n) - B(n));
            worst = std::max(worst, d);
            os << std::setw(4) << n << std::setw(22) << num(A(n)) << std::setw(22) << num(B(n)) << num(d) << '\n';
        }
        os << "max delta " << num(worst) << '\n';
    }
    emit(o, out, os.str());
    return ok;
}

// ---- verify

int cmd_verify(const Options &o, std::ostream &out, std::ostream &err)
{
    ScanConfig base;
    base.samples = o.samples > 0 ? o.samples : 1000;
    base.until_accepted = o.until_accepted;
    base.seed = o.seed;
    base.order = o.order > 0 ? o.order : base.order;
    base.atom_radius = o.atom_radius == "unit" ? AtomRadius::unit : AtomRadius::mixed;
    base.jobs = o.jobs > 0 ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
    base.bound_scale = o.bound_scale;
    base.oracle_tolerance = o.oracle_tolerance;

    std::vector<ScanConfig> cfgs;
    for (const ClassKind kind : kinds_of(o)) {
        if (o.box) {
            const auto box = default_scan_box(kind, base);
            cfgs.insert(cfgs.end(), box.begin(), box.end());
        } else {
            ScanConfig cfg = base;
            cfg.kind = kind;
            cfg.params = class_of(o);
            cfg.mu_list = o.mu;
            cfgs.push_back(std::move(cfg));
        }
    }

    const auto reports = run_scans(cfgs);
    emit(o, out, reports_json(reports, !o.no_timing) + "\n");

    // the summary goes to stderr when stdout carries the JSON
    std::ostream &log = (o.output.empty() || o.output == "-") ? err : out;
    bool implementation_failure = false;
    for (const auto &r : reports) {
        log << r.experiment << ": accepted " << r.accepted << '/' << r.samples << ", max_ratio " << num(r.max_ratio)
            << ", oracle max residual " << num(r.oracle_max_residual) << '\n';
        if (r.accepted == 0) {
            log << "NOTE: " << r.experiment << ": no accepted samples\n";
        }
        if (!r.bound_error.empty()) {
            log << "NOTE: " << r.experiment << ": " << r.bound_error << '\n';
        }
        if (r.has_violations()) {
            const auto &w = r.worst_case;
            log << "WARNING: " << r.experiment << ": " << r.violation_count << " bound violations; worst "
                << w.functional << (w.mu ? " mu=" + num(*w.mu) : std::string()) << " ratio " << num(w.ratio)
                << " (seed " << r.seed << ", index " << w.index << ")\n";
        }
        if (r.oracle_failures > 0 || r.two_way_failures > 0) {
            implementation_failure = true;
            log << "ERROR: " << r.experiment << ": " << r.oracle_failures << " oracle failures (worst "
                << r.oracle_worst_identity << "), " << r.two_way_failures << " two-way mismatches\n";
        }
    }
    return implementation_failure ? oracle_failure : ok;
}

void add_conic_flags(CLI::App *sub, Options &o)
{
    sub->add_option("--k", o.k, "conic parameter k >= 0")->capture_default_str();
    sub->add_option("--alpha", o.alpha, "alpha in (beta, 1]")->capture_default_str();
    sub->add_option("--beta", o.beta, "beta in [0, alpha)")->capture_default_str();
}

void add_class_flags(CLI::App *sub, Options &o)
{
    add_conic_flags(sub, o);
    sub->add_option("--q", o.q, "q in (0, 1)")->capture_default_str();
    sub->add_option("--b", o.b, "real b > 0")->capture_default_str();
    sub->add_option("--mu", o.mu, "Fekete-Szego weight(s)")->capture_default_str();
    sub->add_option("--class", o.cls, "st, ucv or both")
        ->check(CLI::IsMember({"st", "ucv", "both"}))
        ->capture_default_str();
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    Options o;
    CLI::App app{"coefficient bounds for q-starlike and q-convex bi-univalent classes over conic domains", "qconic"};
    app.require_subcommand(1);

    auto *bounds = app.add_subcommand("bounds", "closed-form bounds and s(mu) for both classes");
    add_class_flags(bounds, o);
    bounds->add_option("--format", o.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
    bounds->add_option("--output", o.output, "output file (default stdout)");

    auto *boundary = app.add_subcommand("boundary", "points on the boundary of the conic domain");
    add_conic_flags(boundary, o);
    boundary->add_option("--samples", o.samples, "number of points (default 200)");
    boundary->add_option("--extent", o.extent, "|v| range for unbounded branches")->capture_default_str();
    boundary->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    boundary->add_option("--output", o.output, "output file (default stdout)");

    auto *extremal = app.add_subcommand("extremal", "Taylor coefficients of the extremal function");
    add_conic_flags(extremal, o);
    extremal->add_option("--order", o.order, "number of coefficients (default 8)");
    extremal->add_option("--format", o.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
    extremal->add_option("--output", o.output, "output file (default stdout)");

    auto *verify = app.add_subcommand("verify", "Monte Carlo scan of the bounds plus the proof oracles");
    add_class_flags(verify, o);
    verify->add_option("--samples", o.samples, "draws per configuration (default 1000)");
    verify->add_flag("--until-accepted", o.until_accepted, "count accepted members instead of draws");
    verify->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    verify->add_option("--order", o.order, "series truncation order (default 48)");
    verify->add_option("--jobs", o.jobs, "worker threads (default: logical processors)");
    verify->add_option("--atom-radius", o.atom_radius, "unit or mixed")
        ->check(CLI::IsMember({"unit", "mixed"}))
        ->capture_default_str();
    verify->add_flag("--box", o.box, "scan the default parameter box instead of one configuration");
    verify->add_flag("--no-timing", o.no_timing, "leave elapsed_seconds out of the report");
    verify->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));
    verify->add_option("--output", o.output, "JSON report file (default stdout, summary then goes to stderr)");
    // test hooks: scale every bound (0.5 forces violations), tighten the oracle
    verify->add_option("--bound-scale", o.bound_scale)->group("");
    verify->add_option("--oracle-tolerance", o.oracle_tolerance)->group("");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return usage;
    }

    try {
        if (*bounds) {
            return cmd_bounds(o, out, err);
        }
        if (*boundary) {
            return cmd_boundary(o, out, err);
        }
        if (*extremal) {
            return cmd_extremal(o, out, err);
        }
        return cmd_verify(o, out, err);
    } catch (const InvalidParameters &e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const NonpositiveDenominator &e) {
        err << "error: " << e.what() << '\n';
        return nonpositive_denominator;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return io_error;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
}

} // namespace qconic::cli
