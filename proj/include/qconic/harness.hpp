#pragma once

#include <qconic/bounds.hpp>
#include <qconic/classes.hpp>
#include <qconic/conic.hpp>
#include <qconic/sampler.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qconic
{

inline constexpr double kOracleTolerance = 1e-10;

/// |x - y| / max(1, |x|, |y|).
double relative_gap(cplx x, cplx y);

struct IdentityResidual
{
    std::string name;
    double residual = 0.0;
};

/// A printed closed form that disagrees with the value forced by the
/// coefficient equations. Reported, never counted as a residual.
struct Erratum
{
    std::string name;
    cplx printed{};
    cplx derived{};
    double deviation = 0.0;
};

struct OracleResult
{
    std::vector<IdentityResidual> identities;
    std::vector<Erratum> errata;

    double max_residual() const;
    const IdentityResidual *worst() const;
    bool passed(double tol = kOracleTolerance) const
    {
        return max_residual() <= tol;
    }
};

/// Checks the coefficient identities of the starlike-type proof on a pair
/// (h, q) of Caratheodory series, h for f and q for its inverse. a2 and a3 are
/// rebuilt from h through the class recurrence. Throws InconsistentInput when
/// h_1 != -q_1.
OracleResult proof_oracle_st(const ComplexSeries &h, const ComplexSeries &qser, const ClassParams &params,
                             const ExtremalCoeffs &P, double mu = 0.0);
OracleResult proof_oracle_ucv(const ComplexSeries &h, const ComplexSeries &qser, const ClassParams &params,
                              const ExtremalCoeffs &P, double mu = 0.0);
OracleResult proof_oracle(ClassKind kind, const ComplexSeries &h, const ComplexSeries &qser,
                          const ClassParams &params, const ExtremalCoeffs &P, double mu = 0.0);
/// One pass over several weights: a Fekete-Szego identity (and printed-form
/// comparison) per mu.
OracleResult proof_oracle(ClassKind kind, const ComplexSeries &h, const ComplexSeries &qser,
                          const ClassParams &params, const ExtremalCoeffs &P, std::span<const double> mus);

struct CaratheodoryPair
{
    ComplexSeries h; // f side
    ComplexSeries q; // inverse side
};

/// Recovers (h, q) at order 2 from the expressions of a normalized f and of
/// its inverse. This is what makes a pair valid: both series come from the
/// same member.
CaratheodoryPair recover_pair(ClassKind kind, const ComplexSeries &f, const ClassParams &params,
                              const ExtremalCoeffs &P);

/// Pair for a given h: builds f from h through the recurrence (order 3) and
/// recovers q from its inverse.
CaratheodoryPair pair_from_h(ClassKind kind, const ComplexSeries &h, const ClassParams &params,
                             const ExtremalCoeffs &P);

/// a2 and a3 from the proof formulas (linear equation in h1, then the
/// difference of the two second-order equations).
std::pair<cplx, cplx> formula_coefficients(ClassKind kind, const CaratheodoryPair &pair, const ClassParams &params,
                                           const ExtremalCoeffs &P);

struct ScanConfig
{
    ClassKind kind = ClassKind::starlike;
    ClassParams params;
    std::vector<double> mu_list{0.0};
    long samples = 1000;    // draws, or accepted members when until_accepted
    bool until_accepted = false;
    long max_draws = 0;     // cap for until_accepted; 0 means 100 * samples
    std::uint64_t seed = 1;
    int order = 48;         // truncation order of the members
    AtomRadius atom_radius = AtomRadius::mixed;
    DiskGrid grid;
    int jobs = 1;
    double tolerance = 1e-9;
    double bound_scale = 1.0; // test hook: multiplies every bound
    double two_way_tolerance = 1e-8;
    double oracle_tolerance = kOracleTolerance; // test hook as well: 0 fails every pair
    std::string experiment;
};

struct FunctionalSummary
{
    std::string name; // a2, a2_without_b, a3, fekete_szego
    std::optional<double> mu;
    std::optional<double> bound;
    double max_value = 0.0;
    double max_ratio = 0.0;
    long worst_index = -1;
    long violations = 0;
};

struct Violation
{
    std::string functional;
    std::optional<double> mu;
    long index = 0;
    double value = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
};

struct WorstCase
{
    long index = -1;
    std::string functional;
    std::optional<double> mu;
    double ratio = 0.0;
    cplx a2{};
    cplx a3{};
    std::vector<HerglotzAtom> atoms;
};

struct VerificationReport
{
    std::string experiment;
    ClassKind kind = ClassKind::starlike;
    ClassParams params;
    std::vector<double> mu_list;
    std::uint64_t seed = 0;
    int order = 0;
    long samples = 0; // draws
    long accepted = 0;
    long rejected_f_side = 0;
    long rejected_g_side = 0;
    long rejected_truncation = 0;
    long rejected_numerical = 0;
    double tolerance = 0.0;
    double bound_scale = 1.0;
    std::string bound_error; // NonpositiveDenominator message, empty when the bounds exist
    double P1 = 0.0, P2 = 0.0, P3 = 0.0;
    double max_ratio = 0.0;
    WorstCase worst_case;
    std::vector<FunctionalSummary> functionals;
    long violation_count = 0;
    std::vector<Violation> violations; // first kMaxListedViolations by index
    double max_two_way_delta = 0.0;
    long two_way_failures = 0;
    long oracle_pairs = 0;
    double oracle_max_residual = 0.0;
    std::string oracle_worst_identity;
    long oracle_failures = 0;
    std::vector<std::pair<std::string, double>> errata_max_deviation;
    double elapsed_seconds = 0.0;

    static constexpr std::size_t kMaxListedViolations = 100;

    bool has_violations() const noexcept
    {
        return violation_count > 0;
    }
};

/// Monte Carlo scan; never throws for zero acceptances.
VerificationReport run_scan(const ScanConfig &cfg);

/// Several scans at once. Configurations on the same conic domain (with the
/// same seed, order and radius mode) share each draw's subordination target;
/// each report is identical to a solo run_scan of its configuration.
std::vector<VerificationReport> run_scans(const std::vector<ScanConfig> &cfgs);

/// run_scan, then NoAcceptedSamples when nothing was accepted.
VerificationReport scan_bounds(const ScanConfig &cfg);

/// Outcome of one draw, exposed so a recorded (seed, index) can be replayed.
struct SampleOutcome
{
    enum class Status { accepted, rejected_f_side, rejected_g_side, truncation, numerical };
    Status status = Status::numerical;
    std::vector<HerglotzAtom> atoms;
    cplx a2{};
    cplx a3{};
    double two_way_delta = 0.0;
    double oracle_residual = 0.0;
    std::string oracle_worst;
    std::vector<std::pair<std::string, double>> errata;
};

SampleOutcome replay_sample(const ScanConfig &cfg, long index);

/// The box used by the acceptance scan: k in {0, 0.5, 1, 2}, (alpha, beta) in
/// {(1, 0), (0.8, 0.2), (0.6, 0.1)}, q in {0.5, 0.9, 0.999}, b in {0.5, 1, 2},
/// mu in {-2, 0, 0.5, 1, 2}. 108 configurations per class, k varying slowest.
std::vector<ClassParams> default_scan_params();
std::vector<double> default_mu_list();
/// One ScanConfig per box point, `base` supplying everything but the
/// class parameters and the mu list.
std::vector<ScanConfig> default_scan_box(ClassKind kind, const ScanConfig &base = {});

/// 12 significant digits.
double round12(double x);

/// Flat JSON object for one report (numbers rounded to 12 significant
/// digits). Leaving out the timing makes equal configurations byte-identical.
std::string report_json(const VerificationReport &r, bool include_timing = true, int indent = 2);

/// JSON array of several reports.
std::string reports_json(const std::vector<VerificationReport> &rs, bool include_timing = true, int indent = 2);

} // namespace qconic
