#pragma once

#include <stdexcept>
#include <string>

namespace qconic
{

// Every failure raised by the library derives from qconic::error so callers
// (the CLI in particular) can map families of failures onto exit codes.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

#define QCONIC_DEFINE_ERROR(Name)                                                                                      \
    class Name : public error                                                                                          \
    {                                                                                                                  \
    public:                                                                                                            \
        using error::error;                                                                                            \
    }

// Parameter validation (ConicParams, ClassParams, QParameter, CLI flags).
QCONIC_DEFINE_ERROR(InvalidParameters);

// series
QCONIC_DEFINE_ERROR(DivisionBySeriesWithZeroConstantTerm);
QCONIC_DEFINE_ERROR(CompositionInnerConstantNonzero);
QCONIC_DEFINE_ERROR(ReversionRequiresNormalizedSeries);

// elliptic / conic
QCONIC_DEFINE_ERROR(ModulusOutOfRange);
QCONIC_DEFINE_ERROR(ArgumentOutOfRange);
QCONIC_DEFINE_ERROR(NoRootInInterval);
QCONIC_DEFINE_ERROR(ParameterDomainError);
QCONIC_DEFINE_ERROR(BranchEvaluationError);
QCONIC_DEFINE_ERROR(DegenerateBoundary);

// classes
QCONIC_DEFINE_ERROR(TruncationUnreliable);

// bounds
QCONIC_DEFINE_ERROR(NonpositiveDenominator);

// harness
QCONIC_DEFINE_ERROR(InconsistentInput);
QCONIC_DEFINE_ERROR(NoAcceptedSamples);

#undef QCONIC_DEFINE_ERROR

} // namespace qconic
