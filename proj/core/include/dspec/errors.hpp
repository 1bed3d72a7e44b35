#ifndef DSPEC_ERRORS_HPP
#define DSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dspec {

/// Base class of all exceptions thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define DSPEC_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                    \
    public:                                                        \
        explicit Name(const std::string& what) : Error(what) {}    \
    }

// graph construction
DSPEC_DEFINE_ERROR(NonPositiveMeasure);
DSPEC_DEFINE_ERROR(NegativeWeight);
DSPEC_DEFINE_ERROR(IndexOutOfRange);
DSPEC_DEFINE_ERROR(SelfLoop);
DSPEC_DEFINE_ERROR(DimensionMismatch);

// restriction / sets
DSPEC_DEFINE_ERROR(EmptyComplement);
DSPEC_DEFINE_ERROR(EmptySet);

// kernel builders
DSPEC_DEFINE_ERROR(InvalidAlpha);
DSPEC_DEFINE_ERROR(AsymmetricKernel);
DSPEC_DEFINE_ERROR(LowerBoundViolated);
DSPEC_DEFINE_ERROR(DisconnectedFromCenter);

// potential theory
DSPEC_DEFINE_ERROR(SingularSystem);
DSPEC_DEFINE_ERROR(NegativePotential);
DSPEC_DEFINE_ERROR(NonPositiveAlpha);

// spectral
DSPEC_DEFINE_ERROR(TooLargeForDense);
DSPEC_DEFINE_ERROR(ConvergenceFailure);
DSPEC_DEFINE_ERROR(NegativeTime);
DSPEC_DEFINE_ERROR(ExhaustionNotNested);
DSPEC_DEFINE_ERROR(SupportViolation);
DSPEC_DEFINE_ERROR(ZeroVector);

// stochastic
DSPEC_DEFINE_ERROR(InvalidSeedStream);
DSPEC_DEFINE_ERROR(UnboundedPotential);

// perturbations
DSPEC_DEFINE_ERROR(NegativeDensity);
DSPEC_DEFINE_ERROR(InadmissiblePerturbation);

// io / configuration
DSPEC_DEFINE_ERROR(ConfigError);

#undef DSPEC_DEFINE_ERROR

} // namespace dspec

#endif
