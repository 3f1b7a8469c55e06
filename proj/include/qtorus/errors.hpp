#pragma once

#include <stdexcept>
#include <string>

namespace qtorus {

// Base class for all engine errors. Verification failures are NOT errors
// (they are report entries); exceptions signal misuse or degenerate input.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define QTORUS_DEFINE_ERROR(Name)                                     \
    struct Name : Error {                                             \
        explicit Name(const std::string& m) : Error(#Name ": " + m) {} \
    }

QTORUS_DEFINE_ERROR(DegenerateDenominator);
QTORUS_DEFINE_ERROR(EvalPole);
QTORUS_DEFINE_ERROR(UnknownType);
QTORUS_DEFINE_ERROR(NotCartan);
QTORUS_DEFINE_ERROR(NotSymmetrizable);
QTORUS_DEFINE_ERROR(NegativeL);
QTORUS_DEFINE_ERROR(LatticeOutOfRange);
QTORUS_DEFINE_ERROR(MixedInstance);
QTORUS_DEFINE_ERROR(SubstitutionIntoShiftedSymbol);
QTORUS_DEFINE_ERROR(PoleOnSupport);
QTORUS_DEFINE_ERROR(NonSimplePole);
QTORUS_DEFINE_ERROR(NonLinearFactor);
QTORUS_DEFINE_ERROR(ConfigMismatch);
QTORUS_DEFINE_ERROR(NonIntegerExponent);
QTORUS_DEFINE_ERROR(OutOfRange);
QTORUS_DEFINE_ERROR(NumericPole);
QTORUS_DEFINE_ERROR(ConfigError);

#undef QTORUS_DEFINE_ERROR

}  // namespace qtorus
