#pragma once

#include <stdexcept>
#include <string>

namespace padiclab {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define PADICLAB_ERROR(Name)                                              \
    struct Name : Error {                                                 \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

PADICLAB_ERROR(NonCauchy);
PADICLAB_ERROR(NonUnitLeadingTerm);
PADICLAB_ERROR(NonzeroConstantTerm);
PADICLAB_ERROR(FractionalLeadingExponent);
PADICLAB_ERROR(HeckeInconsistency);
PADICLAB_ERROR(MissingNormalization);
PADICLAB_ERROR(SingularCurve);
PADICLAB_ERROR(NoUnitDeterminant);
PADICLAB_ERROR(MembershipViolation);
PADICLAB_ERROR(BadReduction);
PADICLAB_ERROR(WitnessDisagreement);
PADICLAB_ERROR(ArgumentNotPAdicInteger);
PADICLAB_ERROR(BadDiscriminant);
PADICLAB_ERROR(PrecisionExhausted);
PADICLAB_ERROR(DivisionByNonUnit);
PADICLAB_ERROR(SingularSystem);
PADICLAB_ERROR(IndexNotIntegral);
PADICLAB_ERROR(BudgetExceeded);
PADICLAB_ERROR(ParseError);

#undef PADICLAB_ERROR

} // namespace padiclab
