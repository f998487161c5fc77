#pragma once

#include <stdexcept>
#include <string>

namespace imag {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define IMAG_DEFINE_ERROR(Name)                                       \
    struct Name : Error {                                             \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

IMAG_DEFINE_ERROR(NotHermitian);
IMAG_DEFINE_ERROR(NotSymmetric);
IMAG_DEFINE_ERROR(NotPSD);
IMAG_DEFINE_ERROR(NoConvergence);
IMAG_DEFINE_ERROR(DimensionMismatch);
IMAG_DEFINE_ERROR(BadTrace);
IMAG_DEFINE_ERROR(DegenerateDimension);
IMAG_DEFINE_ERROR(BadParameter);
IMAG_DEFINE_ERROR(NotTracePreserving);
IMAG_DEFINE_ERROR(BadEnsembleSize);
IMAG_DEFINE_ERROR(BadFidelity);
IMAG_DEFINE_ERROR(BadRegime);
IMAG_DEFINE_ERROR(ParseError);

#undef IMAG_DEFINE_ERROR

}  // namespace imag
