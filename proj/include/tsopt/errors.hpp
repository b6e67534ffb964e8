#pragma once

#include <stdexcept>
#include <string>

namespace tsopt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZeroRealPart : Error {
    using Error::Error;
};

struct DegenerateCut : Error {
    using Error::Error;
};

struct DegenerateDenominator : Error {
    using Error::Error;
};

struct SingularElement : Error {
    using Error::Error;
};

struct SolverBreakdown : Error {
    using Error::Error;
};

struct DegenerateAngle : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace tsopt
