#pragma once

#include <stdexcept>
#include <string>

namespace kforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define KFORGE_ERROR(Name)                                   \
    class Name : public Error {                              \
    public:                                                  \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    };

KFORGE_ERROR(NotInvertible)
KFORGE_ERROR(RoundingOverflow)
KFORGE_ERROR(InvalidQuery)
KFORGE_ERROR(InvalidSplit)
KFORGE_ERROR(InvalidArgument)
KFORGE_ERROR(DegenerateParameters)
KFORGE_ERROR(MissingPrime)
KFORGE_ERROR(PoleHit)
KFORGE_ERROR(NotSquarefree)
KFORGE_ERROR(ExpressionMismatch)
KFORGE_ERROR(NotPositiveDefinite)
KFORGE_ERROR(TanPole)
KFORGE_ERROR(QuadratureNotConverged)
KFORGE_ERROR(UnknownSuite)

#undef KFORGE_ERROR

}  // namespace kforge
