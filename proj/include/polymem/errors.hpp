#ifndef POLYMEM_ERRORS_HPP
#define POLYMEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polymem {

// Base class for all polymem errors so callers can catch the library as a whole.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};
struct NonPositiveFactor : Error {
    explicit NonPositiveFactor(const std::string& msg) : Error(msg) {}
};
struct Unbounded : Error {
    explicit Unbounded(const std::string& msg) : Error(msg) {}
};
struct ZeroDirection : Error {
    explicit ZeroDirection(const std::string& msg) : Error(msg) {}
};
struct WrongDimension : Error {
    explicit WrongDimension(const std::string& msg) : Error(msg) {}
};
struct OriginNotInterior : Error {
    explicit OriginNotInterior(const std::string& msg) : Error(msg) {}
};
struct InvalidFacet : Error {
    explicit InvalidFacet(const std::string& msg) : Error(msg) {}
};
struct ChainStalled : Error {
    explicit ChainStalled(const std::string& msg) : Error(msg) {}
};
struct EmptySupport : Error {
    explicit EmptySupport(const std::string& msg) : Error(msg) {}
};
struct ZeroCoordinate : Error {
    explicit ZeroCoordinate(const std::string& msg) : Error(msg) {}
};
struct SegmentBody : Error {
    explicit SegmentBody(const std::string& msg) : Error(msg) {}
};
struct GenericityFailure : Error {
    explicit GenericityFailure(const std::string& msg) : Error(msg) {}
};
struct NoSmoothPointFound : Error {
    explicit NoSmoothPointFound(const std::string& msg) : Error(msg) {}
};
struct LiftFailure : Error {
    explicit LiftFailure(const std::string& msg) : Error(msg) {}
};
struct NotFlagGeneric : Error {
    explicit NotFlagGeneric(const std::string& msg) : Error(msg) {}
};
struct MultiplicityUnreachable : Error {
    explicit MultiplicityUnreachable(const std::string& msg) : Error(msg) {}
};
struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(msg) {}
};

}  // namespace polymem

#endif
