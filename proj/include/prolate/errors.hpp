#ifndef PROLATE_ERRORS_HPP
#define PROLATE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace prolate {

// Input validation failures (CLI exit code 2).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical failures (CLI exit code 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotUnitary : ValidationError {
    explicit NotUnitary(const std::string& what) : ValidationError(what) {}
};
struct RankDeficient : ValidationError {
    explicit RankDeficient(const std::string& what) : ValidationError(what) {}
};
struct NotSelfOrthogonal : ValidationError {
    explicit NotSelfOrthogonal(const std::string& what) : ValidationError(what) {}
};
struct ProjectionSingular : NumericalError {
    explicit ProjectionSingular(const std::string& what) : NumericalError(what) {}
};
struct TruncationTooShort : ValidationError {
    explicit TruncationTooShort(const std::string& what) : ValidationError(what) {}
};
struct OutOfRadius : ValidationError {
    explicit OutOfRadius(const std::string& what) : ValidationError(what) {}
};
struct NoConvergence : NumericalError {
    explicit NoConvergence(const std::string& what) : NumericalError(what) {}
};
struct NotSymmetric : ValidationError {
    explicit NotSymmetric(const std::string& what) : ValidationError(what) {}
};
struct NotConverged : NumericalError {
    explicit NotConverged(const std::string& what) : NumericalError(what) {}
};
struct GridMismatch : ValidationError {
    explicit GridMismatch(const std::string& what) : ValidationError(what) {}
};
struct MarchFailure : NumericalError {
    explicit MarchFailure(const std::string& what) : NumericalError(what) {}
};
struct MatchSingular : NumericalError {
    explicit MatchSingular(const std::string& what) : NumericalError(what) {}
};
struct ScanTooCoarse : NumericalError {
    explicit ScanTooCoarse(const std::string& what) : NumericalError(what) {}
};
struct NotAnEigenvalue : ValidationError {
    explicit NotAnEigenvalue(const std::string& what) : ValidationError(what) {}
};
struct IsIdentity : ValidationError {
    explicit IsIdentity(const std::string& what) : ValidationError(what) {}
};
struct DegenerateEigenvalue : NumericalError {
    explicit DegenerateEigenvalue(const std::string& what) : NumericalError(what) {}
};

}  // namespace prolate

#endif  // PROLATE_ERRORS_HPP
