#pragma once

#include <stdexcept>
#include <string>

namespace koszul {

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string &msg, int line, int col)
        : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
          line(line), col(col) {}
    int line;
    int col;
};

struct SingularMatrix : MathError {
    using MathError::MathError;
};
struct NotSimpleShape : MathError {
    using MathError::MathError;
};
struct NotKoszulDirection : MathError {
    using MathError::MathError;
};
struct OverlappingSets : MathError {
    using MathError::MathError;
};
struct InvalidType : MathError {
    using MathError::MathError;
};
struct IncompatibleTypes : MathError {
    using MathError::MathError;
};
struct NotBlockCompatible : MathError {
    using MathError::MathError;
};
struct NotLiftableShape : MathError {
    using MathError::MathError;
};
struct NotNonDegenerate : MathError {
    using MathError::MathError;
};
struct H0NotExact : MathError {
    using MathError::MathError;
};
struct NotSimple : MathError {
    using MathError::MathError;
};
struct ShapeMismatch : MathError {
    using MathError::MathError;
};
struct InvalidHNat : MathError {
    using MathError::MathError;
};
struct NotInvertible : MathError {
    using MathError::MathError;
};
struct NotStrictified : MathError {
    using MathError::MathError;
};
struct MixedTriangularity : MathError {
    using MathError::MathError;
};
struct UnknownSuite : MathError {
    using MathError::MathError;
};
struct InvalidParams : MathError {
    using MathError::MathError;
};

} // namespace koszul
