// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qch {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation requested outside a chart's declared domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A computed quantity came out NaN or infinite.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

/// Input tensor violates a required symmetry or shape constraint.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Metric not invertible (or not positive-definite where required).
class SingularMetricError : public Error {
public:
    using Error::Error;
};

/// Spanning vectors of a distribution are (numerically) dependent.
class DegenerateDistributionError : public Error {
public:
    using Error::Error;
};

/// Eigenvalue structure lacks the simple eigenvalue a recovery needs.
class NoSimpleEigenvalueError : public Error {
public:
    using Error::Error;
};

/// Candidate endomorphism fails J^2 = -Id at tolerance.
class NotComplexStructureError : public Error {
public:
    using Error::Error;
};

/// A matrix expected to be positive-definite is not.
class NotPositiveError : public Error {
public:
    using Error::Error;
};

/// Family parameters outside the admissible range.
class BadParameterError : public Error {
public:
    using Error::Error;
};

/// Probe grid detected a non-Riemannian signature.
class SignatureError : public Error {
public:
    using Error::Error;
};

/// A direction argument was the zero vector.
class ZeroVectorError : public Error {
public:
    using Error::Error;
};

/// A linear solve degraded beyond the admissible condition number.
class IllConditionedError : public Error {
public:
    using Error::Error;
};

/// A stated precondition of an identity check does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

} // namespace qch
