#pragma once

#include <stdexcept>
#include <string>

namespace pathsum {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operand shapes are incompatible (product, sum, block scatter).
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A square matrix was required.
class NonSquare : public Error {
public:
    using Error::Error;
};

/// Elimination found no admissible pivot: exact zero column (exact mode) or
/// pivot magnitude below 1e-13 * ||A|| (float mode).
class Singular : public Error {
public:
    using Error::Error;
};

/// Elimination over the rational-function field found no nonzero pivot column.
class SingularOverField : public Error {
public:
    using Error::Error;
};

/// The permutation argument is not a bijection on the index set.
class InvalidPermutation : public Error {
public:
    using Error::Error;
};

/// Partition groups overlap, leave a gap, or index out of range.
class BadGroups : public Error {
public:
    using Error::Error;
};

/// Tensor dimensions do not multiply to the matrix size, or the split
/// position is out of range.
class BadDims : public Error {
public:
    using Error::Error;
};

/// More partition groups than the vertex-set word can address.
class TooManyGroups : public Error {
public:
    using Error::Error;
};

/// A walk query named a vertex that is deleted in the current subgraph.
class VertexRemoved : public Error {
public:
    using Error::Error;
};

/// A dressing bracket [B - sum of cycle terms] was singular, so a required
/// inverse does not exist at this evaluation point.
class SingularDressing : public Error {
public:
    using Error::Error;
};

/// A chain (block tridiagonal) recursion step required a singular inverse.
class SingularChain : public Error {
public:
    using Error::Error;
};

/// Operation is defined for exact scalars only (e.g. polynomial gcd).
class FloatModeUnsupported : public Error {
public:
    using Error::Error;
};

/// An iteration failed to reach its target within the cap (root finding,
/// quadrature-order doubling).
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Inverse Laplace transform requires degree(num) < degree(den).
class NotStrictlyProper : public Error {
public:
    using Error::Error;
};

/// Global matrix power of a nilpotent input has no analytic continuation.
class NilpotentUnsupported : public Error {
public:
    using Error::Error;
};

/// The adjacency input of the cost model is not a tree.
class NotATree : public Error {
public:
    using Error::Error;
};

/// Input text could not be parsed; carries 1-based line and column.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace pathsum
