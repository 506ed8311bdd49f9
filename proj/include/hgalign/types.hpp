#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <stdexcept>
#include <string>
#include <vector>

namespace hgalign {

using Real = double;
using Index = Eigen::Index;

// Row-major storage: similarity matrices are iterated and updated row-wise
// (query entity per row), and coeff() lookups binary-search within a row.
using SpMat = Eigen::SparseMatrix<Real, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<Real>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (hypergraph files, alignment files).
struct FormatError : Error {
    using Error::Error;
};

// Non-conformal matrix dimensions or out-of-range ids.
struct DimensionError : Error {
    using Error::Error;
};

// Domain violations: undefined means, empty subsets, invalid configuration,
// oracle size caps.
struct DomainError : Error {
    using Error::Error;
};

// Iterative method hit its iteration cap; carries the last residual so the
// caller can decide whether the partial answer is usable.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, Real residual)
        : Error(what), residual(residual) {}
    Real residual;
};

// --- small sparse helpers (free functions, Eigen expression style) ---

Real frobenius_inner(const SpMat& a, const SpMat& b);

Vec row_sums(const SpMat& m);
Vec col_sums(const SpMat& m);

// Per-row / per-column maximum over stored entries; zero for empty rows/cols.
// Entries are never negative in this codebase, so 0 is a safe identity.
Vec row_max(const SpMat& m);
Vec col_max(const SpMat& m);

// Submatrix by index selection. rows/cols list the kept old indices in the
// order they take in the result.
SpMat submatrix(const SpMat& m, const std::vector<Index>& rows,
                const std::vector<Index>& cols);

// Drops stored entries with value < eps, and exact zeros regardless of eps
// (the sparse contract forbids stored zeros).
void prune_below(SpMat& m, Real eps);

Index nonzero_count(const SpMat& m);

}  // namespace hgalign
