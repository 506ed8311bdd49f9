#include "hgalign/types.hpp"

#include <unordered_map>

namespace hgalign {

Real frobenius_inner(const SpMat& a, const SpMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("frobenius_inner: shape mismatch (" +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()) + ")");
    Real acc = 0;
    for (Index r = 0; r < a.outerSize(); ++r) {
        SpMat::InnerIterator ia(a, r), ib(b, r);
        // both iterators walk sorted column ids within the row
        while (ia && ib) {
            if (ia.col() < ib.col()) ++ia;
            else if (ib.col() < ia.col()) ++ib;
            else { acc += ia.value() * ib.value(); ++ia; ++ib; }
        }
    }
    return acc;
}

Vec row_sums(const SpMat& m) {
    Vec out = Vec::Zero(m.rows());
    for (Index r = 0; r < m.outerSize(); ++r)
        for (SpMat::InnerIterator it(m, r); it; ++it) out[it.row()] += it.value();
    return out;
}

Vec col_sums(const SpMat& m) {
    Vec out = Vec::Zero(m.cols());
    for (Index r = 0; r < m.outerSize(); ++r)
        for (SpMat::InnerIterator it(m, r); it; ++it) out[it.col()] += it.value();
    return out;
}

Vec row_max(const SpMat& m) {
    Vec out = Vec::Zero(m.rows());
    for (Index r = 0; r < m.outerSize(); ++r)
        for (SpMat::InnerIterator it(m, r); it; ++it)
            if (it.value() > out[it.row()]) out[it.row()] = it.value();
    return out;
}

Vec col_max(const SpMat& m) {
    Vec out = Vec::Zero(m.cols());
    for (Index r = 0; r < m.outerSize(); ++r)
        for (SpMat::InnerIterator it(m, r); it; ++it)
            if (it.value() > out[it.col()]) out[it.col()] = it.value();
    return out;
}

SpMat submatrix(const SpMat& m, const std::vector<Index>& rows,
                const std::vector<Index>& cols) {
    std::unordered_map<Index, Index> row_of, col_of;
    row_of.reserve(rows.size());
    col_of.reserve(cols.size());
    for (Index i = 0; i < static_cast<Index>(rows.size()); ++i) {
        if (rows[i] < 0 || rows[i] >= m.rows())
            throw DimensionError("submatrix: row index out of range");
        row_of[rows[i]] = i;
    }
    for (Index j = 0; j < static_cast<Index>(cols.size()); ++j) {
        if (cols[j] < 0 || cols[j] >= m.cols())
            throw DimensionError("submatrix: col index out of range");
        col_of[cols[j]] = j;
    }
    std::vector<Triplet> trips;
    for (Index r = 0; r < m.outerSize(); ++r) {
        for (SpMat::InnerIterator it(m, r); it; ++it) {
            auto ri = row_of.find(it.row());
            if (ri == row_of.end()) continue;
            auto ci = col_of.find(it.col());
            if (ci == col_of.end()) continue;
            trips.emplace_back(ri->second, ci->second, it.value());
        }
    }
    SpMat out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

void prune_below(SpMat& m, Real eps) {
    m.prune([eps](Index, Index, Real v) { return v != Real(0) && !(v < eps); });
}

Index nonzero_count(const SpMat& m) { return m.nonZeros(); }

}  // namespace hgalign
