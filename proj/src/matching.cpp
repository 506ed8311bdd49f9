#include "hgalign/matching.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace hgalign {

namespace {

// Total order on entries: heavier first, then smaller row, then smaller col.
// Row-best and col-best pointers both follow it, so an entry best in both
// directions is unique and greedy commits are deterministic.
inline bool better(const MatchEdge& a, const MatchEdge& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.row != b.row) return a.row < b.row;
    return a.col < b.col;
}

}  // namespace

Matching dominant_match(const std::vector<MatchEdge>& entries, Index rows, Index cols) {
    std::vector<Index> live;  // indices into entries, positives only
    live.reserve(entries.size());
    for (Index k = 0; k < static_cast<Index>(entries.size()); ++k) {
        const MatchEdge& e = entries[k];
        if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
            throw DimensionError("dominant_match: entry index out of range");
        if (e.weight > 0) live.push_back(k);
    }

    // adjacency: entry indices per row / per col
    std::vector<std::vector<Index>> row_entries(rows), col_entries(cols);
    for (Index k : live) {
        row_entries[entries[k].row].push_back(k);
        col_entries[entries[k].col].push_back(k);
    }

    std::vector<char> row_done(rows, 0), col_done(cols, 0);
    std::vector<char> queued(rows, 0);
    std::deque<Index> work;
    for (Index r = 0; r < rows; ++r)
        if (!row_entries[r].empty()) { work.push_back(r); queued[r] = 1; }

    auto best_in_row = [&](Index r) -> Index {
        Index best = -1;
        for (Index k : row_entries[r])
            if (!col_done[entries[k].col] && (best < 0 || better(entries[k], entries[best])))
                best = k;
        return best;
    };
    auto best_in_col = [&](Index c) -> Index {
        Index best = -1;
        for (Index k : col_entries[c])
            if (!row_done[entries[k].row] && (best < 0 || better(entries[k], entries[best])))
                best = k;
        return best;
    };

    Matching out;
    auto wake_rows_of_col = [&](Index c) {
        for (Index k : col_entries[c]) {
            Index r = entries[k].row;
            if (!row_done[r] && !queued[r]) { work.push_back(r); queued[r] = 1; }
        }
    };

    while (!work.empty()) {
        Index r = work.front();
        work.pop_front();
        queued[r] = 0;
        if (row_done[r]) continue;
        Index k = best_in_row(r);
        if (k < 0) continue;
        Index c = entries[k].col;
        if (best_in_col(c) != k) continue;  // re-queued when the blocker dies
        row_done[r] = 1;
        col_done[c] = 1;
        out.pairs.push_back(entries[k]);
        out.total_weight += entries[k].weight;
        // a commit invalidates best pointers in every column r touched and in
        // column c; rows watching those columns get another look
        wake_rows_of_col(c);
        for (Index k2 : row_entries[r]) wake_rows_of_col(entries[k2].col);
    }

#ifndef NDEBUG
    for (Index k : live)
        assert(row_done[entries[k].row] || col_done[entries[k].col]);
#endif

    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const MatchEdge& a, const MatchEdge& b) { return a.row < b.row; });
    return out;
}

Matching dominant_match(const SpMat& w) {
    std::vector<MatchEdge> entries;
    entries.reserve(w.nonZeros());
    for (Index r = 0; r < w.outerSize(); ++r)
        for (SpMat::InnerIterator it(w, r); it; ++it)
            entries.push_back({it.row(), it.col(), it.value()});
    return dominant_match(entries, w.rows(), w.cols());
}

Real local_match_score(const SpMat& sim, const std::vector<Index>& rows,
                       const std::vector<Index>& cols) {
    if (rows.empty() || cols.empty()) return 0;
    std::vector<MatchEdge> entries;
    entries.reserve(rows.size() * cols.size());
    // local indices keep the ascending global order, so tie-breaks inside the
    // local problem agree with global ids
    for (Index li = 0; li < static_cast<Index>(rows.size()); ++li) {
        for (Index lj = 0; lj < static_cast<Index>(cols.size()); ++lj) {
            Real v = sim.coeff(rows[li], cols[lj]);
            if (v > 0) entries.push_back({li, lj, v});
        }
    }
    return dominant_match(entries, static_cast<Index>(rows.size()),
                          static_cast<Index>(cols.size()))
        .total_weight;
}

Real local_match_score(const SpMat& sim, const SpMat& bq, const SpMat& bd,
                       Index i, Index j, PairKind kind) {
    std::vector<Index> rows, cols;
    if (kind == PairKind::vertex) {
        if (i < 0 || i >= bq.rows() || j < 0 || j >= bd.rows())
            throw DimensionError("local_match_score: vertex id out of range");
        for (SpMat::InnerIterator it(bq, i); it; ++it) rows.push_back(it.col());
        for (SpMat::InnerIterator it(bd, j); it; ++it) cols.push_back(it.col());
    } else {
        if (i < 0 || i >= bq.cols() || j < 0 || j >= bd.cols())
            throw DimensionError("local_match_score: hyperedge id out of range");
        // column scan; convenience path only, hot loops precompute adjacency
        for (Index r = 0; r < bq.outerSize(); ++r)
            for (SpMat::InnerIterator it(bq, r); it; ++it)
                if (it.col() == i) rows.push_back(it.row());
        for (Index r = 0; r < bd.outerSize(); ++r)
            for (SpMat::InnerIterator it(bd, r); it; ++it)
                if (it.col() == j) cols.push_back(it.row());
    }
    return local_match_score(sim, rows, cols);
}

}  // namespace hgalign
