#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dcc/gf.hpp"

namespace dcc {

/// Dense row-major matrix over a field context (codes packed per Fq).
using FRow = std::vector<fe>;
using FMatrix = std::vector<FRow>;

/// In-place reduced row echelon form. Returns the pivot column per pivot row
/// (so .size() is the rank); zero rows are moved to the bottom.
std::vector<std::uint32_t> rref(const Fq& F, FMatrix& m);

std::uint32_t rank(const Fq& F, FMatrix m);

/// Independent spanning subset of the given rows, echelonized.
FMatrix row_basis(const Fq& F, const FMatrix& rows);

/// Is v in the row space of an echelonized basis (as produced by rref)?
bool in_row_space(const Fq& F, const FMatrix& echelon, const std::vector<std::uint32_t>& pivots,
                  FRow v);

/// Solve x * M = v for x (row vector convention). M need not be square.
std::optional<FRow> solve_left(const Fq& F, const FMatrix& m, const FRow& v);

// Incremental row-echelon accumulator: rows kept sorted by pivot column with
// pivots normalized to 1. Pivot columns form the lexicographically first
// independent column subset of the accumulated row space.
class EchelonAccum {
public:
    explicit EchelonAccum(const Fq& F) : F_(&F) {}

    /// Adds v to the span; returns true if the rank grew.
    bool add(FRow v);
    bool contains(FRow v) const;
    std::uint32_t rank() const { return static_cast<std::uint32_t>(rows_.size()); }
    const FMatrix& rows() const { return rows_; }
    const std::vector<std::uint32_t>& pivots() const { return pivots_; }

private:
    void reduce(FRow& v) const;

    const Fq* F_;
    FMatrix rows_;
    std::vector<std::uint32_t> pivots_; // ascending
};

} // namespace dcc
