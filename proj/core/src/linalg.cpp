#include "dcc/linalg.hpp"

#include <algorithm>

namespace dcc {

std::vector<std::uint32_t> rref(const Fq& F, FMatrix& m) {
    std::vector<std::uint32_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        const fe piv_inv = F.inv(m[row][col]);
        for (std::size_t j = col; j < cols; ++j) m[row][j] = F.mul(m[row][j], piv_inv);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            const fe factor = m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] = F.sub(m[i][j], F.mul(factor, m[row][j]));
        }
        pivots.push_back(static_cast<std::uint32_t>(col));
        ++row;
    }
    return pivots;
}

std::uint32_t rank(const Fq& F, FMatrix m) {
    return static_cast<std::uint32_t>(rref(F, m).size());
}

FMatrix row_basis(const Fq& F, const FMatrix& rows) {
    FMatrix m = rows;
    auto pivots = rref(F, m);
    m.resize(pivots.size());
    return m;
}

bool in_row_space(const Fq& F, const FMatrix& echelon, const std::vector<std::uint32_t>& pivots,
                  FRow v) {
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const fe c = v[pivots[i]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = F.sub(v[j], F.mul(c, echelon[i][j]));
    }
    return std::all_of(v.begin(), v.end(), [](fe x) { return x == 0; });
}

void EchelonAccum::reduce(FRow& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const fe c = v[pivots_[i]];
        if (c == 0) continue;
        for (std::size_t j = pivots_[i]; j < v.size(); ++j)
            v[j] = F_->sub(v[j], F_->mul(c, rows_[i][j]));
    }
}

bool EchelonAccum::add(FRow v) {
    reduce(v);
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0) ++lead;
    if (lead == v.size()) return false;
    const fe inv = F_->inv(v[lead]);
    for (std::size_t j = lead; j < v.size(); ++j) v[j] = F_->mul(v[j], inv);
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), static_cast<std::uint32_t>(lead));
    const std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, static_cast<std::uint32_t>(lead));
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
    return true;
}

bool EchelonAccum::contains(FRow v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](fe x) { return x == 0; });
}

std::optional<FRow> solve_left(const Fq& F, const FMatrix& m, const FRow& v) {
    // Solve x*M = v by reducing the transposed augmented system.
    const std::size_t rows = m.size();
    if (rows == 0) {
        if (std::all_of(v.begin(), v.end(), [](fe x) { return x == 0; })) return FRow{};
        return std::nullopt;
    }
    const std::size_t cols = m[0].size();
    FMatrix aug(cols, FRow(rows + 1, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) aug[j][i] = m[i][j];
    for (std::size_t j = 0; j < cols; ++j) aug[j][rows] = v[j];
    auto pivots = rref(F, aug);
    FRow x(rows, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == rows) return std::nullopt; // inconsistent
        x[pivots[i]] = aug[i][rows];
    }
    return x;
}

} // namespace dcc
