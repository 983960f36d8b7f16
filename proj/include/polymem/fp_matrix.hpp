#ifndef POLYMEM_FP_MATRIX_HPP
#define POLYMEM_FP_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polymem/prime_field.hpp"

namespace polymem {

using FpVec = std::vector<std::uint64_t>;

// Dense matrix over F_p with exact rank / kernel / solve via Gauss-Jordan
// elimination. Pivoting picks the first nonzero entry in column order; field
// arithmetic needs no magnitude pivoting, and a fixed rule keeps every result
// (including particular solutions and kernel bases) deterministic.
class FpMatrix {
public:
    FpMatrix(std::size_t rows, std::size_t cols, PrimeField field)
        : rows_(rows), cols_(cols), field_(field), a_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const PrimeField& field() const { return field_; }

    std::uint64_t& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint64_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    void set_row(std::size_t i, const FpVec& row) {
        for (std::size_t j = 0; j < cols_; ++j) at(i, j) = row[j];
    }

    // Reduced row echelon form in place; returns the pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t sel = r;
            while (sel < rows_ && at(sel, c) == 0) ++sel;
            if (sel == rows_) continue;
            if (sel != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
            const std::uint64_t piv_inv = field_.inv(at(r, c));
            for (std::size_t j = c; j < cols_; ++j) at(r, j) = field_.mul(at(r, j), piv_inv);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || at(i, c) == 0) continue;
                const std::uint64_t f = at(i, c);
                for (std::size_t j = c; j < cols_; ++j)
                    at(i, j) = field_.sub(at(i, j), field_.mul(f, at(r, j)));
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        FpMatrix m = *this;
        return m.rref().size();
    }

    FpVec apply(const FpVec& x) const {
        FpVec y(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && x[j] != 0) acc = field_.add(acc, field_.mul(at(i, j), x[j]));
            y[i] = acc;
        }
        return y;
    }

    // Basis of the right null space; size = cols - rank. Basis vectors carry a
    // 1 in their free column, so they are the canonical RREF kernel basis.
    std::vector<FpVec> kernel_basis() const {
        FpMatrix m = *this;
        const auto pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<FpVec> basis;
        for (std::size_t free_c = 0; free_c < cols_; ++free_c) {
            if (is_pivot[free_c]) continue;
            FpVec v(cols_, 0);
            v[free_c] = 1;
            for (std::size_t r = 0; r < pivots.size(); ++r)
                v[pivots[r]] = field_.neg(m.at(r, free_c));
            basis.push_back(std::move(v));
        }
        return basis;
    }

    struct Solution {
        FpVec particular;          // free variables set to zero
        std::vector<FpVec> kernel; // basis of homogeneous solutions
    };

    // Solve M x = b. Infeasible systems are a normal outcome (nullopt).
    std::optional<Solution> solve(const FpVec& b) const {
        FpMatrix aug(rows_, cols_ + 1, field_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        const auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        Solution s;
        s.particular.assign(cols_, 0);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            s.particular[pivots[r]] = aug.at(r, cols_);
        s.kernel = kernel_basis();
        return s;
    }

private:
    std::size_t rows_, cols_;
    PrimeField field_;
    std::vector<std::uint64_t> a_;
};

// Row-reduce a list of coefficient vectors and keep a canonical independent
// spanning subset (the nonzero RREF rows).
inline std::vector<FpVec> independent_rows(const std::vector<FpVec>& vecs, std::size_t width,
                                           const PrimeField& field) {
    if (vecs.empty()) return {};
    FpMatrix m(vecs.size(), width, field);
    for (std::size_t i = 0; i < vecs.size(); ++i) m.set_row(i, vecs[i]);
    const auto pivots = m.rref();
    std::vector<FpVec> out;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        FpVec row(width);
        for (std::size_t j = 0; j < width; ++j) row[j] = m.at(r, j);
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace polymem

#endif
