#ifndef POLYMEM_QLINALG_HPP
#define POLYMEM_QLINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "polymem/rational.hpp"

namespace polymem {

using QVec = std::vector<Rational>;

// Small exact solver over Q for the geometric kernels: vertex computation,
// recession-cone rays, affine dimension. Sizes here are tiny (n <= 4).
class QMatrix {
public:
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t sel = r;
            while (sel < rows_ && at(sel, c) == 0) ++sel;
            if (sel == rows_) continue;
            if (sel != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
            const Rational piv = at(r, c);
            for (std::size_t j = c; j < cols_; ++j) at(r, j) /= piv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || at(i, c) == 0) continue;
                const Rational f = at(i, c);
                for (std::size_t j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        QMatrix m = *this;
        return m.rref().size();
    }

    std::vector<QVec> kernel_basis() const {
        QMatrix m = *this;
        const auto pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<QVec> basis;
        for (std::size_t free_c = 0; free_c < cols_; ++free_c) {
            if (is_pivot[free_c]) continue;
            QVec v(cols_, Rational(0));
            v[free_c] = 1;
            for (std::size_t r = 0; r < pivots.size(); ++r)
                v[pivots[r]] = -m.at(r, free_c);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Unique solution of a square full-rank system; nullopt when singular or
    // inconsistent, so callers can skip degenerate facet subsets.
    std::optional<QVec> solve_unique(const QVec& b) const {
        QMatrix aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        const auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        if (pivots.size() != cols_) return std::nullopt;
        QVec x(cols_);
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
        return x;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

}  // namespace polymem

#endif
