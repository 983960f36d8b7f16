#ifndef POLYMEM_OSCULATE_HPP
#define POLYMEM_OSCULATE_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polymem/errors.hpp"
#include "polymem/fp_matrix.hpp"
#include "polymem/lattice.hpp"
#include "polymem/rng.hpp"
#include "polymem/series.hpp"
#include "polymem/sparse_poly.hpp"

namespace polymem {

// Local branch of a plane curve f = 0 at a smooth point: y(z) with
// f(x0 + z, y(z)) = 0 mod z^N and dy-nondegenerate center.
struct BranchSeries {
    std::uint64_t x0 = 0;
    std::uint64_t y0 = 0;
    PowerSeries y;

    BranchSeries(PrimeField field, std::size_t prec) : y(field, prec) {}
    std::size_t precision() const { return y.precision(); }
};

namespace detail {

// (x0 + z)^{e0} * y(z)^{e1}, negative exponents through series inversion.
inline PowerSeries monomial_series(const BranchSeries& br, const Point& e) {
    const PrimeField& field = br.y.field();
    PowerSeries x(field, br.precision());
    x.set_coeff(0, br.x0);
    x.set_coeff(1, 1);
    return x.pow(e[0]) * br.y.pow(e[1]);
}

inline PowerSeries compose(const SparsePoly& f, const BranchSeries& br) {
    PowerSeries acc(f.field(), br.precision());
    for (const auto& [e, c] : f.terms()) acc = acc + monomial_series(br, e).scaled(c);
    return acc;
}

}  // namespace detail

// A torus point with f = 0 and df/dy != 0, found by a seeded scan over x
// values with a univariate root scan in y. The scan is deterministic in the
// seed; exhausting the field signals a degenerate f.
inline std::pair<std::uint64_t, std::uint64_t> find_smooth_point(const SparsePoly& f,
                                                                 std::uint64_t seed) {
    if (f.dim() != 2) throw WrongDimension("find_smooth_point: n must be 2");
    if (f.is_zero()) throw NoSmoothPointFound("find_smooth_point: zero polynomial");
    const PrimeField& field = f.field();
    const std::uint64_t p = field.modulus();
    if (p > 65521) throw InputError("find_smooth_point: prime too large for a field scan");

    std::int64_t min_ey = 0, max_ey = 0;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        if (first) {
            min_ey = max_ey = e[1];
            first = false;
        } else {
            min_ey = std::min(min_ey, e[1]);
            max_ey = std::max(max_ey, e[1]);
        }
    }
    const std::size_t deg = static_cast<std::size_t>(max_ey - min_ey);
    const SparsePoly fy = f.partial_derivative(1);

    auto power = [&](std::uint64_t base, std::int64_t e) {
        if (e >= 0) return field.pow(base, static_cast<std::uint64_t>(e));
        return field.pow(field.inv(base), static_cast<std::uint64_t>(-e));
    };

    Rng rng(seed);
    const std::uint64_t start = rng.below(p - 1);
    for (std::uint64_t k = 0; k < p - 1; ++k) {
        const std::uint64_t x0 = 1 + (start + k) % (p - 1);
        // coefficients of y^shift * f(x0, y) as a plain polynomial in y
        std::vector<std::uint64_t> u(deg + 1, 0);
        for (const auto& [e, c] : f.terms()) {
            const std::size_t idx = static_cast<std::size_t>(e[1] - min_ey);
            u[idx] = field.add(u[idx], field.mul(c, power(x0, e[0])));
        }
        for (std::uint64_t y0 = 1; y0 < p; ++y0) {
            std::uint64_t val = 0;
            for (std::size_t i = deg + 1; i-- > 0;) val = field.add(field.mul(val, y0), u[i]);
            if (val != 0) continue;
            if (fy.eval({x0, y0}) != 0) return {x0, y0};
        }
    }
    throw NoSmoothPointFound("find_smooth_point: exhausted the field (degenerate f; resample)");
}

// Lift y(z) to precision z^N by solving one coefficient per step against
// df/dy at the center; the residual is re-verified by substitution.
inline BranchSeries branch_series(const SparsePoly& f, std::pair<std::uint64_t, std::uint64_t> pt,
                                  std::size_t n_prec) {
    if (f.dim() != 2) throw WrongDimension("branch_series: n must be 2");
    if (n_prec < 2) throw InputError("branch_series: precision must be >= 2");
    const PrimeField& field = f.field();
    const auto [x0, y0] = pt;
    if (x0 % field.modulus() == 0 || y0 % field.modulus() == 0)
        throw ZeroCoordinate("branch_series: center must lie on the torus");
    if (f.eval({x0, y0}) != 0) throw LiftFailure("branch_series: center is not on the curve");
    const std::uint64_t dy = f.partial_derivative(1).eval({x0, y0});
    if (dy == 0) throw LiftFailure("branch_series: df/dy vanishes at the center");
    const std::uint64_t inv_dy = field.inv(dy);

    BranchSeries br(field, n_prec);
    br.x0 = x0;
    br.y0 = y0;
    br.y.set_coeff(0, y0);
    for (std::size_t j = 1; j < n_prec; ++j) {
        const PowerSeries res = detail::compose(f, br);
        const std::uint64_t r = res.coeff(j);
        if (r != 0) br.y.set_coeff(j, field.mul(field.neg(r), inv_dy));
    }
    if (detail::compose(f, br).order().has_value())
        throw LiftFailure("branch_series: residual not zero to the requested precision");
    return br;
}

// rows j = 0..N-1 are z-coefficients, columns the monomials of A in lex order.
inline FpMatrix coeff_matrix(const PointSet& a, const BranchSeries& br, std::size_t n_rows) {
    if (a.dim() != 2) throw WrongDimension("coeff_matrix: n must be 2");
    if (n_rows > br.precision()) throw InputError("coeff_matrix: more rows than branch precision");
    FpMatrix m(n_rows, a.size(), br.y.field());
    for (std::size_t c = 0; c < a.size(); ++c) {
        const PowerSeries s = detail::monomial_series(br, a[c]);
        for (std::size_t r = 0; r < n_rows; ++r) m.at(r, c) = s.coeff(r);
    }
    return m;
}

// Order of vanishing of g along the branch; nullopt = "at least N".
inline std::optional<std::size_t> multiplicity(const SparsePoly& g, const BranchSeries& br) {
    if (g.is_zero()) return std::nullopt;
    return detail::compose(g, br).order();
}

namespace detail {

inline FpMatrix top_rows(const FpMatrix& m, std::size_t count) {
    FpMatrix r(count, m.cols(), m.field());
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j);
    return r;
}

}  // namespace detail

// A generic element of the kernel of the first i coefficient rows, re-verified
// to meet the curve with multiplicity exactly i; retries draw a fresh random
// combination when the sample lands in the deeper stratum.
inline SparsePoly osculating_poly(const PointSet& a, const SparsePoly& f,
                                  std::pair<std::uint64_t, std::uint64_t> pt, std::size_t i,
                                  std::uint64_t seed = 7, std::size_t max_retries = 8) {
    const std::size_t n_rows = a.size() + 5;
    const BranchSeries br = branch_series(f, pt, n_rows);
    const FpMatrix m = coeff_matrix(a, br, n_rows);
    const std::size_t r = m.rank();
    if (i + 1 > r)
        throw MultiplicityUnreachable("osculating_poly: i exceeds the hull bound " +
                                      std::to_string(r == 0 ? 0 : r - 1));
    if (detail::top_rows(m, r).rank() != r)
        throw NotFlagGeneric("osculating_poly: leading rows dependent; pick another point");

    const auto kernel = detail::top_rows(m, i).kernel_basis();
    if (kernel.size() != a.size() - i)
        throw NotFlagGeneric("osculating_poly: flag kernel has unexpected dimension");

    const PrimeField& field = f.field();
    Rng rng(mix_seed(seed, i));
    for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
        FpVec g(a.size(), 0);
        for (const auto& kv : kernel) {
            const std::uint64_t lambda = rng.below(field.modulus());
            for (std::size_t j = 0; j < a.size(); ++j)
                g[j] = field.add(g[j], field.mul(lambda, kv[j]));
        }
        SparsePoly gp(2, field);
        for (std::size_t j = 0; j < a.size(); ++j)
            if (g[j] != 0) gp.set_coeff(a[j], g[j]);
        if (gp.is_zero()) continue;
        if (auto ord = multiplicity(gp, br); ord && *ord == i) return gp;
    }
    throw MultiplicityUnreachable(
        "osculating_poly: retries exhausted without exact multiplicity (deeper stratum)");
}

}  // namespace polymem

#endif
