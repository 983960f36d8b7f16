#ifndef POLYMEM_SPARSE_POLY_HPP
#define POLYMEM_SPARSE_POLY_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "polymem/errors.hpp"
#include "polymem/lattice.hpp"
#include "polymem/prime_field.hpp"
#include "polymem/rng.hpp"

namespace polymem {

// Sparse Laurent polynomial over F_p: exponent vector -> nonzero residue.
// Exponents may be negative; the term map is lex-ordered so every traversal
// (arithmetic, serialization, sampling) is deterministic.
class SparsePoly {
public:
    SparsePoly(std::size_t dim, PrimeField field) : dim_(dim), field_(field) {}

    std::size_t dim() const { return dim_; }
    const PrimeField& field() const { return field_; }
    const std::map<Point, std::uint64_t>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    std::uint64_t coeff(const Point& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? 0 : it->second;
    }

    void set_coeff(const Point& e, std::uint64_t c) {
        if (e.size() != dim_) throw DimensionMismatch("SparsePoly: exponent of wrong dimension");
        c %= field_.modulus();
        if (c == 0)
            terms_.erase(e);
        else
            terms_[e] = c;
    }

    void add_to_coeff(const Point& e, std::uint64_t c) { set_coeff(e, field_.add(coeff(e), c % field_.modulus())); }

    PointSet support() const {
        PointSet s(dim_);
        for (const auto& [e, c] : terms_) s.insert(e);
        return s;
    }

    SparsePoly operator+(const SparsePoly& o) const {
        check_compat(o);
        SparsePoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_to_coeff(e, c);
        return r;
    }

    SparsePoly operator-() const {
        SparsePoly r(dim_, field_);
        for (const auto& [e, c] : terms_) r.terms_[e] = field_.neg(c);
        return r;
    }

    SparsePoly operator-(const SparsePoly& o) const { return *this + (-o); }

    SparsePoly operator*(const SparsePoly& o) const {
        check_compat(o);
        SparsePoly r(dim_, field_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) r.add_to_coeff(add(e1, e2), field_.mul(c1, c2));
        return r;
    }

    SparsePoly scaled(std::uint64_t c) const {
        SparsePoly r(dim_, field_);
        c %= field_.modulus();
        if (c == 0) return r;
        for (const auto& [e, cf] : terms_) r.terms_[e] = field_.mul(cf, c);
        return r;
    }

    SparsePoly translated(const Point& v) const {
        SparsePoly r(dim_, field_);
        for (const auto& [e, c] : terms_) r.terms_[add(e, v)] = c;
        return r;
    }

    // Keep exactly the terms with exponents in S.
    SparsePoly restrict(const PointSet& s) const {
        SparsePoly r(dim_, field_);
        for (const auto& [e, c] : terms_)
            if (s.contains(e)) r.terms_[e] = c;
        return r;
    }

    // Evaluation at a torus point (all coordinates nonzero); negative
    // exponents go through the field inverse.
    std::uint64_t eval(const std::vector<std::uint64_t>& x) const {
        if (x.size() != dim_) throw DimensionMismatch("eval: point of wrong dimension");
        for (auto c : x)
            if (c % field_.modulus() == 0) throw ZeroCoordinate("eval: point must lie on the torus");
        std::uint64_t acc = 0;
        for (const auto& [e, c] : terms_) {
            std::uint64_t m = c;
            for (std::size_t j = 0; j < dim_; ++j) {
                std::uint64_t base = x[j] % field_.modulus();
                std::int64_t exp = e[j];
                if (exp < 0) {
                    base = field_.inv(base);
                    exp = -exp;
                }
                m = field_.mul(m, field_.pow(base, static_cast<std::uint64_t>(exp)));
            }
            acc = field_.add(acc, m);
        }
        return acc;
    }

    SparsePoly partial_derivative(std::size_t var) const {
        SparsePoly r(dim_, field_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Point e2 = e;
            e2[var] -= 1;
            std::uint64_t k = field_.reduce(e[var]);
            if (k != 0) r.add_to_coeff(e2, field_.mul(c, k));
        }
        return r;
    }

    bool operator==(const SparsePoly& o) const {
        return dim_ == o.dim_ && field_.modulus() == o.field_.modulus() && terms_ == o.terms_;
    }

private:
    void check_compat(const SparsePoly& o) const {
        if (dim_ != o.dim_) throw DimensionMismatch("SparsePoly: dimension mismatch");
        if (field_.modulus() != o.field_.modulus())
            throw Error("SparsePoly: mixed prime fields");
    }

    std::size_t dim_;
    PrimeField field_;
    std::map<Point, std::uint64_t> terms_;
};

// Coefficients i.i.d. uniform nonzero on every point of the support, so the
// Newton polytope of the sample is exactly conv(support). Deterministic in
// (seed, prime): points are drawn in lex order from a SplitMix64 stream.
inline SparsePoly random_generic(const PointSet& support, std::uint64_t seed, std::uint64_t prime) {
    if (support.empty()) throw EmptySupport("random_generic: empty support");
    PrimeField field(prime);
    SparsePoly f(support.dim(), field);
    Rng rng(seed);
    for (const auto& e : support) f.set_coeff(e, 1 + rng.below(prime - 1));
    return f;
}

}  // namespace polymem

#endif
