#ifndef POLYMEM_SERIES_HPP
#define POLYMEM_SERIES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "polymem/errors.hpp"
#include "polymem/prime_field.hpp"

namespace polymem {

// Truncated power series over F_p with fixed precision. Coefficient rows of
// these series replace derivative rows everywhere: over F_p, j-th derivatives
// divide by j!, which vanishes for j >= p; coefficient extraction is the
// characteristic-safe equivalent.
class PowerSeries {
public:
    PowerSeries(PrimeField field, std::size_t prec)
        : field_(field), c_(prec, 0) {}

    static PowerSeries constant(PrimeField field, std::size_t prec, std::uint64_t v) {
        PowerSeries s(field, prec);
        s.c_[0] = v % field.modulus();
        return s;
    }

    std::size_t precision() const { return c_.size(); }
    const PrimeField& field() const { return field_; }

    std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    void set_coeff(std::size_t i, std::uint64_t v) { c_[i] = v % field_.modulus(); }

    PowerSeries operator+(const PowerSeries& o) const {
        PowerSeries r(field_, c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_.add(c_[i], o.coeff(i));
        return r;
    }

    PowerSeries operator-(const PowerSeries& o) const {
        PowerSeries r(field_, c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_.sub(c_[i], o.coeff(i));
        return r;
    }

    PowerSeries operator*(const PowerSeries& o) const {
        PowerSeries r(field_, c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; i + j < c_.size(); ++j) {
                if (o.coeff(j) == 0) continue;
                r.c_[i + j] = field_.add(r.c_[i + j], field_.mul(c_[i], o.coeff(j)));
            }
        }
        return r;
    }

    PowerSeries scaled(std::uint64_t v) const {
        PowerSeries r(field_, c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_.mul(c_[i], v % field_.modulus());
        return r;
    }

    // 1 / this; requires a unit constant term.
    PowerSeries inverse() const {
        if (c_[0] == 0) throw Error("PowerSeries: inverse needs a nonzero constant term");
        PowerSeries r(field_, c_.size());
        const std::uint64_t inv0 = field_.inv(c_[0]);
        r.c_[0] = inv0;
        for (std::size_t k = 1; k < c_.size(); ++k) {
            std::uint64_t acc = 0;
            for (std::size_t i = 1; i <= k; ++i)
                if (c_[i] != 0 && r.c_[k - i] != 0)
                    acc = field_.add(acc, field_.mul(c_[i], r.c_[k - i]));
            r.c_[k] = field_.mul(field_.neg(acc), inv0);
        }
        return r;
    }

    PowerSeries pow(std::int64_t e) const {
        if (e < 0) return inverse().pow(-e);
        PowerSeries r = constant(field_, c_.size(), 1);
        PowerSeries base = *this;
        std::uint64_t k = static_cast<std::uint64_t>(e);
        while (k) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    // Order of vanishing; nullopt means every stored coefficient is zero
    // (order at least the precision).
    std::optional<std::size_t> order() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) return i;
        return std::nullopt;
    }

private:
    PrimeField field_;
    std::vector<std::uint64_t> c_;
};

}  // namespace polymem

#endif
