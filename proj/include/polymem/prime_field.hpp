#ifndef POLYMEM_PRIME_FIELD_HPP
#define POLYMEM_PRIME_FIELD_HPP

#include <cstdint>
#include <stdexcept>

#include "polymem/errors.hpp"

namespace polymem {

// Arithmetic context for F_p. Elements are plain uint64_t residues in [0, p);
// every operation goes through a PrimeField so the modulus is explicit.
// Primes are assumed < 2^31 so products fit in uint64_t.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p < 3 || !is_prime(p) || p >= (1ULL << 31))
            throw InputError("PrimeField: modulus must be an odd prime < 2^31");
    }

    std::uint64_t modulus() const { return p_; }

    std::uint64_t reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return static_cast<std::uint64_t>(r);
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }

    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        a %= p_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    std::uint64_t inv(std::uint64_t a) const {
        if (a == 0) throw Error("PrimeField: inverse of zero");
        // extended Euclid
        std::int64_t t = 0, nt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(a % p_);
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return static_cast<std::uint64_t>(t);
    }

    std::uint64_t div(std::uint64_t a, std::uint64_t b) const { return mul(a, inv(b)); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    std::uint64_t p_;
};

}  // namespace polymem

#endif
