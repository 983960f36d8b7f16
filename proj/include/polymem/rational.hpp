#ifndef POLYMEM_RATIONAL_HPP
#define POLYMEM_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "polymem/errors.hpp"

namespace polymem {

// Exact arithmetic everywhere: arbitrary-precision rationals for offsets,
// homothety factors and vertex coordinates. The rational adaptor keeps a
// gcd-reduced numerator/denominator with positive denominator, which is
// exactly the canonical form we need for equality tests. Expression templates
// are off so arithmetic yields plain values (std::max, comparators, ...).
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline BigInt floor_int(const Rational& r) {
    BigInt q = rat_num(r) / rat_den(r);
    if (rat_num(r) < 0 && q * rat_den(r) != rat_num(r)) --q;
    return q;
}

inline BigInt ceil_int(const Rational& r) {
    BigInt q = rat_num(r) / rat_den(r);
    if (rat_num(r) > 0 && q * rat_den(r) != rat_num(r)) ++q;
    return q;
}

inline std::int64_t to_i64(const BigInt& v) {
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
        throw Error("integer out of 64-bit range");
    return v.convert_to<std::int64_t>();
}

inline bool is_integer(const Rational& r) { return rat_den(r) == 1; }

// "p/q" with the "/q" omitted for integers; inverse of parse_rational.
inline std::string rational_to_string(const Rational& r) {
    if (is_integer(r)) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw InputError("rational with zero denominator: " + s);
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw InputError("malformed rational: " + s);
    }
}

}  // namespace polymem

#endif
