#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "mzvrg/errors.hpp"

namespace mzvrg {

// Exact rational scalar. cpp_rational keeps values canonical (lowest terms,
// positive denominator), which is exactly the representation contract of the
// library: every rational the code stores or prints is in that form.
using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) { return q.str(); }

// Strict parser for the wire format "p" or "p/q": q > 0 and gcd(p,q) = 1.
// Anything else (including "2/4" and "1/0") is a parse error, so ingested
// tables are guaranteed to round-trip byte-identically.
inline Rational parse_rational(const std::string& s) {
    const auto bad = [&](const char* why) -> Rational {
        fail(errc::parse_error, "invalid rational '" + s + "': " + why);
    };
    if (s.empty()) return bad("empty");
    const auto slash = s.find('/');
    const std::string num_s = s.substr(0, slash);
    const std::string den_s = slash == std::string::npos ? std::string() : s.substr(slash + 1);
    const auto is_int = [](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = (allow_sign && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) return false;
        if (t[i] == '0' && t.size() > i + 1) return false; // no leading zeros
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (!is_int(num_s, true)) return bad("bad numerator");
    Integer num(num_s);
    if (slash == std::string::npos) return Rational(num);
    if (!is_int(den_s, false)) return bad("bad denominator");
    Integer den(den_s);
    if (den == 0) return bad("zero denominator");
    if (gcd(num < 0 ? Integer(-num) : num, den) != 1) return bad("not in lowest terms");
    return Rational(num, den);
}

inline Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Integer r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

inline Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) fail(errc::domain_error, "0 raised to a negative power");
        return Rational(0);
    }
    Rational r(1);
    const unsigned a = static_cast<unsigned>(e < 0 ? -e : e);
    for (unsigned i = 0; i < a; ++i) r *= base;
    return e < 0 ? Rational(1) / r : r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

} // namespace mzvrg
