#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilprog {

using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "p", "p/q" and decimal strings like "-0.125".
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rational q;
        try {
            q = Rational(text, 10);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("parse_rational: bad rational '" + text + "'");
        }
        q.canonicalize();
        return q;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0 || digits.empty()) {
        throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
    }
    Rational num;
    try {
        num = Rational(digits, 10);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
    }
    Integer den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational q = num / Rational(den);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer binomial(const Integer& n, unsigned long k) {
    // Falling-factorial form; valid for negative n as well.
    Integer num = 1;
    for (unsigned long i = 0; i < k; ++i) num *= n - static_cast<long>(i);
    Integer den;
    mpz_fac_ui(den.get_mpz_t(), k);
    return num / den;
}

inline Integer factorial(unsigned long n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

}  // namespace nilprog
