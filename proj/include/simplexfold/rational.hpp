#pragma once

// Exact rational scalars and the conversions the rest of the library needs.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace simplexfold {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

template <class S>
concept Scalar = std::same_as<S, Rational> || std::same_as<S, double>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double v) { return v; }

template <class S>
S from_rational(const Rational& q) {
    if constexpr (is_exact_v<S>)
        return q;
    else
        return to_double(q);
}

template <class S>
S from_int(long long v) {
    return S(v);
}

/// "p/q" with q > 0, always including the denominator.
inline std::string to_string(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

/// Accepts "p", "p/q", with optional sign on p. Throws std::invalid_argument.
inline Rational parse_rational(const std::string& text) {
    auto check_int = [&](const std::string& s) {
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '-' || s[i] == '+'))
            ++i;
        if (i == s.size())
            throw std::invalid_argument("bad rational literal: '" + text + "'");
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("bad rational literal: '" + text + "'");
    };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    if (!num.empty() && num[0] == '+')
        num.erase(0, 1);
    check_int(num);
    Integer p(num);
    Integer q(1);
    if (slash != std::string::npos) {
        std::string den = text.substr(slash + 1);
        check_int(den);
        q = Integer(den);
        if (q == 0)
            throw std::invalid_argument("zero denominator in '" + text + "'");
    }
    return Rational(p, q);
}

/// Best rational approximation with denominator <= max_den (continued fractions).
inline Rational rationalize(double v, std::int64_t max_den = 1000000) {
    if (!std::isfinite(v))
        throw std::invalid_argument("cannot rationalize a non-finite value");
    const bool neg = v < 0;
    double x = std::fabs(v);
    // convergents h/k
    Integer h_prev(1), h(static_cast<long long>(std::floor(x)));
    Integer k_prev(0), k(1);
    double frac = x - std::floor(x);
    for (int iter = 0; iter < 64 && frac > 1e-18; ++iter) {
        double inv = 1.0 / frac;
        double a_d = std::floor(inv);
        if (a_d > 9.0e15)
            break;
        Integer a(static_cast<long long>(a_d));
        Integer h_next = a * h + h_prev;
        Integer k_next = a * k + k_prev;
        if (k_next > max_den) {
            // semiconvergent check: largest t with t*k + k_prev <= max_den
            Integer t = (Integer(max_den) - k_prev) / k;
            if (t > 0) {
                Integer hs = t * h + h_prev;
                Integer ks = t * k + k_prev;
                Rational cand_s(hs, ks), cand(h, k);
                Rational target(x);
                if (abs(cand_s - target) < abs(cand - target)) {
                    h = hs;
                    k = ks;
                }
            }
            break;
        }
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        frac = inv - a_d;
    }
    Rational r(h, k);
    return neg ? Rational(-r) : r;
}

inline Integer lcm_integer(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0)
        return Integer(0);
    return abs(a / boost::multiprecision::gcd(a, b) * b);
}

} // namespace simplexfold
