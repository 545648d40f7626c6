#ifndef POLYMIN_NUMERIC_HPP
#define POLYMIN_NUMERIC_HPP

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace polymin {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

struct zero_polynomial_error : std::domain_error {
    using std::domain_error::domain_error;
};

inline Int int_pow(const Int& base, unsigned long e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("rat_pow: 0^negative");
        return Rat(1) / rat_pow(base, -e);
    }
    Rat r = 1, b = base;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

// Multiplicative formula; every intermediate quotient is exact.
inline Int binomial(const Int& n, const Int& k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int kk = k;
    if (n - k < kk) kk = n - k;
    Int r = 1;
    for (Int i = 1; i <= kk; ++i) {
        r *= n - kk + i;
        r /= i;
    }
    return r;
}

inline Int factorial(unsigned long n) {
    Int r = 1;
    for (unsigned long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline int sign_of(const Int& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
inline int sign_of(const Rat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }
inline Rat abs_rat(const Rat& v) { return v < 0 ? Rat(-v) : v; }

// Number of bits needed for |v|; 0 for v = 0.
inline unsigned long bit_size(const Int& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.backend().data(), 2);
}

inline std::string to_string(const Int& v) { return v.str(); }
inline std::string to_string(const Rat& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

// Dyadic rounding: nearest multiple of 2^-prec, direction-controlled.
inline Rat round_dyadic(const Rat& v, unsigned prec, bool round_up) {
    Int scale = int_pow(2, prec);
    Int num = numerator(v) * scale;
    Int den = denominator(v);
    Int q = num / den, r = num % den;
    // mpz division truncates toward zero; fix up to floor/ceil.
    if (r != 0) {
        bool neg = (num < 0) != (den < 0);
        if (round_up && !neg) q += 1;
        if (!round_up && neg) q -= 1;
    }
    return Rat(q, scale);
}

inline bool is_prime_u(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

} // namespace polymin

#endif
