#ifndef POLYMIN_CERTLOG_HPP
#define POLYMIN_CERTLOG_HPP

#include "polymin/numeric.hpp"

namespace polymin {

// Certified enclosure of a real number; all arithmetic is exact rational,
// directed rounding happens only when arguments are pre-rounded dyadically.
struct Enc {
    Rat lo, hi;

    Enc() : lo(0), hi(0) {}
    Enc(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}
    static Enc exact(const Rat& v) { return {v, v}; }

    Enc operator+(const Enc& o) const { return {lo + o.lo, hi + o.hi}; }
    Enc operator-(const Enc& o) const { return {lo - o.hi, hi - o.lo}; }
    Enc operator-() const { return {-hi, -lo}; }
    Enc scale(const Rat& k) const {
        return k >= 0 ? Enc{lo * k, hi * k} : Enc{hi * k, lo * k};
    }
    Rat width() const { return hi - lo; }
};

Enc enc_mul(const Enc& a, const Enc& b);
// b must be strictly positive
Enc enc_div_pos(const Enc& a, const Enc& b);

// pi via Machin's formula, alternating-series bracketing
Enc pi_enclosure(unsigned prec_bits);

Enc ln2_enclosure(unsigned prec_bits);

// natural log of a positive rational
Enc ln_enclosure(const Rat& x, unsigned prec_bits);

Enc log2_enclosure(const Rat& x, unsigned prec_bits);
Enc log2_int_enclosure(const Int& x, unsigned prec_bits);

// ln(n!) — exact-ish product for small n, Robbins' Stirling bounds otherwise
Enc ln_factorial_enclosure(const Int& n, unsigned prec_bits);

// log2 of binomial(a, b); materializes the binomial when small
Enc log2_binomial_enclosure(const Int& a, const Int& b, unsigned prec_bits);

} // namespace polymin

#endif
