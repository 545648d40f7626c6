#include "polymin/certlog.hpp"

#include <stdexcept>

namespace polymin {

Enc enc_mul(const Enc& a, const Enc& b) {
    Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    Rat lo = c1, hi = c1;
    for (const Rat& c : {c2, c3, c4}) {
        if (c < lo) lo = c;
        if (c > hi) hi = c;
    }
    return {lo, hi};
}

Enc enc_div_pos(const Enc& a, const Enc& b) {
    if (b.lo <= 0) throw std::invalid_argument("enc_div_pos: divisor not positive");
    Rat c1 = a.lo / b.lo, c2 = a.lo / b.hi, c3 = a.hi / b.lo, c4 = a.hi / b.hi;
    Rat lo = c1, hi = c1;
    for (const Rat& c : {c2, c3, c4}) {
        if (c < lo) lo = c;
        if (c > hi) hi = c;
    }
    return {lo, hi};
}

namespace {

// atan(1/k) bracketed by two consecutive partial sums of the alternating series
Enc atan_inv(unsigned long k, unsigned terms) {
    Rat kk(Int(k) * Int(k));
    Rat pw = Rat(1, Int(k));
    Rat sum = 0, prev = 0;
    for (unsigned i = 0; i <= terms; ++i) {
        prev = sum;
        Rat term = pw / Rat(2 * i + 1);
        if (i % 2 == 0) sum += term;
        else sum -= term;
        pw /= kk;
    }
    return sum < prev ? Enc{sum, prev} : Enc{prev, sum};
}

// atanh(z) for 0 <= z < 1/2 with an explicit geometric tail bound
Enc atanh_enc(const Rat& z, unsigned prec_bits) {
    if (z == 0) return Enc::exact(0);
    Rat z2 = z * z;
    Rat sum = 0, pw = z;
    Rat eps = Rat(1, int_pow(2, prec_bits));
    unsigned i = 0;
    while (true) {
        sum += pw / Rat(2 * i + 1);
        pw *= z2;
        ++i;
        // tail <= pw / ((2i+1)(1 - z^2))
        Rat tail = pw / (Rat(2 * i + 1) * (Rat(1) - z2));
        if (tail <= eps) return {sum, sum + tail};
    }
}

} // namespace

Enc pi_enclosure(unsigned prec_bits) {
    // pi = 16 atan(1/5) - 4 atan(1/239); term counts sized generously
    unsigned t5 = prec_bits / 4 + 8;
    unsigned t239 = prec_bits / 15 + 6;
    Enc a = atan_inv(5, t5);
    Enc b = atan_inv(239, t239);
    return a.scale(16) - b.scale(4);
}

Enc ln2_enclosure(unsigned prec_bits) {
    // ln 2 = 2 atanh(1/3)
    return atanh_enc(Rat(1, 3), prec_bits + 2).scale(2);
}

Enc ln_enclosure(const Rat& x, unsigned prec_bits) {
    if (x <= 0) throw std::invalid_argument("ln_enclosure: argument not positive");
    // write x = 2^e * r with r in [1, 2)
    long e = 0;
    Rat r = x;
    {
        unsigned long nb = bit_size(numerator(x));
        unsigned long db = bit_size(denominator(x));
        e = static_cast<long>(nb) - static_cast<long>(db);
        if (e > 0) r = x / Rat(int_pow(2, static_cast<unsigned long>(e)));
        else if (e < 0) r = x * Rat(int_pow(2, static_cast<unsigned long>(-e)));
        while (r >= 2) {
            r /= 2;
            ++e;
        }
        while (r < 1) {
            r *= 2;
            --e;
        }
    }
    // pre-round r dyadically so huge numerators do not leak into the series
    Rat r_lo = round_dyadic(r, prec_bits + 8, false);
    Rat r_hi = round_dyadic(r, prec_bits + 8, true);
    if (r_lo < 1) r_lo = 1;
    // ln r = 2 atanh((r-1)/(r+1))
    Enc ln_r_lo = atanh_enc((r_lo - 1) / (r_lo + 1), prec_bits + 4).scale(2);
    Enc ln_r_hi = atanh_enc((r_hi - 1) / (r_hi + 1), prec_bits + 4).scale(2);
    Enc ln_r{ln_r_lo.lo, ln_r_hi.hi};
    Enc l2 = ln2_enclosure(prec_bits + 4);
    return ln_r + l2.scale(Rat(e));
}

Enc log2_enclosure(const Rat& x, unsigned prec_bits) {
    Enc lnx = ln_enclosure(x, prec_bits + 4);
    Enc l2 = ln2_enclosure(prec_bits + 4);
    return enc_div_pos(lnx, l2);
}

Enc log2_int_enclosure(const Int& x, unsigned prec_bits) {
    return log2_enclosure(Rat(x), prec_bits);
}

Enc ln_factorial_enclosure(const Int& n, unsigned prec_bits) {
    if (n < 0) throw std::invalid_argument("ln_factorial_enclosure: negative argument");
    if (n <= 1) return Enc::exact(0);
    if (n <= 256) {
        Int f = 1;
        for (Int i = 2; i <= n; ++i) f *= i;
        return ln_enclosure(Rat(f), prec_bits);
    }
    // Robbins: n! = sqrt(2 pi n) (n/e)^n e^{r_n}, 1/(12n+1) < r_n < 1/(12n)
    Enc ln_n = ln_enclosure(Rat(n), prec_bits + 6);
    Enc pi = pi_enclosure(prec_bits + 6);
    Enc ln_pi{ln_enclosure(pi.lo, prec_bits + 6).lo, ln_enclosure(pi.hi, prec_bits + 6).hi};
    Enc ln_2pin = ln2_enclosure(prec_bits + 6) + ln_pi + ln_n;
    Enc main = ln_n.scale(Rat(n)) - Enc::exact(Rat(n)) + ln_2pin.scale(Rat(1, 2));
    Rat corr_lo = Rat(1, 12 * n + 1), corr_hi = Rat(1, 12 * n);
    return {main.lo + corr_lo, main.hi + corr_hi};
}

Enc log2_binomial_enclosure(const Int& a, const Int& b, unsigned prec_bits) {
    if (b < 0 || b > a) throw std::invalid_argument("log2_binomial_enclosure: out of range");
    if (b == 0 || b == a) return Enc::exact(0);
    Int small_side = b <= a - b ? b : Int(a - b);
    // materialize when the result stays a few thousand bits
    if (small_side <= 512 && bit_size(a) <= 64) {
        Int c = binomial(a, b);
        return log2_int_enclosure(c, prec_bits);
    }
    Enc lf = ln_factorial_enclosure(a, prec_bits + 4) -
             ln_factorial_enclosure(b, prec_bits + 4) -
             ln_factorial_enclosure(a - b, prec_bits + 4);
    return enc_div_pos(lf, ln2_enclosure(prec_bits + 4));
}

} // namespace polymin
