#pragma once

#include <cstdint>
#include <vector>

#include "fontaine/padic.hpp"

namespace fontaine {

/*
 * Truncated Laurent series in pi with Z/p^n coefficients: the working model
 * of the ring A = completion of Z_p((pi)).  A series is
 *
 *     p^w * sum_{d = lo}^{N-1} c[d - lo] * pi^d,   c known mod p^n,
 *
 * where n lives in the ring descriptor carried by the series (operations
 * lower it when they honestly must).  N is the pi-adic precision: degrees
 * >= N are unknown, not zero.  Degrees below -pole_cap are refused with
 * pole_overflow; the cap exists so runaway pole growth is a loud error.
 */
struct SeriesRing {
    uint32_t p = 3;
    int32_t n = 1;        // coefficient precision
    int32_t N = 32;       // default pi-adic truncation for new series
    int32_t pole_cap = 24;
};

SeriesRing series_ring(uint32_t p, int32_t n, int32_t N, int32_t pole_cap = 24);

struct LaurentSeries {
    SeriesRing ring;
    int32_t w = 0;  // global p-power factor
    int32_t lo = 0; // degree of c[0]
    int32_t N = 0;  // coefficients valid for degrees < N
    std::vector<uint64_t> c;

    uint64_t modulus() const;
};

LaurentSeries series_zero(const SeriesRing& R);
LaurentSeries series_one(const SeriesRing& R);
LaurentSeries series_const(const SeriesRing& R, const PadicInt& a);
// pi^k, any integer k with |k| within cap/N
LaurentSeries series_pi_pow(const SeriesRing& R, int32_t k);
LaurentSeries series_from_coeffs(const SeriesRing& R, int32_t lo,
                                 const std::vector<long long>& coeffs);

// coefficient of pi^d as a p-adic number (valuation offset w included)
PadicInt series_coeff(const LaurentSeries& f, int32_t d);

// drop leading/trailing zero coefficients (lo rises toward the support)
LaurentSeries series_trim(const LaurentSeries& f);

// visible pole order: max(0, -lowest nonzero degree)
int32_t series_pole(const LaurentSeries& f);

bool series_is_zero_at(const LaurentSeries& f, int32_t n_mod, int32_t deg_lim);
bool series_eq_at(const LaurentSeries& f, const LaurentSeries& g, int32_t n_mod,
                  int32_t deg_lim);

LaurentSeries series_add(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries series_sub(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries series_neg(const LaurentSeries& f);
LaurentSeries series_scale(const LaurentSeries& f, const PadicInt& a);
LaurentSeries series_scale_int(const LaurentSeries& f, long long a);
LaurentSeries series_shift(const LaurentSeries& f, int32_t k); // * pi^k
LaurentSeries series_mul(const LaurentSeries& f, const LaurentSeries& g);

// exact division by p: every coefficient must be divisible; costs a digit
LaurentSeries series_div_p(const LaurentSeries& f);

/*
 * Multiplicative inverse.  The unit group of the truncated model: anything
 * whose lowest unit-coefficient degree d exists after stripping global
 * p-powers.  Output pi-precision drops to N - 2*pole(result); the pole of
 * the result is bounded by d + (n-1)*(d - lo) and checked against the cap.
 */
LaurentSeries series_invert(const LaurentSeries& f);
LaurentSeries series_div(const LaurentSeries& f, const LaurentSeries& g);

// f(g) for a substitution image g of pi with g = unit*pi + ... (lo >= 1)
LaurentSeries series_substitute(const LaurentSeries& f, const LaurentSeries& g);

// (1 + pi)^b by base-p digit powering; b any p-adic integer.  The exponent
// must carry floor(log_p(N-1)) digits beyond the coefficient precision; the
// output precision drops when it does not.
LaurentSeries series_onepluspi_pow(const SeriesRing& R, const PadicInt& b);
LaurentSeries series_onepluspi_pow_int(const SeriesRing& R, long long b);

// phi: pi -> (1+pi)^p - 1
LaurentSeries series_frobenius(const LaurentSeries& f);
// sigma_a: pi -> (1+pi)^a - 1 for a unit a
LaurentSeries series_gamma(const LaurentSeries& f, const PadicInt& a);

/*
 * psi: the left inverse of phi defined by f = sum_{i<p} (1+pi)^i phi(f_i)
 * |-> f_0.  Computed digit-by-digit: mod p the decomposition is an exact
 * unit-triangular (Pascal) system per block of p consecutive degrees, and
 * the quotient (f - approximation)/p lifts the remaining digits.
 * Output precision: floor(N/p); pole ceil(pole/p).
 */
LaurentSeries series_psi(const LaurentSeries& f);

// residue of f * dpi/(1+pi): sum_{j>=0} (-1)^j c_{-1-j}
PadicInt residue_log(const LaurentSeries& f);

// solve (phi - 1)x = y for y with lo >= 1 (x = -sum phi^j(y), finite here)
LaurentSeries solve_phi_minus_one(const LaurentSeries& y);

} // namespace fontaine
