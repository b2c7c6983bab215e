#pragma once
// Truncated model of the perfection of the basic Fontaine ring: Laurent
// series in a level-k variable t = pi_k (a p^k-th root of 1+pi, minus 1),
// with bijective Frobenius, the group elements eps^b for b in Q_p, and the
// Frobenius-invariant extension of the residue.
//
// A level-k PerfSeries carries body(t) and denotes phi^{-k}(body(pi)).
// The same element re-expressed one level up substitutes t -> (1+t)^p - 1,
// so raising a level applies series_frobenius to the body, while phi^{-1}
// itself is a pure level bump with the body untouched.

#include "fontaine/series.hpp"

namespace fontaine {

struct PerfSeries {
    int32_t level = 0;     // Frobenius depth k >= 0
    int32_t level_cap = 3; // raising past this throws level_cap_exceeded
    LaurentSeries body;
};

PerfSeries perf_make(int32_t level, const LaurentSeries& body, int32_t level_cap = 3);
PerfSeries perf_from_series(const LaurentSeries& body, int32_t level_cap = 3);

// the same element presented one level higher (t -> (1+t)^p - 1)
PerfSeries perf_raise_level(const PerfSeries& z);

// phi^e; e < 0 raises the level by -e (throws level_cap_exceeded past the cap)
PerfSeries perf_frobenius(const PerfSeries& z, int32_t e);

// rewrite both at a common level
void perf_align(PerfSeries& a, PerfSeries& b);

PerfSeries perf_add(const PerfSeries& a, const PerfSeries& b);
PerfSeries perf_sub(const PerfSeries& a, const PerfSeries& b);
PerfSeries perf_mul(const PerfSeries& a, const PerfSeries& b);
PerfSeries perf_scale(const PerfSeries& z, const PadicInt& c);

// cyclotomic action t -> (1+t)^a - 1; commutes with level changes
PerfSeries perf_gamma(const PerfSeries& z, const PadicInt& a);

// eps^(p^{-k} b): (1+t)^b at level k. The exponent needs the same guard
// digits as series_onepluspi_pow.
PerfSeries eps_power(const SeriesRing& R, int32_t k, const PadicInt& b,
                     int32_t level_cap = 3);
PerfSeries eps_power_int(const SeriesRing& R, int32_t k, long long b,
                         int32_t level_cap = 3);

// unique Frobenius-invariant extension of the trace-coefficient residue
PadicInt extended_residue(const PerfSeries& z);

// upper-triangular (p^k a, b; 0, 1) with b = p^{-bk} b': eps^b * phi^k(sigma_a z)
PerfSeries mirabolic_act(const PerfSeries& z, int32_t k, const PadicInt& a,
                         int32_t bk, const PadicInt& bprime);

bool perf_eq_at(const PerfSeries& a, const PerfSeries& b, int32_t n_mod, int32_t deg_lim);
bool perf_is_zero_at(const PerfSeries& z, int32_t n_mod, int32_t deg_lim);

} // namespace fontaine
