#pragma once

#include "fontaine/functions.hpp"
#include "fontaine/perfectoid.hpp"
#include "fontaine/series.hpp"

namespace fontaine {

/*
 * A measure on Z_p at precision n, stored through its Mahler moments
 * c_j = integral of binom(x, j) d mu.  Moments beyond the stored range are
 * unknown (not zero): integration demands that the integrand's Mahler tail
 * dies inside the stored range and throws precision_exhausted otherwise.
 */
struct Measure {
    uint32_t p = 3;
    int32_t n = 1;
    std::vector<PadicInt> moments;
};

Measure measure_make(uint32_t p, int32_t n, const std::vector<long long>& moments);
// Dirac mass at b: moments binom(b, j) for j < count.  b must carry enough
// digits for the deepest binomial (throws precision_exhausted otherwise).
Measure measure_dirac(const PadicInt& b, size_t count);
Measure measure_add(const Measure& a, const Measure& b);
Measure measure_scale(const Measure& a, const PadicInt& c);

/*
 * Mahler coefficients a_j = (Delta^j f)(0) of a locally constant function,
 * trimmed at the theorem bound (n + m)(p-1)p^{m-1} past which every
 * coefficient vanishes mod p^n.
 */
std::vector<PadicInt> mahler_expand(const LCFunctionZp& f);

// evaluate sum_j a_j binom(x, j); x must carry digits for the deepest term
PadicInt mahler_eval(uint32_t p, int32_t n, const std::vector<PadicInt>& a,
                     const PadicInt& x);

// integral of f against mu; precision_exhausted when the stored moments end
// before the Mahler tail of f dies
PadicInt measure_integrate(const Measure& mu, const LCFunctionZp& f);

// Amice transform sum_j c_j pi^j; pi-precision is the stored moment range
LaurentSeries amice(const SeriesRing& R, const Measure& mu);

// moments of x -> f(p^k a x + b): the measure pushed through the upper
// triangular matrix (p^k a, b; 0, 1).  a unit, k >= 0.
Measure measure_mirabolic(const Measure& mu, int32_t k, const PadicInt& a,
                          const PadicInt& b);

/*
 * Residue transform: the value at integral x of the locally constant
 * function attached to f.  Only the pole part of f contributes, so the
 * result depends on f modulo the subring with no pole.
 */
PadicInt phi_f(const LaurentSeries& f, const PadicInt& x);

/* measure supported on p^{-level}Z_p, stored in the rescaled coordinate */
struct MeasureQp {
    int32_t level = 0;
    Measure body;
};

// Fourier transform: the level-k Amice series of the rescaled body
PerfSeries fourier_qp(const SeriesRing& R, const MeasureQp& mu,
                      int32_t level_cap = 3);

// value at x (any valuation) of the function attached to a perfected z
PadicInt phi_z(const PerfSeries& z, const PadicInt& x);

} // namespace fontaine
