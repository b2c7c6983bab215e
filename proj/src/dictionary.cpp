#include "fontaine/dictionary.hpp"

#include "fontaine/errors.hpp"

#include <algorithm>

namespace fontaine {

namespace {

uint64_t upow(uint64_t b, int32_t e) {
    uint64_t r = 1;
    for (int32_t i = 0; i < e; ++i) r *= b;
    return r;
}

void check_prime(uint32_t pa, uint32_t pb) {
    if (pa != pb) throw input_error("mixed primes");
}

} // namespace

Measure measure_make(uint32_t p, int32_t n, const std::vector<long long>& moments) {
    Measure mu{p, n, {}};
    mu.moments.reserve(moments.size());
    for (long long c : moments) mu.moments.push_back(padic_from_int(p, n, c));
    return mu;
}

Measure measure_dirac(const PadicInt& b, size_t count) {
    Measure mu{b.p, b.n, {}};
    mu.moments.reserve(count);
    for (size_t j = 0; j < count; ++j) mu.moments.push_back(binom(b, (uint32_t)j));
    return mu;
}

Measure measure_add(const Measure& a, const Measure& b) {
    check_prime(a.p, b.p);
    // unknown moments poison the sum: keep the shorter range
    Measure out{a.p, std::min(a.n, b.n), {}};
    size_t len = std::min(a.moments.size(), b.moments.size());
    out.moments.reserve(len);
    for (size_t j = 0; j < len; ++j)
        out.moments.push_back(padic_add(a.moments[j], b.moments[j]));
    return out;
}

Measure measure_scale(const Measure& a, const PadicInt& c) {
    check_prime(a.p, c.p);
    Measure out = a;
    for (auto& m : out.moments) m = padic_mul(m, c);
    return out;
}

std::vector<PadicInt> mahler_expand(const LCFunctionZp& f) {
    uint32_t p = f.p;
    int32_t n = f.n, m = std::max(f.m, (int32_t)1);
    // coefficients vanish mod p^n from (n+m)(p-1)p^{m-1} on (root-of-unity
    // interpolation of the indicator of a depth-m coset)
    int64_t J = (int64_t)(n + m) * (int64_t)(p - 1) * (int64_t)upow(p, m - 1);
    uint64_t pm = upow(p, f.m);
    std::vector<PadicInt> d;
    d.reserve((size_t)J + 1);
    for (int64_t i = 0; i <= J; ++i) d.push_back(f.table[(uint64_t)i % pm]);
    std::vector<PadicInt> a;
    a.reserve((size_t)J + 1);
    a.push_back(d[0]);
    for (int64_t k = 1; k <= J; ++k) {
        for (int64_t i = 0; i <= J - k; ++i) d[(size_t)i] = padic_sub(d[(size_t)i + 1], d[(size_t)i]);
        a.push_back(d[0]);
    }
    while (!a.empty() && padic_is_zero_at(a.back(), n)) a.pop_back();
    return a;
}

PadicInt mahler_eval(uint32_t p, int32_t n, const std::vector<PadicInt>& a,
                     const PadicInt& x) {
    PadicInt acc{p, n, 0, 0};
    for (size_t j = 0; j < a.size(); ++j)
        acc = padic_add(acc, padic_mul(a[j], binom(x, (uint32_t)j)));
    return acc;
}

PadicInt measure_integrate(const Measure& mu, const LCFunctionZp& f) {
    check_prime(mu.p, f.p);
    std::vector<PadicInt> a = mahler_expand(f);
    if (a.size() > mu.moments.size())
        throw precision_exhausted(
            "measure_integrate: stored moments end before the Mahler tail dies");
    PadicInt acc{mu.p, std::min(mu.n, f.n), 0, 0};
    for (size_t j = 0; j < a.size(); ++j)
        acc = padic_add(acc, padic_mul(a[j], mu.moments[j]));
    return acc;
}

LaurentSeries amice(const SeriesRing& R, const Measure& mu) {
    check_prime(R.p, mu.p);
    if (mu.moments.empty()) throw input_error("amice: no moments");
    LaurentSeries f = series_zero(R);
    f.lo = 0;
    f.N = std::min((int32_t)mu.moments.size(), R.N);
    f.c.assign((size_t)f.N, 0);
    for (int32_t j = 0; j < f.N; ++j)
        f.c[(size_t)j] = padic_residue(mu.moments[(size_t)j], R.n);
    return series_trim(f);
}

Measure measure_mirabolic(const Measure& mu, int32_t k, const PadicInt& a,
                          const PadicInt& b) {
    check_prime(mu.p, a.p);
    check_prime(mu.p, b.p);
    if (k < 0) throw input_error("measure_mirabolic: negative p-power");
    PadicInt au = padic_normalize(a);
    if (au.v != 0 || au.r % mu.p == 0)
        throw not_a_unit("measure_mirabolic: unit part required");
    PadicInt alpha = au;
    alpha.v += k; // p^k * a, exact
    size_t M = mu.moments.size();
    Measure out{mu.p, mu.n, {}};
    out.moments.reserve(M);
    for (size_t j = 0; j < M; ++j) {
        // binom(alpha x + b, j) is a degree-j polynomial in x: expand it in
        // the Mahler basis by finite differences over x = 0..j
        std::vector<PadicInt> g;
        g.reserve(j + 1);
        for (size_t x = 0; x <= j; ++x)
            g.push_back(binom(padic_add(padic_mul_int(alpha, (long long)x), b),
                              (uint32_t)j));
        PadicInt cj = padic_mul(g[0], mu.moments[0]);
        for (size_t i = 1; i <= j; ++i) {
            for (size_t t = 0; t + i <= j; ++t) g[t] = padic_sub(g[t + 1], g[t]);
            cj = padic_add(cj, padic_mul(g[0], mu.moments[i]));
        }
        out.moments.push_back(cj);
    }
    return out;
}

PadicInt phi_f(const LaurentSeries& f, const PadicInt& x) {
    check_prime(f.ring.p, x.p);
    PadicInt xx = padic_normalize(x);
    if (xx.r != 0 && xx.v < 0)
        throw input_error("phi_f: the point must be integral");
    int32_t P = series_pole(f);
    PadicInt acc{f.ring.p, f.ring.n, 0, 0};
    if (P == 0) return acc;
    // -x - 1 at the full precision the point carries
    PadicInt mx1 = padic_sub(padic_from_int(x.p, std::max(xx.v, (int32_t)0) + xx.n, -1), xx);
    for (int32_t j = 0; j < P; ++j)
        acc = padic_add(acc, padic_mul(binom(mx1, (uint32_t)j),
                                       series_coeff(f, -j - 1)));
    return acc;
}

PerfSeries fourier_qp(const SeriesRing& R, const MeasureQp& mu, int32_t level_cap) {
    if (mu.level < 0) throw input_error("fourier_qp: negative level");
    if (mu.level > level_cap)
        throw level_cap_exceeded("fourier_qp: support level beyond the cap");
    return perf_make(mu.level, amice(R, mu.body), level_cap);
}

PadicInt phi_z(const PerfSeries& z, const PadicInt& x) {
    check_prime(z.body.ring.p, x.p);
    PadicInt xx = padic_normalize(x);
    int32_t k = std::max(-xx.v, (int32_t)0);
    PadicInt b = xx;
    b.v += k; // p^k x, integral
    PerfSeries e = eps_power(z.body.ring, k, padic_neg(b), z.level_cap);
    return extended_residue(perf_mul(e, z));
}

} // namespace fontaine
