#include "fontaine/series.hpp"

#include <algorithm>
#include <cassert>

namespace fontaine {

namespace {

constexpr uint64_t kModulusCap = (uint64_t(1) << 31);

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) { return (a * b) % m; }

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t acc = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) acc = mulmod(acc, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return acc;
}

uint64_t invmod_pp(uint64_t a, uint32_t p, uint64_t m) {
    if (a % p == 0) throw not_a_unit("series: inverting a non-unit residue");
    uint64_t phi = (m / p) * (p - 1);
    return powmod(a % m, phi - 1, m);
}

int32_t floor_log(uint32_t p, int64_t x) {
    int32_t g = 0;
    int64_t q = p;
    while (q <= x) {
        q *= p;
        ++g;
    }
    return g;
}

int32_t max_digits(uint32_t p) {
    int32_t n = 0;
    uint64_t m = 1;
    while (m * p < kModulusCap) {
        m *= p;
        ++n;
    }
    return n;
}

void check_compatible(const LaurentSeries& f, const LaurentSeries& g) {
    if (f.ring.p != g.ring.p)
        throw input_error("series arithmetic across different primes");
}

void check_pole(const SeriesRing& R, int32_t lo) {
    if (lo < -R.pole_cap)
        throw pole_overflow("pole depth " + std::to_string(-lo) + " exceeds cap " +
                            std::to_string(R.pole_cap));
}

} // namespace

uint64_t LaurentSeries::modulus() const { return pow_mod_base(ring.p, ring.n); }

SeriesRing series_ring(uint32_t p, int32_t n, int32_t N, int32_t pole_cap) {
    if (n <= 0 || N <= 0 || pole_cap < 0) throw input_error("bad ring parameters");
    (void)pow_mod_base(p, n);
    return SeriesRing{p, n, N, pole_cap};
}

LaurentSeries series_zero(const SeriesRing& R) {
    LaurentSeries f;
    f.ring = R;
    f.w = 0;
    f.lo = 0;
    f.N = R.N;
    return f;
}

LaurentSeries series_one(const SeriesRing& R) {
    LaurentSeries f = series_zero(R);
    f.c = {1};
    return f;
}

LaurentSeries series_const(const SeriesRing& R, const PadicInt& a) {
    if (a.p != R.p) throw input_error("constant from a different prime");
    LaurentSeries f = series_zero(R);
    f.ring.n = std::min(R.n, a.n);
    f.w = a.v;
    f.c = {a.r % f.modulus()};
    return f;
}

LaurentSeries series_pi_pow(const SeriesRing& R, int32_t k) {
    check_pole(R, k);
    LaurentSeries f = series_zero(R);
    f.lo = k;
    f.N = R.N + std::max(k, 0);
    f.c = {1};
    return f;
}

LaurentSeries series_from_coeffs(const SeriesRing& R, int32_t lo,
                                 const std::vector<long long>& coeffs) {
    check_pole(R, lo);
    LaurentSeries f = series_zero(R);
    f.lo = lo;
    uint64_t m = f.modulus();
    for (long long x : coeffs) {
        long long r = x % (long long)m;
        if (r < 0) r += (long long)m;
        f.c.push_back((uint64_t)r);
    }
    if ((int64_t)lo + (int64_t)f.c.size() > f.N) f.N = lo + (int32_t)f.c.size();
    return f;
}

PadicInt series_coeff(const LaurentSeries& f, int32_t d) {
    if (d >= f.N)
        throw precision_exhausted("coefficient of degree " + std::to_string(d) +
                                  " is beyond pi-precision " + std::to_string(f.N));
    uint64_t r = 0;
    if (d >= f.lo && d < f.lo + (int32_t)f.c.size()) r = f.c[d - f.lo];
    return PadicInt{f.ring.p, f.ring.n, f.w, r};
}

LaurentSeries series_trim(const LaurentSeries& f) {
    LaurentSeries x = f;
    size_t a = 0, b = x.c.size();
    while (a < b && x.c[a] == 0) ++a;
    while (b > a && x.c[b - 1] == 0) --b;
    x.c = std::vector<uint64_t>(x.c.begin() + a, x.c.begin() + b);
    x.lo += (int32_t)a;
    if (x.c.empty()) x.lo = 0;
    return x;
}

int32_t series_pole(const LaurentSeries& f) {
    LaurentSeries t = series_trim(f);
    if (t.c.empty()) return 0;
    return std::max(0, -t.lo);
}

bool series_is_zero_at(const LaurentSeries& f, int32_t n_mod, int32_t deg_lim) {
    if (f.N < deg_lim)
        throw precision_exhausted("series only known to degree " + std::to_string(f.N) +
                                  ", zero test requested to " + std::to_string(deg_lim));
    for (size_t i = 0; i < f.c.size(); ++i) {
        int32_t d = f.lo + (int32_t)i;
        if (d >= deg_lim) break;
        if (!padic_is_zero_at(PadicInt{f.ring.p, f.ring.n, f.w, f.c[i]}, n_mod))
            return false;
    }
    return true;
}

bool series_eq_at(const LaurentSeries& f, const LaurentSeries& g, int32_t n_mod,
                  int32_t deg_lim) {
    return series_is_zero_at(series_sub(f, g), n_mod, deg_lim);
}

LaurentSeries series_add(const LaurentSeries& f0, const LaurentSeries& g0) {
    check_compatible(f0, g0);
    LaurentSeries f = series_trim(f0), g = series_trim(g0);
    if (f.c.empty() && g.c.empty()) {
        LaurentSeries z = f0;
        z.c.clear();
        z.lo = 0;
        z.N = std::min(f0.N, g0.N);
        z.ring.n = std::min(f0.ring.n, g0.ring.n);
        z.w = std::min(f0.w, g0.w);
        return z;
    }
    if (f.c.empty()) { f.w = g.w; }
    if (g.c.empty()) { g.w = f.w; }
    int32_t w = std::min(f.w, g.w);
    int32_t df = f.w - w, dg = g.w - w;
    int32_t n_out = std::min(f.ring.n + df, g.ring.n + dg);
    n_out = std::min(n_out, max_digits(f.ring.p));
    LaurentSeries out;
    out.ring = f.ring;
    out.ring.n = n_out;
    out.ring.pole_cap = std::max(f.ring.pole_cap, g.ring.pole_cap);
    out.w = w;
    out.N = std::min(f.N, g.N);
    int32_t lo = std::min(f.c.empty() ? out.N : f.lo, g.c.empty() ? out.N : g.lo);
    lo = std::min(lo, out.N);
    out.lo = lo;
    if (out.N > lo) {
        out.c.assign(out.N - lo, 0);
        uint64_t m = out.modulus();
        uint64_t sf = powmod(f.ring.p, (uint64_t)df, m);
        uint64_t sg = powmod(g.ring.p, (uint64_t)dg, m);
        for (size_t i = 0; i < f.c.size(); ++i) {
            int32_t d = f.lo + (int32_t)i;
            if (d >= out.N) break;
            out.c[d - lo] = mulmod(f.c[i], sf, m);
        }
        for (size_t i = 0; i < g.c.size(); ++i) {
            int32_t d = g.lo + (int32_t)i;
            if (d >= out.N) break;
            out.c[d - lo] = (out.c[d - lo] + mulmod(g.c[i], sg, m)) % m;
        }
    }
    return series_trim(out);
}

LaurentSeries series_neg(const LaurentSeries& f) {
    LaurentSeries out = f;
    uint64_t m = f.modulus();
    for (auto& e : out.c) e = (m - e % m) % m;
    return out;
}

LaurentSeries series_sub(const LaurentSeries& f, const LaurentSeries& g) {
    return series_add(f, series_neg(g));
}

LaurentSeries series_scale(const LaurentSeries& f, const PadicInt& a) {
    if (a.p != f.ring.p) throw input_error("scaling by a different prime");
    LaurentSeries out = f;
    out.ring.n = std::min(f.ring.n, a.n);
    out.w = f.w + a.v;
    uint64_t m = out.modulus();
    for (auto& e : out.c) e = mulmod(e % m, a.r % m, m);
    return series_trim(out);
}

LaurentSeries series_scale_int(const LaurentSeries& f, long long a) {
    return series_scale(f, padic_from_int(f.ring.p, f.ring.n, a));
}

LaurentSeries series_shift(const LaurentSeries& f, int32_t k) {
    LaurentSeries out = series_trim(f);
    out.lo += k;
    out.N += k;
    if (!out.c.empty()) check_pole(out.ring, out.lo);
    return out;
}

LaurentSeries series_mul(const LaurentSeries& f0, const LaurentSeries& g0) {
    check_compatible(f0, g0);
    LaurentSeries f = series_trim(f0), g = series_trim(g0);
    LaurentSeries out;
    out.ring = f.ring;
    out.ring.n = std::min(f.ring.n, g.ring.n);
    out.ring.pole_cap = std::max(f.ring.pole_cap, g.ring.pole_cap);
    out.w = f.w + g.w;
    if (f.c.empty() || g.c.empty()) {
        // a known-zero factor: precision still limited by the other factor
        int32_t lof = f.c.empty() ? 0 : f.lo;
        int32_t log = g.c.empty() ? 0 : g.lo;
        out.N = std::min(f.N + log, g.N + lof);
        out.lo = 0;
        return out;
    }
    out.N = std::min(f.N + g.lo, g.N + f.lo);
    out.lo = f.lo + g.lo;
    check_pole(out.ring, out.lo);
    if (out.N <= out.lo)
        throw precision_exhausted("product has no pi-adic digits left");
    out.c.assign(out.N - out.lo, 0);
    uint64_t m = out.modulus();
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        int32_t di = f.lo + (int32_t)i;
        for (size_t j = 0; j < g.c.size(); ++j) {
            int32_t d = di + g.lo + (int32_t)j;
            if (d >= out.N) break;
            out.c[d - out.lo] = (out.c[d - out.lo] + mulmod(f.c[i] % m, g.c[j] % m, m)) % m;
        }
    }
    return series_trim(out);
}

LaurentSeries series_div_p(const LaurentSeries& f) {
    if (f.ring.n <= 1)
        throw precision_exhausted("dividing by p with one digit left");
    LaurentSeries out = f;
    for (auto& e : out.c) {
        if (e % f.ring.p != 0)
            throw input_error("series_div_p: coefficient not divisible by p");
        e /= f.ring.p;
    }
    out.ring.n -= 1;
    out.w += 1;
    // re-reduce into the smaller modulus
    uint64_t m = out.modulus();
    for (auto& e : out.c) e %= m;
    return out;
}

LaurentSeries series_invert(const LaurentSeries& f0) {
    LaurentSeries f = series_trim(f0);
    if (f.c.empty()) throw not_a_unit("inverting a series that is zero at available precision");
    const uint32_t p = f.ring.p;
    // strip global p-divisibility into w
    while (true) {
        bool all_div = true;
        for (uint64_t e : f.c)
            if (e % p != 0) { all_div = false; break; }
        if (!all_div) break;
        f = series_trim(series_div_p(f));
        if (f.c.empty())
            throw not_a_unit("inverting a series that is zero at available precision");
    }
    const int32_t n = f.ring.n;
    const uint64_t m = pow_mod_base(p, n);
    // lowest degree with a unit coefficient
    int32_t d = f.lo;
    while (f.c[d - f.lo] % p == 0) ++d;
    const int32_t P = d - f.lo;
    const int32_t N = f.N;

    // working window in "S-space" (G = u^{-1} pi^{-d} S)
    const int32_t loW = -n * P - 2;
    const int32_t hiW = N - d + P + 2;
    const int32_t W = hiW - loW;
    if (W <= 0) throw precision_exhausted("inversion has no room at this precision");

    auto idx = [&](int32_t deg) { return deg - loW; };
    std::vector<uint64_t> h(W, 0);
    // h = 1 - u^{-1} pi^{-d} f
    uint64_t uinv = invmod_pp(f.c[d - f.lo], p, m);
    for (size_t i = 0; i < f.c.size(); ++i) {
        int32_t deg = f.lo + (int32_t)i - d;
        if (deg < loW || deg >= hiW) continue;
        h[idx(deg)] = (m - mulmod(uinv, f.c[i] % m, m)) % m;
    }
    h[idx(0)] = (h[idx(0)] + 1) % m;

    std::vector<uint64_t> S(W, 0), T(W, 0), tmp(W, 0);
    S[idx(0)] = 1;
    T = h;
    const int32_t K = hiW + n * (P + 1) + 4;
    for (int32_t k = 0; k < K; ++k) {
        bool nonzero = false;
        for (int32_t i = 0; i < W; ++i) {
            if (T[i] == 0) continue;
            nonzero = true;
            S[i] = (S[i] + T[i]) % m;
        }
        if (!nonzero) break;
        // T = T * h, clipped to the window
        std::fill(tmp.begin(), tmp.end(), 0);
        for (int32_t i = 0; i < W; ++i) {
            if (T[i] == 0) continue;
            for (int32_t j = 0; j < W; ++j) {
                if (h[j] == 0) continue;
                int64_t deg = (int64_t)(i + loW) + (j + loW);
                if (deg < loW || deg >= hiW) continue;
                tmp[deg - loW] = (tmp[deg - loW] + mulmod(T[i], h[j], m)) % m;
            }
        }
        T.swap(tmp);
    }
    bool t_left = false;
    for (uint64_t e : T)
        if (e != 0) t_left = true;
    if (t_left) throw error("series_invert: geometric series failed to terminate");

    // G = u^{-1} pi^{-d} S
    LaurentSeries G;
    G.ring = f.ring;
    G.w = -f.w;
    G.lo = loW - d;
    G.c.assign(W, 0);
    for (int32_t i = 0; i < W; ++i) G.c[i] = mulmod(S[i], uinv, m);
    G.N = hiW - d;
    G = series_trim(G);
    int32_t pole_G = G.c.empty() ? 0 : std::max(0, -G.lo);
    check_pole(f0.ring, G.c.empty() ? 0 : G.lo);
    int32_t N_out = N - 2 * pole_G;
    if (N_out <= (G.c.empty() ? 0 : G.lo))
        throw precision_exhausted("inversion used up the pi-adic precision");
    G.N = N_out;
    if ((int32_t)G.c.size() > G.N - G.lo) G.c.resize(G.N - G.lo);
    G.ring.pole_cap = f0.ring.pole_cap;
    return series_trim(G);
}

LaurentSeries series_div(const LaurentSeries& f, const LaurentSeries& g) {
    return series_mul(f, series_invert(g));
}

LaurentSeries series_substitute(const LaurentSeries& f0, const LaurentSeries& g0) {
    check_compatible(f0, g0);
    LaurentSeries f = series_trim(f0);
    LaurentSeries g = series_trim(g0);
    if (g.w != 0 || (!g.c.empty() && g.lo < 1))
        throw input_error("substitution image must be an integral series in pi Z[[pi]]");
    int32_t n_out = std::min(f.ring.n, g.ring.n);
    SeriesRing OR = f.ring;
    OR.n = n_out;
    OR.pole_cap = std::max(f.ring.pole_cap, g.ring.pole_cap);
    if (f.c.empty()) {
        LaurentSeries z = series_zero(OR);
        z.N = std::min(f.N, g.N); // conservative
        return z;
    }
    uint64_t m = pow_mod_base(f.ring.p, n_out);

    // positive part, Horner from the top
    int32_t top = f.lo + (int32_t)f.c.size() - 1;
    LaurentSeries pos = series_zero(OR);
    pos.N = g.N + 2;
    bool have_pos = false;
    for (int32_t j = std::max(top, 0); j >= 0; --j) {
        if (have_pos) pos = series_mul(pos, g);
        uint64_t cj = (j >= f.lo && j <= top) ? f.c[j - f.lo] % m : 0;
        if (cj != 0) {
            LaurentSeries cst = series_zero(OR);
            cst.w = f.w;
            cst.c = {cj};
            cst.N = pos.N;
            pos = series_add(pos, cst);
        }
        have_pos = true;
    }
    if (!have_pos) {
        pos = series_zero(OR);
        pos.N = g.N + 2;
    } else {
        pos.N = std::min(pos.N, g.N);
    }

    // negative part via powers of the inverse
    LaurentSeries res = pos;
    if (f.lo < 0) {
        LaurentSeries ginv = series_invert(g);
        LaurentSeries acc = series_one(OR);
        acc.N = ginv.N + 2;
        for (int32_t k = 1; k <= -f.lo; ++k) {
            acc = series_mul(acc, ginv);
            uint64_t ck = (-k >= f.lo && -k <= top) ? f.c[-k - f.lo] % m : 0;
            if (ck == 0) continue;
            PadicInt s{f.ring.p, n_out, f.w, ck};
            res = series_add(res, series_scale(acc, s));
        }
    }
    // unknown coefficients of f enter at degree >= f.N * (lowest degree of g)
    int32_t glo = g.c.empty() ? 1 : g.lo;
    res.N = std::min(res.N, f.N * glo);
    if ((int32_t)res.c.size() > res.N - res.lo)
        res.c.resize(std::max(0, res.N - res.lo));
    return series_trim(res);
}

LaurentSeries series_onepluspi_pow(const SeriesRing& R, const PadicInt& b0) {
    PadicInt b = padic_normalize(b0);
    if (b.p != R.p) throw input_error("exponent from a different prime");
    if (b.v < 0 && b.r != 0) throw input_error("exponent must be a p-adic integer");
    const uint32_t p = R.p;
    // two lifts of b differing by p^k move the result by C(p^k s, j) pi^j,
    // visible when k - v_p(j) < n: the exponent needs log_p(N-1) spare digits
    int32_t spare = floor_log(p, std::max(R.N - 1, 1));
    int32_t n_req = R.n + spare;
    int32_t n_avail = b.n + std::max(b.v, (int32_t)0);
    int32_t n_out = R.n - std::max(0, n_req - n_avail);
    if (n_out <= 0)
        throw precision_exhausted("exponent has too few digits for this pi-precision");
    int32_t n_lift = std::min(n_avail, n_req);
    uint64_t lift_mod = pow_mod_base(p, n_lift);
    uint64_t e = b.r == 0 ? 0
                          : mulmod(b.r % lift_mod,
                                   powmod(p, (uint64_t)std::max(b.v, (int32_t)0), lift_mod),
                                   lift_mod);
    SeriesRing OR = R;
    OR.n = n_out;
    LaurentSeries base = series_from_coeffs(OR, 0, {1, 1});
    base.N = R.N;
    LaurentSeries acc = series_one(OR);
    acc.N = R.N;
    while (e) {
        if (e & 1) acc = series_mul(acc, base);
        e >>= 1;
        if (e) base = series_mul(base, base);
    }
    return acc;
}

LaurentSeries series_onepluspi_pow_int(const SeriesRing& R, long long b) {
    if (b >= 0) {
        LaurentSeries base = series_from_coeffs(R, 0, {1, 1});
        LaurentSeries acc = series_one(R);
        uint64_t e = (uint64_t)b;
        while (e) {
            if (e & 1) acc = series_mul(acc, base);
            e >>= 1;
            if (e) base = series_mul(base, base);
        }
        return acc;
    }
    return series_invert(series_onepluspi_pow_int(R, -b));
}

LaurentSeries series_frobenius(const LaurentSeries& f) {
    const SeriesRing& R0 = f.ring;
    int32_t pole = series_pole(f);
    int32_t inv_pole = (int32_t)R0.p + (R0.n - 1) * ((int32_t)R0.p - 1);
    SeriesRing R = R0;
    R.N = f.N + (pole + 2) * inv_pole + 4;
    R.pole_cap = std::max(R0.pole_cap, pole * inv_pole + 2);
    LaurentSeries g = series_onepluspi_pow_int(R, (long long)R0.p);
    g = series_sub(g, series_one(R));
    LaurentSeries out = series_substitute(f, g);
    out.ring.pole_cap = R0.pole_cap;
    if (!out.c.empty()) check_pole(R0, out.lo);
    return out;
}

LaurentSeries series_gamma(const LaurentSeries& f, const PadicInt& a) {
    PadicInt u = padic_normalize(a);
    if (u.v != 0 || u.r % f.ring.p == 0)
        throw not_a_unit("gamma action needs a unit exponent");
    const SeriesRing& R0 = f.ring;
    int32_t pole = series_pole(f);
    SeriesRing R = R0;
    R.N = f.N + (pole + 2) * 1 + 4; // sigma_a(pi) has a unit at degree 1
    R.pole_cap = std::max(R0.pole_cap, pole + 2);
    LaurentSeries g = series_onepluspi_pow(R, u);
    g = series_sub(g, series_one(R));
    LaurentSeries out = series_substitute(f, g);
    out.ring.pole_cap = R0.pole_cap;
    if (!out.c.empty()) check_pole(R0, out.lo);
    return out;
}

LaurentSeries series_psi(const LaurentSeries& f0) {
    LaurentSeries cur = series_trim(f0);
    const uint32_t p = cur.ring.p;
    const int32_t n = cur.ring.n;
    const int32_t w = cur.w;
    cur.w = 0;

    // Pascal matrix C(i,j), 0 <= j <= i < p
    std::vector<std::vector<uint64_t>> C(p, std::vector<uint64_t>(p, 0));
    for (uint32_t i = 0; i < p; ++i) {
        C[i][0] = 1;
        for (uint32_t j = 1; j <= i; ++j)
            C[i][j] = C[i - 1][j - 1] + (j <= i - 1 ? C[i - 1][j] : 0);
    }

    int32_t pole0 = series_pole(cur);
    int32_t out_lo = -((pole0 + (int32_t)p - 1) / (int32_t)p);
    int32_t out_hi_cap = cur.N; // refined below
    std::vector<uint64_t> acc; // accumulates f_0 digits, indexed from out_lo
    int32_t out_N = 0;
    uint64_t m_full = pow_mod_base(p, n);

    for (int32_t t = 0; t < n; ++t) {
        int32_t n_cur = n - t;
        if (cur.N <= 0) break;
        int32_t Q = cur.N / (int32_t)p; // f_i known for degrees < Q
        if (t == 0) {
            out_N = Q;
            out_hi_cap = Q;
            acc.assign(std::max(0, out_hi_cap - out_lo), 0);
        }
        int32_t m_t = series_pole(cur);
        int32_t q_lo = -((m_t + (int32_t)p - 1) / (int32_t)p);
        // solve the unit-triangular Pascal system mod p, block by block
        std::vector<std::vector<uint64_t>> fi(p);
        for (uint32_t i = 0; i < p; ++i) fi[i].assign(std::max(0, Q - q_lo), 0);
        std::vector<uint64_t> cji(p);
        for (int32_t q = q_lo; q < Q; ++q) {
            for (uint32_t j = 0; j < p; ++j) {
                int64_t d = (int64_t)p * q + j;
                uint64_t r = 0;
                if (d >= cur.lo && d < cur.lo + (int64_t)cur.c.size())
                    r = cur.c[d - cur.lo] % p;
                cji[j] = r;
            }
            for (int32_t j = (int32_t)p - 1; j >= 0; --j) {
                uint64_t v = cji[j] % p;
                for (uint32_t i = j + 1; i < p; ++i)
                    v = (v + (uint64_t)p * p - C[i][j] % p * fi[i][q - q_lo]) % p;
                fi[j][q - q_lo] = v % p;
            }
        }
        // accumulate the f_0 digit
        for (int32_t q = std::max(q_lo, out_lo); q < std::min(Q, out_hi_cap); ++q) {
            uint64_t digit = fi[0][q - q_lo];
            if (digit)
                acc[q - out_lo] = (acc[q - out_lo] + digit * powmod(p, (uint64_t)t, m_full)) % m_full;
        }
        out_N = std::min(out_N, Q);
        if (t == n - 1) break;

        // subtract sum_i (1+pi)^i phi(f_i) and divide by p
        SeriesRing Rt = cur.ring;
        Rt.n = n_cur;
        Rt.pole_cap = std::max(Rt.pole_cap, m_t + (int32_t)p * 3 + (Rt.n) * ((int32_t)p - 1) + 4);
        LaurentSeries approx = series_zero(Rt);
        approx.N = cur.N;
        for (uint32_t i = 0; i < p; ++i) {
            LaurentSeries fip = series_zero(Rt);
            fip.lo = q_lo;
            fip.N = cur.N + 4;
            fip.c.assign(fi[i].begin(), fi[i].end());
            fip = series_trim(fip);
            if (fip.c.empty()) continue;
            LaurentSeries term = series_frobenius(fip);
            if (i > 0) {
                LaurentSeries op = series_onepluspi_pow_int(
                    series_ring(p, n_cur, cur.N + 4, Rt.pole_cap), (long long)i);
                term = series_mul(term, op);
            }
            approx = series_add(approx, term);
        }
        LaurentSeries diff = series_sub(cur, approx);
        // unknown digits of f_i contaminate degrees >= p*Q - (p-1)*n_cur
        int32_t clean = (int32_t)p * Q - ((int32_t)p - 1) * n_cur;
        diff.N = std::min(diff.N, std::max(clean, 1));
        if ((int32_t)diff.c.size() > diff.N - diff.lo)
            diff.c.resize(std::max(0, diff.N - diff.lo));
        diff = series_trim(diff);
        // every remaining coefficient must be divisible by p
        for (auto& e : diff.c) {
            if (e % p != 0)
                throw error("psi: remainder not divisible by p (internal)");
            e /= p;
        }
        uint64_t m_next = pow_mod_base(p, n_cur - 1 > 0 ? n_cur - 1 : 1);
        for (auto& e : diff.c) e %= m_next;
        diff.ring.n = n_cur - 1;
        cur = series_trim(diff);
        if (cur.ring.n <= 0) break;
    }

    LaurentSeries out;
    out.ring = f0.ring;
    out.w = w;
    out.lo = out_lo;
    out.N = out_N;
    out.c.assign(acc.begin(), acc.begin() + std::max(0, std::min<int32_t>((int32_t)acc.size(), out_N - out_lo)));
    return series_trim(out);
}

PadicInt residue_log(const LaurentSeries& f) {
    const uint32_t p = f.ring.p;
    uint64_t m = f.modulus();
    uint64_t s = 0;
    for (int32_t j = 0;; ++j) {
        int32_t d = -1 - j;
        if (d < f.lo) break;
        uint64_t cd = (d < f.lo + (int32_t)f.c.size()) ? f.c[d - f.lo] % m : 0;
        if (j % 2 == 0)
            s = (s + cd) % m;
        else
            s = (s + m - cd) % m;
    }
    (void)p;
    return PadicInt{f.ring.p, f.ring.n, f.w, s};
}

LaurentSeries solve_phi_minus_one(const LaurentSeries& y0) {
    LaurentSeries y = series_trim(y0);
    if (!y.c.empty() && y.lo < 1)
        throw input_error("solve_phi_minus_one: rhs must vanish at pi = 0");
    // x = -sum_j phi^j(y); phi^j(y) is invisible once j >= n + log_p N
    int32_t J = y.ring.n + floor_log(y.ring.p, std::max(y.N, 2)) + 2;
    LaurentSeries x = series_neg(y);
    LaurentSeries term = y;
    for (int32_t j = 1; j <= J; ++j) {
        term = series_frobenius(term);
        LaurentSeries tt = series_trim(term);
        if (tt.c.empty()) break;
        x = series_sub(x, term);
    }
    return x;
}

} // namespace fontaine
