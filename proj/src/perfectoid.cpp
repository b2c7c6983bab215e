#include "fontaine/perfectoid.hpp"

namespace fontaine {

namespace {

void check_level(int32_t level, int32_t cap) {
    if (level > cap)
        throw level_cap_exceeded("level " + std::to_string(level) +
                                 " exceeds cap " + std::to_string(cap));
}

} // namespace

PerfSeries perf_make(int32_t level, const LaurentSeries& body, int32_t level_cap) {
    if (level < 0) throw input_error("negative perfection level");
    check_level(level, level_cap);
    return PerfSeries{level, level_cap, body};
}

PerfSeries perf_from_series(const LaurentSeries& body, int32_t level_cap) {
    return perf_make(0, body, level_cap);
}

PerfSeries perf_raise_level(const PerfSeries& z) {
    check_level(z.level + 1, z.level_cap);
    LaurentSeries b = z.body;
    // the pole cap budgets pi-units; one level up, each pi-unit is p t-units
    b.ring.pole_cap *= (int32_t)b.ring.p;
    return PerfSeries{z.level + 1, z.level_cap, series_frobenius(b)};
}

PerfSeries perf_frobenius(const PerfSeries& z, int32_t e) {
    PerfSeries out = z;
    if (e >= 0) {
        int32_t drop = std::min(e, out.level);
        out.level -= drop;
        for (int32_t i = 0; i < e - drop; ++i)
            out.body = series_frobenius(out.body);
    } else {
        out.level += -e;
        check_level(out.level, out.level_cap);
    }
    return out;
}

void perf_align(PerfSeries& a, PerfSeries& b) {
    while (a.level < b.level) a = perf_raise_level(a);
    while (b.level < a.level) b = perf_raise_level(b);
}

PerfSeries perf_add(const PerfSeries& a0, const PerfSeries& b0) {
    PerfSeries a = a0, b = b0;
    a.level_cap = b.level_cap = std::max(a0.level_cap, b0.level_cap);
    perf_align(a, b);
    return PerfSeries{a.level, a.level_cap, series_add(a.body, b.body)};
}

PerfSeries perf_sub(const PerfSeries& a0, const PerfSeries& b0) {
    return perf_add(a0, PerfSeries{b0.level, b0.level_cap, series_neg(b0.body)});
}

PerfSeries perf_mul(const PerfSeries& a0, const PerfSeries& b0) {
    PerfSeries a = a0, b = b0;
    a.level_cap = b.level_cap = std::max(a0.level_cap, b0.level_cap);
    perf_align(a, b);
    return PerfSeries{a.level, a.level_cap, series_mul(a.body, b.body)};
}

PerfSeries perf_scale(const PerfSeries& z, const PadicInt& c) {
    return PerfSeries{z.level, z.level_cap, series_scale(z.body, c)};
}

PerfSeries perf_gamma(const PerfSeries& z, const PadicInt& a) {
    return PerfSeries{z.level, z.level_cap, series_gamma(z.body, a)};
}

PerfSeries eps_power(const SeriesRing& R, int32_t k, const PadicInt& b,
                     int32_t level_cap) {
    if (k < 0) throw input_error("eps_power: negative level");
    check_level(k, level_cap);
    PadicInt bb = padic_normalize(b);
    LaurentSeries body;
    if (bb.r == 0 && bb.v >= bb.n) {
        body = series_one(R); // exponent is zero at available precision
    } else {
        body = series_onepluspi_pow(R, bb);
    }
    return PerfSeries{k, level_cap, body};
}

PerfSeries eps_power_int(const SeriesRing& R, int32_t k, long long b,
                         int32_t level_cap) {
    if (k < 0) throw input_error("eps_power: negative level");
    check_level(k, level_cap);
    return PerfSeries{k, level_cap, series_onepluspi_pow_int(R, b)};
}

PadicInt extended_residue(const PerfSeries& z) {
    // the residue is Frobenius-invariant, so the level-k body already
    // carries the residue of phi^k(z) = the residue of z
    return residue_log(z.body);
}

PerfSeries mirabolic_act(const PerfSeries& z, int32_t k, const PadicInt& a,
                         int32_t bk, const PadicInt& bprime) {
    PerfSeries u = perf_gamma(z, a);
    u = perf_frobenius(u, k);
    PerfSeries e = eps_power(z.body.ring, bk, bprime, z.level_cap);
    return perf_mul(e, u);
}

bool perf_eq_at(const PerfSeries& a0, const PerfSeries& b0, int32_t n_mod,
                int32_t deg_lim) {
    PerfSeries a = a0, b = b0;
    // alignment only rises to max(a.level, b.level), within both caps
    perf_align(a, b);
    return series_eq_at(a.body, b.body, n_mod, deg_lim);
}

bool perf_is_zero_at(const PerfSeries& z, int32_t n_mod, int32_t deg_lim) {
    return series_is_zero_at(z.body, n_mod, deg_lim);
}

} // namespace fontaine
