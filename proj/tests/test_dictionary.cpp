#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fontaine/dictionary.hpp"
#include "fontaine/errors.hpp"

#include <random>

using namespace fontaine;

namespace {
PadicInt fi(uint32_t p, int32_t n, long long v) { return padic_from_int(p, n, v); }
} // namespace

TEST_CASE("mahler expansion: polynomials and indicators") {
    uint32_t p = 3; int32_t n = 2;

    // constant 1 -> single coefficient 1
    LCFunctionZp one = lc_indicator(p, n, 0, 0, 0);
    std::vector<PadicInt> a1 = mahler_expand(one);
    REQUIRE(a1.size() == 1);
    CHECK(padic_eq_at(a1[0], fi(p, n, 1), n));

    // f(x) = x (well defined mod 9 from the mod-27 table) -> binom(x, 1)
    LCFunctionZp id{p, n, 3, {}};
    id.table.resize(27);
    for (uint64_t i = 0; i < 27; ++i) id.table[i] = fi(p, n, (long long)i);
    std::vector<PadicInt> ax = mahler_expand(id);
    REQUIRE(ax.size() == 2);
    CHECK(padic_eq_at(ax[0], fi(p, n, 0), n));
    CHECK(padic_eq_at(ax[1], fi(p, n, 1), n));

    // indicator of 3Z_3: coefficients by finite differences, cross-checked
    // by re-evaluating the Mahler sum on all of Z/27
    LCFunctionZp f = lc_indicator(p, n, 1, 1, 0);
    std::vector<PadicInt> af = mahler_expand(f);
    CHECK(af.size() <= 7); // dies within (n+m)(p-1)p^{m-1} = 6
    for (long long x = 0; x < 27; ++x) {
        PadicInt got = mahler_eval(p, n, af, fi(p, 12, x));
        CHECK(padic_eq_at(got, lc_eval(f, fi(p, 12, x)), n));
    }
}

TEST_CASE("amice transform: dirac masses and linearity") {
    uint32_t p = 3; int32_t n = 2;
    SeriesRing R = series_ring(p, n, 32);

    Measure d0 = measure_dirac(fi(p, 12, 0), 8);
    CHECK(series_eq_at(amice(R, d0), series_one(R), n, 8));

    Measure d5 = measure_dirac(fi(p, 12, 5), 8);
    CHECK(series_eq_at(amice(R, d5), series_onepluspi_pow_int(R, 5), n, 7));

    // a p-adic (non-integer) mass point: moments binom(1/2, j)
    Measure dh = measure_dirac(padic_from_ratio(p, 12, 1, 2), 8);
    CHECK(series_eq_at(amice(R, dh),
                       series_onepluspi_pow(R, padic_from_ratio(p, 12, 1, 2)),
                       n, 7));

    Measure s = measure_add(d0, measure_scale(d5, fi(p, 12, 7)));
    LaurentSeries lhs = amice(R, s);
    LaurentSeries rhs = series_add(amice(R, d0), series_scale_int(amice(R, d5), 7));
    CHECK(series_eq_at(lhs, rhs, n, 7));
}

TEST_CASE("integration against a measure is Mahler-coefficient pairing") {
    uint32_t p = 3; int32_t n = 2;
    LCFunctionZp f = lc_indicator(p, n, 1, 1, 0); // 1_{3Z_3}

    for (long long b : {0LL, 1LL, 6LL, 25LL}) {
        PadicInt want = lc_eval(f, fi(p, 12, b));
        PadicInt got = measure_integrate(measure_dirac(fi(p, 12, b), 12), f);
        CHECK(padic_eq_at(got, want, n));
    }

    // too few stored moments: the Mahler tail of f outlives them
    CHECK_THROWS_AS(measure_integrate(measure_dirac(fi(p, 12, 1), 3), f),
                    precision_exhausted);
}

TEST_CASE("amice transform intertwines the mirabolic action") {
    uint32_t p = 3; int32_t n = 2;
    SeriesRing R = series_ring(p, n, 64);
    std::mt19937_64 rng(20260819);

    for (int trial = 0; trial < 4; ++trial) {
        std::vector<long long> ms;
        for (int j = 0; j < 6; ++j) ms.push_back((long long)(rng() % 9));
        Measure mu = measure_make(p, n, ms);

        struct { int32_t k; long long a, b; } gs[3] = {
            {0, 2, 3}, {1, 1, 1}, {1, 4, 5},
        };
        for (const auto& g : gs) {
            Measure gmu = measure_mirabolic(mu, g.k, fi(p, 12, g.a), fi(p, 12, g.b));
            LaurentSeries lhs = amice(R, gmu);
            LaurentSeries rhs = series_gamma(amice(R, mu), fi(p, 12, g.a));
            for (int32_t i = 0; i < g.k; ++i) rhs = series_frobenius(rhs);
            rhs = series_mul(series_onepluspi_pow_int(R, g.b), rhs);
            CHECK(series_eq_at(lhs, rhs, n, 5));
        }
    }
}

TEST_CASE("residue transform: pole part evaluates, regular part dies") {
    uint32_t p = 3; int32_t n = 2;
    SeriesRing R = series_ring(p, n, 32);

    LaurentSeries reg = series_add(series_one(R), series_pi_pow(R, 2));
    for (long long x : {0LL, 1LL, 7LL})
        CHECK(padic_is_zero_at(phi_f(reg, fi(p, 12, x)), n));

    // 1/pi evaluates to the constant 1, and adding any regular part --
    // here the paper's 1/pi + 1/2 -- changes nothing
    LaurentSeries v = series_pi_pow(R, -1);
    LaurentSeries u1 = series_add(v, series_const(R, padic_from_ratio(p, n, 1, 2)));
    for (long long x : {0LL, 1LL, 5LL, 13LL, -1LL, 26LL}) {
        CHECK(padic_eq_at(phi_f(v, fi(p, 12, x)), fi(p, n, 1), n));
        CHECK(padic_eq_at(phi_f(u1, fi(p, 12, x)), fi(p, n, 1), n));
    }

    CHECK_THROWS_AS(phi_f(v, padic_from_ratio(p, 12, 1, 3)), input_error);

    // independent oracle: the defining residue. phi_f(f, x) equals the
    // trace-form residue of (1+pi)^{-x} f for arbitrary pole parts.
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<long long> cs;
        for (int d = 0; d < 5; ++d) cs.push_back((long long)(rng() % 9));
        LaurentSeries f = series_from_coeffs(R, -3, cs);
        for (long long x : {0LL, 2LL, 11LL}) {
            PadicInt direct = phi_f(f, fi(p, 12, x));
            PadicInt res = residue_log(
                series_mul(series_onepluspi_pow(R, fi(p, 12, -x)), f));
            CHECK(padic_eq_at(direct, res, n));
        }
    }
}

TEST_CASE("residue transform is twisted-equivariant for the mirabolic group") {
    uint32_t p = 3; int32_t n = 2;
    SeriesRing R = series_ring(p, n, 64);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<long long> cs;
        for (int d = 0; d < 4; ++d) cs.push_back((long long)(1 + rng() % 8));
        LaurentSeries f = series_from_coeffs(R, -4, cs);

        struct { int32_t k; long long a, b; } gs[3] = {
            {1, 1, 0}, {0, 2, 0}, {0, 1, 2},
        };
        for (const auto& g : gs) {
            // g acting on the series side: (1+pi)^b phi^k(sigma_a f)
            LaurentSeries gf = series_gamma(f, fi(p, 12, g.a));
            for (int32_t i = 0; i < g.k; ++i) gf = series_frobenius(gf);
            gf = series_mul(series_onepluspi_pow_int(R, g.b), gf);

            uint64_t pk = 1;
            for (int32_t i = 0; i < g.k; ++i) pk *= p;
            PadicInt ainv = padic_inv(fi(p, 12, g.a));
            for (long long x = 0; x < 18; ++x) {
                PadicInt lhs = phi_f(gf, fi(p, 12, x));
                PadicInt rhs = fi(p, n, 0);
                if ((uint64_t)((x - g.b) % (long long)pk + (long long)pk) % pk == 0) {
                    PadicInt y = padic_mul(
                        padic_mul(padic_sub(fi(p, 12, x), fi(p, 12, g.b)), ainv),
                        padic_from_ratio(p, 12, 1, (long long)pk));
                    rhs = padic_mul(ainv, phi_f(f, y));
                }
                CHECK(padic_eq_at(lhs, rhs, n));
            }
        }
    }
}

TEST_CASE("fourier transform on the rescaled line") {
    uint32_t p = 3; int32_t n = 2;
    SeriesRing R = series_ring(p, n, 32);

    // level 0 is the Amice transform
    Measure mu = measure_make(p, n, {1, 2, 0, 5, 7, 1});
    PerfSeries z0 = fourier_qp(R, MeasureQp{0, mu});
    CHECK(z0.level == 0);
    CHECK(series_eq_at(z0.body, amice(R, mu), n, 5));

    // dirac at 2/p: the group element eps^{2/p}
    PerfSeries zd = fourier_qp(R, MeasureQp{1, measure_dirac(fi(p, 12, 2), 8)});
    CHECK(perf_eq_at(zd, eps_power_int(R, 1, 2), n, 7));

    // zero measure
    PerfSeries zz = fourier_qp(R, MeasureQp{1, measure_make(p, n, {0, 0, 0, 0})});
    CHECK(perf_is_zero_at(zz, n, 3));

    CHECK_THROWS_AS(fourier_qp(R, MeasureQp{9, mu}), level_cap_exceeded);
}

TEST_CASE("extended residue transform on the perfected line") {
    uint32_t p = 3; int32_t n = 2;
    SeriesRing R = series_ring(p, n, 96);

    // level 0 on integral points agrees with the compact transform
    std::vector<long long> cs = {2, 7, 1, 0, 4};
    LaurentSeries f = series_from_coeffs(R, -3, cs);
    PerfSeries z = perf_from_series(f);
    for (long long x : {0LL, 1LL, 8LL})
        CHECK(padic_eq_at(phi_z(z, fi(p, 12, x)), phi_f(f, fi(p, 12, x)), n));

    // no pole -> the zero function
    PerfSeries zreg = perf_from_series(series_one(R));
    for (long long x : {0LL, 3LL})
        CHECK(padic_is_zero_at(phi_z(zreg, fi(p, 12, x)), n));
    CHECK(padic_is_zero_at(phi_z(zreg, PadicInt{p, 12, -2, 1}), n));

    // z = phi^{-1}(1/pi) is the indicator of p^{-1}Z_p: value 1 there,
    // value 0 deeper out (the finite-level vanishing at infinity)
    PerfSeries zv = perf_frobenius(perf_from_series(series_pi_pow(R, -1)), -1);
    for (int32_t v : {-1, 0, 1})
        for (uint64_t u : {1ULL, 2ULL})
            CHECK(padic_eq_at(phi_z(zv, PadicInt{p, 12, v, u}), fi(p, n, 1), n));
    CHECK(padic_is_zero_at(phi_z(zv, PadicInt{p, 12, -2, 1}), n));
    CHECK(padic_is_zero_at(phi_z(zv, PadicInt{p, 12, -2, 5}), n));
}

TEST_CASE("perfected residue transform: mirabolic equivariance pointwise") {
    uint32_t p = 3; int32_t n = 2;
    SeriesRing R = series_ring(p, n, 96);
    LaurentSeries f = series_add(series_pi_pow(R, -1),
                                 series_scale_int(series_pi_pow(R, -2), 5));
    PerfSeries z = perf_from_series(f);

    auto grid = [&](auto&& check) {
        for (int32_t v : {-1, 0, 1})
            for (uint64_t u : {1ULL, 2ULL, 5ULL}) check(PadicInt{p, 12, v, u});
    };

    // (p, 0): phi_{phi z}(x) = phi_z(x/p)
    PerfSeries zp = mirabolic_act(z, 1, fi(p, 12, 1), 0, fi(p, 12, 0));
    grid([&](const PadicInt& x) {
        PadicInt xp = x; xp.v -= 1;
        CHECK(padic_eq_at(phi_z(zp, x), phi_z(z, xp), n));
    });

    // (a, 0): phi_{sigma_a z}(x) = a^{-1} phi_z(x/a)
    PadicInt a = fi(p, 12, 2), ainv = padic_inv(a);
    PerfSeries za = mirabolic_act(z, 0, a, 0, fi(p, 12, 0));
    grid([&](const PadicInt& x) {
        CHECK(padic_eq_at(phi_z(za, x),
                          padic_mul(ainv, phi_z(z, padic_mul(x, ainv))), n));
    });

    // (1, b) with b = 2/p: phi_{eps^b z}(x) = phi_z(x - b)
    PerfSeries zb = mirabolic_act(z, 0, fi(p, 12, 1), 1, fi(p, 12, 2));
    PadicInt b{p, 12, -1, 2};
    grid([&](const PadicInt& x) {
        CHECK(padic_eq_at(phi_z(zb, x), phi_z(z, padic_sub(x, b)), n));
    });
}
