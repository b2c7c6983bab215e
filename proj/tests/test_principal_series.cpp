#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fontaine/principal_series.hpp"

#include <vector>

using namespace fontaine;

namespace {

PadicInt fi(uint32_t p, int32_t n, long long v) { return padic_from_int(p, n, v); }

HomQpStar hom(uint32_t p, int32_t n, long long cvp, long long ctau) {
    HomQpStar h;
    h.c_vp = fi(p, n, cvp);
    h.c_tau = fi(p, n, ctau);
    return h;
}

Character chi_pow(uint32_t p, int32_t n, int k) {
    Character c = character_trivial(p, n);
    Character chi = character_cyclotomic(p, n);
    for (int i = 0; i < k; ++i) c = character_mul(c, chi);
    return c;
}

} // namespace

TEST_CASE("parameter validation enforces the fiber rule") {
    const uint32_t p = 3;
    const int32_t n = 2;
    Character one = character_trivial(p, n);
    Character chi = character_cyclotomic(p, n);
    Character chi2 = chi_pow(p, n, 2);
    Character unr2 = character_unramified(p, n, fi(p, n, 2));

    // a line is required exactly over delta1 = chi * delta2
    CHECK_NOTHROW(validate_param(param_point(chi, one, hom(p, n, 1, 0))));
    CHECK_NOTHROW(validate_param(param_point(chi2, one)));
    CHECK_THROWS_AS(validate_param(param_point(chi, one)), input_error);
    CHECK_THROWS_AS(validate_param(param_point(chi2, one, hom(p, n, 1, 0))),
                    input_error);
    // the blown-up locus is detected through twists as well
    CHECK(param_on_blowup(param_point(character_mul(chi, unr2), unr2), n));
    CHECK_NOTHROW(validate_param(
        param_point(character_mul(chi, unr2), unr2, hom(p, n, 0, 1))));
    // chi^2 over chi sits on the locus too: chi*delta2 = chi^2 = delta1
    CHECK_THROWS_AS(validate_param(param_point(chi2, chi)), input_error);
    CHECK_NOTHROW(validate_param(param_point(chi2, chi, hom(p, n, 1, 1))));

    // a projective line needs a unit coordinate
    HomQpStar bad;
    bad.c_vp = fi(p, n, 3);
    bad.c_tau = fi(p, n, 6);
    CHECK_THROWS_AS(validate_param(param_point(chi, one, bad)), input_error);

    // mismatched primes are structural errors
    CHECK_THROWS_AS(param_point(character_trivial(5, n), one), input_error);

    // the pathological locus is flagged, not rejected, at this stage
    CHECK(param_pathological(param_point(unr2, unr2), n));
    CHECK_NOTHROW(validate_param(param_point(unr2, unr2)));
}

TEST_CASE("kummer iota formula on the standard points") {
    for (uint32_t p : {3u, 5u}) {
        const int32_t n = 3;
        int32_t f = (int32_t)p - 1;
        CAPTURE(p);
        // alpha = p: v_p = 1, tau = 0 -> f * tau
        HomQpStar hp = kummer_iota(qpstar_make(1, fi(p, n, 1)));
        CHECK(padic_is_zero_at(hp.c_vp, n - 1));
        CHECK(padic_eq_at(hp.c_tau, fi(p, n, f), n - 1));
        // alpha = a: v_p = 0, tau = 1 -> -f * v_p
        HomQpStar ha = kummer_iota(qpstar_make(0, exp_generator(p, n + 1)));
        CHECK(padic_eq_at(ha.c_vp, fi(p, n, -f), n - 1));
        CHECK(padic_is_zero_at(ha.c_tau, n - 1));
        // alpha = p*a: additivity
        HomQpStar hpa = kummer_iota(qpstar_make(1, exp_generator(p, n + 1)));
        CHECK(padic_eq_at(hpa.c_vp, padic_add(hp.c_vp, ha.c_vp), n - 1));
        CHECK(padic_eq_at(hpa.c_tau, padic_add(hp.c_tau, ha.c_tau), n - 1));
        // torsion units die: both v_p and tau vanish on them
        PadicInt w = teichmuller(fi(p, n + 1, 2));
        HomQpStar hw = kummer_iota(qpstar_make(0, w));
        CHECK(padic_is_zero_at(hw.c_vp, n - 1));
        CHECK(padic_is_zero_at(hw.c_tau, n - 1));
    }
    // p = 2: residue degree 2, a = exp(4)
    HomQpStar h2 = kummer_iota(qpstar_make(0, exp_generator(2, 6)));
    CHECK(padic_eq_at(h2.c_vp, fi(2, 2, -2), 2));
    CHECK(padic_is_zero_at(h2.c_tau, 2));
}

TEST_CASE("galois recipes across the three strata") {
    const uint32_t p = 3;
    const int32_t n = 2;
    Character one = character_trivial(p, n);
    Character chi = character_cyclotomic(p, n);
    Character chi2 = chi_pow(p, n, 2);
    Character unr2 = character_unramified(p, n, fi(p, n, 2));

    // generic point: the unique nonsplit extension
    GaloisRepRecipe g1 = galois_rep(param_point(chi2, one));
    CHECK(g1.kind == RepKind::nonsplit_unique);
    CHECK_FALSE(g1.has_class);

    // blown-up locus: the orthogonal of the line
    GaloisRepRecipe g2 = galois_rep(param_point(chi, one, hom(p, n, 1, 0)));
    CHECK(g2.kind == RepKind::nonsplit_with_class);
    CHECK(padic_is_zero_at(g2.kum_p, n));
    CHECK(padic_eq_at(g2.kum_a, fi(p, n, -1), n));
    GaloisRepRecipe g3 = galois_rep(param_point(chi, one, hom(p, n, 0, 1)));
    CHECK(padic_eq_at(g3.kum_p, fi(p, n, 1), n));
    CHECK(padic_is_zero_at(g3.kum_a, n));

    // the class really is orthogonal: pair it back against the line by
    // evaluating the homomorphism on p^x * a^y
    HomQpStar ell = hom(p, n, 2, 5);
    GaloisRepRecipe g4 = galois_rep(param_point(chi, one, ell));
    long long xv = (long long)padic_lift(g4.kum_p);
    long long yv = (long long)padic_lift(g4.kum_a) - 9; // lift of -2 mod 9
    PadicInt apow = padic_pow_int(exp_generator(p, n + 2), yv);
    QpStarElement alpha = qpstar_make(xv, apow);
    CHECK(padic_is_zero_at(hom_eval(ell, alpha), n));

    // pathological locus: split
    GaloisRepRecipe g5 = galois_rep(param_point(unr2, unr2));
    CHECK(g5.kind == RepKind::split);
    CHECK_FALSE(g5.has_class);
}

TEST_CASE("jacquet image tags and tail materialization") {
    const uint32_t p = 3;
    const int32_t n = 2;
    Character one = character_trivial(p, n);
    Character chi = character_cyclotomic(p, n);
    Character chi2 = chi_pow(p, n, 2);
    Character unr2 = character_unramified(p, n, fi(p, n, 2));

    // (chi^2, 1): tail = chi * 1 * chi^{-2} = chi^{-1}, twist = chi
    JacquetImageDesc j1 = jacquet_image(param_point(chi2, one));
    CHECK_FALSE(j1.is_line);
    CHECK(character_eq_at(j1.tail, character_inv(chi), n));
    CHECK(character_eq_at(j1.twist, chi, n));
    CHECK_FALSE(j1.pathological);

    // line case: the image is the line itself, twisted by delta2
    JacquetImageDesc j2 = jacquet_image(param_point(chi, one, hom(p, n, 1, 0)));
    CHECK(j2.is_line);
    CHECK(padic_eq_at(j2.line.c_vp, fi(p, n, 1), n));
    CHECK(padic_is_zero_at(j2.line.c_tau, n));
    CHECK(character_is_trivial_at(j2.twist, n));

    // pathological pair: tail = chi, flagged
    JacquetImageDesc j3 = jacquet_image(param_point(unr2, unr2));
    CHECK(character_eq_at(j3.tail, chi, n));
    CHECK(j3.pathological);

    // materialized tails: the cyclotomic character has p-period 1 and
    // matches pointwise evaluation on units
    PeriodicTail t1 = materialize_tail(chi, n + 1);
    CHECK(t1.r == 1);
    for (uint64_t u : {1ull, 2ull, 4ull, 7ull, 25ull}) {
        PadicInt uu = fi(p, n + 1, (long long)u);
        CHECK(padic_eq_at(tail_eval(t1, uu, 3), char_eval_unit(chi, uu), n));
    }
    // an unramified character has period the order of delta(p): 4^3 = 64 = 1 mod 9
    PeriodicTail t2 = materialize_tail(character_unramified(p, n, fi(p, n, 4)), n + 1);
    CHECK(t2.r == 3);
    PadicInt u1 = fi(p, n + 1, 1);
    CHECK(padic_eq_at(tail_eval(t2, u1, 0), fi(p, n, 1), n));
    CHECK(padic_eq_at(tail_eval(t2, u1, 1), fi(p, n, 4), n));
    CHECK(padic_eq_at(tail_eval(t2, u1, 2), fi(p, n, 7), n));
    CHECK(padic_eq_at(tail_eval(t2, u1, 3), fi(p, n, 1), n));
    // the materialized jacquet tail equals the product character pointwise
    JacquetImageDesc j4 = jacquet_image(param_point(character_mul(chi2, unr2), one));
    PeriodicTail t4 = materialize_tail(j4.tail, n + 1);
    PadicInt u7 = fi(p, n + 1, 7);
    CHECK(padic_eq_at(tail_eval(t4, u7, 1),
                      padic_mul(j4.tail.value_p, char_eval_unit(j4.tail, u7)),
                      n - 1));

    // level below n + c(p) cannot determine the character on units
    CHECK_THROWS_AS(materialize_tail(chi, n), truncation_too_small);
}

TEST_CASE("round trip for character pairs away from the blown-up locus") {
    const uint32_t p = 3;
    const int32_t n = 2;
    SeriesRing R = series_ring(p, n, 48, 24);
    Character one = character_trivial(p, n);
    Character chi = character_cyclotomic(p, n);
    std::vector<Character> pool = {
        one,
        chi,
        chi_pow(p, n, 2),
        character_unramified(p, n, fi(p, n, 2)),
        character_unramified(p, n, fi(p, n, 4)),
        character_mul(chi, character_unramified(p, n, fi(p, n, 2))),
    };

    int checked = 0;
    for (const Character& d1 : pool) {
        for (const Character& d2 : pool) {
            ParamPoint z = param_point(d1, d2);
            if (param_pathological(z, n)) {
                CHECK_THROWS_AS(catego_check(z, R), pathological_point);
                continue;
            }
            if (param_on_blowup(z, n)) continue; // handled in the line case
            CHECK(catego_check(z, R));
            ++checked;
        }
    }
    CHECK(checked >= 12);

    // twisting both characters by a common delta does not change the answer
    std::vector<Character> twists = {
        one, chi, character_unramified(p, n, fi(p, n, 4)),
        character_mul(chi_pow(p, n, 2), character_unramified(p, n, fi(p, n, 2)))};
    for (const Character& d : twists) {
        for (auto [cv, ct] : {std::pair<int, int>{1, 0}, {0, 1}, {1, 1}}) {
            ParamPoint base = param_point(chi, one, hom(p, n, cv, ct));
            ParamPoint tw = param_point(character_mul(chi, d), d, hom(p, n, cv, ct));
            CHECK(catego_check(tw, R) == catego_check(base, R));
        }
    }
}

TEST_CASE("round trip on the blown-up locus goes through the cocycle machinery") {
    const uint32_t p = 3;
    const int32_t n = 2;
    SeriesRing R = series_ring(p, n, 48, 24);
    Character one = character_trivial(p, n);
    Character chi = character_cyclotomic(p, n);

    // the two coordinate lines and two mixed ones, both iota pipelines
    for (auto [cv, ct] : {std::pair<int, int>{1, 0}, {0, 1}, {1, 1}, {2, 5}}) {
        CAPTURE(cv);
        CAPTURE(ct);
        ParamPoint z = param_point(chi, one, hom(p, n, cv, ct));
        CHECK(catego_check(z, R, IotaPipeline::direct_dilation));
        CHECK(catego_check(z, R, IotaPipeline::decomposition));
    }

    // a twisted point on the locus exercises the same machinery
    Character unr2 = character_unramified(p, n, fi(p, n, 2));
    ParamPoint zt = param_point(character_mul(chi, unr2), unr2, hom(p, n, 1, 1));
    CHECK(catego_check(zt, R));

    // default-ring overload
    CHECK(catego_check(param_point(chi, one, hom(p, n, 0, 1))));

    // p = 5 smoke test through the decomposition pipeline
    SeriesRing R5 = series_ring(5, 2, 60, 30);
    Character one5 = character_trivial(5, 2);
    Character chi5 = character_cyclotomic(5, 2);
    ParamPoint z5 = param_point(chi5, one5, hom(5, 2, 1, 0));
    CHECK(catego_check(z5, R5, IotaPipeline::decomposition));

    // pathological points error out rather than returning false
    Character d = character_unramified(p, n, fi(p, n, 4));
    CHECK_THROWS_AS(catego_check(param_point(d, d), R), pathological_point);
}
