#include "fontaine/principal_series.hpp"

#include <algorithm>

namespace fontaine {

namespace {

int32_t residue_degree(uint32_t p) { return p == 2 ? 2 : (int32_t)p - 1; }

void check_pair(const Character& d1, const Character& d2) {
    if (d1.p != d2.p)
        throw input_error("parameter point: characters over different primes");
    if (d1.n < 1 || d2.n < 1)
        throw input_error("parameter point: characters carry no digits");
}

bool is_unit_coordinate(const PadicInt& x) {
    bool exact = true;
    return padic_valuation(x, &exact) == 0;
}

} // namespace

ParamPoint param_point(const Character& d1, const Character& d2) {
    check_pair(d1, d2);
    ParamPoint z;
    z.delta1 = d1;
    z.delta2 = d2;
    return z;
}

ParamPoint param_point(const Character& d1, const Character& d2,
                       const HomQpStar& line) {
    check_pair(d1, d2);
    ParamPoint z;
    z.delta1 = d1;
    z.delta2 = d2;
    z.has_line = true;
    z.line = line;
    return z;
}

int32_t param_digits(const ParamPoint& z) {
    check_pair(z.delta1, z.delta2);
    return std::min(z.delta1.n, z.delta2.n);
}

bool param_on_blowup(const ParamPoint& z, int32_t m) {
    Character chi = character_cyclotomic(z.delta1.p, std::max(z.delta2.n, m));
    return character_eq_at(z.delta1, character_mul(chi, z.delta2), m);
}

bool param_pathological(const ParamPoint& z, int32_t m) {
    return character_eq_at(z.delta1, z.delta2, m);
}

ParamPoint validate_param(const ParamPoint& z) {
    int32_t m = param_digits(z);
    bool blowup = param_on_blowup(z, m);
    if (blowup && !z.has_line)
        throw input_error(
            "validate_param: the fiber over delta1 = chi*delta2 is a "
            "projective line, a line direction is required");
    if (!blowup && z.has_line)
        throw input_error(
            "validate_param: the fiber is a single point away from "
            "delta1 = chi*delta2, no line may be given");
    if (z.has_line) {
        if (z.line.c_vp.p != z.delta1.p || z.line.c_tau.p != z.delta1.p)
            throw input_error("validate_param: line over the wrong prime");
        if (!is_unit_coordinate(z.line.c_vp) && !is_unit_coordinate(z.line.c_tau))
            throw input_error(
                "validate_param: the line needs a unit coordinate to name "
                "a direction at this precision");
    }
    return z;
}

HomQpStar kummer_iota(const QpStarElement& alpha) {
    int32_t f = residue_degree(alpha.u.p);
    PadicInt t = tau(alpha);
    HomQpStar out;
    out.c_vp = padic_mul_int(t, -(long long)f);
    out.c_tau = padic_mul_int(padic_from_int(alpha.u.p, t.n, alpha.k),
                              (long long)f);
    return out;
}

GaloisRepRecipe galois_rep(const ParamPoint& z) {
    validate_param(z);
    int32_t m = param_digits(z);
    GaloisRepRecipe out;
    out.delta1 = z.delta1;
    out.delta2 = z.delta2;
    if (param_pathological(z, m)) {
        out.kind = RepKind::split;
        return out;
    }
    if (z.has_line) {
        // orthogonal of the line under <l, Kum(alpha)> = l(alpha): with
        // v_p(p) = 1, tau(p) = 0, v_p(a) = 0, tau(a) = 1 the pairing of
        // c_vp*v_p + c_tau*tau against x*Kum(p) + y*Kum(a) is
        // c_vp*x + c_tau*y, so the kernel is spanned by (c_tau, -c_vp)
        out.kind = RepKind::nonsplit_with_class;
        out.has_class = true;
        out.kum_p = z.line.c_tau;
        out.kum_a = padic_neg(z.line.c_vp);
        return out;
    }
    out.kind = RepKind::nonsplit_unique;
    return out;
}

JacquetImageDesc jacquet_image(const ParamPoint& z) {
    validate_param(z);
    int32_t m = param_digits(z);
    uint32_t p = z.delta1.p;
    int32_t n = std::max(z.delta1.n, z.delta2.n);
    Character chi = character_cyclotomic(p, n);
    JacquetImageDesc out;
    if (z.has_line) {
        out.is_line = true;
        out.line = z.line;
        out.twist = z.delta2;
        out.tail = character_trivial(p, n);
        return out;
    }
    out.tail = character_mul(chi, character_mul(z.delta2, character_inv(z.delta1)));
    out.twist = character_mul(character_inv(chi), z.delta1);
    out.pathological = param_pathological(z, m);
    return out;
}

PeriodicTail materialize_tail(const Character& delta, int32_t m) {
    uint32_t p = delta.p;
    int32_t n = delta.n;
    int32_t c = log_branch_exponent(p);
    if (m < n + c)
        throw truncation_too_small(
            "materialize_tail: unit level m must be at least n + c(p) to "
            "determine the character on units");
    uint64_t rp = padic_residue(delta.value_p, n);
    uint64_t pn = pow_mod_base(p, n);
    if (rp % p == 0)
        throw not_a_unit("materialize_tail: delta(p) must be a unit");
    // multiplicative order of delta(p) mod p^n bounds the p-direction period
    int64_t group_order = (int64_t)(p - 1) * (int64_t)pow_mod_base(p, n - 1);
    int32_t r = 1;
    uint64_t t = rp % pn;
    while (t != 1 % pn) {
        t = (t * rp) % pn;
        ++r;
        if (r > group_order)
            throw error("internal: order search escaped the unit group");
    }
    PeriodicTail tail = tail_make(p, n, m, r);
    uint64_t pm = pow_mod_base(p, m);
    PadicInt vp = delta.value_p;
    for (uint64_t u = 0; u < pm; ++u) {
        if (u % p == 0) continue;
        PadicInt uu = padic_from_int(p, m, (long long)u);
        PadicInt du = char_eval_unit(delta, uu);
        PadicInt pw = padic_from_int(p, n, 1);
        for (int32_t j = 0; j < r; ++j) {
            tail.table[u][j] = padic_mul(pw, du);
            pw = padic_mul(pw, vp);
        }
    }
    return tail;
}

bool catego_check(const ParamPoint& z, const SeriesRing& R, IotaPipeline pipe) {
    validate_param(z);
    if (R.p != z.delta1.p)
        throw input_error("catego_check: ring prime does not match the point");
    int32_t m = std::min(param_digits(z), R.n);
    if (param_pathological(z, m))
        throw pathological_point(
            "catego_check: delta1 = delta2 carries no extension data");

    GaloisRepRecipe rec = galois_rep(z);
    JacquetImageDesc jac = jacquet_image(z);
    uint32_t p = z.delta1.p;
    Character chi = character_cyclotomic(p, std::max(z.delta1.n, z.delta2.n));

    if (!jac.is_line) {
        // away from the blown-up locus both sides must name the unique
        // nonsplit extension, and the Jacquet tag must reconstruct the pair
        if (rec.kind != RepKind::nonsplit_unique) return false;
        Character d1_back = character_mul(chi, jac.twist);
        Character d2_back = character_mul(jac.tail, jac.twist);
        return character_eq_at(d1_back, z.delta1, m) &&
               character_eq_at(d2_back, z.delta2, m) &&
               !character_is_trivial_at(jac.tail, m) &&
               !character_eq_at(jac.tail, chi, m);
    }

    // blown-up locus: rebuild the Galois-side class as an explicit cocycle
    // through the certified Kummer dictionary, push it through iota, and
    // test that the resulting homomorphism spans the Jacquet line
    if (rec.kind != RepKind::nonsplit_with_class || !rec.has_class)
        return false;
    KummerIdentification kid = kummer_identify(R);
    std::vector<Cocycle> bs = basis_h1_cyclotomic(R);

    // basis classes in Kummer coordinates: b_i = (A_i Kum(a) + P_i Kum(p))/f;
    // invert the 2x2 to write the class x*Kum(p) + y*Kum(a) on the basis
    const PadicInt &A0 = kid.kum_a[0], &A1 = kid.kum_a[1];
    const PadicInt &P0 = kid.kum_p[0], &P1 = kid.kum_p[1];
    PadicInt det = padic_sub(padic_mul(A0, P1), padic_mul(P0, A1));
    if (!is_unit_coordinate(det))
        throw error("internal: degenerate Kummer dictionary");
    PadicInt x = rec.kum_p, y = rec.kum_a;
    PadicInt fdet = padic_mul_int(padic_inv(det), (long long)kid.fdeg);
    PadicInt cb1 = padic_mul(fdet, padic_sub(padic_mul(y, P1), padic_mul(x, A1)));
    PadicInt cb2 = padic_mul(fdet, padic_sub(padic_mul(x, A0), padic_mul(y, P0)));

    Cocycle cz;
    cz.delta = bs[0].delta;
    cz.u = series_add(series_scale(bs[0].u, cb1), series_scale(bs[1].u, cb2));
    cz.v = series_add(series_scale(bs[0].v, cb1), series_scale(bs[1].v, cb2));

    HomQpStar h = pipe == IotaPipeline::direct_dilation ? iota_chi_direct(cz)
                                                        : iota_chi_decompose(cz);

    // the theorem: iota of the orthogonal class spans the original line
    PadicInt cross = padic_sub(padic_mul(h.c_vp, jac.line.c_tau),
                               padic_mul(h.c_tau, jac.line.c_vp));
    bool nonzero =
        !padic_is_zero_at(h.c_vp, m) || !padic_is_zero_at(h.c_tau, m);
    return nonzero && padic_is_zero_at(cross, m);
}

bool catego_check(const ParamPoint& z) {
    uint32_t p = z.delta1.p;
    int32_t n = param_digits(z);
    SeriesRing R = series_ring(p, n, 16 * (int32_t)p, 8 * (int32_t)p);
    return catego_check(z, R);
}

} // namespace fontaine
