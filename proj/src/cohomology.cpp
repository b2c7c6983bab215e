#include "fontaine/cohomology.hpp"

#include "fontaine/dictionary.hpp"
#include "fontaine/linalg.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace fontaine {

namespace {

constexpr uint64_t kModulusCap = (uint64_t(1) << 31);

int32_t max_digits(uint32_t p) {
    int32_t n = 0;
    uint64_t m = 1;
    while (m * p < kModulusCap) {
        m *= p;
        ++n;
    }
    return n;
}

// digits carried by group elements acting through substitutions; the
// exponent of (1+pi)^a needs log_p(N) digits beyond the coefficients
int32_t action_digits(uint32_t p, int32_t n) {
    return std::min(n + 6, max_digits(p));
}

PadicInt gamma_generator(uint32_t p, int32_t n) {
    return exp_generator(p, action_digits(p, n));
}

PadicInt torsion_generator(uint32_t p, int32_t n) {
    int32_t D = action_digits(p, n);
    if (p == 2) return padic_from_int(2, D, -1);
    for (uint32_t g = 2; g < p; ++g) {
        uint32_t ord = 1;
        uint64_t x = g % p;
        while (x != 1) {
            x = x * g % p;
            ++ord;
        }
        if (ord == p - 1) return teichmuller(padic_from_int(p, D, (long long)g));
    }
    throw error("internal: no generator of the torsion subgroup");
}

void check_prime(const Character& d, const LaurentSeries& x, const char* who) {
    if (d.p != x.ring.p) throw input_error(std::string(who) + ": prime mismatch");
}

// rows <coefficient e of image[k]> * x_k = <coefficient e of rhs> for
// e in [row_lo, row_hi); rhs == nullptr means a zero right-hand side
void fill_rows(ZpnMatrix& A, std::vector<uint64_t>& b, size_t& next_row,
               const std::vector<LaurentSeries>& image, const LaurentSeries* rhs,
               int32_t row_lo, int32_t row_hi, int32_t n) {
    for (int32_t e = row_lo; e < row_hi; ++e) {
        for (size_t k = 0; k < image.size(); ++k)
            A.at(next_row, k) = padic_residue(series_coeff(image[k], e), n);
        if (rhs) b[next_row] = padic_residue(series_coeff(*rhs, e), n);
        ++next_row;
    }
}

// drop coefficient digits down to the target ring precision
LaurentSeries series_reduce(const LaurentSeries& f, const SeriesRing& R) {
    if (f.ring.n < R.n) throw error("internal: series_reduce would fake precision");
    LaurentSeries out = series_zero(R);
    out.w = f.w;
    out.lo = f.lo;
    out.N = f.N;
    uint64_t m = pow_mod_base(R.p, R.n);
    out.c.resize(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) out.c[i] = f.c[i] % m;
    return series_trim(out);
}

LaurentSeries series_from_solution(const SeriesRing& R, int32_t d_lo, int32_t d_hi,
                                   const std::vector<uint64_t>& sol) {
    LaurentSeries x = series_zero(R);
    x.lo = d_lo;
    x.N = d_hi;
    x.c.assign(sol.begin(), sol.begin() + (d_hi - d_lo));
    return series_trim(x);
}

/*
 * Solve (delta(a) sigma_a - 1) x = y inside the psi = 0 subspace.  The
 * subspace is exactly the span of (1+pi)^i phi(w), 1 <= i <= p-1, so x is
 * parametrized as sum_i (1+pi)^i phi(w_i) and the w_i coefficients become
 * the unknowns of an exact Z/p^n system.  Every basis image starts at
 * degree p*d, so each coefficient row below p*DW only involves unknowns
 * inside the window and the truncation of the true solution satisfies all
 * rows.  Callers re-certify the output through the cocycle identity.
 */
LaurentSeries solve_gamma_psi0(const Character& delta, const LaurentSeries& y) {
    const SeriesRing R = y.ring;
    const uint32_t p = R.p;
    const int32_t n = R.n;
    PadicInt a = gamma_generator(p, n);

    LaurentSeries yt = series_trim(y);
    int32_t Pw = series_pole(yt) / (int32_t)p + 2;
    int32_t DW = std::min(R.N - 2, y.N - 2) / (int32_t)p;
    if (DW <= 0) throw truncation_too_small("twisted gamma solve: no room for unknowns");

    std::vector<LaurentSeries> base, img;
    int32_t E = std::min(y.N, (int32_t)p * DW);
    for (uint32_t i = 1; i < p; ++i) {
        LaurentSeries shift = series_onepluspi_pow_int(R, (long long)i);
        for (int32_t d = -Pw; d < DW; ++d) {
            LaurentSeries b0 = series_mul(shift, series_frobenius(series_pi_pow(R, d)));
            LaurentSeries im =
                series_sub(series_scale(series_gamma(b0, a), delta.value_a), b0);
            E = std::min({E, b0.N, im.N});
            base.push_back(b0);
            img.push_back(im);
        }
    }

    int32_t rlo = -(int32_t)p * Pw;
    if (E <= rlo) throw truncation_too_small("twisted gamma solve: empty row window");
    size_t rows = size_t(E - rlo);
    ZpnMatrix A = zpn_matrix(p, n, rows, base.size());
    std::vector<uint64_t> b(rows, 0);
    size_t next = 0;
    fill_rows(A, b, next, img, &yt, rlo, E, n);

    ZpnSolveResult res = zpn_solve(A, b);
    if (!res.solvable)
        throw singular_system("twisted gamma solve infeasible: " + res.certificate);

    LaurentSeries x = series_zero(R);
    x.N = E;
    for (size_t k = 0; k < base.size(); ++k)
        if (res.particular[k] != 0)
            x = series_add(x, series_scale_int(base[k], (long long)res.particular[k]));
    // the rows certify coefficients below E only
    x.N = std::min(x.N, E);
    if (!x.c.empty() && x.lo + (int32_t)x.c.size() > E)
        x.c.resize(size_t(E - x.lo));
    return series_trim(x);
}

} // namespace

LaurentSeries phi_twisted(const Character& delta, const LaurentSeries& x) {
    check_prime(delta, x, "phi_twisted");
    return series_scale(series_frobenius(x), delta.value_p);
}

LaurentSeries gamma_twisted(const Character& delta, const LaurentSeries& x) {
    check_prime(delta, x, "gamma_twisted");
    PadicInt a = gamma_generator(x.ring.p, x.ring.n);
    return series_scale(series_gamma(x, a), delta.value_a);
}

LaurentSeries torsion_twisted(const Character& delta, const LaurentSeries& x) {
    check_prime(delta, x, "torsion_twisted");
    PadicInt w = torsion_generator(x.ring.p, x.ring.n);
    return series_scale(series_gamma(x, w), char_eval_unit(delta, w));
}

Cocycle coboundary(const Character& delta, const LaurentSeries& x) {
    Cocycle c;
    c.delta = delta;
    c.u = series_sub(phi_twisted(delta, x), x);
    c.v = series_sub(gamma_twisted(delta, x), x);
    return c;
}

LaurentSeries cocycle_defect(const Cocycle& c) {
    LaurentSeries lhs = series_sub(gamma_twisted(c.delta, c.u), c.u);
    LaurentSeries rhs = series_sub(phi_twisted(c.delta, c.v), c.v);
    return series_sub(lhs, rhs);
}

bool is_cocycle(const Cocycle& c) {
    LaurentSeries d = cocycle_defect(c);
    return series_is_zero_at(d, d.ring.n, d.N);
}

bool is_torsion_invariant(const Cocycle& c) {
    LaurentSeries du = series_sub(torsion_twisted(c.delta, c.u), c.u);
    LaurentSeries dv = series_sub(torsion_twisted(c.delta, c.v), c.v);
    return series_is_zero_at(du, du.ring.n, du.N) &&
           series_is_zero_at(dv, dv.ring.n, dv.N);
}

std::vector<Cocycle> basis_h1_trivial(const SeriesRing& R) {
    Character one = character_trivial(R.p, R.n);
    return {Cocycle{one, series_one(R), series_zero(R)},
            Cocycle{one, series_zero(R), series_one(R)}};
}

std::vector<Cocycle> basis_h1_cyclotomic(const SeriesRing& R) {
    if (R.p == 2)
        throw input_error("basis_h1_cyclotomic: the construction divides by 2, odd p only");
    // Work at one extra coefficient digit and reduce at the end: the twisted
    // gamma operator has p-torsion kernel at finite precision, so the linear
    // solver may return the true preimage plus junk of coefficient valuation
    // n_hi - 1.  Reduction to n digits erases exactly that junk and leaves the
    // minimal-pole representative.
    SeriesRing Rhi = series_ring(R.p, R.n + 1, R.N, R.pole_cap);
    Character chi_hi = character_cyclotomic(Rhi.p, Rhi.n);

    // first class: u1 = 1/pi + 1/2, v1 the unique preimage of
    // (gamma_D - 1)u1 under phi - 1 inside pi*A+
    LaurentSeries u1 = series_add(series_pi_pow(Rhi, -1),
                                  series_const(Rhi, padic_from_ratio(Rhi.p, Rhi.n, 1, 2)));
    LaurentSeries y1 = series_trim(series_sub(gamma_twisted(chi_hi, u1), u1));
    if (!y1.c.empty() && y1.lo < 1)
        throw error("internal: (gamma_D - 1)(1/pi + 1/2) escaped pi*A+");
    LaurentSeries v1 = solve_phi_minus_one(y1);

    // second class: v2 = 1/pi, u2 the psi = 0 preimage of (phi_D - 1)v2
    // under gamma_D - 1
    LaurentSeries v2 = series_pi_pow(Rhi, -1);
    LaurentSeries y2 = series_sub(phi_twisted(chi_hi, v2), v2);
    LaurentSeries u2 = solve_gamma_psi0(chi_hi, y2);

    // when the right-hand side is invariant under the twisted torsion action
    // (true at p = 3, where the orbit shift of 1/pi is an exact constant and
    // the character is trivial on p), the unique psi = 0 solution is itself
    // invariant; averaging over the torsion orbit then projects the solver's
    // representative onto the invariant part, discarding finite-window junk
    // in the non-invariant directions while keeping the equation exact
    LaurentSeries ty = series_sub(torsion_twisted(chi_hi, y2), y2);
    if (series_is_zero_at(ty, Rhi.n, ty.N)) {
        uint32_t f = Rhi.p - 1;
        LaurentSeries acc = u2;
        LaurentSeries cur = u2;
        for (uint32_t j = 1; j < f; ++j) {
            cur = torsion_twisted(chi_hi, cur);
            acc = series_add(acc, cur);
        }
        u2 = series_scale(acc, padic_from_ratio(Rhi.p, Rhi.n, 1, (long long)f));
    }

    Character chi = character_cyclotomic(R.p, R.n);
    Cocycle c1{chi, series_reduce(u1, R), series_reduce(v1, R)};
    Cocycle c2{chi, series_reduce(u2, R), series_reduce(v2, R)};
    if (!is_cocycle(c1) || !is_cocycle(c2))
        throw error("internal: cyclotomic basis fails the cocycle identity");
    return {c1, c2};
}

PadicInt cup_trace(const Cocycle& ct, const Cocycle& c) {
    if (ct.u.ring.p != c.u.ring.p) throw input_error("cup_trace: prime mismatch");
    const uint32_t p = ct.u.ring.p;
    int32_t m = std::min(ct.delta.n, c.delta.n);
    if (!character_eq_at(ct.delta, character_cyclotomic(p, ct.delta.n), m))
        throw input_error("cup_trace: first class must carry the cyclotomic twist");
    if (!character_is_trivial_at(c.delta, m))
        throw input_error("cup_trace: second class must carry the trivial character");
    PadicInt a = gamma_generator(p, std::min(ct.u.ring.n, c.u.ring.n));
    // group-cohomology cup on one-cocycles: pair the phi-slot of the first
    // class with phi applied to the gamma-slot of the second, minus the
    // gamma-slot of the first against gamma applied to the phi-slot of the
    // second; the second class carries the trivial character, so its actions
    // are the plain operators
    LaurentSeries s = series_sub(series_mul(ct.u, series_frobenius(c.v)),
                                 series_mul(ct.v, series_gamma(c.u, a)));
    return residue_log(s);
}

H1Class h1_decompose(const Cocycle& c) {
    const SeriesRing R = c.u.ring;
    const uint32_t p = R.p;
    const int32_t n = R.n;
    if (!character_eq_at(c.delta, character_cyclotomic(p, c.delta.n),
                         std::min(c.delta.n, n)))
        throw input_error("h1_decompose: expects a cyclotomic-twist cocycle");
    if (!is_cocycle(c)) throw input_error("h1_decompose: not a cocycle");

    std::vector<Cocycle> basis = basis_h1_cyclotomic(R);
    std::vector<Cocycle> triv = basis_h1_trivial(R);
    // the cup pairing against the trivial-character basis reads off the
    // coordinates and kills every coboundary
    PadicInt alpha = cup_trace(c, triv[1]);
    PadicInt beta = padic_neg(cup_trace(c, triv[0]));

    LaurentSeries ru = series_trim(series_sub(
        c.u, series_add(series_scale(basis[0].u, alpha), series_scale(basis[1].u, beta))));
    LaurentSeries rv = series_trim(series_sub(
        c.v, series_add(series_scale(basis[0].v, alpha), series_scale(basis[1].v, beta))));

    // witness window: a coboundary with phi-slot pole p*k comes from pole k
    int32_t P = 2;
    if (!ru.c.empty())
        P = std::max(P, (series_pole(ru) + (int32_t)p - 1) / (int32_t)p + 1);
    if (!rv.c.empty()) P = std::max(P, series_pole(rv) + 1);

    Character chi = character_cyclotomic(p, n);
    int32_t DM = std::min({ru.N, rv.N, R.N - 2});
    std::vector<LaurentSeries> fcol, gcol;
    int32_t E = DM;
    for (int32_t d = -P; d < DM; ++d) {
        LaurentSeries mono = series_pi_pow(R, d);
        LaurentSeries fi = series_sub(phi_twisted(chi, mono), mono);
        LaurentSeries gi = series_sub(gamma_twisted(chi, mono), mono);
        E = std::min({E, fi.N, gi.N});
        fcol.push_back(fi);
        gcol.push_back(gi);
    }
    if (E < DM) {
        DM = E;
        fcol.resize(size_t(DM + P));
        gcol.resize(size_t(DM + P));
    }

    // the phi block must cover the whole pole range of the residual
    int32_t flo = std::min(-(int32_t)p * P, ru.c.empty() ? 0 : ru.lo);
    int32_t glo = std::min(-P, rv.c.empty() ? 0 : rv.lo);

    size_t rows = size_t(E - flo) + size_t(E - glo);
    size_t cols = size_t(DM + P);
    ZpnMatrix A = zpn_matrix(p, n, rows, cols);
    std::vector<uint64_t> b(rows, 0);
    size_t next = 0;
    fill_rows(A, b, next, fcol, &ru, flo, E, n);
    fill_rows(A, b, next, gcol, &rv, glo, E, n);

    ZpnSolveResult res = zpn_solve(A, b);
    if (!res.solvable)
        throw singular_system("h1_decompose: no coboundary witness at this truncation: " +
                              res.certificate);

    H1Class out;
    out.delta = c.delta;
    out.alpha = alpha;
    out.beta = beta;
    out.certificate = series_from_solution(R, -P, DM, res.particular);
    out.window = E;
    return out;
}

HomQpStar iota_chi_decompose(const Cocycle& c) {
    H1Class h = h1_decompose(c);
    return HomQpStar{h.alpha, h.beta};
}

HomQpStar iota_chi_direct(const Cocycle& c) {
    const uint32_t p = c.u.ring.p;
    const int32_t n = c.u.ring.n;
    if (!character_eq_at(c.delta, character_cyclotomic(p, c.delta.n),
                         std::min(c.delta.n, n)))
        throw input_error("iota_chi_direct: expects a cyclotomic-twist cocycle");
    if (!is_cocycle(c)) throw input_error("iota_chi_direct: not a cocycle");

    // tabulate phi_u on Z_p; one level beyond n + c keeps tau certified
    int32_t m = n + log_branch_exponent(p) + 1;
    uint64_t pm = pow_mod_base(p, m);
    int32_t digs = std::min(m + n + 3, max_digits(p));

    // average the attached function over the tame torsion scalings.  This
    // reads a cohomologous, torsion-normalized representative: whatever
    // ambiguity then remains is twisted-invariant with psi = 0, and such a
    // series has a constant attached function on the units, which the tail
    // normalization absorbs.  Without this, a torsion-dirty representative
    // leaks a unit-grid component that is no homomorphism.
    std::vector<PadicInt> tinv;
    for (uint32_t i = 1; i < p; ++i)
        tinv.push_back(
            padic_inv(teichmuller(padic_from_int(p, digs, (long long)i))));
    PadicInt inv_count = padic_inv(padic_from_int(p, digs, (long long)(p - 1)));
    std::vector<PadicInt> vals;
    vals.reserve(pm);
    for (uint64_t bb = 0; bb < pm; ++bb) {
        PadicInt x = padic_from_int(p, digs, (long long)bb);
        PadicInt acc{p, n, 0, 0};
        for (const PadicInt& t : tinv)
            acc = padic_add(acc, phi_f(c.u, padic_mul(x, t)));
        vals.push_back(padic_mul(acc, inv_count));
    }
    LCFunctionZp fu = lc_make(p, n, m, vals);

    DilationSolution sol = dilation_solve(fu);
    return tail_class_to_hom(sol.f.tail);
}

std::vector<LaurentSeries> h0_compute(const SeriesRing& R, const Character& delta) {
    const uint32_t p = R.p;
    const int32_t n = R.n;
    if (delta.p != p) throw input_error("h0_compute: prime mismatch");

    int32_t P = 2;
    int32_t DM = R.N - 2;
    std::vector<LaurentSeries> fcol, gcol, wcol;
    int32_t E = DM;
    for (int32_t d = -P; d < DM; ++d) {
        LaurentSeries mono = series_pi_pow(R, d);
        LaurentSeries fi = series_sub(phi_twisted(delta, mono), mono);
        LaurentSeries gi = series_sub(gamma_twisted(delta, mono), mono);
        LaurentSeries wi = series_sub(torsion_twisted(delta, mono), mono);
        E = std::min({E, fi.N, gi.N, wi.N});
        fcol.push_back(fi);
        gcol.push_back(gi);
        wcol.push_back(wi);
    }
    if (E < DM) {
        DM = E;
        fcol.resize(size_t(DM + P));
        gcol.resize(size_t(DM + P));
        wcol.resize(size_t(DM + P));
    }

    int32_t flo = -(int32_t)p * P;
    size_t rows = size_t(E - flo) + 2 * size_t(E + P);
    size_t cols = size_t(DM + P);
    ZpnMatrix A = zpn_matrix(p, n, rows, cols);
    std::vector<uint64_t> b(rows, 0);
    size_t next = 0;
    fill_rows(A, b, next, fcol, nullptr, flo, E, n);
    fill_rows(A, b, next, gcol, nullptr, -P, E, n);
    fill_rows(A, b, next, wcol, nullptr, -P, E, n);

    ZpnSolveResult res = zpn_solve(A, b);
    std::vector<LaurentSeries> out;
    for (const ZpnKernelGen& g : res.kernel)
        if (g.order_exp == n) out.push_back(series_from_solution(R, -P, DM, g.vec));
    return out;
}

KummerIdentification kummer_identify(const SeriesRing& R) {
    std::vector<Cocycle> ct = basis_h1_cyclotomic(R);
    std::vector<Cocycle> tv = basis_h1_trivial(R);
    KummerIdentification K;
    K.fdeg = (R.p == 2) ? 2 : (int32_t)R.p - 1;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) K.pairing[i][j] = cup_trace(ct[size_t(i)], tv[size_t(j)]);
    // writing class_i = (x_i Kum(a) + y_i Kum(p)) / fdeg, pairing it with
    // the classes of v_p and tau (values v_p(a)=0, tau(a)=1, v_p(p)=1,
    // tau(p)=0 and a sign for the cup order) gives x_i = -pairing[i][1],
    // y_i = -pairing[i][0] after the fdeg factors cancel
    for (int i = 0; i < 2; ++i) {
        K.kum_a[i] = padic_neg(K.pairing[i][1]);
        K.kum_p[i] = padic_neg(K.pairing[i][0]);
    }
    return K;
}

} // namespace fontaine
