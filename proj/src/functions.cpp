#include "fontaine/functions.hpp"

#include "fontaine/errors.hpp"
#include "fontaine/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace fontaine {
namespace {

constexpr uint64_t kModulusCap = uint64_t(1) << 31;
constexpr uint64_t kGridCap = uint64_t(1) << 18; // finest unit grid we materialize

uint64_t pmod(uint32_t p, int32_t m) {
    uint64_t r = 1;
    for (int32_t i = 0; i < m; ++i) {
        r *= p;
        if (r >= kModulusCap) throw input_error("table modulus exceeds the residue cap");
    }
    return r;
}

int32_t max_digits(uint32_t p) {
    int32_t d = 0;
    uint64_t r = 1;
    while (r * p < kModulusCap) { r *= p; ++d; }
    return d;
}

// residue of an integral value modulo p^n, certified
uint64_t residue_mod_pn(const PadicInt& x, int32_t n) {
    return padic_residue(x, n);
}

PadicInt zero_val(uint32_t p, int32_t n) { return PadicInt{p, n, 0, 0}; }

bool val_eq(const PadicInt& a, const PadicInt& b, int32_t n_mod) {
    return padic_eq_at(a, b, n_mod);
}

void check_same_pn(uint32_t p1, int32_t n1, uint32_t p2, int32_t n2) {
    if (p1 != p2) throw input_error("mixed primes");
    if (n1 != n2) throw input_error("mixed value precisions");
}

std::vector<uint64_t> unit_residues(uint32_t p, int32_t m) {
    uint64_t pm = pmod(p, m);
    std::vector<uint64_t> us;
    us.reserve(size_t(pm - pm / p));
    for (uint64_t u = 0; u < pm; ++u)
        if (u % p != 0) us.push_back(u);
    return us;
}

// smallest primitive root modulo an odd prime
uint64_t primitive_root(uint32_t p) {
    if (p == 2) return 1;
    auto order_is_full = [&](uint64_t g) {
        uint64_t x = 1;
        for (uint32_t e = 1; e < p - 1; ++e) {
            x = (x * g) % p;
            if (x == 1) return false;
        }
        return true;
    };
    for (uint64_t g = 2; g < p; ++g)
        if (order_is_full(g)) return g;
    throw error("internal: no primitive root found");
}

} // namespace

/* ---------------- locally constant functions on Z_p ---------------- */

LCFunctionZp lc_make(uint32_t p, int32_t n, int32_t m,
                     const std::vector<PadicInt>& table) {
    if (n < 1 || m < 0) throw input_error("lc_make: bad parameters");
    uint64_t pm = pmod(p, m);
    if (table.size() != pm) throw input_error("lc_make: table size mismatch");
    return LCFunctionZp{p, n, m, table};
}

LCFunctionZp lc_zero(uint32_t p, int32_t n, int32_t m) {
    return LCFunctionZp{p, n, m, std::vector<PadicInt>(pmod(p, m), zero_val(p, n))};
}

LCFunctionZp lc_indicator(uint32_t p, int32_t n, int32_t m, int32_t mprime,
                          uint64_t b) {
    if (mprime < 0 || mprime > m) throw input_error("lc_indicator: need 0 <= m' <= m");
    uint64_t pm = pmod(p, m), pmp = pmod(p, mprime);
    LCFunctionZp f = lc_zero(p, n, m);
    for (uint64_t i = 0; i < pm; ++i)
        if (i % pmp == b % pmp) f.table[i] = padic_from_int(p, n, 1);
    return f;
}

PadicInt lc_eval(const LCFunctionZp& f, const PadicInt& x) {
    if (x.p != f.p) throw input_error("lc_eval: mixed primes");
    uint64_t idx = residue_mod_pn(x, f.m); // throws if x not integral / too coarse
    return f.table[idx];
}

LCFunctionZp lc_add(const LCFunctionZp& f, const LCFunctionZp& g) {
    check_same_pn(f.p, f.n, g.p, g.n);
    int32_t m = std::max(f.m, g.m);
    uint64_t pm = pmod(f.p, m), pmf = pmod(f.p, f.m), pmg = pmod(f.p, g.m);
    LCFunctionZp h = lc_zero(f.p, f.n, m);
    for (uint64_t i = 0; i < pm; ++i)
        h.table[i] = padic_add(f.table[i % pmf], g.table[i % pmg]);
    return h;
}

LCFunctionZp lc_scale(const LCFunctionZp& f, const PadicInt& c) {
    LCFunctionZp h = f;
    for (auto& v : h.table) v = padic_mul(v, c);
    return h;
}

bool lc_eq_at(const LCFunctionZp& f, const LCFunctionZp& g, int32_t n_mod) {
    check_same_pn(f.p, f.n, g.p, g.n);
    int32_t m = std::max(f.m, g.m);
    uint64_t pm = pmod(f.p, m), pmf = pmod(f.p, f.m), pmg = pmod(f.p, g.m);
    for (uint64_t i = 0; i < pm; ++i)
        if (!val_eq(f.table[i % pmf], g.table[i % pmg], n_mod)) return false;
    return true;
}

/* ---------------- periodic tails on Z_p^* x p^Z ---------------- */

PeriodicTail tail_make(uint32_t p, int32_t n, int32_t m, int32_t r) {
    if (n < 1 || m < 1 || r < 1) throw input_error("tail_make: bad parameters");
    uint64_t pm = pmod(p, m);
    PeriodicTail t{p, n, m, r, {}};
    t.table.assign(pm, std::vector<PadicInt>(size_t(r), zero_val(p, n)));
    return t;
}

PadicInt tail_eval(const PeriodicTail& t, const PadicInt& u, int64_t j) {
    PadicInt un = padic_normalize(u);
    if (un.v != 0 || un.r % t.p == 0) throw input_error("tail_eval: unit part required");
    if (un.n < t.m) throw precision_exhausted("tail_eval: unit needs more digits");
    uint64_t ui = un.r % pmod(t.p, t.m);
    int64_t jm = ((j % t.r) + t.r) % t.r;
    return t.table[ui][size_t(jm)];
}

PeriodicTail tail_vp(uint32_t p, int32_t n) {
    int32_t r = int32_t(pmod(p, n)); // value j mod p^n repeats with period p^n
    PeriodicTail t = tail_make(p, n, 1, r);
    for (auto& row : t.table)
        for (int32_t jm = 0; jm < r; ++jm)
            row[size_t(jm)] = padic_from_int(p, n, jm);
    return t;
}

PeriodicTail tail_tau(uint32_t p, int32_t n, int32_t m) {
    int32_t c = log_branch_exponent(p);
    if (m < n + c) throw truncation_too_small("tail_tau: need m >= n + c(p)");
    PeriodicTail t = tail_make(p, n, m, 1);
    uint64_t pm = pmod(p, m);
    for (uint64_t u = 0; u < pm; ++u) {
        if (u % p == 0) continue;
        PadicInt uu{p, m, 0, u};
        // m >= n + c guarantees tau is certified to n digits of absolute precision
        t.table[u][0] = PadicInt{p, n, 0, padic_residue(tau_unit(uu), n)};
    }
    return t;
}

PeriodicTail tail_const(uint32_t p, int32_t n, const PadicInt& c) {
    PeriodicTail t = tail_make(p, n, 1, 1);
    for (auto& row : t.table) row[0] = c;
    return t;
}

namespace {
// common refinement of two tails: m = max, r = lcm
PeriodicTail tail_refine(const PeriodicTail& t, int32_t m, int32_t r) {
    if (m == t.m && r == t.r) return t;
    PeriodicTail s = tail_make(t.p, t.n, m, r);
    uint64_t pm = pmod(t.p, m), pmt = pmod(t.p, t.m);
    for (uint64_t u = 0; u < pm; ++u) {
        if (u % t.p == 0) continue;
        for (int32_t jm = 0; jm < r; ++jm)
            s.table[u][size_t(jm)] = t.table[u % pmt][size_t(jm % t.r)];
    }
    return s;
}
} // namespace

PeriodicTail tail_add(const PeriodicTail& a, const PeriodicTail& b) {
    check_same_pn(a.p, a.n, b.p, b.n);
    int32_t m = std::max(a.m, b.m);
    int32_t r = std::lcm(a.r, b.r);
    PeriodicTail ra = tail_refine(a, m, r), rb = tail_refine(b, m, r);
    for (uint64_t u = 0; u < ra.table.size(); ++u)
        for (int32_t jm = 0; jm < r; ++jm)
            ra.table[u][size_t(jm)] = padic_add(ra.table[u][size_t(jm)], rb.table[u][size_t(jm)]);
    return ra;
}

PeriodicTail tail_scale(const PeriodicTail& t, const PadicInt& c) {
    PeriodicTail s = t;
    for (auto& row : s.table)
        for (auto& v : row) v = padic_mul(v, c);
    return s;
}

bool tail_eq_at(const PeriodicTail& a, const PeriodicTail& b, int32_t n_mod) {
    check_same_pn(a.p, a.n, b.p, b.n);
    int32_t m = std::max(a.m, b.m);
    int32_t r = std::lcm(a.r, b.r);
    PeriodicTail ra = tail_refine(a, m, r), rb = tail_refine(b, m, r);
    for (uint64_t u = 0; u < ra.table.size(); ++u) {
        if (u % a.p == 0) continue;
        for (int32_t jm = 0; jm < r; ++jm)
            if (!val_eq(ra.table[u][size_t(jm)], rb.table[u][size_t(jm)], n_mod)) return false;
    }
    return true;
}

bool tail_is_zero_at(const PeriodicTail& t, int32_t n_mod) {
    for (uint64_t u = 0; u < t.table.size(); ++u) {
        if (u % t.p == 0) continue;
        for (const auto& v : t.table[u])
            if (!padic_is_zero_at(v, n_mod)) return false;
    }
    return true;
}

/* ---------------- shell functions on Q_p ---------------- */

FunctionQpPP qpp_zero(uint32_t p, int32_t n, int32_t m) {
    FunctionQpPP f;
    f.p = p; f.n = n; f.m = std::max(m, 1);
    f.j_min = f.j_max = 0;
    f.zero_value = zero_val(p, n);
    f.tail = tail_make(p, n, f.m, 1);
    return f;
}

namespace {
// value on the shell p^j * (unit residue u); u is a residue modulo at least
// max(f.m, f.tail.m) digits
PadicInt shell_value(const FunctionQpPP& f, int64_t j, uint64_t u) {
    if (j >= f.j_max) return f.zero_value;
    if (j >= f.j_min)
        return f.shells[size_t(j - f.j_min)][u % pmod(f.p, f.m)];
    int64_t jm = ((j % f.tail.r) + f.tail.r) % f.tail.r;
    return f.tail.table[u % pmod(f.p, f.tail.m)][size_t(jm)];
}

int32_t grid_m(const FunctionQpPP& f) { return std::max(f.m, f.tail.m); }
} // namespace

PadicInt qpp_eval(const FunctionQpPP& f, const PadicInt& x) {
    if (x.p != f.p) throw input_error("qpp_eval: mixed primes");
    PadicInt a = padic_normalize(x);
    if (a.r == 0) {
        // only a lower bound on the valuation is known
        if (a.v + a.n >= f.j_max) return f.zero_value;
        throw precision_exhausted("qpp_eval: cannot place the point in a shell");
    }
    int64_t j = a.v;
    if (j >= f.j_max) return f.zero_value;
    int32_t need = (j >= f.j_min) ? f.m : f.tail.m;
    if (a.n < need) throw precision_exhausted("qpp_eval: unit part needs more digits");
    return shell_value(f, j, a.r % pmod(f.p, need));
}

FunctionQpPP qpp_add(const FunctionQpPP& f, const FunctionQpPP& g) {
    check_same_pn(f.p, f.n, g.p, g.n);
    FunctionQpPP h;
    h.p = f.p; h.n = f.n;
    h.j_min = std::min(f.j_min, g.j_min);
    h.j_max = std::max(f.j_max, g.j_max);
    // a tail that bleeds into the other function's shell range sets the grid
    h.m = std::max(f.m, g.m);
    if (g.j_min < f.j_min) h.m = std::max(h.m, f.tail.m);
    if (f.j_min < g.j_min) h.m = std::max(h.m, g.tail.m);
    uint64_t pm = pmod(h.p, h.m);
    h.zero_value = padic_add(f.zero_value, g.zero_value);
    h.shells.assign(size_t(h.j_max - h.j_min),
                    std::vector<PadicInt>(pm, zero_val(h.p, h.n)));
    for (int32_t j = h.j_min; j < h.j_max; ++j)
        for (uint64_t u = 0; u < pm; ++u) {
            if (u % h.p == 0) continue;
            h.shells[size_t(j - h.j_min)][u] =
                padic_add(shell_value(f, j, u), shell_value(g, j, u));
        }
    h.tail = tail_add(f.tail, g.tail);
    return qpp_normalize(h);
}

FunctionQpPP qpp_scale(const FunctionQpPP& f, const PadicInt& c) {
    FunctionQpPP h = f;
    h.zero_value = padic_mul(h.zero_value, c);
    for (auto& row : h.shells)
        for (auto& v : row) v = padic_mul(v, c);
    h.tail = tail_scale(h.tail, c);
    return h;
}

FunctionQpPP qpp_from_tail(const PeriodicTail& t) {
    FunctionQpPP f;
    f.p = t.p; f.n = t.n; f.m = t.m;
    f.j_min = f.j_max = 0;
    f.zero_value = zero_val(t.p, t.n);
    f.tail = t;
    return f;
}

bool qpp_eq_at(const FunctionQpPP& f, const FunctionQpPP& g, int32_t n_mod) {
    check_same_pn(f.p, f.n, g.p, g.n);
    if (!val_eq(f.zero_value, g.zero_value, n_mod)) return false;
    if (!tail_eq_at(f.tail, g.tail, n_mod)) return false;
    int32_t lo = std::min(f.j_min, g.j_min), hi = std::max(f.j_max, g.j_max);
    int32_t m = std::max(grid_m(f), grid_m(g));
    uint64_t pm = pmod(f.p, m);
    for (int32_t j = lo; j < hi; ++j)
        for (uint64_t u = 0; u < pm; ++u) {
            if (u % f.p == 0) continue;
            if (!val_eq(shell_value(f, j, u), shell_value(g, j, u), n_mod)) return false;
        }
    return true;
}

FunctionQpPP qpp_normalize(const FunctionQpPP& f) {
    FunctionQpPP h = f;
    uint64_t pmg = pmod(h.p, std::max(h.m, h.tail.m));
    // shrink the top while the highest shell is the stable value
    while (h.j_max > h.j_min) {
        bool all = true;
        const auto& top = h.shells.back();
        for (uint64_t u = 0; u < pmod(h.p, h.m) && all; ++u) {
            if (u % h.p == 0) continue;
            all = val_eq(top[u], h.zero_value, h.n);
        }
        if (!all) break;
        h.shells.pop_back();
        --h.j_max;
    }
    // raise the bottom while the lowest shell matches the tail
    while (h.j_min < h.j_max) {
        bool all = true;
        for (uint64_t u = 0; u < pmg && all; ++u) {
            if (u % h.p == 0) continue;
            int64_t jm = ((h.j_min % h.tail.r) + h.tail.r) % h.tail.r;
            all = val_eq(h.shells.front()[u % pmod(h.p, h.m)],
                         h.tail.table[u % pmod(h.p, h.tail.m)][size_t(jm)], h.n);
        }
        if (!all) break;
        h.shells.erase(h.shells.begin());
        ++h.j_min;
    }
    return h;
}

FunctionQpPP pp_decompose(uint32_t p, int32_t n, int32_t m, int32_t j_lo,
                          int32_t j_hi, const PadicInt& zero_value,
                          const std::vector<std::vector<PadicInt>>& shells,
                          int32_t M0, int32_t r_cap) {
    if (j_hi < j_lo || shells.size() != size_t(j_hi - j_lo))
        throw input_error("pp_decompose: shell range mismatch");
    if (M0 < 0) throw input_error("pp_decompose: M0 must be >= 0");
    uint64_t pm = pmod(p, m);
    for (const auto& row : shells)
        if (row.size() != pm) throw input_error("pp_decompose: shell width mismatch");

    auto at = [&](int32_t j, uint64_t u) -> const PadicInt& {
        return shells[size_t(j - j_lo)][u];
    };
    // find the minimal period visible on j <= -M0, demanding two full periods
    int32_t r_found = 0;
    for (int32_t r = 1; r <= r_cap; ++r) {
        if (j_lo > -M0 - 2 * r) break; // not enough depth to certify
        bool ok = true;
        for (int32_t j = j_lo; j <= -M0 - r && ok; ++j)
            for (uint64_t u = 0; u < pm && ok; ++u) {
                if (u % p == 0) continue;
                ok = val_eq(at(j, u), at(j + r, u), n);
            }
        if (ok) { r_found = r; break; }
    }
    if (r_found == 0)
        throw not_eventually_periodic("pp_decompose: no period certified below -M0");

    FunctionQpPP f;
    f.p = p; f.n = n; f.m = m;
    f.zero_value = zero_value;
    f.j_max = j_hi;
    f.j_min = -M0; // shells stored from the first possibly-aperiodic level
    if (f.j_min < j_lo) f.j_min = j_lo;
    f.shells.assign(size_t(f.j_max - f.j_min), std::vector<PadicInt>(pm, zero_val(p, n)));
    for (int32_t j = f.j_min; j < f.j_max; ++j)
        f.shells[size_t(j - f.j_min)] = shells[size_t(j - j_lo)];
    f.tail = tail_make(p, n, m, r_found);
    for (uint64_t u = 0; u < pm; ++u) {
        if (u % p == 0) continue;
        for (int32_t jm = 0; jm < r_found; ++jm) {
            // representative j <= -M0 - r with j = jm (mod r): safely periodic
            int32_t j = -M0 - 2 * r_found + ((jm - (-M0 - 2 * r_found)) % r_found + r_found) % r_found;
            f.tail.table[u][size_t(jm)] = at(j, u);
        }
    }
    return qpp_normalize(f);
}

FunctionQpPP qpp_scale_arg(const FunctionQpPP& f, int32_t k, const PadicInt& a) {
    PadicInt an = padic_normalize(a);
    if (an.v != 0 || an.r % f.p == 0) throw input_error("qpp_scale_arg: a must be a unit");
    int32_t need = grid_m(f);
    if (an.n < need) throw precision_exhausted("qpp_scale_arg: a needs more digits");
    PadicInt ainv = padic_inv(padic_with_precision(an, need));
    uint64_t ai = ainv.r; // unit residue mod p^need

    FunctionQpPP h = f;
    h.j_min = f.j_min + k;
    h.j_max = f.j_max + k;
    uint64_t pmf = pmod(f.p, f.m);
    for (int32_t j = 0; j < f.j_max - f.j_min; ++j)
        for (uint64_t u = 0; u < pmf; ++u) {
            if (u % f.p == 0) continue;
            h.shells[size_t(j)][u] = f.shells[size_t(j)][(u * (ai % pmf)) % pmf];
        }
    uint64_t pmt = pmod(f.p, f.tail.m);
    for (uint64_t u = 0; u < pmt; ++u) {
        if (u % f.p == 0) continue;
        for (int32_t jm = 0; jm < f.tail.r; ++jm) {
            int32_t sj = int32_t((((jm - k) % f.tail.r) + f.tail.r) % f.tail.r);
            h.tail.table[u][size_t(jm)] = f.tail.table[(u * (ai % pmt)) % pmt][size_t(sj)];
        }
    }
    return h;
}

FunctionQpPP qpp_translate_arg(const FunctionQpPP& f, const PadicInt& b) {
    if (b.p != f.p) throw input_error("qpp_translate_arg: mixed primes");
    PadicInt bn = padic_normalize(b);
    int32_t G = std::max(grid_m(f), 1);
    if (bn.r == 0) {
        if (bn.v + bn.n >= f.j_max + G) return f; // translation below resolution
        throw precision_exhausted("qpp_translate_arg: offset known only as 0 at too coarse a scale");
    }
    int32_t beta = bn.v;
    int32_t m_res = G + std::max(0, f.j_max - beta - 1);
    {
        uint64_t sz = 1; // fineness cap: these tables are materialized
        for (int32_t i = 0; i < m_res; ++i) {
            sz *= f.p;
            if (sz > kGridCap)
                throw support_overflow("qpp_translate_arg: unit grid would be too fine");
        }
    }
    int32_t j_min_res = std::min(f.j_min, beta - f.tail.m);
    int32_t j_max_res = (beta >= f.j_max) ? f.j_max : beta + f.m;
    if (j_max_res < j_min_res) j_max_res = j_min_res;

    int32_t dmax = max_digits(f.p);
    if (bn.n < m_res + G + 2)
        throw precision_exhausted("qpp_translate_arg: offset needs more digits");

    FunctionQpPP h;
    h.p = f.p; h.n = f.n; h.m = m_res;
    h.j_min = j_min_res; h.j_max = j_max_res;
    h.zero_value = qpp_eval(f, padic_neg(bn));
    h.tail = f.tail;
    uint64_t pm = pmod(f.p, m_res);
    h.shells.assign(size_t(j_max_res - j_min_res), std::vector<PadicInt>(pm, zero_val(f.p, f.n)));
    for (int32_t j = j_min_res; j < j_max_res; ++j) {
        // digits for the lifted point: the difference x - b sits at valuation
        // min(j, beta), or climbs to beta + m_res on the cancellation shell
        int32_t d = (j == beta) ? (m_res + G + 2) : (std::min(j, beta) - j + G + 2);
        d = std::max(d, m_res);
        if (d > dmax) throw precision_exhausted("qpp_translate_arg: shell too deep to lift");
        for (uint64_t u = 0; u < pm; ++u) {
            if (u % f.p == 0) continue;
            PadicInt x{f.p, d, j, u};
            h.shells[size_t(j - j_min_res)][u] = qpp_eval(f, padic_sub(x, bn));
        }
    }
    return qpp_normalize(h);
}

FunctionQpPP p_action(const FunctionQpPP& f, int32_t k, const PadicInt& a,
                      const PadicInt& b) {
    return qpp_translate_arg(qpp_scale_arg(f, k, a), b);
}

/* ---------------- the dilation equation ---------------- */

DilationSolution dilation_solve(const LCFunctionZp& u, int32_t anchor_extra,
                                int32_t tail_shells) {
    uint32_t p = u.p;
    int32_t n = u.n;
    int32_t m = std::max(u.m, 1);
    if (anchor_extra < 0 || tail_shells < 0)
        throw input_error("dilation_solve: negative expansion parameters");
    int32_t J = m + anchor_extra;
    uint64_t pm = pmod(p, m), pmu = pmod(p, u.m);
    PadicInt C = padic_neg(u.table[0]); // pinned by the equation inside p^J Z_p

    auto u_at = [&](int64_t j, uint64_t unit) -> const PadicInt& {
        // u(p^j * unit) for j >= 0
        uint64_t pj = 1;
        for (int64_t i = 0; i < j && pj != 0; ++i) pj = (pj * p) % pmu;
        if (pmu == 1) pj = 0;
        return u.table[(pj * (unit % pmu)) % pmu];
    };

    FunctionQpPP f;
    f.p = p; f.n = n; f.m = m;
    f.j_min = -tail_shells;
    f.j_max = J;
    f.zero_value = zero_val(p, n);
    f.shells.assign(size_t(J + tail_shells), std::vector<PadicInt>(pm, zero_val(p, n)));

    // phi(p^j u) = sum_{i=j+1..J} (u(p^i u) + C) downward from the anchor
    std::vector<PadicInt> acc(pm, zero_val(p, n)); // running value at shell j
    for (int32_t j = J - 1; j >= 0; --j) {
        for (uint64_t uu = 0; uu < pm; ++uu) {
            if (uu % p == 0) continue;
            acc[uu] = padic_add(acc[uu], padic_add(u_at(j + 1, uu), C));
            f.shells[size_t(j - f.j_min)][uu] = acc[uu];
        }
    }
    // A(u) = phi(u/p) = phi(u) + u(u) + C, then each further step adds C
    std::vector<PadicInt> A(pm, zero_val(p, n));
    for (uint64_t uu = 0; uu < pm; ++uu) {
        if (uu % p == 0) continue;
        A[uu] = padic_add(acc[uu], padic_add(u.table[uu % pmu], C));
    }
    for (int32_t j = -1; j >= f.j_min; --j)
        for (uint64_t uu = 0; uu < pm; ++uu) {
            if (uu % p == 0) continue;
            f.shells[size_t(j - f.j_min)][uu] =
                padic_add(A[uu], padic_mul_int(C, -(int64_t(j) + 1)));
        }

    // the tail has period p^{n - v(C)} (1 when C = 0)
    int32_t r = 1;
    if (!padic_is_zero_at(C, n)) r = int32_t(pmod(p, n - padic_valuation(C)));
    f.tail = tail_make(p, n, m, r);
    for (uint64_t uu = 0; uu < pm; ++uu) {
        if (uu % p == 0) continue;
        for (int32_t jm = 0; jm < r; ++jm) {
            // representative j <= -1 congruent to jm modulo r
            int64_t j = jm - int64_t(r) * ((int64_t(jm) + r + 1) / r); // <= -1
            f.tail.table[uu][size_t(jm)] =
                padic_add(A[uu], padic_mul_int(C, -(j + 1)));
        }
    }
    return DilationSolution{C, qpp_normalize(f), J};
}

HomQpStar tail_class_to_hom(const PeriodicTail& t) {
    uint32_t p = t.p;
    int32_t n = t.n, c = log_branch_exponent(p);
    if (t.m < n + c)
        throw truncation_too_small("tail_class_to_hom: need m >= n + c(p) to read tau");
    uint64_t pm = pmod(p, t.m);
    const PadicInt t1 = t.table[1][0];
    auto s_at = [&](uint64_t u, int32_t jm) {
        return padic_sub(t.table[u][size_t(jm)], t1);
    };

    PadicInt c_vp = (t.r > 1) ? s_at(1, 1 % t.r) : zero_val(p, n);
    // the period must kill the slope
    if (!padic_is_zero_at(padic_mul_int(c_vp, t.r), n))
        throw not_homomorphism("tail_class_to_hom: slope does not close up over the period");

    PadicInt a = exp_generator(p, std::max(t.m, n) + 2);
    uint64_t ua = padic_lift(padic_with_precision(a, t.m)) % pm;
    PadicInt c_tau = s_at(ua, 0);

    for (uint64_t u = 0; u < pm; ++u) {
        if (u % p == 0) continue;
        PadicInt tu{p, n, 0, padic_residue(tau_unit(PadicInt{p, t.m, 0, u}), n)};
        for (int32_t jm = 0; jm < t.r; ++jm) {
            PadicInt want = padic_add(padic_mul_int(c_vp, jm), padic_mul(c_tau, tu));
            if (!val_eq(s_at(u, jm), want, n))
                throw not_homomorphism("tail_class_to_hom: grid value off the homomorphism model");
        }
    }
    return HomQpStar{padic_with_precision(c_vp, n), padic_with_precision(c_tau, n)};
}

/* ---------------- twisted invariants ---------------- */

std::vector<PeriodicTail> twisted_invariants(const Character& delta, int32_t m,
                                             int32_t r) {
    uint32_t p = delta.p;
    int32_t n = delta.n, c = log_branch_exponent(p);
    if (m < 1 || r < 1) throw input_error("twisted_invariants: bad level");
    if (p == 2 && m < 2 && (delta.teich_i & 1))
        throw truncation_too_small("twisted_invariants: sign character invisible mod 2");
    // delta(p)^r = 1 and delta trivial on 1 + p^m Z_p are needed for the level
    if (!padic_eq_at(padic_pow_int(delta.value_p, r), padic_from_int(p, n, 1), n))
        throw truncation_too_small("twisted_invariants: period does not kill delta(p)");
    {
        PadicInt da1 = padic_sub(delta.value_a, padic_from_int(p, n, 1));
        if (padic_valuation(da1) + (m - c) < n)
            throw truncation_too_small("twisted_invariants: delta not constant on 1 + p^m Z_p");
    }

    std::vector<uint64_t> units = unit_residues(p, m);
    size_t NU = units.size();
    std::vector<size_t> uidx(pmod(p, m), size_t(-1));
    for (size_t i = 0; i < NU; ++i) uidx[units[i]] = i;
    auto point = [&](size_t ui, int32_t jm) { return ui * size_t(r) + size_t(jm); };
    size_t base = NU * size_t(r);
    size_t ncols = base + 3;
    uint64_t pn = pmod(p, n);
    uint64_t pm = pmod(p, m);

    // generator data: index permutation and character value
    PadicInt a = exp_generator(p, std::max(m, n) + 2);
    uint64_t la = padic_lift(padic_with_precision(a, m)) % pm;
    uint64_t lw;
    if (p == 2) {
        lw = pm - 1; // -1
    } else {
        PadicInt w = teichmuller(PadicInt{p, std::max(m, n) + 2, 0, primitive_root(p)});
        lw = padic_lift(padic_with_precision(w, m)) % pm;
    }
    // evaluate delta at generous-precision lifts of the three generators
    uint64_t dvals[3];
    {
        int32_t D = std::min(std::max(m, n + c + 2), max_digits(p));
        PadicInt a_big = exp_generator(p, D);
        PadicInt w_big = (p == 2) ? padic_from_int(p, D, -1)
                                  : teichmuller(PadicInt{p, D, 0, primitive_root(p)});
        dvals[0] = residue_mod_pn(delta.value_p, n);
        dvals[1] = residue_mod_pn(char_eval_unit(delta, a_big), n);
        dvals[2] = residue_mod_pn(char_eval_unit(delta, w_big), n);
    }

    ZpnMatrix Amat = zpn_matrix(p, n, 3 * NU * size_t(r), ncols);
    size_t row = 0;
    for (size_t ui = 0; ui < NU; ++ui) {
        uint64_t u = units[ui];
        for (int32_t jm = 0; jm < r; ++jm) {
            struct { size_t tgt; uint64_t dv; size_t cslot; } gens[3] = {
                {point(ui, (jm + 1) % r), dvals[0], 0},                 // x -> p x
                {point(uidx[(u * la) % pm], jm), dvals[1], 1},          // x -> a x
                {point(uidx[(u * lw) % pm], jm), dvals[2], 2},          // x -> w x
            };
            for (const auto& g : gens) {
                Amat.at(row, g.tgt) = (Amat.at(row, g.tgt) + 1) % pn;
                Amat.at(row, point(ui, jm)) =
                    (Amat.at(row, point(ui, jm)) + pn - (g.dv % pn)) % pn;
                Amat.at(row, base + g.cslot) = pn - 1;
                ++row;
            }
        }
    }

    ZpnSolveResult sol = zpn_solve(Amat, std::vector<uint64_t>(Amat.rows, 0));

    // known kernel vector: constant T = 1 forces c_g = 1 - delta(g)
    std::vector<uint64_t> K0(ncols, 0);
    for (size_t i = 0; i < base; ++i) K0[i] = 1;
    for (int g = 0; g < 3; ++g) K0[base + g] = (1 + pn - dvals[g]) % pn;

    size_t one_idx = point(uidx[1], 0);
    auto normalize = [&](std::vector<uint64_t> v) {
        uint64_t lam = v[one_idx] % pn;
        for (size_t i = 0; i < ncols; ++i)
            v[i] = (v[i] + (pn - lam) * K0[i]) % pn;
        return v;
    };

    std::vector<ZpnKernelGen> gens = sol.kernel;
    std::sort(gens.begin(), gens.end(),
              [](const ZpnKernelGen& x, const ZpnKernelGen& y) {
                  return x.order_exp > y.order_exp;
              });
    auto order_exp_of = [&](const std::vector<uint64_t>& v) {
        int32_t best = 0; // additive order exponent = n - min valuation
        for (uint64_t x : v) {
            if (x == 0) continue;
            int32_t e = n;
            while (x % p == 0) { x /= p; --e; }
            best = std::max(best, e);
        }
        return best;
    };
    std::vector<std::vector<uint64_t>> chosen;
    for (const auto& g : gens) {
        std::vector<uint64_t> v = normalize(g.vec);
        // only full-order directions of the quotient-by-constants count
        if (order_exp_of(v) < n) continue;
        if (!chosen.empty()) {
            ZpnMatrix M = zpn_matrix(p, n, ncols, chosen.size());
            for (size_t j = 0; j < chosen.size(); ++j)
                for (size_t i = 0; i < ncols; ++i) M.at(i, j) = chosen[j][i];
            if (zpn_solve(M, v).solvable) continue; // dependent
        }
        chosen.push_back(std::move(v));
    }

    std::vector<PeriodicTail> out;
    for (const auto& v : chosen) {
        PeriodicTail t = tail_make(p, n, m, r);
        for (size_t ui = 0; ui < NU; ++ui)
            for (int32_t jm = 0; jm < r; ++jm)
                t.table[units[ui]][size_t(jm)] = PadicInt{p, n, 0, v[point(ui, jm)] % pn};
        out.push_back(std::move(t));
    }
    return out;
}

/* ---------------- fixed points of the shift ---------------- */

FixedPointCount fixed_points_pk(uint32_t p, int32_t n, int32_t m, int32_t k,
                                int32_t M, int32_t M0) {
    if (k < 1 || M0 < 1 || M0 > M - k)
        throw input_error("fixed_points_pk: need 1 <= M0 <= M - k");
    std::vector<uint64_t> units = unit_residues(p, m);
    size_t NU = units.size();
    // unknowns: table[s][u] for s = 1..M plus the shift constant
    auto col = [&](int32_t s, size_t ui) { return size_t(s - 1) * NU + ui; };
    size_t ncols = size_t(M) * NU + 1;
    size_t ccol = ncols - 1;
    uint64_t pn = pmod(p, n);

    size_t nrows = size_t(M - k - M0 + 1) * NU;
    ZpnMatrix A = zpn_matrix(p, n, nrows + 1, ncols); // final row toggles c = 0
    size_t row = 0;
    for (int32_t s = M0; s <= M - k; ++s)
        for (size_t ui = 0; ui < NU; ++ui) {
            A.at(row, col(s + k, ui)) = (A.at(row, col(s + k, ui)) + 1) % pn;
            A.at(row, col(s, ui)) = (A.at(row, col(s, ui)) + pn - 1) % pn;
            A.at(row, ccol) = pn - 1;
            ++row;
        }

    auto count_log = [&](bool pin_c) -> int64_t {
        ZpnMatrix B = A;
        B.at(nrows, ccol) = pin_c ? 1 : 0;
        ZpnSolveResult s = zpn_solve(B, std::vector<uint64_t>(B.rows, 0));
        return zpn_kernel_size_log(s);
    };
    int64_t dim_ec = int64_t(n) * (int64_t(M0 - 1) * int64_t(NU) + 1);
    int64_t e_total = count_log(false) - dim_ec;
    int64_t e_fn = count_log(true) - dim_ec;
    if (e_total < 0 || e_fn < 0)
        throw error("internal: quotient dimension exceeds the solution space");

    auto as_count = [&](int64_t e) -> uint64_t {
        uint64_t r = 1;
        for (int64_t i = 0; i < e; ++i) {
            if (r > (uint64_t(1) << 62) / p)
                throw input_error("fixed_points_pk: count does not fit in 64 bits");
            r *= p;
        }
        return r;
    };
    return FixedPointCount{as_count(e_total), as_count(e_fn)};
}

bool boundary_class_is_function_class(uint32_t p, int32_t n, int32_t m,
                                      int32_t k, int32_t M, int32_t M0) {
    if (k < 1 || M0 < 1 || M0 > M) throw input_error("boundary_class: bad shell range");
    std::vector<uint64_t> units = unit_residues(p, m);
    size_t NU = units.size();
    // unknowns: g[j mod k][u] and one eventually-constant offset
    size_t ncols = size_t(k) * NU + 1;
    uint64_t pn = pmod(p, n);
    size_t nrows = size_t(M - M0 + 1) * NU;
    ZpnMatrix A = zpn_matrix(p, n, nrows, ncols);
    std::vector<uint64_t> b(nrows, 0);
    size_t row = 0;
    for (int32_t s = M0; s <= M; ++s)
        for (size_t ui = 0; ui < NU; ++ui) {
            size_t gc = size_t(((s % k) + k) % k) * NU + ui;
            A.at(row, gc) = (A.at(row, gc) + 1) % pn;
            A.at(row, ncols - 1) = 1;
            // target: v_p(x / p^k) on the shell v_p(x) = -s
            int64_t t = -(int64_t(s) + k);
            b[row] = uint64_t(((t % int64_t(pn)) + int64_t(pn)) % int64_t(pn));
            ++row;
        }
    return zpn_solve(A, b).solvable;
}

} // namespace fontaine
