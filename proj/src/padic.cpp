#include "fontaine/padic.hpp"

#include <algorithm>

namespace fontaine {

namespace {

// keep p^n below 2^31 so products of residues fit in uint64
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

// inverse of a unit modulo p^n via Euler: a^(phi-1), phi = p^(n-1)(p-1)
uint64_t invmod_pp(uint64_t a, uint32_t p, int32_t n) {
    uint64_t m = pow_mod_base(p, n);
    if (a % p == 0) throw not_a_unit("invmod: residue divisible by p");
    uint64_t phi = (m / p) * (p - 1);
    return powmod(a % m, phi - 1, m);
}

int32_t val_of_u64(uint64_t r, uint32_t p, int32_t cap) {
    int32_t v = 0;
    while (v < cap && r != 0 && r % p == 0) {
        r /= p;
        ++v;
    }
    return v;
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

// largest n with p^n below the modulus cap
int32_t max_digits(uint32_t p) {
    int32_t n = 0;
    uint64_t m = 1;
    while (m * p < kModulusCap) {
        m *= p;
        ++n;
    }
    return n;
}

void check_same_field(const PadicInt& a, const PadicInt& b) {
    if (a.p != b.p) throw input_error("mixed primes in p-adic arithmetic");
}

} // namespace

uint64_t pow_mod_base(uint32_t p, int32_t n) {
    if (n < 0) throw input_error("negative precision");
    uint64_t m = 1;
    for (int32_t i = 0; i < n; ++i) {
        m *= p;
        if (m >= kModulusCap)
            throw precision_exhausted("p^n exceeds the representable modulus cap");
    }
    return m;
}

PadicInt padic_from_int(uint32_t p, int32_t n, long long value) {
    if (n <= 0) throw input_error("precision must be positive");
    uint64_t m = pow_mod_base(p, n);
    long long rr = value % (long long)m;
    if (rr < 0) rr += (long long)m;
    return PadicInt{p, n, 0, (uint64_t)rr};
}

PadicInt padic_from_ratio(uint32_t p, int32_t n, long long num, long long den) {
    if (den == 0) throw input_error("zero denominator");
    PadicInt a = padic_from_int(p, n, num);
    int32_t dv = 0;
    long long d = den;
    while (d % (long long)p == 0) {
        d /= (long long)p;
        ++dv;
    }
    PadicInt q = padic_div(a, padic_from_int(p, n, d));
    q.v -= dv;
    return q;
}

PadicInt padic_normalize(const PadicInt& a) {
    PadicInt x = a;
    while (x.n > 1 && x.r != 0 && x.r % x.p == 0) {
        x.r /= x.p;
        x.v += 1;
        x.n -= 1;
    }
    return x;
}

PadicInt padic_with_precision(const PadicInt& a, int32_t m) {
    if (m > a.n) throw precision_exhausted("cannot raise precision");
    if (m <= 0) throw input_error("precision must be positive");
    PadicInt x = a;
    x.n = m;
    x.r %= pow_mod_base(x.p, m);
    return x;
}

PadicInt padic_add(const PadicInt& a, const PadicInt& b) {
    check_same_field(a, b);
    int32_t vc = std::min(a.v, b.v);
    int32_t da = a.v - vc, db = b.v - vc;
    int32_t nout = std::min(a.n + da, b.n + db);
    nout = std::min(nout, (int32_t)31);
    while (nout > 1) { // shifted residues must stay below the modulus cap
        uint64_t m = 1;
        bool ok = true;
        for (int32_t i = 0; i < nout; ++i) {
            m *= a.p;
            if (m >= kModulusCap) {
                ok = false;
                break;
            }
        }
        if (ok) break;
        --nout;
    }
    uint64_t m = pow_mod_base(a.p, nout);
    uint64_t ra = mulmod(a.r % m, powmod(a.p, (uint64_t)da, m), m);
    uint64_t rb = mulmod(b.r % m, powmod(b.p, (uint64_t)db, m), m);
    return PadicInt{a.p, nout, vc, (ra + rb) % m};
}

PadicInt padic_neg(const PadicInt& a) {
    uint64_t m = a.modulus();
    return PadicInt{a.p, a.n, a.v, (m - a.r % m) % m};
}

PadicInt padic_sub(const PadicInt& a, const PadicInt& b) { return padic_add(a, padic_neg(b)); }

PadicInt padic_mul(const PadicInt& a, const PadicInt& b) {
    check_same_field(a, b);
    int32_t nout = std::min(a.n, b.n);
    uint64_t m = pow_mod_base(a.p, nout);
    return PadicInt{a.p, nout, a.v + b.v, mulmod(a.r % m, b.r % m, m)};
}

PadicInt padic_mul_int(const PadicInt& a, long long k) {
    return padic_mul(a, padic_from_int(a.p, a.n, k));
}

PadicInt padic_inv(const PadicInt& a) {
    PadicInt x = padic_normalize(a);
    if (x.r % x.p == 0)
        throw not_a_unit("padic_inv: not a unit at available precision");
    return PadicInt{x.p, x.n, -x.v, invmod_pp(x.r, x.p, x.n)};
}

PadicInt padic_div(const PadicInt& a, const PadicInt& b) {
    return padic_mul(a, padic_inv(b));
}

PadicInt padic_pow_int(const PadicInt& a, long long e) {
    if (e < 0) return padic_pow_int(padic_inv(a), -e);
    uint64_t m = a.modulus();
    return PadicInt{a.p, a.n, a.v * (int32_t)e, powmod(a.r, (uint64_t)e, m)};
}

int32_t padic_valuation(const PadicInt& a, bool* exact) {
    if (a.r == 0) {
        if (exact) *exact = false;
        return a.v + a.n;
    }
    if (exact) *exact = true;
    return a.v + val_of_u64(a.r, a.p, a.n);
}

bool padic_is_zero_at(const PadicInt& a, int32_t m) {
    bool exact = true;
    int32_t v = padic_valuation(a, &exact);
    if (v >= m) return true;
    if (!exact)
        throw precision_exhausted("cannot certify zero at requested precision");
    return false;
}

bool padic_eq_at(const PadicInt& a, const PadicInt& b, int32_t m) {
    return padic_is_zero_at(padic_sub(a, b), m);
}

uint64_t padic_lift(const PadicInt& a) {
    PadicInt x = a.v < 0 ? padic_normalize(a) : a;
    if (x.v < 0) throw input_error("padic_lift: negative valuation");
    uint64_t out = x.r;
    for (int32_t i = 0; i < x.v; ++i) {
        if (out >= kModulusCap) throw precision_exhausted("lift too large");
        out *= x.p;
    }
    return out;
}

uint64_t padic_residue(const PadicInt& a, int32_t digits) {
    if (digits <= 0 || digits > max_digits(a.p))
        throw input_error("padic_residue: bad digit count");
    PadicInt x = padic_normalize(a);
    if (x.v + x.n < digits)
        throw precision_exhausted("padic_residue: absolute precision too low");
    if (x.r == 0) return 0; // certified zero mod p^digits
    if (x.v < 0) throw input_error("padic_residue: negative valuation");
    uint64_t mod = pow_mod_base(x.p, digits);
    if (x.v >= digits) return 0;
    uint64_t keep = pow_mod_base(x.p, digits - x.v);
    uint64_t out = x.r % keep;
    for (int32_t i = 0; i < x.v; ++i) out *= x.p;
    return out % mod;
}

std::string padic_to_string(const PadicInt& a) {
    std::string s = std::to_string(a.r);
    if (a.v != 0) s = "p^" + std::to_string(a.v) + "*" + s;
    return s;
}

QpStarElement qpstar_make(int64_t k, const PadicInt& unit) {
    PadicInt u = padic_normalize(unit);
    if (u.v != 0 || u.r % u.p == 0)
        throw not_a_unit("qpstar: unit part is not a unit");
    return QpStarElement{k, u};
}

QpStarElement qpstar_from_padic(const PadicInt& a) {
    PadicInt x = padic_normalize(a);
    if (x.r == 0) throw input_error("qpstar: zero has no unit decomposition");
    return QpStarElement{x.v, PadicInt{x.p, x.n, 0, x.r}};
}

QpStarElement qpstar_mul(const QpStarElement& a, const QpStarElement& b) {
    return QpStarElement{a.k + b.k, padic_mul(a.u, b.u)};
}

QpStarElement qpstar_inv(const QpStarElement& a) {
    return QpStarElement{-a.k, padic_inv(a.u)};
}

int32_t log_branch_exponent(uint32_t p) { return p == 2 ? 2 : 1; }

PadicInt teichmuller(const PadicInt& u0) {
    PadicInt u = padic_normalize(u0);
    if (u.v != 0 || u.r % u.p == 0) throw not_a_unit("teichmuller: not a unit");
    uint64_t m = u.modulus();
    uint64_t x = u.r;
    // x -> x^p stabilizes mod p^n after at most n iterations
    for (int32_t i = 0; i < u.n + 2; ++i) {
        uint64_t y = powmod(x, u.p, m);
        if (y == x) return PadicInt{u.p, u.n, 0, x};
        x = y;
    }
    throw error("teichmuller iteration failed to stabilize");
}

PadicInt principal_part(const PadicInt& u0) {
    PadicInt u = padic_normalize(u0);
    if (u.v != 0 || u.r % u.p == 0) throw not_a_unit("principal_part: not a unit");
    if (u.p == 2) {
        // Z_2^* = {+-1} x (1 + 4 Z_2)
        if (u.n == 1) return padic_from_int(2, 1, 1);
        return (u.r % 4 == 3) ? padic_neg(u) : u;
    }
    return padic_div(u, teichmuller(u));
}

namespace {

// log(1 + t) mod p^nkeep for an exact integer t with v_p(t) >= c(p)
uint64_t log_series_int(uint32_t p, int32_t nkeep, uint64_t t_lift) {
    int32_t c = log_branch_exponent(p);
    int32_t kcap = 2 * nkeep + 8;
    int32_t guard = floor_log(p, kcap) + 1;
    int32_t nw = nkeep + guard;
    uint64_t mw = pow_mod_base(p, nw);
    uint64_t mkeep = pow_mod_base(p, nkeep);
    uint64_t acc = 0;
    uint64_t tk = 1;
    for (int32_t k = 1; k <= kcap; ++k) {
        tk = mulmod(tk, t_lift % mw, mw);
        int32_t j = val_of_u64((uint64_t)k, p, nw);
        uint64_t kk = (uint64_t)k;
        for (int32_t i = 0; i < j; ++i) kk /= p;
        uint64_t pj = pow_mod_base(p, j);
        if (tk % pj != 0) throw error("log series: non-integral term");
        uint64_t num = (tk / pj) % mkeep;
        uint64_t term = mulmod(num, invmod_pp(kk, p, nkeep), mkeep);
        if (k % 2 == 0) term = (mkeep - term) % mkeep;
        acc = (acc + term) % mkeep;
        if ((int64_t)k * c - j > nkeep) break;
    }
    return acc;
}

} // namespace

PadicInt iwasawa_log_unit(const PadicInt& u0) {
    PadicInt u = padic_normalize(u0);
    if (u.v != 0 || u.r % u.p == 0) throw not_a_unit("iwasawa_log: not a unit");
    int32_t c = log_branch_exponent(u.p);
    if (u.n <= c)
        throw precision_exhausted("iwasawa_log: not enough digits for the series");
    PadicInt pr = principal_part(u);
    uint64_t m = pr.modulus();
    uint64_t t = (pr.r + m - 1) % m;
    return PadicInt{u.p, u.n, 0, log_series_int(u.p, u.n, t)};
}

PadicInt iwasawa_log(const QpStarElement& x) { return iwasawa_log_unit(x.u); }

PadicInt padic_exp(const PadicInt& t0) {
    PadicInt t = padic_normalize(t0);
    uint32_t p = t.p;
    int32_t c = log_branch_exponent(p);
    bool exact = true;
    int32_t vt = padic_valuation(t, &exact);
    if (vt < c)
        throw precision_exhausted("padic_exp: argument valuation below c(p)");
    int32_t nkeep = t.n + t.v; // absolute precision of the argument
    if (nkeep <= 0) throw precision_exhausted("padic_exp: no digits left");
    if (t.r == 0) return padic_from_int(p, nkeep, 1);
    int32_t kcap = 2 * nkeep + 8;
    // worst-case spare digits for v_p(k!); cap at what the modulus admits and
    // let the in-loop exhaustion check fail honestly if the series needs more
    int32_t guard = std::min(kcap / (int32_t)(p - 1) + 2, max_digits(p) - nkeep);
    if (guard < 1) throw precision_exhausted("padic_exp: no room for guard digits");
    int32_t nw = nkeep + guard;
    uint64_t mw = pow_mod_base(p, nw);
    uint64_t mkeep = pow_mod_base(p, nkeep);
    uint64_t t_lift = mulmod(t.r % mw, powmod(p, (uint64_t)t.v, mw), mw);
    uint64_t acc = 1 % mkeep;
    uint64_t tk = 1;
    uint64_t fact_unit = 1; // k! with p-parts stripped, mod mkeep
    int64_t fact_val = 0;
    for (int32_t k = 1; k <= kcap; ++k) {
        tk = mulmod(tk, t_lift, mw);
        uint64_t kk = (uint64_t)k;
        int32_t j = val_of_u64(kk, p, nw);
        for (int32_t i = 0; i < j; ++i) kk /= p;
        fact_val += j;
        fact_unit = mulmod(fact_unit, kk % mkeep, mkeep);
        if (fact_val >= guard) throw error("exp series: guard digits exhausted");
        uint64_t pj = pow_mod_base(p, (int32_t)fact_val);
        if (tk % pj != 0) throw error("exp series: non-integral term");
        uint64_t num = (tk / pj) % mkeep;
        uint64_t term = mulmod(num, invmod_pp(fact_unit, p, nkeep), mkeep);
        acc = (acc + term) % mkeep;
        if ((int64_t)k * c - fact_val > nkeep) break;
    }
    return PadicInt{p, nkeep, 0, acc % mkeep};
}

PadicInt tau_unit(const PadicInt& u) {
    PadicInt lg = iwasawa_log_unit(u);
    lg.v -= log_branch_exponent(u.p);
    return padic_normalize(lg);
}

PadicInt tau(const QpStarElement& x) { return tau_unit(x.u); }

PadicInt exp_generator(uint32_t p, int32_t n) {
    int32_t c = log_branch_exponent(p);
    long long pc = 1;
    for (int32_t i = 0; i < c; ++i) pc *= p;
    return padic_exp(padic_from_int(p, n, pc));
}

PadicInt binom(const PadicInt& x0, uint32_t m) {
    if (m == 0) return padic_from_int(x0.p, x0.n, 1);
    PadicInt x = padic_normalize(x0);
    if (x.v < 0 && x.r != 0)
        throw input_error("binom: argument has negative valuation");
    uint32_t p = x.p;
    // absolute precision n + v is what the congruence argument supports
    int32_t n = std::min(x.n + std::max(x.v, (int32_t)0), max_digits(p));
    uint64_t mod = pow_mod_base(p, n);
    uint64_t lift = mulmod(x.r % mod, powmod(p, (uint64_t)std::max(x.v, (int32_t)0), mod), mod);
    int64_t j = 0; // v_p(m!)
    for (uint64_t q = p; ; q *= p) {
        if (q > m) break;
        j += m / q;
        if (q > m / p) break;
    }
    if (j >= n) throw precision_exhausted("binom: v_p(m!) eats all digits");
    uint64_t num = 1;
    for (uint32_t i = 0; i < m; ++i) {
        uint64_t f = (lift + mod - (i % mod)) % mod;
        num = mulmod(num, f, mod);
    }
    uint64_t pj = pow_mod_base(p, (int32_t)j);
    if (num % pj != 0) throw error("binom: numerator not divisible by p^{v_p(m!)}");
    int32_t nout = n - (int32_t)j;
    uint64_t mout = pow_mod_base(p, nout);
    uint64_t fact_unit = 1;
    for (uint32_t i = 1; i <= m; ++i) {
        uint64_t ii = i;
        while (ii % p == 0) ii /= p;
        fact_unit = mulmod(fact_unit, ii % mout, mout);
    }
    uint64_t r = mulmod((num / pj) % mout, invmod_pp(fact_unit, p, nout), mout);
    return PadicInt{p, nout, 0, r};
}

PadicInt principal_pow(const PadicInt& base0, const PadicInt& t0) {
    PadicInt base = padic_normalize(base0);
    if (base.v != 0 || base.r % base.p == 0)
        throw not_a_unit("principal_pow: base not a unit");
    PadicInt t = padic_normalize(t0);
    if (t.v < 0 && t.r != 0)
        throw input_error("principal_pow: exponent not integral");
    uint32_t p = base.p;
    uint64_t m = base.modulus();
    uint64_t bm1 = (base.r + m - 1) % m;
    int32_t cb = bm1 == 0 ? base.n : val_of_u64(bm1, p, base.n);
    if (cb < 1) throw input_error("principal_pow: base not a principal unit");
    // exponent digits past its precision move the result by 1 + O(p^{cb + nt})
    int32_t nt = t.n + std::max(t.v, (int32_t)0);
    int32_t nout = std::min((int32_t)base.n, cb + nt);
    if (nout <= 0) throw precision_exhausted("principal_pow: no digits");
    uint64_t mout = pow_mod_base(p, nout);
    uint64_t lift_mod = pow_mod_base(p, std::min(nt, nout));
    uint64_t lift = t.r == 0
                        ? 0
                        : mulmod(t.r % lift_mod,
                                 powmod(p, (uint64_t)std::max(t.v, (int32_t)0), lift_mod),
                                 lift_mod);
    uint64_t acc = 1;
    uint64_t cur = base.r % mout; // base^{p^i}
    while (lift) {
        uint64_t d = lift % p;
        lift /= p;
        acc = mulmod(acc, powmod(cur, d, mout), mout);
        cur = powmod(cur, p, mout);
    }
    return PadicInt{p, nout, 0, acc};
}

Character character_make(uint32_t p, int32_t n, const PadicInt& value_p,
                         int32_t teich_i, const PadicInt& value_a) {
    PadicInt vp = padic_normalize(value_p);
    if (vp.v != 0 || vp.r % p == 0)
        throw input_error("character: value at p must be a unit");
    PadicInt va = padic_normalize(value_a);
    if (va.v != 0 || va.r % p == 0)
        throw input_error("character: value at the exponential generator must be a unit");
    int32_t c = log_branch_exponent(p);
    PadicInt diff = padic_sub(va, padic_from_int(p, va.n, 1));
    bool exact = true;
    int32_t dv = padic_valuation(diff, &exact);
    if (dv < c)
        throw input_error("character: value at the exponential generator must be a principal unit");
    int32_t order = p == 2 ? 2 : (int32_t)p - 1;
    int32_t i = teich_i % order;
    if (i < 0) i += order;
    return Character{p, n, padic_with_precision(vp, std::min(vp.n, n)), i,
                     padic_with_precision(va, std::min(va.n, n))};
}

Character character_trivial(uint32_t p, int32_t n) {
    PadicInt one = padic_from_int(p, n, 1);
    return Character{p, n, one, 0, one};
}

Character character_cyclotomic(uint32_t p, int32_t n) {
    return Character{p, n, padic_from_int(p, n, 1), 1, exp_generator(p, n)};
}

Character character_unramified(uint32_t p, int32_t n, const PadicInt& c) {
    return character_make(p, n, c, 0, padic_from_int(p, n, 1));
}

Character character_mul(const Character& d1, const Character& d2) {
    if (d1.p != d2.p) throw input_error("character_mul: mixed primes");
    int32_t n = std::min(d1.n, d2.n);
    return character_make(d1.p, n, padic_mul(d1.value_p, d2.value_p),
                          d1.teich_i + d2.teich_i,
                          padic_mul(d1.value_a, d2.value_a));
}

Character character_inv(const Character& d) {
    return character_make(d.p, d.n, padic_inv(d.value_p), -d.teich_i,
                          padic_inv(d.value_a));
}

bool character_eq_at(const Character& d1, const Character& d2, int32_t m) {
    if (d1.p != d2.p) return false;
    int32_t order = d1.p == 2 ? 2 : (int32_t)d1.p - 1;
    if ((d1.teich_i - d2.teich_i) % order != 0) return false;
    return padic_eq_at(d1.value_p, d2.value_p, m) &&
           padic_eq_at(d1.value_a, d2.value_a, m);
}

bool character_is_trivial_at(const Character& d, int32_t m) {
    return character_eq_at(d, character_trivial(d.p, d.n), m);
}

PadicInt char_eval_unit(const Character& d, const PadicInt& u) {
    PadicInt uu = padic_normalize(u);
    if (uu.v != 0 || uu.r % d.p == 0) throw not_a_unit("char_eval: not a unit");
    int32_t order = d.p == 2 ? 2 : (int32_t)d.p - 1;
    int32_t i = ((d.teich_i % order) + order) % order;
    // a torsion exponent of 0 and value_a = 1 need no digits of u at all
    PadicInt omega_part = padic_from_int(d.p, d.n, 1);
    if (i != 0) {
        if (d.p == 2) {
            if (uu.n < 2)
                throw precision_exhausted("char_eval: sign of the unit not visible");
            omega_part = padic_from_int(2, uu.n, uu.r % 4 == 3 ? -1 : 1);
        } else {
            omega_part = padic_pow_int(teichmuller(uu), i);
        }
    }
    PadicInt va = d.value_a;
    uint64_t m = va.modulus();
    bool va_is_one = va.v == 0 && (va.r % m) == 1;
    PadicInt a_part = va_is_one ? padic_from_int(d.p, va.n, 1)
                                : principal_pow(va, tau_unit(uu));
    return padic_mul(omega_part, a_part);
}

PadicInt char_eval(const Character& d, const QpStarElement& x) {
    PadicInt p_part = padic_pow_int(d.value_p, x.k);
    return padic_mul(p_part, char_eval_unit(d, x.u));
}

PadicInt hom_eval(const HomQpStar& h, const QpStarElement& x) {
    PadicInt vp_term = padic_mul_int(h.c_vp, x.k);
    PadicInt tau_term = padic_mul(h.c_tau, tau_unit(x.u));
    return padic_add(vp_term, tau_term);
}

} // namespace fontaine
