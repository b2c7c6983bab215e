#pragma once
// Finite-level models of locally constant functions: on Z_p (tables modulo
// p^m), on the profinite unit-times-p-power group (periodic tails), and on
// Q_p (shell tables with an eventually-periodic tail and a stable zero zone).

#include "fontaine/padic.hpp"

#include <vector>

namespace fontaine {

// function on Z_p constant on cosets of p^m Z_p; table[i] = value at i
struct LCFunctionZp {
    uint32_t p = 3;
    int32_t n = 1;
    int32_t m = 0;
    std::vector<PadicInt> table; // size p^m, indexed by residue mod p^m
};

LCFunctionZp lc_make(uint32_t p, int32_t n, int32_t m,
                     const std::vector<PadicInt>& table);
LCFunctionZp lc_zero(uint32_t p, int32_t n, int32_t m);
// indicator of the coset b + p^m' Z_p inside the mod-p^m table (m' <= m)
LCFunctionZp lc_indicator(uint32_t p, int32_t n, int32_t m, int32_t mprime,
                          uint64_t b);
PadicInt lc_eval(const LCFunctionZp& f, const PadicInt& x);
LCFunctionZp lc_add(const LCFunctionZp& f, const LCFunctionZp& g);
LCFunctionZp lc_scale(const LCFunctionZp& f, const PadicInt& c);
bool lc_eq_at(const LCFunctionZp& f, const LCFunctionZp& g, int32_t n_mod);

// locally constant function on the profinite group Z_p^* x p^Z:
// value at p^j u is table[u mod p^m][j mod r]
struct PeriodicTail {
    uint32_t p = 3;
    int32_t n = 1;
    int32_t m = 1;  // unit-part modulus
    int32_t r = 1;  // period in the p-power direction
    // indexed [unit residue mod p^m][j mod r]; non-unit rows unused (zero)
    std::vector<std::vector<PadicInt>> table;
};

PeriodicTail tail_make(uint32_t p, int32_t n, int32_t m, int32_t r);
// value at p^j u; u needs m known digits
PadicInt tail_eval(const PeriodicTail& t, const PadicInt& u, int64_t j);
PeriodicTail tail_vp(uint32_t p, int32_t n);            // r = p^n
PeriodicTail tail_tau(uint32_t p, int32_t n, int32_t m); // needs m >= n + c(p)
PeriodicTail tail_add(const PeriodicTail& a, const PeriodicTail& b);
PeriodicTail tail_scale(const PeriodicTail& t, const PadicInt& c);
PeriodicTail tail_const(uint32_t p, int32_t n, const PadicInt& c);
bool tail_eq_at(const PeriodicTail& a, const PeriodicTail& b, int32_t n_mod);
bool tail_is_zero_at(const PeriodicTail& t, int32_t n_mod);

// function on Q_p, by valuation shell. Writing x = p^j u:
//   j >= j_max            -> zero_value (the stable zone around 0, x = 0 included)
//   j_min <= j < j_max    -> shells[j - j_min][u mod p^m]
//   j < j_min             -> tail(u, j)
struct FunctionQpPP {
    uint32_t p = 3;
    int32_t n = 1;
    int32_t m = 1; // unit-grid modulus for the shells
    int32_t j_min = 0;
    int32_t j_max = 0;
    PadicInt zero_value;
    std::vector<std::vector<PadicInt>> shells; // [j - j_min][u mod p^m]
    PeriodicTail tail;
};

FunctionQpPP qpp_zero(uint32_t p, int32_t n, int32_t m);
PadicInt qpp_eval(const FunctionQpPP& f, const PadicInt& x);
FunctionQpPP qpp_add(const FunctionQpPP& f, const FunctionQpPP& g);
FunctionQpPP qpp_scale(const FunctionQpPP& f, const PadicInt& c);
// tail-only function 1_{Qp minus Zp} * t
FunctionQpPP qpp_from_tail(const PeriodicTail& t);
bool qpp_eq_at(const FunctionQpPP& f, const FunctionQpPP& g, int32_t n_mod);

// canonical form: push j_min up while the lowest shell matches the tail,
// push j_max down while the top shells equal zero_value
FunctionQpPP qpp_normalize(const FunctionQpPP& f);

// detect the eventual period of raw shell data and split canonically:
// shells[j] for j in [j_lo, j_hi) with the function's values; everything at
// j >= j_hi is zero_value. Tries periods 1..r_cap and needs two full periods
// below M0 (throws not_eventually_periodic otherwise).
FunctionQpPP pp_decompose(uint32_t p, int32_t n, int32_t m, int32_t j_lo,
                          int32_t j_hi, const PadicInt& zero_value,
                          const std::vector<std::vector<PadicInt>>& shells,
                          int32_t M0, int32_t r_cap);

// action of (p^k a, b; 0, 1): (g . f)(x) = f((x - b) / (p^k a))
FunctionQpPP qpp_scale_arg(const FunctionQpPP& f, int32_t k, const PadicInt& a);
FunctionQpPP qpp_translate_arg(const FunctionQpPP& f, const PadicInt& b);
FunctionQpPP p_action(const FunctionQpPP& f, int32_t k, const PadicInt& a,
                      const PadicInt& b);

// solve f(x/p) - f(x) = u(x) + C on Q_p (u extended by zero off Z_p) with f
// vanishing on p^J Z_p, J = max(m, 1) + anchor_extra; C is pinned by
// continuity at 0. Returns C and the solution, tail already canonical.
struct DilationSolution {
    PadicInt C;
    FunctionQpPP f;
    int32_t anchor_J = 0;
};
DilationSolution dilation_solve(const LCFunctionZp& u, int32_t anchor_extra = 0,
                                int32_t tail_shells = 0);

// read (c_vp, c_tau) off a tail that is a homomorphism plus a constant;
// checks additivity on the whole grid (not_homomorphism on failure)
HomQpStar tail_class_to_hom(const PeriodicTail& t);

// basis of the delta-twisted invariants of C(level)/constants: solutions of
// T(g x) = delta(g) T(x) + c_g for g in {p, a, omega-generator}, normalized
// to T(1) = 0, returned as tails at level (m, r)
std::vector<PeriodicTail> twisted_invariants(const Character& delta, int32_t m,
                                             int32_t r);

// exact fixed points of the shift-by-k operator on shell tables modulo the
// eventually-constant subspace: brute-force count over Z/p^n with shells
// j = 1..M, eventual-constancy from shell M0 on
struct FixedPointCount {
    uint64_t total = 0;          // number of fixed classes
    uint64_t function_classes = 0; // subcount with zero shift-constant
};
FixedPointCount fixed_points_pk(uint32_t p, int32_t n, int32_t m, int32_t k,
                                int32_t M, int32_t M0);
// is the boundary class v_p(x/p^k) (shell table (-j - k) mod p^n) expressible
// as (j mod k)-periodic + eventually constant across shells M0..M?
bool boundary_class_is_function_class(uint32_t p, int32_t n, int32_t m,
                                      int32_t k, int32_t M, int32_t M0);

} // namespace fontaine
