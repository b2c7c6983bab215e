#pragma once

#include <cstdint>
#include <string>

#include "fontaine/errors.hpp"

namespace fontaine {

// p^n as uint64, refusing moduli that could overflow 64-bit products.
uint64_t pow_mod_base(uint32_t p, int32_t n);

/*
 * Element of Q_p tracked at finite precision: value = p^v * r where the
 * residue r is known modulo p^n.  r is kept in [0, p^n).  A zero residue
 * means the value is O(p^{v+n}).  n never grows silently; operations
 * return the precision the result honestly has.
 */
struct PadicInt {
    uint32_t p = 3;
    int32_t n = 0;  // residue precision (digits)
    int32_t v = 0;  // valuation offset
    uint64_t r = 0; // residue mod p^n

    uint64_t modulus() const { return pow_mod_base(p, n); }
};

PadicInt padic_from_int(uint32_t p, int32_t n, long long value);
// value = num/den with den a p-unit or a power of p times a unit
PadicInt padic_from_ratio(uint32_t p, int32_t n, long long num, long long den);

// pull p-factors of the residue into the valuation offset (costs digits)
PadicInt padic_normalize(const PadicInt& a);
// drop to precision m (m <= n)
PadicInt padic_with_precision(const PadicInt& a, int32_t m);

PadicInt padic_add(const PadicInt& a, const PadicInt& b);
PadicInt padic_sub(const PadicInt& a, const PadicInt& b);
PadicInt padic_neg(const PadicInt& a);
PadicInt padic_mul(const PadicInt& a, const PadicInt& b);
PadicInt padic_mul_int(const PadicInt& a, long long k);
// division by a unit (after normalization); throws not_a_unit otherwise
PadicInt padic_div(const PadicInt& a, const PadicInt& b);
PadicInt padic_inv(const PadicInt& a);
PadicInt padic_pow_int(const PadicInt& a, long long e);

// true p-adic valuation as far as visible; for a zero residue returns
// v + n (a lower bound) and sets *exact=false if given
int32_t padic_valuation(const PadicInt& a, bool* exact = nullptr);

// compare values modulo p^m after aligning offsets
bool padic_eq_at(const PadicInt& a, const PadicInt& b, int32_t m);
bool padic_is_zero_at(const PadicInt& a, int32_t m);

// canonical integer representative of p^v * r (requires v >= 0 and a
// result that fits; used for digit extraction and table keys)
uint64_t padic_lift(const PadicInt& a);

// certified residue mod p^digits of an integral value; needs absolute
// precision v + n >= digits. Throws input_error on a visibly non-integral
// value, precision_exhausted when the residue is not determined.
uint64_t padic_residue(const PadicInt& a, int32_t digits);

std::string padic_to_string(const PadicInt& a);

/*
 * Element of Q_p^* split as p^k * u with u a unit known mod p^n.
 */
struct QpStarElement {
    int64_t k = 0;  // v_p
    PadicInt u;     // unit part, v == 0, r a unit
};

QpStarElement qpstar_make(int64_t k, const PadicInt& unit);
QpStarElement qpstar_from_padic(const PadicInt& a);
QpStarElement qpstar_mul(const QpStarElement& a, const QpStarElement& b);
QpStarElement qpstar_inv(const QpStarElement& a);

// c(p): 1 for odd p, 2 for p = 2; the kernel scale of the Iwasawa branch
int32_t log_branch_exponent(uint32_t p);

// Teichmuller representative: the (p-1)-st (resp. 2nd for p = 2) root of
// unity congruent to u, computed by iterating x -> x^p to its fixed point.
PadicInt teichmuller(const PadicInt& u);

// principal-unit part <u> = u / omega(u)
PadicInt principal_part(const PadicInt& u);

// Iwasawa logarithm: log p = 0, log(p^k u) = log<u>.  Output precision
// n - c(p) digits... for odd p the map 1+pZ_p -> pZ_p is an isometry so a
// unit known mod p^n gives log mod p^n; for p = 2 two digits are lost.
PadicInt iwasawa_log(const QpStarElement& x);
PadicInt iwasawa_log_unit(const PadicInt& u);

// exp(t) for v_p(t) >= c(p); throws precision_exhausted below that
PadicInt padic_exp(const PadicInt& t);

// tau = p^{-c(p)} log, the second coordinate of Hom(Q_p^*, Z_p)
PadicInt tau(const QpStarElement& x);
PadicInt tau_unit(const PadicInt& u);

// the canonical generator a = exp(p^{c(p)}) of 1 + p^{c(p)} Z_p
PadicInt exp_generator(uint32_t p, int32_t n);

// binomial coefficient C(x, m); requires v(x) >= 0; output precision is
// n - v_p(m!) digits, with precision_exhausted if that hits zero
PadicInt binom(const PadicInt& x, uint32_t m);

// x^t for x = 1 + (something of positive valuation), t a p-adic integer;
// computed by base-p digit powering, no binomial losses
PadicInt principal_pow(const PadicInt& base, const PadicInt& t);

/*
 * Continuous character of Q_p^* with values in Z_p^*, stored by its value
 * at p, its Teichmuller exponent (mod p-1, or the sign exponent for p=2)
 * and its value at the generator a = exp(p^{c(p)}).
 */
struct Character {
    uint32_t p = 3;
    int32_t n = 0;
    PadicInt value_p;    // delta(p), a unit
    int32_t teich_i = 0; // exponent on omega(u) (on the sign for p = 2)
    PadicInt value_a;    // delta(a), a principal unit
};

Character character_make(uint32_t p, int32_t n, const PadicInt& value_p,
                         int32_t teich_i, const PadicInt& value_a);
Character character_trivial(uint32_t p, int32_t n);
// x -> x|x|: value_p = 1, teich_i = 1, value_a = a
Character character_cyclotomic(uint32_t p, int32_t n);
// unramified character sending p to c
Character character_unramified(uint32_t p, int32_t n, const PadicInt& c);

Character character_mul(const Character& d1, const Character& d2);
Character character_inv(const Character& d);
bool character_eq_at(const Character& d1, const Character& d2, int32_t m);
bool character_is_trivial_at(const Character& d, int32_t m);

// delta(p^k u) = delta(p)^k * omega(u)^i * delta(a)^{tau(u)}
PadicInt char_eval(const Character& d, const QpStarElement& x);
PadicInt char_eval_unit(const Character& d, const PadicInt& u);

/*
 * Element c_vp * v_p + c_tau * tau of Hom(Q_p^*, Z_p).
 */
struct HomQpStar {
    PadicInt c_vp;
    PadicInt c_tau;
};

PadicInt hom_eval(const HomQpStar& h, const QpStarElement& x);

} // namespace fontaine
