#pragma once

#include "fontaine/functions.hpp"
#include "fontaine/series.hpp"

namespace fontaine {

/*
 * One-term Herr complex data for the rank-one module D(delta) = A * e_delta:
 * phi acts as delta(p) * phi, the Gamma-generator a = exp_generator acts as
 * delta(a) * sigma_a, the torsion generator w acts as delta(w) * sigma_w.
 * A 1-cochain is a pair (u, v) with u in the phi-slot and v in the
 * gamma-slot; the cocycle condition is (gamma_D - 1)u = (phi_D - 1)v.
 */
struct Cocycle {
    Character delta;
    LaurentSeries u; // phi-slot
    LaurentSeries v; // gamma-slot
};

// twisted operators on the coefficient ring
LaurentSeries phi_twisted(const Character& delta, const LaurentSeries& x);
LaurentSeries gamma_twisted(const Character& delta, const LaurentSeries& x);
LaurentSeries torsion_twisted(const Character& delta, const LaurentSeries& x);

// d0: x -> ((phi_D - 1)x, (gamma_D - 1)x)
Cocycle coboundary(const Character& delta, const LaurentSeries& x);
// d1 defect: (gamma_D - 1)u - (phi_D - 1)v; zero on cocycles
LaurentSeries cocycle_defect(const Cocycle& c);
bool is_cocycle(const Cocycle& c);
// invariance of the element under the twisted torsion action
bool is_torsion_invariant(const Cocycle& c);

// the (1, 0) and (0, 1) classes for the trivial character
std::vector<Cocycle> basis_h1_trivial(const SeriesRing& R);

/*
 * The two-class basis for the cyclotomic twist: (u1, v1) with
 * u1 = 1/pi + 1/2 and v1 regular, (u2, v2) with v2 = 1/pi and psi(u2) = 0.
 * v1 solves (phi - 1)v1 = (gamma_D - 1)u1 inside pi*A+; u2 solves
 * (gamma_D - 1)u2 = (phi - 1)v2 inside the psi = 0 subspace (exact linear
 * algebra over Z/p^n on the coefficient window).
 */
std::vector<Cocycle> basis_h1_cyclotomic(const SeriesRing& R);

// trace of the cup product of a cyclotomic-twist class against a trivial-
// character class: residue of (u' phi(v) - v' sigma_a(u)) d pi/(1+pi)
PadicInt cup_trace(const Cocycle& ct, const Cocycle& c);

struct H1Class {
    Character delta;
    PadicInt alpha; // coordinate along (u1, v1)
    PadicInt beta;  // coordinate along (u2, v2)
    LaurentSeries certificate; // x with c - alpha b1 - beta b2 = d0(x)
    int32_t window = 0; // the witness equations are enforced below this degree
};

// coordinates in the cyclotomic basis plus an explicit coboundary witness;
// throws singular_system when no witness exists at this truncation
H1Class h1_decompose(const Cocycle& c);

// iota on the cyclotomic twist: coordinates (c_vp, c_tau) of the attached
// homomorphism. Pipeline A goes through h1_decompose; pipeline B evaluates
// phi_u, solves the dilation equation and reads the tail class.
HomQpStar iota_chi_decompose(const Cocycle& c);
HomQpStar iota_chi_direct(const Cocycle& c);

// basis of D(delta)^{phi_D = 1, gamma_D = 1, torsion} at truncation
std::vector<LaurentSeries> h0_compute(const SeriesRing& R, const Character& delta);

/*
 * The cup-trace matrix of the cyclotomic basis against the trivial basis,
 * and the induced coordinates of each cyclotomic class in the classes of
 * the multiplicative group: class_i = (kum_a[i] * Kum(a) + kum_p[i] *
 * Kum(p)) / fdeg, with fdeg the degree of the cyclotomic field layer.
 */
struct KummerIdentification {
    int32_t fdeg = 0;
    PadicInt pairing[2][2]; // rows: cyclotomic basis; cols: (1,0), (0,1)
    PadicInt kum_a[2];      // fdeg * coordinate along Kum(a)
    PadicInt kum_p[2];      // fdeg * coordinate along Kum(p)
};

KummerIdentification kummer_identify(const SeriesRing& R);

} // namespace fontaine
