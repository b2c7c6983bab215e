#pragma once
// Parameter bookkeeping for the rank-two recipes.  A parameter point is a
// pair of continuous characters of Q_p^*, together with a projective line in
// Hom(Q_p^*, L) exactly over the blown-up locus delta1 = chi * delta2.  The
// module gives the Galois-side recipe (which extension of delta2 by delta1
// the point names), the Jacquet-module image (a character line or the line
// itself), and a round-trip check that the two recipes name the same
// extension once the Jacquet image is pushed through the certified
// Kummer/iota identification from the cohomology module.

#include "fontaine/cohomology.hpp"
#include "fontaine/functions.hpp"

namespace fontaine {

struct ParamPoint {
    Character delta1;
    Character delta2;
    bool has_line = false;
    HomQpStar line; // meaningful iff has_line; projective pair (c_vp : c_tau)
};

ParamPoint param_point(const Character& d1, const Character& d2);
ParamPoint param_point(const Character& d1, const Character& d2,
                       const HomQpStar& line);

// working comparison precision of a point: min of the character precisions
int32_t param_digits(const ParamPoint& z);

// does delta1 = chi * delta2 hold mod p^m?
bool param_on_blowup(const ParamPoint& z, int32_t m);
// the excluded locus delta1 = delta2 (mod p^m)
bool param_pathological(const ParamPoint& z, int32_t m);

// Checks the fiber rule: a line must be present exactly over the blown-up
// locus, and a present line must have a unit coordinate (it is projective).
// Returns the point unchanged; throws input_error when malformed.
ParamPoint validate_param(const ParamPoint& z);

// iota of a Kummer class: [F:Q_p] * (v_p(alpha) * tau - tau(alpha) * v_p),
// returned in (c_vp, c_tau) coordinates; [F:Q_p] = p - 1 (2 when p = 2)
HomQpStar kummer_iota(const QpStarElement& alpha);

enum class RepKind { nonsplit_unique, nonsplit_with_class, split };

// Which extension of delta2 by delta1 the point names on the Galois side.
// For points on the blown-up locus the class is spanned by
//   kum_p * Kum(p) + kum_a * Kum(a),
// the orthogonal of the line under the class-field pairing <l, Kum(alpha)>
// = l(alpha).
struct GaloisRepRecipe {
    RepKind kind = RepKind::nonsplit_unique;
    Character delta1;
    Character delta2;
    bool has_class = false;
    PadicInt kum_p;
    PadicInt kum_a;
};

GaloisRepRecipe galois_rep(const ParamPoint& z);

// Image of the Jacquet module inside the function-space quotient: away from
// the blown-up locus it is the character line spanned by the tail
// chi * delta2 * delta1^{-1}, carried across the ambient twist
// chi^{-1} * delta1; on the locus it is the parameter line itself, twisted
// by delta2.  The locus delta1 = delta2 (tail = chi) is flagged.
struct JacquetImageDesc {
    bool is_line = false;
    Character tail;  // iff !is_line
    Character twist; // chi^{-1} delta1 (character case) or delta2 (line case)
    HomQpStar line;  // iff is_line
    bool pathological = false;
};

JacquetImageDesc jacquet_image(const ParamPoint& z);

// Tabulates a character as a locally constant function on the profinite
// unit-times-p-power group at unit level m: value at p^j u is
// delta(p)^j * delta(u), with the p-direction period the multiplicative
// order of delta(p) mod p^n.  Needs m >= n + c(p) so that residues mod p^m
// determine delta on units mod p^n.
PeriodicTail materialize_tail(const Character& delta, int32_t m);

enum class IotaPipeline { direct_dilation, decomposition };

// Round-trip comparison of the two recipes for delta1 != delta2.  Away from
// the blown-up locus both routes must name the unique nonsplit extension of
// delta2 by delta1 and the character arithmetic must reconstruct the pair.
// On the locus, the Galois-side class (the orthogonal of the line) is
// rebuilt as an explicit cocycle through the certified Kummer dictionary
// and pushed through the iota pipeline; the theorem being checked says the
// resulting homomorphism spans the original line (cross product zero).
// Throws pathological_point when delta1 = delta2.
bool catego_check(const ParamPoint& z, const SeriesRing& R,
                  IotaPipeline pipe = IotaPipeline::direct_dilation);
// same, with a default ring sized from (p, working digits)
bool catego_check(const ParamPoint& z);

} // namespace fontaine
