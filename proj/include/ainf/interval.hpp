#pragma once

#include <vector>

#include "ainf/ainfty.hpp"

namespace ainf {

// Cylinder algebra on three tagged copies of a base algebra's module:
// letters I0:x and I1:x keep the degree of x, I:x sits one higher.  incl
// and the two evaluations are homomorphism families concentrated in
// arity 1 at the zero class.
struct IntervalModel {
  FilteredAInfinity algebra;
  HomFamily incl;   // base -> cylinder, x -> I0:x + I1:x
  HomFamily eval0;  // cylinder -> base, kills I and I1
  HomFamily eval1;  // cylinder -> base, kills I0 and I
  std::vector<int> i0, imid, i1;  // cylinder index of each tagged copy
};

// Builds the cylinder operations from the base operations:
//   every operation acts diagonally on all-I0 and all-I1 words,
//   words (I0 head, one I letter, I1 tail) map to I of the base value
//     with the sign (-1)^{sum deg' of the tail},
//   curvature terms include into both end copies,
//   the extra arity-1 energy-zero terms send I0:x to (-1)^{deg' x} I:x
//     and I1:x to the negative of that,
//   every other word maps to zero.
// The output passes the quadratic relations for every verified input;
// build does not re-check them.
IntervalModel build_interval_model(const FilteredAInfinity& A);

// The four cylinder axioms: incl and the evaluations concentrated at
// arity 1, energy zero; their linear parts quasi-isomorphisms; both
// compositions eval after incl equal to the identity family; the paired
// evaluations jointly surjective in every degree.
CheckReport verify_model_axioms(const IntervalModel& M, const FilteredAInfinity& A);

// Certifies F as a homotopy from f0 to f1: F must be a homomorphism
// family dom -> cylinder and compose with the evaluations to f0 and f1.
CheckReport check_homotopy(const HomFamily& f0, const HomFamily& f1, const HomFamily& F,
                           const IntervalModel& M, const FilteredAInfinity& dom);

// Certifies bt as a gauge equivalence from b to bp: bt solves the
// Maurer-Cartan equation in the cylinder and evaluates to b at 0 and bp
// at 1.  Throws when bt has a term of zero energy.
CheckReport check_gauge_equivalence(const Chain& b, const Chain& bp, const Chain& bt,
                                    const IntervalModel& M);

// True iff the arity-1 energy-zero component of f induces a cohomology
// isomorphism between the underlying complexes in every degree.
bool is_weak_homotopy_equivalence(const HomFamily& f, const FilteredAInfinity& A,
                                  const FilteredAInfinity& B);

}  // namespace ainf
