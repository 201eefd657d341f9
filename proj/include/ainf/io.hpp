#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ainf/bimodule.hpp"
#include "ainf/morse.hpp"

namespace ainf {

using Json = nlohmann::ordered_json;

// Artifacts are json objects opened by "format" and "version" keys.  The
// writers emit fields in one fixed order and rely on the canonical form
// of the in-memory containers, so equal data serializes byte for byte.
// The readers resolve generators by name, re-check every structural
// invariant, and throw naming the offending element.

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// Exact values travel as "p/q" strings; plain integers are accepted.
Json rational_save(const Rational& r);
Rational rational_load(const Json& j);

Json basis_save(const GradedBasis& b);
GradedBasis basis_load(const Json& j);

Json class_save(const GapClass& b);
GapClass class_load(const Json& j);

Json algebra_save(const FilteredAInfinity& A);
FilteredAInfinity algebra_load(const Json& j);

Json chain_save(const Field& F, const GradedBasis& basis, const Chain& c,
                const Rational& energy_cutoff, const Rational& floor = Rational(0));
Chain chain_load(const Field& F, const GradedBasis& basis, const Json& j);

Json hom_save(const HomFamily& f);
HomFamily hom_load(const Json& j);

Json linmap_save(const Field& F, const GradedBasis& dom, const GradedBasis& cod,
                 const LinearMap& m);
LinearMap linmap_load(const Field& F, const GradedBasis& dom, const GradedBasis& cod,
                      const Json& j);

// Subbasis together with its inclusion into a given ambient basis.
Json subspace_save(const Field& F, const GradedBasis& sub, const GradedBasis& amb,
                   const LinearMap& iota);
std::pair<GradedBasis, LinearMap> subspace_load(const Field& F, const GradedBasis& amb,
                                                const Json& j);

Json simplicial_save(const SimplicialComplex& K);
SimplicialComplex simplicial_load(const Json& j);

Json matching_save(const SimplicialComplex& K, const GradientMatching& M);
GradientMatching matching_load(const SimplicialComplex& K, const Json& j);

Json bimodule_save(const FilteredBimodule& D);
FilteredBimodule bimodule_load(const Json& j);

Json ledger_save(const Field& F, const GradedBasis& sub, const GradedBasis& amb,
                 const std::vector<TreeContribution>& ledger);
std::vector<TreeContribution> ledger_load(const Field& F, const GradedBasis& sub,
                                          const GradedBasis& amb, const Json& j);

}  // namespace ainf
