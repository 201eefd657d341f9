#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ainf/novikov.hpp"

namespace ainf {

// Ordered basis of a finitely generated free graded module.  Degrees are
// cohomological and non-negative; the bar-side shifted degree deg' = deg - 1
// is computed on demand and may be -1.
class GradedBasis {
 public:
  GradedBasis() = default;

  int add(const std::string& name, int degree);
  static GradedBasis from(const std::vector<std::pair<std::string, int>>& gens);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  int degree(int i) const { return degrees_.at(i); }
  int index(const std::string& name) const;
  std::optional<int> try_index(const std::string& name) const;
  std::vector<int> degrees_present() const;

  bool operator==(const GradedBasis& o) const {
    return names_ == o.names_ && degrees_ == o.degrees_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  std::map<std::string, int> index_;
};

// Chain over the ground field: finite map basis index -> scalar.
using FieldChain = std::map<int, Scalar>;

void fc_add(const Field& F, FieldChain& dst, const FieldChain& src, const Scalar& coeff);
FieldChain fc_scaled(const Field& F, const FieldChain& c, const Scalar& coeff);
FieldChain fc_neg(const Field& F, const FieldChain& c);
bool fc_equal(const FieldChain& a, const FieldChain& b);
// Degree if the chain is homogeneous, nullopt for 0 or mixed.
std::optional<int> fc_degree(const GradedBasis& basis, const FieldChain& c);
std::string fc_to_string(const GradedBasis& basis, const Field& F, const FieldChain& c);

// Chain with Novikov coefficients.
using Chain = std::map<int, NovElement>;

void chain_add(Chain& dst, const Chain& src);
void chain_add_term(Chain& dst, int basis, const NovElement& coeff);
bool chain_is_zero(const Chain& c);
Chain chain_neg(const Chain& c);
// Strictly positive valuation in every coefficient.
bool chain_positive_valuation(const Chain& c);
// deg' of a chain term: degree(basis) - 1 + monomial degree.  Returns the
// common value if every term agrees, nullopt otherwise.
std::optional<int> chain_shifted_degree(const GradedBasis& basis, const Chain& c);
std::string chain_to_string(const GradedBasis& basis, const Chain& c);

// A letter of a bar word: a basis element twisted by an integral power
// of the degree-2 parameter e.
struct Letter {
  int basis = 0;
  int e = 0;
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

Word word_of(const std::vector<int>& bases);
std::vector<int> word_bases(const Word& w);
int word_e_total(const Word& w);
std::string word_to_string(const GradedBasis& basis, const Word& w);

// deg' of a letter: degree(basis) - 1 + 2e.
int shifted_degree(const GradedBasis& basis, const Letter& l);
// Sum of letter shifted degrees; 0 for the empty word.
int shifted_degree(const GradedBasis& basis, const Word& w);
// Parity prefix: (-1)^{sum of deg' of w[0..i)}.
int koszul_sign(const GradedBasis& basis, const Word& w, size_t i);

// Element of the bar coalgebra: finite sum of words with Novikov
// coefficients.  The empty word is the coalgebra counit direction and a
// legitimate key.
using BarElement = std::map<Word, NovElement>;

void bar_add(BarElement& dst, const Word& w, const NovElement& coeff);
void bar_add(BarElement& dst, const BarElement& src);
bool bar_is_zero(const BarElement& b);
BarElement bar_scaled(const BarElement& b, const NovElement& coeff);
std::string bar_to_string(const GradedBasis& basis, const BarElement& b);

// All ways to cut w into `parts` ordered blocks, empty blocks allowed:
// binomial(|w| + parts - 1, parts - 1) splittings, in lexicographic order
// of cut positions.
std::vector<std::vector<Word>> coproduct_split(const Word& w, int parts);

}  // namespace ainf
