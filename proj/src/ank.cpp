#include <algorithm>
#include <map>
#include <sstream>

#include "ainf/ainfty.hpp"

namespace ainf {

namespace {

int norm_rec(const GapMonoid& m, const GapClass& beta, std::map<GapClass, int>& memo) {
  if (beta.is_zero()) return 0;  // summand count of the empty decomposition
  auto it = memo.find(beta);
  if (it != memo.end()) return it->second;
  int best = -1;
  for (const GapClass& b1 : m.classes()) {
    if (b1.is_zero()) continue;
    if (b1.lambda > beta.lambda) break;
    GapClass rest{beta.lambda - b1.lambda, beta.mu - b1.mu};
    if (!rest.is_zero() && !m.contains(rest)) continue;
    int sub = norm_rec(m, rest, memo);
    if (sub >= 0) best = std::max(best, 1 + sub);
  }
  memo.emplace(beta, best);
  return best;
}

}  // namespace

int beta_norm(const GapMonoid& m, const GapClass& beta) {
  if (beta.is_zero()) return -1;
  if (!m.contains(beta)) throw error("norm of a class outside the monoid");
  std::map<GapClass, int> memo;
  int sup = norm_rec(m, beta, memo);
  if (sup < 0) throw error("class " + to_string(beta) + " admits no decomposition");
  return sup + rational_floor(beta.lambda).convert_to<int>() - 1;
}

bool ank_before(int norm, int k, int n, int K) {
  if (norm + k != n + K) return norm + k < n + K;
  return norm < n;
}

Report verify_ank(const FilteredAInfinity& A, int n, int K) {
  if (n < 0 || K < 0) throw error("negative index for the norm order");

  std::vector<std::pair<GapClass, int>> required;
  std::vector<std::string> missing;
  for (const GapClass& b : A.monoid.classes()) {
    int nb = beta_norm(A.monoid, b);
    for (int k = 0; nb + k <= n + K; ++k) {
      if (!ank_before(nb, k, n, K)) continue;
      if (k == 0 && b.is_zero()) continue;
      if (k > A.arity_cutoff)
        throw error("index (" + to_string(b) + ", " + std::to_string(k) +
                    ") before (" + std::to_string(n) + ", " + std::to_string(K) +
                    ") exceeds the arity cutoff");
      required.emplace_back(b, k);
      if (!A.total && A.ops.find(OpKey{k, b}) == A.ops.end())
        missing.push_back("(" + to_string(b) + ", " + std::to_string(k) + ")");
    }
  }
  if (!missing.empty()) {
    std::ostringstream os;
    os << "undeclared operations before (" << n << ", " << K << "):";
    for (const auto& s : missing) os << " " << s;
    throw error(os.str());
  }

  Report rep;
  Key w;
  for (const auto& [beta, k] : required) {
    std::function<void(int)> walk = [&](int len) {
      if (len == 0) {
        FieldChain r = ainfty_residual(A, w, beta);
        if (!r.empty()) rep.entries.push_back({k, beta, w, std::move(r)});
        return;
      }
      for (int i = 0; i < A.basis.size(); ++i) {
        w.push_back(i);
        walk(len - 1);
        w.pop_back();
      }
    };
    walk(k);
  }
  std::sort(rep.entries.begin(), rep.entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.k, a.beta, a.word) < std::tie(b.k, b.beta, b.word);
  });
  return rep;
}

}  // namespace ainf
