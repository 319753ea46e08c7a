#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupeq/abelian.hpp"
#include "groupeq/system.hpp"
#include "groupeq/word.hpp"

namespace groupeq {

// Tower exponents k_1 < k_2 < ... with k_1 > m and k_{i+1} > 2 k_i; both
// constraints are enforced on every emitted index.
class KSequence {
 public:
  // k_1 = m + 1, k_{i+1} = 2 k_i + 1: the smallest admissible rule.
  static KSequence default_rule(Int p, unsigned long m);
  static KSequence explicit_list(Int p, unsigned long m,
                                 std::vector<unsigned long> ks);

  const Int& p() const { return p_; }
  unsigned long m() const { return m_; }
  unsigned long k(unsigned long i) const;  // 1-based
  // nullopt for the unbounded default rule
  std::optional<unsigned long> max_index() const { return max_index_; }

 private:
  Int p_;
  unsigned long m_ = 0;
  std::vector<unsigned long> list_;  // empty = default rule
  std::optional<unsigned long> max_index_;

  KSequence() = default;
  void check_pair(unsigned long prev, unsigned long next, unsigned long i) const;
};

// Equations x_i x_{i+1}^{-p^{k_i - k_{i-1}}} = a_i with k_0 = 0; every
// truncation is unimodular (unit bidiagonal exponent matrix).
SystemSource ulmbad_system(const KSequence& ks);

// Equations x y_i^{-p_i^{m_i}} = a_i over pairwise distinct primes.
SystemSource crossprime_system(const std::vector<std::pair<Int, unsigned long>>& data);
// Same shape over the i-th prime with a constant exponent m (infinite rule).
SystemSource crossprime_system_all_primes(unsigned long m);

struct TelescopeResult {
  GroupWord rhs;  // a_1 a_2^{p^{k_1}} ... a_n^{p^{k_{n-1}}}
  Int order;      // = p^{k_n - k_{n-1}}, computed in the concrete group
};

// Telescopes the first n equations; also checks the closed-form order
// against the concrete element order in the group sum_i <a_i>_{p^{k_i}}.
TelescopeResult telescope(const KSequence& ks, unsigned long n);

struct WitnessReport {
  unsigned long n = 0;
  unsigned long k_n = 0;            // ulmbad only
  Int telescoped_order = 0;         // ulmbad: p^{k_n - k_{n-1}}
  Int min_order = 0;                // ulmbad: min order of x_1 over solutions
  Int doubling_bound = 1;           // ulmbad: p^{m 2^{n-2}} for n >= 2
  bool cross_checked = false;       // exhaustive enumeration also ran
  bool nontrivial_components = false;  // crossprime: x has p_i-part for i <= n
  bool ok = false;
};

// For each truncation n = 1..n_max, solve over the matching concrete group
// and verify the order-growth arithmetic. The exhaustive cross-check runs
// while |A|^{vars} fits the budget.
std::vector<WitnessReport> verify_truncations_ulmbad(
    const KSequence& ks, unsigned long n_max,
    unsigned long exhaustive_budget = 1u << 22);

// Over sum_i <a_i>_{p_i^{m_i + 1}} with a_i of maximal order: every solution
// gives x a nontrivial p_i-component for each i <= n.
std::vector<WitnessReport> verify_truncations_crossprime(
    const std::vector<std::pair<Int, unsigned long>>& data,
    unsigned long n_max);

// Tab-separated growth table: n, k_n, telescoped order, min-order, doubling
// bound, verdict.
void write_growth_table(std::ostream& out,
                        const std::vector<WitnessReport>& reports);

// The concrete verification group for an ulmbad truncation.
FiniteAbelianGroup ulmbad_group(const KSequence& ks, unsigned long n);
std::map<Symbol, FiniteAbelianGroup::Element> ulmbad_coefficients(
    const FiniteAbelianGroup& A);

}  // namespace groupeq
