#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "groupeq/linclass.hpp"
#include "groupeq/word.hpp"

namespace groupeq {

// ---------------------------------------------------------------------------
// Concrete finite abelian groups: direct sums of cyclic groups, written
// multiplicatively; elements are residue vectors.

class FiniteAbelianGroup {
 public:
  using Element = std::vector<Int>;

  explicit FiniteAbelianGroup(std::vector<Int> orders);

  std::size_t components() const { return orders_.size(); }
  const std::vector<Int>& orders() const { return orders_; }
  const Int& size() const { return size_; }

  Element identity() const { return Element(orders_.size(), 0); }
  Element generator(std::size_t k) const;
  Element make(std::vector<Int> residues) const;  // reduces mod orders
  Element mul(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  Element power(const Element& a, const Int& e) const;
  Int element_order(const Element& a) const;
  bool is_identity(const Element& a) const;

  // all elements in lexicographic order; throws budget_error past the cap
  std::vector<Element> elements(unsigned long budget = 1u << 22) const;

  // subgroup generated by the given elements, enumerated by closure
  std::set<Element> span(const std::vector<Element>& gens,
                         unsigned long budget = 1u << 22) const;

  // height of a in the p-component sense; requires every order to be a power
  // of p. nullopt encodes infinite height (only the identity here).
  std::optional<unsigned long> height_p(const Element& a, const Int& p) const;

 private:
  std::vector<Int> orders_;
  Int size_;
};

// ---------------------------------------------------------------------------
// Linear systems over finite abelian groups.

// Full solution set of a finite system, as particular + homogeneous span.
struct AbelianSolutionSet {
  bool empty = true;
  std::vector<Variable> variables;  // column order used below
  std::vector<FiniteAbelianGroup::Element> particular;  // one per variable
  // each generator assigns one element per variable
  std::vector<std::vector<FiniteAbelianGroup::Element>> hom_generators;
  std::string obstruction;  // human-readable reason when empty
};

// Solves the abelianized system (variables commute with everything) by Smith
// normal form over each Z/m_k. Square unimodular systems get exactly one
// solution.
AbelianSolutionSet solve_over_finite_abelian(
    const std::vector<Equation>& equations, const FiniteAbelianGroup& A,
    const std::map<Symbol, FiniteAbelianGroup::Element>& coefficients);

// Minimal element order of the v-coordinate over the whole solution coset;
// works on the projected coset, not on the full solution enumeration.
Int min_order_of_variable(const AbelianSolutionSet& sols,
                          const FiniteAbelianGroup& A, const Variable& v,
                          unsigned long budget = 1u << 22);

// The coset of a single variable's projection: particular + span of the
// generators' projections.
std::vector<FiniteAbelianGroup::Element> variable_coset(
    const AbelianSolutionSet& sols, const FiniteAbelianGroup& A,
    const Variable& v, unsigned long budget = 1u << 22);

// Exhaustive oracle: tries every assignment. Budget counts assignments.
std::vector<std::map<Symbol, FiniteAbelianGroup::Element>>
brute_force_solve_abelian(
    const std::vector<Equation>& equations, const FiniteAbelianGroup& A,
    const std::map<Symbol, FiniteAbelianGroup::Element>& coefficients,
    unsigned long budget = 1u << 22);

// ---------------------------------------------------------------------------
// Symbolic periodic abelian groups: per-prime components that are direct
// sums of cyclic groups (rule-generated exponents) and Prufer groups.

// Exponent multiset rule with decidable boundedness.
struct CyclicRule {
  enum class Kind { List, Arithmetic, Doubling };
  Kind kind = Kind::List;
  std::vector<unsigned long> list;  // List
  // Arithmetic: k_i = a*i + b for i >= 1 (a >= 0, a + b >= 1)
  unsigned long a = 0, b = 0;
  // Doubling: k_1 given, k_{i+1} = 2 k_i + c (requires k_{i+1} >= k_i)
  unsigned long k1 = 0;
  long c = 0;

  static CyclicRule of_list(std::vector<unsigned long> ks);
  static CyclicRule arithmetic(unsigned long a, unsigned long b);
  static CyclicRule doubling(unsigned long k1, long c);

  bool infinite() const { return kind != Kind::List; }
  bool nontrivial() const;            // emits at least one summand
  bool bounded() const;               // constant or finite
  unsigned long max_exponent() const; // only when bounded
  unsigned long k(unsigned long i) const;  // 1-based emission
  std::string str() const;
};

struct PComponentDescriptor {
  Int p;
  std::vector<CyclicRule> cyclic;  // at most one infinite rule, last
  unsigned long pruefer_count = 0;
  bool pruefer_omega = false;

  bool has_cyclic_part() const;
  bool cyclic_bounded() const;
  unsigned long cyclic_period_exponent() const;  // max k when bounded
  bool has_divisible_part() const {
    return pruefer_omega || pruefer_count > 0;
  }
  bool is_trivial() const {
    return !has_cyclic_part() && !has_divisible_part();
  }
  // k of the j-th cyclic summand (0-based across rules in order)
  std::optional<unsigned long> summand_exponent(std::size_t j) const;
  void validate() const;
};

struct PeriodicAbelianDescriptor {
  std::vector<PComponentDescriptor> components;  // pairwise distinct primes
  // Optional family "one component for every prime p" with a fixed shape;
  // primes of explicit components are excluded from the family.
  bool every_prime = false;
  std::vector<unsigned long> every_prime_cyclic;  // finite exponent list
  unsigned long every_prime_pruefer = 0;
  bool every_prime_pruefer_omega = false;

  void validate() const;
  const PComponentDescriptor* find_component(const Int& p) const;
  // materialize the family shape at prime p (nullopt if no component there)
  std::optional<PComponentDescriptor> component_at(const Int& p) const;
};

// An element supported on finitely many summands of one p-component.
struct DescriptorElement {
  struct CyclicEntry {
    std::size_t summand;  // index into the component's cyclic emission order
    Int residue;          // nonzero mod p^k
  };
  struct PrueferEntry {
    std::size_t summand;
    Int num;             // numerator of num / p^tpow mod 1
    unsigned long tpow;  // > 0 for nonzero entries
  };
  std::vector<CyclicEntry> cyclic;
  std::vector<PrueferEntry> pruefer;
  bool is_identity() const { return cyclic.empty() && pruefer.empty(); }
};

struct HeightValue {
  bool infinite = false;
  unsigned long value = 0;  // meaningful when finite
  static HeightValue inf() { return {true, 0}; }
  static HeightValue of(unsigned long v) { return {false, v}; }
  bool operator==(const HeightValue&) const = default;
};

// Height in the p-component: min over the support of per-summand heights
// (v_p of the residue in a cyclic summand; infinite in a Prufer summand).
// The identity has infinite height by convention.
HeightValue height(const DescriptorElement& g, const PComponentDescriptor& comp);
HeightValue height(const DescriptorElement& g, const Int& p,
                   const PeriodicAbelianDescriptor& G);

// G_0 for the representable class: exactly the Prufer part.
PComponentDescriptor infinite_height_subgroup(const PeriodicAbelianDescriptor& G,
                                              const Int& p);
// G / G_0: exactly the cyclic part.
PComponentDescriptor first_ulm_factor(const PeriodicAbelianDescriptor& G,
                                      const Int& p);

struct CriterionVerdict {
  enum class Reason {
    None,
    InfinitelyManyNontrivialUlmFactors,
    UnboundedUlmFactor,
    InfinitelyManyReducedComponents,
    UnboundedReducedPart,
    NotDivisible,
  };
  bool closed = false;
  Reason reason = Reason::None;
  std::string detail;
  std::string str() const;
};

// Closed iff finitely many components have nontrivial first Ulm factor and
// each such factor has bounded period.
CriterionVerdict theorem1_criterion(const PeriodicAbelianDescriptor& G);
// Closed iff the reduced part (the cyclic summands) has bounded period.
CriterionVerdict abelian_reduced_criterion(const PeriodicAbelianDescriptor& A);
// Torsion-free side: closed iff divisible.
CriterionVerdict theorem2_criterion(bool divisible);

// Descriptor file format (see docs/formats.md):
//   component p=2 cyclic [1,1,3]
//   component p=2 cyclic k_i = 2*i+1 for i>=1
//   component p=2 cyclic k_1 = 2, k_{i+1} = 2*k_i + 1
//   component p=3 pruefer count=omega
//   component every-prime cyclic [1]
PeriodicAbelianDescriptor parse_descriptor_file(std::istream& in);
PeriodicAbelianDescriptor parse_descriptor_text(const std::string& text);

}  // namespace groupeq
