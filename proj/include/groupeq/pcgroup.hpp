#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "groupeq/abelian.hpp"
#include "groupeq/word.hpp"

namespace groupeq {

// Finite nilpotent group given by a power-commutator presentation:
// generators g_1..g_n with prime-power relative orders r_i,
//   g_i^{r_i}  = (word in g_{i+1}..g_n)
//   [g_j, g_i] = (word in g_{j+1}..g_n)   for i < j
// Elements are normal forms g_1^{e_1}..g_n^{e_n}, 0 <= e_i < r_i, multiplied
// by collection. Consistency is checked at construction.
class PcGroup {
 public:
  using Element = std::vector<long>;

  struct Presentation {
    std::vector<long> orders;                   // prime powers >= 2
    std::vector<Element> power_rhs;             // one per generator, support > i
    std::vector<std::vector<Element>> comm_rhs; // comm_rhs[j][i], i < j, support > j
  };

  static constexpr unsigned long kDefaultBudget = 10000;

  static PcGroup from_presentation(Presentation pres,
                                   unsigned long budget = kDefaultBudget);

  // Built-in families used across the test beds.
  static PcGroup cyclic(long p, unsigned k);           // order p^k
  static PcGroup heisenberg(long p, unsigned k = 1);   // order p^{3k}
  static PcGroup dihedral_2group(unsigned log2_order); // order 2^t, t >= 3
  static PcGroup direct_product(const PcGroup& a, const PcGroup& b);

  unsigned n_gens() const { return static_cast<unsigned>(pres_.orders.size()); }
  const std::vector<long>& orders() const { return pres_.orders; }
  const Int& order() const { return size_; }

  Element identity() const { return Element(n_gens(), 0); }
  Element generator(unsigned i) const;  // 0-based
  Element mul(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  Element power(const Element& a, const Int& e) const;
  Element commutator(const Element& a, const Element& b) const;
  Int element_order(const Element& a) const;
  bool is_identity(const Element& a) const;

  std::vector<Element> elements() const;  // all normal forms, lexicographic
  std::string element_str(const Element& a) const;

 private:
  Presentation pres_;
  Int size_;

  PcGroup(Presentation pres);
  void validate_shape() const;
  void check_overlap_consistency() const;
  void check_generator_bijections(unsigned long budget) const;
  Element rmul_gen(Element a, unsigned i) const;
  Element conj_tail_by_gen(const Element& tail, unsigned i) const;
};

using PcSubgroup = std::set<PcGroup::Element>;

// Subgroup generated by the given elements (finite closure).
PcSubgroup subgroup_closure(const PcGroup& G,
                            const std::vector<PcGroup::Element>& gens);
// Smallest normal subgroup containing the given elements.
PcSubgroup normal_closure(const PcGroup& G,
                          const std::vector<PcGroup::Element>& seed);

enum class SeriesKind { Upper, Lower };

struct CentralSeries {
  SeriesKind kind;
  // Upper: Z_0 = 1, ..., Z_s = G.  Lower: gamma_1 = G, ..., gamma_{s+1} = 1.
  std::vector<PcSubgroup> chain;
  std::vector<std::vector<PcGroup::Element>> generator_sets;  // per subgroup
  unsigned nilpotency_class = 0;
};

CentralSeries central_series(const PcGroup& G, SeriesKind kind,
                             unsigned long budget = PcGroup::kDefaultBudget);

// Checks <G^{n^s}> subset of G^n with s the nilpotency class. True for every
// nilpotent group; a failure indicates an engine bug.
bool power_subgroup_check(const PcGroup& G, unsigned long n,
                          unsigned long budget = PcGroup::kDefaultBudget);

using PcAssignment = std::map<Symbol, PcGroup::Element>;

// All solutions of the system in G, in lexicographic assignment order.
// Budget counts candidate assignments; jobs > 1 splits on the first variable.
std::vector<PcAssignment> brute_force_solve(
    const std::vector<Equation>& equations, const PcGroup& G,
    const PcAssignment& coefficients, unsigned long budget = 2'000'000,
    unsigned jobs = 1);

// The unique solution of a square unimodular system, found by solving the
// abelianization over G/gamma_2 and then correcting with central elements of
// gamma_c/gamma_{c+1} for c = 2..s.
PcAssignment lift_solve(const std::vector<Equation>& equations,
                        const PcGroup& G, const PcAssignment& coefficients);

// Group files: either a pc presentation
//   gens 3; orders 2 2 2; pow 2: g3; comm 2 1: g3; coeff a: g1
// or a plain cyclic-sum group
//   abelian 4 32; coeff a_1: 1 0
struct ConcreteGroupFile {
  std::optional<PcGroup> pc;
  std::optional<FiniteAbelianGroup> abelian;
  PcAssignment pc_coeffs;
  std::map<Symbol, FiniteAbelianGroup::Element> ab_coeffs;
};

ConcreteGroupFile parse_group_file(std::istream& in);
ConcreteGroupFile parse_group_text(const std::string& text);

}  // namespace groupeq
