#include "groupeq/witness.hpp"

#include <algorithm>
#include <ostream>

namespace groupeq {

KSequence KSequence::default_rule(Int p, unsigned long m) {
  if (!is_probable_prime(p)) throw std::invalid_argument("p must be prime");
  KSequence ks;
  ks.p_ = std::move(p);
  ks.m_ = m;
  return ks;
}

KSequence KSequence::explicit_list(Int p, unsigned long m,
                                   std::vector<unsigned long> ks_list) {
  if (!is_probable_prime(p)) throw std::invalid_argument("p must be prime");
  if (ks_list.empty()) throw std::invalid_argument("empty k sequence");
  KSequence ks;
  ks.p_ = std::move(p);
  ks.m_ = m;
  ks.list_ = std::move(ks_list);
  ks.max_index_ = ks.list_.size();
  unsigned long prev = 0;
  for (std::size_t i = 0; i < ks.list_.size(); ++i) {
    ks.check_pair(prev, ks.list_[i], i + 1);
    prev = ks.list_[i];
  }
  return ks;
}

void KSequence::check_pair(unsigned long prev, unsigned long next,
                           unsigned long i) const {
  if (i == 1) {
    if (next <= m_)
      throw std::invalid_argument("k_1 must exceed m = " + std::to_string(m_));
  } else if (next <= 2 * prev) {
    throw std::invalid_argument("k_" + std::to_string(i) +
                                " must exceed 2 k_" + std::to_string(i - 1));
  }
}

unsigned long KSequence::k(unsigned long i) const {
  if (i < 1) throw std::out_of_range("k indices are 1-based");
  if (!list_.empty()) {
    if (i > list_.size()) throw std::out_of_range("k sequence exhausted");
    return list_[i - 1];
  }
  // k_1 = m + 1, k_{i+1} = 2 k_i + 1  =>  k_i = (m + 2) 2^{i-1} - 1
  unsigned long v = m_ + 1;
  for (unsigned long t = 1; t < i; ++t) {
    if (v > (1ul << 40)) throw budget_error("k sequence exponent overflow");
    unsigned long next = 2 * v + 1;
    check_pair(v, next, t + 1);
    v = next;
  }
  if (i == 1) check_pair(0, v, 1);
  return v;
}

SystemSource ulmbad_system(const KSequence& ks) {
  SymbolTable table;
  table.declare("x", SymbolRole::VarFamily);
  table.declare("a", SymbolRole::CoeffFamily);
  KSequence seq = ks;
  auto rule = [seq](unsigned long i) {
    unsigned long prev = i == 1 ? 0 : seq.k(i - 1);
    Int exp = int_pow(seq.p(), seq.k(i) - prev);
    std::vector<Letter> letters{
        Letter{Symbol{"x", static_cast<long>(i)}, true, 1},
        Letter{Symbol{"x", static_cast<long>(i + 1)}, true, -exp},
        Letter{Symbol{"a", static_cast<long>(i)}, false, -1},
    };
    return Equation{GroupWord(std::move(letters))};
  };
  return SystemSource::generated(std::move(table), rule, ks.max_index());
}

SystemSource crossprime_system(
    const std::vector<std::pair<Int, unsigned long>>& data) {
  if (data.empty()) throw std::invalid_argument("no (p, m) pairs");
  std::set<Int> primes;
  for (const auto& [p, m] : data) {
    if (!is_probable_prime(p))
      throw std::invalid_argument("not a prime: " + p.get_str());
    if (!primes.insert(p).second)
      throw std::invalid_argument("repeated prime: " + p.get_str());
  }
  SymbolTable table;
  table.declare("x", SymbolRole::Variable);
  table.declare("y", SymbolRole::VarFamily);
  table.declare("a", SymbolRole::CoeffFamily);
  auto shared = std::make_shared<std::vector<std::pair<Int, unsigned long>>>(data);
  auto rule = [shared](unsigned long i) {
    const auto& [p, m] = shared->at(i - 1);
    std::vector<Letter> letters{
        Letter{Symbol{"x", Symbol::kNoIndex}, true, 1},
        Letter{Symbol{"y", static_cast<long>(i)}, true, -int_pow(p, m)},
        Letter{Symbol{"a", static_cast<long>(i)}, false, -1},
    };
    return Equation{GroupWord(std::move(letters))};
  };
  return SystemSource::generated(std::move(table), rule,
                                 static_cast<unsigned long>(data.size()));
}

SystemSource crossprime_system_all_primes(unsigned long m) {
  SymbolTable table;
  table.declare("x", SymbolRole::Variable);
  table.declare("y", SymbolRole::VarFamily);
  table.declare("a", SymbolRole::CoeffFamily);
  auto rule = [m](unsigned long i) {
    Int p = nth_prime(i);
    std::vector<Letter> letters{
        Letter{Symbol{"x", Symbol::kNoIndex}, true, 1},
        Letter{Symbol{"y", static_cast<long>(i)}, true, -int_pow(p, m)},
        Letter{Symbol{"a", static_cast<long>(i)}, false, -1},
    };
    return Equation{GroupWord(std::move(letters))};
  };
  return SystemSource::generated(std::move(table), rule);
}

FiniteAbelianGroup ulmbad_group(const KSequence& ks, unsigned long n) {
  std::vector<Int> orders;
  orders.reserve(n);
  for (unsigned long i = 1; i <= n; ++i)
    orders.push_back(int_pow(ks.p(), ks.k(i)));
  return FiniteAbelianGroup(std::move(orders));
}

std::map<Symbol, FiniteAbelianGroup::Element> ulmbad_coefficients(
    const FiniteAbelianGroup& A) {
  std::map<Symbol, FiniteAbelianGroup::Element> coeffs;
  for (std::size_t i = 0; i < A.components(); ++i)
    coeffs[Symbol{"a", static_cast<long>(i + 1)}] = A.generator(i);
  return coeffs;
}

TelescopeResult telescope(const KSequence& ks, unsigned long n) {
  if (n < 1) throw std::invalid_argument("telescope needs n >= 1");
  std::vector<Letter> letters;
  for (unsigned long i = 1; i <= n; ++i) {
    Int exp = i == 1 ? Int(1) : int_pow(ks.p(), ks.k(i - 1));
    letters.push_back(Letter{Symbol{"a", static_cast<long>(i)}, false, exp});
  }
  TelescopeResult res;
  res.rhs = GroupWord(std::move(letters));

  FiniteAbelianGroup A = ulmbad_group(ks, n);
  auto coeffs = ulmbad_coefficients(A);
  std::map<Symbol, FiniteAbelianGroup::Element> none;
  auto value = evaluate(A, res.rhs, none, coeffs);
  res.order = A.element_order(value);

  Int closed = int_pow(ks.p(), ks.k(n) - (n == 1 ? 0 : ks.k(n - 1)));
  if (res.order != closed)
    throw std::logic_error("telescoped order mismatch: concrete " +
                           res.order.get_str() + " vs closed form " +
                           closed.get_str());
  return res;
}

namespace {

// Exhaustive min order of one variable over all satisfying assignments,
// with equations compiled down to residue arithmetic. Returns -1 when the
// system has no solutions.
Int exhaustive_min_order(
    const FiniteAbelianGroup& A, const std::vector<Equation>& eqs,
    const std::vector<Variable>& vars,
    const std::map<Symbol, FiniteAbelianGroup::Element>& coeffs,
    std::size_t target_slot) {
  struct Compiled {
    std::vector<std::pair<std::size_t, Int>> terms;  // (slot, exponent)
    FiniteAbelianGroup::Element konst;
  };
  std::vector<Compiled> compiled;
  for (const Equation& e : eqs) {
    Compiled c{{}, A.identity()};
    auto sums = exponent_sums(e.lhs);
    for (const auto& [v, s] : sums) {
      auto it = std::find(vars.begin(), vars.end(), v);
      c.terms.emplace_back(static_cast<std::size_t>(it - vars.begin()), s);
    }
    for (const Letter& l : e.lhs.letters())
      if (!l.is_variable)
        c.konst = A.mul(c.konst, A.power(coeffs.at(l.sym), l.exponent));
    compiled.push_back(std::move(c));
  }

  auto all = A.elements();
  std::vector<std::size_t> idx(vars.size(), 0);
  Int best = -1;
  while (true) {
    bool ok = true;
    for (const Compiled& c : compiled) {
      for (std::size_t k = 0; k < A.components() && ok; ++k) {
        Int acc = c.konst[k];
        for (const auto& [slot, exp] : c.terms) acc += exp * all[idx[slot]][k];
        if (mod_floor(acc, A.orders()[k]) != 0) ok = false;
      }
      if (!ok) break;
    }
    if (ok) {
      Int ord = A.element_order(all[idx[target_slot]]);
      if (best < 0 || ord < best) best = ord;
    }
    std::size_t k = vars.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++idx[k] < all.size()) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
    if (done) return best;
  }
}

}  // namespace

std::vector<WitnessReport> verify_truncations_ulmbad(
    const KSequence& ks, unsigned long n_max, unsigned long exhaustive_budget) {
  SystemSource sys = ulmbad_system(ks);
  std::vector<WitnessReport> reports;
  for (unsigned long n = 1; n <= n_max; ++n) {
    WitnessReport r;
    r.n = n;
    r.k_n = ks.k(n);
    r.telescoped_order = telescope(ks, n).order;
    r.doubling_bound = n >= 2 ? int_pow(ks.p(), ks.m() << (n - 2)) : Int(1);

    FiniteAbelianGroup A = ulmbad_group(ks, n);
    auto coeffs = ulmbad_coefficients(A);
    auto eqs = sys.truncate(n);
    auto sols = solve_over_finite_abelian(eqs, A, coeffs);
    if (sols.empty)
      throw std::logic_error("ulmbad truncation unexpectedly unsolvable");
    Variable x1{"x", 1};
    r.min_order = min_order_of_variable(sols, A, x1);

    // cross-check against plain enumeration while it fits
    Int assignments = 1;
    for (std::size_t i = 0; i <= n; ++i) assignments *= A.size();
    if (assignments <= exhaustive_budget) {
      auto it = std::find(sols.variables.begin(), sols.variables.end(), x1);
      Int best = exhaustive_min_order(
          A, eqs, sols.variables, coeffs,
          static_cast<std::size_t>(it - sols.variables.begin()));
      r.cross_checked = true;
      if (best != r.min_order)
        throw std::logic_error("min-order mismatch between parametrization (" +
                               r.min_order.get_str() + ") and enumeration (" +
                               best.get_str() + ")");
    }

    r.ok = r.min_order >= r.telescoped_order && r.min_order >= r.doubling_bound;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<WitnessReport> verify_truncations_crossprime(
    const std::vector<std::pair<Int, unsigned long>>& data,
    unsigned long n_max) {
  if (n_max > data.size())
    throw std::invalid_argument("n_max exceeds the supplied primes");
  SystemSource sys = crossprime_system(data);
  std::vector<WitnessReport> reports;
  for (unsigned long n = 1; n <= n_max; ++n) {
    WitnessReport r;
    r.n = n;
    std::vector<Int> orders;
    for (unsigned long i = 0; i < n; ++i)
      orders.push_back(int_pow(data[i].first, data[i].second + 1));
    FiniteAbelianGroup A(orders);
    std::map<Symbol, FiniteAbelianGroup::Element> coeffs;
    for (unsigned long i = 0; i < n; ++i)
      coeffs[Symbol{"a", static_cast<long>(i + 1)}] = A.generator(i);

    auto sols = solve_over_finite_abelian(sys.truncate(n), A, coeffs);
    if (sols.empty)
      throw std::logic_error("crossprime truncation unexpectedly unsolvable");

    // x must keep a nontrivial p_i-part across the whole coset: per
    // component, the projected coset's subgroup cannot absorb the offset
    Variable x{"x", Symbol::kNoIndex};
    auto it = std::find(sols.variables.begin(), sols.variables.end(), x);
    std::size_t j = it - sols.variables.begin();
    bool all_nontrivial = true;
    for (unsigned long compo = 0; compo < n; ++compo) {
      // the projected subgroup of Z/m is <gcd(m, generators)>
      Int step = A.orders()[compo];
      for (const auto& gen : sols.hom_generators)
        step = gcd(step, gen[j][compo]);
      if (sols.particular[j][compo] % step == 0) all_nontrivial = false;
    }
    r.nontrivial_components = all_nontrivial;
    r.ok = all_nontrivial;
    reports.push_back(std::move(r));
  }
  return reports;
}

void write_growth_table(std::ostream& out,
                        const std::vector<WitnessReport>& reports) {
  out << "n\tk_n\ttelescoped_order\tmin_order\tdoubling_bound\tverdict\n";
  for (const auto& r : reports)
    out << r.n << '\t' << r.k_n << '\t' << r.telescoped_order.get_str() << '\t'
        << r.min_order.get_str() << '\t' << r.doubling_bound.get_str() << '\t'
        << (r.ok ? "ok" : "FAIL") << '\n';
}

}  // namespace groupeq
