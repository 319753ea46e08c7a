#include "groupeq/pcgroup.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <istream>
#include <sstream>

#include "groupeq/linclass.hpp"

namespace groupeq {

// ---------------------------------------------------------------------------
// Construction

PcGroup::PcGroup(Presentation pres) : pres_(std::move(pres)), size_(1) {
  for (long r : pres_.orders) size_ *= r;
}

PcGroup PcGroup::from_presentation(Presentation pres, unsigned long budget) {
  if (pres.power_rhs.empty()) pres.power_rhs.resize(pres.orders.size());
  if (pres.comm_rhs.empty()) pres.comm_rhs.resize(pres.orders.size());
  for (auto& row : pres.comm_rhs) row.resize(pres.orders.size());
  PcGroup g(std::move(pres));
  g.validate_shape();
  g.check_overlap_consistency();
  if (g.size_ <= budget) g.check_generator_bijections(budget);
  return g;
}

void PcGroup::validate_shape() const {
  unsigned n = n_gens();
  for (long r : pres_.orders) {
    if (r < 2) throw std::invalid_argument("relative orders must be >= 2");
    if (prime_factors(Int(r)).size() != 1)
      throw std::invalid_argument("relative orders must be prime powers");
  }
  auto check_vec = [&](const Element& v, unsigned min_index, const char* what) {
    if (v.empty()) return;
    if (v.size() != n) throw std::invalid_argument(std::string(what) + ": bad length");
    for (unsigned j = 0; j < n; ++j) {
      if (v[j] < 0 || v[j] >= pres_.orders[j])
        throw std::invalid_argument(std::string(what) + ": exponent out of range");
      if (v[j] != 0 && j < min_index)
        throw std::invalid_argument(std::string(what) +
                                    ": must involve later generators only");
    }
  };
  if (pres_.power_rhs.size() != n || pres_.comm_rhs.size() != n)
    throw std::invalid_argument("relation tables have wrong size");
  for (unsigned i = 0; i < n; ++i)
    check_vec(pres_.power_rhs[i], i + 1, "power relation");
  for (unsigned j = 0; j < n; ++j) {
    if (pres_.comm_rhs[j].size() != n)
      throw std::invalid_argument("relation tables have wrong size");
    for (unsigned i = 0; i < n; ++i) {
      if (!pres_.comm_rhs[j][i].empty() && i >= j)
        throw std::invalid_argument("commutator relations need i < j");
      check_vec(pres_.comm_rhs[j][i], j + 1, "commutator relation");
    }
  }
}

namespace {

PcGroup::Element repeated_mul(const PcGroup& G, const PcGroup::Element& a,
                              long times) {
  auto acc = G.identity();
  for (long t = 0; t < times; ++t) acc = G.mul(acc, a);
  return acc;
}

}  // namespace

void PcGroup::check_overlap_consistency() const {
  unsigned n = n_gens();
  auto g = [&](unsigned i) { return generator(i); };
  auto expect = [&](const Element& a, const Element& b, const char* what) {
    if (a != b)
      throw std::invalid_argument(std::string("inconsistent pc presentation (") +
                                  what + ")");
  };
  for (unsigned k = 0; k < n; ++k)
    for (unsigned j = 0; j < k; ++j)
      for (unsigned i = 0; i < j; ++i)
        expect(mul(g(k), mul(g(j), g(i))), mul(mul(g(k), g(j)), g(i)),
               "associativity overlap");
  for (unsigned j = 0; j < n; ++j)
    for (unsigned i = 0; i < j; ++i) {
      expect(mul(repeated_mul(*this, g(j), pres_.orders[j]), g(i)),
             mul(repeated_mul(*this, g(j), pres_.orders[j] - 1), mul(g(j), g(i))),
             "power overlap (left)");
      expect(mul(g(j), repeated_mul(*this, g(i), pres_.orders[i])),
             mul(mul(g(j), g(i)), repeated_mul(*this, g(i), pres_.orders[i] - 1)),
             "power overlap (right)");
    }
  for (unsigned i = 0; i < n; ++i)
    expect(mul(repeated_mul(*this, g(i), pres_.orders[i]), g(i)),
           mul(g(i), repeated_mul(*this, g(i), pres_.orders[i])),
           "power overlap (self)");
}

void PcGroup::check_generator_bijections(unsigned long budget) const {
  // right multiplication by each generator must permute the normal forms
  auto all = elements();
  if (all.size() > budget) return;
  for (unsigned i = 0; i < n_gens(); ++i) {
    std::set<Element> image;
    for (const auto& x : all) image.insert(mul(x, generator(i)));
    if (image.size() != all.size())
      throw std::invalid_argument(
          "inconsistent pc presentation (generator action not bijective)");
  }
}

// ---------------------------------------------------------------------------
// Collection

PcGroup::Element PcGroup::generator(unsigned i) const {
  Element e = identity();
  e.at(i) = 1;
  return e;
}

// (tail)^{g_i} for a tail supported on generators > i.
PcGroup::Element PcGroup::conj_tail_by_gen(const Element& tail, unsigned i) const {
  Element res = identity();
  for (unsigned j = i + 1; j < n_gens(); ++j) {
    if (tail[j] == 0) continue;
    // g_j^{g_i} = g_j [g_j, g_i], already a normal form (support >= j)
    Element conj_gj = identity();
    conj_gj[j] = 1;
    const Element& c = pres_.comm_rhs[j][i];
    if (!c.empty())
      for (unsigned t = j + 1; t < n_gens(); ++t) conj_gj[t] = c[t];
    for (long t = 0; t < tail[j]; ++t) res = mul(res, conj_gj);
  }
  return res;
}

PcGroup::Element PcGroup::rmul_gen(Element a, unsigned i) const {
  Element tail = identity();
  bool tail_trivial = true;
  for (unsigned j = i + 1; j < n_gens(); ++j) {
    tail[j] = a[j];
    if (a[j] != 0) tail_trivial = false;
    a[j] = 0;
  }
  Element conj = tail_trivial ? tail : conj_tail_by_gen(tail, i);

  a[i] += 1;
  if (a[i] == pres_.orders[i]) {
    a[i] = 0;
    const Element& w = pres_.power_rhs[i];
    if (!w.empty()) conj = mul(w, conj);  // both supported past i
  }
  for (unsigned j = i + 1; j < n_gens(); ++j) a[j] = conj[j];
  return a;
}

PcGroup::Element PcGroup::mul(const Element& a, const Element& b) const {
  if (a.size() != n_gens() || b.size() != n_gens())
    throw std::invalid_argument("element length mismatch");
  Element res = a;
  for (unsigned i = 0; i < n_gens(); ++i)
    for (long t = 0; t < b[i]; ++t) res = rmul_gen(std::move(res), i);
  return res;
}

PcGroup::Element PcGroup::inverse(const Element& a) const {
  return power(a, size_ - 1);  // a^{|G|} = 1
}

PcGroup::Element PcGroup::power(const Element& a, const Int& e) const {
  if (e < 0) return power(inverse(a), -e);
  Element base = a, acc = identity();
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = mul(acc, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return acc;
}

PcGroup::Element PcGroup::commutator(const Element& a, const Element& b) const {
  return mul(mul(inverse(a), inverse(b)), mul(a, b));
}

Int PcGroup::element_order(const Element& a) const {
  Int ord = 1;
  Element acc = a;
  while (!is_identity(acc)) {
    acc = mul(acc, a);
    ++ord;
  }
  return ord;
}

bool PcGroup::is_identity(const Element& a) const {
  return std::all_of(a.begin(), a.end(), [](long e) { return e == 0; });
}

std::vector<PcGroup::Element> PcGroup::elements() const {
  std::vector<Element> out;
  Element cur = identity();
  out.push_back(cur);
  if (n_gens() == 0) return out;
  while (true) {
    std::size_t k = n_gens();
    bool done = true;
    while (k > 0) {
      --k;
      if (++cur[k] < pres_.orders[k]) {
        done = false;
        break;
      }
      cur[k] = 0;
    }
    if (done) return out;
    out.push_back(cur);
  }
}

std::string PcGroup::element_str(const Element& a) const {
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i < n_gens(); ++i) {
    if (a[i] == 0) continue;
    if (!first) os << ' ';
    first = false;
    os << 'g' << (i + 1);
    if (a[i] != 1) os << '^' << a[i];
  }
  return first ? "1" : os.str();
}

// ---------------------------------------------------------------------------
// Built-in families

PcGroup PcGroup::cyclic(long p, unsigned k) {
  if (k < 1) throw std::invalid_argument("cyclic(p, k) needs k >= 1");
  Int r = int_pow(Int(p), k);
  if (!r.fits_slong_p()) throw std::invalid_argument("cyclic order too large");
  Presentation pres;
  pres.orders = {r.get_si()};
  return from_presentation(std::move(pres));
}

PcGroup PcGroup::heisenberg(long p, unsigned k) {
  Int rr = int_pow(Int(p), k);
  if (!rr.fits_slong_p()) throw std::invalid_argument("heisenberg order too large");
  long r = rr.get_si();
  Presentation pres;
  pres.orders = {r, r, r};
  pres.power_rhs.resize(3);
  pres.comm_rhs.assign(3, std::vector<Element>(3));
  // with g1 = E+e12, g2 = E+e23, g3 = E+e13: [g2, g1] = g3^{-1}
  pres.comm_rhs[1][0] = {0, 0, r - 1};
  return from_presentation(std::move(pres));
}

PcGroup PcGroup::dihedral_2group(unsigned log2_order) {
  if (log2_order < 3)
    throw std::invalid_argument("dihedral 2-groups here start at order 8");
  unsigned n = log2_order;  // g1 = reflection, g_{i} = b^{2^{i-2}} for i >= 2
  Presentation pres;
  pres.orders.assign(n, 2);
  pres.power_rhs.assign(n, Element{});
  pres.comm_rhs.assign(n, std::vector<Element>(n));
  for (unsigned i = 1; i + 1 < n; ++i) {
    Element sq(n, 0);
    sq[i + 1] = 1;
    pres.power_rhs[i] = sq;  // (b^{2^{i-2}})^2 = b^{2^{i-1}}
  }
  for (unsigned i = 1; i + 1 < n; ++i) {
    // [b^{2^{i-2}}, a] = b^{-2^{i-1}} = product of all later rotation gens
    Element c(n, 0);
    for (unsigned t = i + 1; t < n; ++t) c[t] = 1;
    pres.comm_rhs[i][0] = c;
  }
  return from_presentation(std::move(pres));
}

PcGroup PcGroup::direct_product(const PcGroup& a, const PcGroup& b) {
  unsigned na = a.n_gens(), nb = b.n_gens(), n = na + nb;
  Presentation pres;
  pres.orders.reserve(n);
  pres.orders = a.pres_.orders;
  pres.orders.insert(pres.orders.end(), b.pres_.orders.begin(),
                     b.pres_.orders.end());
  auto shift = [&](const Element& v, unsigned off) {
    if (v.empty()) return Element{};
    Element out(n, 0);
    for (std::size_t t = 0; t < v.size(); ++t) out[t + off] = v[t];
    return out;
  };
  pres.power_rhs.assign(n, Element{});
  pres.comm_rhs.assign(n, std::vector<Element>(n));
  for (unsigned i = 0; i < na; ++i) {
    pres.power_rhs[i] = shift(a.pres_.power_rhs[i], 0);
    for (unsigned j = 0; j < na; ++j)
      pres.comm_rhs[i][j] = shift(a.pres_.comm_rhs[i][j], 0);
  }
  for (unsigned i = 0; i < nb; ++i) {
    pres.power_rhs[na + i] = shift(b.pres_.power_rhs[i], na);
    for (unsigned j = 0; j < nb; ++j)
      pres.comm_rhs[na + i][na + j] = shift(b.pres_.comm_rhs[i][j], na);
  }
  return from_presentation(std::move(pres));
}

// ---------------------------------------------------------------------------
// Subgroups and series

PcSubgroup subgroup_closure(const PcGroup& G,
                            const std::vector<PcGroup::Element>& gens) {
  PcSubgroup seen{G.identity()};
  std::deque<PcGroup::Element> work{G.identity()};
  while (!work.empty()) {
    auto cur = work.front();
    work.pop_front();
    for (const auto& g : gens) {
      auto next = G.mul(cur, g);
      if (seen.insert(next).second) work.push_back(next);
    }
  }
  return seen;
}

PcSubgroup normal_closure(const PcGroup& G,
                          const std::vector<PcGroup::Element>& seed) {
  std::vector<PcGroup::Element> gens = seed;
  PcSubgroup sub = subgroup_closure(G, gens);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& x : sub) {
      for (unsigned i = 0; i < G.n_gens(); ++i) {
        auto g = G.generator(i);
        auto conj = G.mul(G.mul(G.inverse(g), x), g);
        if (!sub.count(conj)) {
          gens.push_back(conj);
          sub = subgroup_closure(G, gens);
          grew = true;
          break;
        }
      }
      if (grew) break;
    }
  }
  return sub;
}

namespace {

std::vector<PcGroup::Element> small_generating_set(const PcGroup& G,
                                                   const PcSubgroup& sub) {
  std::vector<PcGroup::Element> gens;
  PcSubgroup have{G.identity()};
  for (const auto& x : sub) {
    if (have.count(x)) continue;
    gens.push_back(x);
    have = subgroup_closure(G, gens);
    if (have.size() == sub.size()) break;
  }
  return gens;
}

}  // namespace

CentralSeries central_series(const PcGroup& G, SeriesKind kind,
                             unsigned long budget) {
  if (G.order() > budget)
    throw budget_error("group of order " + G.order().get_str() +
                       " exceeds the central-series budget");
  auto all = G.elements();
  CentralSeries out;
  out.kind = kind;

  if (kind == SeriesKind::Upper) {
    PcSubgroup z{G.identity()};
    out.chain.push_back(z);
    while (z.size() < all.size()) {
      PcSubgroup next;
      for (const auto& h : all) {
        bool in = true;
        for (unsigned i = 0; i < G.n_gens() && in; ++i)
          in = z.count(G.commutator(h, G.generator(i))) > 0;
        if (in) next.insert(h);
      }
      if (next.size() == z.size())
        throw std::logic_error("upper central series stabilized below G");
      out.chain.push_back(next);
      z = std::move(next);
    }
    out.nilpotency_class = static_cast<unsigned>(out.chain.size() - 1);
  } else {
    PcSubgroup gamma(all.begin(), all.end());
    out.chain.push_back(gamma);
    while (gamma.size() > 1) {
      std::vector<PcGroup::Element> seed;
      for (unsigned i = 0; i < G.n_gens(); ++i)
        for (const auto& x : gamma) {
          auto c = G.commutator(G.generator(i), x);
          if (!G.is_identity(c)) seed.push_back(c);
        }
      PcSubgroup next = normal_closure(G, seed);
      if (next.size() == gamma.size())
        throw std::logic_error("lower central series stabilized above 1");
      out.chain.push_back(next);
      gamma = std::move(next);
    }
    out.nilpotency_class = static_cast<unsigned>(out.chain.size() - 1);
  }

  out.generator_sets.reserve(out.chain.size());
  for (const auto& sub : out.chain)
    out.generator_sets.push_back(small_generating_set(G, sub));
  return out;
}

bool power_subgroup_check(const PcGroup& G, unsigned long n,
                          unsigned long budget) {
  if (G.order() > budget)
    throw budget_error("power subgroup check exceeds budget");
  unsigned s = central_series(G, SeriesKind::Upper, budget).nilpotency_class;
  Int ns = int_pow(Int(n), s == 0 ? 1 : s);

  PcSubgroup nth_powers;
  std::vector<PcGroup::Element> high_powers;
  for (const auto& x : G.elements()) {
    nth_powers.insert(G.power(x, Int(n)));
    high_powers.push_back(G.power(x, ns));
  }
  for (const auto& y : subgroup_closure(G, high_powers))
    if (!nth_powers.count(y)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Solving

namespace {

std::vector<Variable> sorted_variables(const std::vector<Equation>& eqs) {
  std::set<Variable> vars;
  for (const Equation& e : eqs) {
    auto vs = variables_of(e.lhs);
    vars.insert(vs.begin(), vs.end());
  }
  return {vars.begin(), vars.end()};
}

}  // namespace

std::vector<PcAssignment> brute_force_solve(
    const std::vector<Equation>& equations, const PcGroup& G,
    const PcAssignment& coefficients, unsigned long budget, unsigned jobs) {
  auto vars = sorted_variables(equations);
  auto all = G.elements();

  Int total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= G.order();
  if (total > budget)
    throw budget_error("brute force over " + total.get_str() + " assignments");

  auto search_range = [&](std::size_t first_lo, std::size_t first_hi) {
    std::vector<PcAssignment> found;
    if (vars.empty()) {
      PcAssignment empty;
      bool ok = true;
      for (const Equation& e : equations)
        ok = ok && G.is_identity(evaluate(G, e.lhs, empty, coefficients));
      if (ok && first_lo == 0) found.push_back(empty);
      return found;
    }
    std::vector<std::size_t> idx(vars.size(), 0);
    for (std::size_t f = first_lo; f < first_hi; ++f) {
      idx.assign(vars.size(), 0);
      idx[0] = f;
      while (true) {
        PcAssignment assign;
        for (std::size_t i = 0; i < vars.size(); ++i) assign[vars[i]] = all[idx[i]];
        bool ok = true;
        for (const Equation& e : equations) {
          if (!G.is_identity(evaluate(G, e.lhs, assign, coefficients))) {
            ok = false;
            break;
          }
        }
        if (ok) found.push_back(std::move(assign));

        // advance the sub-odometer (positions 1..); position 0 is fixed
        std::size_t k = vars.size();
        bool done = true;
        while (k > 1) {
          --k;
          if (++idx[k] < all.size()) {
            done = false;
            break;
          }
          idx[k] = 0;
        }
        if (done) break;
      }
    }
    return found;
  };

  if (jobs <= 1 || vars.empty() || all.size() < 2)
    return search_range(0, vars.empty() ? 1 : all.size());

  unsigned workers = std::min<unsigned>(jobs, static_cast<unsigned>(all.size()));
  std::vector<std::future<std::vector<PcAssignment>>> futures;
  std::size_t chunk = (all.size() + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk, hi = std::min(all.size(), lo + chunk);
    if (lo >= hi) break;
    futures.push_back(std::async(std::launch::async, search_range, lo, hi));
  }
  std::vector<PcAssignment> found;
  for (auto& f : futures) {
    auto part = f.get();
    found.insert(found.end(), part.begin(), part.end());
  }
  return found;  // partitioned by first-variable index, hence already sorted
}

namespace {

// G/N on canonical (lexicographically least) coset representatives.
struct PcQuotient {
  const PcGroup& G;
  const PcSubgroup& N;
  using Element = PcGroup::Element;

  Element canon(const Element& g) const {
    Element best = g;
    for (const auto& n : N) {
      auto c = G.mul(g, n);
      if (c < best) best = c;
    }
    return best;
  }
  Element identity() const { return canon(G.identity()); }
  Element mul(const Element& a, const Element& b) const {
    return canon(G.mul(a, b));
  }
  Element inverse(const Element& a) const { return canon(G.inverse(a)); }
  Element power(const Element& a, const Int& e) const {
    return canon(G.power(a, e));
  }
};

// prod_i b_i^{W[j][i]} for each j; valid when the b_i commute in the quotient
template <class Ops>
std::vector<typename Ops::Element> apply_transform(
    const Ops& ops, const ExponentMatrix& W,
    const std::vector<typename Ops::Element>& b) {
  std::vector<typename Ops::Element> out(W.rows(), ops.identity());
  for (std::size_t j = 0; j < W.rows(); ++j)
    for (std::size_t i = 0; i < W.cols(); ++i)
      if (W.at(j, i) != 0)
        out[j] = ops.mul(out[j], ops.power(b[i], W.at(j, i)));
  return out;
}

PcGroup::Element coefficient_image(const PcGroup& G, const GroupWord& w,
                                   const PcAssignment& coefficients) {
  auto acc = G.identity();
  for (const Letter& l : w.letters()) {
    if (l.is_variable) continue;
    auto it = coefficients.find(l.sym);
    if (it == coefficients.end())
      throw std::invalid_argument("coefficient not resolvable: " + l.sym.str());
    acc = G.mul(acc, G.power(it->second, l.exponent));
  }
  return acc;
}

}  // namespace

PcAssignment lift_solve(const std::vector<Equation>& equations,
                        const PcGroup& G, const PcAssignment& coefficients) {
  auto vars = sorted_variables(equations);
  std::size_t ne = equations.size(), nv = vars.size();
  if (ne != nv)
    throw std::invalid_argument("lift_solve needs a square system");

  ExponentMatrix M(ne, nv);
  for (std::size_t i = 0; i < ne; ++i) {
    auto sums = exponent_sums(equations[i].lhs);
    for (std::size_t j = 0; j < nv; ++j) {
      auto it = sums.find(vars[j]);
      if (it != sums.end()) M.at(i, j) = it->second;
    }
  }

  // Solvability and uniqueness need p-nonsingularity at every prime dividing
  // |G|; unimodular systems (d_i = 1) always qualify.
  auto snf = smith_normal_form(M);
  auto d = snf.divisors();
  if (std::any_of(d.begin(), d.end(), [](const Int& di) { return di == 0; }))
    throw std::invalid_argument("lift_solve needs a nonsingular square system");
  if (ne > 0 && gcd(d.back(), G.order()) != 1)
    throw std::invalid_argument(
        "lift_solve needs the system p-nonsingular at every prime dividing |G| "
        "(unimodular systems always are)");

  // x = V diag(d_i^{-1} mod |G|) U b; powers by d_i^{-1} invert the d_i-th
  // power map on every abelian section since element orders divide |G|
  ExponentMatrix scaledU = snf.U;
  for (std::size_t t = 0; t < ne; ++t) {
    Int inv = ne == 0 ? Int(1) : *mod_inverse(mod_floor(d[t], G.order()), G.order());
    for (std::size_t i = 0; i < ne; ++i) scaledU.at(t, i) = inv * snf.U.at(t, i);
  }
  ExponentMatrix W = snf.V.mul(scaledU);

  auto lower = central_series(G, SeriesKind::Lower);
  unsigned s = lower.nilpotency_class;

  // stage 1: solve the abelianization over G/gamma_2
  std::vector<PcGroup::Element> x(nv, G.identity());
  {
    const PcSubgroup& gamma2 = lower.chain.size() > 1 ? lower.chain[1]
                                                      : lower.chain[0];
    PcQuotient Q{G, gamma2};
    std::vector<PcGroup::Element> b(ne);
    for (std::size_t i = 0; i < ne; ++i)
      b[i] = Q.inverse(coefficient_image(G, equations[i].lhs, coefficients));
    x = apply_transform(Q, W, b);
  }

  // stages c = 2..s: cancel the defect with central corrections from
  // gamma_c / gamma_{c+1}
  PcAssignment assign;
  for (std::size_t j = 0; j < nv; ++j) assign[vars[j]] = x[j];
  for (unsigned c = 2; c <= s; ++c) {
    const PcSubgroup& gamma_c = lower.chain[c - 1];
    const PcSubgroup& gamma_c1 = lower.chain[c];
    PcQuotient Q{G, gamma_c1};
    std::vector<PcGroup::Element> target(ne);
    for (std::size_t i = 0; i < ne; ++i) {
      auto defect = evaluate(G, equations[i].lhs, assign, coefficients);
      if (!gamma_c.count(defect))
        throw std::logic_error("lift_solve: defect escaped gamma_" +
                               std::to_string(c));
      target[i] = Q.inverse(defect);
    }
    auto z = apply_transform(Q, W, target);
    for (std::size_t j = 0; j < nv; ++j) {
      x[j] = G.mul(x[j], z[j]);
      assign[vars[j]] = x[j];
    }
  }

  for (const Equation& e : equations)
    if (!G.is_identity(evaluate(G, e.lhs, assign, coefficients)))
      throw std::logic_error("lift_solve: residual defect after final stage");
  return assign;
}

// ---------------------------------------------------------------------------
// Group files

namespace {

std::string trim_copy(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// parse a normal-form word "g1^2 g3" into an exponent vector
PcGroup::Element parse_normal_word(const std::string& text, unsigned n,
                                   const std::vector<long>& orders) {
  PcGroup::Element v(n, 0);
  WordSyntax syn;  // everything is a coefficient named g<i>
  GroupWord w = parse_word(text, syn);
  long last = -1;
  for (const Letter& l : w.letters()) {
    if (l.sym.indexed() || l.sym.name.size() < 2 || l.sym.name[0] != 'g')
      throw std::invalid_argument("relation words use generators g1..g" +
                                  std::to_string(n));
    long i = std::stol(l.sym.name.substr(1)) - 1;
    if (i < 0 || i >= static_cast<long>(n))
      throw std::invalid_argument("generator index out of range: " + l.sym.str());
    if (i <= last)
      throw std::invalid_argument(
          "relation words must be in normal form (ascending generators)");
    last = i;
    if (l.exponent < 0 || l.exponent >= orders[i])
      throw std::invalid_argument("relation exponent out of range");
    v[i] = l.exponent.get_si();
  }
  return v;
}

std::vector<std::string> statements_of(std::istream& in) {
  std::vector<std::string> stmts;
  std::string all, line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    all += line + "\n";
  }
  std::string cur;
  for (char c : all) {
    if (c == ';' || c == '\n') {
      cur = trim_copy(cur);
      if (!cur.empty()) stmts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cur = trim_copy(cur);
  if (!cur.empty()) stmts.push_back(cur);
  return stmts;
}

Symbol parse_coeff_name(const std::string& name) {
  Symbol s;
  auto us = name.find('_');
  if (us == std::string::npos) {
    s.name = name;
  } else {
    s.name = name.substr(0, us);
    s.index = std::stol(name.substr(us + 1));
  }
  return s;
}

}  // namespace

ConcreteGroupFile parse_group_file(std::istream& in) {
  auto stmts = statements_of(in);
  if (stmts.empty()) throw std::invalid_argument("empty group file");

  ConcreteGroupFile out;
  std::istringstream first(stmts[0]);
  std::string head;
  first >> head;

  if (head == "abelian") {
    std::vector<Int> orders;
    std::string tok;
    while (first >> tok) orders.emplace_back(tok);
    if (orders.empty())
      throw std::invalid_argument("abelian group needs component orders");
    out.abelian = FiniteAbelianGroup(orders);
    for (std::size_t t = 1; t < stmts.size(); ++t) {
      std::istringstream ls(stmts[t]);
      std::string kw, name;
      ls >> kw >> name;
      if (kw != "coeff" || name.empty() || name.back() != ':')
        throw std::invalid_argument("expected 'coeff <name>: <residues>': " +
                                    stmts[t]);
      name.pop_back();
      std::vector<Int> res;
      std::string rtok;
      while (ls >> rtok) res.emplace_back(rtok);
      out.ab_coeffs[parse_coeff_name(name)] = out.abelian->make(res);
    }
    return out;
  }

  if (head != "gens")
    throw std::invalid_argument("group file starts with 'gens' or 'abelian'");
  unsigned n = 0;
  first >> n;
  if (n == 0) throw std::invalid_argument("gens count must be >= 1");

  PcGroup::Presentation pres;
  std::vector<std::pair<Symbol, std::string>> coeff_words;
  pres.power_rhs.assign(n, {});
  pres.comm_rhs.assign(n, std::vector<PcGroup::Element>(n));

  for (std::size_t t = 1; t < stmts.size(); ++t) {
    std::istringstream ls(stmts[t]);
    std::string kw;
    ls >> kw;
    if (kw == "orders") {
      long r;
      while (ls >> r) pres.orders.push_back(r);
      if (pres.orders.size() != n)
        throw std::invalid_argument("orders count must match gens");
    } else if (kw == "pow") {
      std::string itok;
      ls >> itok;
      if (itok.empty() || itok.back() != ':')
        throw std::invalid_argument("expected 'pow <i>: <word>'");
      unsigned i = std::stoul(itok.substr(0, itok.size() - 1));
      if (i < 1 || i > n) throw std::invalid_argument("pow index out of range");
      std::string rest;
      std::getline(ls, rest);
      rest = trim_copy(rest);
      if (!rest.empty() && rest != "1")
        pres.power_rhs[i - 1] = parse_normal_word(rest, n, pres.orders);
    } else if (kw == "comm") {
      unsigned j = 0;
      ls >> j;
      std::string itok;
      ls >> itok;
      if (itok.empty() || itok.back() != ':')
        throw std::invalid_argument("expected 'comm <j> <i>: <word>'");
      unsigned i = std::stoul(itok.substr(0, itok.size() - 1));
      if (i < 1 || j < 1 || i > n || j > n || i >= j)
        throw std::invalid_argument("comm indices need j > i within range");
      std::string rest;
      std::getline(ls, rest);
      rest = trim_copy(rest);
      if (!rest.empty() && rest != "1")
        pres.comm_rhs[j - 1][i - 1] = parse_normal_word(rest, n, pres.orders);
    } else if (kw == "coeff") {
      std::string name;
      ls >> name;
      if (name.empty() || name.back() != ':')
        throw std::invalid_argument("expected 'coeff <name>: <word>'");
      name.pop_back();
      std::string rest;
      std::getline(ls, rest);
      coeff_words.emplace_back(parse_coeff_name(name), trim_copy(rest));
    } else {
      throw std::invalid_argument("unknown group file statement: " + stmts[t]);
    }
  }
  if (pres.orders.size() != n)
    throw std::invalid_argument("group file is missing 'orders'");

  out.pc = PcGroup::from_presentation(std::move(pres));
  for (auto& [sym, text] : coeff_words) {
    // coefficient words may be arbitrary products of generators
    WordSyntax syn;
    GroupWord w = parse_word(text, syn);
    PcAssignment none;
    PcAssignment gens;
    for (unsigned i = 0; i < n; ++i) {
      Symbol gs;
      gs.name = "g" + std::to_string(i + 1);
      gens[gs] = out.pc->generator(i);
    }
    out.pc_coeffs[sym] = evaluate(*out.pc, w, none, gens);
  }
  return out;
}

ConcreteGroupFile parse_group_text(const std::string& text) {
  std::istringstream in(text);
  return parse_group_file(in);
}

}  // namespace groupeq
