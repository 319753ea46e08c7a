#include "groupeq/abelian.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <sstream>

namespace groupeq {

// ---------------------------------------------------------------------------
// FiniteAbelianGroup

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> orders)
    : orders_(std::move(orders)), size_(1) {
  for (const Int& m : orders_) {
    if (m < 1) throw std::invalid_argument("component orders must be >= 1");
    size_ *= m;
  }
}

FiniteAbelianGroup::Element FiniteAbelianGroup::generator(std::size_t k) const {
  Element e = identity();
  e.at(k) = orders_[k] > 1 ? 1 : 0;
  return e;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::make(
    std::vector<Int> residues) const {
  if (residues.size() != orders_.size())
    throw std::invalid_argument("component count mismatch");
  for (std::size_t k = 0; k < residues.size(); ++k)
    residues[k] = mod_floor(residues[k], orders_[k]);
  return residues;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::mul(const Element& a,
                                                    const Element& b) const {
  Element r(orders_.size());
  for (std::size_t k = 0; k < orders_.size(); ++k)
    r[k] = mod_floor(a[k] + b[k], orders_[k]);
  return r;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::inverse(const Element& a) const {
  Element r(orders_.size());
  for (std::size_t k = 0; k < orders_.size(); ++k)
    r[k] = mod_floor(-a[k], orders_[k]);
  return r;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::power(const Element& a,
                                                      const Int& e) const {
  Element r(orders_.size());
  for (std::size_t k = 0; k < orders_.size(); ++k)
    r[k] = mod_floor(a[k] * e, orders_[k]);
  return r;
}

Int FiniteAbelianGroup::element_order(const Element& a) const {
  Int ord = 1;
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    if (a[k] == 0) continue;
    ord = lcm(ord, orders_[k] / gcd(a[k], orders_[k]));
  }
  return ord;
}

bool FiniteAbelianGroup::is_identity(const Element& a) const {
  return std::all_of(a.begin(), a.end(), [](const Int& r) { return r == 0; });
}

std::vector<FiniteAbelianGroup::Element> FiniteAbelianGroup::elements(
    unsigned long budget) const {
  if (size_ > budget)
    throw budget_error("group of order " + size_.get_str() +
                       " too large to enumerate");
  std::vector<Element> out;
  Element cur = identity();
  out.push_back(cur);
  while (true) {
    std::size_t k = orders_.size();
    while (k > 0) {
      --k;
      cur[k] += 1;
      if (cur[k] < orders_[k]) break;
      cur[k] = 0;
      if (k == 0) return out;
    }
    if (orders_.empty()) return out;
    out.push_back(cur);
  }
}

std::set<FiniteAbelianGroup::Element> FiniteAbelianGroup::span(
    const std::vector<Element>& gens, unsigned long budget) const {
  std::set<Element> seen{identity()};
  std::deque<Element> work{identity()};
  while (!work.empty()) {
    Element cur = work.front();
    work.pop_front();
    for (const Element& g : gens) {
      Element next = mul(cur, g);
      if (seen.insert(next).second) {
        if (seen.size() > budget) throw budget_error("subgroup span too large");
        work.push_back(next);
      }
    }
  }
  return seen;
}

std::optional<unsigned long> FiniteAbelianGroup::height_p(const Element& a,
                                                          const Int& p) const {
  for (const Int& m : orders_)
    if (m > 1) {
      Int q = m;
      while (q % p == 0) q /= p;
      if (q != 1)
        throw std::invalid_argument("height_p needs a p-group");
    }
  std::optional<unsigned long> h;  // nullopt = infinite (identity only)
  for (std::size_t k = 0; k < orders_.size(); ++k) {
    if (a[k] == 0) continue;
    unsigned long v = valuation(a[k], p);
    if (!h || v < *h) h = v;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Linear solving

namespace {

// b'_i = prod_j b_j^{W[i][j]} over the group
std::vector<FiniteAbelianGroup::Element> apply_matrix(
    const FiniteAbelianGroup& A, const ExponentMatrix& W,
    const std::vector<FiniteAbelianGroup::Element>& b) {
  std::vector<FiniteAbelianGroup::Element> out(W.rows(), A.identity());
  for (std::size_t i = 0; i < W.rows(); ++i)
    for (std::size_t j = 0; j < W.cols(); ++j)
      if (W.at(i, j) != 0)
        out[i] = A.mul(out[i], A.power(b[j], W.at(i, j)));
  return out;
}

}  // namespace

AbelianSolutionSet solve_over_finite_abelian(
    const std::vector<Equation>& equations, const FiniteAbelianGroup& A,
    const std::map<Symbol, FiniteAbelianGroup::Element>& coefficients) {
  AbelianSolutionSet out;

  std::set<Variable> varset;
  for (const Equation& e : equations) {
    auto vs = variables_of(e.lhs);
    varset.insert(vs.begin(), vs.end());
  }
  out.variables.assign(varset.begin(), varset.end());
  std::size_t nv = out.variables.size(), ne = equations.size();

  ExponentMatrix M(ne, nv);
  std::vector<FiniteAbelianGroup::Element> rhs(ne, A.identity());
  for (std::size_t i = 0; i < ne; ++i) {
    auto sums = exponent_sums(equations[i].lhs);
    for (std::size_t j = 0; j < nv; ++j) {
      auto it = sums.find(out.variables[j]);
      if (it != sums.end()) M.at(i, j) = it->second;
    }
    // coefficient part: being abelian, the letter order is irrelevant
    FiniteAbelianGroup::Element c = A.identity();
    for (const Letter& l : equations[i].lhs.letters()) {
      if (l.is_variable) continue;
      auto it = coefficients.find(l.sym);
      if (it == coefficients.end())
        throw std::invalid_argument("coefficient not resolvable: " +
                                    l.sym.str());
      c = A.mul(c, A.power(it->second, l.exponent));
    }
    rhs[i] = A.inverse(c);  // M x = -c
  }

  auto snf = smith_normal_form(M);
  auto d = snf.divisors();
  std::size_t r = 0;
  while (r < d.size() && d[r] != 0) ++r;

  auto bprime = apply_matrix(A, snf.U, rhs);

  // particular solution in y-coordinates
  std::vector<FiniteAbelianGroup::Element> y(nv, A.identity());
  for (std::size_t i = 0; i < ne; ++i) {
    if (i < r) {
      for (std::size_t k = 0; k < A.components(); ++k) {
        const Int& m = A.orders()[k];
        if (m == 1) continue;
        Int g = gcd(mod_floor(d[i], m), m);  // gcd(0, m) = m
        if (bprime[i][k] % g != 0) {
          out.empty = true;
          out.obstruction = "no solution: row " + std::to_string(i + 1) +
                            " needs divisibility by " + g.get_str() +
                            " in Z/" + m.get_str();
          return out;
        }
        Int m2 = m / g;
        Int inv = m2 == 1 ? 0 : *mod_inverse(mod_floor(d[i] / g, m2), m2);
        y[i][k] = mod_floor((bprime[i][k] / g) * inv, m);
      }
    } else {
      // zero row of D: the transformed right-hand side must vanish
      if (!A.is_identity(bprime[i])) {
        out.empty = true;
        out.obstruction = "no solution: dependent row " + std::to_string(i + 1) +
                          " has nonzero right-hand side";
        return out;
      }
    }
  }

  out.empty = false;
  out.particular = apply_matrix(A, snf.V, y);  // x = V y

  // homogeneous generators in y-coordinates, mapped through V
  for (std::size_t slot = 0; slot < nv; ++slot) {
    const Int di = slot < d.size() ? d[slot] : Int(0);
    for (std::size_t k = 0; k < A.components(); ++k) {
      const Int& m = A.orders()[k];
      if (m == 1) continue;
      Int step;
      if (slot < r) {
        Int g = gcd(mod_floor(di, m), m);
        step = m / g;             // annihilator of d_i in Z/m
        if (step == m) continue;  // only the identity
      } else {
        step = 1;  // free slot: all of Z/m
      }
      std::vector<FiniteAbelianGroup::Element> ygen(nv, A.identity());
      ygen[slot][k] = step;
      auto xgen = apply_matrix(A, snf.V, ygen);
      bool trivial = std::all_of(xgen.begin(), xgen.end(),
                                 [&](const auto& e) { return A.is_identity(e); });
      if (!trivial) out.hom_generators.push_back(std::move(xgen));
    }
  }
  return out;
}

std::vector<FiniteAbelianGroup::Element> variable_coset(
    const AbelianSolutionSet& sols, const FiniteAbelianGroup& A,
    const Variable& v, unsigned long budget) {
  if (sols.empty) throw std::invalid_argument("empty solution set");
  auto it = std::find(sols.variables.begin(), sols.variables.end(), v);
  if (it == sols.variables.end())
    throw std::invalid_argument("variable " + v.str() + " not in system");
  std::size_t j = it - sols.variables.begin();

  std::vector<FiniteAbelianGroup::Element> gens;
  for (const auto& gen : sols.hom_generators)
    if (!A.is_identity(gen[j])) gens.push_back(gen[j]);
  auto sub = A.span(gens, budget);

  std::vector<FiniteAbelianGroup::Element> coset;
  coset.reserve(sub.size());
  for (const auto& s : sub) coset.push_back(A.mul(sols.particular[j], s));
  return coset;
}

Int min_order_of_variable(const AbelianSolutionSet& sols,
                          const FiniteAbelianGroup& A, const Variable& v,
                          unsigned long budget) {
  auto coset = variable_coset(sols, A, v, budget);
  Int best = -1;
  for (const auto& e : coset) {
    Int ord = A.element_order(e);
    if (best < 0 || ord < best) best = ord;
  }
  return best;
}

std::vector<std::map<Symbol, FiniteAbelianGroup::Element>>
brute_force_solve_abelian(
    const std::vector<Equation>& equations, const FiniteAbelianGroup& A,
    const std::map<Symbol, FiniteAbelianGroup::Element>& coefficients,
    unsigned long budget) {
  std::set<Variable> varset;
  for (const Equation& e : equations) {
    auto vs = variables_of(e.lhs);
    varset.insert(vs.begin(), vs.end());
  }
  std::vector<Variable> vars(varset.begin(), varset.end());

  Int total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= A.size();
  if (total > budget)
    throw budget_error("brute force over " + total.get_str() + " assignments");

  auto all = A.elements(budget);
  std::vector<std::size_t> idx(vars.size(), 0);
  std::vector<std::map<Symbol, FiniteAbelianGroup::Element>> found;
  while (true) {
    std::map<Symbol, FiniteAbelianGroup::Element> assign;
    for (std::size_t i = 0; i < vars.size(); ++i) assign[vars[i]] = all[idx[i]];
    bool ok = true;
    for (const Equation& e : equations) {
      if (!A.is_identity(evaluate(A, e.lhs, assign, coefficients))) {
        ok = false;
        break;
      }
    }
    if (ok) found.push_back(std::move(assign));

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
    if (vars.empty() || done) break;
  }
  return found;
}

// ---------------------------------------------------------------------------
// Descriptors

CyclicRule CyclicRule::of_list(std::vector<unsigned long> ks) {
  for (unsigned long k : ks)
    if (k < 1) throw std::invalid_argument("cyclic exponents must be >= 1");
  CyclicRule r;
  r.kind = Kind::List;
  r.list = std::move(ks);
  return r;
}

CyclicRule CyclicRule::arithmetic(unsigned long a, unsigned long b) {
  if (a + b < 1) throw std::invalid_argument("k_1 = a + b must be >= 1");
  CyclicRule r;
  r.kind = Kind::Arithmetic;
  r.a = a;
  r.b = b;
  return r;
}

CyclicRule CyclicRule::doubling(unsigned long k1, long c) {
  if (k1 < 1) throw std::invalid_argument("k_1 must be >= 1");
  if (2 * static_cast<long>(k1) + c < static_cast<long>(k1))
    throw std::invalid_argument("doubling rule must be non-decreasing");
  CyclicRule r;
  r.kind = Kind::Doubling;
  r.k1 = k1;
  r.c = c;
  return r;
}

bool CyclicRule::nontrivial() const {
  return kind != Kind::List || !list.empty();
}

bool CyclicRule::bounded() const {
  switch (kind) {
    case Kind::List: return true;
    case Kind::Arithmetic: return a == 0;
    case Kind::Doubling: return 2 * static_cast<long>(k1) + c == static_cast<long>(k1);
  }
  return true;
}

unsigned long CyclicRule::max_exponent() const {
  if (!bounded()) throw std::logic_error("unbounded rule has no max exponent");
  switch (kind) {
    case Kind::List: return list.empty() ? 0 : *std::max_element(list.begin(), list.end());
    case Kind::Arithmetic: return b;  // a == 0
    case Kind::Doubling: return k1;   // constant
  }
  return 0;
}

unsigned long CyclicRule::k(unsigned long i) const {
  if (i < 1) throw std::out_of_range("summand indices are 1-based");
  switch (kind) {
    case Kind::List:
      if (i > list.size()) throw std::out_of_range("finite rule exhausted");
      return list[i - 1];
    case Kind::Arithmetic:
      return a * i + b;
    case Kind::Doubling: {
      long v = static_cast<long>(k1);
      for (unsigned long t = 1; t < i; ++t) {
        if (v > (1L << 40)) throw budget_error("doubling rule exponent overflow");
        v = 2 * v + c;
      }
      if (v < 1) throw std::logic_error("doubling rule emitted k < 1");
      return static_cast<unsigned long>(v);
    }
  }
  throw std::logic_error("unreachable");
}

std::string CyclicRule::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::List: {
      os << '[';
      for (std::size_t i = 0; i < list.size(); ++i) os << (i ? "," : "") << list[i];
      os << ']';
      break;
    }
    case Kind::Arithmetic:
      os << "k_i = " << a << "*i+" << b << " for i>=1";
      break;
    case Kind::Doubling:
      os << "k_1 = " << k1 << ", k_{i+1} = 2*k_i" << (c >= 0 ? "+" : "") << c;
      break;
  }
  return os.str();
}

bool PComponentDescriptor::has_cyclic_part() const {
  return std::any_of(cyclic.begin(), cyclic.end(),
                     [](const CyclicRule& r) { return r.nontrivial(); });
}

bool PComponentDescriptor::cyclic_bounded() const {
  return std::all_of(cyclic.begin(), cyclic.end(),
                     [](const CyclicRule& r) { return r.bounded(); });
}

unsigned long PComponentDescriptor::cyclic_period_exponent() const {
  unsigned long m = 0;
  for (const CyclicRule& r : cyclic) m = std::max(m, r.max_exponent());
  return m;
}

std::optional<unsigned long> PComponentDescriptor::summand_exponent(
    std::size_t j) const {
  std::size_t seen = 0;
  for (const CyclicRule& r : cyclic) {
    if (r.infinite()) return r.k(j - seen + 1);
    if (j < seen + r.list.size()) return r.list[j - seen];
    seen += r.list.size();
  }
  return std::nullopt;
}

void PComponentDescriptor::validate() const {
  if (!is_probable_prime(p))
    throw std::invalid_argument("component prime expected, got " + p.get_str());
  for (std::size_t i = 0; i + 1 < cyclic.size(); ++i)
    if (cyclic[i].infinite())
      throw std::invalid_argument(
          "only the last cyclic rule of a component may be infinite");
}

void PeriodicAbelianDescriptor::validate() const {
  std::set<Int> primes;
  for (const auto& c : components) {
    c.validate();
    if (!primes.insert(c.p).second)
      throw std::invalid_argument("two components share prime " + c.p.get_str());
  }
}

const PComponentDescriptor* PeriodicAbelianDescriptor::find_component(
    const Int& p) const {
  for (const auto& c : components)
    if (c.p == p) return &c;
  return nullptr;
}

std::optional<PComponentDescriptor> PeriodicAbelianDescriptor::component_at(
    const Int& p) const {
  if (const auto* c = find_component(p)) return *c;
  if (every_prime && is_probable_prime(p)) {
    PComponentDescriptor c;
    c.p = p;
    if (!every_prime_cyclic.empty())
      c.cyclic.push_back(CyclicRule::of_list(every_prime_cyclic));
    c.pruefer_count = every_prime_pruefer;
    c.pruefer_omega = every_prime_pruefer_omega;
    return c;
  }
  return std::nullopt;
}

HeightValue height(const DescriptorElement& g, const PComponentDescriptor& comp) {
  if (g.is_identity()) return HeightValue::inf();
  std::optional<unsigned long> best;  // nullopt = infinite so far
  for (const auto& e : g.cyclic) {
    auto k = comp.summand_exponent(e.summand);
    if (!k) throw std::invalid_argument("cyclic summand index out of range");
    Int r = mod_floor(e.residue, int_pow(comp.p, *k));
    if (r == 0) continue;
    unsigned long v = valuation(r, comp.p);
    if (!best || v < *best) best = v;
  }
  // Prufer entries are divisible: they never lower the minimum
  return best ? HeightValue::of(*best) : HeightValue::inf();
}

HeightValue height(const DescriptorElement& g, const Int& p,
                   const PeriodicAbelianDescriptor& G) {
  auto comp = G.component_at(p);
  if (!comp)
    throw std::invalid_argument("no p-component at p = " + p.get_str());
  return height(g, *comp);
}

PComponentDescriptor infinite_height_subgroup(
    const PeriodicAbelianDescriptor& G, const Int& p) {
  auto comp = G.component_at(p);
  if (!comp)
    throw std::invalid_argument("no p-component at p = " + p.get_str());
  PComponentDescriptor out;
  out.p = p;
  out.pruefer_count = comp->pruefer_count;
  out.pruefer_omega = comp->pruefer_omega;
  return out;  // direct sums of cyclic p-groups are separable
}

PComponentDescriptor first_ulm_factor(const PeriodicAbelianDescriptor& G,
                                      const Int& p) {
  auto comp = G.component_at(p);
  if (!comp)
    throw std::invalid_argument("no p-component at p = " + p.get_str());
  PComponentDescriptor out;
  out.p = p;
  out.cyclic = comp->cyclic;
  return out;
}

std::string CriterionVerdict::str() const {
  std::string s = closed ? "CLOSED" : "NOT_CLOSED";
  if (!detail.empty()) s += " (" + detail + ")";
  return s;
}

CriterionVerdict theorem1_criterion(const PeriodicAbelianDescriptor& G) {
  G.validate();
  CriterionVerdict v;
  if (G.every_prime && !G.every_prime_cyclic.empty()) {
    v.closed = false;
    v.reason = CriterionVerdict::Reason::InfinitelyManyNontrivialUlmFactors;
    v.detail = "infinitely many nontrivial first Ulm factors: one for every prime";
    return v;
  }
  for (const auto& c : G.components) {
    if (c.has_cyclic_part() && !c.cyclic_bounded()) {
      v.closed = false;
      v.reason = CriterionVerdict::Reason::UnboundedUlmFactor;
      v.detail = "unbounded first Ulm factor at p = " + c.p.get_str();
      return v;
    }
  }
  v.closed = true;
  v.detail = "finitely many nontrivial first Ulm factors, all of bounded period";
  return v;
}

CriterionVerdict abelian_reduced_criterion(const PeriodicAbelianDescriptor& A) {
  A.validate();
  CriterionVerdict v;
  if (A.every_prime && !A.every_prime_cyclic.empty()) {
    v.closed = false;
    v.reason = CriterionVerdict::Reason::InfinitelyManyReducedComponents;
    v.detail = "reduced part unbounded: nontrivial cyclic summands at every prime";
    return v;
  }
  for (const auto& c : A.components) {
    if (c.has_cyclic_part() && !c.cyclic_bounded()) {
      v.closed = false;
      v.reason = CriterionVerdict::Reason::UnboundedReducedPart;
      v.detail = "reduced part unbounded at p = " + c.p.get_str();
      return v;
    }
  }
  v.closed = true;
  v.detail = "reduced part has bounded period";
  return v;
}

CriterionVerdict theorem2_criterion(bool divisible) {
  CriterionVerdict v;
  v.closed = divisible;
  if (divisible) {
    v.detail = "divisible torsion-free group";
  } else {
    v.reason = CriterionVerdict::Reason::NotDivisible;
    v.detail = "not divisible";
  }
  return v;
}

// ---------------------------------------------------------------------------
// Descriptor file parsing

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string remove_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

std::vector<unsigned long> parse_exponent_list(const std::string& text) {
  // "[1,1,3]"
  std::string t = remove_spaces(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw std::invalid_argument("expected exponent list [..]: " + text);
  std::vector<unsigned long> out;
  std::string cur;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] == ',') {
      out.push_back(std::stoul(cur));
      cur.clear();
    } else {
      cur += t[i];
    }
  }
  if (!cur.empty()) out.push_back(std::stoul(cur));
  return out;
}

CyclicRule parse_cyclic_clause(const std::string& text) {
  std::string t = strip(text);
  if (!t.empty() && t.front() == '[') return CyclicRule::of_list(parse_exponent_list(t));
  std::string c = remove_spaces(t);
  // "k_i=a*i+b fori>=1"
  if (c.rfind("k_i=", 0) == 0) {
    auto fore = c.find("fori>=1");
    if (fore == std::string::npos)
      throw std::invalid_argument("arithmetic rule needs 'for i>=1': " + text);
    std::string body = c.substr(4, fore - 4);
    // accept a*i+b, i+b, a*i, i, b
    unsigned long a = 0, b = 0;
    auto istar = body.find("*i");
    auto iplain = body.find('i');
    if (istar != std::string::npos) {
      a = std::stoul(body.substr(0, istar));
      std::string rest = body.substr(istar + 2);
      if (!rest.empty()) {
        if (rest[0] != '+') throw std::invalid_argument("bad arithmetic rule: " + text);
        b = std::stoul(rest.substr(1));
      }
    } else if (iplain != std::string::npos) {
      if (iplain != 0) throw std::invalid_argument("bad arithmetic rule: " + text);
      a = 1;
      std::string rest = body.substr(1);
      if (!rest.empty()) {
        if (rest[0] != '+') throw std::invalid_argument("bad arithmetic rule: " + text);
        b = std::stoul(rest.substr(1));
      }
    } else {
      b = std::stoul(body);
    }
    return CyclicRule::arithmetic(a, b);
  }
  // "k_1=v,k_{i+1}=2*k_i+c"
  if (c.rfind("k_1=", 0) == 0) {
    auto comma = c.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("doubling rule needs both clauses: " + text);
    unsigned long k1 = std::stoul(c.substr(4, comma - 4));
    std::string second = c.substr(comma + 1);
    const std::string head = "k_{i+1}=2*k_i";
    if (second.rfind(head, 0) != 0)
      throw std::invalid_argument("doubling rule must read k_{i+1} = 2*k_i + c: " + text);
    long add = 0;
    std::string rest = second.substr(head.size());
    if (!rest.empty()) add = std::stol(rest);
    return CyclicRule::doubling(k1, add);
  }
  throw std::invalid_argument("unrecognized cyclic clause: " + text);
}

}  // namespace

PeriodicAbelianDescriptor parse_descriptor_file(std::istream& in) {
  PeriodicAbelianDescriptor G;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = strip(line);
    if (line.empty()) continue;

    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head != "component")
      throw std::invalid_argument("descriptor lines start with 'component': " + line);

    std::string target;
    ls >> target;
    bool every = (target == "every-prime");
    Int p = 0;
    if (!every) {
      if (target.rfind("p=", 0) != 0)
        throw std::invalid_argument("expected p=<prime> or every-prime: " + line);
      p = Int(target.substr(2));
      if (!is_probable_prime(p))
        throw std::invalid_argument("not a prime: " + target.substr(2));
    }

    std::string kind;
    ls >> kind;
    std::string rest;
    std::getline(ls, rest);
    rest = strip(rest);

    PComponentDescriptor* comp = nullptr;
    if (!every) {
      for (auto& c : G.components)
        if (c.p == p) comp = &c;
      if (!comp) {
        G.components.push_back({});
        comp = &G.components.back();
        comp->p = p;
      }
    }

    if (kind == "cyclic") {
      if (every) {
        G.every_prime = true;
        auto rule = parse_cyclic_clause(rest);
        if (rule.kind != CyclicRule::Kind::List)
          throw std::invalid_argument(
              "every-prime components use finite exponent lists only");
        G.every_prime_cyclic = rule.list;
      } else {
        comp->cyclic.push_back(parse_cyclic_clause(rest));
      }
    } else if (kind == "pruefer") {
      std::string c = remove_spaces(rest);
      if (c.rfind("count=", 0) != 0)
        throw std::invalid_argument("pruefer clause needs count=<n|omega>: " + line);
      std::string cnt = c.substr(6);
      if (every) {
        G.every_prime = true;
        if (cnt == "omega") G.every_prime_pruefer_omega = true;
        else G.every_prime_pruefer = std::stoul(cnt);
      } else if (cnt == "omega") {
        comp->pruefer_omega = true;
      } else {
        comp->pruefer_count = std::stoul(cnt);
      }
    } else {
      throw std::invalid_argument("component clause must be cyclic or pruefer: " + line);
    }
  }
  G.validate();
  return G;
}

PeriodicAbelianDescriptor parse_descriptor_text(const std::string& text) {
  std::istringstream in(text);
  return parse_descriptor_file(in);
}

}  // namespace groupeq
