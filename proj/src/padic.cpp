#include "groupeq/padic.hpp"

#include <sstream>

namespace groupeq {

PAdicInt::PAdicInt(Int p, unsigned long precision, const Int& value)
    : p_(std::move(p)), prec_(precision) {
  if (p_ < 2 || !is_probable_prime(p_))
    throw std::invalid_argument("p must be prime");
  if (prec_ == 0) throw std::invalid_argument("precision must be >= 1");
  mod_ = int_pow(p_, prec_);
  value_ = mod_floor(value, mod_);
}

PAdicInt PAdicInt::from_integer(const Int& v, const Int& p, unsigned long N) {
  return PAdicInt(p, N, v);
}

PAdicInt PAdicInt::from_rational(const Int& num, const Int& den, const Int& p,
                                 unsigned long N) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  PAdicInt x(p, N, 0);
  auto inv = mod_inverse(mod_floor(den, x.mod_), x.mod_);
  if (!inv)
    throw std::invalid_argument("denominator not coprime to p");
  x.value_ = mod_floor(num * *inv, x.mod_);
  return x;
}

std::vector<Int> PAdicInt::digits() const {
  std::vector<Int> d(prec_);
  Int v = value_;
  for (unsigned long i = 0; i < prec_; ++i) {
    d[i] = mod_floor(v, p_);
    v = (v - d[i]) / p_;
  }
  return d;
}

std::string PAdicInt::digit_string() const {
  std::ostringstream os;
  auto d = digits();
  for (unsigned long i = 0; i < d.size(); ++i) {
    if (i) os << ' ';
    os << d[i].get_str();
  }
  return os.str();
}

void PAdicInt::check_compatible(const PAdicInt& rhs) const {
  if (p_ != rhs.p_)
    throw std::invalid_argument("p-adic prime mismatch: " + p_.get_str() +
                                " vs " + rhs.p_.get_str());
}

PAdicInt PAdicInt::add(const PAdicInt& rhs) const {
  check_compatible(rhs);
  unsigned long n = std::min(prec_, rhs.prec_);
  return PAdicInt(p_, n, value_ + rhs.value_);
}

PAdicInt PAdicInt::neg() const { return PAdicInt(p_, prec_, -value_); }

PAdicInt PAdicInt::mul(const PAdicInt& rhs) const {
  check_compatible(rhs);
  unsigned long n = std::min(prec_, rhs.prec_);
  return PAdicInt(p_, n, value_ * rhs.value_);
}

PAdicInt PAdicInt::truncated(unsigned long N) const {
  if (N > prec_) throw std::invalid_argument("cannot extend precision");
  return PAdicInt(p_, N, value_);
}

DigitRule DigitRule::constant(const Int& d) {
  DigitRule r;
  r.digit = [d](unsigned long) { return d; };
  r.declared = Declared::Periodic;
  r.declared_period = 1;
  return r;
}

DigitRule DigitRule::periodic(std::vector<Int> pattern) {
  if (pattern.empty()) throw std::invalid_argument("empty period pattern");
  DigitRule r;
  unsigned long t = pattern.size();
  r.digit = [pattern = std::move(pattern), t](unsigned long i) {
    return pattern[(i - 1) % t];
  };
  r.declared = Declared::Periodic;
  r.declared_period = t;
  return r;
}

DigitRule DigitRule::aperiodic_triangular() {
  DigitRule r;
  r.digit = [](unsigned long i) {
    // is i a triangular number k(k+1)/2?
    unsigned long k = 1, t = 1;
    while (t < i) t += ++k;
    return Int(t == i ? 1 : 0);
  };
  r.declared = Declared::Aperiodic;
  return r;
}

SeriesResult solve_series(const DigitRule& rule, const Int& p,
                          unsigned long N) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  std::vector<Int> c(N + 1);
  for (unsigned long i = 1; i <= N; ++i) {
    c[i] = rule.digit(i);
    if (c[i] < 0 || c[i] >= p)
      throw std::invalid_argument("digit out of range at index " +
                                  std::to_string(i));
  }

  Int sum = 0, pw = 1;
  for (unsigned long i = 1; i <= N; ++i) {
    sum += pw * c[i];
    pw *= p;
  }
  SeriesResult res{PAdicInt(p, N, sum), {}, true};

  // residual chain: x_{k+1} = (x_k - c_k) / p, one digit of precision lost
  // per step; verify x_k = c_k + p x_{k+1} at each surviving precision
  Int xk = sum;
  for (unsigned long k = 1; k < N; ++k) {
    Int xk1 = (xk - c[k]) / p;
    unsigned long prec = N - k;
    res.chain.emplace_back(p, prec, xk1);
    Int lhs = mod_floor(xk, int_pow(p, prec));
    Int rhs = mod_floor(c[k] + p * xk1, int_pow(p, prec));
    if (lhs != rhs) res.recurrence_verified = false;
    xk = xk1;
  }
  return res;
}

PeriodicityVerdict periodicity_verdict(const PAdicInt& x,
                                       unsigned long max_period,
                                       unsigned long min_repeats) {
  unsigned long N = x.precision();
  if (max_period == 0 || min_repeats == 0 || max_period * min_repeats > N)
    throw std::invalid_argument(
        "periodicity scan requires max_period * min_repeats <= precision");

  auto d = x.digits();
  auto tail_matches = [&](unsigned long t, unsigned long s) {
    for (unsigned long i = s; i + t < N; ++i)
      if (d[i] != d[i + t]) return false;
    return true;
  };

  // Uniform preperiod budget: every candidate period must repeat from a
  // start that leaves at least max_period * min_repeats trailing digits.
  // Without the budget, any trailing run of equal digits fakes a period.
  unsigned long budget = N - max_period * min_repeats;
  for (unsigned long t = 1; t <= max_period; ++t) {
    for (unsigned long s = 0; s <= budget; ++s) {
      if (tail_matches(t, s)) {
        PeriodicityVerdict v;
        v.kind = PeriodicityVerdict::Kind::Periodic;
        v.period = t;
        v.preperiod = s;
        v.limit = max_period;
        v.text = "digits are periodic with period " + std::to_string(t) +
                 " and preperiod " + std::to_string(s) + " within the first " +
                 std::to_string(N) + " digits (truncation-relative claim)";
        return v;
      }
    }
  }

  PeriodicityVerdict v;
  v.limit = max_period;
  if (min_repeats < 2) {
    // a scan that accepts a single unrepeated block cannot refute anything
    v.kind = PeriodicityVerdict::Kind::Inconclusive;
    v.text = "no period <= " + std::to_string(max_period) +
             " found, but min_repeats < 2 is too weak to refute periodicity "
             "(truncation-relative claim)";
  } else {
    v.kind = PeriodicityVerdict::Kind::NotPeriodicWithin;
    v.text = "no eventual period <= " + std::to_string(max_period) +
             " with preperiod <= " + std::to_string(budget) + " fits the first " +
             std::to_string(N) +
             " digits; longer periods and later digits stay open "
             "(truncation-relative claim)";
  }
  return v;
}

std::optional<std::pair<Int, Int>> rational_reconstruct(const PAdicInt& x,
                                                        const Int& bound) {
  const Int& M = x.modulus();
  if (bound < 1 || 2 * bound * bound > M)
    throw std::invalid_argument(
        "reconstruction window violated: need 2*bound^2 <= p^N");

  // half-extended Euclid on (M, r): remainders r_i = s_i*M + t_i*r
  Int r0 = M, r1 = mod_floor(x.value(), M);
  Int t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (r1 == 0 && t1 == 0) return std::nullopt;
  Int a = r1, b = t1;
  if (b < 0) { a = -a; b = -b; }
  if (b == 0 || b > bound || abs(a) > bound) return std::nullopt;
  if (gcd(b, x.prime()) != 1) return std::nullopt;
  if (gcd(abs(a), b) != 1) return std::nullopt;
  if (mod_floor(a - b * x.value(), M) != 0) return std::nullopt;
  return std::make_pair(a, b);
}

}  // namespace groupeq
