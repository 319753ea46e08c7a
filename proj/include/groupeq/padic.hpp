#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupeq/bigint.hpp"

namespace groupeq {

// Integer p-adic number truncated to N base-p digits. Mixed-precision
// operations align to the smaller precision; mixed primes are an error.
class PAdicInt {
 public:
  PAdicInt(Int p, unsigned long precision, const Int& value);
  static PAdicInt from_integer(const Int& v, const Int& p, unsigned long N);
  // den must be coprime to p
  static PAdicInt from_rational(const Int& num, const Int& den, const Int& p,
                                unsigned long N);

  const Int& prime() const { return p_; }
  unsigned long precision() const { return prec_; }
  const Int& value() const { return value_; }  // in [0, p^N)
  const Int& modulus() const { return mod_; }  // p^N
  std::vector<Int> digits() const;             // N digits, least significant first
  std::string digit_string() const;            // "1 0 1 0 0 ..." LSB first

  PAdicInt add(const PAdicInt& rhs) const;
  PAdicInt neg() const;
  PAdicInt mul(const PAdicInt& rhs) const;
  PAdicInt truncated(unsigned long N) const;  // N <= precision

  bool operator==(const PAdicInt& rhs) const {
    return p_ == rhs.p_ && prec_ == rhs.prec_ && value_ == rhs.value_;
  }

 private:
  Int p_;
  unsigned long prec_;
  Int mod_;
  Int value_;

  void check_compatible(const PAdicInt& rhs) const;
};

// Digit sequence c_1, c_2, ... with each c_i in [0, p).
struct DigitRule {
  enum class Declared { Periodic, Aperiodic, Unknown };

  std::function<Int(unsigned long)> digit;  // 1-based
  Declared declared = Declared::Unknown;
  unsigned long declared_period = 0;

  static DigitRule constant(const Int& d);
  static DigitRule periodic(std::vector<Int> pattern);
  // 1 at every triangular position 1, 3, 6, 10, ...; 0 elsewhere. The gap
  // lengths grow strictly, so the sequence is not eventually periodic.
  static DigitRule aperiodic_triangular();
};

struct SeriesResult {
  PAdicInt x1;                  // sum p^{i-1} c_i truncated to N digits
  std::vector<PAdicInt> chain;  // x_2, x_3, ... at decreasing precision
  bool recurrence_verified;     // x_k = c_k + p x_{k+1} at every checked k
};

// Solve the bidiagonal chain x_k - p x_{k+1} = c_k at precision N.
SeriesResult solve_series(const DigitRule& rule, const Int& p, unsigned long N);

struct PeriodicityVerdict {
  enum class Kind { Periodic, NotPeriodicWithin, Inconclusive };
  Kind kind;
  unsigned long period = 0;     // for Periodic
  unsigned long preperiod = 0;  // for Periodic
  unsigned long limit = 0;      // searched period bound
  std::string text;             // always truncation-relative wording
};

// Scans for eventual periodicity of the digit vector. A Periodic verdict
// requires at least min_repeats full periods inside the precision window;
// NotPeriodicWithin(L) means no period <= L fits anywhere it could be
// confirmed. All verdicts are claims about the truncated digits only.
PeriodicityVerdict periodicity_verdict(const PAdicInt& x,
                                       unsigned long max_period,
                                       unsigned long min_repeats);

// Half-extended Euclid reconstruction of a/b with |a| <= bound,
// 0 < b <= bound, gcd(b, p) = 1, a = b*x mod p^N. Sound when
// bound^2 <= p^N / 2 (enforced).
std::optional<std::pair<Int, Int>> rational_reconstruct(const PAdicInt& x,
                                                        const Int& bound);

}  // namespace groupeq
