#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace groupeq {

// Exact integers everywhere; witness systems produce entries like 2^6143.
using Int = mpz_class;

// Thrown when an exhaustive search or enumeration would exceed its budget.
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

inline Int int_pow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Representative of a mod m in [0, m), m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::optional<Int> mod_inverse(const Int& a, const Int& m);

// Largest e with p^e | n; n must be nonzero.
unsigned long valuation(const Int& n, const Int& p);

bool is_probable_prime(const Int& n);

// Distinct prime factors of |n|, sorted ascending; n must be nonzero.
std::vector<Int> prime_factors(Int n);

// 1-based: nth_prime(1) = 2.
Int nth_prime(unsigned long n);

std::vector<Int> first_primes(unsigned long count);

}  // namespace groupeq
