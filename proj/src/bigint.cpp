#include "groupeq/bigint.hpp"

#include <algorithm>

namespace groupeq {

std::optional<Int> mod_inverse(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    return std::nullopt;
  return r;
}

unsigned long valuation(const Int& n, const Int& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero is undefined");
  Int r;
  return mpz_remove(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

// Pollard rho (Brent variant); n odd composite, not a prime power of 2.
Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  Int x = 2, y = 2, d = 1, c = 1;
  while (true) {
    x = 2;
    y = 2;
    d = 1;
    while (d == 1) {
      x = mod_floor(x * x + c, n);
      y = mod_floor(y * y + c, n);
      y = mod_floor(y * y + c, n);
      d = gcd(x - y == 0 ? n : abs(x - y), n);
    }
    if (d != n) return d;
    c += 1;  // cycle degenerated; retry with a different increment
  }
}

void factor_into(Int n, std::vector<Int>& out) {
  if (n <= 1) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  // small trial division first
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L}) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
      factor_into(n, out);
      return;
    }
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  while (n % d == 0) n /= d;
  factor_into(n, out);
}

}  // namespace

std::vector<Int> prime_factors(Int n) {
  if (n == 0) throw std::invalid_argument("prime_factors(0)");
  if (n < 0) n = -n;
  std::vector<Int> out;
  factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Int nth_prime(unsigned long n) {
  if (n == 0) throw std::invalid_argument("nth_prime is 1-based");
  Int p = 2;
  for (unsigned long i = 1; i < n; ++i)
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  return p;
}

std::vector<Int> first_primes(unsigned long count) {
  std::vector<Int> out;
  Int p = 2;
  for (unsigned long i = 0; i < count; ++i) {
    out.push_back(p);
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
  return out;
}

}  // namespace groupeq
