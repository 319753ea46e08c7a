#include <random>

#include "doctest.h"
#include "groupeq/padic.hpp"
#include "oracles.hpp"

using namespace groupeq;

TEST_CASE("integer and rational embeddings") {
  auto minus_one = PAdicInt::from_integer(-1, 2, 8);
  CHECK(minus_one.digit_string() == "1 1 1 1 1 1 1 1");
  CHECK(minus_one.value() == 255);  // -1 mod 2^8

  auto seven = PAdicInt::from_integer(7, 5, 6);
  CHECK(seven.digits()[0] == 2);
  CHECK(seven.digits()[1] == 1);

  auto third = PAdicInt::from_rational(1, 3, 2, 4);
  CHECK(third.value() == 11);  // 3 * 11 = 33 = 1 mod 16
  CHECK(third.digit_string() == "1 1 0 1");

  CHECK_THROWS_AS(PAdicInt::from_rational(1, 2, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(PAdicInt::from_integer(1, 4, 4), std::invalid_argument);
}

TEST_CASE("arithmetic: ring axioms mod p^N") {
  std::mt19937 rng(314159);
  for (long p : {2L, 3L, 5L}) {
    std::uniform_int_distribution<long> val(-10000, 10000);
    for (int t = 0; t < 100; ++t) {
      unsigned long N = 12;
      PAdicInt a = PAdicInt::from_integer(val(rng), p, N);
      PAdicInt b = PAdicInt::from_integer(val(rng), p, N);
      PAdicInt c = PAdicInt::from_integer(val(rng), p, N);
      CHECK(a.add(b) == b.add(a));
      CHECK(a.add(b).add(c) == a.add(b.add(c)));
      CHECK(a.mul(b) == b.mul(a));
      CHECK(a.mul(b).mul(c) == a.mul(b.mul(c)));
      CHECK(a.mul(b.add(c)) == a.mul(b).add(a.mul(c)));
      CHECK(a.add(a.neg()).value() == 0);
      CHECK(a.add(PAdicInt::from_integer(0, p, N)) == a);
    }
  }
}

TEST_CASE("mixed precision aligns to the minimum; mixed primes are an error") {
  auto a = PAdicInt::from_integer(100, 2, 10);
  auto b = PAdicInt::from_integer(3, 2, 6);
  CHECK(a.add(b).precision() == 6);
  CHECK(a.mul(b).precision() == 6);
  auto c = PAdicInt::from_integer(3, 3, 6);
  CHECK_THROWS_AS(a.add(c), std::invalid_argument);
}

TEST_CASE("solve_series: constant digits 1 give -1") {
  for (unsigned long N : {4ul, 8ul, 20ul}) {
    auto res = solve_series(DigitRule::constant(1), 2, N);
    CHECK(res.recurrence_verified);
    // oracle: x + 1 = 0 mod 2^N
    CHECK(mod_floor(res.x1.value() + 1, res.x1.modulus()) == 0);
  }
  auto zero = solve_series(DigitRule::constant(0), 3, 10);
  CHECK(zero.x1.value() == 0);
}

TEST_CASE("solve_series: the aperiodic pattern") {
  auto res = solve_series(DigitRule::aperiodic_triangular(), 2, 12);
  CHECK(res.x1.digit_string() == "1 0 1 0 0 1 0 0 0 1 0 0");
  CHECK(res.recurrence_verified);
}

TEST_CASE("solve_series residual chain satisfies x_k = c_k + p x_{k+1}") {
  std::mt19937 rng(2718);
  for (long p : {2L, 3L, 5L}) {
    std::uniform_int_distribution<long> digit(0, p - 1);
    std::vector<Int> digits(40);
    for (auto& d : digits) d = digit(rng);
    DigitRule rule;
    rule.digit = [digits](unsigned long i) { return digits[(i - 1) % 40]; };
    unsigned long N = 32;
    auto res = solve_series(rule, p, N);
    CHECK(res.recurrence_verified);
    REQUIRE(res.chain.size() == N - 1);
    // independent recheck at every precision
    Int xk = res.x1.value();
    for (unsigned long k = 1; k < N; ++k) {
      const auto& xk1 = res.chain[k - 1];
      Int mod = int_pow(Int(p), N - k);
      CHECK(mod_floor(xk - (digits[(k - 1) % 40] + p * xk1.value()), mod) == 0);
      xk = xk1.value();
    }
  }
}

TEST_CASE("digit rules validate their range") {
  CHECK_THROWS_AS(solve_series(DigitRule::constant(2), 2, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(DigitRule::periodic({}), std::invalid_argument);
}

TEST_CASE("periodicity verdicts") {
  auto minus_one = PAdicInt::from_integer(-1, 2, 16);
  auto v = periodicity_verdict(minus_one, 4, 2);
  CHECK(v.kind == PeriodicityVerdict::Kind::Periodic);
  CHECK(v.period == 1);
  CHECK(v.preperiod == 0);

  auto third = PAdicInt::from_rational(1, 3, 2, 16);
  auto v2 = periodicity_verdict(third, 4, 2);
  CHECK(v2.kind == PeriodicityVerdict::Kind::Periodic);
  CHECK(v2.period == 2);

  auto pattern = solve_series(DigitRule::aperiodic_triangular(), 2, 56).x1;
  auto v3 = periodicity_verdict(pattern, 8, 2);
  CHECK(v3.kind == PeriodicityVerdict::Kind::NotPeriodicWithin);
  CHECK(v3.limit == 8);
  CHECK(v3.text.find("truncation-relative") != std::string::npos);

  // a single required repeat cannot refute
  auto weak = periodicity_verdict(pattern, 8, 1);
  CHECK(weak.kind != PeriodicityVerdict::Kind::NotPeriodicWithin);

  CHECK_THROWS_AS(periodicity_verdict(pattern, 8, 8), std::invalid_argument);
}

TEST_CASE("rational reconstruction round trips") {
  std::mt19937 rng(112358);
  for (long p : {2L, 3L, 5L}) {
    std::uniform_int_distribution<long> num(-500, 500), den(1, 500);
    for (int t = 0; t < 120; ++t) {
      long a = num(rng), b = den(rng);
      if (gcd(Int(b), Int(p)) != 1) continue;
      Int g = gcd(abs(Int(a)), Int(b));
      Int ra = a / g, rb = b / g;
      unsigned long N = 24;
      auto x = PAdicInt::from_rational(ra, rb, p, N);
      auto rec = rational_reconstruct(x, 1000);
      REQUIRE(rec);
      CHECK(rec->first == ra);
      CHECK(rec->second == rb);
      CHECK(PAdicInt::from_rational(rec->first, rec->second, p, N) == x);
    }
  }
}

TEST_CASE("reconstruction agrees with the exhaustive scan oracle") {
  std::mt19937 rng(55);
  std::uniform_int_distribution<long> vald(0, 65535);
  for (int t = 0; t < 200; ++t) {
    auto x = PAdicInt::from_integer(vald(rng), 2, 16);
    auto fast = rational_reconstruct(x, 100);
    auto slow = oracles::reconstruct_scan(x.value(), x.modulus(), 2, 100);
    // both find an answer or neither does; the window makes it unique
    CHECK(static_cast<bool>(fast) == static_cast<bool>(slow));
    if (fast && slow) {
      CHECK(fast->first == slow->first);
      CHECK(fast->second == slow->second);
    }
  }
  // the aperiodic pattern at small precision also fails the scan
  auto pattern = solve_series(DigitRule::aperiodic_triangular(), 2, 16).x1;
  CHECK(!rational_reconstruct(pattern, 100));
  CHECK(!oracles::reconstruct_scan(pattern.value(), pattern.modulus(), 2, 100));
}

TEST_CASE("integers reconstruct to themselves") {
  auto seven = PAdicInt::from_integer(7, 2, 32);
  auto rec = rational_reconstruct(seven, 1 << 14);
  REQUIRE(rec);
  CHECK(rec->first == 7);
  CHECK(rec->second == 1);

  auto neg = PAdicInt::from_rational(-1, 3, 2, 32);
  auto rec2 = rational_reconstruct(neg, 1 << 14);
  REQUIRE(rec2);
  CHECK(rec2->first == -1);
  CHECK(rec2->second == 3);
}

TEST_CASE("reconstruction window is enforced") {
  auto x = PAdicInt::from_integer(5, 2, 8);
  CHECK_THROWS_AS(rational_reconstruct(x, 1 << 10), std::invalid_argument);
}

TEST_CASE("periodic rules reconstruct with denominator dividing p^t - 1") {
  std::mt19937 rng(161803);
  for (long p : {2L, 3L, 5L}) {
    for (unsigned long t = 1; t <= 4; ++t) {
      std::uniform_int_distribution<long> digit(0, p - 1);
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<Int> pattern(t);
        for (auto& d : pattern) d = digit(rng);
        unsigned long N = 24;
        auto x = solve_series(DigitRule::periodic(pattern), p, N).x1;
        Int bound = int_pow(Int(p), t);  // covers p^t - 1 and the numerator
        auto rec = rational_reconstruct(x, bound);
        REQUIRE(rec);
        Int denom_target = int_pow(Int(p), t) - 1;
        CHECK(denom_target % rec->second == 0);
        CHECK(PAdicInt::from_rational(rec->first, rec->second, p, N) == x);
      }
    }
  }
}
