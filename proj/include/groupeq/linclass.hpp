#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "groupeq/bigint.hpp"

namespace groupeq {

class SystemSource;

// Dense exact integer matrix of exponent sums.
class ExponentMatrix {
 public:
  ExponentMatrix() = default;
  ExponentMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static ExponentMatrix identity(std::size_t n);
  static ExponentMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  ExponentMatrix mul(const ExponentMatrix& rhs) const;
  bool operator==(const ExponentMatrix&) const = default;

  // Exchange format: one row per line, space-separated integers, '#' comments.
  std::string str() const;
  static ExponentMatrix parse(std::istream& in);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

// U*M*V = D with |det U| = |det V| = 1 and d_1 | d_2 | ... on the diagonal.
struct SnfResult {
  ExponentMatrix D, U, V;
  std::vector<Int> divisors() const;  // diagonal, length min(rows, cols)
};

// Deterministic pivoting: smallest nonzero |entry|, ties by lowest (row, col).
SnfResult smith_normal_form(const ExponentMatrix& M);

// Rank of the matrix underlying snf over F_p.
std::size_t rank_mod_p(const SnfResult& snf, const Int& p);

struct Classification {
  bool nonsingular = false;
  bool unimodular = false;
  // When not nonsingular the rows are dependent over every F_p.
  bool all_primes_singular = false;
  // When nonsingular: exact singular prime set (primes dividing the last
  // elementary divisor); empty means p-nonsingular for every prime.
  std::vector<Int> singular_primes;
  Int last_divisor = 0;  // d_{n_rows} when nonsingular

  std::string report() const;  // key-value serialization
};

Classification classify(const ExponentMatrix& M);

// The two band shapes of the witness systems; either one makes every
// truncation unimodular regardless of the (nonzero) band entries.
enum class BandShape { None, UnitBidiagonal, CommonFirstColumn };
BandShape structural_band_shape(const ExponentMatrix& M);

struct TruncationClassification {
  Classification classification;
  bool structural_unimodular = false;
};

// classify(exponent_matrix(sys, i)) for i = 1..n_max, plus the structural
// band flag. Verdicts without the flag hold for the truncation only.
std::vector<TruncationClassification> classify_truncations(
    const SystemSource& sys, unsigned long n_max);

}  // namespace groupeq
