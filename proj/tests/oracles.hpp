#pragma once

// Test-only oracles, deliberately independent of the library's own
// algorithms: Gaussian elimination over F_p, fraction-free determinants,
// matrix models of the Heisenberg groups, and exhaustive searches.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "groupeq/abelian.hpp"
#include "groupeq/linclass.hpp"
#include "groupeq/word.hpp"

namespace oracles {

using groupeq::ExponentMatrix;
using groupeq::Int;

// Rank of M over F_p by row-echelon elimination.
inline std::size_t gauss_rank_mod_p(const ExponentMatrix& M, long p) {
  std::size_t m = M.rows(), n = M.cols();
  std::vector<std::vector<long>> a(m, std::vector<long>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = groupeq::mod_floor(M.at(i, j), p).get_si();

  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[rank]);
    long inv = 1;
    while ((a[rank][col] * inv) % p != 1) ++inv;  // p is small
    for (std::size_t j = col; j < n; ++j) a[rank][j] = (a[rank][j] * inv) % p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      long f = a[i][col];
      for (std::size_t j = col; j < n; ++j)
        a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// Determinant by cofactor expansion; exact, fine for n <= 8.
inline Int det_cofactor(const ExponentMatrix& M) {
  std::size_t n = M.rows();
  if (n != M.cols()) throw std::invalid_argument("det of non-square matrix");
  if (n == 0) return 1;
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = M.at(i, j);

  std::function<Int(std::vector<std::vector<Int>>&)> go =
      [&](std::vector<std::vector<Int>>& mat) -> Int {
    std::size_t k = mat.size();
    if (k == 1) return mat[0][0];
    Int det = 0, sign = 1;
    for (std::size_t c = 0; c < k; ++c) {
      if (mat[0][c] != 0) {
        std::vector<std::vector<Int>> sub(k - 1, std::vector<Int>(k - 1));
        for (std::size_t i = 1; i < k; ++i) {
          std::size_t jj = 0;
          for (std::size_t j = 0; j < k; ++j) {
            if (j == c) continue;
            sub[i - 1][jj++] = mat[i][j];
          }
        }
        det += sign * mat[0][c] * go(sub);
      }
      sign = -sign;
    }
    return det;
  };
  return go(a);
}

// Fraction-free Gaussian elimination determinant (Bareiss); exact.
inline Int det_bareiss(const ExponentMatrix& M) {
  std::size_t n = M.rows();
  if (n != M.cols()) throw std::invalid_argument("det of non-square matrix");
  if (n == 0) return 1;
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = M.at(i, j);
  Int prev = 1, sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// gcd of all k x k minors (used to check elementary divisor products).
inline Int minor_gcd(const ExponentMatrix& M, std::size_t k) {
  std::vector<std::size_t> rows(k), cols(k);
  Int g = 0;
  std::function<void(std::size_t, std::size_t)> pick_cols;
  std::function<void(std::size_t, std::size_t)> pick_rows =
      [&](std::size_t from, std::size_t got) {
        if (got == k) {
          pick_cols(0, 0);
          return;
        }
        for (std::size_t i = from; i < M.rows(); ++i) {
          rows[got] = i;
          pick_rows(i + 1, got + 1);
        }
      };
  pick_cols = [&](std::size_t from, std::size_t got) {
    if (got == k) {
      ExponentMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          sub.at(i, j) = M.at(rows[i], cols[j]);
      g = groupeq::gcd(g, det_cofactor(sub));
      return;
    }
    for (std::size_t j = from; j < M.cols(); ++j) {
      cols[got] = j;
      pick_cols(j + 1, got + 1);
    }
  };
  pick_rows(0, 0);
  return g;
}

// 3x3 unitriangular matrices over Z/m: the Heisenberg group as a matrix
// model, multiplied directly.
struct HeisenbergMatrix {
  long m;
  std::array<long, 3> entries;  // (a12, a23, a13)

  static HeisenbergMatrix id(long m) { return {m, {0, 0, 0}}; }
  HeisenbergMatrix mul(const HeisenbergMatrix& o) const {
    // (E + a e12 + b e23 + c e13)(E + a' e12 + b' e23 + c' e13)
    long a = (entries[0] + o.entries[0]) % m;
    long b = (entries[1] + o.entries[1]) % m;
    long c = (entries[2] + o.entries[2] + entries[0] * o.entries[1]) % m;
    return {m, {a, b, c}};
  }
  bool operator==(const HeisenbergMatrix& o) const = default;
  auto operator<=>(const HeisenbergMatrix& o) const = default;
};

// Exhaustive height oracle in a concrete abelian p-group: the largest e with
// g = h^{p^e} for some h; nullopt = every power works (identity).
inline std::optional<unsigned long> height_oracle(
    const groupeq::FiniteAbelianGroup& A,
    const groupeq::FiniteAbelianGroup::Element& g, long p) {
  if (A.is_identity(g)) return std::nullopt;
  auto all = A.elements();
  unsigned long e = 0;
  while (true) {
    Int pe = groupeq::int_pow(Int(p), e + 1);
    bool found = false;
    for (const auto& h : all)
      if (A.power(h, pe) == g) {
        found = true;
        break;
      }
    if (!found) return e;
    ++e;
    if (e > 64) throw std::logic_error("height oracle runaway");
  }
}

// Exhaustive rational reconstruction: scan all denominators b <= bound
// coprime to p and numerators |a| <= bound.
inline std::optional<std::pair<Int, Int>> reconstruct_scan(
    const Int& value, const Int& modulus, const Int& p, long bound) {
  for (long b = 1; b <= bound; ++b) {
    if (groupeq::gcd(Int(b), p) != 1) continue;
    Int ab = groupeq::mod_floor(value * b, modulus);
    Int bal = ab <= modulus / 2 ? ab : ab - modulus;  // balanced residue
    if (abs(bal) <= bound && groupeq::gcd(abs(bal), Int(b)) == 1)
      return std::make_pair(bal, Int(b));
  }
  return std::nullopt;
}

// Deterministic random exponent matrix, entries in [-mag, mag].
inline ExponentMatrix random_matrix(std::mt19937& rng, std::size_t max_dim,
                                    long mag) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<long> entry(-mag, mag);
  ExponentMatrix M(dim(rng), dim(rng));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) M.at(i, j) = entry(rng);
  return M;
}

}  // namespace oracles
