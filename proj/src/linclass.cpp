#include "groupeq/linclass.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "groupeq/system.hpp"

namespace groupeq {

ExponentMatrix ExponentMatrix::identity(std::size_t n) {
  ExponentMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ExponentMatrix ExponentMatrix::from_rows(
    const std::vector<std::vector<long>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  ExponentMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      throw std::invalid_argument("ragged rows in matrix literal");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

ExponentMatrix ExponentMatrix::mul(const ExponentMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix shape mismatch");
  ExponentMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        out.at(i, j) += aik * rhs.at(k, j);
    }
  return out;
}

std::string ExponentMatrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << at(i, j).get_str();
    }
    os << '\n';
  }
  return os.str();
}

ExponentMatrix ExponentMatrix::parse(std::istream& in) {
  std::vector<std::vector<Int>> rows;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Int> row;
    std::string tok;
    while (ls >> tok) row.emplace_back(tok);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  ExponentMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c)
      throw std::invalid_argument("ragged rows in matrix file");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Int> SnfResult::divisors() const {
  std::size_t r = std::min(D.rows(), D.cols());
  std::vector<Int> d(r);
  for (std::size_t i = 0; i < r; ++i) d[i] = D.at(i, i);
  return d;
}

namespace {

struct SnfWorker {
  ExponentMatrix D, U, V;
  std::size_t m, n;

  explicit SnfWorker(const ExponentMatrix& M)
      : D(M),
        U(ExponentMatrix::identity(M.rows())),
        V(ExponentMatrix::identity(M.cols())),
        m(M.rows()),
        n(M.cols()) {}

  void row_swap(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < n; ++j) std::swap(D.at(a, j), D.at(b, j));
    for (std::size_t j = 0; j < m; ++j) std::swap(U.at(a, j), U.at(b, j));
  }
  void col_swap(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < m; ++i) std::swap(D.at(i, a), D.at(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(V.at(i, a), V.at(i, b));
  }
  // row a += q * row b
  void row_addmul(std::size_t a, std::size_t b, const Int& q) {
    for (std::size_t j = 0; j < n; ++j) D.at(a, j) += q * D.at(b, j);
    for (std::size_t j = 0; j < m; ++j) U.at(a, j) += q * U.at(b, j);
  }
  // col a += q * col b
  void col_addmul(std::size_t a, std::size_t b, const Int& q) {
    for (std::size_t i = 0; i < m; ++i) D.at(i, a) += q * D.at(i, b);
    for (std::size_t i = 0; i < n; ++i) V.at(i, a) += q * V.at(i, b);
  }
  void row_negate(std::size_t a) {
    for (std::size_t j = 0; j < n; ++j) D.at(a, j) = -D.at(a, j);
    for (std::size_t j = 0; j < m; ++j) U.at(a, j) = -U.at(a, j);
  }

  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const Int& e = D.at(i, j);
        if (e == 0) continue;
        Int a = abs(e);
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    return found;
  }

  void run() {
    std::size_t r = std::min(m, n);
    for (std::size_t t = 0; t < r; ++t) {
      while (true) {
        std::size_t pi, pj;
        if (!find_pivot(t, pi, pj)) return finish();
        if (pi != t) row_swap(t, pi);
        if (pj != t) col_swap(t, pj);

        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (D.at(i, t) == 0) continue;
          Int q;
          mpz_tdiv_q(q.get_mpz_t(), D.at(i, t).get_mpz_t(),
                     D.at(t, t).get_mpz_t());
          row_addmul(i, t, -q);
          if (D.at(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (D.at(t, j) == 0) continue;
          Int q;
          mpz_tdiv_q(q.get_mpz_t(), D.at(t, j).get_mpz_t(),
                     D.at(t, t).get_mpz_t());
          col_addmul(j, t, -q);
          if (D.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders exist; re-pivot

        // divisibility sweep: d_t must divide the remaining submatrix
        bool fixed_up = false;
        for (std::size_t i = t + 1; i < m && !fixed_up; ++i)
          for (std::size_t j = t + 1; j < n && !fixed_up; ++j)
            if (D.at(i, j) % D.at(t, t) != 0) {
              row_addmul(t, i, 1);
              fixed_up = true;
            }
        if (!fixed_up) break;
      }
      if (D.at(t, t) < 0) row_negate(t);
    }
    finish();
  }

  void finish() {
    // nothing further: zero submatrix means remaining divisors are zero
  }
};

}  // namespace

SnfResult smith_normal_form(const ExponentMatrix& M) {
  SnfWorker w(M);
  w.run();
  return {std::move(w.D), std::move(w.U), std::move(w.V)};
}

std::size_t rank_mod_p(const SnfResult& snf, const Int& p) {
  std::size_t rank = 0;
  for (const Int& d : snf.divisors())
    if (d % p != 0) ++rank;
  return rank;
}

Classification classify(const ExponentMatrix& M) {
  Classification c;
  std::size_t m = M.rows();
  auto snf = smith_normal_form(M);
  auto d = snf.divisors();
  std::size_t rank_q = 0;
  for (const Int& di : d)
    if (di != 0) ++rank_q;

  c.nonsingular = (rank_q == m);  // m > cols forces rank_q < m
  if (!c.nonsingular) {
    c.all_primes_singular = (m > 0);
    c.unimodular = false;
    return c;
  }
  if (m == 0) {
    c.unimodular = true;  // empty system, vacuously
    c.last_divisor = 1;
    return c;
  }
  c.last_divisor = d[m - 1];
  c.unimodular = (c.last_divisor == 1);
  if (!c.unimodular) c.singular_primes = prime_factors(c.last_divisor);
  return c;
}

std::string Classification::report() const {
  std::ostringstream os;
  os << "nonsingular: " << (nonsingular ? "yes" : "no") << '\n';
  if (!nonsingular) {
    os << "singular_primes: " << (all_primes_singular ? "all" : "none") << '\n';
  } else if (singular_primes.empty()) {
    os << "singular_primes: none (p-nonsingular for every prime)\n";
  } else {
    os << "singular_primes: {";
    for (std::size_t i = 0; i < singular_primes.size(); ++i)
      os << (i ? ", " : "") << singular_primes[i].get_str();
    os << "}\n";
  }
  os << "unimodular: " << (unimodular ? "yes" : "no") << '\n';
  return os.str();
}

BandShape structural_band_shape(const ExponentMatrix& M) {
  std::size_t m = M.rows(), n = M.cols();
  if (m == 0 || n == 0) return BandShape::None;

  auto is_unit_bidiagonal = [&] {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Int& e = M.at(i, j);
        if (j == i) {
          if (e != 1) return false;
        } else if (j != i + 1 && e != 0) {
          return false;
        }
      }
    return true;
  };
  if (is_unit_bidiagonal()) return BandShape::UnitBidiagonal;

  auto is_common_first_column = [&] {
    if (n != m + 1) return false;
    std::vector<Int> band(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Int& e = M.at(i, j);
        if (j == 0) {
          if (e != 1) return false;
        } else if (j == i + 1) {
          if (e == 0) return false;
          band[i] = e;
        } else if (e != 0) {
          return false;
        }
      }
    // pairwise coprime band entries: at most one vanishes mod any prime
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (gcd(band[i], band[j]) != 1) return false;
    return true;
  };
  if (is_common_first_column()) return BandShape::CommonFirstColumn;
  return BandShape::None;
}

std::vector<TruncationClassification> classify_truncations(
    const SystemSource& sys, unsigned long n_max) {
  std::vector<TruncationClassification> out;
  out.reserve(n_max);
  for (unsigned long i = 1; i <= n_max; ++i) {
    auto data = exponent_matrix(sys, i);
    TruncationClassification tc;
    tc.classification = classify(data.matrix);
    tc.structural_unimodular =
        structural_band_shape(data.matrix) != BandShape::None;
    out.push_back(std::move(tc));
  }
  return out;
}

}  // namespace groupeq
