#pragma once

#include <optional>
#include <vector>

#include "gamedecomp/matrix.hpp"

namespace gamedecomp {

namespace detail {

/// Row echelon form obtained by fraction-free (Bareiss) elimination.
///
/// Every input row is first scaled by the lcm of its denominators, so the
/// elimination runs on integers and each division by the previous pivot is
/// exact. Entries of `rows` are minors of the scaled input.
struct Echelon {
  std::vector<std::vector<mpz_class>> rows;
  std::vector<std::size_t> pivot_cols;
  std::size_t cols = 0;
};

inline Echelon fraction_free_echelon(const Matrix& a) {
  Echelon e;
  e.cols = a.cols();
  e.rows.assign(a.rows(), std::vector<mpz_class>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    mpz_class scale = 1;
    for (const auto& x : a.row(r)) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get().get_den_mpz_t());
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const mpq_class& x = a(r, c).get();
      e.rows[r][c] = x.get_num() * (scale / x.get_den());
    }
  }

  auto& m = e.rows;
  const std::size_t nrows = m.size();
  std::size_t r = 0;
  mpz_class prev = 1;
  mpz_class t;
  for (std::size_t c = 0; c < e.cols && r < nrows; ++c) {
    std::size_t p = r;
    while (p < nrows && m[p][c] == 0) ++p;
    if (p == nrows) continue;
    std::swap(m[p], m[r]);
    const mpz_class& pivot = m[r][c];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      const mpz_class lead = m[i][c];
      for (std::size_t j = c + 1; j < e.cols; ++j) {
        t = pivot * m[i][j] - lead * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    e.pivot_cols.push_back(c);
    ++r;
  }
  return e;
}

/// Back substitution on an echelon form of [A | B]; free variables are zero.
inline Matrix back_substitute(const Echelon& e, std::size_t a_cols) {
  const std::size_t rhs_cols = e.cols - a_cols;
  const std::size_t rank = e.pivot_cols.size();
  Matrix x(a_cols, rhs_cols);
  for (std::size_t b = 0; b < rhs_cols; ++b) {
    for (std::size_t t = rank; t-- > 0;) {
      const std::size_t pc = e.pivot_cols[t];
      const auto& row = e.rows[t];
      mpq_class acc(row[a_cols + b]);
      for (std::size_t j = pc + 1; j < a_cols; ++j) {
        if (row[j] == 0) continue;
        const mpq_class& xj = x(j, b).get();
        if (sgn(xj) == 0) continue;
        acc -= mpq_class(row[j]) * xj;
      }
      acc /= mpq_class(row[pc]);
      x(pc, b) = Rational(std::move(acc));
    }
  }
  return x;
}

}  // namespace detail

/// Rank over the rationals.
inline std::size_t rank(const Matrix& a) { return detail::fraction_free_echelon(a).pivot_cols.size(); }

/// Some X with a·X = b, or nullopt when the system is inconsistent. The
/// returned solution has every free variable set to zero.
inline std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("solve_linear: " + a.shape() + " against " + b.shape());
  const auto e = detail::fraction_free_echelon(hstack(a, b));
  if (!e.pivot_cols.empty() && e.pivot_cols.back() >= a.cols()) return std::nullopt;
  return detail::back_substitute(e, a.cols());
}

/// Inverse of a nonsingular square matrix.
inline Matrix inverse(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("inverse of non-square matrix " + a.shape());
  const auto e = detail::fraction_free_echelon(hstack(a, Matrix::identity(a.rows())));
  if (e.pivot_cols.size() < a.rows() || e.pivot_cols.back() >= a.cols())
    throw std::domain_error("inverse of singular matrix");
  return detail::back_substitute(e, a.cols());
}

/// Reduced row echelon form together with its pivot columns.
struct ReducedEchelon {
  Matrix form;
  std::vector<std::size_t> pivot_cols;
};

inline ReducedEchelon reduced_echelon(const Matrix& a) {
  const auto e = detail::fraction_free_echelon(a);
  const std::size_t r = e.pivot_cols.size();
  Matrix f(r, a.cols());
  for (std::size_t t = 0; t < r; ++t) {
    const mpq_class pivot(e.rows[t][e.pivot_cols[t]]);
    for (std::size_t c = e.pivot_cols[t]; c < a.cols(); ++c) f(t, c) = Rational(mpq_class(e.rows[t][c]) / pivot);
  }
  for (std::size_t t = r; t-- > 0;) {
    const std::size_t pc = e.pivot_cols[t];
    for (std::size_t u = 0; u < t; ++u) {
      const Rational factor = f(u, pc);
      if (factor.is_zero()) continue;
      for (std::size_t c = pc; c < a.cols(); ++c) f(u, c) -= factor * f(t, c);
    }
  }
  return {std::move(f), e.pivot_cols};
}

/// Moore-Penrose inverse through a full-rank factorization A = F·G, where
/// F holds the pivot columns of A and G the nonzero rows of its reduced
/// echelon form: A† = Gᵀ(GGᵀ)⁻¹(FᵀF)⁻¹Fᵀ.
inline Matrix mp_inverse(const Matrix& a) {
  auto [g, pivots] = reduced_echelon(a);
  if (pivots.empty()) return Matrix::zeros(a.cols(), a.rows());
  Matrix f(a.rows(), pivots.size());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t t = 0; t < pivots.size(); ++t) f(r, t) = a(r, pivots[t]);
  const Matrix ft = f.transpose();
  const Matrix gt = g.transpose();
  return gt * inverse(g * gt) * inverse(ft * f) * ft;
}

/// Group inverse from any solution X of A²X = A, as A·X². Returns nullopt
/// when A²X = A is inconsistent, i.e. A has no group inverse.
inline std::optional<Matrix> group_inverse_via_solve(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("group inverse of non-square matrix " + a.shape());
  auto x = solve_linear(a * a, a);
  if (!x) return std::nullopt;
  return a * (*x * *x);
}

}  // namespace gamedecomp
