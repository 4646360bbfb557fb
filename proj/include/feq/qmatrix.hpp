#pragma once

#include <string>
#include <variant>
#include <vector>

#include "feq/rational.hpp"

namespace feq {

/// Dense rectangular matrix over Q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> row(std::size_t r) const;
  std::vector<Rational> column(std::size_t c) const;
  QMatrix transpose() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator*(const Rational& s, const QMatrix& a);
  std::vector<Rational> operator*(const std::vector<Rational>& v) const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

  /// Row-per-line rendering, entries right-aligned.
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct UniqueSolution {
  std::vector<Rational> x;
};

/// Solution set particular + span(kernel).
struct AffineSolution {
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> kernel;
};

struct Inconsistent {};

using SolveResult = std::variant<UniqueSolution, AffineSolution, Inconsistent>;

/// Exact Gauss-Jordan solve of A x = b.
///
/// The kernel basis is the reduced-row-echelon one: one vector per free column
/// c, with a 1 at c, 0 at every other free column, and nonzero entries only at
/// pivot columns to the left of c. The particular solution is zero on free
/// columns. Callers rely on this shape (see solver.cpp).
SolveResult qmat_solve(const QMatrix& a, const std::vector<Rational>& b);

/// Reduced row echelon form; `pivots` receives the pivot column of each
/// nonzero row.
QMatrix rref(QMatrix m, std::vector<std::size_t>* pivots = nullptr);

/// Kernel basis with the same shape as qmat_solve's.
std::vector<std::vector<Rational>> kernel_basis(const QMatrix& a);

}  // namespace feq
