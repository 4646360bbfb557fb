#include "feq/qmatrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace feq {

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::vector<Rational> QMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<long>(r * cols_),
          data_.begin() + static_cast<long>((r + 1) * cols_)};
}

std::vector<Rational> QMatrix::column(std::size_t c) const {
  std::vector<Rational> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(at(r, c));
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  QMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  QMatrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
  return r;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  QMatrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
  return r;
}

QMatrix operator*(const Rational& s, const QMatrix& a) {
  QMatrix r = a;
  for (auto& v : r.data_) v *= s;
  return r;
}

std::vector<Rational> QMatrix::operator*(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<Rational> out(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
  return out;
}

std::string QMatrix::str() const {
  std::size_t width = 1;
  for (const auto& v : data_) width = std::max(width, v.str().size());
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    os << "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      std::string s = at(r, c).str();
      os << (c ? "  " : " ") << std::string(width - s.size(), ' ') << s;
    }
    os << " ]\n";
  }
  return os.str();
}

QMatrix rref(QMatrix m, std::vector<std::size_t>* pivots) {
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m.at(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(row, c));
    Rational inv = m.at(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col).is_zero()) continue;
      Rational f = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

SolveResult qmat_solve(const QMatrix& a, const std::vector<Rational>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length does not match rows");
  const std::size_t n = a.cols();
  QMatrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, n) = b[r];
  }
  std::vector<std::size_t> pivots;
  QMatrix red = rref(aug, &pivots);
  if (!pivots.empty() && pivots.back() == n) return Inconsistent{};

  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<Rational> particular(n, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) particular[pivots[r]] = red.at(r, n);

  std::vector<std::vector<Rational>> kernel;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red.at(r, free);
    kernel.push_back(std::move(v));
  }
  if (kernel.empty()) return UniqueSolution{std::move(particular)};
  return AffineSolution{std::move(particular), std::move(kernel)};
}

std::vector<std::vector<Rational>> kernel_basis(const QMatrix& a) {
  auto result = qmat_solve(a, std::vector<Rational>(a.rows(), Rational(0)));
  if (auto* affine = std::get_if<AffineSolution>(&result)) return affine->kernel;
  return {};
}

}  // namespace feq
