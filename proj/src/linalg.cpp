#include "hlr3/linalg.hpp"

#include <cctype>
#include <utility>

namespace hlr3 {

Rat parse_rational(const std::string& text) {
  const auto fail = [&text]() -> Rat {
    throw std::invalid_argument("invalid rational literal: '" + text + "'");
  };
  std::size_t pos = 0;
  if (pos < text.size() && text[pos] == '-') ++pos;
  std::size_t digits = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    ++pos;
    ++digits;
  }
  if (digits == 0) return fail();
  if (pos < text.size()) {
    if (text[pos] != '/') return fail();
    ++pos;
    const std::size_t den_start = pos;
    std::size_t den_digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      ++den_digits;
    }
    if (den_digits == 0 || pos != text.size()) return fail();
    if (mpz_class(text.substr(den_start), 10) == 0) {
      throw std::invalid_argument("zero denominator in rational literal: '" + text + "'");
    }
  }
  Rat value(text, 10);
  value.canonicalize();
  return value;
}

std::string rational_to_string(const Rat& value) { return value.get_str(); }

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const {
  for (const Rat& x : data_) {
    if (x != 0) return false;
  }
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (at(r, c) != (r == c ? 1 : 0)) return false;
    }
  }
  return true;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& f = at(r, k);
      if (f == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) {
        out.at(r, c) += f * rhs.at(k, c);
      }
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument("matrix sum dimension mismatch");
  }
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument("matrix difference dimension mismatch");
  }
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
  return out;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix apply dimension mismatch");
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (at(r, c) != 0 && v[c] != 0) out[r] += at(r, c) * v[c];
    }
  }
  return out;
}

Matrix Matrix::scaled(const Rat& factor) const {
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * factor;
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  }
  return out;
}

Matrix Matrix::pow(std::size_t exponent) const {
  if (rows_ != cols_) throw std::invalid_argument("matrix power requires a square matrix");
  Matrix out = Matrix::identity(rows_);
  for (std::size_t i = 0; i < exponent; ++i) out = out * (*this);
  return out;
}

RrefResult rref(Matrix m) {
  RrefResult result;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m.at(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(m.at(pivot, c), m.at(row, c));
    }
    const Rat inv_pivot = 1 / m.at(row, col);
    for (std::size_t c = col; c < cols; ++c) m.at(row, c) *= inv_pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      const Rat factor = m.at(r, col);
      for (std::size_t c = col; c < cols; ++c) m.at(r, c) -= factor * m.at(row, c);
    }
    result.pivot_cols.push_back(col);
    ++row;
  }
  result.rank = row;
  result.reduced = std::move(m);
  return result;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse requires a square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  const RrefResult red = rref(std::move(aug));
  if (red.rank != n) throw std::invalid_argument("matrix is not invertible");
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out.at(r, c) = red.reduced.at(r, n + c);
  }
  return out;
}

SubspaceBasis make_basis(std::size_t ambient_dim, std::vector<Vec> vectors) {
  Matrix stacked(vectors.size(), ambient_dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient_dim) {
      throw std::invalid_argument("basis vector dimension mismatch");
    }
    for (std::size_t c = 0; c < ambient_dim; ++c) stacked.at(i, c) = vectors[i][c];
  }
  if (rank(stacked) != vectors.size()) {
    throw std::invalid_argument("basis vectors are linearly dependent");
  }
  SubspaceBasis basis;
  basis.ambient_dim = ambient_dim;
  basis.vectors = std::move(vectors);
  return basis;
}

SubspaceBasis kernel(const Matrix& m) {
  const RrefResult red = rref(m);
  const std::size_t cols = m.cols();
  SubspaceBasis basis;
  basis.ambient_dim = cols;
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : red.pivot_cols) is_pivot[p] = true;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    Vec v(cols);
    v[free_col] = 1;
    for (std::size_t i = 0; i < red.pivot_cols.size(); ++i) {
      v[red.pivot_cols[i]] = -red.reduced.at(i, free_col);
    }
    basis.vectors.push_back(std::move(v));
    basis.coord_cols.push_back(free_col);
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve dimension mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols()) = b[r];
  }
  const RrefResult red = rref(std::move(aug));
  if (!red.pivot_cols.empty() && red.pivot_cols.back() == a.cols()) return std::nullopt;
  Vec x(a.cols());
  for (std::size_t i = 0; i < red.pivot_cols.size(); ++i) {
    x[red.pivot_cols[i]] = red.reduced.at(i, a.cols());
  }
  return x;
}

std::optional<Vec> express_in_basis(const SubspaceBasis& basis, const Vec& x) {
  if (x.size() != basis.ambient_dim) {
    throw std::invalid_argument("express_in_basis dimension mismatch");
  }
  if (basis.coord_cols.size() == basis.vectors.size() && !basis.vectors.empty()) {
    Vec coeffs(basis.vectors.size());
    for (std::size_t i = 0; i < basis.vectors.size(); ++i) coeffs[i] = x[basis.coord_cols[i]];
    Vec rebuilt(basis.ambient_dim);
    for (std::size_t i = 0; i < basis.vectors.size(); ++i) {
      if (coeffs[i] == 0) continue;
      for (std::size_t c = 0; c < basis.ambient_dim; ++c) {
        rebuilt[c] += coeffs[i] * basis.vectors[i][c];
      }
    }
    if (rebuilt != x) return std::nullopt;
    return coeffs;
  }
  if (basis.vectors.empty()) {
    if (vec_is_zero(x)) return Vec{};
    return std::nullopt;
  }
  Matrix columns(basis.ambient_dim, basis.vectors.size());
  for (std::size_t j = 0; j < basis.vectors.size(); ++j) {
    for (std::size_t r = 0; r < basis.ambient_dim; ++r) columns.at(r, j) = basis.vectors[j][r];
  }
  return solve(columns, x);
}

ContainmentError::ContainmentError(std::string message, Vec witness)
    : std::runtime_error(std::move(message)), witness_(std::move(witness)) {}

std::size_t quotient_dim(const SubspaceBasis& sub, const SubspaceBasis& inside) {
  if (sub.ambient_dim != inside.ambient_dim) {
    throw std::invalid_argument("quotient_dim ambient dimension mismatch");
  }
  for (const Vec& v : sub.vectors) {
    if (!express_in_basis(inside, v)) {
      throw ContainmentError("subspace vector outside the enclosing span: " + vec_to_string(v),
                             v);
    }
  }
  return inside.vectors.size() - sub.vectors.size();
}

bool vec_is_zero(const Vec& v) {
  for (const Rat& x : v) {
    if (x != 0) return false;
  }
  return true;
}

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sum dimension mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector difference dimension mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec vec_scaled(const Vec& v, const Rat& factor) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * factor;
  return out;
}

std::string vec_to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += rational_to_string(v[i]);
  }
  out += ")";
  return out;
}

std::string matrix_to_string(const Matrix& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out += ", ";
    out += "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      out += rational_to_string(m.at(r, c));
    }
    out += "]";
  }
  out += "]";
  return out;
}

}  // namespace hlr3

