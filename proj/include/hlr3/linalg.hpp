#ifndef HLR3_LINALG_HPP
#define HLR3_LINALG_HPP

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlr3 {

/// Exact rational scalar. Always kept in canonical form (gcd 1, positive denominator).
using Rat = mpq_class;

using Vec = std::vector<Rat>;

/// Parses "p" or "p/q" (q > 0 after canonicalization). Throws std::invalid_argument
/// on malformed input or zero denominator.
[[nodiscard]] Rat parse_rational(const std::string& text);

/// Renders canonically: "p/q", with "/q" omitted when the denominator is 1.
[[nodiscard]] std::string rational_to_string(const Rat& value);

/// Dense matrix over Rat, row-major.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  [[nodiscard]] static Matrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Rat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  [[nodiscard]] const Rat& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] bool operator==(const Matrix& other) const = default;

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_identity() const;

  [[nodiscard]] Matrix operator*(const Matrix& rhs) const;
  [[nodiscard]] Matrix operator+(const Matrix& rhs) const;
  [[nodiscard]] Matrix operator-(const Matrix& rhs) const;
  [[nodiscard]] Vec apply(const Vec& v) const;
  [[nodiscard]] Matrix scaled(const Rat& factor) const;
  [[nodiscard]] Matrix transposed() const;
  [[nodiscard]] Matrix pow(std::size_t exponent) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form with deterministic pivoting: for each column in
/// order, the first row with a nonzero entry becomes the pivot row.
[[nodiscard]] RrefResult rref(Matrix m);

[[nodiscard]] std::size_t rank(const Matrix& m);
[[nodiscard]] bool is_invertible(const Matrix& m);

/// Inverse of a square invertible matrix. Throws std::invalid_argument otherwise.
[[nodiscard]] Matrix inverse(const Matrix& m);

/// A list of linearly independent vectors spanning a subspace of Q^ambient_dim.
/// When produced by kernel(), coord_cols lists the free columns at which the
/// basis acts as the identity (vectors[i][coord_cols[j]] == delta_ij), which
/// makes coordinate extraction exact and cheap.
struct SubspaceBasis {
  std::size_t ambient_dim = 0;
  std::vector<Vec> vectors;
  std::vector<std::size_t> coord_cols;

  [[nodiscard]] std::size_t dim() const { return vectors.size(); }
};

/// Validates independence (throws std::invalid_argument on a dependent list).
[[nodiscard]] SubspaceBasis make_basis(std::size_t ambient_dim, std::vector<Vec> vectors);

/// Right null space basis, one vector per free column in ascending column order.
[[nodiscard]] SubspaceBasis kernel(const Matrix& m);

/// Deterministic particular solution of A x = b (free variables set to zero),
/// or nullopt when the system is inconsistent.
[[nodiscard]] std::optional<Vec> solve(const Matrix& a, const Vec& b);

/// Coefficients of x in the given basis, or nullopt when x is outside the span.
[[nodiscard]] std::optional<Vec> express_in_basis(const SubspaceBasis& basis, const Vec& x);

/// Raised when a claimed subspace inclusion fails; carries the offending vector.
class ContainmentError : public std::runtime_error {
public:
  ContainmentError(std::string message, Vec witness);
  [[nodiscard]] const Vec& witness() const { return witness_; }

private:
  Vec witness_;
};

/// dim(inside) - dim(sub). Checks span(sub) is contained in span(inside) and
/// throws ContainmentError with a witness vector otherwise.
[[nodiscard]] std::size_t quotient_dim(const SubspaceBasis& sub, const SubspaceBasis& inside);

[[nodiscard]] bool vec_is_zero(const Vec& v);
[[nodiscard]] Vec vec_add(const Vec& a, const Vec& b);
[[nodiscard]] Vec vec_sub(const Vec& a, const Vec& b);
[[nodiscard]] Vec vec_scaled(const Vec& v, const Rat& factor);
[[nodiscard]] std::string vec_to_string(const Vec& v);
[[nodiscard]] std::string matrix_to_string(const Matrix& m);

}  // namespace hlr3

#endif
