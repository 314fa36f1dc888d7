#ifndef DGLAKIT_EXACT_HPP
#define DGLAKIT_EXACT_HPP

// Exact rational scalars and the dense linear algebra used by every other
// module. Nothing here ever rounds: zero tests are decisions, not estimates.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dglakit/error.hpp"

namespace dglakit {

/// Arbitrary-precision rational, always kept in lowest terms by GMP.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Parses "p", "-p" or "p/q" and canonicalizes. Throws ParseError.
Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& value);

bool is_zero(std::span<const Scalar> v);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  /// Builds a matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(std::size_t rows, std::span<const Vector> columns);
  static Matrix from_rows(std::size_t cols, std::span<const Vector> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<Scalar>& entries() const noexcept { return data_; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;

  Matrix transpose() const;
  bool is_zero() const;

  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator-() const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator*(const Scalar& s) const;
  Vector operator*(std::span<const Scalar> v) const;

  bool operator==(const Matrix& other) const = default;

 private:
  void require_same_shape(const Matrix& other, const char* op) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(std::span<const Matrix> blocks);

struct EchelonForm {
  Matrix reduced;                    // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each row
};

EchelonForm rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Throws NotInvertible for singular or non-square input.
Matrix inverse(const Matrix& m);
Scalar determinant(const Matrix& m);
/// Returns some x with m x = b, or nullopt if the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b);

/// A linear subspace of Q^n, stored by the reduced row echelon form of a
/// spanning set. Two subspaces are equal iff their stored bases are identical.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  static Subspace zero(std::size_t n) { return Subspace(n); }
  static Subspace full(std::size_t n);
  static Subspace span(std::size_t n, std::span<const Vector> vectors);
  static Subspace row_space(const Matrix& m);
  static Subspace column_space(const Matrix& m);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  /// Canonical basis: rows of the reduced echelon form.
  const Matrix& basis_rows() const noexcept { return basis_; }
  /// The basis vectors as columns of an ambient_dim x dim matrix.
  Matrix basis_matrix() const { return basis_.transpose(); }
  std::vector<Vector> basis() const;
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(std::span<const Scalar> v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the canonical basis; v must lie in the subspace.
  Vector coordinates(std::span<const Scalar> v) const;

  bool operator==(const Subspace& other) const {
    return ambient_ == other.ambient_ && basis_ == other.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

struct KernelImage {
  Subspace kernel;  // inside the domain (cols)
  Subspace image;   // inside the codomain (rows)
};

KernelImage kernel_image(const Matrix& m);
Subspace kernel(const Matrix& m);
Subspace image(const Matrix& m);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace intersection(const Subspace& a, const Subspace& b);
/// Image of a subspace under a linear map.
Subspace apply(const Matrix& m, const Subspace& s);
/// Throws DimensionMismatch if the ambient dimensions differ.
bool subspace_equal(const Subspace& a, const Subspace& b);

/// The elements of a finite linear group acting on one space, used to average
/// objects into equivariant ones. `reynolds()` is (1/|G|) sum g.
class Averager {
 public:
  explicit Averager(std::vector<Matrix> elements);

  const std::vector<Matrix>& elements() const noexcept { return elements_; }
  std::size_t dim() const noexcept { return dim_; }
  const Matrix& reynolds() const noexcept { return reynolds_; }
  /// (1/|G|) sum g m g^{-1}.
  Matrix conjugation_average(const Matrix& m) const;

 private:
  std::vector<Matrix> elements_;
  std::vector<Matrix> inverses_;
  std::size_t dim_ = 0;
  Matrix reynolds_;
};

/// Returns c with w (+) c = inside. Without an averager the complement is the
/// echelon completion of w by the canonical basis of `inside`. With one, the
/// complement is the kernel of the group-averaged projector onto w and is
/// therefore invariant.
Subspace complement(const Subspace& w, const Subspace& inside, const Averager* averager = nullptr);

/// Matrix of the projection of the ambient space onto `target` along
/// `along`, expressed in the canonical coordinates of `target`
/// (dim target x ambient). Requires target (+) along = ambient.
Matrix projection_coordinates(const Subspace& target, const Subspace& along);

}  // namespace dglakit

#endif  // DGLAKIT_EXACT_HPP
