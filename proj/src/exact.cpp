#include "dglakit/exact.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace dglakit {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotASubspace: return "NotASubspace";
    case ErrorKind::BadProjector: return "BadProjector";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorKind::InvalidSplitting: return "InvalidSplitting";
    case ErrorKind::NoAction: return "NoAction";
    case ErrorKind::UnsupportedArity: return "UnsupportedArity";
    case ErrorKind::NotAnInvolution: return "NotAnInvolution";
    case ErrorKind::OddDiagonal: return "OddDiagonal";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::InfiniteGlobalDimension: return "InfiniteGlobalDimension";
    case ErrorKind::NotProjective: return "NotProjective";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::UnknownCommand: return "UnknownCommand";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  auto valid = [&] {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool digits = false, slash = false, after_slash = false;
    for (; i < s.size(); ++i) {
      char c = s[i];
      if (c >= '0' && c <= '9') {
        digits = true;
        if (slash) after_slash = true;
      } else if (c == '/' && !slash && digits) {
        slash = true;
      } else {
        return false;
      }
    }
    return digits && (!slash || after_slash);
  };
  if (!valid()) throw Error(ErrorKind::ParseError, "not a rational literal: '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Scalar value;
  if (value.set_str(s, 10) != 0) throw Error(ErrorKind::ParseError, "not a rational literal: '" + s + "'");
  if (value.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  value.canonicalize();
  return value;
}

std::string to_string(const Scalar& value) { return value.get_str(10); }

bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::ShapeMismatch, "matrix entry count does not match its shape");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::span<const Vector> columns) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error(ErrorKind::ShapeMismatch, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, std::span<const Vector> rows) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::ShapeMismatch, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const { return dglakit::is_zero(data_); }

void Matrix::require_same_shape(const Matrix& other, const char* op) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    std::ostringstream msg;
    msg << "matrix " << op << ": " << rows_ << "x" << cols_ << " vs " << other.rows_ << "x" << other.cols_;
    throw Error(ErrorKind::ShapeMismatch, msg.str());
  }
}

Matrix Matrix::operator+(const Matrix& other) const {
  require_same_shape(other, "sum");
  Matrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
  require_same_shape(other, "difference");
  Matrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
  return out;
}

Matrix Matrix::operator-() const {
  Matrix out(*this);
  for (auto& x : out.data_) x = -x;
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) {
    std::ostringstream msg;
    msg << "matrix product: " << rows_ << "x" << cols_ << " * " << other.rows_ << "x" << other.cols_;
    throw Error(ErrorKind::ShapeMismatch, msg.str());
  }
  Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        const Scalar& b = other(k, c);
        if (sgn(b) != 0) out(r, c) += a * b;
      }
    }
  }
  return out;
}

Matrix Matrix::operator*(const Scalar& s) const {
  Matrix out(*this);
  for (auto& x : out.data_) x *= s;
  return out;
}

Vector Matrix::operator*(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "matrix-vector product: length mismatch");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (sgn(a) != 0 && sgn(v[c]) != 0) out[r] += a * v[c];
    }
  }
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "hstack: row count mismatch");
  Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "vstack: column count mismatch");
  Matrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, c) = b(r, c);
  return out;
}

Matrix block_diagonal(std::span<const Matrix> blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(r0 + r, c0 + c) = b(r, c);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elimination

EchelonForm rref(const Matrix& m) {
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && sgn(a(pivot, col)) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row)
      for (std::size_t c = col; c < a.cols(); ++c) std::swap(a(pivot, c), a(row, c));
    const Scalar inv = 1 / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || sgn(a(r, col)) == 0) continue;
      const Scalar factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) {
        if (sgn(a(row, c)) != 0) a(r, c) -= factor * a(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  Matrix reduced(row, a.cols());
  for (std::size_t r = 0; r < row; ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) reduced(r, c) = a(r, c);
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NotInvertible, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  auto e = rref(hstack(m, Matrix::identity(n)));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) {
    throw Error(ErrorKind::NotInvertible, "matrix is singular");
  }
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  return inv;
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "determinant of a non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  Scalar det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a(pivot, col)) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(a(r, col)) == 0) continue;
      const Scalar factor = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) throw Error(ErrorKind::ShapeMismatch, "solve: right-hand side length mismatch");
  Matrix rhs(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  auto e = rref(hstack(m, rhs));
  Vector x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, m.cols());
  }
  return x;
}

// ---------------------------------------------------------------------------
// Subspaces

Subspace Subspace::full(std::size_t n) { return row_space(Matrix::identity(n)); }

Subspace Subspace::span(std::size_t n, std::span<const Vector> vectors) {
  return row_space(Matrix::from_rows(n, vectors));
}

Subspace Subspace::row_space(const Matrix& m) {
  Subspace s(m.cols());
  auto e = rref(m);
  s.basis_ = std::move(e.reduced);
  s.pivots_ = std::move(e.pivots);
  return s;
}

Subspace Subspace::column_space(const Matrix& m) { return row_space(m.transpose()); }

std::vector<Vector> Subspace::basis() const {
  std::vector<Vector> out;
  out.reserve(dim());
  for (std::size_t r = 0; r < dim(); ++r) out.push_back(basis_.row(r));
  return out;
}

Vector Subspace::coordinates(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw Error(ErrorKind::DimensionMismatch, "coordinates: ambient dimension mismatch");
  // Reduced echelon rows have a unit at their pivot and zeros at the other
  // pivots, so the coordinates are the pivot entries of v.
  Vector coords(dim());
  Vector residual(v.begin(), v.end());
  for (std::size_t r = 0; r < dim(); ++r) {
    coords[r] = v[pivots_[r]];
    if (sgn(coords[r]) == 0) continue;
    for (std::size_t c = 0; c < ambient_; ++c) {
      if (sgn(basis_(r, c)) != 0) residual[c] -= coords[r] * basis_(r, c);
    }
  }
  if (!dglakit::is_zero(residual)) throw Error(ErrorKind::NotASubspace, "vector does not lie in the subspace");
  return coords;
}

bool Subspace::contains(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw Error(ErrorKind::DimensionMismatch, "contains: ambient dimension mismatch");
  Vector residual(v.begin(), v.end());
  for (std::size_t r = 0; r < dim(); ++r) {
    const Scalar coef = residual[pivots_[r]];
    if (sgn(coef) == 0) continue;
    for (std::size_t c = 0; c < ambient_; ++c) {
      if (sgn(basis_(r, c)) != 0) residual[c] -= coef * basis_(r, c);
    }
  }
  return dglakit::is_zero(residual);
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw Error(ErrorKind::DimensionMismatch, "contains: ambient dimension mismatch");
  for (std::size_t r = 0; r < other.dim(); ++r) {
    if (!contains(other.basis_.row(r))) return false;
  }
  return true;
}

KernelImage kernel_image(const Matrix& m) { return {kernel(m), image(m)}; }

Subspace kernel(const Matrix& m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), basis);
}

Subspace image(const Matrix& m) { return Subspace::column_space(m); }

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "sum: ambient dimension mismatch");
  return Subspace::row_space(vstack(a.basis_rows(), b.basis_rows()));
}

Subspace intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "intersection: ambient dimension mismatch");
  }
  // Solve A^T s = B^T t: kernel of [A^T | -B^T], then map through A^T.
  const Matrix at = a.basis_matrix();
  const Matrix bt = b.basis_matrix();
  const Subspace k = kernel(hstack(at, -bt));
  std::vector<Vector> vectors;
  for (const auto& v : k.basis()) {
    Vector s(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(a.dim()));
    vectors.push_back(at * s);
  }
  return Subspace::span(a.ambient_dim(), vectors);
}

Subspace apply(const Matrix& m, const Subspace& s) {
  if (m.cols() != s.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "apply: map domain mismatch");
  return Subspace::column_space(m * s.basis_matrix());
}

bool subspace_equal(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "subspace_equal: ambient dimension mismatch");
  }
  return a == b;
}

// ---------------------------------------------------------------------------
// Averaging and complements

Averager::Averager(std::vector<Matrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorKind::BadProjector, "averager needs at least one group element");
  dim_ = elements_.front().rows();
  reynolds_ = Matrix(dim_, dim_);
  for (const auto& g : elements_) {
    if (g.rows() != dim_ || g.cols() != dim_) throw Error(ErrorKind::ShapeMismatch, "averager: element shape mismatch");
    inverses_.push_back(inverse(g));
    reynolds_ = reynolds_ + g;
  }
  reynolds_ = reynolds_ * Scalar(1, static_cast<unsigned long>(elements_.size()));
}

Matrix Averager::conjugation_average(const Matrix& m) const {
  Matrix acc(dim_, dim_);
  for (std::size_t i = 0; i < elements_.size(); ++i) acc = acc + elements_[i] * m * inverses_[i];
  return acc * Scalar(1, static_cast<unsigned long>(elements_.size()));
}

namespace {

Subspace echelon_completion(const Subspace& w, const Subspace& inside) {
  Subspace current = w;
  std::vector<Vector> added;
  for (const auto& v : inside.basis()) {
    if (current.contains(v)) continue;
    added.push_back(v);
    current = subspace_sum(current, Subspace::span(w.ambient_dim(), std::span<const Vector>(&v, 1)));
  }
  return Subspace::span(w.ambient_dim(), added);
}

}  // namespace

Subspace complement(const Subspace& w, const Subspace& inside, const Averager* averager) {
  if (w.ambient_dim() != inside.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "complement: ambient dimension mismatch");
  }
  if (!inside.contains(w)) throw Error(ErrorKind::NotASubspace, "complement: w is not contained in the enclosing space");
  if (averager == nullptr) return echelon_completion(w, inside);

  const std::size_t n = w.ambient_dim();
  if (averager->dim() != n) throw Error(ErrorKind::BadProjector, "complement: averager acts on the wrong space");
  const Matrix& r = averager->reynolds();
  if (!(r * r == r)) throw Error(ErrorKind::BadProjector, "Reynolds operator is not idempotent");
  for (const auto& g : averager->elements()) {
    if (!subspace_equal(apply(g, inside), inside) || !subspace_equal(apply(g, w), w)) {
      throw Error(ErrorKind::BadProjector, "complement: group does not preserve the subspaces");
    }
  }
  // Any projector onto w along (c0 + outside), averaged by conjugation, is an
  // equivariant projector onto w on `inside`; its kernel there is invariant.
  const Subspace c0 = echelon_completion(w, inside);
  const Subspace outside = echelon_completion(inside, Subspace::full(n));
  const Matrix coords = projection_coordinates(w, subspace_sum(c0, outside));
  const Matrix proj = w.basis_matrix() * coords;
  const Matrix averaged = averager->conjugation_average(proj);
  const Matrix restricted = averaged * inside.basis_matrix();
  const Matrix residual = inside.basis_matrix() - restricted;
  return Subspace::column_space(residual);
}

Matrix projection_coordinates(const Subspace& target, const Subspace& along) {
  if (target.ambient_dim() != along.ambient_dim() || target.dim() + along.dim() != target.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "projection: subspaces do not split the ambient space");
  }
  const std::size_t n = target.ambient_dim();
  const Matrix basis = hstack(target.basis_matrix(), along.basis_matrix());
  Matrix inv;
  try {
    inv = inverse(basis);
  } catch (const Error&) {
    throw Error(ErrorKind::DimensionMismatch, "projection: subspaces are not complementary");
  }
  Matrix out(target.dim(), n);
  for (std::size_t r = 0; r < target.dim(); ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = inv(r, c);
  return out;
}

}  // namespace dglakit
