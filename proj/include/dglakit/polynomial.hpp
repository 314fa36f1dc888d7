#ifndef DGLAKIT_POLYNOMIAL_HPP
#define DGLAKIT_POLYNOMIAL_HPP

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dglakit/exact.hpp"

namespace dglakit {

/// Exponent vector. Ordered by total degree, then lexicographically with the
/// larger exponent of the earlier variable first (x1^2 < x1*x2 < x2^2 within
/// degree 2 in map order).
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<unsigned> exps);

  static Monomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const noexcept { return exps_.size(); }
  unsigned degree() const noexcept { return degree_; }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<unsigned>& exponents() const noexcept { return exps_; }

  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  bool operator<(const Monomial& other) const;

  std::string to_string(std::span<const std::string> names) const;

 private:
  std::vector<unsigned> exps_;
  unsigned degree_ = 0;
};

/// All monomials in `nvars` variables of total degree exactly `degree`, in
/// monomial order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree);

inline constexpr unsigned kNoTruncation = std::numeric_limits<unsigned>::max();

/// Sparse polynomial over Q. Products take a truncation order N and drop every
/// monomial of total degree > N, which realizes arithmetic in R / m^{N+1}.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Scalar>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Scalar& c);
  static Polynomial variable(std::size_t nvars, std::size_t index, const Scalar& c = 1);
  static Polynomial monomial(const Monomial& m, const Scalar& c = 1);

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Highest total degree present; 0 for the zero polynomial.
  unsigned degree() const;
  /// Lowest total degree present; kNoTruncation for the zero polynomial.
  unsigned valuation() const;
  Scalar coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Scalar& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Scalar& s);
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Scalar& s) const;

  Polynomial multiply(const Polynomial& other, unsigned order = kNoTruncation) const;
  Polynomial truncated(unsigned order) const;
  Polynomial homogeneous_part(unsigned degree) const;
  /// f(images[0], ..., images[n-1]) truncated at `order`.
  Polynomial substitute(std::span<const Polynomial> images, unsigned order = kNoTruncation) const;

  bool operator==(const Polynomial& other) const { return nvars_ == other.nvars_ && terms_ == other.terms_; }

  std::string to_string(std::span<const std::string> names) const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

using PolyVector = std::vector<Polynomial>;

PolyVector apply(const Matrix& m, std::span<const Polynomial> v);
bool is_zero(std::span<const Polynomial> v);
PolyVector truncated(std::span<const Polynomial> v, unsigned order);

/// Incremental row echelon form over sparse rows keyed by an ordered type.
/// Pivot rows have pairwise distinct leading keys and unit leading coefficient.
template <typename Key>
class SparseEchelon {
 public:
  using Row = std::map<Key, Scalar>;

  /// Reduces `row` against the current pivots until its leading key is not a
  /// pivot; the result is zero iff `row` lies in the span.
  Row reduce(Row row) const {
    while (!row.empty()) {
      auto lead = row.begin();
      auto pivot = pivots_.find(lead->first);
      if (pivot == pivots_.end()) break;
      const Scalar factor = lead->second;
      for (const auto& [key, value] : pivot->second) {
        auto it = row.find(key);
        if (it == row.end()) {
          row.emplace(key, -factor * value);
        } else {
          it->second -= factor * value;
          if (sgn(it->second) == 0) row.erase(it);
        }
      }
    }
    return row;
  }

  bool contains(const Row& row) const { return reduce(row).empty(); }

  /// Returns true if the row enlarged the span.
  bool insert(const Row& row) {
    Row r = reduce(row);
    if (r.empty()) return false;
    const Scalar inv = 1 / r.begin()->second;
    for (auto& [key, value] : r) value *= inv;
    const Key lead = r.begin()->first;
    pivots_.emplace(lead, std::move(r));
    return true;
  }

  std::size_t rank() const noexcept { return pivots_.size(); }
  const std::map<Key, Row>& pivots() const noexcept { return pivots_; }

 private:
  std::map<Key, Row> pivots_;
};

}  // namespace dglakit

#endif  // DGLAKIT_POLYNOMIAL_HPP
