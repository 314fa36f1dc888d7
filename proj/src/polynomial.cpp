#include "dglakit/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dglakit {

Monomial::Monomial(std::vector<unsigned> exps)
    : exps_(std::move(exps)), degree_(std::accumulate(exps_.begin(), exps_.end(), 0u)) {}

Monomial Monomial::variable(std::size_t nvars, std::size_t index) {
  std::vector<unsigned> e(nvars, 0);
  e.at(index) = 1;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (nvars() != other.nvars()) throw Error(ErrorKind::DimensionMismatch, "monomial product: variable count mismatch");
  std::vector<unsigned> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
  return Monomial(std::move(e));
}

bool Monomial::operator<(const Monomial& other) const {
  if (degree_ != other.degree_) return degree_ < other.degree_;
  return std::lexicographical_compare(other.exps_.begin(), other.exps_.end(), exps_.begin(), exps_.end());
}

std::string Monomial::to_string(std::span<const std::string> names) const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!first) out << '*';
    first = false;
    out << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
    if (exps_[i] > 1) out << '^' << exps_[i];
  }
  if (first) out << '1';
  return out.str();
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  std::vector<unsigned> e(nvars, 0);
  // Enumerate compositions with the first variable's exponent descending,
  // which is exactly monomial order within a degree.
  auto rec = [&](auto&& self, std::size_t index, unsigned remaining) -> void {
    if (index + 1 == nvars) {
      e[index] = remaining;
      out.emplace_back(e);
      return;
    }
    for (unsigned k = remaining + 1; k-- > 0;) {
      e[index] = k;
      self(self, index + 1, remaining - k);
    }
    e[index] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

Polynomial Polynomial::constant(std::size_t nvars, const Scalar& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index, const Scalar& c) {
  Polynomial p(nvars);
  p.add_term(Monomial::variable(nvars, index), c);
  return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const Scalar& c) {
  Polynomial p(m.nvars());
  p.add_term(m, c);
  return p;
}

unsigned Polynomial::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

unsigned Polynomial::valuation() const { return terms_.empty() ? kNoTruncation : terms_.begin()->first.degree(); }

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (m.nvars() != nvars_) throw Error(ErrorKind::DimensionMismatch, "polynomial: variable count mismatch");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.nvars_ != nvars_) throw Error(ErrorKind::DimensionMismatch, "polynomial sum: variable count mismatch");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.nvars_ != nvars_) throw Error(ErrorKind::DimensionMismatch, "polynomial difference: variable count mismatch");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out(*this);
  out += other;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial out(*this);
  out -= other;
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::operator*(const Scalar& s) const {
  Polynomial out(*this);
  out *= s;
  return out;
}

Polynomial Polynomial::multiply(const Polynomial& other, unsigned order) const {
  if (other.nvars_ != nvars_) throw Error(ErrorKind::DimensionMismatch, "polynomial product: variable count mismatch");
  Polynomial out(nvars_);
  for (const auto& [ma, ca] : terms_) {
    if (ma.degree() > order) break;
    for (const auto& [mb, cb] : other.terms_) {
      if (ma.degree() + mb.degree() > order) break;
      out.add_term(ma * mb, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::truncated(unsigned order) const {
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() > order) break;
    out.terms_.emplace(m, c);
  }
  return out;
}

Polynomial Polynomial::homogeneous_part(unsigned degree) const {
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_)
    if (m.degree() == degree) out.terms_.emplace(m, c);
  return out;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images, unsigned order) const {
  if (images.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "substitute: one image per variable required");
  const std::size_t target_vars = images.empty() ? 0 : images.front().nvars();
  Polynomial out(target_vars);
  // Cache powers of each image.
  std::vector<std::vector<Polynomial>> powers(nvars_);
  for (const auto& [m, c] : terms_) {
    Polynomial term = Polynomial::constant(target_vars, c);
    for (std::size_t i = 0; i < nvars_ && !term.is_zero(); ++i) {
      const unsigned e = m[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Polynomial::constant(target_vars, 1));
      while (pw.size() <= e) pw.push_back(pw.back().multiply(images[i], order));
      term = term.multiply(pw[e], order);
    }
    out += term.truncated(order);
  }
  return out;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = sgn(c) < 0;
    const Scalar magnitude = abs(c);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit = magnitude == 1;
    if (m.degree() == 0) {
      out << dglakit::to_string(magnitude);
    } else {
      if (!unit) out << dglakit::to_string(magnitude) << '*';
      out << m.to_string(names);
    }
  }
  return out.str();
}

PolyVector apply(const Matrix& m, std::span<const Polynomial> v) {
  if (m.cols() != v.size()) throw Error(ErrorKind::ShapeMismatch, "matrix-polynomial product: length mismatch");
  const std::size_t nvars = v.empty() ? 0 : v.front().nvars();
  PolyVector out(m.rows(), Polynomial(nvars));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) != 0 && !v[c].is_zero()) out[r] += v[c] * m(r, c);
  return out;
}

bool is_zero(std::span<const Polynomial> v) {
  return std::all_of(v.begin(), v.end(), [](const Polynomial& p) { return p.is_zero(); });
}

PolyVector truncated(std::span<const Polynomial> v, unsigned order) {
  PolyVector out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(p.truncated(order));
  return out;
}

}  // namespace dglakit
