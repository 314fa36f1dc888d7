#include "dglakit/quiver.hpp"

namespace dglakit {

namespace {

SparseEchelon<Monomial>::Row as_row(const Polynomial& p) {
  return SparseEchelon<Monomial>::Row(p.terms().begin(), p.terms().end());
}

}  // namespace

std::size_t QuiverModel::opposite(std::size_t k) const {
  const std::size_t m = edges.size();
  if (k >= doubled.size()) throw Error(ErrorKind::InvalidArgument, "edge index out of range");
  return k < m ? k + m : k - m;
}

std::size_t QuiverModel::rep_dim() const {
  std::size_t total = 0;
  for (const auto& e : doubled) total += dims[e.target] * dims[e.source];
  return total;
}

std::size_t QuiverModel::gauge_dim() const {
  std::size_t total = 0;
  for (auto n : dims) total += n * n;
  return total;
}

QuiverModel build_quiver(const PolystableData& data) {
  const std::size_t s = data.summands.size();
  if (data.multiplicities.size() != s || data.ext.size() != s) {
    throw Error(ErrorKind::ShapeMismatch, "polystable data: summands, multiplicities and ext sizes differ");
  }
  for (const auto& row : data.ext)
    if (row.size() != s) throw Error(ErrorKind::ShapeMismatch, "ext matrix must be square");
  for (std::size_t i = 0; i < s; ++i) {
    if (data.multiplicities[i] == 0) throw Error(ErrorKind::InvariantViolation, "multiplicities must be positive");
    if (data.ext[i][i] % 2 != 0) {
      throw Error(ErrorKind::OddDiagonal, "ext(" + data.summands[i] + ", " + data.summands[i] + ") = " +
                                              std::to_string(data.ext[i][i]) + " is odd");
    }
    for (std::size_t j = 0; j < s; ++j) {
      if (!data.allow_asymmetric && data.ext[i][j] != data.ext[j][i]) {
        throw Error(ErrorKind::InvariantViolation, "ext matrix is not symmetric at (" + std::to_string(i) + ", " +
                                                       std::to_string(j) + ")");
      }
    }
  }
  QuiverModel q;
  q.vertices = data.summands;
  q.dims = data.multiplicities;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i; j < s; ++j) {
      const unsigned count = i == j ? data.ext[i][i] / 2 : data.ext[i][j];
      for (unsigned k = 0; k < count; ++k) {
        std::string name = "e" + std::to_string(i + 1) + std::to_string(j + 1);
        if (count > 1) name += "_" + std::to_string(k + 1);
        q.edges.push_back({i, j, name});
      }
    }
  }
  q.doubled = q.edges;
  for (const auto& e : q.edges) q.doubled.push_back({e.target, e.source, e.name + "*"});
  return q;
}

QuiverModel opposite_quiver(const QuiverModel& q) {
  QuiverModel out = q;
  for (auto& e : out.edges) std::swap(e.source, e.target);
  for (auto& e : out.doubled) std::swap(e.source, e.target);
  return out;
}

Scalar MomentValue::trace_sum() const {
  Scalar total = 0;
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.rows(); ++i) total += b(i, i);
  return total;
}

void require_shapes(const QuiverModel& q, const RepPoint& p) {
  if (p.matrices.size() != q.doubled.size()) throw Error(ErrorKind::ShapeMismatch, "one matrix per doubled edge required");
  for (std::size_t k = 0; k < q.doubled.size(); ++k) {
    const auto& e = q.doubled[k];
    if (p.matrices[k].rows() != q.dims[e.target] || p.matrices[k].cols() != q.dims[e.source]) {
      throw Error(ErrorKind::ShapeMismatch, "matrix for edge " + e.name + " has the wrong shape");
    }
  }
}

MomentValue moment_map(const QuiverModel& q, const RepPoint& p) {
  require_shapes(q, p);
  MomentValue mu;
  for (auto n : q.dims) mu.blocks.emplace_back(n, n);
  for (std::size_t k = 0; k < q.edge_count(); ++k) {
    const auto& e = q.edges[k];
    const Matrix& x = p.matrices[k];
    const Matrix& y = p.matrices[q.opposite(k)];
    mu.blocks[e.target] = mu.blocks[e.target] + x * y;
    mu.blocks[e.source] = mu.blocks[e.source] - y * x;
  }
  return mu;
}

RepPoint act(const QuiverModel& q, const RepPoint& p, const std::vector<Matrix>& g) {
  require_shapes(q, p);
  if (g.size() != q.vertex_count()) throw Error(ErrorKind::ShapeMismatch, "one group block per vertex required");
  std::vector<Matrix> inv;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].rows() != q.dims[i] || g[i].cols() != q.dims[i]) {
      throw Error(ErrorKind::ShapeMismatch, "group block at vertex " + q.vertices[i] + " has the wrong shape");
    }
    inv.push_back(inverse(g[i]));
  }
  RepPoint out;
  for (std::size_t k = 0; k < q.doubled.size(); ++k) {
    const auto& e = q.doubled[k];
    out.matrices.push_back(g[e.target] * p.matrices[k] * inv[e.source]);
  }
  return out;
}

bool equivariance_check(const QuiverModel& q, const RepPoint& p, const std::vector<Matrix>& g) {
  const MomentValue lhs = moment_map(q, act(q, p, g));
  const MomentValue mu = moment_map(q, p);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(lhs.blocks[i] == g[i] * mu.blocks[i] * inverse(g[i]))) return false;
  }
  return true;
}

RepPoint swap_orientation(const QuiverModel& q, const RepPoint& p) {
  require_shapes(q, p);
  RepPoint out;
  for (std::size_t k = 0; k < q.doubled.size(); ++k) out.matrices.push_back(p.matrices[q.opposite(k)]);
  return out;
}

RepPoint point_from_coordinates(const QuiverModel& q, std::span<const Scalar> coords) {
  if (coords.size() != q.rep_dim()) throw Error(ErrorKind::ShapeMismatch, "coordinate vector length != dim Rep");
  RepPoint p;
  std::size_t pos = 0;
  for (const auto& e : q.doubled) {
    Matrix m(q.dims[e.target], q.dims[e.source]);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = coords[pos++];
    p.matrices.push_back(std::move(m));
  }
  return p;
}

MomentEquations moment_equations(const QuiverModel& q) {
  MomentEquations out;
  auto& ring = out.map.ring;
  ring.order = 2;
  for (const auto& e : q.doubled) {
    const bool opp = e.name.back() == '*';
    const std::string base = opp ? "y_" + e.name.substr(0, e.name.size() - 1) : "x_" + e.name;
    for (std::size_t r = 0; r < q.dims[e.target]; ++r)
      for (std::size_t c = 0; c < q.dims[e.source]; ++c)
        ring.variables.push_back(base + "_" + std::to_string(r + 1) + std::to_string(c + 1));
  }
  const std::size_t nv = ring.nvars();
  // symbolic point: matrices of variables
  std::vector<std::vector<Polynomial>> mats;
  std::size_t pos = 0;
  for (const auto& e : q.doubled) {
    std::vector<Polynomial> m;
    for (std::size_t t = 0; t < q.dims[e.target] * q.dims[e.source]; ++t) m.push_back(Polynomial::variable(nv, pos++));
    mats.push_back(std::move(m));
  }
  std::vector<std::vector<Polynomial>> blocks;
  for (auto n : q.dims) blocks.emplace_back(n * n, Polynomial(nv));
  auto mult_into = [&](std::vector<Polynomial>& acc, const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                       std::size_t rows, std::size_t inner, std::size_t cols, const Scalar& sign) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t t = 0; t < inner; ++t) acc[r * cols + c] += a[r * inner + t].multiply(b[t * cols + c]) * sign;
  };
  for (std::size_t k = 0; k < q.edge_count(); ++k) {
    const auto& e = q.edges[k];
    const std::size_t ns = q.dims[e.source], nt = q.dims[e.target];
    const auto& x = mats[k];                 // nt x ns
    const auto& y = mats[q.opposite(k)];     // ns x nt
    mult_into(blocks[e.target], x, y, nt, ns, nt, 1);
    mult_into(blocks[e.source], y, x, ns, nt, ns, -1);
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::size_t n = q.dims[i];
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        out.map.components.push_back(blocks[i][r * n + c]);
        out.map.target_labels.push_back("mu_" + q.vertices[i] + "_" + std::to_string(r + 1) + std::to_string(c + 1));
      }
  }
  out.map.target_dim = out.map.components.size();
  out.span_dim = span_dim(out.map.components);
  return out;
}

std::size_t span_dim(const std::vector<Polynomial>& a) {
  SparseEchelon<Monomial> e;
  for (const auto& p : a)
    if (!p.is_zero()) e.insert(as_row(p));
  return e.rank();
}

bool same_span(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  SparseEchelon<Monomial> ea, eb;
  for (const auto& p : a)
    if (!p.is_zero()) ea.insert(as_row(p));
  for (const auto& p : b)
    if (!p.is_zero()) eb.insert(as_row(p));
  if (ea.rank() != eb.rank()) return false;
  for (const auto& p : b)
    if (!ea.contains(as_row(p))) return false;
  return true;
}

LocalModelComparison compare_local_models(const DgLieAlgebra& l, const Splitting& s, const QuiverModel& q,
                                          const Matrix& ident_h1, const Matrix& ident_h2) {
  require_splitting_of(l, s);
  const std::size_t h1 = s.at(1).harmonic.dim();
  const std::size_t h2 = s.at(2).harmonic.dim();
  if (h1 != q.rep_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "dim H^1 = " + std::to_string(h1) + " but dim Rep = " +
                                                  std::to_string(q.rep_dim()));
  }
  if (h2 != q.gauge_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "dim H^2 = " + std::to_string(h2) + " but sum n_i^2 = " +
                                                  std::to_string(q.gauge_dim()));
  }
  if (ident_h1.rows() != h1 || ident_h1.cols() != h1 || ident_h2.rows() != h2 || ident_h2.cols() != h2) {
    throw Error(ErrorKind::DimensionMismatch, "identification matrices have the wrong shape");
  }
  if (h1 > 0 && sgn(determinant(ident_h1)) == 0) throw Error(ErrorKind::NotInvertible, "H^1 identification is singular");
  if (h2 > 0 && sgn(determinant(ident_h2)) == 0) throw Error(ErrorKind::NotInvertible, "H^2 identification is singular");

  const TruncatedPolynomialMap k2 = quadratic_part(l, s);
  std::vector<Polynomial> left = h2 ? dglakit::apply(ident_h2, k2.components) : std::vector<Polynomial>{};

  const MomentEquations mu = moment_equations(q);
  std::vector<Polynomial> images;
  for (std::size_t r = 0; r < h1; ++r) {
    Polynomial p(h1);
    for (std::size_t c = 0; c < h1; ++c) p.add_term(Monomial::variable(h1, c), ident_h1(r, c));
    images.push_back(std::move(p));
  }
  std::vector<Polynomial> right;
  for (const auto& comp : mu.map.components) right.push_back(comp.substitute(images, 2));

  LocalModelComparison out;
  out.span_equal = same_span(left, right);
  out.quadratic_span_dim = span_dim(left);
  out.moment_span_dim = span_dim(right);
  // look for one scalar c with left = c * right
  std::optional<Scalar> c;
  bool proportional = true;
  for (std::size_t i = 0; i < right.size() && proportional; ++i) {
    if (right[i].is_zero()) {
      proportional = left[i].is_zero();
      continue;
    }
    const auto& [m, coef] = *right[i].terms().begin();
    const Scalar ratio = left[i].coefficient(m) / coef;
    if (c && *c != ratio) proportional = false;
    c = ratio;
    if (!(left[i] == right[i] * ratio)) proportional = false;
  }
  if (proportional && c && sgn(*c) != 0) out.proportionality = c;
  return out;
}

}  // namespace dglakit
