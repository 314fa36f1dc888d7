#include "dglakit/homalg.hpp"

#include <algorithm>

namespace dglakit {

namespace {

constexpr std::size_t kMaxPathLength = 40;

Matrix columns_to_matrix(std::size_t rows, const std::vector<Vector>& cols) {
  return Matrix::from_columns(rows, cols);
}

// Solves b * x = m column by column; nullopt if some column is not in the span.
std::optional<Matrix> solve_columns(const Matrix& b, const Matrix& m) {
  Matrix x(b.cols(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto col = solve(b, m.column(c));
    if (!col) return std::nullopt;
    for (std::size_t r = 0; r < b.cols(); ++r) x(r, c) = (*col)[r];
  }
  return x;
}

Matrix sub_block(const Matrix& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = m(r0 + r, c0 + c);
  return out;
}

void put_block(Matrix& m, std::size_t r0, std::size_t c0, const Matrix& b) {
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m(r0 + r, c0 + c) = b(r, c);
}

std::string degree_text(int k) { return std::to_string(k); }

}  // namespace

// ---------------------------------------------------------------- path algebra

PathAlgebra::PathAlgebra(std::vector<std::string> vertices, std::vector<Arrow> arrows, std::vector<Relation> relations)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  const std::size_t nv = vertices_.size();
  if (nv == 0) throw Error(ErrorKind::InvalidArgument, "a path algebra needs at least one vertex");
  for (const auto& a : arrows_) {
    if (a.source >= nv || a.target >= nv) throw Error(ErrorKind::InvalidArgument, "arrow " + a.name + " has an unknown endpoint");
  }
  // relation shapes
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> shape;  // (length, source, target)
  for (auto& r : relations) {
    Relation clean;
    for (auto& [p, c] : r.terms)
      if (sgn(c) != 0) clean.terms.emplace_back(p, c);
    if (clean.terms.empty()) continue;
    std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> s;
    for (const auto& [p, c] : clean.terms) {
      if (p.size() < 2) throw Error(ErrorKind::InvalidArgument, "relations must have paths of length >= 2");
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] >= arrows_.size()) throw Error(ErrorKind::InvalidArgument, "relation uses an unknown arrow");
        if (k > 0 && arrows_[p[k - 1]].target != arrows_[p[k]].source) {
          throw Error(ErrorKind::InvalidArgument, "relation path is not composable");
        }
      }
      std::tuple<std::size_t, std::size_t, std::size_t> t{p.size(), arrows_[p.front()].source, arrows_[p.back()].target};
      if (s && *s != t) throw Error(ErrorKind::InvalidArgument, "relation terms must be parallel paths of equal length");
      s = t;
    }
    shape.push_back(*s);
    relations_.push_back(std::move(clean));
  }

  // paths by length: (source, path)
  std::vector<std::vector<std::pair<std::size_t, Path>>> by_length(1);
  for (std::size_t v = 0; v < nv; ++v) by_length[0].push_back({v, {}});
  auto target_of = [&](std::size_t source, const Path& p) { return p.empty() ? source : arrows_[p.back()].target; };

  std::size_t length = 0;
  for (;; ++length) {
    if (length > kMaxPathLength) {
      throw Error(ErrorKind::InvalidArgument, "path algebra is not finite-dimensional (nonzero paths of length > " +
                                                  std::to_string(kMaxPathLength) + ")");
    }
    if (length > 0) {
      std::vector<std::pair<std::size_t, Path>> next;
      for (const auto& [s, p] : by_length[length - 1]) {
        const std::size_t t = target_of(s, p);
        for (std::size_t a = 0; a < arrows_.size(); ++a) {
          if (arrows_[a].source != t) continue;
          Path q = p;
          q.push_back(a);
          next.push_back({s, std::move(q)});
        }
      }
      by_length.push_back(std::move(next));
    }
    // blocks at this length
    std::map<std::pair<std::size_t, std::size_t>, Block> here;
    for (const auto& [s, p] : by_length[length]) {
      Block& b = here[{s, target_of(s, p)}];
      b.index[p] = b.paths.size();
      b.paths.push_back(p);
    }
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Vector>> gens;
    for (std::size_t ri = 0; ri < relations_.size(); ++ri) {
      const auto [m, rs, rt] = shape[ri];
      if (m > length) continue;
      for (std::size_t pre = 0; pre + m <= length; ++pre) {
        const std::size_t post = length - m - pre;
        for (const auto& [us, u] : by_length[pre]) {
          if (target_of(us, u) != rs) continue;
          for (const auto& [ws, w] : by_length[post]) {
            if (ws != rt) continue;
            const std::size_t t = target_of(ws, w);
            Block& b = here.at({us, t});
            Vector row(b.paths.size(), Scalar(0));
            for (const auto& [p, c] : relations_[ri].terms) {
              Path full = u;
              full.insert(full.end(), p.begin(), p.end());
              full.insert(full.end(), w.begin(), w.end());
              row[b.index.at(full)] += c;
            }
            gens[{us, t}].push_back(std::move(row));
          }
        }
      }
    }
    std::size_t level_dim = 0;
    for (auto& [key, b] : here) {
      auto g = gens.find(key);
      if (g != gens.end()) {
        b.ideal = rref(Matrix::from_rows(b.paths.size(), g->second));
      } else {
        b.ideal.reduced = Matrix(0, b.paths.size());
      }
      std::vector<bool> pivot(b.paths.size(), false);
      for (auto p : b.ideal.pivots) pivot[p] = true;
      for (std::size_t c = 0; c < b.paths.size(); ++c) {
        if (pivot[c]) continue;
        b.free_columns.push_back(c);
        b.basis_ids.push_back(basis_.size());
        between_[key].push_back(basis_.size());
        basis_.push_back({key.first, key.second, b.paths[c]});
        ++level_dim;
      }
      blocks_.emplace(std::tuple{length, key.first, key.second}, std::move(b));
    }
    if (length == 0) {
      idempotent_.resize(nv);
      for (std::size_t v = 0; v < nv; ++v) idempotent_[v] = between_[{v, v}].front();
    }
    if (length > 0 && level_dim == 0) break;
  }

  left_mult_.reserve(basis_.size());
  for (std::size_t b = 0; b < basis_.size(); ++b) {
    std::vector<Vector> cols;
    for (std::size_t c = 0; c < basis_.size(); ++c) cols.push_back(multiply(b, c));
    left_mult_.push_back(columns_to_matrix(basis_.size(), cols));
  }
}

std::string PathAlgebra::basis_label(std::size_t b) const {
  const auto& p = basis_.at(b);
  if (p.path.empty()) return "e_" + vertices_[p.source];
  std::string out;
  for (std::size_t k = 0; k < p.path.size(); ++k) {
    if (k) out += ".";
    out += arrows_[p.path[k]].name;
  }
  return out;
}

const std::vector<std::size_t>& PathAlgebra::paths_between(std::size_t source, std::size_t target) const {
  static const std::vector<std::size_t> none;
  auto it = between_.find({source, target});
  return it == between_.end() ? none : it->second;
}

Vector PathAlgebra::reduce(std::size_t source, const Path& p) const {
  Vector out(basis_.size(), Scalar(0));
  std::size_t t = source;
  for (auto a : p) {
    if (arrows_.at(a).source != t) throw Error(ErrorKind::InvalidArgument, "path is not composable");
    t = arrows_[a].target;
  }
  auto it = blocks_.find({p.size(), source, t});
  if (it == blocks_.end()) return out;
  const Block& b = it->second;
  const std::size_t col = b.index.at(p);
  auto free = std::find(b.free_columns.begin(), b.free_columns.end(), col);
  if (free != b.free_columns.end()) {
    out[b.basis_ids[free - b.free_columns.begin()]] = 1;
    return out;
  }
  const std::size_t row = std::find(b.ideal.pivots.begin(), b.ideal.pivots.end(), col) - b.ideal.pivots.begin();
  for (std::size_t k = 0; k < b.free_columns.size(); ++k) out[b.basis_ids[k]] = -b.ideal.reduced(row, b.free_columns[k]);
  return out;
}

Vector PathAlgebra::multiply(std::size_t a, std::size_t b) const {
  const auto& pa = basis_.at(a);
  const auto& pb = basis_.at(b);
  if (pb.target != pa.source) return Vector(basis_.size(), Scalar(0));
  Path p = pb.path;
  p.insert(p.end(), pa.path.begin(), pa.path.end());
  return reduce(pb.source, p);
}

// ---------------------------------------------------------------- modules

std::size_t AlgebraModule::dim() const {
  std::size_t total = 0;
  for (auto d : dims) total += d;
  return total;
}

std::size_t AlgebraModule::offset(std::size_t vertex) const {
  std::size_t total = 0;
  for (std::size_t v = 0; v < vertex; ++v) total += dims[v];
  return total;
}

AlgebraModule zero_module(const PathAlgebra& a) {
  AlgebraModule m;
  m.dims.assign(a.vertex_count(), 0);
  for (std::size_t k = 0; k < a.arrows().size(); ++k) m.arrows.emplace_back(0, 0);
  return m;
}

void validate_module(const PathAlgebra& a, const AlgebraModule& m) {
  if (m.dims.size() != a.vertex_count() || m.arrows.size() != a.arrows().size()) {
    throw Error(ErrorKind::ShapeMismatch, "module needs one space per vertex and one map per arrow");
  }
  for (std::size_t k = 0; k < a.arrows().size(); ++k) {
    const auto& arrow = a.arrows()[k];
    if (m.arrows[k].rows() != m.dims[arrow.target] || m.arrows[k].cols() != m.dims[arrow.source]) {
      throw Error(ErrorKind::ShapeMismatch, "map for arrow " + arrow.name + " has the wrong shape");
    }
  }
  for (std::size_t r = 0; r < a.relations().size(); ++r) {
    const auto& rel = a.relations()[r];
    const std::size_t s = a.arrows()[rel.terms.front().first.front()].source;
    const std::size_t t = a.arrows()[rel.terms.front().first.back()].target;
    Matrix acc(m.dims[t], m.dims[s]);
    for (const auto& [p, c] : rel.terms) acc = acc + path_action(a, m, s, p) * c;
    if (!acc.is_zero()) {
      throw Error(ErrorKind::InvariantViolation, "relation " + std::to_string(r) + " does not vanish on the module");
    }
  }
}

Matrix path_action(const PathAlgebra&, const AlgebraModule& m, std::size_t source, const Path& p) {
  Matrix acc = Matrix::identity(m.dims.at(source));
  for (auto k : p) acc = m.arrows.at(k) * acc;
  return acc;
}

Matrix basis_action(const PathAlgebra& a, const AlgebraModule& m, std::size_t b) {
  const auto& bp = a.basis().at(b);
  Matrix out(m.dim(), m.dim());
  put_block(out, m.offset(bp.target), m.offset(bp.source), path_action(a, m, bp.source, bp.path));
  return out;
}

ModuleMap zero_map(const AlgebraModule& from, const AlgebraModule& to) {
  ModuleMap f;
  for (std::size_t v = 0; v < from.dims.size(); ++v) f.blocks.emplace_back(to.dims[v], from.dims[v]);
  return f;
}

ModuleMap identity_map(const AlgebraModule& m) {
  ModuleMap f;
  for (auto d : m.dims) f.blocks.push_back(Matrix::identity(d));
  return f;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap out;
  for (std::size_t v = 0; v < f.blocks.size(); ++v) out.blocks.push_back(g.blocks.at(v) * f.blocks[v]);
  return out;
}

ModuleMap add(const ModuleMap& f, const ModuleMap& g) {
  ModuleMap out;
  for (std::size_t v = 0; v < f.blocks.size(); ++v) out.blocks.push_back(f.blocks[v] + g.blocks.at(v));
  return out;
}

ModuleMap scale(const ModuleMap& f, const Scalar& s) {
  ModuleMap out;
  for (const auto& b : f.blocks) out.blocks.push_back(b * s);
  return out;
}

bool is_module_map(const PathAlgebra& a, const AlgebraModule& from, const AlgebraModule& to, const ModuleMap& f) {
  if (f.blocks.size() != a.vertex_count()) return false;
  for (std::size_t v = 0; v < f.blocks.size(); ++v)
    if (f.blocks[v].rows() != to.dims[v] || f.blocks[v].cols() != from.dims[v]) return false;
  for (std::size_t k = 0; k < a.arrows().size(); ++k) {
    const auto& arrow = a.arrows()[k];
    if (!(to.arrows[k] * f.blocks[arrow.source] == f.blocks[arrow.target] * from.arrows[k])) return false;
  }
  return true;
}

Matrix global_matrix(const AlgebraModule& from, const AlgebraModule& to, const ModuleMap& f) {
  Matrix out(to.dim(), from.dim());
  for (std::size_t v = 0; v < f.blocks.size(); ++v) put_block(out, to.offset(v), from.offset(v), f.blocks[v]);
  return out;
}

ModuleMap from_global(const AlgebraModule& from, const AlgebraModule& to, const Matrix& m) {
  ModuleMap f;
  for (std::size_t v = 0; v < from.dims.size(); ++v)
    f.blocks.push_back(sub_block(m, to.offset(v), from.offset(v), to.dims[v], from.dims[v]));
  return f;
}

AlgebraModule indecomposable_projective(const PathAlgebra& a, std::size_t vertex) {
  AlgebraModule m;
  const std::size_t nv = a.vertex_count();
  std::vector<std::map<std::size_t, std::size_t>> position(nv);
  for (std::size_t w = 0; w < nv; ++w) {
    const auto& ids = a.paths_between(vertex, w);
    m.dims.push_back(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) position[w][ids[i]] = i;
  }
  for (std::size_t k = 0; k < a.arrows().size(); ++k) {
    const auto& arrow = a.arrows()[k];
    Matrix x(m.dims[arrow.target], m.dims[arrow.source]);
    const auto& ids = a.paths_between(vertex, arrow.source);
    for (std::size_t c = 0; c < ids.size(); ++c) {
      Path p = a.basis()[ids[c]].path;
      p.push_back(k);
      const Vector v = a.reduce(vertex, p);
      for (const auto& [id, r] : position[arrow.target]) x(r, c) = v[id];
    }
    m.arrows.push_back(std::move(x));
  }
  return m;
}

AlgebraModule simple_module(const PathAlgebra& a, std::size_t vertex) {
  AlgebraModule m = zero_module(a);
  m.dims.at(vertex) = 1;
  for (std::size_t k = 0; k < a.arrows().size(); ++k)
    m.arrows[k] = Matrix(m.dims[a.arrows()[k].target], m.dims[a.arrows()[k].source]);
  return m;
}

AlgebraModule direct_sum(const AlgebraModule& m, const AlgebraModule& n) {
  AlgebraModule out;
  for (std::size_t v = 0; v < m.dims.size(); ++v) out.dims.push_back(m.dims[v] + n.dims.at(v));
  for (std::size_t k = 0; k < m.arrows.size(); ++k) {
    std::vector<Matrix> blocks{m.arrows[k], n.arrows.at(k)};
    out.arrows.push_back(block_diagonal(blocks));
  }
  return out;
}

Submodule submodule(const PathAlgebra& a, const AlgebraModule& m, const std::vector<Matrix>& bases) {
  Submodule s;
  for (std::size_t v = 0; v < bases.size(); ++v) s.module.dims.push_back(bases[v].cols());
  for (std::size_t k = 0; k < a.arrows().size(); ++k) {
    const auto& arrow = a.arrows()[k];
    auto x = solve_columns(bases[arrow.target], m.arrows[k] * bases[arrow.source]);
    if (!x) throw Error(ErrorKind::InvalidArgument, "subspaces are not stable under arrow " + arrow.name);
    s.module.arrows.push_back(std::move(*x));
  }
  s.inclusion.blocks = bases;
  return s;
}

Submodule module_kernel(const PathAlgebra& a, const AlgebraModule& from, const AlgebraModule&, const ModuleMap& f) {
  std::vector<Matrix> bases;
  for (std::size_t v = 0; v < from.dims.size(); ++v) {
    if (from.dims[v] == 0) {
      bases.emplace_back(0, 0);
      continue;
    }
    bases.push_back(kernel(f.blocks[v]).basis_matrix());
  }
  return submodule(a, from, bases);
}

ModuleMap restrict_map(const Submodule& s, const Submodule& t, const ModuleMap& f) {
  ModuleMap out;
  for (std::size_t v = 0; v < f.blocks.size(); ++v) {
    auto x = solve_columns(t.inclusion.blocks[v], f.blocks[v] * s.inclusion.blocks[v]);
    if (!x) throw Error(ErrorKind::InvalidArgument, "map does not preserve the submodule");
    out.blocks.push_back(std::move(*x));
  }
  return out;
}

// ---------------------------------------------------------------- covers

namespace {

// Direct sum of P_{v_c} over the copies, with the offset of each copy inside
// every vertex space.
struct ProjectiveSum {
  AlgebraModule module;
  std::vector<std::vector<std::size_t>> copy_offset;  // [copy][vertex]
};

ProjectiveSum projective_sum(const PathAlgebra& a, const std::vector<std::size_t>& vertices) {
  ProjectiveSum out;
  out.module = zero_module(a);
  std::vector<AlgebraModule> cache(a.vertex_count());
  std::vector<bool> have(a.vertex_count(), false);
  for (auto v : vertices) {
    if (!have[v]) {
      cache[v] = indecomposable_projective(a, v);
      have[v] = true;
    }
    std::vector<std::size_t> offs;
    for (std::size_t w = 0; w < a.vertex_count(); ++w) offs.push_back(out.module.dims[w]);
    out.copy_offset.push_back(std::move(offs));
    out.module = direct_sum(out.module, cache[v]);
  }
  return out;
}

struct MinimalCover {
  ProjectiveSum sum;
  std::vector<std::size_t> vertices;
  Matrix map;  // global, sum -> M
};

MinimalCover minimal_cover(const PathAlgebra& a, const AlgebraModule& m) {
  MinimalCover out;
  std::vector<Vector> tops;
  for (std::size_t v = 0; v < a.vertex_count(); ++v) {
    if (m.dims[v] == 0) continue;
    std::vector<Vector> images;
    for (std::size_t k = 0; k < a.arrows().size(); ++k) {
      if (a.arrows()[k].target != v) continue;
      for (std::size_t c = 0; c < m.arrows[k].cols(); ++c) images.push_back(m.arrows[k].column(c));
    }
    const Subspace rad = Subspace::span(m.dims[v], images);
    for (auto& t : complement(rad, Subspace::full(m.dims[v])).basis()) {
      out.vertices.push_back(v);
      tops.push_back(std::move(t));
    }
  }
  out.sum = projective_sum(a, out.vertices);
  out.map = Matrix(m.dim(), out.sum.module.dim());
  for (std::size_t c = 0; c < out.vertices.size(); ++c) {
    const std::size_t v = out.vertices[c];
    for (std::size_t w = 0; w < a.vertex_count(); ++w) {
      const auto& ids = a.paths_between(v, w);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        const Vector image = path_action(a, m, v, a.basis()[ids[i]].path) * std::span<const Scalar>(tops[c]);
        const std::size_t col = out.sum.module.offset(w) + out.sum.copy_offset[c][w] + i;
        for (std::size_t r = 0; r < image.size(); ++r) out.map(m.offset(w) + r, col) = image[r];
      }
    }
  }
  return out;
}

}  // namespace

FreeCover free_cover(const PathAlgebra& a, const AlgebraModule& m) {
  FreeCover out;
  std::vector<std::size_t> vertices;
  for (std::size_t v = 0; v < a.vertex_count(); ++v)
    for (std::size_t k = 0; k < m.dims[v]; ++k) {
      out.copies.push_back({v, k});
      vertices.push_back(v);
    }
  ProjectiveSum sum = projective_sum(a, vertices);
  out.module = sum.module;
  Matrix pi(m.dim(), out.module.dim());
  for (std::size_t c = 0; c < out.copies.size(); ++c) {
    const auto [v, k] = out.copies[c];
    for (std::size_t w = 0; w < a.vertex_count(); ++w) {
      const auto& ids = a.paths_between(v, w);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        const Matrix act = path_action(a, m, v, a.basis()[ids[i]].path);
        const std::size_t col = out.module.offset(w) + sum.copy_offset[c][w] + i;
        for (std::size_t r = 0; r < act.rows(); ++r) pi(m.offset(w) + r, col) = act(r, k);
      }
    }
  }
  out.projection = from_global(out.module, m, pi);
  return out;
}

ModuleMap free_cover_map(const PathAlgebra& a, const FreeCover& from, const FreeCover& to, const ModuleMap& f) {
  // copy (v, k) -> sum_j f_v(j, k) copy (v, j), identity on P_v
  auto copy_offsets = [&](const FreeCover& c) {
    std::vector<std::vector<std::size_t>> offs;
    std::vector<std::size_t> running(a.vertex_count(), 0);
    for (const auto& [v, k] : c.copies) {
      offs.push_back(running);
      for (std::size_t w = 0; w < a.vertex_count(); ++w) running[w] += a.paths_between(v, w).size();
    }
    return offs;
  };
  const auto from_off = copy_offsets(from);
  const auto to_off = copy_offsets(to);
  ModuleMap out = zero_map(from.module, to.module);
  for (std::size_t c = 0; c < from.copies.size(); ++c) {
    const auto [v, k] = from.copies[c];
    for (std::size_t d = 0; d < to.copies.size(); ++d) {
      const auto [v2, j] = to.copies[d];
      if (v2 != v) continue;
      const Scalar coef = f.blocks[v](j, k);
      if (sgn(coef) == 0) continue;
      for (std::size_t w = 0; w < a.vertex_count(); ++w) {
        const std::size_t n = a.paths_between(v, w).size();
        for (std::size_t i = 0; i < n; ++i) out.blocks[w](to_off[d][w] + i, from_off[c][w] + i) += coef;
      }
    }
  }
  return out;
}

std::optional<ProjectiveDecomposition> projective_decomposition(const PathAlgebra& a, const AlgebraModule& m) {
  MinimalCover cover = minimal_cover(a, m);
  if (cover.sum.module.dim() != m.dim()) return std::nullopt;
  return ProjectiveDecomposition{cover.vertices, cover.sum.module, cover.map};
}

bool is_projective(const PathAlgebra& a, const AlgebraModule& m) { return projective_decomposition(a, m).has_value(); }

std::size_t global_dimension_bound(const PathAlgebra& a) { return std::max<std::size_t>(8, 2 * a.dim()); }

std::vector<std::size_t> simple_projective_dimensions(const PathAlgebra& a, std::size_t bound) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < a.vertex_count(); ++v) {
    AlgebraModule m = simple_module(a, v);
    std::size_t step = 0;
    for (;; ++step) {
      if (step > bound) {
        throw Error(ErrorKind::InfiniteGlobalDimension, "resolution of the simple at " + a.vertices()[v] +
                                                            " does not stop within " + std::to_string(bound) + " steps");
      }
      MinimalCover cover = minimal_cover(a, m);
      if (cover.sum.module.dim() == m.dim()) break;
      ModuleMap rho = from_global(cover.sum.module, m, cover.map);
      m = module_kernel(a, cover.sum.module, m, rho).module;
    }
    out.push_back(step);
  }
  return out;
}

std::size_t global_dimension(const PathAlgebra& a) {
  auto dims = simple_projective_dimensions(a, global_dimension_bound(a));
  return dims.empty() ? 0 : *std::max_element(dims.begin(), dims.end());
}

// ---------------------------------------------------------------- complexes

std::pair<int, int> amplitude(const BoundedComplex& c) {
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& [i, m] : c.terms) {
    if (m.is_zero()) continue;
    if (!any) lo = i;
    hi = i;
    any = true;
  }
  return {lo, hi};
}

AlgebraModule term(const PathAlgebra& a, const BoundedComplex& c, int degree) {
  auto it = c.terms.find(degree);
  return it == c.terms.end() ? zero_module(a) : it->second;
}

ModuleMap differential(const PathAlgebra& a, const BoundedComplex& c, int degree) {
  auto it = c.differentials.find(degree);
  if (it != c.differentials.end()) return it->second;
  return zero_map(term(a, c, degree), term(a, c, degree + 1));
}

ModuleMap chain_component(const PathAlgebra& a, const BoundedComplex& from, const BoundedComplex& to,
                          const ChainMap& f, int degree) {
  auto it = f.maps.find(degree);
  if (it != f.maps.end()) return it->second;
  return zero_map(term(a, from, degree), term(a, to, degree));
}

namespace {

std::pair<int, int> degree_range(const BoundedComplex& c) {
  int lo = 0, hi = 0;
  bool any = false;
  auto see = [&](int d) {
    lo = any ? std::min(lo, d) : d;
    hi = any ? std::max(hi, d) : d;
    any = true;
  };
  for (const auto& [i, m] : c.terms) see(i);
  for (const auto& [i, m] : c.differentials) {
    see(i);
    see(i + 1);
  }
  return {lo, hi};
}

Matrix global_differential(const PathAlgebra& a, const BoundedComplex& c, int degree) {
  return global_matrix(term(a, c, degree), term(a, c, degree + 1), differential(a, c, degree));
}

}  // namespace

void validate_complex(const PathAlgebra& a, const BoundedComplex& c) {
  for (const auto& [i, m] : c.terms) {
    try {
      validate_module(a, m);
    } catch (const Error& e) {
      throw Error(e.kind(), "term " + degree_text(i) + ": " + e.what());
    }
  }
  for (const auto& [i, d] : c.differentials) {
    if (!is_module_map(a, term(a, c, i), term(a, c, i + 1), d)) {
      throw Error(ErrorKind::InvariantViolation, "differential " + degree_text(i) + " is not a module map of the right shape");
    }
  }
  const auto [lo, hi] = degree_range(c);
  for (int i = lo; i < hi; ++i) {
    if (!(global_differential(a, c, i + 1) * global_differential(a, c, i)).is_zero()) {
      throw Error(ErrorKind::InvariantViolation, "d^2 != 0 starting in degree " + degree_text(i));
    }
  }
}

bool is_chain_map(const PathAlgebra& a, const BoundedComplex& from, const BoundedComplex& to, const ChainMap& f) {
  auto [lo1, hi1] = degree_range(from);
  auto [lo2, hi2] = degree_range(to);
  for (const auto& [i, m] : f.maps) {
    if (!is_module_map(a, term(a, from, i), term(a, to, i), m)) return false;
  }
  for (int i = std::min(lo1, lo2) - 1; i <= std::max(hi1, hi2); ++i) {
    const Matrix lhs = global_matrix(term(a, from, i + 1), term(a, to, i + 1), chain_component(a, from, to, f, i + 1)) *
                       global_differential(a, from, i);
    const Matrix rhs = global_differential(a, to, i) *
                       global_matrix(term(a, from, i), term(a, to, i), chain_component(a, from, to, f, i));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

std::map<int, std::size_t> cohomology_dims(const PathAlgebra& a, const BoundedComplex& c) {
  std::map<int, std::size_t> out;
  const auto [lo, hi] = degree_range(c);
  for (int i = lo; i <= hi; ++i) {
    const std::size_t n = term(a, c, i).dim();
    const std::size_t r_out = rank(global_differential(a, c, i));
    const std::size_t r_in = rank(global_differential(a, c, i - 1));
    const std::size_t h = n - r_out - r_in;
    if (h > 0) out[i] = h;
  }
  return out;
}

bool is_quasi_isomorphism(const PathAlgebra& a, const BoundedComplex& from, const BoundedComplex& to,
                          const ChainMap& f) {
  // cone C^i = from^{i+1} + to^i, d(x, y) = (-d x, f x + d y)
  auto [lo1, hi1] = degree_range(from);
  auto [lo2, hi2] = degree_range(to);
  const int lo = std::min(lo1 - 1, lo2) - 1;
  const int hi = std::max(hi1 - 1, hi2) + 1;
  auto cone_d = [&](int i) {
    const Matrix dx = global_differential(a, from, i + 1);
    const Matrix fx = global_matrix(term(a, from, i + 1), term(a, to, i + 1), chain_component(a, from, to, f, i + 1));
    const Matrix dy = global_differential(a, to, i);
    Matrix top = hstack(-dx, Matrix(dx.rows(), dy.cols()));
    Matrix bottom = hstack(fx, dy);
    return vstack(top, bottom);
  };
  for (int i = lo; i <= hi; ++i) {
    const std::size_t n = term(a, from, i + 1).dim() + term(a, to, i).dim();
    if (n != rank(cone_d(i)) + rank(cone_d(i - 1))) return false;
  }
  return true;
}

// ---------------------------------------------------------------- replacement

Replacement projective_replacement(const PathAlgebra& a, const BoundedComplex& f,
                                   const std::vector<ChainMap>& automorphisms) {
  validate_complex(a, f);
  Replacement out;
  out.global_dimension = global_dimension(a);
  for (std::size_t g = 0; g < automorphisms.size(); ++g) {
    const auto& aut = automorphisms[g];
    if (!is_chain_map(a, f, f, aut)) {
      throw Error(ErrorKind::NotAnAutomorphism, "automorphism " + std::to_string(g) + " is not a chain map");
    }
    for (const auto& [i, m] : f.terms) {
      const Matrix gm = global_matrix(m, m, chain_component(a, f, f, aut, i));
      if (gm.rows() > 0 && sgn(determinant(gm)) == 0) {
        throw Error(ErrorKind::NotAnAutomorphism, "automorphism " + std::to_string(g) + " is singular in degree " +
                                                      degree_text(i));
      }
    }
  }
  const auto [lo, hi] = amplitude(f);
  if (hi < lo) return out;

  const std::size_t naut = automorphisms.size();
  AlgebraModule p_next = zero_module(a);            // P^{i+1}
  AlgebraModule p_next2 = zero_module(a);           // P^{i+2}
  ModuleMap d_next = zero_map(p_next, p_next2);     // d : P^{i+1} -> P^{i+2}
  ModuleMap eps_next = zero_map(p_next, term(a, f, hi + 1));
  std::vector<ModuleMap> alpha_next(naut, zero_map(p_next, p_next));

  const int floor = lo - static_cast<int>(out.global_dimension) - 2;
  for (int i = hi;; --i) {
    if (i < floor) throw Error(ErrorKind::InfiniteGlobalDimension, "replacement did not terminate");
    const AlgebraModule fi = term(a, f, i);
    const AlgebraModule fi1 = term(a, f, i + 1);
    const AlgebraModule e = direct_sum(p_next, fi);
    const AlgebraModule target = direct_sum(p_next2, fi1);
    // Phi(p, x) = (d p, eps p - d x)
    const ModuleMap df = differential(a, f, i);
    ModuleMap phi;
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
      Matrix top = hstack(d_next.blocks[v], Matrix(p_next2.dims[v], fi.dims[v]));
      Matrix bottom = hstack(eps_next.blocks[v], -df.blocks[v]);
      phi.blocks.push_back(vstack(top, bottom));
    }
    Submodule w = module_kernel(a, e, target, phi);
    if (i < lo && w.module.is_zero()) break;

    std::vector<ModuleMap> alpha_w;
    for (std::size_t g = 0; g < naut; ++g) {
      ModuleMap ae;
      const ModuleMap af = chain_component(a, f, f, automorphisms[g], i);
      for (std::size_t v = 0; v < a.vertex_count(); ++v) {
        std::vector<Matrix> blocks{alpha_next[g].blocks[v], af.blocks[v]};
        ae.blocks.push_back(block_diagonal(blocks));
      }
      alpha_w.push_back(restrict_map(w, w, ae));
    }

    AlgebraModule q;
    ModuleMap to_e;  // Q -> E
    std::vector<ModuleMap> alpha_q;
    if (is_projective(a, w.module)) {
      q = w.module;
      to_e = w.inclusion;
      alpha_q = alpha_w;
    } else {
      FreeCover cover = free_cover(a, w.module);
      q = cover.module;
      to_e = compose(w.inclusion, cover.projection);
      for (const auto& aw : alpha_w) alpha_q.push_back(free_cover_map(a, cover, cover, aw));
    }
    ModuleMap d_i, eps_i;
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
      const Matrix& t = to_e.blocks[v];
      d_i.blocks.push_back(sub_block(t, 0, 0, p_next.dims[v], t.cols()));
      eps_i.blocks.push_back(sub_block(t, p_next.dims[v], 0, fi.dims[v], t.cols()));
    }
    if (!q.is_zero()) {
      out.complex.terms[i] = q;
      if (!p_next.is_zero()) out.complex.differentials[i] = d_i;
      if (!fi.is_zero()) out.comparison.maps[i] = eps_i;
    }
    p_next2 = p_next;
    p_next = q;
    d_next = d_i;
    eps_next = eps_i;
    alpha_next = alpha_q;
    out.automorphisms.resize(naut);
    for (std::size_t g = 0; g < naut; ++g)
      if (!q.is_zero()) out.automorphisms[g].maps[i] = alpha_q[g];
  }
  out.automorphisms.resize(naut);

  for (const auto& [i, m] : out.complex.terms) {
    if (!is_projective(a, m)) throw Error(ErrorKind::InvariantViolation, "replacement term " + degree_text(i) + " is not projective");
  }
  if (!is_quasi_isomorphism(a, out.complex, f, out.comparison)) {
    throw Error(ErrorKind::InvariantViolation, "replacement is not a quasi-isomorphism");
  }
  return out;
}

// ---------------------------------------------------------------- Hom DGLA

namespace {

// Unknowns: the per-vertex blocks of f : M -> N, row-major, vertex by vertex.
std::size_t hom_ambient(const AlgebraModule& m, const AlgebraModule& n) {
  std::size_t total = 0;
  for (std::size_t v = 0; v < m.dims.size(); ++v) total += m.dims[v] * n.dims[v];
  return total;
}

Subspace hom_space(const PathAlgebra& a, const AlgebraModule& m, const AlgebraModule& n) {
  const std::size_t amb = hom_ambient(m, n);
  std::vector<std::size_t> start;
  std::size_t pos = 0;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    start.push_back(pos);
    pos += m.dims[v] * n.dims[v];
  }
  // N(a) f_s - f_t M(a) = 0
  std::vector<Vector> rows;
  for (std::size_t k = 0; k < a.arrows().size(); ++k) {
    const auto [name, s, t] = a.arrows()[k];
    const Matrix& na = n.arrows[k];  // n_t x n_s
    const Matrix& ma = m.arrows[k];  // m_t x m_s
    for (std::size_t r = 0; r < n.dims[t]; ++r)
      for (std::size_t c = 0; c < m.dims[s]; ++c) {
        Vector row(amb, Scalar(0));
        for (std::size_t j = 0; j < n.dims[s]; ++j) row[start[s] + j * m.dims[s] + c] += na(r, j);
        for (std::size_t j = 0; j < m.dims[t]; ++j) row[start[t] + r * m.dims[t] + j] -= ma(j, c);
        rows.push_back(std::move(row));
      }
  }
  if (rows.empty()) return Subspace::full(amb);
  return kernel(Matrix::from_rows(amb, rows));
}

Matrix hom_vector_to_global(const AlgebraModule& m, const AlgebraModule& n, std::span<const Scalar> x) {
  Matrix out(n.dim(), m.dim());
  std::size_t pos = 0;
  for (std::size_t v = 0; v < m.dims.size(); ++v)
    for (std::size_t r = 0; r < n.dims[v]; ++r)
      for (std::size_t c = 0; c < m.dims[v]; ++c) out(n.offset(v) + r, m.offset(v) + c) = x[pos++];
  return out;
}

Vector global_to_hom_vector(const AlgebraModule& m, const AlgebraModule& n, const Matrix& g) {
  Vector out;
  for (std::size_t v = 0; v < m.dims.size(); ++v)
    for (std::size_t r = 0; r < n.dims[v]; ++r)
      for (std::size_t c = 0; c < m.dims[v]; ++c) out.push_back(g(n.offset(v) + r, m.offset(v) + c));
  return out;
}

}  // namespace

std::vector<Matrix> hom_basis(const PathAlgebra& a, const AlgebraModule& m, const AlgebraModule& n) {
  std::vector<Matrix> out;
  for (const auto& b : hom_space(a, m, n).basis()) out.push_back(hom_vector_to_global(m, n, b));
  return out;
}

Vector HomComplex::coordinates(int degree, const Matrix& m) const {
  Vector out;
  for (std::size_t ri = 0; ri < term_degrees.size(); ++ri) {
    const int r = term_degrees[ri];
    const int s = r + degree;
    auto it = std::find(term_degrees.begin(), term_degrees.end(), s);
    if (it == term_degrees.end()) continue;
    const std::size_t si = it - term_degrees.begin();
    const auto& space = hom_spaces.at({r, s});
    if (space.dim() == 0) continue;
    const Matrix block = sub_block(m, term_offsets[si], term_offsets[ri], term_dims[si], term_dims[ri]);
    const Vector flat = global_to_hom_vector(term_modules[ri], term_modules[si], block);
    if (!space.contains(flat)) throw Error(ErrorKind::InvariantViolation, "element is not a module map");
    const Vector c = space.coordinates(flat);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

HomComplex hom_complex(const PathAlgebra& a, const BoundedComplex& p) {
  validate_complex(a, p);
  HomComplex hc;
  for (const auto& [i, m] : p.terms) {
    if (m.is_zero()) continue;
    hc.term_degrees.push_back(i);
    hc.term_offsets.push_back(hc.total_dim);
    hc.term_dims.push_back(m.dim());
    hc.term_modules.push_back(m);
    hc.total_dim += m.dim();
  }
  const std::size_t nt = hc.term_degrees.size();
  const std::size_t total = hc.total_dim;

  Matrix d_total(total, total);
  for (std::size_t ri = 0; ri + 1 < nt; ++ri) {
    if (hc.term_degrees[ri + 1] != hc.term_degrees[ri] + 1) continue;
    const int r = hc.term_degrees[ri];
    put_block(d_total, hc.term_offsets[ri + 1], hc.term_offsets[ri],
              global_matrix(hc.term_modules[ri], hc.term_modules[ri + 1], differential(a, p, r)));
  }

  std::map<int, std::vector<std::string>> labels;
  for (std::size_t ri = 0; ri < nt; ++ri)
    for (std::size_t si = 0; si < nt; ++si) {
      const int r = hc.term_degrees[ri], s = hc.term_degrees[si];
      Subspace space = hom_space(a, hc.term_modules[ri], hc.term_modules[si]);
      std::vector<Matrix> blocks;
      for (const auto& b : space.basis()) blocks.push_back(hom_vector_to_global(hc.term_modules[ri], hc.term_modules[si], b));
      hc.hom_spaces.emplace(DegreePair{r, s}, std::move(space));
      hc.hom_basis.emplace(DegreePair{r, s}, blocks);
    }
  // basis of L^k in the same order as coordinates(): by source degree r
  for (std::size_t ri = 0; ri < nt; ++ri)
    for (std::size_t si = 0; si < nt; ++si) {
      const int r = hc.term_degrees[ri], s = hc.term_degrees[si];
      const int k = s - r;
      const auto& blocks = hc.hom_basis.at({r, s});
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        Matrix g(total, total);
        put_block(g, hc.term_offsets[si], hc.term_offsets[ri], blocks[b]);
        hc.basis[k].push_back(std::move(g));
        labels[k].push_back("P" + degree_text(r) + ">P" + degree_text(s) + "_" + std::to_string(b + 1));
      }
    }
  // coordinates() walks r ascending; the loop above does too, so orders agree
  std::map<int, std::size_t> dims;
  for (const auto& [k, b] : hc.basis)
    if (!b.empty()) dims[k] = b.size();

  std::map<int, Matrix> d;
  for (const auto& [k, basis] : hc.basis) {
    auto next = hc.basis.find(k + 1);
    if (next == hc.basis.end() || next->second.empty() || basis.empty()) continue;
    std::vector<Vector> cols;
    const Scalar sign = (k % 2 == 0) ? 1 : -1;
    for (const auto& f : basis) cols.push_back(hc.coordinates(k + 1, d_total * f - f * d_total * sign));
    Matrix dk = Matrix::from_columns(next->second.size(), cols);
    if (!dk.is_zero()) d.emplace(k, std::move(dk));
  }

  BracketTable bracket;
  for (const auto& [p_deg, bp] : hc.basis)
    for (const auto& [q_deg, bq] : hc.basis) {
      if (p_deg > q_deg) continue;
      auto target = hc.basis.find(p_deg + q_deg);
      if (target == hc.basis.end() || target->second.empty()) continue;
      const Scalar sign = ((p_deg * q_deg) % 2 == 0) ? 1 : -1;
      std::vector<StructureConstant> entries;
      for (std::size_t i = 0; i < bp.size(); ++i)
        for (std::size_t j = 0; j < bq.size(); ++j) {
          const Matrix c = bp[i] * bq[j] - bq[j] * bp[i] * sign;
          if (c.is_zero()) continue;
          const Vector coords = hc.coordinates(p_deg + q_deg, c);
          for (std::size_t k = 0; k < coords.size(); ++k)
            if (sgn(coords[k]) != 0) entries.push_back({i, j, k, coords[k]});
        }
      if (!entries.empty()) bracket[{p_deg, q_deg}] = std::move(entries);
    }
  hc.dgla = DgLieAlgebra(GradedVectorSpace(dims, labels), std::move(d), std::move(bracket));
  return hc;
}

DgLieAlgebra hom_complex_dgla(const PathAlgebra& a, const BoundedComplex& p) { return hom_complex(a, p).dgla; }

// ---------------------------------------------------------------- traces

Scalar hattori_stallings_trace(const PathAlgebra& a, const ProjectiveDecomposition& d, const Matrix& endo,
                               std::span<const Scalar> frobenius) {
  const Matrix psi = inverse(d.iso) * endo * d.iso;
  std::vector<std::size_t> running(a.vertex_count(), 0);
  Scalar total = 0;
  for (const auto v : d.summands) {
    const auto& loops = a.paths_between(v, v);
    const std::size_t base = d.sum.offset(v) + running[v];
    const std::size_t gen = base + static_cast<std::size_t>(
                                       std::find(loops.begin(), loops.end(), a.idempotent(v)) - loops.begin());
    for (std::size_t i = 0; i < loops.size(); ++i) total += psi(base + i, gen) * frobenius[loops[i]];
    for (std::size_t w = 0; w < a.vertex_count(); ++w) running[w] += a.paths_between(v, w).size();
  }
  return total;
}

void check_frobenius_form(const PathAlgebra& a, std::span<const Scalar> frobenius) {
  if (frobenius.size() != a.dim()) {
    throw Error(ErrorKind::ShapeMismatch, "Frobenius form needs " + std::to_string(a.dim()) + " values");
  }
  const std::size_t n = a.dim();
  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector prod = a.multiply(i, j);
      Scalar s = 0;
      for (std::size_t c = 0; c < n; ++c) s += prod[c] * frobenius[c];
      gram(i, j) = s;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (gram(i, j) != gram(j, i)) {
        throw Error(ErrorKind::NotSymmetric, "lambda(" + a.basis_label(i) + " * " + a.basis_label(j) + ") = " +
                                                 to_string(gram(i, j)) + " but lambda(" + a.basis_label(j) + " * " +
                                                 a.basis_label(i) + ") = " + to_string(gram(j, i)));
      }
  if (sgn(determinant(gram)) == 0) throw Error(ErrorKind::DegenerateForm, "the form lambda(ab) is degenerate");
}

CyclicPairing trace_pairing(const PathAlgebra& a, const BoundedComplex& p, std::span<const Scalar> frobenius) {
  check_frobenius_form(a, frobenius);
  HomComplex hc = hom_complex(a, p);
  std::vector<ProjectiveDecomposition> decomp;
  for (std::size_t ri = 0; ri < hc.term_degrees.size(); ++ri) {
    auto d = projective_decomposition(a, hc.term_modules[ri]);
    if (!d) throw Error(ErrorKind::NotProjective, "term " + degree_text(hc.term_degrees[ri]) + " is not projective");
    decomp.push_back(std::move(*d));
  }
  auto supertrace = [&](const Matrix& x) {
    Scalar total = 0;
    for (std::size_t ri = 0; ri < hc.term_degrees.size(); ++ri) {
      const std::size_t off = hc.term_offsets[ri], n = hc.term_dims[ri];
      const Scalar t = hattori_stallings_trace(a, decomp[ri], sub_block(x, off, off, n, n), frobenius);
      total += (hc.term_degrees[ri] % 2 == 0) ? t : Scalar(-t);
    }
    return total;
  };
  CyclicPairing out;
  out.degree = 0;
  for (const auto& [k, bk] : hc.basis) {
    auto other = hc.basis.find(-k);
    if (bk.empty() || other == hc.basis.end() || other->second.empty()) continue;
    Matrix block(bk.size(), other->second.size());
    for (std::size_t i = 0; i < bk.size(); ++i)
      for (std::size_t j = 0; j < other->second.size(); ++j) block(i, j) = supertrace(bk[i] * other->second[j]);
    out.blocks.emplace(DegreePair{k, -k}, std::move(block));
  }
  return out;
}

}  // namespace dglakit
