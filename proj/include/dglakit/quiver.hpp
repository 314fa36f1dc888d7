#ifndef DGLAKIT_QUIVER_HPP
#define DGLAKIT_QUIVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "dglakit/dgla.hpp"
#include "dglakit/kuranishi.hpp"

namespace dglakit {

struct PolystableData {
  std::vector<std::string> summands;
  std::vector<std::size_t> multiplicities;
  /// ext[i][j] = dim Ext^1(F_i, F_j).
  std::vector<std::vector<unsigned>> ext;
  /// Accept a non-symmetric ext matrix.
  bool allow_asymmetric = false;

  bool operator==(const PolystableData& other) const = default;
};

struct QuiverEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  std::string name;
};

/// Edges E followed by their opposites: doubled[k + |E|] is the opposite of
/// doubled[k].
struct QuiverModel {
  std::vector<std::string> vertices;
  std::vector<std::size_t> dims;
  std::vector<QuiverEdge> edges;
  std::vector<QuiverEdge> doubled;

  std::size_t vertex_count() const noexcept { return vertices.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }
  std::size_t opposite(std::size_t doubled_index) const;
  /// dim Rep(Q-bar) = sum over doubled edges of n_t * n_s.
  std::size_t rep_dim() const;
  /// sum_i n_i^2.
  std::size_t gauge_dim() const;
};

/// e_ij edges i -> j for i < j and e_ii / 2 loops at i. Throws OddDiagonal,
/// ShapeMismatch, or InvariantViolation for an asymmetric ext matrix.
QuiverModel build_quiver(const PolystableData& data);
/// The same vertices with every edge reversed.
QuiverModel opposite_quiver(const QuiverModel& q);

/// One n_t x n_s matrix per doubled edge.
struct RepPoint {
  std::vector<Matrix> matrices;
};

struct MomentValue {
  std::vector<Matrix> blocks;

  Scalar trace_sum() const;
};

void require_shapes(const QuiverModel& q, const RepPoint& p);
/// Block at vertex i: + x_e y_e over edges into i, - y_e x_e over edges out of i.
MomentValue moment_map(const QuiverModel& q, const RepPoint& p);
/// x_e -> g_t x_e g_s^{-1} on every doubled edge.
RepPoint act(const QuiverModel& q, const RepPoint& p, const std::vector<Matrix>& g);
/// mu(g p) == g mu(p) g^{-1} blockwise.
bool equivariance_check(const QuiverModel& q, const RepPoint& p, const std::vector<Matrix>& g);
/// The point of the opposite quiver obtained by exchanging x_e and y_e; its
/// moment map is -mu.
RepPoint swap_orientation(const QuiverModel& q, const RepPoint& p);

/// Coordinates: entries of each doubled-edge matrix, row-major, in edge order.
RepPoint point_from_coordinates(const QuiverModel& q, std::span<const Scalar> coords);

struct MomentEquations {
  TruncatedPolynomialMap map;
  std::size_t span_dim = 0;
};

/// One variable per matrix entry; components are the entries of mu, vertex
/// by vertex, row-major.
MomentEquations moment_equations(const QuiverModel& q);

struct LocalModelComparison {
  bool span_equal = false;
  std::size_t quadratic_span_dim = 0;
  std::size_t moment_span_dim = 0;
  /// c with T kappa_2 = c mu(phi x) componentwise, when one exists and the maps are nonzero.
  std::optional<Scalar> proportionality;
};

/// ident_h1 : H^1 -> Rep (dim Rep x dim H^1), ident_h2 : H^2 -> sum gl(n_i)
/// (sum n_i^2 x dim H^2). Compares the span of T kappa_2(x) with the span of
/// mu(ident_h1 x). Throws DimensionMismatch or NotInvertible.
LocalModelComparison compare_local_models(const DgLieAlgebra& l, const Splitting& s, const QuiverModel& q,
                                          const Matrix& ident_h1, const Matrix& ident_h2);

/// Equality of the linear spans of two lists of polynomials.
bool same_span(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b);
std::size_t span_dim(const std::vector<Polynomial>& a);

}  // namespace dglakit

#endif  // DGLAKIT_QUIVER_HPP
