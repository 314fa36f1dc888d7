#ifndef DGLAKIT_IO_HPP
#define DGLAKIT_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dglakit/dgla.hpp"
#include "dglakit/formality.hpp"
#include "dglakit/homalg.hpp"
#include "dglakit/quiver.hpp"

namespace dglakit {

using Json = nlohmann::ordered_json;

enum class FixtureKind { Dgla, Quiver, PathAlgebraComplex };

std::string_view kind_name(FixtureKind kind);

struct DglaFixture {
  DgLieAlgebra algebra;
  std::optional<GroupAction> action;
  std::map<std::string, CyclicPairing> pairings;
  std::optional<Involution> involution;

  bool operator==(const DglaFixture& other) const = default;
};

/// A DGLA fixture (by reference) with identifications H^1 = Rep and H^2 = sum gl(n_i).
struct LocalModelSpec {
  std::string dgla;
  Matrix h1_identification;
  Matrix h2_identification;

  bool operator==(const LocalModelSpec& other) const = default;
};

struct QuiverFixture {
  PolystableData data;
  std::optional<LocalModelSpec> local_model;

  bool operator==(const QuiverFixture& other) const = default;
};

struct ComplexFixtureFile {
  PathAlgebra algebra;
  BoundedComplex complex;
  std::vector<ChainMap> automorphisms;
  std::optional<Vector> frobenius;

  bool operator==(const ComplexFixtureFile& other) const = default;
};

struct FixtureFile {
  std::string name;
  std::string description;
  std::variant<DglaFixture, QuiverFixture, ComplexFixtureFile> payload;

  FixtureKind kind() const { return static_cast<FixtureKind>(payload.index()); }
  bool operator==(const FixtureFile& other) const = default;
};

struct ParseOptions {
  /// Skip the DGLA axiom checks (shapes are still enforced).
  bool check_axioms = true;
};

/// Throws ParseError (with line), SchemaViolation (with field path) or
/// InvariantViolation (with witness).
FixtureFile parse_fixture_text(const std::string& text, const ParseOptions& options = {});
FixtureFile parse_fixture_json(const Json& j, const ParseOptions& options = {});
FixtureFile parse_fixture(const std::string& path, const ParseOptions& options = {});

Json serialize_fixture(const FixtureFile& f);
std::string dump_fixture(const FixtureFile& f);
/// Two-space indentation with arrays of scalars kept on one line.
std::string pretty_json(const Json& j);

/// Matrices are arrays of rows of rational strings.
Json matrix_to_json(const Matrix& m);
Json vector_to_json(std::span<const Scalar> v);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

std::vector<std::string> builtin_fixture_names();
/// Throws InvalidArgument for unknown names. Accepts "commuting" and
/// "nonformal" as short names, and a trailing ".json".
FixtureFile builtin_fixture(const std::string& name);

/// A path, then $DGLAKIT_FIXTURE_DIR/<ref>(.json), then the builtin library.
FixtureFile resolve_fixture(const std::string& ref, const ParseOptions& options = {});

}  // namespace dglakit

#endif  // DGLAKIT_IO_HPP
