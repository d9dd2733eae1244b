#ifndef GAQ_MODEL_HPP
#define GAQ_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaq/measures.hpp"

namespace gaq {

inline constexpr std::string_view kModelHeader = "gaq-model v1";

struct ExpectedValue {
  std::string text;
  std::size_t line = 0;
};

struct DomainBound {
  std::string coordinate;
  /// Strict lower bound (coordinate > value) or upper bound (coordinate < value).
  bool lower = true;
  Scalar value;
};

struct ModelConfig {
  std::string name;
  std::vector<std::string> parameters;

  // [group]
  std::vector<Coordinate> coordinates;
  std::vector<std::string> labels;
  std::vector<RationalExpr> law;
  std::vector<DomainBound> domain;

  // [extension]
  RationalExpr lambda;
  std::vector<LogTerm> logs;
  std::optional<RationalExpr> cocycle;

  // [casimir]
  std::optional<ScalarMatrix> casimir_matrix;
  std::optional<Scalar> killing_scale;

  // [polarization]
  bool enumerate = false;
  std::vector<Vector> generators;
  bool half_rho = false;

  // [ansatz]
  bool has_ansatz = false;
  WaveAnsatz ansatz;
  std::optional<Chart> chart;
  RationalExpr weight = RationalExpr(1);

  // [measure]
  bool rho_monomial = false;
  std::size_t samples = 12;

  std::map<std::string, ExpectedValue> expect;
  /// Parameters already replaced by values; applied to expectations too.
  Point fixed_parameters;

  std::set<std::string> coordinate_names() const;
  /// Coordinates, parameters and the fiber symbol.
  std::set<std::string> base_symbols() const;
  GroupLaw group() const;
  GeneratingFunction generating_function() const;
  /// Replace parameters by values everywhere (used for sign-specific runs).
  ModelConfig with_parameters(const Point& values) const;
};

/// Throws ParseError (with line/column) or ModelError.
ModelConfig parse_model(std::string_view text);

/// Shipped models by name; nullopt for an unknown name.
std::optional<std::string_view> builtin_model(std::string_view name);
std::vector<std::string> builtin_model_names();

}  // namespace gaq

#endif  // GAQ_MODEL_HPP
