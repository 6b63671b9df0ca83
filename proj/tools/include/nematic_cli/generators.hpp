#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "nematic/field.hpp"
#include "nematic/qtensor.hpp"

namespace nematic::cli {

/// "name key=value key=value ..." as written in [initial] generator and
/// [ensemble] member lines.
struct GeneratorSpec {
  std::string name;
  std::map<std::string, std::string> args;

  static GeneratorSpec parse(const std::string& text);
  double number(const std::string& key, std::optional<double> fallback = std::nullopt) const;
};

/// Initial data: a scalar amplitude with its director, or a tensor field read
/// from a file.
struct InitialData {
  std::optional<ScalarField> scalar;
  std::optional<TensorField> tensor;
  Vec3 director{0.0, 0.0, 1.0};

  TensorField as_tensor() const;
  /// Throws ConfigError for tensor-valued data.
  ScalarField as_scalar() const;
};

/// Generators: uniaxial_power_tail alpha= [delta=], plateau radius= [value=],
/// gaussian amp= [t=], zero, file path=. The first three accept
/// director=x,y,z. Relative file paths resolve against base_dir.
InitialData generate(const GeneratorSpec& spec, const GridSpec& grid, const ModelParams& p,
                     const std::filesystem::path& base_dir);

}  // namespace nematic::cli
