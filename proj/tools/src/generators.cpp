#include "nematic_cli/generators.hpp"

#include <charconv>
#include <sstream>

#include "nematic/initial_data.hpp"
#include "nematic/snapshot_io.hpp"
#include "nematic_cli/config.hpp"

namespace nematic::cli {

namespace {

std::optional<double> parse_number(const std::string& s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

Vec3 parse_director(const GeneratorSpec& spec) {
  auto it = spec.args.find("director");
  if (it == spec.args.end()) return {0.0, 0.0, 1.0};
  Vec3 d{};
  std::istringstream in(it->second);
  std::string item;
  int k = 0;
  while (std::getline(in, item, ',')) {
    const auto v = parse_number(item);
    if (!v || k > 2) throw ConfigError("generator " + spec.name + ": director must be x,y,z");
    d[k++] = *v;
  }
  if (k != 3 || norm(d) == 0.0) throw ConfigError("generator " + spec.name + ": director must be a nonzero x,y,z");
  return d;
}

void allow_only(const GeneratorSpec& spec, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : spec.args) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) throw ConfigError("generator " + spec.name + ": unknown argument '" + k + "'");
  }
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(const std::string& text) {
  std::istringstream in(text);
  GeneratorSpec spec;
  if (!(in >> spec.name)) throw ConfigError("empty generator spec");
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("generator " + spec.name + ": expected key=value, got '" + tok + "'");
    }
    if (!spec.args.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) {
      throw ConfigError("generator " + spec.name + ": duplicate argument '" + tok.substr(0, eq) + "'");
    }
  }
  return spec;
}

double GeneratorSpec::number(const std::string& key, std::optional<double> fallback) const {
  auto it = args.find(key);
  if (it == args.end()) {
    if (!fallback) throw ConfigError("generator " + name + ": missing argument '" + key + "'");
    return *fallback;
  }
  const auto v = parse_number(it->second);
  if (!v) throw ConfigError("generator " + name + ": " + key + " must be a number, got '" + it->second + "'");
  return *v;
}

TensorField InitialData::as_tensor() const {
  if (tensor) return *tensor;
  return uniaxial_lift_along(*scalar, director);
}

ScalarField InitialData::as_scalar() const {
  if (!scalar) throw ConfigError("scalar equation needs scalar initial data (got a tensor field)");
  return *scalar;
}

InitialData generate(const GeneratorSpec& spec, const GridSpec& grid, const ModelParams& p,
                     const std::filesystem::path& base_dir) {
  InitialData d;
  if (spec.name == "uniaxial_power_tail") {
    allow_only(spec, {"alpha", "delta", "director"});
    const double alpha = spec.number("alpha");
    const double delta = spec.number("delta", p.delta());
    if (!(alpha >= 0.0) || !(delta > 0.0)) throw ConfigError("uniaxial_power_tail: need alpha >= 0 and delta > 0");
    d.scalar = power_tail_amplitude(grid, alpha, delta);
  } else if (spec.name == "plateau") {
    allow_only(spec, {"radius", "value", "director"});
    const double radius = spec.number("radius");
    if (!(radius > 0.0)) throw ConfigError("plateau: radius must be positive");
    d.scalar = plateau_amplitude(grid, radius, spec.number("value", lambda_star(p)));
  } else if (spec.name == "gaussian") {
    allow_only(spec, {"amp", "t", "director"});
    const double t = spec.number("t", 1.0);
    if (!(t > 0.0)) throw ConfigError("gaussian: t must be positive");
    d.scalar = gaussian_amplitude(grid, spec.number("amp"), t);
  } else if (spec.name == "zero") {
    allow_only(spec, {});
    d.scalar = ScalarField(grid);
  } else if (spec.name == "file") {
    allow_only(spec, {"path"});
    auto it = spec.args.find("path");
    if (it == spec.args.end()) throw ConfigError("generator file: missing argument 'path'");
    std::filesystem::path path = it->second;
    if (path.is_relative()) path = base_dir / path;
    if (snapshot_kind(path) == SnapshotKind::Scalar) {
      d.scalar = read_scalar_snapshot(path);
    } else {
      d.tensor = read_tensor_snapshot(path);
    }
    const GridSpec& g = d.tensor ? d.tensor->grid() : d.scalar->grid();
    if (!(g == grid)) throw ConfigError("generator file: " + path.string() + " does not match the [grid] section");
    return d;
  } else {
    throw ConfigError("unknown generator '" + spec.name + "'");
  }
  d.director = parse_director(spec);
  return d;
}

}  // namespace nematic::cli
