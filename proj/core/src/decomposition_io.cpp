#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nematic/errors.hpp"
#include "nematic/fixedpoint.hpp"
#include "nematic/snapshot_io.hpp"

namespace nematic {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string node_file(std::size_t k) {
  std::ostringstream s;
  s << "V_t" << k << ".qtf1";
  return s.str();
}

void write_json(const fs::path& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

ordered_json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInput("cannot open " + path.string());
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace

void save_decomposition(const fs::path& dir, const DecompositionState& s, const ModelParams& p) {
  fs::create_directories(dir);
  const auto c = s.A.components();
  write_json(dir / "A.json", ordered_json{{"q11", c[0]}, {"q22", c[1]}, {"q12", c[2]}, {"q13", c[3]}, {"q23", c[4]}});

  ordered_json meta;
  meta["time_grid"] = s.time_grid.nodes();
  ordered_json files = ordered_json::array();
  for (std::size_t k = 0; k < s.V.size(); ++k) {
    write_snapshot(dir / node_file(k), s.V[k]);
    files.push_back(node_file(k));
  }
  meta["files"] = files;
  meta["params"] = {{"a", p.a()}, {"b", p.b()}, {"c", p.c()}, {"delta", p.delta()}, {"eta", p.eta()}};
  meta["norms"] = {{"A", frobenius_norm(s.A)},
                   {"x0_norm_estimate", s.x0_norm_estimate},
                   {"max_iterate_norm", s.max_iterate_norm},
                   {"eps0", s.eps0},
                   {"q0_a_norm", s.q0_a_norm}};
  meta["iterations"] = s.iterations;
  meta["converged"] = s.converged;
  meta["small_data"] = s.small_data;
  meta["stayed_in_ball"] = s.stayed_in_ball;
  meta["increments"] = s.increments;
  meta["ratios"] = s.ratios;
  write_json(dir / "meta.json", meta);
}

DecompositionState load_decomposition(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw MissingInput("no decomposition directory " + dir.string());
  const ordered_json a = read_json(dir / "A.json");
  const ordered_json meta = read_json(dir / "meta.json");
  DecompositionState s;
  try {
    s.A = TracelessSym3::from_components({a.at("q11").get<double>(), a.at("q22").get<double>(),
                                          a.at("q12").get<double>(), a.at("q13").get<double>(),
                                          a.at("q23").get<double>()});
    s.time_grid = TimeGrid(meta.at("time_grid").get<std::vector<double>>());
    for (const auto& f : meta.at("files")) s.V.push_back(read_tensor_snapshot(dir / f.get<std::string>()));
    const auto& norms = meta.at("norms");
    s.x0_norm_estimate = norms.at("x0_norm_estimate").get<double>();
    s.max_iterate_norm = norms.value("max_iterate_norm", 0.0);
    s.eps0 = norms.value("eps0", 0.0);
    s.q0_a_norm = norms.value("q0_a_norm", 0.0);
    s.iterations = meta.value("iterations", 0);
    s.converged = meta.value("converged", false);
    s.small_data = meta.value("small_data", true);
    s.stayed_in_ball = meta.value("stayed_in_ball", true);
    s.increments = meta.value("increments", std::vector<double>{});
    s.ratios = meta.value("ratios", std::vector<double>{});
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(dir.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(dir.string() + ": " + e.what());
  }
  if (s.V.size() != s.time_grid.size()) throw FormatError("snapshot count does not match the time grid");
  return s;
}

}  // namespace nematic
