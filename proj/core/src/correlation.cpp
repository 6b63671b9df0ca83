#include "nematic/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "nematic/errors.hpp"
#include "nematic/fit.hpp"
#include "nematic/spectral.hpp"

namespace nematic {

namespace {

// Power spectrum weights so that the summed products equal tr(PQ):
// q11, q22 and q33 = -(q11 + q22) once, off-diagonals twice.
void accumulate_power(const SpectralGrid& sg, const TensorField& f, double weight, std::vector<double>& power) {
  auto s0 = sg.make_spectrum(), s1 = sg.make_spectrum(), s = sg.make_spectrum();
  sg.forward(f.plane(0), s0);
  sg.forward(f.plane(1), s1);
  for (std::size_t i = 0; i < power.size(); ++i)
    power[i] += weight * (std::norm(s0[i]) + std::norm(s1[i]) + std::norm(s0[i] + s1[i]));
  for (std::size_t c = 2; c < 5; ++c) {
    sg.forward(f.plane(c), s);
    for (std::size_t i = 0; i < power.size(); ++i) power[i] += 2.0 * weight * std::norm(s[i]);
  }
}

ScalarField power_to_autocorrelation(const SpectralGrid& sg, const std::vector<double>& power, double t) {
  auto spec = sg.make_spectrum();
  for (std::size_t i = 0; i < power.size(); ++i) spec[i] = power[i];
  ScalarField out(sg.grid(), t);
  sg.inverse(spec, out.plane(0));
  out *= sg.grid().cell_volume();
  return out;
}

}  // namespace

ScalarField autocorrelation(const TensorField& f) {
  const auto sg = SpectralGrid::shared(f.grid());
  std::vector<double> power(sg->spectral_size(), 0.0);
  accumulate_power(*sg, f, 1.0, power);
  return power_to_autocorrelation(*sg, power, f.time());
}

ScalarField autocorrelation(const ScalarField& l) {
  const auto sg = SpectralGrid::shared(l.grid());
  auto s = sg->make_spectrum();
  sg->forward(l.plane(0), s);
  std::vector<double> power(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) power[i] = 6.0 * std::norm(s[i]);
  return power_to_autocorrelation(*sg, power, l.time());
}

CorrelationProfile profile_from_autocorrelation(const ScalarField& s, double t) {
  const GridSpec& g = s.grid();
  const double s0 = s(0, 0);
  if (!(s0 > 0.0) || !std::isfinite(s0)) {
    throw std::invalid_argument("correlation undefined for a zero field");
  }
  const int n = g.n();
  const double h = g.spacing();
  const int half = n / 2;
  const std::size_t max_m2 = 3 * static_cast<std::size_t>(half) * half;

  std::vector<double> smin(max_m2 + 1, INFINITY), smax(max_m2 + 1, -INFINITY);
  std::vector<char> seen(max_m2 + 1, 0);
  const std::size_t nbins = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(max_m2)))) + 2;
  std::vector<double> bsum(nbins, 0.0);
  std::vector<std::size_t> bcount(nbins, 0);

  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int di = g.signed_offset(i), dj = g.signed_offset(j), dk = g.signed_offset(k);
        const std::size_t m2 = static_cast<std::size_t>(di * di + dj * dj + dk * dk);
        const double c = s(0, g.index(i, j, k)) / s0;
        seen[m2] = 1;
        smin[m2] = std::min(smin[m2], c);
        smax[m2] = std::max(smax[m2], c);
        const auto b = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(m2))));
        bsum[b] += c;
        ++bcount[b];
      }

  CorrelationProfile prof;
  prof.t = t;
  prof.n = n;
  prof.box_len = g.box_len();
  prof.normalization = s0;
  for (std::size_t b = 0; b < nbins; ++b) {
    if (bcount[b] == 0) continue;
    prof.r_bins.push_back(b * h);
    prof.c_values.push_back(bsum[b] / static_cast<double>(bcount[b]));
    prof.bin_counts.push_back(bcount[b]);
  }
  for (std::size_t m2 = 0; m2 <= max_m2; ++m2) {
    if (!seen[m2]) continue;
    prof.shell_r.push_back(h * std::sqrt(static_cast<double>(m2)));
    prof.shell_min.push_back(smin[m2]);
    prof.shell_max.push_back(smax[m2]);
  }
  return prof;
}

CorrelationProfile correlate_single(const TensorField& f) { return profile_from_autocorrelation(autocorrelation(f), f.time()); }

CorrelationProfile correlate_single(const ScalarField& l) { return profile_from_autocorrelation(autocorrelation(l), l.time()); }

void check_ensemble_weights(const std::vector<double>& weights) {
  if (weights.empty()) throw std::invalid_argument("ensemble has no members");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || w > 1.0) throw std::invalid_argument("ensemble weights must lie in (0, 1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("ensemble weights must sum to 1");
}

CorrelationProfile ensemble_correlate(const std::vector<const TensorField*>& members,
                                      const std::vector<double>& weights) {
  check_ensemble_weights(weights);
  if (members.size() != weights.size()) throw std::invalid_argument("one weight per ensemble member required");
  const TensorField& first = *members.front();
  const auto sg = SpectralGrid::shared(first.grid());
  std::vector<double> power(sg->spectral_size(), 0.0);
  for (std::size_t j = 0; j < members.size(); ++j) {
    const TensorField& m = *members[j];
    if (!(m.grid() == first.grid())) throw std::invalid_argument("ensemble members live on different grids");
    if (std::abs(m.time() - first.time()) > 1e-9 * (1.0 + std::abs(first.time()))) {
      throw std::invalid_argument("ensemble members carry different times");
    }
    accumulate_power(*sg, m, weights[j], power);
  }
  return profile_from_autocorrelation(power_to_autocorrelation(*sg, power, first.time()), first.time());
}

CorrelationProfile ensemble_correlate(const std::vector<TensorTrajectory>& trajs, const std::vector<double>& weights,
                                      double t) {
  std::vector<TensorField> fields;
  fields.reserve(trajs.size());
  for (const auto& tr : trajs) {
    const TensorField* s = tr.at_time(t);
    if (!s) {
      std::ostringstream msg;
      msg << "no snapshot at t = " << t << "; available:";
      for (const auto& x : tr.snapshots) msg << ' ' << x.time();
      throw MissingInput(msg.str());
    }
    fields.push_back(*s);
    // R = e^{at} Q; rescale so mixed members weigh consistently.
    if (tr.transformed) fields.back() *= std::exp(-tr.params.a() * s->time());
  }
  std::vector<const TensorField*> ptrs;
  for (const auto& f : fields) ptrs.push_back(&f);
  return ensemble_correlate(ptrs, weights);
}

namespace {

template <class Target>
double sup_error(const CorrelationProfile& prof, double r_max, Target target) {
  double worst = 0.0;
  for (std::size_t i = 0; i < prof.shell_r.size(); ++i) {
    const double r = prof.shell_r[i];
    if (r > r_max * (1.0 + 1e-12)) continue;
    const double v = target(r);
    worst = std::max({worst, std::abs(prof.shell_min[i] - v), std::abs(prof.shell_max[i] - v)});
  }
  return worst;
}

}  // namespace

double gaussian_regime_error(const CorrelationProfile& prof, std::optional<double> r_max) {
  if (!(prof.t > 0.0)) throw std::invalid_argument("gaussian_regime_error requires t > 0");
  const double t = prof.t;
  return sup_error(prof, r_max.value_or(prof.box_len / 4.0), [t](double r) { return std::exp(-r * r / (8.0 * t)); });
}

double ball_overlap_correlation(double z, double c_bar) {
  if (!(c_bar > 0.0)) throw std::invalid_argument("c_bar must be positive");
  if (z < 0.0) throw std::invalid_argument("separation must be nonnegative");
  if (z >= 2.0 * c_bar) return 0.0;
  const double d = 2.0 * c_bar - z;
  return (4.0 * c_bar + z) * d * d / (16.0 * c_bar * c_bar * c_bar);
}

double ballistic_regime_error(const CorrelationProfile& prof, double c_bar, std::optional<double> r_max) {
  if (!(prof.t > 0.0)) throw std::invalid_argument("ballistic_regime_error requires t > 0");
  const double t = prof.t;
  return sup_error(prof, r_max.value_or(prof.box_len / 2.0),
                   [t, c_bar](double r) { return ball_overlap_correlation(r / t, c_bar); });
}

RateFit rate_fit(const std::vector<std::pair<double, double>>& errors) {
  std::vector<double> lt, le;
  double tmin = INFINITY, tmax = 0.0;
  for (const auto& [t, e] : errors) {
    if (!(e > 0.0) || !(t > 0.0)) continue;
    lt.push_back(std::log(t));
    le.push_back(std::log(e));
    tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
  }
  if (lt.size() < 5) throw std::invalid_argument("rate_fit needs at least five positive samples");
  if (tmax < 10.0 * tmin * (1.0 - 1e-12)) throw std::invalid_argument("rate_fit samples must span a decade in t");
  const LineFit f = least_squares_line(lt, le);
  return {f.slope, f.r_squared};
}

void write_profile_csv(const std::filesystem::path& path, const CorrelationProfile& prof) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "r,c\n" << std::setprecision(17);
  for (std::size_t i = 0; i < prof.r_bins.size(); ++i) out << prof.r_bins[i] << ',' << prof.c_values[i] << '\n';
}

std::string profile_sidecar_json(const CorrelationProfile& prof, const RegimeFit* fit) {
  nlohmann::ordered_json j;
  j["t"] = prof.t;
  j["grid"] = {{"n", prof.n}, {"box_len", prof.box_len}, {"spacing", prof.spacing()}};
  j["normalization"] = prof.normalization;
  j["bins"] = prof.r_bins.size();
  if (fit) {
    nlohmann::ordered_json f;
    f["regime"] = fit->regime == Regime::GaussianSqrtT ? "gaussian_sqrt_t" : "ballistic_t";
    f["slope"] = fit->slope;
    f["r_squared"] = fit->r_squared;
    if (fit->regime == Regime::BallisticT) f["c_bar"] = fit->c_bar;
    f["window"] = {fit->t_begin, fit->t_end};
    auto& errs = f["errors"] = nlohmann::ordered_json::array();
    for (const auto& [t, e] : fit->errors) errs.push_back({t, e});
    j["fit"] = f;
  }
  return j.dump(2);
}

}  // namespace nematic
