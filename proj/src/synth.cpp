#include "bondmatcher/synth.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bondmatcher {

namespace {

double kernel_value(Kernel k, double x) {
  return k == Kernel::Gaussian ? std::exp(-x * x) : std::exp(-x);
}

Kernel kernel_from_string(const std::string& s) {
  if (s == "gaussian") return Kernel::Gaussian;
  if (s == "exponential") return Kernel::Exponential;
  throw std::runtime_error("unknown kernel '" + s +
                           "' (expected gaussian or exponential)");
}

}  // namespace

ScalarGrid rasterize(const SiteModel& model, const GridSpec& spec,
                     double noise_amplitude, std::uint64_t seed) {
  ScalarGrid g;
  g.dims = spec.dims;
  g.spacing = spec.spacing;
  g.origin = spec.origin;
  g.values.resize(g.vertex_count());

  for (std::int64_t v = 0; v < g.vertex_count(); ++v) {
    const Eigen::Vector3d p = g.position(v);
    double rho = 0.0;
    for (const Site& s : model.sites) {
      const double x = (p - s.position).norm() / s.decay;
      rho += s.amplitude *
             kernel_value(s.kernel.value_or(model.default_kernel), x);
    }
    g.values[v] = -rho;
  }

  if (noise_amplitude > 0.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-noise_amplitude,
                                                noise_amplitude);
    for (std::int64_t v = 0; v < g.vertex_count(); ++v) g.values[v] += dist(rng);
  }

  g.validate();
  return g;
}

SiteModel member_model(const DisplacementEnsemble& ens, int k) {
  if (ens.directions.size() != ens.base.sites.size())
    throw std::invalid_argument(
        "displacement ensemble needs one direction per site");
  if (k < 0 || k >= ens.steps)
    throw std::invalid_argument("ensemble member index out of range");
  SiteModel m = ens.base;
  const double t = ens.scale * (k - (ens.steps - 1) / 2.0);
  for (std::size_t i = 0; i < m.sites.size(); ++i)
    m.sites[i].position += t * ens.directions[i];
  return m;
}

Fixture parse_fixture(const std::string& json_text, const std::string& name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("fixture " + name + ": " + e.what());
  }
  try {
    Fixture fx;
    fx.name = name;
    if (j.contains("kernel"))
      fx.model.default_kernel = kernel_from_string(j.at("kernel"));
    for (const auto& js : j.at("sites")) {
      Site s;
      const auto& pos = js.at("pos");
      s.position = Eigen::Vector3d(pos.at(0), pos.at(1), pos.at(2));
      s.amplitude = js.at("amp");
      s.decay = js.at("decay");
      if (!(s.amplitude > 0.0) || !(s.decay > 0.0))
        throw std::runtime_error("site amplitude and decay must be positive");
      if (js.contains("kernel"))
        s.kernel = kernel_from_string(js.at("kernel"));
      fx.model.sites.push_back(s);
    }
    const auto& jg = j.at("grid");
    for (int ax = 0; ax < 3; ++ax) {
      fx.grid.dims[ax] = jg.at("dims").at(ax);
      fx.grid.spacing[ax] = jg.at("spacing").at(ax);
      fx.grid.origin[ax] = jg.at("origin").at(ax);
    }
    if (j.contains("ensemble")) {
      const auto& je = j.at("ensemble");
      DisplacementEnsemble ens;
      ens.base = fx.model;
      for (const auto& jd : je.at("directions"))
        ens.directions.emplace_back(jd.at(0), jd.at(1), jd.at(2));
      ens.steps = je.value("steps", 21);
      ens.scale = je.value("scale", 0.4);
      if (ens.steps < 1)
        throw std::runtime_error("ensemble steps must be at least 1");
      fx.ensemble = std::move(ens);
    }
    fx.seed = j.value("seed", 0);
    fx.noise_amplitude = j.value("noise_amplitude", 0.0);
    return fx;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("fixture " + name + ": " + e.what());
  }
}

Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  const auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string::npos) name = name.substr(0, dot);
  return parse_fixture(buf.str(), name);
}

std::vector<ScalarGrid> fixture_members(const Fixture& fx) {
  std::vector<ScalarGrid> out;
  if (!fx.ensemble) {
    out.push_back(rasterize(fx.model, fx.grid, fx.noise_amplitude, fx.seed));
    return out;
  }
  for (int k = 0; k < fx.ensemble->steps; ++k)
    out.push_back(rasterize(member_model(*fx.ensemble, k), fx.grid,
                            fx.noise_amplitude, fx.seed + k));
  return out;
}

}  // namespace bondmatcher
