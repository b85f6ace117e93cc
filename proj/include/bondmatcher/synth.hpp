#ifndef BONDMATCHER_SYNTH_HPP
#define BONDMATCHER_SYNTH_HPP

#include <optional>
#include <string>
#include <vector>

#include "bondmatcher/grid.hpp"

namespace bondmatcher {

enum class Kernel { Gaussian, Exponential };

/// One density site: a radial kernel of the given amplitude and decay
/// length, optionally overriding the model kernel (promolecule models mix
/// exponential oxygen with Gaussian hydrogen sites).
struct Site {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // Angstrom
  double amplitude = 1.0;
  double decay = 1.0;  // Angstrom
  std::optional<Kernel> kernel;
};

/// Analytic mixture model rho'(r) = -sum amplitude * kernel(|r - c| / decay).
/// Gaussian kernel: exp(-x^2); exponential kernel: exp(-x).
struct SiteModel {
  std::vector<Site> sites;
  Kernel default_kernel = Kernel::Gaussian;
};

struct GridSpec {
  Eigen::Vector3i dims = Eigen::Vector3i::Zero();
  Eigen::Vector3d spacing = Eigen::Vector3d::Zero();
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
};

/// Samples the negated mixture at the grid vertices; the result is rho',
/// nonpositive everywhere. Optional seeded noise adds an independent uniform
/// value in [-noise_amplitude, noise_amplitude] per vertex.
ScalarGrid rasterize(const SiteModel& model, const GridSpec& spec,
                     double noise_amplitude = 0.0, std::uint64_t seed = 0);

/// Linear displacement sweep: member k moves site i to
/// base_i + scale * (k - (steps-1)/2) * direction_i, so the middle member of
/// an odd sweep is the base model exactly.
struct DisplacementEnsemble {
  SiteModel base;
  std::vector<Eigen::Vector3d> directions;  // per site, may be zero
  int steps = 21;
  double scale = 0.4;
};

SiteModel member_model(const DisplacementEnsemble& ens, int k);

/// Fixture description: site model, grid, optional sweep, optional noise.
struct Fixture {
  std::string name;
  SiteModel model;
  GridSpec grid;
  std::optional<DisplacementEnsemble> ensemble;
  double noise_amplitude = 0.0;
  std::uint64_t seed = 0;
};

/// Parses the fixture spec JSON: {kernel, sites: [{pos, amp, decay,
/// kernel?}], grid: {dims, spacing, origin}, ensemble: {directions, steps,
/// scale}, seed, noise_amplitude}. Throws std::runtime_error on malformed
/// specs.
Fixture parse_fixture(const std::string& json_text, const std::string& name);
Fixture load_fixture(const std::string& path);

/// All member fields of the fixture, rho' convention; a fixture without an
/// ensemble block yields a single member.
std::vector<ScalarGrid> fixture_members(const Fixture& fx);

}  // namespace bondmatcher

#endif
