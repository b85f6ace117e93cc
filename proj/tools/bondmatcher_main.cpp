// bondmatcher: extract bond graphs from density volumes and score
// hydrogen-bond stability across ensembles.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bondmatcher/assignment.hpp"
#include "bondmatcher/ensemble.hpp"
#include "bondmatcher/pipeline.hpp"
#include "bondmatcher/serialize.hpp"
#include "bondmatcher/synth.hpp"
#include "bondmatcher/version.hpp"
#include "bondmatcher/volume_io.hpp"

namespace fs = std::filesystem;
namespace bm = bondmatcher;

namespace {

struct CliOptions {
  bm::RunConfig cfg;
  std::string out_dir = ".";
};

void add_common_flags(CLI::App* cmd, CliOptions& opt, std::int64_t& target,
                      std::vector<CLI::Option*>& target_opts) {
  cmd->add_option("--epsilon", opt.cfg.epsilon,
                  "persistence threshold for cancelling shallow minima")
      ->capture_default_str();
  cmd->add_option("--delta", opt.cfg.delta,
                  "value-difference threshold for saddle-saddle cancellation")
      ->capture_default_str();
  cmd->add_option("--oxygen-cut", opt.cfg.oxygen_cut,
                  "node value below which a minimum counts as oxygen")
      ->capture_default_str();
  cmd->add_option("--covalent-cut", opt.cfg.covalent_cut,
                  "saddle value below which an O-H arc counts as covalent")
      ->capture_default_str();
  target_opts.push_back(cmd->add_option(
      "--target-min-count", target,
      "simplify until exactly this many minima remain (overrides --epsilon)"));
  cmd->add_option("--threads", opt.cfg.threads,
                  "worker threads; 0 reads BONDMATCHER_THREADS or the "
                  "hardware count")
      ->capture_default_str();
  cmd->add_option("--out", opt.out_dir, "output directory")
      ->capture_default_str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void report_written(const fs::path& path) {
  std::cout << "wrote " << path.string() << "\n";
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

bool is_cube(const fs::path& p) { return p.extension() == ".cube"; }

// Loads a volume as physical density, keeping the atom list when the format
// carries one.
bm::ScalarGrid load_density(const std::string& path, bm::AtomList& atoms,
                            bool& have_atoms) {
  have_atoms = false;
  if (is_cube(path)) {
    bm::CubeVolume vol = bm::load_cube(path);
    atoms = std::move(vol.atoms);
    have_atoms = true;
    return std::move(vol.grid);
  }
  return bm::load_raw(path);
}

bm::AnalysisResult analyze_file(const std::string& path,
                                const bm::RunConfig& cfg) {
  bm::AtomList atoms;
  bool have_atoms = false;
  bm::ScalarGrid density = load_density(path, atoms, have_atoms);
  const std::string stem = fs::path(path).stem().string();
  return bm::analyze_density(density, cfg, stem,
                             have_atoms ? &atoms : nullptr);
}

int run_analyze(const std::string& input, const CliOptions& opt) {
  bm::AnalysisResult res = analyze_file(input, opt.cfg);
  print_warnings(res.warnings);

  fs::create_directories(opt.out_dir);
  const std::string stem = fs::path(input).stem().string();
  const fs::path dir(opt.out_dir);

  const fs::path json_path = dir / (stem + ".bondgraph.json");
  write_text(json_path, bm::analysis_json(res, opt.cfg).dump(2) + "\n");
  report_written(json_path);

  const fs::path obj_path = dir / (stem + ".arcs.obj");
  {
    std::ofstream out(obj_path, std::ios::binary);
    out << "# bondmatcher " << bm::kVersion << "\n";
    out << "# config " << bm::config_json(opt.cfg).dump() << "\n";
    bm::write_obj(out, res.bonds.graph);
    if (!out) throw std::runtime_error("cannot write " + obj_path.string());
  }
  report_written(obj_path);

  const fs::path csv_path = dir / (stem + ".indicators.csv");
  write_text(csv_path, bm::indicator_csv(res.bonds, opt.cfg));
  report_written(csv_path);

  std::cout << stem << ": " << res.bonds.graph.nodes.size() << " nodes, "
            << res.bonds.graph.arcs.size() << " arcs\n";
  return 0;
}

// Expands directories to the volume files inside them and orders everything
// by filename so member indices are stable.
std::vector<std::string> collect_volumes(const std::vector<std::string>& in) {
  std::vector<std::string> files;
  for (const std::string& item : in) {
    if (fs::is_directory(item)) {
      for (const fs::directory_entry& e : fs::directory_iterator(item)) {
        if (!e.is_regular_file()) continue;
        const fs::path& p = e.path();
        if (p.extension() == ".cube" || p.extension() == ".bmgrid")
          files.push_back(p.string());
      }
    } else {
      files.push_back(item);
    }
  }
  std::sort(files.begin(), files.end(),
            [](const std::string& a, const std::string& b) {
              const std::string fa = fs::path(a).filename().string();
              const std::string fb = fs::path(b).filename().string();
              return std::tie(fa, a) < std::tie(fb, b);
            });
  return files;
}

int run_ensemble(const std::vector<std::string>& inputs,
                 const CliOptions& opt) {
  const std::vector<std::string> files = collect_volumes(inputs);
  if (files.empty()) throw std::runtime_error("no volumes to analyze");

  std::vector<bm::ScalarGrid> densities;
  std::vector<std::string> ids;
  std::vector<bm::AtomList> atoms(files.size());
  std::vector<const bm::AtomList*> atom_ptrs(files.size(), nullptr);
  for (std::size_t i = 0; i < files.size(); ++i) {
    bool have_atoms = false;
    densities.push_back(load_density(files[i], atoms[i], have_atoms));
    if (have_atoms) atom_ptrs[i] = &atoms[i];
    ids.push_back(fs::path(files[i]).stem().string());
  }

  // analyze_ensemble ignores atom lists; re-run classification atoms are not
  // needed for the rate computation, only for naming warnings, so members
  // analyzed uniformly keeps the pool simple.
  std::vector<bm::AnalysisResult> results =
      bm::analyze_ensemble(densities, ids, opt.cfg);
  for (const bm::AnalysisResult& r : results) print_warnings(r.warnings);

  const int n = static_cast<int>(results.size());
  const int ref = opt.cfg.reference ? *opt.cfg.reference : (n - 1) / 2;
  if (ref < 0 || ref >= n)
    throw std::runtime_error("reference index " + std::to_string(ref) +
                             " out of range for " + std::to_string(n) +
                             " members");

  std::vector<bm::ExtremumGraph> graphs;
  for (const bm::AnalysisResult& r : results) graphs.push_back(r.bonds.graph);
  bm::OccurrenceReport report =
      bm::occurrence_rates(graphs, ref, opt.cfg.permissive_counts);
  print_warnings(report.warnings);
  const std::vector<bm::StabilityRow> rows =
      bm::stability_report(report, results[ref].bonds);

  fs::create_directories(opt.out_dir);
  const fs::path dir(opt.out_dir);

  const fs::path json_path = dir / "occurrence.json";
  write_text(json_path,
             bm::occurrence_json(report, rows, opt.cfg).dump(2) + "\n");
  report_written(json_path);

  const fs::path csv_path = dir / "occurrence.csv";
  write_text(csv_path, bm::occurrence_csv(report, rows, opt.cfg));
  report_written(csv_path);

  int unstable = 0;
  for (const bm::StabilityRow& row : rows)
    if (!row.rate.stable) ++unstable;
  std::cout << "reference " << report.member_ids[ref] << ": "
            << report.rates.size() << " arcs, " << unstable << " unstable\n";
  return 0;
}

int run_match(const std::string& input_a, const std::string& input_b,
              const CliOptions& opt) {
  const bm::AnalysisResult res_a = analyze_file(input_a, opt.cfg);
  const bm::AnalysisResult res_b = analyze_file(input_b, opt.cfg);
  print_warnings(res_a.warnings);
  print_warnings(res_b.warnings);

  std::vector<Eigen::Vector3d> pos_a, pos_b;
  for (const bm::ExtremumNode& node : res_a.bonds.graph.nodes)
    pos_a.push_back(node.position);
  for (const bm::ExtremumNode& node : res_b.bonds.graph.nodes)
    pos_b.push_back(node.position);
  const bm::NodeAssignment phi = bm::optimal_assignment(pos_a, pos_b);
  const bm::ArcMatch arcs =
      bm::induce_arc_map(res_a.bonds.graph, res_b.bonds.graph, phi);

  fs::create_directories(opt.out_dir);
  const fs::path json_path = fs::path(opt.out_dir) / "match.json";
  write_text(json_path, bm::match_json(res_a.bonds.graph, res_b.bonds.graph,
                                       phi, arcs, opt.cfg)
                                .dump(2) +
                            "\n");
  report_written(json_path);

  std::cout << "matched " << arcs.matched << " of "
            << res_a.bonds.graph.arcs.size() << " arcs, energy "
            << bm::format_double(phi.energy) << "\n";
  return 0;
}

std::string member_name(const std::string& base, int k, int count) {
  int width = 2;
  for (int v = count - 1; v >= 100; v /= 10) ++width;
  std::ostringstream name;
  name << base << "_" << std::setw(width) << std::setfill('0') << k;
  return name.str();
}

int run_synth(const std::string& spec_path, const std::string& format,
              const CliOptions& opt) {
  const bm::Fixture fx = bm::load_fixture(spec_path);
  const std::vector<bm::ScalarGrid> members = bm::fixture_members(fx);

  fs::create_directories(opt.out_dir);
  const fs::path dir(opt.out_dir);
  nlohmann::json manifest{{"version", bm::kVersion},
                          {"fixture", fx.name},
                          {"seed", fx.seed},
                          {"noise_amplitude", fx.noise_amplitude},
                          {"files", nlohmann::json::array()}};

  const int count = static_cast<int>(members.size());
  for (int k = 0; k < count; ++k) {
    // Files store the physical density; analysis negates it back.
    const bm::ScalarGrid density = bm::negate(members[k]);
    const std::string name = member_name(fx.name, k, count);
    fs::path path;
    if (format == "cube") {
      path = dir / (name + ".cube");
      bm::save_cube(path.string(), density, {},
                    "bondmatcher " + std::string(bm::kVersion) + " " + name);
    } else {
      path = dir / (name + ".bmgrid");
      bm::save_raw(path.string(), density);
    }
    manifest["files"].push_back(path.filename().string());
    report_written(path);
  }

  const fs::path manifest_path = dir / (fx.name + ".manifest.json");
  write_text(manifest_path, manifest.dump(2) + "\n");
  report_written(manifest_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bond graphs and hydrogen-bond stability from density volumes"};
  app.set_version_flag("--version", bm::kVersion);
  app.require_subcommand(1);

  CliOptions opt;
  std::int64_t target = 0;
  std::vector<CLI::Option*> target_opts;
  int reference = 0;
  CLI::Option* reference_opt = nullptr;

  std::string analyze_input;
  CLI::App* analyze =
      app.add_subcommand("analyze", "extract the bond graph of one volume");
  analyze->add_option("volume", analyze_input, "input .cube or .bmgrid file")
      ->required();
  add_common_flags(analyze, opt, target, target_opts);

  std::vector<std::string> ensemble_inputs;
  CLI::App* ensemble = app.add_subcommand(
      "ensemble", "occurrence rates across an ensemble of volumes");
  ensemble
      ->add_option("volumes", ensemble_inputs,
                   "volume files or directories of volumes")
      ->required();
  add_common_flags(ensemble, opt, target, target_opts);
  reference_opt = ensemble->add_option(
      "--reference", reference,
      "reference member index in filename order; defaults to the middle");
  ensemble->add_flag("--permissive-counts", opt.cfg.permissive_counts,
                     "exclude members whose node count differs from the "
                     "reference instead of failing");

  std::string match_a, match_b;
  CLI::App* match = app.add_subcommand(
      "match", "node assignment and arc correspondence of two volumes");
  match->add_option("volume_a", match_a, "first volume")->required();
  match->add_option("volume_b", match_b, "second volume")->required();
  add_common_flags(match, opt, target, target_opts);

  std::string synth_spec;
  std::string synth_format = "raw";
  CLI::App* synth = app.add_subcommand(
      "synth", "rasterize a site-model fixture into volume files");
  synth->add_option("spec", synth_spec, "fixture spec JSON")->required();
  synth->add_option("--format", synth_format, "output format")
      ->check(CLI::IsMember({"raw", "cube"}))
      ->capture_default_str();
  synth->add_option("--out", opt.out_dir, "output directory")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  for (const CLI::Option* o : target_opts)
    if (o->count() > 0) opt.cfg.target_min_count = target;
  if (reference_opt && reference_opt->count() > 0) opt.cfg.reference = reference;

  try {
    if (*analyze) return run_analyze(analyze_input, opt);
    if (*ensemble) return run_ensemble(ensemble_inputs, opt);
    if (*match) return run_match(match_a, match_b, opt);
    if (*synth) return run_synth(synth_spec, synth_format, opt);
  } catch (const bm::VolumeParseError& e) {
    nlohmann::json err{{"error", "parse"},
                       {"path", e.path()},
                       {"line", e.line()},
                       {"message", e.detail()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const bm::SizeMismatchError& e) {
    nlohmann::json err{{"error", "size_mismatch"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", "runtime"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
