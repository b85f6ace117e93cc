#include "bondmatcher/pipeline.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

#include "bondmatcher/extremum_graph.hpp"
#include "bondmatcher/gradient.hpp"
#include "bondmatcher/persistence.hpp"
#include "bondmatcher/triangulation.hpp"

namespace bondmatcher {

AnalysisResult analyze_negated(const ScalarGrid& rho_prime,
                               const RunConfig& cfg,
                               const std::string& source_id,
                               const AtomList* atoms) {
  rho_prime.validate();
  const Triangulation tri(rho_prime.dims);
  const VertexOrder order(rho_prime);

  const DiscreteGradient g = compute_gradient(tri, order);
  const auto pairs = min_saddle_persistence(tri, rho_prime, order);

  AnalysisResult out;
  out.stats.minima_before = static_cast<std::int64_t>(pairs.size());

  auto min_simplified =
      simplify_minima(g, pairs, cfg.epsilon, cfg.target_min_count);
  out.stats.minima_cancelled = min_simplified.cancelled;
  out.stats.effective_epsilon = min_simplified.effective_epsilon;
  for (auto& w : min_simplified.warnings) out.warnings.push_back(std::move(w));

  auto saddle_simplified =
      cancel_saddle_saddle(min_simplified.gradient, rho_prime, order, cfg.delta);
  out.stats.saddle_pairs_cancelled = saddle_simplified.cancelled;

  const ExtremumGraph graph =
      build_extremum_graph(saddle_simplified.gradient, rho_prime, order,
                           source_id);
  out.stats.minima_after = static_cast<std::int64_t>(graph.nodes.size());
  out.stats.saddles_after = static_cast<std::int64_t>(graph.arcs.size());

  ClassifyOptions copts;
  copts.oxygen_cut = cfg.oxygen_cut;
  copts.covalent_cut = cfg.covalent_cut;
  out.bonds = classify(graph, copts, atoms);
  for (const auto& w : out.bonds.warnings) out.warnings.push_back(w);
  return out;
}

AnalysisResult analyze_density(const ScalarGrid& density, const RunConfig& cfg,
                               const std::string& source_id,
                               const AtomList* atoms) {
  return analyze_negated(negate(density), cfg, source_id, atoms);
}

int resolve_threads(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("BONDMATCHER_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<AnalysisResult> analyze_ensemble(
    const std::vector<ScalarGrid>& densities,
    const std::vector<std::string>& source_ids, const RunConfig& cfg) {
  if (densities.size() != source_ids.size())
    throw std::invalid_argument("one source id per density is required");
  std::vector<AnalysisResult> results(densities.size());
  const int workers = std::min<int>(resolve_threads(cfg),
                                    static_cast<int>(densities.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < densities.size(); ++i)
      results[i] = analyze_density(densities[i], cfg, source_ids[i]);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(densities.size());
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= densities.size()) return;
        try {
          results[i] = analyze_density(densities[i], cfg, source_ids[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace bondmatcher
