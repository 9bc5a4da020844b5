#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "unialign/astar.hpp"
#include "unialign/event_log.hpp"
#include "unialign/flow_align.hpp"
#include "unialign/reachability.hpp"
#include "unialign/selector.hpp"
#include "unialign/sync_product.hpp"

namespace unialign {

enum class RunMethod { AStar, LP, Hybrid, Both };

std::string_view to_string(RunMethod method);
/// Accepts "astar", "lp", "hybrid", "both"; throws InvalidInput otherwise.
RunMethod parse_run_method(std::string_view text);

struct RunConfig {
  RunMethod method = RunMethod::Both;
  CostConfig cost;
  /// Unset means the per-product default depth.
  std::optional<std::size_t> max_depth;
  std::size_t max_nodes = 2'000'000;
  std::size_t max_edges = 8'000'000;
  std::uint32_t token_cap = 8;
  Heuristic heuristic = Heuristic::MarkingEquation;
  std::size_t max_expansions = 50'000'000;
  SelectionThresholds thresholds;
  /// Budget per instance and per method.
  std::chrono::milliseconds timeout{60'000};
  std::size_t parallel = 1;
  std::uint64_t seed = 0;

  /// Throws InvalidInput for a non-positive timeout or zero parallelism.
  void validate() const;
  ExplorationLimits limits_for(const SynchronousProduct& sp) const;
  SearchConfig search_config() const;
};

enum class InstanceOutcome { Optimal, Timeout, Truncated, Infeasible, Error, Skipped };

std::string_view to_string(InstanceOutcome outcome);

struct BenchmarkRecord {
  std::string case_id;
  std::string model_id;
  std::size_t trace_length = 0;
  Method method_chosen = Method::ASTAR;
  bool fell_back = false;
  InstanceOutcome astar_outcome = InstanceOutcome::Skipped;
  InstanceOutcome lp_outcome = InstanceOutcome::Skipped;
  std::optional<Rational> astar_cost;
  std::optional<Rational> lp_cost;
  /// Set only when both methods are OPTIMAL.
  std::optional<bool> costs_agree;
  std::optional<bool> lp_win;
  /// Visible deviations (model + log moves) of an optimal alignment.
  std::optional<std::size_t> deviations;
  std::optional<std::size_t> tau_moves;
  std::size_t rg_nodes = 0;
  std::size_t rg_edges = 0;
  bool rg_truncated = false;
  std::size_t astar_expansions = 0;
  std::chrono::microseconds astar_time{0};
  std::chrono::microseconds lp_total_time{0};
  std::chrono::microseconds rg_build_time{0};
  std::chrono::microseconds lp_solve_time{0};
  std::string error;
  /// The optimal alignment of the first method that produced one.
  std::optional<Alignment> alignment;
};

/// Runs the configured method(s) on one trace. Never throws for
/// per-instance failures; they are recorded in the record.
BenchmarkRecord run_instance(const PetriNet& net, const Trace& trace, const std::string& model_id,
                             const Rational& fitness, const RunConfig& cfg);

/// One record per trace, in log order, using up to cfg.parallel threads.
/// The model's token-replay fitness over the whole log drives selection.
std::vector<BenchmarkRecord> run_conformance(const PetriNet& net, const EventLog& log, const std::string& model_id,
                                             const RunConfig& cfg, Rational* fitness_out = nullptr);

/// Frozen CSV column list (timing columns, in microseconds, come last).
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string to_csv_row(const BenchmarkRecord& r);
std::string write_csv(const std::vector<BenchmarkRecord>& records);

/// Trace-length buckets: 1-10, 11-20, 21-30, 31-50, 51-100, >100 (0 maps to "0").
std::string length_bucket(std::size_t length);
/// Deviation buckets: 0, 1, 2-4, 5-10, >10.
std::string deviation_bucket(std::size_t deviations);
const std::vector<std::string>& length_bucket_labels();
const std::vector<std::string>& deviation_bucket_labels();

struct BucketStats {
  std::string label;
  std::size_t instances = 0;
  std::size_t both_optimal = 0;
  std::size_t lp_wins = 0;
  double mean_astar_us = 0;
  double mean_lp_us = 0;
  double mean_rg_build_us = 0;
  double mean_lp_solve_us = 0;
  double mean_expansions = 0;
};

struct Summary {
  std::size_t instances = 0;
  std::size_t astar_optimal = 0;
  std::size_t astar_timeouts = 0;
  std::size_t lp_optimal = 0;
  std::size_t lp_timeouts = 0;
  std::size_t lp_truncated = 0;
  std::size_t errors = 0;
  std::size_t both_optimal = 0;
  std::size_t agreements = 0;
  std::size_t lp_wins = 0;
  double mean_astar_us = 0;
  double mean_lp_us = 0;
  double mean_rg_build_us = 0;
  double mean_lp_solve_us = 0;
  /// Over both-optimal instances: time of always-A*, always-LP and of the
  /// method the selection rule picks, and how often the pick was the faster one.
  double total_astar_us = 0;
  double total_lp_us = 0;
  double total_hybrid_us = 0;
  std::size_t selection_correct = 0;
  std::vector<BucketStats> by_length;
  std::vector<BucketStats> by_deviation;
};

Summary summarize(const std::vector<BenchmarkRecord>& records);
std::string format_summary(const Summary& s);

/// A model file and the logs that go with it.
struct CorpusEntry {
  std::filesystem::path model;
  std::vector<std::filesystem::path> logs;
};

/// Every directory below `root` holding exactly one .pnml file forms an
/// entry with all .xes and .csv files of that directory. Entries are sorted
/// by model path.
std::vector<CorpusEntry> discover_corpus(const std::filesystem::path& root);

}  // namespace unialign
