#include "unialign/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "unialign/error.hpp"

namespace unialign {

namespace {

std::chrono::microseconds since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt_bool(const std::optional<bool>& b) {
  if (!b) return {};
  return *b ? "true" : "false";
}

std::string opt_cost(const std::optional<Rational>& c) { return c ? to_string(*c) : std::string(); }

std::string opt_count(const std::optional<std::size_t>& n) { return n ? std::to_string(*n) : std::string(); }

void note_alignment(BenchmarkRecord& r, const Alignment& a) {
  if (!r.alignment) {
    r.alignment = a;
    r.deviations = a.num_model + a.num_log;
    r.tau_moves = a.num_tau;
  }
}

void run_astar_side(const SynchronousProduct& sp, const RunConfig& cfg, BenchmarkRecord& r) {
  try {
    const SearchResult sr = astar_align(sp, cfg.search_config());
    r.astar_time = sr.stats.wall_time;
    r.astar_expansions = sr.stats.expansions;
    switch (sr.stats.outcome) {
      case SearchOutcome::Optimal:
        r.astar_outcome = InstanceOutcome::Optimal;
        r.astar_cost = sr.alignment->total_cost;
        note_alignment(r, *sr.alignment);
        break;
      case SearchOutcome::Timeout: r.astar_outcome = InstanceOutcome::Timeout; break;
      case SearchOutcome::Exhausted:
        r.astar_outcome = sr.stats.cap_prunes > 0 ? InstanceOutcome::Truncated : InstanceOutcome::Infeasible;
        break;
    }
  } catch (const Error& e) {
    r.astar_outcome = InstanceOutcome::Error;
    r.error = e.what();
  }
}

void run_lp_side(const SynchronousProduct& sp, const RunConfig& cfg, BenchmarkRecord& r) {
  const auto start = Clock::now();
  try {
    auto t = Clock::now();
    const ReachabilityGraph rg = build_reachability_graph(sp, cfg.limits_for(sp), start + cfg.timeout);
    r.rg_build_time = since(t);
    r.rg_nodes = rg.nodes.size();
    r.rg_edges = rg.edges.size();
    r.rg_truncated = rg.stats.truncated;
    if (rg.stats.truncated) {
      r.lp_outcome = rg.stats.reason == TruncationReason::Deadline ? InstanceOutcome::Timeout
                                                                    : InstanceOutcome::Truncated;
    } else if (!rg.final_index) {
      r.lp_outcome = InstanceOutcome::Infeasible;
    } else {
      t = Clock::now();
      const FlowSolution sol = solve_min_cost_unit_flow(assemble_flow_problem(rg));
      if (sol.status != FlowStatus::Optimal || !verify_integrality(sol)) {
        r.lp_outcome = InstanceOutcome::Error;
        r.error = "flow solution not optimal and integral";
      } else {
        const Alignment a = extract_alignment(rg, sp, sol);
        r.lp_solve_time = since(t);
        r.lp_outcome = InstanceOutcome::Optimal;
        r.lp_cost = sol.objective;
        note_alignment(r, a);
      }
    }
  } catch (const Error& e) {
    r.lp_outcome = InstanceOutcome::Error;
    r.error = e.what();
  }
  r.lp_total_time = since(start);
}

void add_mean(double& mean, std::size_t& n, double value) {
  ++n;
  mean += (value - mean) / static_cast<double>(n);
}

}  // namespace

std::string_view to_string(RunMethod method) {
  switch (method) {
    case RunMethod::AStar: return "astar";
    case RunMethod::LP: return "lp";
    case RunMethod::Hybrid: return "hybrid";
    case RunMethod::Both: return "both";
  }
  return "unknown";
}

RunMethod parse_run_method(std::string_view text) {
  if (text == "astar") return RunMethod::AStar;
  if (text == "lp") return RunMethod::LP;
  if (text == "hybrid") return RunMethod::Hybrid;
  if (text == "both") return RunMethod::Both;
  throw InvalidInput("unknown method '" + std::string(text) + "' (expected astar, lp, hybrid or both)");
}

void RunConfig::validate() const {
  cost.validate();
  if (timeout.count() <= 0) throw InvalidInput("timeout must be positive");
  if (parallel == 0) throw InvalidInput("parallelism must be at least 1");
  if (max_nodes == 0 || max_edges == 0 || token_cap == 0 || max_expansions == 0) {
    throw InvalidInput("limits must be at least 1");
  }
  if (thresholds.deviation_threshold < 0) throw InvalidInput("deviation threshold must be nonnegative");
}

ExplorationLimits RunConfig::limits_for(const SynchronousProduct& sp) const {
  ExplorationLimits limits = ExplorationLimits::defaults_for(sp);
  if (max_depth) limits.max_depth = *max_depth;
  limits.max_nodes = max_nodes;
  limits.max_edges = max_edges;
  limits.token_cap = token_cap;
  return limits;
}

SearchConfig RunConfig::search_config() const {
  SearchConfig s;
  s.heuristic = heuristic;
  s.timeout = timeout;
  s.max_expansions = max_expansions;
  s.token_cap = token_cap;
  return s;
}

std::string_view to_string(InstanceOutcome outcome) {
  switch (outcome) {
    case InstanceOutcome::Optimal: return "OPTIMAL";
    case InstanceOutcome::Timeout: return "TIMEOUT";
    case InstanceOutcome::Truncated: return "TRUNCATED";
    case InstanceOutcome::Infeasible: return "INFEASIBLE";
    case InstanceOutcome::Error: return "ERROR";
    case InstanceOutcome::Skipped: return "SKIPPED";
  }
  return "UNKNOWN";
}

BenchmarkRecord run_instance(const PetriNet& net, const Trace& trace, const std::string& model_id,
                             const Rational& fitness, const RunConfig& cfg) {
  BenchmarkRecord r;
  r.case_id = trace.case_id;
  r.model_id = model_id;
  r.trace_length = trace.activities.size();
  r.method_chosen = select_method(r.trace_length, fitness, cfg.thresholds);

  std::optional<SynchronousProduct> sp;
  try {
    sp = build_sync_product(net, trace, cfg.cost);
  } catch (const Error& e) {
    r.error = e.what();
    r.astar_outcome = r.lp_outcome = InstanceOutcome::Error;
    return r;
  }

  switch (cfg.method) {
    case RunMethod::AStar: run_astar_side(*sp, cfg, r); break;
    case RunMethod::LP: run_lp_side(*sp, cfg, r); break;
    case RunMethod::Both:
      run_astar_side(*sp, cfg, r);
      run_lp_side(*sp, cfg, r);
      break;
    case RunMethod::Hybrid:
      if (r.method_chosen == Method::LP) {
        run_lp_side(*sp, cfg, r);
        if (r.lp_outcome == InstanceOutcome::Truncated || r.lp_outcome == InstanceOutcome::Timeout) {
          r.fell_back = true;
          run_astar_side(*sp, cfg, r);
        }
      } else {
        run_astar_side(*sp, cfg, r);
      }
      break;
  }

  if (r.astar_outcome == InstanceOutcome::Optimal && r.lp_outcome == InstanceOutcome::Optimal) {
    r.costs_agree = *r.astar_cost == *r.lp_cost;
    r.lp_win = r.lp_total_time < r.astar_time;
  }
  return r;
}

std::vector<BenchmarkRecord> run_conformance(const PetriNet& net, const EventLog& log, const std::string& model_id,
                                             const RunConfig& cfg, Rational* fitness_out) {
  cfg.validate();
  const Rational fitness = token_replay_fitness(net, log);
  if (fitness_out) *fitness_out = fitness;
  std::vector<BenchmarkRecord> records(log.traces.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < log.traces.size(); i = next++) {
      records[i] = run_instance(net, log.traces[i], model_id, fitness, cfg);
    }
  };
  const std::size_t threads = std::min(cfg.parallel, std::max<std::size_t>(log.traces.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return records;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "case_id",        "model_id",       "trace_length",    "method_chosen",   "fell_back",
      "astar_outcome",  "lp_outcome",     "astar_cost",      "lp_cost",         "costs_agree",
      "lp_win",         "deviations",     "tau_moves",       "rg_nodes",        "rg_edges",
      "rg_truncated",   "astar_expansions", "error",         "astar_time_us",   "lp_total_time_us",
      "rg_build_time_us", "lp_solve_time_us"};
  return columns;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string to_csv_row(const BenchmarkRecord& r) {
  const std::vector<std::string> fields = {csv_field(r.case_id),
                                           csv_field(r.model_id),
                                           std::to_string(r.trace_length),
                                           std::string(to_string(r.method_chosen)),
                                           r.fell_back ? "true" : "false",
                                           std::string(to_string(r.astar_outcome)),
                                           std::string(to_string(r.lp_outcome)),
                                           opt_cost(r.astar_cost),
                                           opt_cost(r.lp_cost),
                                           opt_bool(r.costs_agree),
                                           opt_bool(r.lp_win),
                                           opt_count(r.deviations),
                                           opt_count(r.tau_moves),
                                           std::to_string(r.rg_nodes),
                                           std::to_string(r.rg_edges),
                                           r.rg_truncated ? "true" : "false",
                                           std::to_string(r.astar_expansions),
                                           csv_field(r.error),
                                           std::to_string(r.astar_time.count()),
                                           std::to_string(r.lp_total_time.count()),
                                           std::to_string(r.rg_build_time.count()),
                                           std::to_string(r.lp_solve_time.count())};
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += fields[i];
  }
  return out;
}

std::string write_csv(const std::vector<BenchmarkRecord>& records) {
  std::string out = csv_header() + "\n";
  for (const auto& r : records) out += to_csv_row(r) + "\n";
  return out;
}

std::string length_bucket(std::size_t length) {
  if (length == 0) return "0";
  if (length <= 10) return "1-10";
  if (length <= 20) return "11-20";
  if (length <= 30) return "21-30";
  if (length <= 50) return "31-50";
  if (length <= 100) return "51-100";
  return ">100";
}

std::string deviation_bucket(std::size_t deviations) {
  if (deviations == 0) return "0";
  if (deviations == 1) return "1";
  if (deviations <= 4) return "2-4";
  if (deviations <= 10) return "5-10";
  return ">10";
}

const std::vector<std::string>& length_bucket_labels() {
  static const std::vector<std::string> labels = {"0", "1-10", "11-20", "21-30", "31-50", "51-100", ">100"};
  return labels;
}

const std::vector<std::string>& deviation_bucket_labels() {
  static const std::vector<std::string> labels = {"0", "1", "2-4", "5-10", ">10"};
  return labels;
}

Summary summarize(const std::vector<BenchmarkRecord>& records) {
  Summary s;
  struct Acc {
    BucketStats stats;
    std::size_t n_both = 0;
    std::size_t n_exp = 0;
  };
  std::map<std::string, Acc> by_length;
  std::map<std::string, Acc> by_dev;
  for (const auto& l : length_bucket_labels()) by_length[l].stats.label = l;
  for (const auto& l : deviation_bucket_labels()) by_dev[l].stats.label = l;

  std::size_t n_both = 0;
  for (const auto& r : records) {
    ++s.instances;
    if (r.astar_outcome == InstanceOutcome::Optimal) ++s.astar_optimal;
    if (r.astar_outcome == InstanceOutcome::Timeout) ++s.astar_timeouts;
    if (r.lp_outcome == InstanceOutcome::Optimal) ++s.lp_optimal;
    if (r.lp_outcome == InstanceOutcome::Timeout) ++s.lp_timeouts;
    if (r.lp_outcome == InstanceOutcome::Truncated) ++s.lp_truncated;
    if (r.astar_outcome == InstanceOutcome::Error || r.lp_outcome == InstanceOutcome::Error) ++s.errors;

    std::vector<Acc*> buckets{&by_length[length_bucket(r.trace_length)]};
    if (r.deviations) buckets.push_back(&by_dev[deviation_bucket(*r.deviations)]);
    for (Acc* b : buckets) {
      ++b->stats.instances;
      if (r.astar_outcome == InstanceOutcome::Optimal) {
        add_mean(b->stats.mean_expansions, b->n_exp, static_cast<double>(r.astar_expansions));
      }
    }
    if (!r.costs_agree) continue;

    const double a = static_cast<double>(r.astar_time.count());
    const double l = static_cast<double>(r.lp_total_time.count());
    ++s.both_optimal;
    if (*r.costs_agree) ++s.agreements;
    if (*r.lp_win) ++s.lp_wins;
    ++n_both;
    s.mean_astar_us += (a - s.mean_astar_us) / static_cast<double>(n_both);
    s.mean_lp_us += (l - s.mean_lp_us) / static_cast<double>(n_both);
    s.mean_rg_build_us += (static_cast<double>(r.rg_build_time.count()) - s.mean_rg_build_us) / static_cast<double>(n_both);
    s.mean_lp_solve_us += (static_cast<double>(r.lp_solve_time.count()) - s.mean_lp_solve_us) / static_cast<double>(n_both);
    s.total_astar_us += a;
    s.total_lp_us += l;
    const bool picked_lp = r.method_chosen == Method::LP;
    s.total_hybrid_us += picked_lp ? l : a;
    if (picked_lp == *r.lp_win) ++s.selection_correct;

    for (Acc* b : buckets) {
      ++b->stats.both_optimal;
      if (*r.lp_win) ++b->stats.lp_wins;
      ++b->n_both;
      const double n = static_cast<double>(b->n_both);
      b->stats.mean_astar_us += (a - b->stats.mean_astar_us) / n;
      b->stats.mean_lp_us += (l - b->stats.mean_lp_us) / n;
      b->stats.mean_rg_build_us += (static_cast<double>(r.rg_build_time.count()) - b->stats.mean_rg_build_us) / n;
      b->stats.mean_lp_solve_us += (static_cast<double>(r.lp_solve_time.count()) - b->stats.mean_lp_solve_us) / n;
    }
  }
  for (const auto& l : length_bucket_labels()) s.by_length.push_back(by_length[l].stats);
  for (const auto& l : deviation_bucket_labels()) s.by_deviation.push_back(by_dev[l].stats);
  return s;
}

std::string format_summary(const Summary& s) {
  auto pct = [](std::size_t num, std::size_t den) -> std::string {
    if (den == 0) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * static_cast<double>(num) / static_cast<double>(den));
    return buf;
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return std::string(buf);
  };
  auto ratio = [](double a, double b) -> std::string {
    if (b <= 0) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fx", a / b);
    return buf;
  };
  std::ostringstream out;
  out << "instances: " << s.instances << "\n";
  out << "astar: " << s.astar_optimal << " optimal, " << s.astar_timeouts << " timeout\n";
  out << "lp: " << s.lp_optimal << " optimal, " << s.lp_timeouts << " timeout, " << s.lp_truncated
      << " truncated\n";
  out << "errors: " << s.errors << "\n";
  out << "both optimal: " << s.both_optimal << "\n";
  out << "cost agreement: " << s.agreements << "/" << s.both_optimal << " (" << pct(s.agreements, s.both_optimal)
      << ")\n";
  out << "lp win rate: " << pct(s.lp_wins, s.both_optimal) << "\n";
  out << "mean astar time (us): " << num(s.mean_astar_us) << "\n";
  out << "mean lp time (us): " << num(s.mean_lp_us) << " (rg build " << num(s.mean_rg_build_us) << ", lp solve "
      << num(s.mean_lp_solve_us) << ")\n";
  out << "speedup of lp over astar: " << ratio(s.mean_astar_us, s.mean_lp_us) << "\n";
  out << "hybrid total (us): " << num(s.total_hybrid_us) << " vs astar " << num(s.total_astar_us) << ", lp "
      << num(s.total_lp_us) << "; selection picked the faster method in "
      << pct(s.selection_correct, s.both_optimal) << "\n";

  auto table = [&](const char* title, const std::vector<BucketStats>& rows) {
    out << "\n" << title << "\n";
    out << "bucket,instances,both_optimal,lp_win_rate,mean_astar_us,mean_lp_us,mean_rg_build_us,mean_lp_solve_us,"
           "speedup,mean_astar_expansions\n";
    for (const auto& b : rows) {
      out << b.label << ',' << b.instances << ',' << b.both_optimal << ',' << pct(b.lp_wins, b.both_optimal) << ','
          << num(b.mean_astar_us) << ',' << num(b.mean_lp_us) << ',' << num(b.mean_rg_build_us) << ','
          << num(b.mean_lp_solve_us) << ',' << ratio(b.mean_astar_us, b.mean_lp_us) << ','
          << num(b.mean_expansions) << "\n";
    }
  };
  table("by trace length", s.by_length);
  table("by deviations", s.by_deviation);
  return out.str();
}

std::vector<CorpusEntry> discover_corpus(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw ParseError("corpus directory '" + root.string() + "' does not exist");
  std::vector<fs::path> dirs{root};
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_directory()) dirs.push_back(e.path());
  }
  std::vector<CorpusEntry> entries;
  for (const auto& dir : dirs) {
    std::vector<fs::path> models;
    std::vector<fs::path> logs;
    for (const auto& f : fs::directory_iterator(dir)) {
      if (!f.is_regular_file()) continue;
      const auto ext = f.path().extension();
      if (ext == ".pnml") models.push_back(f.path());
      if (ext == ".xes" || ext == ".csv") logs.push_back(f.path());
    }
    if (models.size() != 1) continue;
    std::sort(logs.begin(), logs.end());
    entries.push_back({models.front(), std::move(logs)});
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.model < b.model; });
  return entries;
}

}  // namespace unialign
