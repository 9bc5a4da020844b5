#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "unialign/alignment_io.hpp"
#include "unialign/error.hpp"
#include "unialign/event_log.hpp"
#include "unialign/harness.hpp"
#include "unialign/noise.hpp"
#include "unialign/pnml.hpp"
#include "unialign/process_tree.hpp"
#include "unialign/reachability.hpp"
#include "unialign/selector.hpp"
#include "unialign/sync_product.hpp"

namespace fs = std::filesystem;
using namespace unialign;

namespace {

enum ExitCode : int { kOk = 0, kParse = 2, kInfeasible = 3, kTimeout = 4, kInternal = 5 };

struct CommonOptions {
  std::string method = "both";
  std::string epsilon = "1/1000000";
  std::string deviation_cost = "1";
  std::optional<std::size_t> max_depth;
  std::size_t max_nodes = 2'000'000;
  std::size_t max_edges = 8'000'000;
  std::uint32_t token_cap = 8;
  long long timeout_ms = 60'000;
  std::string heuristic = "marking-eq";
  std::size_t max_expansions = 50'000'000;
  std::size_t length_threshold = 20;
  std::string dev_threshold = "3/2";
  std::size_t parallel = 1;
  std::uint64_t seed = 0;
  std::string out;

  RunConfig to_config() const {
    RunConfig cfg;
    cfg.method = parse_run_method(method);
    cfg.cost.tau_cost = parse_rational(epsilon);
    cfg.cost.deviation_cost = parse_rational(deviation_cost);
    cfg.max_depth = max_depth;
    cfg.max_nodes = max_nodes;
    cfg.max_edges = max_edges;
    cfg.token_cap = token_cap;
    cfg.timeout = std::chrono::milliseconds(timeout_ms);
    if (heuristic == "zero") {
      cfg.heuristic = Heuristic::Zero;
    } else if (heuristic == "marking-eq") {
      cfg.heuristic = Heuristic::MarkingEquation;
    } else {
      throw InvalidInput("unknown heuristic '" + heuristic + "' (expected zero or marking-eq)");
    }
    cfg.max_expansions = max_expansions;
    cfg.thresholds.length_threshold = length_threshold;
    cfg.thresholds.deviation_threshold = parse_rational(dev_threshold);
    cfg.parallel = parallel;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
  }
};

void add_run_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--method", o.method, "astar, lp, hybrid or both")->capture_default_str();
  cmd->add_option("--epsilon", o.epsilon, "cost of a silent model move (rational)")->capture_default_str();
  cmd->add_option("--deviation-cost", o.deviation_cost, "cost of a visible deviation (rational)")
      ->capture_default_str();
  cmd->add_option("--max-depth", o.max_depth, "BFS depth limit for the reachability graph");
  cmd->add_option("--max-nodes", o.max_nodes, "node limit for the reachability graph")->capture_default_str();
  cmd->add_option("--max-edges", o.max_edges, "edge limit for the reachability graph")->capture_default_str();
  cmd->add_option("--token-cap", o.token_cap, "tokens allowed per place")->capture_default_str();
  cmd->add_option("--timeout-ms", o.timeout_ms, "budget per instance and method")->capture_default_str();
  cmd->add_option("--heuristic", o.heuristic, "A* heuristic: zero or marking-eq")->capture_default_str();
  cmd->add_option("--max-expansions", o.max_expansions, "A* expansion limit")->capture_default_str();
  cmd->add_option("--length-threshold", o.length_threshold, "selection: trace length threshold")
      ->capture_default_str();
  cmd->add_option("--dev-threshold", o.dev_threshold, "selection: expected deviation threshold (rational)")
      ->capture_default_str();
  cmd->add_option("--parallel", o.parallel, "concurrent instances")->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
}

std::string micros(std::chrono::microseconds us) { return std::to_string(us.count()) + " us"; }

int exit_for(InstanceOutcome o) {
  switch (o) {
    case InstanceOutcome::Optimal: return kOk;
    case InstanceOutcome::Timeout:
    case InstanceOutcome::Truncated: return kTimeout;
    case InstanceOutcome::Infeasible: return kInfeasible;
    case InstanceOutcome::Error:
    case InstanceOutcome::Skipped: return kInternal;
  }
  return kInternal;
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
}

int cmd_align(const std::string& model_path, const std::string& trace_spec, const CommonOptions& opts, bool json) {
  const PetriNet net = read_pnml_file(model_path);
  const Trace trace = parse_trace_spec(trace_spec);
  const RunConfig cfg = opts.to_config();
  const Rational fitness = token_replay_fitness(net, EventLog{{trace}, "cli", 0});
  const BenchmarkRecord r = run_instance(net, trace, model_path, fitness, cfg);

  if (json && r.alignment) {
    std::cout << alignment_to_json(*r.alignment) << "\n";
  } else if (r.alignment) {
    std::cout << format_move_table(*r.alignment);
  }

  const bool ran_astar = r.astar_outcome != InstanceOutcome::Skipped;
  const bool ran_lp = r.lp_outcome != InstanceOutcome::Skipped;
  std::ostream& info = json ? std::cerr : std::cout;
  if (r.alignment) info << "method: " << to_string(r.alignment->method) << "\n";
  if (cfg.method == RunMethod::Hybrid) {
    info << "selected: " << to_string(r.method_chosen) << (r.fell_back ? " (fell back to ASTAR)" : "") << "\n";
  }
  if (ran_astar) {
    info << "astar: " << to_string(r.astar_outcome);
    if (r.astar_cost) info << " cost " << to_string(*r.astar_cost);
    info << ", " << r.astar_expansions << " expansions, " << micros(r.astar_time) << "\n";
  }
  if (ran_lp) {
    info << "lp: " << to_string(r.lp_outcome);
    if (r.lp_cost) info << " cost " << to_string(*r.lp_cost);
    info << ", RG " << r.rg_nodes << " nodes / " << r.rg_edges << " edges" << (r.rg_truncated ? " (truncated)" : "")
         << ", rg build " << micros(r.rg_build_time) << ", lp solve " << micros(r.lp_solve_time) << ", total "
         << micros(r.lp_total_time) << "\n";
  }
  if (r.costs_agree) info << (*r.costs_agree ? "AGREE" : "DISAGREE") << "\n";
  if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";

  if (r.costs_agree && !*r.costs_agree) return kInternal;
  if (r.alignment) return kOk;
  switch (cfg.method) {
    case RunMethod::AStar: return exit_for(r.astar_outcome);
    case RunMethod::LP: return exit_for(r.lp_outcome);
    case RunMethod::Hybrid: return exit_for(r.astar_outcome != InstanceOutcome::Skipped ? r.astar_outcome : r.lp_outcome);
    case RunMethod::Both: return std::max(exit_for(r.astar_outcome), exit_for(r.lp_outcome));
  }
  return kInternal;
}

void emit_report(const std::vector<BenchmarkRecord>& records, const CommonOptions& opts, const std::string& preamble) {
  const std::string csv = write_csv(records);
  const std::string summary = preamble + format_summary(summarize(records));
  if (opts.out.empty()) {
    std::cout << csv;
    std::cerr << summary;
  } else {
    write_output(opts.out, csv);
    std::cout << summary;
  }
}

int cmd_conformance(const std::string& model_path, const std::string& log_path, const CommonOptions& opts) {
  const PetriNet net = read_pnml_file(model_path);
  const EventLog log = read_log_file(log_path);
  const RunConfig cfg = opts.to_config();
  Rational fitness;
  const auto records = run_conformance(net, log, fs::path(model_path).filename().string(), cfg, &fitness);
  emit_report(records, opts, "fitness: " + to_string(fitness) + "\n");
  return kOk;
}

int cmd_bench(const std::string& corpus, const CommonOptions& opts) {
  const RunConfig cfg = opts.to_config();
  std::vector<BenchmarkRecord> all;
  std::ostringstream pre;
  const auto entries = discover_corpus(corpus);
  for (const auto& entry : entries) {
    PetriNet net;
    try {
      net = read_pnml_file(entry.model);
    } catch (const Error& e) {
      pre << "skipping " << entry.model.string() << ": " << e.what() << "\n";
      continue;
    }
    for (const auto& log_path : entry.logs) {
      EventLog log;
      try {
        log = read_log_file(log_path);
      } catch (const Error& e) {
        pre << "skipping " << log_path.string() << ": " << e.what() << "\n";
        continue;
      }
      const std::string id = fs::relative(log_path, corpus).generic_string();
      Rational fitness;
      auto records = run_conformance(net, log, id, cfg, &fitness);
      pre << id << ": " << records.size() << " traces, fitness " << to_string(fitness) << "\n";
      for (auto& r : records) all.push_back(std::move(r));
    }
  }
  pre << "models: " << entries.size() << "\n";
  emit_report(all, opts, pre.str());
  return kOk;
}

int cmd_gen(const std::string& tree_spec, std::size_t traces, const NoiseSpec& noise_in, std::uint64_t seed,
            const std::string& out_dir) {
  const ProcessTree tree = parse_process_tree(tree_spec);
  const PetriNet net = tree_to_net(tree);
  NoiseSpec noise = noise_in;
  noise.alphabet = tree_alphabet(tree);

  SeededRng rng(seed);
  EventLog clean{{}, "clean", 0};
  EventLog noisy{{}, "noisy", 0};
  for (std::size_t i = 0; i < traces; ++i) {
    Trace t = sample_trace(tree, rng, "case" + std::to_string(i + 1));
    noise.seed = seed * 1'000'003ULL + i;
    Trace n = inject_noise(t, noise);
    n.case_id = t.case_id;
    clean.traces.push_back(std::move(t));
    noisy.traces.push_back(std::move(n));
  }

  fs::create_directories(out_dir);
  write_output((fs::path(out_dir) / "model.pnml").string(), write_pnml(net, "generated"));
  write_output((fs::path(out_dir) / "clean.xes").string(), write_xes(clean));
  write_output((fs::path(out_dir) / "noisy.xes").string(), write_xes(noisy));
  std::cout << "tree: " << to_string(tree) << "\n"
            << "net: " << net.num_places() << " places, " << net.num_transitions() << " transitions\n"
            << "wrote " << traces << " clean and " << traces << " noisy traces to " << out_dir << "\n";
  return kOk;
}

int cmd_inspect(const std::string& model_path, const std::string& trace_spec, const CommonOptions& opts) {
  const PetriNet net = read_pnml_file(model_path);
  const Trace trace = parse_trace_spec(trace_spec);
  const RunConfig cfg = opts.to_config();
  const SynchronousProduct sp = build_sync_product(net, trace, cfg.cost);

  std::size_t tau = 0;
  for (const auto& m : sp.moves) tau += m.kind == MoveKind::ModelTau;
  std::cout << "model: " << net.num_places() << " places, " << net.num_transitions() << " transitions\n";
  for (const auto& d : validate_workflow_net(net)) std::cout << "  " << to_string(d.kind) << ": " << d.message << "\n";
  std::cout << "trace: " << trace.activities.size() << " events\n";
  std::cout << "product: " << sp.net.num_places() << " places, " << sp.moves.size() << " transitions (" << sp.num_sync
            << " sync, " << sp.num_model - tau << " model, " << tau << " tau, " << sp.num_log << " log)\n";

  const ReachabilityGraph rg = build_reachability_graph(sp, cfg.limits_for(sp));
  const bool tu = check_tu_column_structure(node_arc_incidence(rg));
  std::cout << "RG: " << rg.nodes.size() << " nodes, " << rg.edges.size()
            << " edges; TU column structure: " << (tu ? "OK" : "VIOLATED") << "\n";
  std::cout << "final marking reached: " << (rg.final_index ? "yes" : "no") << "\n";
  std::cout << "depth reached: " << rg.stats.depth_reached << ", self-loops pruned: " << rg.stats.edges_pruned_self_loops
            << ", cap prunes: " << rg.stats.cap_prunes << "\n";
  std::cout << "truncated: " << (rg.stats.truncated ? "yes" : "no");
  if (rg.stats.truncated) std::cout << " (" << to_string(rg.stats.reason) << ")";
  std::cout << "\n";
  return tu ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal alignments of event-log traces against Petri net process models"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string model, trace_spec, log_path, corpus, tree_spec, out_dir;
  bool json = false;

  auto* align = app.add_subcommand("align", "align one trace against a model");
  align->add_option("model", model, "PNML model file")->required();
  align->add_option("--trace", trace_spec, "comma-separated activities, empty for the empty trace")->required();
  align->add_flag("--json", json, "print the alignment as JSON");
  add_run_options(align, opts);

  auto* conf = app.add_subcommand("conformance", "align every trace of a log and summarize");
  conf->add_option("model", model, "PNML model file")->required();
  conf->add_option("log", log_path, "XES or CSV log")->required();
  conf->add_option("--out", opts.out, "CSV output file (default: standard output)");
  add_run_options(conf, opts);

  auto* bench = app.add_subcommand("bench", "run every model/log pair of a corpus directory");
  bench->add_option("corpus", corpus, "corpus directory")->required();
  bench->add_option("--out", opts.out, "CSV output file (default: standard output)");
  add_run_options(bench, opts);

  std::size_t traces = 100;
  NoiseSpec noise;
  auto* gen = app.add_subcommand("gen", "generate a model and clean/noisy logs from a block-structured spec");
  gen->add_option("--tree", tree_spec, "e.g. seq(a, and(b, c), loop(d), e)")->required();
  gen->add_option("--traces", traces, "traces per log")->capture_default_str();
  gen->add_option("--insert-prob", noise.insert_prob, "per-gap insertion probability")->capture_default_str();
  gen->add_option("--delete-prob", noise.delete_prob, "per-event deletion probability")->capture_default_str();
  gen->add_option("--swap-prob", noise.swap_prob, "per-pair swap probability")->capture_default_str();
  gen->add_option("--seed", opts.seed, "random seed")->capture_default_str();
  gen->add_option("--out", out_dir, "output directory")->required();

  auto* inspect = app.add_subcommand("inspect", "structural report for a model and trace");
  inspect->add_option("model", model, "PNML model file")->required();
  inspect->add_option("--trace", trace_spec, "comma-separated activities")->capture_default_str();
  add_run_options(inspect, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParse;
  }

  try {
    if (*align) return cmd_align(model, trace_spec, opts, json);
    if (*conf) return cmd_conformance(model, log_path, opts);
    if (*bench) return cmd_bench(corpus, opts);
    if (*gen) return cmd_gen(tree_spec, traces, noise, opts.seed, out_dir);
    if (*inspect) return cmd_inspect(model, trace_spec, opts);
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return e.truncated() ? kTimeout : kInfeasible;
  } catch (const InternalInvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
