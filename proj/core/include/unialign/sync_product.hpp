#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unialign/petri_net.hpp"
#include "unialign/rational.hpp"

namespace unialign {

enum class MoveKind { Sync, Model, ModelTau, Log };

std::string_view to_string(MoveKind kind);

/// One transition of the synchronous product. A missing label stands for the
/// gap symbol ">>".
struct SyncMove {
  MoveKind kind = MoveKind::Sync;
  /// Product transition id, e.g. "(t1,t1')", "(t3,>>)" or "(>>,t2')".
  std::string id;
  std::optional<std::size_t> process_transition;
  std::optional<std::size_t> trace_transition;
  std::optional<Label> model_label;
  std::optional<Label> log_label;
  Rational cost;

  std::string model_display() const { return model_label ? model_label->display() : ">>"; }
  std::string log_display() const { return log_label ? log_label->display() : ">>"; }
};

struct CostConfig {
  /// Cost of a silent model move. Default 1/1000000.
  Rational tau_cost{1, 1000000};
  /// Cost of a visible model move or a log move.
  Rational deviation_cost{1};

  /// Throws InvalidInput unless 0 < tau_cost < deviation_cost.
  void validate() const;
};

/// Process model and trace model merged into one net.
///
/// Places are the model places followed by the trace places. Transitions are
/// ordered sync moves (by trace position, then process transition), then
/// model moves (process order), then log moves (trace order).
struct SynchronousProduct {
  PetriNet net;
  std::vector<SyncMove> moves;
  std::vector<Rational> costs;
  CostConfig cost_config;
  PetriNet model;
  PetriNet trace_model;
  std::size_t num_sync = 0;
  std::size_t num_model = 0;
  std::size_t num_log = 0;

  std::size_t model_places() const noexcept { return model.num_places(); }
  std::size_t trace_length() const noexcept { return trace_model.num_transitions(); }
  const Marking& initial_marking() const noexcept { return net.initial_marking(); }
  const Marking& final_marking() const noexcept { return net.final_marking(); }
};

/// Throws InvalidInput when `tn` is not a path net or the costs are invalid.
SynchronousProduct build_sync_product(const PetriNet& sn, const PetriNet& tn, const CostConfig& cost = {});
SynchronousProduct build_sync_product(const PetriNet& sn, const Trace& trace, const CostConfig& cost = {});

std::vector<Rational> cost_vector(const SynchronousProduct& sp);

/// Costs written as integers over a common denominator.
struct CostScale {
  /// Least common denominator of all costs.
  Rational denominator{1};
  std::vector<std::int64_t> scaled;

  static CostScale from(const std::vector<Rational>& costs);
  Rational unscale(std::int64_t value) const { return Rational(value) / denominator; }
};

/// PNML serialization of the product; each transition carries its move kind
/// and cost as a note.
std::string write_product_pnml(const SynchronousProduct& sp);

}  // namespace unialign
