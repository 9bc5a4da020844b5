#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "unialign/matrix.hpp"

namespace unialign {

/// Transition label: either a visible activity name or the silent label.
class Label {
 public:
  /// The silent label.
  static Label tau() { return Label{}; }
  static Label activity(std::string name);

  bool is_tau() const noexcept { return !name_.has_value(); }
  /// Activity name. Must not be called on the silent label.
  const std::string& name() const;
  /// Printable form; the silent label renders as "tau".
  std::string display() const { return name_ ? *name_ : std::string("tau"); }

  bool operator==(const Label&) const = default;

 private:
  Label() = default;
  std::optional<std::string> name_;
};

/// Token count per place, in the owning net's place order.
class Marking {
 public:
  Marking() = default;
  explicit Marking(std::vector<std::uint32_t> tokens) : tokens_(std::move(tokens)) {}
  static Marking zeros(std::size_t places) { return Marking(std::vector<std::uint32_t>(places, 0)); }

  std::size_t size() const noexcept { return tokens_.size(); }
  std::uint32_t operator[](std::size_t place) const { return tokens_[place]; }
  std::uint32_t& operator[](std::size_t place) { return tokens_[place]; }
  const std::vector<std::uint32_t>& tokens() const noexcept { return tokens_; }
  std::uint64_t total() const noexcept;

  bool operator==(const Marking&) const = default;

 private:
  std::vector<std::uint32_t> tokens_;
};

struct MarkingHash {
  std::size_t operator()(const Marking& m) const noexcept;
};

enum class ArcDirection { PlaceToTransition, TransitionToPlace };

/// Flow arc between a place and a transition, by index into the owning net.
struct Arc {
  std::size_t place = 0;
  std::size_t transition = 0;
  ArcDirection direction = ArcDirection::PlaceToTransition;
  std::uint32_t weight = 1;

  bool operator==(const Arc&) const = default;
};

/// (place index, token count) pair of a transition's pre- or postset.
struct PlaceWeight {
  std::size_t place;
  std::uint32_t weight;
};

/// Labeled marked Petri net. Immutable after construction.
///
/// Places and transitions keep the order given to the constructor; nets read
/// from files go through PetriNetBuilder, which sorts both in natural id order
/// so that matrices and markings are reproducible.
class PetriNet {
 public:
  PetriNet() = default;
  PetriNet(std::vector<std::string> places, std::vector<std::string> transitions,
           std::vector<Label> labels, std::vector<Arc> arcs, Marking initial_marking,
           Marking final_marking);

  std::size_t num_places() const noexcept { return places_.size(); }
  std::size_t num_transitions() const noexcept { return transitions_.size(); }

  const std::vector<std::string>& places() const noexcept { return places_; }
  const std::vector<std::string>& transitions() const noexcept { return transitions_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  const Label& label(std::size_t transition) const { return labels_[transition]; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  const Marking& initial_marking() const noexcept { return initial_; }
  const Marking& final_marking() const noexcept { return final_; }

  std::optional<std::size_t> place_index(std::string_view id) const;
  std::optional<std::size_t> transition_index(std::string_view id) const;
  /// Like transition_index but throws InvalidInput for unknown ids.
  std::size_t require_transition(std::string_view id) const;

  /// Tokens consumed by `transition` (duplicate arcs are summed, zero weights dropped).
  std::span<const PlaceWeight> preset(std::size_t transition) const { return preset_[transition]; }
  /// Tokens produced by `transition`.
  std::span<const PlaceWeight> postset(std::size_t transition) const { return postset_[transition]; }

 private:
  std::vector<std::string> places_;
  std::vector<std::string> transitions_;
  std::vector<Label> labels_;
  std::vector<Arc> arcs_;
  Marking initial_;
  Marking final_;
  std::unordered_map<std::string, std::size_t> place_lookup_;
  std::unordered_map<std::string, std::size_t> transition_lookup_;
  std::vector<std::vector<PlaceWeight>> preset_;
  std::vector<std::vector<PlaceWeight>> postset_;
};

/// Natural ordering of ids: digit runs compare numerically, so "p2" < "p10".
/// Ties between numerically equal runs ("p01" vs "p1") fall back to plain
/// lexicographic order, making this a strict total order.
bool natural_less(std::string_view a, std::string_view b);

/// Incremental construction by id, with canonical (natural) ordering.
class PetriNetBuilder {
 public:
  PetriNetBuilder& add_place(std::string id, std::uint32_t initial_tokens = 0,
                             std::uint32_t final_tokens = 0);
  PetriNetBuilder& add_transition(std::string id, Label label);
  /// Either endpoint order is accepted; exactly one endpoint must be a place.
  PetriNetBuilder& add_arc(const std::string& source, const std::string& target,
                           std::uint32_t weight = 1);
  PetriNetBuilder& set_initial(const std::string& place, std::uint32_t tokens);
  PetriNetBuilder& set_final(const std::string& place, std::uint32_t tokens);
  /// Clears any final tokens set so far (used when a final marking is inferred).
  PetriNetBuilder& clear_final();

  bool has_place(const std::string& id) const;
  bool has_transition(const std::string& id) const;

  /// Sorts places and transitions with natural_less and builds the net.
  /// Throws SemanticError for arcs naming unknown nodes or place-place /
  /// transition-transition arcs.
  PetriNet build() const;

 private:
  struct PlaceEntry {
    std::string id;
    std::uint32_t initial = 0;
    std::uint32_t final = 0;
  };
  struct TransitionEntry {
    std::string id;
    Label label;
  };
  struct ArcEntry {
    std::string source;
    std::string target;
    std::uint32_t weight;
  };
  std::vector<PlaceEntry> places_;
  std::vector<TransitionEntry> transitions_;
  std::vector<ArcEntry> arcs_;
  std::unordered_map<std::string, std::size_t> place_pos_;
  std::unordered_map<std::string, std::size_t> transition_pos_;
};

/// Backward (consumed), forward (produced) and combined incidence matrices,
/// |P| x |T| with rows in place order and columns in transition order.
struct IncidenceTriple {
  IntMatrix w_minus;
  IntMatrix w_plus;
  IntMatrix incidence;
};

/// An observed activity sequence.
struct Trace {
  std::string case_id;
  std::vector<std::string> activities;

  bool operator==(const Trace&) const = default;
};

std::vector<std::size_t> enabled_transitions(const PetriNet& net, const Marking& m);
bool is_enabled(const PetriNet& net, const Marking& m, std::size_t transition);

/// Fires `transition` at `m`. Throws NotEnabled if it is not enabled and
/// InvalidInput on a dimension mismatch.
Marking fire(const PetriNet& net, const Marking& m, std::size_t transition);
Marking fire(const PetriNet& net, const Marking& m, std::string_view transition);

IncidenceTriple incidence_matrices(const PetriNet& net);

/// Linear path net p0 -t1-> p1 -t2-> ... -tn-> pn labeled with the trace's
/// activities; initial marking [p0], final marking [pn].
PetriNet build_trace_model(const Trace& trace);

/// True if `net` has the shape produced by build_trace_model: a single
/// chain of places and visible transitions from the initial to the final place.
bool is_path_net(const PetriNet& net);

enum class DiagnosticKind {
  UnconnectedPlace,
  UnconnectedTransition,
  UnreachablePlace,
  UnreachableTransition,
  MultipleSourcePlaces,
  MultipleSinkPlaces,
  ZeroWeightArc,
  DuplicateArc,
};

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
};

/// Structural warnings for nets that are meant to be workflow nets.
/// Never throws; an empty result means no issue was found.
std::vector<Diagnostic> validate_workflow_net(const PetriNet& net);

std::string_view to_string(DiagnosticKind kind);

}  // namespace unialign
