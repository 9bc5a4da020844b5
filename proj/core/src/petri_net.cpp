#include "unialign/petri_net.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "unialign/error.hpp"

namespace unialign {

Label Label::activity(std::string name) {
  if (name.empty()) throw InvalidInput("activity label must not be empty");
  Label l;
  l.name_ = std::move(name);
  return l;
}

const std::string& Label::name() const {
  if (!name_) throw InvalidInput("the silent label has no activity name");
  return *name_;
}

std::uint64_t Marking::total() const noexcept {
  return std::accumulate(tokens_.begin(), tokens_.end(), std::uint64_t{0});
}

std::size_t MarkingHash::operator()(const Marking& m) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ m.size();
  for (std::uint32_t v : m.tokens()) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 31;
  }
  return static_cast<std::size_t>(h);
}

PetriNet::PetriNet(std::vector<std::string> places, std::vector<std::string> transitions,
                   std::vector<Label> labels, std::vector<Arc> arcs, Marking initial_marking,
                   Marking final_marking)
    : places_(std::move(places)),
      transitions_(std::move(transitions)),
      labels_(std::move(labels)),
      arcs_(std::move(arcs)),
      initial_(std::move(initial_marking)),
      final_(std::move(final_marking)) {
  if (labels_.size() != transitions_.size()) {
    throw InvalidInput("label count does not match transition count");
  }
  if (initial_.size() != places_.size() || final_.size() != places_.size()) {
    throw InvalidInput("initial and final markings must have one entry per place");
  }
  for (std::size_t p = 0; p < places_.size(); ++p) {
    if (!place_lookup_.emplace(places_[p], p).second) {
      throw InvalidInput("duplicate place id '" + places_[p] + "'");
    }
  }
  for (std::size_t t = 0; t < transitions_.size(); ++t) {
    if (place_lookup_.contains(transitions_[t])) {
      throw InvalidInput("id '" + transitions_[t] + "' names both a place and a transition");
    }
    if (!transition_lookup_.emplace(transitions_[t], t).second) {
      throw InvalidInput("duplicate transition id '" + transitions_[t] + "'");
    }
  }
  preset_.resize(transitions_.size());
  postset_.resize(transitions_.size());
  auto accumulate = [](std::vector<PlaceWeight>& list, std::size_t place, std::uint32_t weight) {
    for (auto& pw : list) {
      if (pw.place == place) {
        pw.weight += weight;
        return;
      }
    }
    list.push_back({place, weight});
  };
  for (const Arc& a : arcs_) {
    if (a.place >= places_.size() || a.transition >= transitions_.size()) {
      throw InvalidInput("arc endpoint index out of range");
    }
    if (a.weight == 0) continue;
    auto& list = a.direction == ArcDirection::PlaceToTransition ? preset_[a.transition] : postset_[a.transition];
    accumulate(list, a.place, a.weight);
  }
  auto by_place = [](const PlaceWeight& x, const PlaceWeight& y) { return x.place < y.place; };
  for (auto& list : preset_) std::sort(list.begin(), list.end(), by_place);
  for (auto& list : postset_) std::sort(list.begin(), list.end(), by_place);
}

std::optional<std::size_t> PetriNet::place_index(std::string_view id) const {
  auto it = place_lookup_.find(std::string(id));
  if (it == place_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> PetriNet::transition_index(std::string_view id) const {
  auto it = transition_lookup_.find(std::string(id));
  if (it == transition_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t PetriNet::require_transition(std::string_view id) const {
  auto t = transition_index(id);
  if (!t) throw InvalidInput("unknown transition '" + std::string(id) + "'");
  return *t;
}

bool natural_less(std::string_view a, std::string_view b) {
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && is_digit(a[ie])) ++ie;
      while (je < b.size() && is_digit(b[je])) ++je;
      std::size_t is = i;
      std::size_t js = j;
      while (is + 1 < ie && a[is] == '0') ++is;
      while (js + 1 < je && b[js] == '0') ++js;
      const std::size_t la = ie - is;
      const std::size_t lb = je - js;
      if (la != lb) return la < lb;
      if (int c = a.substr(is, la).compare(b.substr(js, lb)); c != 0) return c < 0;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
      ++i;
      ++j;
    }
  }
  if ((i < a.size()) != (j < b.size())) return j < b.size();
  return a < b;
}

PetriNetBuilder& PetriNetBuilder::add_place(std::string id, std::uint32_t initial_tokens,
                                            std::uint32_t final_tokens) {
  if (place_pos_.contains(id) || transition_pos_.contains(id)) {
    throw SemanticError("duplicate node id '" + id + "'");
  }
  place_pos_.emplace(id, places_.size());
  places_.push_back({std::move(id), initial_tokens, final_tokens});
  return *this;
}

PetriNetBuilder& PetriNetBuilder::add_transition(std::string id, Label label) {
  if (place_pos_.contains(id) || transition_pos_.contains(id)) {
    throw SemanticError("duplicate node id '" + id + "'");
  }
  transition_pos_.emplace(id, transitions_.size());
  transitions_.push_back({std::move(id), std::move(label)});
  return *this;
}

PetriNetBuilder& PetriNetBuilder::add_arc(const std::string& source, const std::string& target,
                                          std::uint32_t weight) {
  arcs_.push_back({source, target, weight});
  return *this;
}

PetriNetBuilder& PetriNetBuilder::set_initial(const std::string& place, std::uint32_t tokens) {
  auto it = place_pos_.find(place);
  if (it == place_pos_.end()) throw SemanticError("initial marking names unknown place '" + place + "'");
  places_[it->second].initial = tokens;
  return *this;
}

PetriNetBuilder& PetriNetBuilder::set_final(const std::string& place, std::uint32_t tokens) {
  auto it = place_pos_.find(place);
  if (it == place_pos_.end()) throw SemanticError("final marking names unknown place '" + place + "'");
  places_[it->second].final = tokens;
  return *this;
}

PetriNetBuilder& PetriNetBuilder::clear_final() {
  for (auto& p : places_) p.final = 0;
  return *this;
}

bool PetriNetBuilder::has_place(const std::string& id) const { return place_pos_.contains(id); }

bool PetriNetBuilder::has_transition(const std::string& id) const { return transition_pos_.contains(id); }

PetriNet PetriNetBuilder::build() const {
  std::vector<std::size_t> place_order(places_.size());
  std::iota(place_order.begin(), place_order.end(), 0);
  std::sort(place_order.begin(), place_order.end(),
            [&](std::size_t x, std::size_t y) { return natural_less(places_[x].id, places_[y].id); });
  std::vector<std::size_t> transition_order(transitions_.size());
  std::iota(transition_order.begin(), transition_order.end(), 0);
  std::sort(transition_order.begin(), transition_order.end(), [&](std::size_t x, std::size_t y) {
    return natural_less(transitions_[x].id, transitions_[y].id);
  });

  std::unordered_map<std::string, std::size_t> place_index;
  std::unordered_map<std::string, std::size_t> transition_index;
  std::vector<std::string> place_ids;
  std::vector<std::uint32_t> initial;
  std::vector<std::uint32_t> final;
  for (std::size_t k = 0; k < place_order.size(); ++k) {
    const auto& p = places_[place_order[k]];
    place_index.emplace(p.id, k);
    place_ids.push_back(p.id);
    initial.push_back(p.initial);
    final.push_back(p.final);
  }
  std::vector<std::string> transition_ids;
  std::vector<Label> labels;
  for (std::size_t k = 0; k < transition_order.size(); ++k) {
    const auto& t = transitions_[transition_order[k]];
    transition_index.emplace(t.id, k);
    transition_ids.push_back(t.id);
    labels.push_back(t.label);
  }

  std::vector<Arc> arcs;
  arcs.reserve(arcs_.size());
  for (const auto& a : arcs_) {
    auto sp = place_index.find(a.source);
    auto st = transition_index.find(a.source);
    auto tp = place_index.find(a.target);
    auto tt = transition_index.find(a.target);
    if (sp == place_index.end() && st == transition_index.end()) {
      throw SemanticError("arc references unknown node '" + a.source + "'");
    }
    if (tp == place_index.end() && tt == transition_index.end()) {
      throw SemanticError("arc references unknown node '" + a.target + "'");
    }
    if (sp != place_index.end() && tt != transition_index.end()) {
      arcs.push_back({sp->second, tt->second, ArcDirection::PlaceToTransition, a.weight});
    } else if (st != transition_index.end() && tp != place_index.end()) {
      arcs.push_back({tp->second, st->second, ArcDirection::TransitionToPlace, a.weight});
    } else {
      throw SemanticError("arc '" + a.source + "' -> '" + a.target +
                          "' must connect a place and a transition");
    }
  }
  return PetriNet(std::move(place_ids), std::move(transition_ids), std::move(labels), std::move(arcs),
                  Marking(std::move(initial)), Marking(std::move(final)));
}

namespace {

void require_dimension(const PetriNet& net, const Marking& m) {
  if (m.size() != net.num_places()) {
    throw InvalidInput("marking has " + std::to_string(m.size()) + " entries but the net has " +
                       std::to_string(net.num_places()) + " places");
  }
}

}  // namespace

bool is_enabled(const PetriNet& net, const Marking& m, std::size_t transition) {
  for (const auto& pw : net.preset(transition)) {
    if (m[pw.place] < pw.weight) return false;
  }
  return true;
}

std::vector<std::size_t> enabled_transitions(const PetriNet& net, const Marking& m) {
  require_dimension(net, m);
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < net.num_transitions(); ++t) {
    if (is_enabled(net, m, t)) out.push_back(t);
  }
  return out;
}

Marking fire(const PetriNet& net, const Marking& m, std::size_t transition) {
  require_dimension(net, m);
  if (transition >= net.num_transitions()) throw InvalidInput("transition index out of range");
  std::vector<std::string> deficient;
  for (const auto& pw : net.preset(transition)) {
    if (m[pw.place] < pw.weight) deficient.push_back(net.places()[pw.place]);
  }
  if (!deficient.empty()) throw NotEnabled(net.transitions()[transition], std::move(deficient));
  Marking next = m;
  for (const auto& pw : net.preset(transition)) next[pw.place] -= pw.weight;
  for (const auto& pw : net.postset(transition)) next[pw.place] += pw.weight;
  return next;
}

Marking fire(const PetriNet& net, const Marking& m, std::string_view transition) {
  return fire(net, m, net.require_transition(transition));
}

IncidenceTriple incidence_matrices(const PetriNet& net) {
  const std::size_t np = net.num_places();
  const std::size_t nt = net.num_transitions();
  IncidenceTriple out{IntMatrix(np, nt), IntMatrix(np, nt), IntMatrix(np, nt)};
  for (std::size_t t = 0; t < nt; ++t) {
    for (const auto& pw : net.preset(t)) out.w_minus(pw.place, t) = pw.weight;
    for (const auto& pw : net.postset(t)) out.w_plus(pw.place, t) = pw.weight;
  }
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t t = 0; t < nt; ++t) out.incidence(p, t) = out.w_plus(p, t) - out.w_minus(p, t);
  }
  return out;
}

PetriNet build_trace_model(const Trace& trace) {
  const std::size_t n = trace.activities.size();
  std::vector<std::string> places;
  std::vector<std::string> transitions;
  std::vector<Label> labels;
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i <= n; ++i) places.push_back("p" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) {
    transitions.push_back("t" + std::to_string(i));
    labels.push_back(Label::activity(trace.activities[i - 1]));
    arcs.push_back({i - 1, i - 1, ArcDirection::PlaceToTransition, 1});
    arcs.push_back({i, i - 1, ArcDirection::TransitionToPlace, 1});
  }
  Marking initial = Marking::zeros(n + 1);
  Marking final = Marking::zeros(n + 1);
  initial[0] = 1;
  final[n] = 1;
  return PetriNet(std::move(places), std::move(transitions), std::move(labels), std::move(arcs),
                  std::move(initial), std::move(final));
}

bool is_path_net(const PetriNet& net) {
  const std::size_t np = net.num_places();
  const std::size_t nt = net.num_transitions();
  if (np != nt + 1) return false;
  if (net.initial_marking().total() != 1 || net.final_marking().total() != 1) return false;
  std::vector<std::optional<std::size_t>> consumer(np);
  for (std::size_t t = 0; t < nt; ++t) {
    if (net.label(t).is_tau()) return false;
    auto pre = net.preset(t);
    auto post = net.postset(t);
    if (pre.size() != 1 || post.size() != 1 || pre[0].weight != 1 || post[0].weight != 1) return false;
    if (consumer[pre[0].place]) return false;
    consumer[pre[0].place] = t;
  }
  std::size_t place = 0;
  while (net.initial_marking()[place] == 0) ++place;
  std::vector<bool> seen(np, false);
  std::size_t steps = 0;
  while (true) {
    if (seen[place]) return false;
    seen[place] = true;
    if (!consumer[place]) break;
    place = net.postset(*consumer[place])[0].place;
    ++steps;
  }
  return steps == nt && net.final_marking()[place] == 1;
}

std::string_view to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::UnconnectedPlace: return "unconnected place";
    case DiagnosticKind::UnconnectedTransition: return "unconnected transition";
    case DiagnosticKind::UnreachablePlace: return "unreachable place";
    case DiagnosticKind::UnreachableTransition: return "unreachable transition";
    case DiagnosticKind::MultipleSourcePlaces: return "multiple source places";
    case DiagnosticKind::MultipleSinkPlaces: return "multiple sink places";
    case DiagnosticKind::ZeroWeightArc: return "zero-weight arc";
    case DiagnosticKind::DuplicateArc: return "duplicate arc";
  }
  return "unknown";
}

std::vector<Diagnostic> validate_workflow_net(const PetriNet& net) {
  std::vector<Diagnostic> out;
  const std::size_t np = net.num_places();
  const std::size_t nt = net.num_transitions();
  const auto& places = net.places();
  const auto& transitions = net.transitions();

  std::vector<std::size_t> place_in(np, 0), place_out(np, 0), trans_arcs(nt, 0);
  std::set<std::tuple<std::size_t, std::size_t, int>> seen;
  for (const Arc& a : net.arcs()) {
    const bool to_transition = a.direction == ArcDirection::PlaceToTransition;
    const std::string desc = to_transition ? places[a.place] + " -> " + transitions[a.transition]
                                           : transitions[a.transition] + " -> " + places[a.place];
    if (!seen.emplace(a.place, a.transition, static_cast<int>(a.direction)).second) {
      out.push_back({DiagnosticKind::DuplicateArc, "duplicate arc " + desc});
      continue;
    }
    if (a.weight == 0) {
      out.push_back({DiagnosticKind::ZeroWeightArc, "zero-weight arc " + desc});
      continue;
    }
    (to_transition ? place_out : place_in)[a.place]++;
    trans_arcs[a.transition]++;
  }

  std::vector<bool> isolated_place(np, false);
  for (std::size_t p = 0; p < np; ++p) {
    if (place_in[p] == 0 && place_out[p] == 0) {
      isolated_place[p] = true;
      out.push_back({DiagnosticKind::UnconnectedPlace, "unconnected place " + places[p]});
    }
  }
  std::vector<bool> isolated_transition(nt, false);
  for (std::size_t t = 0; t < nt; ++t) {
    if (trans_arcs[t] == 0) {
      isolated_transition[t] = true;
      out.push_back({DiagnosticKind::UnconnectedTransition, "unconnected transition " + transitions[t]});
    }
  }

  std::vector<std::string> sources, sinks;
  for (std::size_t p = 0; p < np; ++p) {
    if (isolated_place[p]) continue;
    if (place_in[p] == 0) sources.push_back(places[p]);
    if (place_out[p] == 0) sinks.push_back(places[p]);
  }
  auto join = [](const std::vector<std::string>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + ids[i];
    return s;
  };
  if (sources.size() > 1) {
    out.push_back({DiagnosticKind::MultipleSourcePlaces, "multiple source places: " + join(sources)});
  }
  if (sinks.size() > 1) {
    out.push_back({DiagnosticKind::MultipleSinkPlaces, "multiple sink places: " + join(sinks)});
  }

  // Static forward connectivity from the initially marked places.
  std::vector<bool> place_reached(np, false), trans_reached(nt, false);
  std::vector<std::size_t> stack;
  for (std::size_t p = 0; p < np; ++p) {
    if (net.initial_marking()[p] > 0) {
      place_reached[p] = true;
      stack.push_back(p);
    }
  }
  std::vector<std::vector<std::size_t>> consumers(np);
  for (std::size_t t = 0; t < nt; ++t) {
    for (const auto& pw : net.preset(t)) consumers[pw.place].push_back(t);
  }
  // Transitions with an empty preset are always enabled.
  for (std::size_t t = 0; t < nt; ++t) {
    if (!net.preset(t).empty() || isolated_transition[t]) continue;
    trans_reached[t] = true;
    for (const auto& pw : net.postset(t)) {
      if (!place_reached[pw.place]) {
        place_reached[pw.place] = true;
        stack.push_back(pw.place);
      }
    }
  }
  while (!stack.empty()) {
    const std::size_t p = stack.back();
    stack.pop_back();
    for (std::size_t t : consumers[p]) {
      if (trans_reached[t]) continue;
      trans_reached[t] = true;
      for (const auto& pw : net.postset(t)) {
        if (!place_reached[pw.place]) {
          place_reached[pw.place] = true;
          stack.push_back(pw.place);
        }
      }
    }
  }
  for (std::size_t p = 0; p < np; ++p) {
    if (!isolated_place[p] && !place_reached[p]) {
      out.push_back({DiagnosticKind::UnreachablePlace, "place " + places[p] + " is not reachable from the initial marking"});
    }
  }
  for (std::size_t t = 0; t < nt; ++t) {
    if (!isolated_transition[t] && !trans_reached[t]) {
      out.push_back({DiagnosticKind::UnreachableTransition,
                     "transition " + transitions[t] + " is not reachable from the initial marking"});
    }
  }
  return out;
}

}  // namespace unialign
