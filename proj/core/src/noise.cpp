#include "unialign/noise.hpp"

#include <utility>

#include "unialign/error.hpp"

namespace unialign {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidSpec(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

Trace inject_noise(const Trace& trace, const NoiseSpec& spec) {
  check_probability(spec.insert_prob, "insert_prob");
  check_probability(spec.delete_prob, "delete_prob");
  check_probability(spec.swap_prob, "swap_prob");
  if (spec.insert_prob > 0.0 && spec.alphabet.empty()) {
    throw InvalidSpec("insertion requested with an empty alphabet");
  }
  SeededRng rng(spec.seed);

  std::vector<std::string> events;
  events.reserve(trace.activities.size());
  for (const auto& a : trace.activities) {
    if (!rng.chance(spec.delete_prob)) events.push_back(a);
  }

  for (std::size_t i = 0; i + 1 < events.size();) {
    if (rng.chance(spec.swap_prob)) {
      std::swap(events[i], events[i + 1]);
      i += 2;
    } else {
      i += 1;
    }
  }

  std::vector<std::string> out;
  out.reserve(events.size() * 2 + 1);
  for (std::size_t gap = 0; gap <= events.size(); ++gap) {
    if (rng.chance(spec.insert_prob)) out.push_back(spec.alphabet[rng.index(spec.alphabet.size())]);
    if (gap < events.size()) out.push_back(events[gap]);
  }
  return Trace{trace.case_id + "-noisy", std::move(out)};
}

Trace perturb_trace(const Trace& trace, const EditSpec& spec) {
  enum class Kind { Insert, Delete, Swap, Replace };
  std::vector<Kind> kinds;
  if (spec.allow_insert) kinds.push_back(Kind::Insert);
  if (spec.allow_delete) kinds.push_back(Kind::Delete);
  if (spec.allow_swap) kinds.push_back(Kind::Swap);
  if (spec.allow_replace) kinds.push_back(Kind::Replace);
  if (spec.edits > 0 && kinds.empty()) throw InvalidSpec("no edit kind allowed");
  if (spec.edits > 0 && spec.alphabet.empty() && (spec.allow_insert || spec.allow_replace)) {
    throw InvalidSpec("insert/replace edits need a non-empty alphabet");
  }
  SeededRng rng(spec.seed);
  std::vector<std::string> events = trace.activities;
  for (std::size_t e = 0; e < spec.edits; ++e) {
    const Kind kind = kinds[rng.index(kinds.size())];
    switch (kind) {
      case Kind::Insert: {
        const std::size_t pos = rng.index(events.size() + 1);
        events.insert(events.begin() + static_cast<std::ptrdiff_t>(pos), spec.alphabet[rng.index(spec.alphabet.size())]);
        break;
      }
      case Kind::Delete: {
        if (events.empty()) break;
        events.erase(events.begin() + static_cast<std::ptrdiff_t>(rng.index(events.size())));
        break;
      }
      case Kind::Swap: {
        std::vector<std::size_t> pairs;
        for (std::size_t i = 0; i + 1 < events.size(); ++i) {
          if (events[i] != events[i + 1]) pairs.push_back(i);
        }
        if (pairs.empty()) break;
        const std::size_t i = pairs[rng.index(pairs.size())];
        std::swap(events[i], events[i + 1]);
        break;
      }
      case Kind::Replace: {
        if (events.empty()) break;
        const std::size_t pos = rng.index(events.size());
        std::vector<const std::string*> others;
        for (const auto& a : spec.alphabet) {
          if (a != events[pos]) others.push_back(&a);
        }
        if (others.empty()) break;
        events[pos] = *others[rng.index(others.size())];
        break;
      }
    }
  }
  return Trace{trace.case_id + "-edited", std::move(events)};
}

}  // namespace unialign
