#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "unialign/petri_net.hpp"

namespace unialign {

/// Random stream used for every seeded operation in the library.
///
/// The generator is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Values are derived from raw 64-bit draws only (never from
/// std:: distributions, whose algorithms are implementation-defined):
///   uniform()    = (draw >> 11) * 2^-53, a double in [0, 1)
///   index(n)     = draw % n
/// Each call consumes exactly one draw.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

struct NoiseSpec {
  double insert_prob = 0.0;
  double delete_prob = 0.0;
  double swap_prob = 0.0;
  std::vector<std::string> alphabet;
  std::uint64_t seed = 0;
};

/// Probabilistic deviations, applied in three passes over one SeededRng:
///  1. deletion: one draw per event, in order; the event is dropped when the
///     draw is below delete_prob;
///  2. swap: walking i = 0, 1, ... over the survivors, one draw per adjacent
///     pair (i, i+1); on a hit the pair is swapped and i skips past it;
///  3. insertion: one draw per gap 0..n (before each event and at the end);
///     on a hit a second draw picks the label index into `alphabet`.
/// The result's case_id is the input's with "-noisy" appended.
/// Throws InvalidSpec for probabilities outside [0, 1] or an empty alphabet
/// with insert_prob > 0.
Trace inject_noise(const Trace& trace, const NoiseSpec& spec);

/// Exactly `edits` deviations of the allowed kinds. Each edit draws the kind
/// uniformly among the allowed ones, then a position (and label). Swaps pick
/// among adjacent pairs with different labels and replacements pick a
/// different label, so each edit changes the sequence when possible.
struct EditSpec {
  std::size_t edits = 0;
  bool allow_insert = true;
  bool allow_delete = true;
  bool allow_swap = true;
  bool allow_replace = true;
  std::vector<std::string> alphabet;
  std::uint64_t seed = 0;
};

Trace perturb_trace(const Trace& trace, const EditSpec& spec);

}  // namespace unialign
