#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "unialign/noise.hpp"
#include "unialign/petri_net.hpp"

namespace unialign {

/// Block-structured process model.
///
///   seq(A, B, ...)   A then B then ...
///   xor(A, B, ...)   exactly one of the children
///   and(A, B, ...)   all children, interleaved
///   loop(A, B)       A, then any number of (B, A); loop(A) repeats A
struct ProcessTree {
  enum class Op { Activity, Seq, Xor, And, Loop };

  Op op = Op::Activity;
  std::string activity;
  std::vector<ProcessTree> children;

  static ProcessTree leaf(std::string name) { return {Op::Activity, std::move(name), {}}; }
};

/// Parses e.g. "seq(a, and(b,c), e)". Throws InvalidSpec on syntax errors,
/// on an operator without children, on a loop with more than two children,
/// and on a tree without any activity.
ProcessTree parse_process_tree(std::string_view text);

std::string to_string(const ProcessTree& tree);

/// Distinct activity names in first-occurrence order.
std::vector<std::string> tree_alphabet(const ProcessTree& tree);

/// Workflow net of the tree: one source place (initially marked), one sink
/// place (final). Parallel blocks get silent split/join transitions and
/// loops get silent entry/exit transitions.
PetriNet tree_to_net(const ProcessTree& tree);

/// A random execution. Exclusive choices are uniform, parallel children are
/// interleaved by drawing which child advances next, and a loop repeats
/// with probability 1/2 after each pass up to `max_loop_repeats` times.
Trace sample_trace(const ProcessTree& tree, SeededRng& rng, std::string case_id, std::size_t max_loop_repeats = 2);

/// Random tree over activities a, b, c, ... (at most `max_activities`, at
/// least 2). Operators are drawn among seq/xor/and/loop.
ProcessTree random_tree(SeededRng& rng, std::size_t max_activities);

}  // namespace unialign
