#include "unialign/process_tree.hpp"

#include <cctype>
#include <unordered_set>

#include "unialign/error.hpp"

namespace unialign {

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  ProcessTree parse() {
    ProcessTree tree = node();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing text");
    return tree;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidSpec("process tree: " + what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == ':';
  }

  ProcessTree node() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected an activity or operator");
    std::string name(text_.substr(start, pos_ - start));
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '(') return ProcessTree::leaf(std::move(name));

    ProcessTree tree;
    if (name == "seq") {
      tree.op = ProcessTree::Op::Seq;
    } else if (name == "xor") {
      tree.op = ProcessTree::Op::Xor;
    } else if (name == "and") {
      tree.op = ProcessTree::Op::And;
    } else if (name == "loop") {
      tree.op = ProcessTree::Op::Loop;
    } else {
      fail("unknown operator '" + name + "'");
    }
    ++pos_;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ')') fail("operator '" + name + "' without children");
    while (true) {
      tree.children.push_back(node());
      skip_space();
      if (pos_ >= text_.size()) fail("missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      if (text_[pos_] != ',') fail("expected ',' or ')'");
      ++pos_;
    }
    if (tree.op == ProcessTree::Op::Loop && tree.children.size() > 2) fail("loop takes one or two children");
    return tree;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_alphabet(const ProcessTree& t, std::vector<std::string>& out, std::unordered_set<std::string>& seen) {
  if (t.op == ProcessTree::Op::Activity) {
    if (seen.insert(t.activity).second) out.push_back(t.activity);
    return;
  }
  for (const auto& c : t.children) collect_alphabet(c, out, seen);
}

class NetBuilder {
 public:
  std::string place() {
    std::string id = "p" + std::to_string(++places_);
    builder_.add_place(id);
    return id;
  }

  std::string transition(Label label) {
    std::string id = "t" + std::to_string(++transitions_);
    builder_.add_transition(id, std::move(label));
    return id;
  }

  void build(const ProcessTree& t, const std::string& in, const std::string& out) {
    switch (t.op) {
      case ProcessTree::Op::Activity: {
        const std::string tr = transition(Label::activity(t.activity));
        builder_.add_arc(in, tr);
        builder_.add_arc(tr, out);
        break;
      }
      case ProcessTree::Op::Seq: {
        std::string from = in;
        for (std::size_t i = 0; i < t.children.size(); ++i) {
          const std::string to = i + 1 == t.children.size() ? out : place();
          build(t.children[i], from, to);
          from = to;
        }
        break;
      }
      case ProcessTree::Op::Xor:
        for (const auto& c : t.children) build(c, in, out);
        break;
      case ProcessTree::Op::And: {
        const std::string split = transition(Label::tau());
        const std::string join = transition(Label::tau());
        builder_.add_arc(in, split);
        builder_.add_arc(join, out);
        for (const auto& c : t.children) {
          const std::string a = place();
          const std::string b = place();
          builder_.add_arc(split, a);
          build(c, a, b);
          builder_.add_arc(b, join);
        }
        break;
      }
      case ProcessTree::Op::Loop: {
        const std::string entry = transition(Label::tau());
        const std::string exit = transition(Label::tau());
        const std::string a = place();
        const std::string b = place();
        builder_.add_arc(in, entry);
        builder_.add_arc(entry, a);
        build(t.children[0], a, b);
        if (t.children.size() > 1) {
          build(t.children[1], b, a);
        } else {
          const std::string redo = transition(Label::tau());
          builder_.add_arc(b, redo);
          builder_.add_arc(redo, a);
        }
        builder_.add_arc(b, exit);
        builder_.add_arc(exit, out);
        break;
      }
    }
  }

  PetriNetBuilder builder_;

 private:
  std::size_t places_ = 0;
  std::size_t transitions_ = 0;
};

void sample(const ProcessTree& t, SeededRng& rng, std::size_t max_repeats, std::vector<std::string>& out) {
  switch (t.op) {
    case ProcessTree::Op::Activity:
      out.push_back(t.activity);
      break;
    case ProcessTree::Op::Seq:
      for (const auto& c : t.children) sample(c, rng, max_repeats, out);
      break;
    case ProcessTree::Op::Xor:
      sample(t.children[rng.index(t.children.size())], rng, max_repeats, out);
      break;
    case ProcessTree::Op::And: {
      std::vector<std::vector<std::string>> parts(t.children.size());
      for (std::size_t i = 0; i < t.children.size(); ++i) sample(t.children[i], rng, max_repeats, parts[i]);
      std::vector<std::size_t> next(parts.size(), 0);
      while (true) {
        std::vector<std::size_t> live;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          if (next[i] < parts[i].size()) live.push_back(i);
        }
        if (live.empty()) break;
        const std::size_t pick = live[rng.index(live.size())];
        out.push_back(parts[pick][next[pick]++]);
      }
      break;
    }
    case ProcessTree::Op::Loop:
      sample(t.children[0], rng, max_repeats, out);
      for (std::size_t r = 0; r < max_repeats && rng.chance(0.5); ++r) {
        if (t.children.size() > 1) sample(t.children[1], rng, max_repeats, out);
        sample(t.children[0], rng, max_repeats, out);
      }
      break;
  }
}

ProcessTree random_subtree(SeededRng& rng, const std::vector<std::string>& acts, std::size_t lo, std::size_t hi,
                           std::size_t depth) {
  const std::size_t n = hi - lo;
  if (n == 1) return ProcessTree::leaf(acts[lo]);
  ProcessTree t;
  const std::size_t choice = rng.index(depth == 0 ? 3 : 4);
  static constexpr ProcessTree::Op kOps[] = {ProcessTree::Op::Seq, ProcessTree::Op::And, ProcessTree::Op::Xor,
                                             ProcessTree::Op::Loop};
  t.op = kOps[choice];
  std::size_t parts = 2;
  if (t.op != ProcessTree::Op::Loop && n >= 3) parts = 2 + rng.index(std::min<std::size_t>(n, 4) - 1);
  std::vector<std::size_t> cuts;
  std::size_t start = lo;
  for (std::size_t k = 0; k < parts; ++k) {
    const std::size_t remaining_parts = parts - k;
    const std::size_t remaining = hi - start;
    std::size_t size = remaining - (remaining_parts - 1);
    if (remaining_parts > 1) size = 1 + rng.index(remaining - remaining_parts + 1);
    t.children.push_back(random_subtree(rng, acts, start, start + size, depth + 1));
    start += size;
  }
  return t;
}

}  // namespace

ProcessTree parse_process_tree(std::string_view text) {
  ProcessTree tree = TreeParser(text).parse();
  if (tree_alphabet(tree).empty()) throw InvalidSpec("process tree has an empty alphabet");
  return tree;
}

std::string to_string(const ProcessTree& tree) {
  if (tree.op == ProcessTree::Op::Activity) return tree.activity;
  std::string out;
  switch (tree.op) {
    case ProcessTree::Op::Seq: out = "seq("; break;
    case ProcessTree::Op::Xor: out = "xor("; break;
    case ProcessTree::Op::And: out = "and("; break;
    case ProcessTree::Op::Loop: out = "loop("; break;
    case ProcessTree::Op::Activity: break;
  }
  for (std::size_t i = 0; i < tree.children.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(tree.children[i]);
  }
  return out + ")";
}

std::vector<std::string> tree_alphabet(const ProcessTree& tree) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  collect_alphabet(tree, out, seen);
  return out;
}

PetriNet tree_to_net(const ProcessTree& tree) {
  NetBuilder nb;
  const std::string source = nb.place();
  const std::string sink = nb.place();
  nb.builder_.set_initial(source, 1);
  nb.builder_.set_final(sink, 1);
  nb.build(tree, source, sink);
  return nb.builder_.build();
}

Trace sample_trace(const ProcessTree& tree, SeededRng& rng, std::string case_id, std::size_t max_loop_repeats) {
  Trace trace{std::move(case_id), {}};
  sample(tree, rng, max_loop_repeats, trace.activities);
  return trace;
}

ProcessTree random_tree(SeededRng& rng, std::size_t max_activities) {
  if (max_activities < 2) throw InvalidSpec("random trees need at least two activities");
  if (max_activities > 26) throw InvalidSpec("random trees support at most 26 activities");
  const std::size_t n = 2 + rng.index(max_activities - 1);
  std::vector<std::string> acts;
  for (std::size_t i = 0; i < n; ++i) acts.emplace_back(1, static_cast<char>('a' + i));
  return random_subtree(rng, acts, 0, n, 0);
}

}  // namespace unialign
