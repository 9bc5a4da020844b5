#include "unialign/alignment_io.hpp"

#include <algorithm>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

namespace unialign {

std::string format_move_table(const Alignment& alignment) {
  std::size_t w_model = 5;
  std::size_t w_log = 3;
  for (const SyncMove& m : alignment.moves) {
    w_model = std::max(w_model, m.model_display().size());
    w_log = std::max(w_log, m.log_display().size());
  }
  std::ostringstream out;
  out << std::left << std::setw(10) << "kind" << "  " << std::setw(static_cast<int>(w_model)) << "model" << "  "
      << std::setw(static_cast<int>(w_log)) << "log" << "  cost\n";
  for (const SyncMove& m : alignment.moves) {
    out << std::setw(10) << to_string(m.kind) << "  " << std::setw(static_cast<int>(w_model)) << m.model_display()
        << "  " << std::setw(static_cast<int>(w_log)) << m.log_display() << "  " << to_string(m.cost) << '\n';
  }
  out << "total " << to_string(alignment.total_cost) << " (" << alignment.num_sync << " sync, " << alignment.num_model
      << " model, " << alignment.num_tau << " tau, " << alignment.num_log << " log)\n";
  return out.str();
}

std::string alignment_to_json(const Alignment& alignment, int indent) {
  nlohmann::json moves = nlohmann::json::array();
  for (const SyncMove& m : alignment.moves) {
    nlohmann::json j;
    j["kind"] = std::string(to_string(m.kind));
    j["transition"] = m.id;
    j["model_label"] = m.model_label ? nlohmann::json(m.model_label->display()) : nlohmann::json(nullptr);
    j["log_label"] = m.log_label ? nlohmann::json(m.log_label->display()) : nlohmann::json(nullptr);
    j["cost"] = to_string(m.cost);
    moves.push_back(std::move(j));
  }
  nlohmann::json out;
  out["method"] = std::string(to_string(alignment.method));
  out["total_cost"] = to_string(alignment.total_cost);
  out["total_cost_decimal"] = to_double(alignment.total_cost);
  out["num_sync"] = alignment.num_sync;
  out["num_model"] = alignment.num_model;
  out["num_tau"] = alignment.num_tau;
  out["num_log"] = alignment.num_log;
  out["moves"] = std::move(moves);
  return out.dump(indent);
}

}  // namespace unialign
