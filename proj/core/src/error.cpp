#include "unialign/error.hpp"

namespace unialign {

namespace {

std::string not_enabled_message(const std::string& transition, const std::vector<std::string>& places) {
  std::string msg = "transition '" + transition + "' is not enabled; insufficient tokens in";
  for (std::size_t i = 0; i < places.size(); ++i) {
    msg += (i == 0 ? " " : ", ");
    msg += places[i];
  }
  return msg;
}

std::string position_message(const std::string& message, std::size_t line, std::size_t column) {
  if (line == 0) return message;
  return message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
}

}  // namespace

NotEnabled::NotEnabled(std::string transition, std::vector<std::string> deficient_places)
    : Error(not_enabled_message(transition, deficient_places)),
      transition_(std::move(transition)),
      deficient_(std::move(deficient_places)) {}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(position_message(message, line, column)), line_(line), column_(column) {}

}  // namespace unialign
