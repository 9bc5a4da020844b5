#include "xml.hpp"

#include <expat.h>

#include <cctype>

#include "unialign/error.hpp"

namespace unialign::xml {

namespace {

std::string local_name(const char* qualified) {
  std::string_view name(qualified);
  if (auto colon = name.rfind(':'); colon != std::string_view::npos) name.remove_prefix(colon + 1);
  return std::string(name);
}

struct BuildState {
  XML_Parser parser = nullptr;
  std::unique_ptr<Element> root;
  std::vector<Element*> stack;
};

void on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto* state = static_cast<BuildState*>(user);
  auto element = std::make_unique<Element>();
  element->name = local_name(name);
  element->line = XML_GetCurrentLineNumber(state->parser);
  element->column = XML_GetCurrentColumnNumber(state->parser) + 1;
  for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
    element->attributes.emplace(local_name(attrs[i]), attrs[i + 1]);
  }
  Element* raw = element.get();
  if (state->stack.empty()) {
    state->root = std::move(element);
  } else {
    state->stack.back()->children.push_back(std::move(element));
  }
  state->stack.push_back(raw);
}

void on_end(void* user, const XML_Char*) {
  auto* state = static_cast<BuildState*>(user);
  state->stack.pop_back();
}

void on_text(void* user, const XML_Char* s, int len) {
  auto* state = static_cast<BuildState*>(user);
  if (!state->stack.empty()) state->stack.back()->text.append(s, static_cast<std::size_t>(len));
}

}  // namespace

const Element* Element::child(std::string_view child_name) const {
  for (const auto& c : children) {
    if (c->name == child_name) return c.get();
  }
  return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view child_name) const {
  std::vector<const Element*> out;
  for (const auto& c : children) {
    if (c->name == child_name) out.push_back(c.get());
  }
  return out;
}

std::string Element::nested_text(std::string_view child_name) const {
  const Element* c = child(child_name);
  if (c == nullptr) return {};
  const Element* t = c->child("text");
  return trim(t != nullptr ? t->text : c->text);
}

std::unique_ptr<Element> parse(std::string_view document) {
  BuildState state;
  state.parser = XML_ParserCreate(nullptr);
  if (state.parser == nullptr) throw ParseError("could not allocate XML parser");
  XML_SetUserData(state.parser, &state);
  XML_SetElementHandler(state.parser, on_start, on_end);
  XML_SetCharacterDataHandler(state.parser, on_text);
  const auto status = XML_Parse(state.parser, document.data(), static_cast<int>(document.size()), XML_TRUE);
  if (status != XML_STATUS_OK) {
    const std::string message = std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(state.parser));
    const auto line = static_cast<std::size_t>(XML_GetCurrentLineNumber(state.parser));
    const auto column = static_cast<std::size_t>(XML_GetCurrentColumnNumber(state.parser)) + 1;
    XML_ParserFree(state.parser);
    throw ParseError(message, line, column);
  }
  XML_ParserFree(state.parser);
  if (!state.root) throw ParseError("empty XML document", 1, 1);
  return std::move(state.root);
}

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return std::string(text);
}

}  // namespace unialign::xml
