#pragma once

// Minimal element tree on top of expat, shared by the PNML and XES readers.

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace unialign::xml {

struct Element {
  std::string name;  // local name, namespace prefix stripped
  std::map<std::string, std::string> attributes;
  std::vector<std::unique_ptr<Element>> children;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;

  const std::string* attribute(const std::string& key) const {
    auto it = attributes.find(key);
    return it == attributes.end() ? nullptr : &it->second;
  }
  /// First direct child with the given local name, or nullptr.
  const Element* child(std::string_view child_name) const;
  /// All direct children with the given local name.
  std::vector<const Element*> children_named(std::string_view child_name) const;
  /// Text of `<child><text>...</text></child>`, trimmed; empty when absent.
  std::string nested_text(std::string_view child_name) const;
};

/// Parses a complete document. Throws ParseError with expat's line/column.
std::unique_ptr<Element> parse(std::string_view document);

std::string escape(std::string_view text);

std::string trim(std::string_view text);

}  // namespace unialign::xml
