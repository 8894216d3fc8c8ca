#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rdf_forge::xml {

/// Minimal read-only DOM. Text of mixed-content elements is concatenated.
struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  std::string text;
  int line = 0;
  int column = 0;

  const std::string* attribute(std::string_view key) const;
  const Element* child(std::string_view element_name) const;
  std::vector<const Element*> children_named(std::string_view element_name) const;
  /// "line L, column C" for error messages.
  std::string location() const;
};

/// Parses a complete document and returns its root element. Throws
/// ParseError carrying the line/column of the first syntax error.
Element parse(std::string_view text);

/// Streams an indented document (2 spaces, LF) with escaped content.
class Writer {
 public:
  using Attributes = std::vector<std::pair<std::string, std::string>>;

  Writer();

  void comment(std::string_view text);
  void open(std::string_view name, const Attributes& attributes = {});
  void close();
  /// <name attrs/>
  void empty(std::string_view name, const Attributes& attributes = {});
  /// <name attrs>text</name>
  void text(std::string_view name, std::string_view content, const Attributes& attributes = {});

  /// Closes any open elements and returns the document.
  std::string finish();

 private:
  void indent();
  void start_tag(std::string_view name, const Attributes& attributes);

  std::string out_;
  std::vector<std::string> stack_;
};

std::string escape(std::string_view s);

}  // namespace rdf_forge::xml
