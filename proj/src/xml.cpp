#include "rdf_forge/xml.hpp"

#include "rdf_forge/errors.hpp"

#include <expat.h>

#include <memory>

namespace rdf_forge::xml {

const std::string* Element::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

const Element* Element::child(std::string_view element_name) const {
  for (const auto& c : children) {
    if (c.name == element_name) return &c;
  }
  return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view element_name) const {
  std::vector<const Element*> out;
  for (const auto& c : children) {
    if (c.name == element_name) out.push_back(&c);
  }
  return out;
}

std::string Element::location() const {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

namespace {

struct BuildState {
  XML_Parser parser = nullptr;
  Element root;
  bool has_root = false;
  std::vector<Element*> stack;
};

void on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
  auto* st = static_cast<BuildState*>(data);
  Element e;
  e.name = name;
  e.line = static_cast<int>(XML_GetCurrentLineNumber(st->parser));
  e.column = static_cast<int>(XML_GetCurrentColumnNumber(st->parser)) + 1;
  for (int i = 0; attrs[i]; i += 2) e.attributes.emplace_back(attrs[i], attrs[i + 1]);
  if (st->stack.empty()) {
    st->root = std::move(e);
    st->has_root = true;
    st->stack.push_back(&st->root);
  } else {
    auto& siblings = st->stack.back()->children;
    siblings.push_back(std::move(e));
    st->stack.push_back(&siblings.back());
  }
}

void on_end(void* data, const XML_Char*) {
  static_cast<BuildState*>(data)->stack.pop_back();
}

void on_text(void* data, const XML_Char* s, int len) {
  auto* st = static_cast<BuildState*>(data);
  if (!st->stack.empty()) st->stack.back()->text.append(s, static_cast<std::size_t>(len));
}

}  // namespace

Element parse(std::string_view text) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw std::bad_alloc();
  BuildState st;
  st.parser = parser.get();
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  if (XML_Parse(parser.get(), text.data(), static_cast<int>(text.size()), XML_TRUE) == XML_STATUS_ERROR) {
    throw ParseError(std::string("XML syntax error: ") + XML_ErrorString(XML_GetErrorCode(parser.get())),
                     "line " + std::to_string(XML_GetCurrentLineNumber(parser.get())) + ", column " +
                         std::to_string(XML_GetCurrentColumnNumber(parser.get()) + 1));
  }
  if (!st.has_root) throw ParseError("XML document has no root element");
  return std::move(st.root);
}

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
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

Writer::Writer() { out_ = "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"; }

void Writer::indent() { out_.append(2 * stack_.size(), ' '); }

void Writer::start_tag(std::string_view name, const Attributes& attributes) {
  indent();
  out_ += '<';
  out_ += name;
  for (const auto& [k, v] : attributes) {
    out_ += ' ';
    out_ += k;
    out_ += "=\"";
    out_ += escape(v);
    out_ += '"';
  }
}

void Writer::comment(std::string_view text) {
  indent();
  out_ += "<!-- ";
  out_ += text;
  out_ += " -->\n";
}

void Writer::open(std::string_view name, const Attributes& attributes) {
  start_tag(name, attributes);
  out_ += ">\n";
  stack_.emplace_back(name);
}

void Writer::close() {
  const std::string name = stack_.back();
  stack_.pop_back();
  indent();
  out_ += "</" + name + ">\n";
}

void Writer::empty(std::string_view name, const Attributes& attributes) {
  start_tag(name, attributes);
  out_ += "/>\n";
}

void Writer::text(std::string_view name, std::string_view content, const Attributes& attributes) {
  start_tag(name, attributes);
  out_ += '>';
  out_ += escape(content);
  out_ += "</";
  out_ += name;
  out_ += ">\n";
}

std::string Writer::finish() {
  while (!stack_.empty()) close();
  return std::move(out_);
}

}  // namespace rdf_forge::xml
