#include "rdf_forge/stl.hpp"

#include "rdf_forge/errors.hpp"
#include "rdf_forge/number_format.hpp"

#include <bit>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace rdf_forge::mesh {

static_assert(std::endian::native == std::endian::little, "STL I/O assumes a little-endian host");

namespace {

constexpr std::size_t kHeaderSize = 80;
constexpr std::size_t kRecordSize = 50;

std::uint32_t read_u32(const char* p) {
  std::uint32_t v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

float read_f32(const char* p) {
  float v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

void append_u32(std::string& out, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.append(b, 4);
}

void append_f32(std::string& out, float v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.append(b, 4);
}

bool looks_binary(std::string_view bytes) {
  if (bytes.size() < kHeaderSize + 4) return false;
  const std::uint64_t count = read_u32(bytes.data() + kHeaderSize);
  return bytes.size() == kHeaderSize + 4 + kRecordSize * count;
}

bool starts_with_solid(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[i]))) ++i;
  return bytes.substr(i, 5) == "solid";
}

TriMesh parse_binary(std::string_view bytes) {
  if (bytes.size() < kHeaderSize + 4) {
    throw ParseError("truncated binary STL header (" + std::to_string(bytes.size()) + " bytes)");
  }
  const std::uint64_t count = read_u32(bytes.data() + kHeaderSize);
  const std::uint64_t expected = kHeaderSize + 4 + kRecordSize * count;
  if (bytes.size() < expected) {
    throw ParseError("truncated binary STL body: " + std::to_string(count) + " triangles declared, " +
                     std::to_string((bytes.size() - kHeaderSize - 4) / kRecordSize) + " present");
  }
  if (bytes.size() > expected) {
    throw ParseError("binary STL triangle count mismatch: " + std::to_string(count) +
                     " declared but file holds " + std::to_string(bytes.size() - expected) +
                     " extra bytes");
  }
  std::vector<std::array<Vec3, 3>> soup;
  soup.reserve(count);
  const char* p = bytes.data() + kHeaderSize + 4;
  for (std::uint64_t i = 0; i < count; ++i, p += kRecordSize) {
    std::array<Vec3, 3> tri;
    for (int k = 0; k < 3; ++k) {
      const char* v = p + 12 + 12 * k;  // skip the facet normal
      tri[k] = Vec3(read_f32(v), read_f32(v + 4), read_f32(v + 8));
    }
    soup.push_back(tri);
  }
  return from_soup(soup);
}

class AsciiTokens {
 public:
  explicit AsciiTokens(std::string_view text) : text_(text) {}

  /// Next whitespace-delimited token, empty at end of input.
  std::string_view next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    token_line_ = line_;
    return text_.substr(start, pos_ - start);
  }

  /// Rest of the current line (used for solid names).
  void skip_line() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("ASCII STL: " + message, "line " + std::to_string(token_line_));
  }

  void expect(std::string_view keyword) {
    const auto tok = next();
    if (tok != keyword) {
      fail("expected '" + std::string(keyword) + "', found " +
           (tok.empty() ? std::string("end of input") : "'" + std::string(tok) + "'"));
    }
  }

  double number() {
    const auto tok = next();
    const auto v = parse_number(tok);
    if (!v) fail("expected a number, found '" + std::string(tok) + "'");
    return *v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int token_line_ = 1;
};

TriMesh parse_ascii(std::string_view bytes) {
  AsciiTokens in(bytes);
  in.expect("solid");
  in.skip_line();
  std::vector<std::array<Vec3, 3>> soup;
  for (;;) {
    const auto tok = in.next();
    if (tok == "endsolid") break;
    if (tok.empty()) in.fail("missing 'endsolid'");
    if (tok != "facet") in.fail("expected 'facet' or 'endsolid', found '" + std::string(tok) + "'");
    in.expect("normal");
    for (int k = 0; k < 3; ++k) in.number();
    in.expect("outer");
    in.expect("loop");
    std::array<Vec3, 3> tri;
    for (int k = 0; k < 3; ++k) {
      in.expect("vertex");
      const double x = in.number(), y = in.number(), z = in.number();
      tri[k] = Vec3(x, y, z);
    }
    in.expect("endloop");
    in.expect("endfacet");
    soup.push_back(tri);
  }
  return from_soup(soup);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Vec3 facet_normal(const std::array<Vec3, 3>& tri) {
  const Vec3 n = (tri[1] - tri[0]).cross(tri[2] - tri[0]);
  const double len = n.norm();
  return len > 0.0 ? Vec3(n / len) : Vec3::Zero();
}

}  // namespace

TriMesh parse_stl(std::string_view bytes) {
  if (looks_binary(bytes)) return parse_binary(bytes);
  if (starts_with_solid(bytes)) return parse_ascii(bytes);
  return parse_binary(bytes);
}

TriMesh load_stl(const std::filesystem::path& path) {
  try {
    return parse_stl(read_file(path));
  } catch (const ParseError& e) {
    if (!e.location().empty() && e.location() == path.string()) throw;
    throw ParseError(e.what(), path.string());
  }
}

std::string write_stl(const TriMesh& mesh, StlMode mode, std::string_view solid_name) {
  const auto soup = to_soup(mesh);
  if (mode == StlMode::binary) {
    std::string out(kHeaderSize, '\0');
    const std::string_view tag = "binary STL written by rdf-forge";
    std::memcpy(out.data(), tag.data(), tag.size());
    append_u32(out, static_cast<std::uint32_t>(soup.size()));
    for (const auto& tri : soup) {
      const Vec3 n = facet_normal(tri);
      for (int k = 0; k < 3; ++k) append_f32(out, static_cast<float>(n[k]));
      for (const auto& v : tri) {
        for (int k = 0; k < 3; ++k) append_f32(out, static_cast<float>(v[k]));
      }
      out.append(2, '\0');
    }
    return out;
  }

  std::ostringstream out;
  out << "solid " << solid_name << '\n';
  for (const auto& tri : soup) {
    const Vec3 n = facet_normal(tri);
    out << "  facet normal " << format_numbers({n.x(), n.y(), n.z()}) << '\n';
    out << "    outer loop\n";
    for (const auto& v : tri) out << "      vertex " << format_numbers({v.x(), v.y(), v.z()}) << '\n';
    out << "    endloop\n";
    out << "  endfacet\n";
  }
  out << "endsolid " << solid_name << '\n';
  return out.str();
}

void save_stl(const TriMesh& mesh, const std::filesystem::path& path, StlMode mode) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const std::string bytes = write_stl(mesh, mode, path.stem().string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace rdf_forge::mesh
