#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rdf_forge {

/// Shortest decimal that reads back to the same double; "-0" becomes "0".
std::string format_number(double value);

/// Space-separated list of format_number outputs.
std::string format_numbers(const std::vector<double>& values);

/// Parses a complete decimal token (leading/trailing blanks allowed).
std::optional<double> parse_number(std::string_view text);

/// Parses whitespace-separated numbers; nullopt on any malformed token.
std::optional<std::vector<double>> parse_numbers(std::string_view text);

}  // namespace rdf_forge
