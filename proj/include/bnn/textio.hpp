#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bnn {

// Shortest decimal form that round-trips the exact double (std::to_chars).
// All emitted files use this so output is byte-stable across runs.
std::string fmt(double v);
std::string fmt(std::int64_t v);
std::string fmt(std::uint64_t v);
inline std::string fmt(int v) { return fmt(static_cast<std::int64_t>(v)); }

double parse_double(const std::string& s);   // throws on trailing junk
std::int64_t parse_int(const std::string& s);
std::uint64_t parse_uint(const std::string& s);

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& line, char sep);

std::string read_file(const std::string& path);   // throws if unreadable
void write_file(const std::string& path, const std::string& content);

// Parses "key = value" lines, ignoring blanks and '#' comments.  Order is
// preserved; duplicate keys are an error.
std::vector<std::pair<std::string, std::string>> parse_kv(
    const std::string& text);

}  // namespace bnn
