#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pmas {

// Base error; subclasses distinguish origins that callers handle differently.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed configuration, data files, or persona documents.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Transport or protocol failure talking to a model backend.
class BackendError : public Error {
public:
    using Error::Error;
};

// Judge reply could not be parsed into the requested assessment shape.
class JudgeError : public Error {
public:
    using Error::Error;
};

// Agent reply failed the structured schema for its stage.
class ParseError : public Error {
public:
    using Error::Error;
};

// FNV-1a, used everywhere a stable cross-platform hash is needed.
std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 1469598103934665603ULL);
std::uint64_t fnv1a_mix(std::uint64_t h, std::uint64_t v);

std::string to_lower(std::string_view s);

// Maximal [a-z0-9]+ runs of the lowercased input.
std::vector<std::string> alnum_tokens(std::string_view text);

bool starts_with(std::string_view s, std::string_view prefix);
std::string trim(std::string_view s);
std::vector<std::string> split_lines(std::string_view text);

// Fixed-precision decimal rendering for CSV and report output.
std::string format_double(double v, int precision);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

double clamp01(double v);

} // namespace pmas
