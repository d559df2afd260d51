#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rdtp {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (CSV rows, config files, instances).
class DataError : public Error {
public:
    using Error::Error;
};

/// Invalid arguments to a numerical routine (out-of-range counts, bad indices).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Model construction failed (missing inputs for a variant, infeasible data).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Solver subprocess or solution-file problems.
class SolverError : public Error {
public:
    using Error::Error;
};

/// Shortest decimal text that round-trips to the same double.
inline std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text);
int parse_int(std::string_view text);

std::vector<std::string> split(std::string_view line, char sep);
std::string_view trim(std::string_view s);

/// 64-bit FNV-1a; stable across platforms, used for manifest hashing.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

std::string read_file(const std::string& path);
/// Writes through a temporary sibling and renames it into place.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace rdtp
