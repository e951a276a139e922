#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mapfp/instance.hpp"
#include "mapfp/reductions.hpp"

// File formats.
//
// Instance document, keys in this order, compact, newline-terminated:
//   {"m":2,"a":[3,1],"b":[1,3]}
//   {"m":2,"a":[...],"b":[...],"params":{...},"labels":{"a":[...],"b":[...]}}
// Integers up to 2^53-1 are written as JSON numbers, larger ones as decimal
// strings. Readers accept either form for any value.
//
// Assignment document: {"assignment":[0,1]} with 0-based group indices.
namespace mapfp::io {

// Largest integer every JSON consumer represents exactly.
inline constexpr std::uint64_t kMaxPlainInteger = (std::uint64_t{1} << 53) - 1;

struct InstanceDocument {
  Instance inst;
  std::optional<reductions::ReductionParams> params;
  std::vector<reductions::ItemLabel> labels;  // empty when absent
  std::vector<std::string> warnings;
};

// Throws Error{ParseError} for malformed JSON or wrong field types and
// Error{ValidationError} when the instance violates its invariants.
InstanceDocument parse_instance(std::string_view text);
InstanceDocument read_instance(const std::filesystem::path& path);

std::string format_instance(const Instance& inst);
std::string format_instance(const reductions::GeneratedInstance& gen);
std::string format_instance(const InstanceDocument& doc);

// Writes the canonical bytes and returns them. Throws Error{IoError}.
std::string write_instance(const std::filesystem::path& path, const Instance& inst);
std::string write_instance(const std::filesystem::path& path, const reductions::GeneratedInstance& gen);

Assignment parse_assignment(std::string_view text);
Assignment read_assignment(const std::filesystem::path& path);
std::string format_assignment(const Assignment& asg);
std::string write_assignment(const std::filesystem::path& path, const Assignment& asg);

// Throws Error{ValidationError} when the assignment does not fit the instance.
void validate_assignment(const Instance& inst, const Assignment& asg);

// Accepts "p/q" or "p" with non-negative decimal integers.
RatioForm parse_ratio(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace mapfp::io
