#include "pdbscan/errors.hpp"

#include <utility>

namespace pdbscan {

InvalidParams::InvalidParams(std::string field, const std::string& detail)
    : Error("invalid parameter '" + field + "': " + detail), field_(std::move(field)) {}

ParseError::ParseError(std::size_t line, std::string token, const std::string& detail)
    : Error("line " + std::to_string(line) + ": " + detail + " '" + token + "'"),
      line_(line),
      token_(std::move(token)) {}

IndexOutOfRange::IndexOutOfRange(std::size_t index, std::size_t size)
    : Error("index " + std::to_string(index) + " out of range for size " + std::to_string(size)) {}

CapacityExceeded::CapacityExceeded(std::uint64_t required_bytes, std::uint64_t cap_bytes)
    : Error("matrix memory required " + std::to_string(required_bytes) +
            " bytes exceeds configured cap of " + std::to_string(cap_bytes) + " bytes"),
      required_(required_bytes),
      cap_(cap_bytes) {}

LengthMismatch::LengthMismatch(std::size_t a, std::size_t b)
    : Error("labelings differ in length: " + std::to_string(a) + " vs " + std::to_string(b)) {}

}  // namespace pdbscan
