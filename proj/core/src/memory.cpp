#include "pdbscan/memory.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

#include "pdbscan/errors.hpp"

namespace pdbscan {

std::uint64_t matrix_cap_from_env() {
  const char* raw = std::getenv(kMatrixCapEnvVar);
  if (raw == nullptr || *raw == '\0') return kDefaultMatrixCapBytes;
  const std::string_view text(raw);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw InvalidParams(kMatrixCapEnvVar, "must be a positive byte count");
  }
  return value;
}

std::uint64_t dist_matrix_bytes(std::size_t n) noexcept {
  const auto m = static_cast<std::uint64_t>(n);
  return m * m * sizeof(float);
}

std::uint64_t neighborhood_matrix_bytes(std::size_t n) noexcept {
  const auto m = static_cast<std::uint64_t>(n);
  return m * ((m + 63) / 64) * sizeof(std::uint64_t);
}

void check_capacity(std::uint64_t required, std::uint64_t cap) {
  if (required > cap) throw CapacityExceeded(required, cap);
}

}  // namespace pdbscan
