#pragma once

#include <cstddef>
#include <cstdint>

namespace pdbscan {

inline constexpr std::uint64_t kDefaultMatrixCapBytes = std::uint64_t{4} << 30;

/// Environment variable overriding the matrix memory cap, in bytes.
inline constexpr const char* kMatrixCapEnvVar = "PDBSCAN_MATRIX_CAP_BYTES";

/// Reads kMatrixCapEnvVar, falling back to kDefaultMatrixCapBytes when unset.
/// Throws InvalidParams if the variable is set but not a positive integer.
std::uint64_t matrix_cap_from_env();

/// Bytes of an n x n 32-bit distance matrix.
std::uint64_t dist_matrix_bytes(std::size_t n) noexcept;

/// Bytes of an n x n bit-packed neighborhood matrix (rows padded to 64 bits).
std::uint64_t neighborhood_matrix_bytes(std::size_t n) noexcept;

/// Throws CapacityExceeded when required > cap.
void check_capacity(std::uint64_t required, std::uint64_t cap);

}  // namespace pdbscan
