#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace offsetforge {

using Sha256Digest = std::array<uint8_t, 32>;

// FIPS 180-4 SHA-256 of the given bytes.
Sha256Digest sha256(std::string_view data);

// Lowercase hex rendering of the full 256-bit digest.
std::string sha256_hex(std::string_view data);

} // namespace offsetforge
