#pragma once

#include <string>
#include <string_view>

namespace offsetforge {

/// Governs how a full canonical identifier maps to an index key. Full keeps
/// the identifier verbatim (deterministic uniqueness); Hashed truncates a
/// SHA-256 digest to hash_bits, trading key size for a birthday-bound
/// collision probability.
struct IdentifierScheme {
    enum class Kind { Full, Hashed };

    Kind kind = Kind::Full;
    unsigned hash_bits = 0; // Hashed only; 1..256

    static IdentifierScheme full() { return {}; }
    static IdentifierScheme hashed(unsigned bits);

    bool is_full() const { return kind == Kind::Full; }

    // "full" or "hashed:<bits>"
    std::string to_string() const;
    static IdentifierScheme parse(std::string_view text);

    friend bool operator==(const IdentifierScheme&, const IdentifierScheme&) = default;
};

/// Key for a full identifier under the scheme. Full: identity. Hashed: the
/// value of the first hash_bits bits of SHA-256(identifier), rendered as
/// lowercase hex padded to ceil(hash_bits/4) digits. Pure and stable across
/// runs and platforms.
std::string hash_key(std::string_view full_identifier, const IdentifierScheme& scheme);

} // namespace offsetforge
