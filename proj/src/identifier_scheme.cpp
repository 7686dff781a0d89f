#include "offsetforge/identifier_scheme.hpp"

#include <charconv>

#include "offsetforge/errors.hpp"
#include "offsetforge/sha256.hpp"

namespace offsetforge {

IdentifierScheme IdentifierScheme::hashed(unsigned bits) {
    if (bits == 0 || bits > 256) {
        throw DomainError("hash_bits must be in 1..256, got " + std::to_string(bits));
    }
    return {Kind::Hashed, bits};
}

std::string IdentifierScheme::to_string() const {
    if (kind == Kind::Full) return "full";
    return "hashed:" + std::to_string(hash_bits);
}

IdentifierScheme IdentifierScheme::parse(std::string_view text) {
    if (text == "full") return full();
    constexpr std::string_view prefix = "hashed:";
    if (text.substr(0, prefix.size()) == prefix) {
        std::string_view num = text.substr(prefix.size());
        unsigned bits = 0;
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), bits);
        if (ec == std::errc() && ptr == num.data() + num.size()) return hashed(bits);
    }
    throw DomainError("invalid identifier scheme: '" + std::string(text) +
                      "' (expected full or hashed:<bits>)");
}

std::string hash_key(std::string_view full_identifier, const IdentifierScheme& scheme) {
    if (scheme.is_full()) return std::string(full_identifier);

    const unsigned bits = scheme.hash_bits;
    Sha256Digest digest = sha256(full_identifier);

    const unsigned n_bytes = (bits + 7) / 8;
    const unsigned shift = n_bytes * 8 - bits;

    // Right-shift the first n_bytes of the digest (big-endian) by `shift`
    // so the byte array holds exactly the value of the first `bits` bits.
    uint8_t value[32] = {0};
    unsigned carry = 0;
    for (unsigned i = 0; i < n_bytes; ++i) {
        unsigned byte = digest[i];
        if (shift > 0) {
            value[i] = static_cast<uint8_t>((byte >> shift) | (carry << (8 - shift)));
            carry = byte & ((1u << shift) - 1);
        } else {
            value[i] = static_cast<uint8_t>(byte);
        }
    }

    static const char* hex = "0123456789abcdef";
    std::string full_hex(n_bytes * 2, '0');
    for (unsigned i = 0; i < n_bytes; ++i) {
        full_hex[2 * i] = hex[value[i] >> 4];
        full_hex[2 * i + 1] = hex[value[i] & 0xF];
    }

    // The value needs ceil(bits/4) digits; drop the leading digits that the
    // byte alignment introduced (they are always zero after the shift).
    const unsigned n_digits = (bits + 3) / 4;
    return full_hex.substr(full_hex.size() - n_digits);
}

} // namespace offsetforge
