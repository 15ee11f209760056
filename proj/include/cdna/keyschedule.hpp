#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cdna/chaos.hpp"
#include "cdna/image.hpp"
#include "cdna/sha256.hpp"

namespace cdna {

enum class KeyOrigin { ImageHash, UserSupplied };

/// The single secret: a 256-bit digest. Everything else is derived from it.
struct MasterKey {
    Digest digest{};
    KeyOrigin origin = KeyOrigin::UserSupplied;

    std::string hex() const;
    static MasterKey from_hex(std::string_view hex);

    /// Copy with bit `bit` (0 = least significant bit of the last byte) flipped.
    MasterKey with_flipped_bit(unsigned bit = 0) const;

    friend bool operator==(const MasterKey& a, const MasterKey& b) { return a.digest == b.digest; }
};

/// Seed parameters for the four maps, all inside their legal ranges.
struct KeyBundle {
    chaos::TdErcsParams td_ercs;
    chaos::IntertwiningParams intertwining;
    chaos::ChirikovParams chirikov;
    chaos::NcaParams nca;

    void validate() const;
    friend bool operator==(const KeyBundle&, const KeyBundle&);
};

namespace keyschedule {

/// Margin keeping derived seeds off the edges of their open ranges.
inline constexpr double kEdge = 1e-6;

// Fixed (key-independent) map constants.
inline constexpr double kAlpha = 1.2345;
inline constexpr int kDelay = 5;
inline constexpr double kLambda = 3.99;
inline constexpr double kA1 = 34.1;
inline constexpr double kA2 = 38.1;
inline constexpr double kA3 = 36.1;
inline constexpr double kEta = 7.77;
inline constexpr double kChi = 1.2;
inline constexpr double kXi = 20.0;

/// SHA-256 of be32(P) || be32(Q) || row-major pixels.
MasterKey derive_key(const GrayImage& image);

/// Expands a digest into the seed bundle for a P x Q image.
///
/// The digest is read as four big-endian 64-bit words w1..w4, u_i = w_i/2^64:
///   u1 -> TD-ERCS mu, u2 -> TD-ERCS x0 and Intertwining X0,
///   u3 -> NCA C0, u4 -> Chirikov A0.
/// Y0, Z0 and B0 take words 1..3 of SHA-256(digest || 0x01). Every open
/// range (lo,hi) is entered through lo + (hi-lo)(eps + u(1-2 eps)).
KeyBundle expand(const MasterKey& key, std::size_t height, std::size_t width);

/// Key file: "CDNA-KEY v1" then the digest as 64 lowercase hex chars.
void write_key_file(const std::filesystem::path& path, const MasterKey& key);
MasterKey read_key_file(const std::filesystem::path& path);
std::string format_key_file(const MasterKey& key);
MasterKey parse_key_file(std::string_view text);

}  // namespace keyschedule

}  // namespace cdna
