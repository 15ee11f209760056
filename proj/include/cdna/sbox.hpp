#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "cdna/image.hpp"

namespace cdna {

/// Bijective byte substitution table with its inverse.
class SBox {
public:
    /// Throws RangeError unless `table` is a permutation of 0..255.
    explicit SBox(const std::array<std::uint8_t, 256>& table);
    static SBox identity();

    std::uint8_t forward(std::uint8_t b) const noexcept { return table_[b]; }
    std::uint8_t backward(std::uint8_t b) const noexcept { return inverse_[b]; }
    const std::array<std::uint8_t, 256>& table() const noexcept { return table_; }
    const std::array<std::uint8_t, 256>& inverse() const noexcept { return inverse_; }

    friend bool operator==(const SBox& a, const SBox& b) { return a.table_ == b.table_; }

private:
    std::array<std::uint8_t, 256> table_{};
    std::array<std::uint8_t, 256> inverse_{};
};

using SBoxSet = std::array<SBox, 3>;

namespace sbox {

/// The three fixed boxes. Box k is the ascending argsort of 256 consecutive
/// post-burn-in NCA values seeded with c0 = 0.31 + 0.07k, chi = 1.1, xi = 17.
const SBoxSet& standard_sboxes();

/// Rebuilds the standard boxes from scratch (standard_sboxes caches this).
SBoxSet build_standard_sboxes();

/// Pixel k is replaced by boxes[selector[k]].forward(pixel).
GrayImage substitute(const GrayImage& image, std::span<const std::uint32_t> selector, const SBoxSet& boxes);
GrayImage inverse_substitute(const GrayImage& image, std::span<const std::uint32_t> selector,
                             const SBoxSet& boxes);

}  // namespace sbox

}  // namespace cdna
