#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cdna/image.hpp"

namespace cdna::dna {

enum class Base : std::uint8_t { A, C, G, T };

char to_char(Base b) noexcept;
Base complement(Base b) noexcept;

/// One of the eight complementary 2-bit <-> base codings R1..R8.
class DnaRule {
public:
    /// Rule R`id`, id in 1..8.
    explicit DnaRule(int id);
    static DnaRule from_index(std::uint32_t index) { return DnaRule(static_cast<int>(index) + 1); }

    int id() const noexcept { return id_; }
    Base base(std::uint8_t code) const noexcept;
    std::uint8_t code(Base base) const noexcept;

    friend bool operator==(DnaRule, DnaRule) = default;

private:
    int id_;
};

using Quad = std::array<Base, 4>;

/// Splits b MSB-first into four 2-bit groups and maps each through `rule`.
Quad encode_byte(std::uint8_t b, DnaRule rule) noexcept;
std::uint8_t decode_bases(const Quad& bases, DnaRule rule) noexcept;

/// XOR of the underlying 2-bit codes under `rule`.
Base dna_xor(Base x, Base y, DnaRule rule) noexcept;

/// P x Q grid of pixels, four bases per pixel in MSB-first order.
struct DnaPlane {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<Base> bases;

    std::span<const Base, 4> cell(std::size_t index) const
    {
        return std::span<const Base, 4>(bases.data() + 4 * index, 4);
    }
    std::string to_string() const;

    friend bool operator==(const DnaPlane&, const DnaPlane&) = default;
};

/// Pixel k (row-major) is encoded with rules[k].
DnaPlane encode_plane(const GrayImage& image, std::span<const DnaRule> rules);
GrayImage decode_plane(const DnaPlane& plane, std::span<const DnaRule> rules);
DnaPlane xor_planes(const DnaPlane& a, const DnaPlane& b, std::span<const DnaRule> rules);

}  // namespace cdna::dna
