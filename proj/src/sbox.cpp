#include "cdna/sbox.hpp"

#include <numeric>

#include "cdna/chaos.hpp"
#include "cdna/errors.hpp"

namespace cdna {

SBox::SBox(const std::array<std::uint8_t, 256>& table) : table_(table)
{
    std::array<bool, 256> seen{};
    for (std::size_t i = 0; i < 256; ++i) {
        if (seen[table_[i]]) throw RangeError("S-box table is not a permutation of 0..255");
        seen[table_[i]] = true;
        inverse_[table_[i]] = static_cast<std::uint8_t>(i);
    }
}

SBox SBox::identity()
{
    std::array<std::uint8_t, 256> t{};
    std::iota(t.begin(), t.end(), std::uint8_t{0});
    return SBox(t);
}

namespace sbox {

namespace {

void check_selector(const GrayImage& image, std::span<const std::uint32_t> selector)
{
    if (selector.size() != image.size()) {
        throw ShapeError("S-box selector has " + std::to_string(selector.size()) + " entries for " +
                         std::to_string(image.size()) + " pixels");
    }
    for (auto s : selector) {
        if (s > 2) throw RangeError("S-box selector entries must be 0, 1 or 2");
    }
}

}  // namespace

SBoxSet build_standard_sboxes()
{
    auto make = [](int k) {
        chaos::ChaosStream stream(chaos::NcaParams{0.31 + 0.07 * k, 1.1, 17.0});
        const auto perm = chaos::permutation_from_sequence(stream.take(256));
        std::array<std::uint8_t, 256> t{};
        for (std::size_t i = 0; i < 256; ++i) t[i] = static_cast<std::uint8_t>(perm[i]);
        return SBox(t);
    };
    return {make(0), make(1), make(2)};
}

const SBoxSet& standard_sboxes()
{
    static const SBoxSet boxes = build_standard_sboxes();
    return boxes;
}

GrayImage substitute(const GrayImage& image, std::span<const std::uint32_t> selector, const SBoxSet& boxes)
{
    check_selector(image, selector);
    GrayImage out = image;
    auto px = out.pixels();
    for (std::size_t k = 0; k < px.size(); ++k) px[k] = boxes[selector[k]].forward(px[k]);
    return out;
}

GrayImage inverse_substitute(const GrayImage& image, std::span<const std::uint32_t> selector,
                             const SBoxSet& boxes)
{
    check_selector(image, selector);
    GrayImage out = image;
    auto px = out.pixels();
    for (std::size_t k = 0; k < px.size(); ++k) px[k] = boxes[selector[k]].backward(px[k]);
    return out;
}

}  // namespace sbox

}  // namespace cdna
