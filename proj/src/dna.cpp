#include "cdna/dna.hpp"

#include "cdna/errors.hpp"

namespace cdna::dna {

namespace {

using enum Base;

// Columns R1..R8: base for codes 00, 01, 10, 11.
constexpr std::array<std::array<Base, 4>, 8> kRules{{
    {A, C, G, T},
    {A, G, C, T},
    {C, A, T, G},
    {C, T, A, G},
    {G, A, T, C},
    {G, T, A, C},
    {T, C, G, A},
    {T, G, C, A},
}};

constexpr auto kInverse = [] {
    std::array<std::array<std::uint8_t, 4>, 8> inv{};
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::uint8_t c = 0; c < 4; ++c) inv[r][static_cast<std::size_t>(kRules[r][c])] = c;
    }
    return inv;
}();

void check_rules(std::size_t pixels, std::span<const DnaRule> rules)
{
    if (rules.size() != pixels) {
        throw ShapeError("DNA rule sequence has " + std::to_string(rules.size()) +
                         " entries for " + std::to_string(pixels) + " pixels");
    }
}

}  // namespace

char to_char(Base b) noexcept
{
    return "ACGT"[static_cast<int>(b)];
}

Base complement(Base b) noexcept
{
    return static_cast<Base>(3 - static_cast<int>(b));
}

DnaRule::DnaRule(int id) : id_(id)
{
    if (id < 1 || id > 8) throw RangeError("DNA rule id must be in 1..8");
}

Base DnaRule::base(std::uint8_t code) const noexcept
{
    return kRules[static_cast<std::size_t>(id_ - 1)][code & 3u];
}

std::uint8_t DnaRule::code(Base base) const noexcept
{
    return kInverse[static_cast<std::size_t>(id_ - 1)][static_cast<std::size_t>(base)];
}

Quad encode_byte(std::uint8_t b, DnaRule rule) noexcept
{
    return {rule.base(static_cast<std::uint8_t>(b >> 6)), rule.base(static_cast<std::uint8_t>(b >> 4)),
            rule.base(static_cast<std::uint8_t>(b >> 2)), rule.base(b)};
}

std::uint8_t decode_bases(const Quad& bases, DnaRule rule) noexcept
{
    unsigned b = 0;
    for (Base base : bases) b = (b << 2) | rule.code(base);
    return static_cast<std::uint8_t>(b);
}

Base dna_xor(Base x, Base y, DnaRule rule) noexcept
{
    return rule.base(static_cast<std::uint8_t>(rule.code(x) ^ rule.code(y)));
}

std::string DnaPlane::to_string() const
{
    std::string s;
    s.reserve(bases.size());
    for (Base b : bases) s.push_back(to_char(b));
    return s;
}

DnaPlane encode_plane(const GrayImage& image, std::span<const DnaRule> rules)
{
    check_rules(image.size(), rules);
    DnaPlane plane{image.height(), image.width(), std::vector<Base>(4 * image.size())};
    const auto px = image.pixels();
    for (std::size_t k = 0; k < px.size(); ++k) {
        const Quad q = encode_byte(px[k], rules[k]);
        std::copy(q.begin(), q.end(), plane.bases.begin() + static_cast<std::ptrdiff_t>(4 * k));
    }
    return plane;
}

GrayImage decode_plane(const DnaPlane& plane, std::span<const DnaRule> rules)
{
    const std::size_t pixels = plane.height * plane.width;
    if (plane.bases.size() != 4 * pixels) throw ShapeError("DNA plane size does not match its dimensions");
    check_rules(pixels, rules);
    GrayImage image(plane.height, plane.width);
    auto px = image.pixels();
    for (std::size_t k = 0; k < pixels; ++k) {
        const auto c = plane.cell(k);
        px[k] = decode_bases({c[0], c[1], c[2], c[3]}, rules[k]);
    }
    return image;
}

DnaPlane xor_planes(const DnaPlane& a, const DnaPlane& b, std::span<const DnaRule> rules)
{
    if (a.height != b.height || a.width != b.width || a.bases.size() != b.bases.size()) {
        throw ShapeError("DNA planes differ in shape");
    }
    const std::size_t pixels = a.height * a.width;
    if (a.bases.size() != 4 * pixels) throw ShapeError("DNA plane size does not match its dimensions");
    check_rules(pixels, rules);
    DnaPlane out{a.height, a.width, std::vector<Base>(a.bases.size())};
    for (std::size_t i = 0; i < a.bases.size(); ++i) {
        out.bases[i] = dna_xor(a.bases[i], b.bases[i], rules[i / 4]);
    }
    return out;
}

}  // namespace cdna::dna
