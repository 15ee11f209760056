#include <doctest.h>

#include <random>

#include "cdna/dna.hpp"
#include "cdna/errors.hpp"

using namespace cdna;
using namespace cdna::dna;

namespace {

// Columns R1..R8, rows are codes 00, 01, 10, 11.
constexpr const char* kTable[8] = {"ACGT", "AGCT", "CATG", "CTAG", "GATC", "GTAC", "TCGA", "TGCA"};

std::string quad_string(const Quad& q)
{
    std::string s;
    for (Base b : q) s += to_char(b);
    return s;
}

std::vector<DnaRule> random_rules(std::mt19937& rng, std::size_t n)
{
    std::vector<DnaRule> rules;
    for (std::size_t i = 0; i < n; ++i) rules.push_back(DnaRule::from_index(rng() % 8));
    return rules;
}

GrayImage random_image(std::mt19937& rng, std::size_t h, std::size_t w)
{
    GrayImage img(h, w);
    for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(rng());
    return img;
}

constexpr Base kBases[] = {Base::A, Base::C, Base::G, Base::T};

}  // namespace

TEST_CASE("rule table")
{
    for (int id = 1; id <= 8; ++id) {
        const DnaRule r(id);
        CHECK(r.id() == id);
        for (std::uint8_t code = 0; code < 4; ++code) {
            CHECK(to_char(r.base(code)) == kTable[id - 1][code]);
            CHECK(r.code(r.base(code)) == code);
        }
    }
    CHECK(DnaRule::from_index(0) == DnaRule(1));
    CHECK(DnaRule::from_index(7) == DnaRule(8));
    CHECK_THROWS_AS(DnaRule(0), RangeError);
    CHECK_THROWS_AS(DnaRule(9), RangeError);
}

TEST_CASE("complementary codes map to complementary bases")
{
    for (int id = 1; id <= 8; ++id) {
        const DnaRule r(id);
        CHECK(r.base(0b11) == complement(r.base(0b00)));
        CHECK(r.base(0b10) == complement(r.base(0b01)));
    }
    CHECK(complement(Base::A) == Base::T);
    CHECK(complement(Base::C) == Base::G);
}

TEST_CASE("encode_byte examples")
{
    CHECK(quad_string(encode_byte(200, DnaRule(2))) == "TACA");
    CHECK(quad_string(encode_byte(0, DnaRule(1))) == "AAAA");
    CHECK(quad_string(encode_byte(255, DnaRule(1))) == "TTTT");
    CHECK(quad_string(encode_byte(0b00011011, DnaRule(1))) == "ACGT");

    CHECK(decode_bases({Base::T, Base::A, Base::C, Base::A}, DnaRule(2)) == 200);
    CHECK(decode_bases({Base::A, Base::A, Base::A, Base::A}, DnaRule(1)) == 0);
}

TEST_CASE("encode/decode round trip, all bytes and rules")
{
    for (int id = 1; id <= 8; ++id) {
        const DnaRule r(id);
        for (int b = 0; b < 256; ++b) {
            REQUIRE(decode_bases(encode_byte(static_cast<std::uint8_t>(b), r), r) == b);
        }
    }
}

TEST_CASE("dna_xor group laws")
{
    CHECK(dna_xor(Base::G, Base::C, DnaRule(1)) == Base::T);

    for (int id = 1; id <= 8; ++id) {
        const DnaRule r(id);
        const Base zero = r.base(0);
        for (Base x : kBases) {
            CHECK(dna_xor(x, x, r) == zero);
            CHECK(dna_xor(x, zero, r) == x);
            for (Base y : kBases) {
                CHECK(dna_xor(x, y, r) == dna_xor(y, x, r));
                CHECK(dna_xor(dna_xor(x, y, r), y, r) == x);
                for (Base z : kBases) {
                    CHECK(dna_xor(dna_xor(x, y, r), z, r) == dna_xor(x, dna_xor(y, z, r), r));
                }
            }
        }
    }
}

TEST_CASE("dna_xor matches byte XOR through the coding")
{
    for (int id = 1; id <= 8; ++id) {
        const DnaRule r(id);
        for (int a = 0; a < 256; a += 7) {
            for (int b = 0; b < 256; b += 11) {
                const Quad qa = encode_byte(static_cast<std::uint8_t>(a), r);
                const Quad qb = encode_byte(static_cast<std::uint8_t>(b), r);
                Quad qx;
                for (int i = 0; i < 4; ++i) qx[i] = dna_xor(qa[i], qb[i], r);
                REQUIRE(decode_bases(qx, r) == (a ^ b));
            }
        }
    }
}

TEST_CASE("plane encoding")
{
    const std::vector<DnaRule> r2{DnaRule(2)};
    const DnaPlane p = encode_plane(GrayImage(1, 1, 200), r2);
    CHECK(p.height == 1);
    CHECK(p.width == 1);
    CHECK(p.to_string() == "TACA");
    CHECK(decode_plane(p, r2) == GrayImage(1, 1, 200));

    std::mt19937 rng(5);
    const auto rules = random_rules(rng, 12);
    const DnaPlane zero = encode_plane(GrayImage(3, 4, 0), rules);
    for (std::size_t k = 0; k < 12; ++k) {
        for (Base b : zero.cell(k)) CHECK(b == rules[k].base(0));
    }

    for (int trial = 0; trial < 20; ++trial) {
        const GrayImage img = random_image(rng, 16, 16);
        const auto rs = random_rules(rng, 256);
        REQUIRE(decode_plane(encode_plane(img, rs), rs) == img);
    }

    CHECK_THROWS_AS(encode_plane(GrayImage(2, 2), random_rules(rng, 3)), ShapeError);
    CHECK_THROWS_AS(decode_plane(zero, random_rules(rng, 11)), ShapeError);
}

TEST_CASE("plane XOR")
{
    std::mt19937 rng(11);
    const auto rules = random_rules(rng, 80);
    const DnaPlane a = encode_plane(random_image(rng, 8, 10), rules);
    const DnaPlane b = encode_plane(random_image(rng, 8, 10), rules);

    const DnaPlane aa = xor_planes(a, a, rules);
    for (std::size_t k = 0; k < 80; ++k) {
        for (Base x : aa.cell(k)) CHECK(x == rules[k].base(0));
    }
    CHECK(xor_planes(xor_planes(a, b, rules), b, rules) == a);
    CHECK(xor_planes(a, b, rules) == xor_planes(b, a, rules));

    // Operands coded under different rules still invert through the XOR rule.
    const auto other = random_rules(rng, 80);
    const GrayImage ia = random_image(rng, 8, 10);
    const GrayImage ib = random_image(rng, 8, 10);
    const DnaPlane mixed = xor_planes(encode_plane(ia, rules), encode_plane(ib, other), rules);
    const DnaPlane back = xor_planes(mixed, encode_plane(ib, other), rules);
    CHECK(decode_plane(back, rules) == ia);

    const DnaPlane small = encode_plane(GrayImage(10, 8), rules);
    CHECK_THROWS_AS(xor_planes(a, small, rules), ShapeError);
    CHECK_THROWS_AS(xor_planes(a, b, random_rules(rng, 79)), ShapeError);
}
