#include "cdna/pipeline.hpp"

#include <algorithm>

#include "cdna/chaos.hpp"
#include "cdna/errors.hpp"

namespace cdna::pipeline {

namespace {

void check_permutation(std::span<const std::size_t> perm, std::size_t n, const char* axis)
{
    if (perm.size() != n) {
        throw PermutationError(std::string(axis) + " permutation has " + std::to_string(perm.size()) +
                               " entries, expected " + std::to_string(n));
    }
    std::vector<bool> seen(n, false);
    for (auto p : perm) {
        if (p >= n || seen[p]) throw PermutationError(std::string(axis) + " permutation is not a bijection");
        seen[p] = true;
    }
}

std::vector<dna::DnaRule> draw_rules(chaos::ChaosStream& stream, std::size_t count, bool keyed)
{
    const auto idx = chaos::chaotic_indices(stream, count, 8);
    std::vector<dna::DnaRule> rules;
    rules.reserve(count);
    for (auto i : idx) rules.push_back(dna::DnaRule::from_index(keyed ? i : 0));
    return rules;
}

GrayImage as_image(std::size_t height, std::size_t width, std::vector<std::uint8_t> bytes)
{
    return GrayImage(height, width, std::move(bytes));
}

}  // namespace

Keystreams generate_keystreams(const KeyBundle& bundle, std::size_t height, std::size_t width,
                               const Stages& stages)
{
    const std::size_t pixels = height * width;
    Keystreams ks;

    // Rows then columns from one continuous TD-ERCS stream.
    chaos::ChaosStream td(bundle.td_ercs);
    ks.row_perm = chaos::permutation_from_sequence(td.take(height));
    ks.col_perm = chaos::permutation_from_sequence(td.take(width));

    chaos::ChaosStream intertwining(bundle.intertwining);
    ks.mask1 = as_image(height, width, chaos::chaotic_bytes(intertwining, pixels));

    chaos::ChaosStream nca(bundle.nca);
    ks.sbox_choice = chaos::chaotic_indices(nca, pixels, 3);

    // One Chirikov stream, consumed in a fixed order.
    chaos::ChaosStream chirikov(bundle.chirikov);
    ks.encode_rules = draw_rules(chirikov, pixels, stages.dna_rules);
    ks.mask2 = as_image(height, width, chaos::chaotic_bytes(chirikov, pixels));
    ks.mask_rules = draw_rules(chirikov, pixels, stages.dna_rules);
    ks.decode_rules = draw_rules(chirikov, pixels, stages.dna_rules);
    return ks;
}

GrayImage permute_rows(const GrayImage& image, std::span<const std::size_t> perm)
{
    check_permutation(perm, image.height(), "row");
    GrayImage out(image.height(), image.width());
    const auto w = static_cast<std::ptrdiff_t>(image.width());
    for (std::size_t i = 0; i < image.height(); ++i) {
        const auto src = image.pixels().begin() + static_cast<std::ptrdiff_t>(perm[i]) * w;
        std::copy(src, src + w, out.pixels().begin() + static_cast<std::ptrdiff_t>(i) * w);
    }
    return out;
}

GrayImage unpermute_rows(const GrayImage& image, std::span<const std::size_t> perm)
{
    check_permutation(perm, image.height(), "row");
    GrayImage out(image.height(), image.width());
    const auto w = static_cast<std::ptrdiff_t>(image.width());
    for (std::size_t i = 0; i < image.height(); ++i) {
        const auto src = image.pixels().begin() + static_cast<std::ptrdiff_t>(i) * w;
        std::copy(src, src + w, out.pixels().begin() + static_cast<std::ptrdiff_t>(perm[i]) * w);
    }
    return out;
}

GrayImage permute_cols(const GrayImage& image, std::span<const std::size_t> perm)
{
    check_permutation(perm, image.width(), "column");
    GrayImage out(image.height(), image.width());
    for (std::size_t i = 0; i < image.height(); ++i) {
        for (std::size_t j = 0; j < image.width(); ++j) out(i, j) = image(i, perm[j]);
    }
    return out;
}

GrayImage unpermute_cols(const GrayImage& image, std::span<const std::size_t> perm)
{
    check_permutation(perm, image.width(), "column");
    GrayImage out(image.height(), image.width());
    for (std::size_t i = 0; i < image.height(); ++i) {
        for (std::size_t j = 0; j < image.width(); ++j) out(i, perm[j]) = image(i, j);
    }
    return out;
}

GrayImage xor_matrix(const GrayImage& image, const GrayImage& mask)
{
    if (!image.same_shape(mask)) throw ShapeError("XOR operands differ in shape");
    GrayImage out = image;
    auto px = out.pixels();
    const auto m = mask.pixels();
    for (std::size_t k = 0; k < px.size(); ++k) px[k] ^= m[k];
    return out;
}

GrayImage encrypt_image(const GrayImage& plain, const KeyBundle& bundle, const Stages& stages)
{
    if (plain.empty()) throw EmptyInput("cannot encrypt an empty image");
    const auto ks = generate_keystreams(bundle, plain.height(), plain.width(), stages);
    const auto& boxes = sbox::standard_sboxes();

    GrayImage img = plain;
    if (stages.row_permutation) img = permute_rows(img, ks.row_perm);
    if (stages.column_permutation) img = permute_cols(img, ks.col_perm);
    if (stages.chaotic_xor) img = xor_matrix(img, ks.mask1);
    if (stages.substitution) img = sbox::substitute(img, ks.sbox_choice, boxes);

    auto plane = dna::encode_plane(img, ks.encode_rules);
    if (stages.dna_xor) {
        const auto mask = dna::encode_plane(ks.mask2, ks.mask_rules);
        plane = dna::xor_planes(plane, mask, ks.encode_rules);
    }
    return dna::decode_plane(plane, ks.decode_rules);
}

GrayImage decrypt_image(const GrayImage& cipher, const KeyBundle& bundle, const Stages& stages)
{
    if (cipher.empty()) throw EmptyInput("cannot decrypt an empty image");
    const auto ks = generate_keystreams(bundle, cipher.height(), cipher.width(), stages);
    const auto& boxes = sbox::standard_sboxes();

    auto plane = dna::encode_plane(cipher, ks.decode_rules);
    if (stages.dna_xor) {
        const auto mask = dna::encode_plane(ks.mask2, ks.mask_rules);
        plane = dna::xor_planes(plane, mask, ks.encode_rules);
    }
    GrayImage img = dna::decode_plane(plane, ks.encode_rules);

    if (stages.substitution) img = sbox::inverse_substitute(img, ks.sbox_choice, boxes);
    if (stages.chaotic_xor) img = xor_matrix(img, ks.mask1);
    if (stages.column_permutation) img = unpermute_cols(img, ks.col_perm);
    if (stages.row_permutation) img = unpermute_rows(img, ks.row_perm);
    return img;
}

CipherEnvelope encrypt(const GrayImage& plain, const MasterKey& key, const Stages& stages)
{
    if (plain.empty()) throw EmptyInput("cannot encrypt an empty image");
    const auto bundle = keyschedule::expand(key, plain.height(), plain.width());
    CipherEnvelope env;
    env.checksum = sha256(plain.pixels());
    env.body = encrypt_image(plain, bundle, stages);
    return env;
}

GrayImage decrypt(const CipherEnvelope& env, const MasterKey& key, const Stages& stages)
{
    if (env.body.size() != env.body.height() * env.body.width()) {
        throw ShapeError("envelope body does not match its dimensions");
    }
    const auto bundle = keyschedule::expand(key, env.body.height(), env.body.width());
    GrayImage plain = decrypt_image(env.body, bundle, stages);
    if (sha256(plain.pixels()) != env.checksum) {
        throw ChecksumMismatch("plaintext checksum mismatch: wrong key or corrupted ciphertext");
    }
    return plain;
}

}  // namespace cdna::pipeline
