#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cdna/dna.hpp"
#include "cdna/image.hpp"
#include "cdna/keyschedule.hpp"
#include "cdna/sbox.hpp"

namespace cdna {

/// Ciphertext plus the header needed to decrypt and verify it.
struct CipherEnvelope {
    static constexpr std::uint8_t kVersion = 1;
    static constexpr std::size_t kHeaderSize = 4 + 1 + 4 + 4 + 32;

    std::uint8_t version = kVersion;
    Digest checksum{};  // SHA-256 of the plaintext pixels
    GrayImage body;

    /// "CDNA", u8 version, be32 P, be32 Q, checksum, P*Q body bytes.
    std::vector<std::uint8_t> serialize() const;
    static CipherEnvelope parse(std::span<const std::uint8_t> bytes);

    friend bool operator==(const CipherEnvelope&, const CipherEnvelope&) = default;
};

void write_cipher_file(const std::filesystem::path& path, const CipherEnvelope& env);
CipherEnvelope read_cipher_file(const std::filesystem::path& path);

namespace pipeline {

/// Test hook: each flag switches one cipher stage off. Keystreams are still
/// drawn in full, so disabling a stage never shifts the others.
struct Stages {
    bool row_permutation = true;
    bool column_permutation = true;
    bool chaotic_xor = true;    // R_T1 diffusion
    bool substitution = true;   // NCA-selected S-boxes
    bool dna_rules = true;      // keyed rule choice; off means R1 everywhere
    bool dna_xor = true;        // R_T2 diffusion in the DNA domain
};

/// Every key-derived quantity the cipher consumes, in stream order.
struct Keystreams {
    std::vector<std::size_t> row_perm;
    std::vector<std::size_t> col_perm;
    GrayImage mask1;                          // R_T1
    std::vector<std::uint32_t> sbox_choice;
    std::vector<dna::DnaRule> encode_rules;   // I_PS -> I_PD
    GrayImage mask2;                          // R_T2
    std::vector<dna::DnaRule> mask_rules;     // R_T2 -> R_TD
    std::vector<dna::DnaRule> decode_rules;   // I_PY -> C
};

Keystreams generate_keystreams(const KeyBundle& bundle, std::size_t height, std::size_t width,
                               const Stages& stages = {});

/// Output row i is input row perm[i].
GrayImage permute_rows(const GrayImage& image, std::span<const std::size_t> perm);
/// Output column j is input column perm[j].
GrayImage permute_cols(const GrayImage& image, std::span<const std::size_t> perm);
GrayImage unpermute_rows(const GrayImage& image, std::span<const std::size_t> perm);
GrayImage unpermute_cols(const GrayImage& image, std::span<const std::size_t> perm);

GrayImage xor_matrix(const GrayImage& image, const GrayImage& mask);

GrayImage encrypt_image(const GrayImage& plain, const KeyBundle& bundle, const Stages& stages = {});
GrayImage decrypt_image(const GrayImage& cipher, const KeyBundle& bundle, const Stages& stages = {});

CipherEnvelope encrypt(const GrayImage& plain, const MasterKey& key, const Stages& stages = {});

/// Throws ChecksumMismatch when the recovered plaintext does not match the
/// envelope checksum (wrong key, or floating-point drift across platforms).
GrayImage decrypt(const CipherEnvelope& env, const MasterKey& key, const Stages& stages = {});

}  // namespace pipeline

}  // namespace cdna
