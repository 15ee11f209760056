#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdna/image.hpp"
#include "cdna/keyschedule.hpp"
#include "cdna/pipeline.hpp"

namespace cdna::metrics {

using Histogram = std::array<std::uint64_t, 256>;

enum class Direction { Horizontal, Vertical, Diagonal };

Histogram histogram(const GrayImage& image);

/// Shannon entropy of the pixel histogram in bits (0 log 0 = 0).
double entropy(const GrayImage& image);

/// Pearson correlation over every adjacent pixel pair in `dir`:
/// H pairs (i,j),(i,j+1); V pairs (i,j),(i+1,j); D pairs (i,j),(i+1,j+1).
double correlation(const GrayImage& image, Direction dir);

std::vector<std::pair<std::uint8_t, std::uint8_t>> adjacent_pairs(const GrayImage& image, Direction dir);

/// Percentage of positions where a and b differ.
double npcr(const GrayImage& a, const GrayImage& b);

/// 100 * mean(|a - b|) / 255.
double uaci(const GrayImage& a, const GrayImage& b);

/// NPCR between the ciphertexts of `image` under two keys.
double cipher_difference(const GrayImage& image, const MasterKey& a, const MasterKey& b);

/// NPCR between ciphertexts under `key` and `key` with its lowest bit flipped.
double key_sensitivity(const GrayImage& image, const MasterKey& key);

struct GlcmFeatures {
    double contrast = 0;
    double homogeneity = 0;
    double energy = 0;
};

/// Co-occurrence at offset (0,1), normalised by the pair count. With fewer
/// than 256 levels, pixel v falls in level floor(v * levels / 256).
GlcmFeatures glcm(const GrayImage& image, unsigned levels = 256);

/// Pearson chi-square of the histogram against the uniform distribution.
double chi_square(const GrayImage& image);

/// 5% critical value of chi-square with 255 degrees of freedom.
inline constexpr double kChiSquareCritical255 = 293.25;

struct ImageStatistics {
    double entropy = 0;
    std::optional<double> corr_h;  // empty when the image has no variance
    std::optional<double> corr_v;
    std::optional<double> corr_d;
    std::optional<GlcmFeatures> glcm;    // 256 levels; empty when width < 2
    std::optional<GlcmFeatures> glcm8;   // 8 levels
    Histogram histogram{};
    double chi_square = 0;
};

ImageStatistics image_statistics(const GrayImage& image);

/// Table-style security report for a plaintext / ciphertext pair.
struct MetricsReport {
    ImageStatistics plain;
    ImageStatistics cipher;
    double npcr = 0;             // ciphertexts of plaintexts one pixel apart
    double uaci = 0;
    double key_sensitivity = 0;  // one-bit key flip
    bool cipher_matches_key = false;
    std::vector<std::string> warnings;
};

/// `key` must be the key the envelope was produced with. When it is an
/// image-hash key the differential test re-derives the key from the
/// modified plaintext; a user-supplied key is reused as is.
MetricsReport analyze(const GrayImage& plain, const CipherEnvelope& cipher, const MasterKey& key);

/// Flat "name=value" lines.
std::string to_key_value_text(const MetricsReport& report);

/// Writes report.csv, histogram_{plain,cipher}.csv and the six
/// correlation scatter files corr_{h,v,d}_{plain,cipher}.csv into `dir`.
void write_csv(const std::filesystem::path& dir, const GrayImage& plain, const GrayImage& cipher,
               const MetricsReport& report);

}  // namespace cdna::metrics
