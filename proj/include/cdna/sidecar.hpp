#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "cdna/image.hpp"

namespace cdna {

/// Metadata travelling with a latent greymap produced by the autoencoder:
/// the colour image it came from and the linear 8-bit quantisation range.
///
/// Text form, one key=value per line (blank lines and '#' comments allowed):
///
///     format=cdna-latent-sidecar
///     version=1
///     original_width=768
///     original_height=512
///     channels=3
///     latent_width=512
///     latent_height=384
///     quant_min=-0.25
///     quant_max=3.5
struct LatentSidecar {
    static constexpr int kVersion = 1;

    int version = kVersion;
    std::size_t original_width = 0;
    std::size_t original_height = 0;
    std::size_t channels = 3;
    std::size_t latent_width = 0;
    std::size_t latent_height = 0;
    double quant_min = 0;
    double quant_max = 1;

    void validate() const;
    /// Throws FormatError unless the latent dimensions match `latent`.
    void check_matches(const GrayImage& latent) const;

    std::string to_text() const;
    static LatentSidecar parse(std::string_view text);

    friend bool operator==(const LatentSidecar&, const LatentSidecar&) = default;
};

LatentSidecar read_sidecar(const std::filesystem::path& path);
void write_sidecar(const std::filesystem::path& path, const LatentSidecar& sidecar);

}  // namespace cdna
