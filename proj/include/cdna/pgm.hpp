#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cdna/image.hpp"

namespace cdna::pgm {

/// Parses a binary (P5) greymap with maxval 255. Header comments are
/// skipped; bytes after the first image are ignored.
GrayImage parse(std::span<const std::uint8_t> bytes);

/// "P5\n<width> <height>\n255\n" followed by the raw pixels.
std::vector<std::uint8_t> format(const GrayImage& image);

GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const GrayImage& image, const std::filesystem::path& path);

}  // namespace cdna::pgm
