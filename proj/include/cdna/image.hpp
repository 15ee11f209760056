#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cdna {

/// Row-major 8-bit image of `height` (P) rows and `width` (Q) columns.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(std::size_t height, std::size_t width, std::uint8_t fill = 0);
    GrayImage(std::size_t height, std::size_t width, std::vector<std::uint8_t> pixels);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return pixels_.size(); }
    bool empty() const noexcept { return pixels_.empty(); }

    std::uint8_t operator()(std::size_t row, std::size_t col) const noexcept
    {
        return pixels_[row * width_ + col];
    }
    std::uint8_t& operator()(std::size_t row, std::size_t col) noexcept
    {
        return pixels_[row * width_ + col];
    }

    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
    std::span<std::uint8_t> pixels() noexcept { return pixels_; }

    bool same_shape(const GrayImage& other) const noexcept
    {
        return height_ == other.height_ && width_ == other.width_;
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<std::uint8_t> pixels_;
};

}  // namespace cdna
