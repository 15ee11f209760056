#include "cdna/image.hpp"

#include <string>

#include "cdna/errors.hpp"

namespace cdna {

GrayImage::GrayImage(std::size_t height, std::size_t width, std::uint8_t fill)
    : height_(height), width_(width), pixels_(height * width, fill)
{
}

GrayImage::GrayImage(std::size_t height, std::size_t width, std::vector<std::uint8_t> pixels)
    : height_(height), width_(width), pixels_(std::move(pixels))
{
    if (pixels_.size() != height_ * width_) {
        throw ShapeError("pixel buffer holds " + std::to_string(pixels_.size()) +
                         " bytes, expected " + std::to_string(height_ * width_));
    }
}

}  // namespace cdna
