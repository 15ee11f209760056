#include "cdna/pgm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "cdna/errors.hpp"

namespace cdna::pgm {

namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint64_t number(const char* what)
    {
        skip_space_and_comments();
        std::uint64_t v = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_++] - '0');
            if (++digits > 10) throw MalformedFile(std::string("PGM ") + what + " is too large");
        }
        if (digits == 0) throw MalformedFile(std::string("PGM header is missing the ") + what);
        return v;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    void raster_separator()
    {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw MalformedFile("PGM header does not end in whitespace");
        }
        ++pos_;
    }

    std::size_t position() const noexcept { return pos_; }

private:
    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 2;
};

}  // namespace

GrayImage parse(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        throw MalformedFile("not a binary PGM (missing 'P5' magic)");
    }
    HeaderReader header(bytes);
    const auto width = header.number("width");
    const auto height = header.number("height");
    const auto maxval = header.number("maxval");
    if (width == 0 || height == 0) throw MalformedFile("PGM has a zero dimension");
    if (maxval == 0 || maxval > 65535) throw MalformedFile("PGM maxval out of range");
    if (maxval != 255) throw UnsupportedMaxval("PGM maxval " + std::to_string(maxval) + " unsupported (need 255)");
    header.raster_separator();

    const std::size_t count = width * height;
    const auto raster = bytes.subspan(header.position());
    if (raster.size() < count) {
        throw MalformedFile("PGM raster truncated: " + std::to_string(raster.size()) + " of " +
                            std::to_string(count) + " bytes");
    }
    return GrayImage(height, width, std::vector<std::uint8_t>(raster.begin(), raster.begin() + count));
}

std::vector<std::uint8_t> format(const GrayImage& image)
{
    const std::string header =
        "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), image.pixels().begin(), image.pixels().end());
    return out;
}

GrayImage read_pgm(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedFile("cannot open " + path.string());
    const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse(bytes);
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path)
{
    if (image.empty()) throw EmptyInput("cannot write an empty image");
    const auto bytes = format(image);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MalformedFile("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw MalformedFile("failed writing " + path.string());
}

}  // namespace cdna::pgm
