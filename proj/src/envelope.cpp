#include <algorithm>
#include <fstream>
#include <iterator>

#include "cdna/errors.hpp"
#include "cdna/pipeline.hpp"

namespace cdna {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'C', 'D', 'N', 'A'};

void put_be32(std::vector<std::uint8_t>& out, std::size_t v)
{
    if (v > 0xffffffffu) throw RangeError("envelope dimension exceeds 32 bits");
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t get_be32(std::span<const std::uint8_t> b)
{
    return std::uint32_t{b[0]} << 24 | std::uint32_t{b[1]} << 16 | std::uint32_t{b[2]} << 8 | b[3];
}

}  // namespace

std::vector<std::uint8_t> CipherEnvelope::serialize() const
{
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + body.size());
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    out.push_back(version);
    put_be32(out, body.height());
    put_be32(out, body.width());
    out.insert(out.end(), checksum.begin(), checksum.end());
    out.insert(out.end(), body.pixels().begin(), body.pixels().end());
    return out;
}

CipherEnvelope CipherEnvelope::parse(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < kHeaderSize) throw MalformedFile("cipher file shorter than its header");
    if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
        throw MalformedFile("cipher file does not start with 'CDNA'");
    }
    CipherEnvelope env;
    env.version = bytes[4];
    if (env.version != kVersion) {
        throw MalformedFile("unsupported cipher file version " + std::to_string(env.version));
    }
    const std::size_t p = get_be32(bytes.subspan(5, 4));
    const std::size_t q = get_be32(bytes.subspan(9, 4));
    if (p == 0 || q == 0) throw ShapeError("cipher header declares an empty image");
    std::copy_n(bytes.begin() + 13, 32, env.checksum.begin());

    const auto body = bytes.subspan(kHeaderSize);
    if (body.size() != p * q) {
        throw ShapeError("cipher body holds " + std::to_string(body.size()) + " bytes, header declares " +
                         std::to_string(p) + "x" + std::to_string(q));
    }
    env.body = GrayImage(p, q, std::vector<std::uint8_t>(body.begin(), body.end()));
    return env;
}

void write_cipher_file(const std::filesystem::path& path, const CipherEnvelope& env)
{
    const auto bytes = env.serialize();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MalformedFile("cannot open cipher file for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw MalformedFile("failed writing cipher file: " + path.string());
}

CipherEnvelope read_cipher_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedFile("cannot open cipher file: " + path.string());
    const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return CipherEnvelope::parse(bytes);
}

}  // namespace cdna
