#include "cdna/keyschedule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cdna/errors.hpp"

namespace cdna {

namespace {

constexpr std::string_view kKeyMagic = "CDNA-KEY v1";

std::array<std::uint8_t, 4> be32(std::size_t v)
{
    if (v > 0xffffffffu) throw RangeError("image dimension exceeds 32 bits");
    return {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
            static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
}

std::array<std::uint64_t, 4> words(const Digest& d)
{
    std::array<std::uint64_t, 4> w{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t b = 0; b < 8; ++b) w[i] = (w[i] << 8) | d[i * 8 + b];
    }
    return w;
}

// w / 2^64 in [0,1). Words within half an ulp of 2^64 round to 1.0 on
// conversion and are pulled back to the largest double below 1.
double unit_interval(std::uint64_t w)
{
    const double u = std::ldexp(static_cast<double>(w), -64);
    return u < 1.0 ? u : std::nextafter(1.0, 0.0);
}

double inset(double u)
{
    return keyschedule::kEdge + u * (1 - 2 * keyschedule::kEdge);
}

int hex_value(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

}  // namespace

std::string MasterKey::hex() const
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (auto b : digest) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 15]);
    }
    return s;
}

MasterKey MasterKey::from_hex(std::string_view hex)
{
    if (hex.size() != 64) throw FormatError("key digest must be 64 hex characters");
    MasterKey key;
    for (std::size_t i = 0; i < 32; ++i) {
        const int hi = hex_value(hex[2 * i]);
        const int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw FormatError("key digest must be lowercase hex");
        key.digest[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    key.origin = KeyOrigin::UserSupplied;
    return key;
}

MasterKey MasterKey::with_flipped_bit(unsigned bit) const
{
    if (bit >= 256) throw RangeError("key bit index must be < 256");
    MasterKey k = *this;
    k.digest[31 - bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    return k;
}

void KeyBundle::validate() const
{
    td_ercs.validate();
    intertwining.validate();
    chirikov.validate();
    nca.validate();
}

bool operator==(const KeyBundle& a, const KeyBundle& b)
{
    const auto& t1 = a.td_ercs;
    const auto& t2 = b.td_ercs;
    const auto& i1 = a.intertwining;
    const auto& i2 = b.intertwining;
    const auto& c1 = a.chirikov;
    const auto& c2 = b.chirikov;
    return t1.mu == t2.mu && t1.x0 == t2.x0 && t1.alpha == t2.alpha && t1.m == t2.m &&
           i1.lambda == i2.lambda && i1.a1 == i2.a1 && i1.a2 == i2.a2 && i1.a3 == i2.a3 &&
           i1.x0 == i2.x0 && i1.y0 == i2.y0 && i1.z0 == i2.z0 && c1.eta == c2.eta &&
           c1.n == c2.n && c1.a0 == c2.a0 && c1.b0 == c2.b0 && a.nca.c0 == b.nca.c0 &&
           a.nca.chi == b.nca.chi && a.nca.xi == b.nca.xi;
}

namespace keyschedule {

MasterKey derive_key(const GrayImage& image)
{
    if (image.empty()) throw EmptyInput("cannot derive a key from an empty image");
    const auto p = be32(image.height());
    const auto q = be32(image.width());
    return {sha256({p, q, image.pixels()}), KeyOrigin::ImageHash};
}

KeyBundle expand(const MasterKey& key, std::size_t height, std::size_t width)
{
    if (height == 0 || width == 0) throw EmptyInput("image dimensions must be positive");

    const auto w = words(key.digest);
    static constexpr std::uint8_t kRehashTag[] = {0x01};
    const auto v = words(sha256({key.digest, kRehashTag}));

    const double u1 = unit_interval(w[0]);
    const double u2 = unit_interval(w[1]);
    const double u3 = unit_interval(w[2]);
    const double u4 = unit_interval(w[3]);
    const auto lattice = static_cast<std::uint64_t>(std::max(height, width));
    const auto n = static_cast<double>(lattice);

    KeyBundle kb;
    kb.td_ercs = {inset(u1), (-1 + kEdge) + u2 * (2 - 2 * kEdge), kAlpha, kDelay};
    kb.intertwining = {kLambda,
                       kA1,
                       kA2,
                       kA3,
                       inset(u2),
                       inset(unit_interval(v[0])),
                       inset(unit_interval(v[1]))};
    kb.chirikov = {kEta, lattice, n * inset(u4), n * inset(unit_interval(v[2]))};
    kb.nca = {inset(u3), kChi, kXi};
    return kb;
}

std::string format_key_file(const MasterKey& key)
{
    return std::string(kKeyMagic) + "\n" + key.hex() + "\n";
}

MasterKey parse_key_file(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string magic, hex, extra;
    if (std::getline(in, magic) && !magic.empty() && magic.back() == '\r') magic.pop_back();
    if (!in || magic != kKeyMagic) {
        throw FormatError("key file must start with '" + std::string(kKeyMagic) + "'");
    }
    if (!std::getline(in, hex)) throw FormatError("key file is missing the digest line");
    if (!hex.empty() && hex.back() == '\r') hex.pop_back();
    while (std::getline(in, extra)) {
        if (!extra.empty() && extra != "\r") throw FormatError("trailing data in key file");
    }
    return MasterKey::from_hex(hex);
}

void write_key_file(const std::filesystem::path& path, const MasterKey& key)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open key file for writing: " + path.string());
    out << format_key_file(key);
    if (!out) throw FormatError("failed writing key file: " + path.string());
}

MasterKey read_key_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open key file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_key_file(buf.str());
}

}  // namespace keyschedule

}  // namespace cdna
