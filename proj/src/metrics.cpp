#include "cdna/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cdna/errors.hpp"

namespace cdna::metrics {

namespace {

void require_pair(const GrayImage& a, const GrayImage& b)
{
    if (!a.same_shape(b)) throw ShapeError("images differ in shape");
    if (a.empty()) throw EmptyInput("images are empty");
}

struct Offset {
    std::size_t di;
    std::size_t dj;
};

Offset offset_of(Direction dir)
{
    switch (dir) {
    case Direction::Horizontal:
        return {0, 1};
    case Direction::Vertical:
        return {1, 0};
    case Direction::Diagonal:
        break;
    }
    return {1, 1};
}

template <typename F>
void for_each_pair(const GrayImage& image, Direction dir, F&& f)
{
    const auto [di, dj] = offset_of(dir);
    if (image.height() < di + 1 || image.width() < dj + 1) return;
    for (std::size_t i = 0; i + di < image.height(); ++i) {
        for (std::size_t j = 0; j + dj < image.width(); ++j) f(image(i, j), image(i + di, j + dj));
    }
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string fmt(const std::optional<double>& v)
{
    return v ? fmt(*v) : std::string("undefined");
}

template <typename F>
std::optional<double> try_metric(F&& f)
{
    try {
        return f();
    } catch (const ZeroVariance&) {
        return std::nullopt;
    } catch (const ShapeError&) {
        return std::nullopt;
    }
}

}  // namespace

Histogram histogram(const GrayImage& image)
{
    Histogram h{};
    for (auto v : image.pixels()) ++h[v];
    return h;
}

double entropy(const GrayImage& image)
{
    if (image.empty()) throw EmptyInput("entropy of an empty image");
    const auto h = histogram(image);
    const auto n = static_cast<double>(image.size());
    double e = 0;
    for (auto count : h) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / n;
        e -= p * std::log2(p);
    }
    return e;
}

double correlation(const GrayImage& image, Direction dir)
{
    std::size_t n = 0;
    double sx = 0, sy = 0;
    for_each_pair(image, dir, [&](std::uint8_t x, std::uint8_t y) {
        ++n;
        sx += x;
        sy += y;
    });
    if (n < 2) throw ShapeError("correlation needs at least two adjacent pairs");
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);

    double cxy = 0, cxx = 0, cyy = 0;
    for_each_pair(image, dir, [&](std::uint8_t x, std::uint8_t y) {
        const double dx = x - mx;
        const double dy = y - my;
        cxy += dx * dy;
        cxx += dx * dx;
        cyy += dy * dy;
    });
    if (cxx == 0 || cyy == 0) throw ZeroVariance("pixel series has zero variance");
    return cxy / std::sqrt(cxx * cyy);
}

std::vector<std::pair<std::uint8_t, std::uint8_t>> adjacent_pairs(const GrayImage& image, Direction dir)
{
    std::vector<std::pair<std::uint8_t, std::uint8_t>> out;
    for_each_pair(image, dir, [&](std::uint8_t x, std::uint8_t y) { out.emplace_back(x, y); });
    return out;
}

double npcr(const GrayImage& a, const GrayImage& b)
{
    require_pair(a, b);
    std::size_t diff = 0;
    const auto pa = a.pixels();
    const auto pb = b.pixels();
    for (std::size_t k = 0; k < pa.size(); ++k) diff += pa[k] != pb[k];
    return 100.0 * static_cast<double>(diff) / static_cast<double>(pa.size());
}

double uaci(const GrayImage& a, const GrayImage& b)
{
    require_pair(a, b);
    std::uint64_t total = 0;
    const auto pa = a.pixels();
    const auto pb = b.pixels();
    for (std::size_t k = 0; k < pa.size(); ++k) total += static_cast<std::uint64_t>(std::abs(pa[k] - pb[k]));
    return 100.0 * static_cast<double>(total) / (255.0 * static_cast<double>(pa.size()));
}

double cipher_difference(const GrayImage& image, const MasterKey& a, const MasterKey& b)
{
    return npcr(pipeline::encrypt(image, a).body, pipeline::encrypt(image, b).body);
}

double key_sensitivity(const GrayImage& image, const MasterKey& key)
{
    return cipher_difference(image, key, key.with_flipped_bit(0));
}

GlcmFeatures glcm(const GrayImage& image, unsigned levels)
{
    if (image.width() < 2) throw ShapeError("GLCM needs at least two columns");
    if (levels < 2 || levels > 256) throw RangeError("GLCM level count must be in 2..256");

    std::vector<std::uint64_t> counts(std::size_t{levels} * levels, 0);
    auto level = [levels](std::uint8_t v) { return std::size_t{v} * levels / 256; };
    std::uint64_t pairs = 0;
    for_each_pair(image, Direction::Horizontal, [&](std::uint8_t a, std::uint8_t b) {
        ++counts[level(a) * levels + level(b)];
        ++pairs;
    });

    GlcmFeatures f;
    const auto total = static_cast<double>(pairs);
    for (std::size_t i = 0; i < levels; ++i) {
        for (std::size_t j = 0; j < levels; ++j) {
            const auto c = counts[i * levels + j];
            if (c == 0) continue;
            const double p = static_cast<double>(c) / total;
            const double d = static_cast<double>(i) - static_cast<double>(j);
            f.contrast += p * d * d;
            f.homogeneity += p / (1 + std::fabs(d));
            f.energy += p * p;
        }
    }
    return f;
}

double chi_square(const GrayImage& image)
{
    if (image.empty()) throw EmptyInput("chi-square of an empty image");
    const auto h = histogram(image);
    const double expected = static_cast<double>(image.size()) / 256.0;
    double chi = 0;
    for (auto observed : h) {
        const double d = static_cast<double>(observed) - expected;
        chi += d * d / expected;
    }
    return chi;
}

ImageStatistics image_statistics(const GrayImage& image)
{
    ImageStatistics s;
    s.entropy = entropy(image);
    s.corr_h = try_metric([&] { return correlation(image, Direction::Horizontal); });
    s.corr_v = try_metric([&] { return correlation(image, Direction::Vertical); });
    s.corr_d = try_metric([&] { return correlation(image, Direction::Diagonal); });
    if (image.width() >= 2) {
        s.glcm = glcm(image, 256);
        s.glcm8 = glcm(image, 8);
    }
    s.histogram = histogram(image);
    s.chi_square = chi_square(image);
    return s;
}

MetricsReport analyze(const GrayImage& plain, const CipherEnvelope& cipher, const MasterKey& key)
{
    if (!plain.same_shape(cipher.body)) throw ShapeError("plaintext and ciphertext differ in shape");
    MetricsReport r;
    r.plain = image_statistics(plain);
    r.cipher = image_statistics(cipher.body);

    const auto reference = pipeline::encrypt(plain, key);
    r.cipher_matches_key = reference == cipher;

    // Differential pair: flip the low bit of the centre pixel.
    GrayImage tweaked = plain;
    tweaked(plain.height() / 2, plain.width() / 2) ^= 1;
    const MasterKey tweaked_key =
        key.origin == KeyOrigin::ImageHash ? keyschedule::derive_key(tweaked) : key;
    const auto other = pipeline::encrypt(tweaked, tweaked_key);
    r.npcr = npcr(reference.body, other.body);
    r.uaci = uaci(reference.body, other.body);
    r.key_sensitivity = key_sensitivity(plain, key);

    if (!r.cipher_matches_key) r.warnings.emplace_back("ciphertext was not produced from this plaintext and key");
    if (r.uaci < 33.0 || r.uaci > 36.0) r.warnings.emplace_back("uaci outside [33,36]");
    if (r.npcr < 99.0) r.warnings.emplace_back("npcr below 99%");
    if (r.cipher.chi_square >= kChiSquareCritical255) {
        r.warnings.emplace_back("cipher histogram fails chi-square at 5%");
    }
    return r;
}

namespace {

std::vector<std::pair<std::string, std::string>> flatten(const MetricsReport& r)
{
    std::vector<std::pair<std::string, std::string>> kv;
    auto stats = [&kv](const std::string& prefix, const ImageStatistics& s) {
        kv.emplace_back(prefix + "entropy", fmt(s.entropy));
        kv.emplace_back(prefix + "corr_h", fmt(s.corr_h));
        kv.emplace_back(prefix + "corr_v", fmt(s.corr_v));
        kv.emplace_back(prefix + "corr_d", fmt(s.corr_d));
        kv.emplace_back(prefix + "contrast", s.glcm ? fmt(s.glcm->contrast) : "undefined");
        kv.emplace_back(prefix + "homogeneity", s.glcm ? fmt(s.glcm->homogeneity) : "undefined");
        kv.emplace_back(prefix + "energy", s.glcm ? fmt(s.glcm->energy) : "undefined");
        kv.emplace_back(prefix + "glcm8_contrast", s.glcm8 ? fmt(s.glcm8->contrast) : "undefined");
        kv.emplace_back(prefix + "glcm8_homogeneity", s.glcm8 ? fmt(s.glcm8->homogeneity) : "undefined");
        kv.emplace_back(prefix + "glcm8_energy", s.glcm8 ? fmt(s.glcm8->energy) : "undefined");
        kv.emplace_back(prefix + "chi_square", fmt(s.chi_square));
    };
    stats("plain_", r.plain);
    stats("cipher_", r.cipher);
    kv.emplace_back("npcr", fmt(r.npcr));
    kv.emplace_back("uaci", fmt(r.uaci));
    kv.emplace_back("key_sensitivity", fmt(r.key_sensitivity));
    kv.emplace_back("cipher_matches_key", r.cipher_matches_key ? "true" : "false");
    for (const auto& w : r.warnings) kv.emplace_back("warning", w);
    return kv;
}

std::ofstream open_csv(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw MalformedFile("cannot write " + path.string());
    return out;
}

}  // namespace

std::string to_key_value_text(const MetricsReport& report)
{
    std::ostringstream out;
    for (const auto& [k, v] : flatten(report)) out << k << '=' << v << '\n';
    return out.str();
}

void write_csv(const std::filesystem::path& dir, const GrayImage& plain, const GrayImage& cipher,
               const MetricsReport& report)
{
    std::filesystem::create_directories(dir);
    {
        auto out = open_csv(dir / "report.csv");
        out << "metric,value\n";
        for (const auto& [k, v] : flatten(report)) out << k << ',' << v << '\n';
    }
    const std::pair<const char*, const GrayImage*> images[] = {{"plain", &plain}, {"cipher", &cipher}};
    for (const auto& [name, img] : images) {
        auto out = open_csv(dir / (std::string("histogram_") + name + ".csv"));
        out << "value,count\n";
        const auto h = histogram(*img);
        for (std::size_t v = 0; v < h.size(); ++v) out << v << ',' << h[v] << '\n';

        const std::pair<const char*, Direction> dirs[] = {
            {"h", Direction::Horizontal}, {"v", Direction::Vertical}, {"d", Direction::Diagonal}};
        for (const auto& [tag, direction] : dirs) {
            auto scatter = open_csv(dir / (std::string("corr_") + tag + "_" + name + ".csv"));
            scatter << "x,y\n";
            for (const auto& [x, y] : adjacent_pairs(*img, direction)) scatter << int{x} << ',' << int{y} << '\n';
        }
    }
}

}  // namespace cdna::metrics
