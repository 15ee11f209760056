#include "cdna/sidecar.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "cdna/errors.hpp"

namespace cdna {

namespace {

constexpr std::string_view kFormatTag = "cdna-latent-sidecar";

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(const std::map<std::string, std::string, std::less<>>& kv, std::string_view key)
{
    const auto it = kv.find(key);
    if (it == kv.end()) throw FormatError("sidecar is missing '" + std::string(key) + "'");
    const std::string& text = it->second;
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw FormatError("sidecar value for '" + std::string(key) + "' is not a number: " + text);
    }
    return value;
}

}  // namespace

void LatentSidecar::validate() const
{
    if (version != kVersion) throw FormatError("unsupported sidecar version " + std::to_string(version));
    if (channels != 3) throw FormatError("sidecar channels must be 3");
    if (original_width == 0 || original_height == 0 || latent_width == 0 || latent_height == 0) {
        throw FormatError("sidecar dimensions must be positive");
    }
    if (!std::isfinite(quant_min) || !std::isfinite(quant_max) || !(quant_min < quant_max)) {
        throw FormatError("sidecar requires finite quant_min < quant_max");
    }
}

void LatentSidecar::check_matches(const GrayImage& latent) const
{
    if (latent.height() != latent_height || latent.width() != latent_width) {
        throw FormatError("sidecar latent size " + std::to_string(latent_height) + "x" +
                          std::to_string(latent_width) + " does not match the " +
                          std::to_string(latent.height()) + "x" + std::to_string(latent.width()) +
                          " greymap");
    }
}

std::string LatentSidecar::to_text() const
{
    char lo[32], hi[32];
    std::snprintf(lo, sizeof lo, "%.17g", quant_min);
    std::snprintf(hi, sizeof hi, "%.17g", quant_max);
    std::ostringstream out;
    out << "format=" << kFormatTag << '\n'
        << "version=" << version << '\n'
        << "original_width=" << original_width << '\n'
        << "original_height=" << original_height << '\n'
        << "channels=" << channels << '\n'
        << "latent_width=" << latent_width << '\n'
        << "latent_height=" << latent_height << '\n'
        << "quant_min=" << lo << '\n'
        << "quant_max=" << hi << '\n';
    return out.str();
}

LatentSidecar LatentSidecar::parse(std::string_view text)
{
    static const std::string_view known[] = {"format",         "version",      "original_width",
                                             "original_height", "channels",     "latent_width",
                                             "latent_height",   "quant_min",    "quant_max"};
    std::map<std::string, std::string, std::less<>> kv;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw FormatError("sidecar line without '=': " + std::string(line));
        const auto key = std::string(trim(line.substr(0, eq)));
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            throw FormatError("unknown sidecar key '" + key + "'");
        }
        if (!kv.emplace(key, std::string(trim(line.substr(eq + 1)))).second) {
            throw FormatError("duplicate sidecar key '" + key + "'");
        }
    }
    const auto fmt = kv.find("format");
    if (fmt == kv.end() || fmt->second != kFormatTag) {
        throw FormatError("sidecar format tag must be '" + std::string(kFormatTag) + "'");
    }

    LatentSidecar s;
    s.version = parse_number<int>(kv, "version");
    s.original_width = parse_number<std::size_t>(kv, "original_width");
    s.original_height = parse_number<std::size_t>(kv, "original_height");
    s.channels = parse_number<std::size_t>(kv, "channels");
    s.latent_width = parse_number<std::size_t>(kv, "latent_width");
    s.latent_height = parse_number<std::size_t>(kv, "latent_height");
    s.quant_min = parse_number<double>(kv, "quant_min");
    s.quant_max = parse_number<double>(kv, "quant_max");
    s.validate();
    return s;
}

LatentSidecar read_sidecar(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open sidecar " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return LatentSidecar::parse(buf.str());
}

void write_sidecar(const std::filesystem::path& path, const LatentSidecar& sidecar)
{
    sidecar.validate();
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open sidecar " + path.string() + " for writing");
    out << sidecar.to_text();
    if (!out) throw FormatError("failed writing sidecar " + path.string());
}

}  // namespace cdna
