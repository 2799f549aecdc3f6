#include "specprobe/fmap_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "specprobe/error.hpp"

namespace specprobe {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{0x46, 0x4D, 0x41, 0x50};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFFU));
    }
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t offset) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<std::uint32_t>(bytes[offset + i]) << (8 * i);
    }
    return v;
}

std::uint32_t checked_u32(std::size_t v, const char* what) {
    if (v > std::numeric_limits<std::uint32_t>::max()) {
        throw ValidationError(std::string(what) + " does not fit in u32");
    }
    return static_cast<std::uint32_t>(v);
}

}  // namespace

std::vector<std::uint8_t> encode_fmap(const FeatureMap& map) {
    if (map.empty()) {
        throw ValidationError("cannot encode an empty feature map");
    }
    if (!map.all_finite()) {
        throw ValidationError("feature map contains non-finite values");
    }
    std::vector<std::uint8_t> out;
    out.reserve(kFmapHeaderSize + map.size() * 4);
    for (auto b : kMagic) out.push_back(static_cast<std::uint8_t>(b));
    out.push_back(kFmapVersion);
    out.push_back(kFmapDtypeF32);
    out.push_back(0);
    out.push_back(0);
    put_u32(out, checked_u32(map.height(), "height"));
    put_u32(out, checked_u32(map.width(), "width"));
    put_u32(out, checked_u32(map.channels(), "channels"));
    for (float v : map.values()) {
        put_u32(out, std::bit_cast<std::uint32_t>(v));
    }
    return out;
}

FeatureMap decode_fmap(std::span<const std::uint8_t> bytes) {
    using Kind = FormatError::Kind;
    if (bytes.size() < kMagic.size() || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
        throw FormatError(Kind::BadMagic, "not an FMAP file (bad magic)");
    }
    if (bytes.size() < kFmapHeaderSize) {
        throw FormatError(Kind::Truncated, "FMAP header truncated: " + std::to_string(bytes.size()) + " bytes");
    }
    if (bytes[4] != kFmapVersion) {
        throw FormatError(Kind::UnsupportedVersion, "unsupported FMAP version " + std::to_string(bytes[4]));
    }
    if (bytes[5] != kFmapDtypeF32) {
        throw FormatError(Kind::UnsupportedVersion, "unsupported FMAP dtype " + std::to_string(bytes[5]));
    }
    const std::size_t h = get_u32(bytes, 8);
    const std::size_t w = get_u32(bytes, 12);
    const std::size_t c = get_u32(bytes, 16);
    if (h == 0 || w == 0 || c == 0) {
        throw ValidationError("FMAP dimensions must be >= 1");
    }
    if (h > (std::numeric_limits<std::size_t>::max() - kFmapHeaderSize) / 4 / w / c) {
        throw FormatError(Kind::Truncated, "FMAP dimensions exceed any possible payload");
    }
    const std::size_t count = h * w * c;
    const std::size_t expected = kFmapHeaderSize + count * 4;
    if (bytes.size() < expected) {
        throw FormatError(Kind::Truncated, "FMAP payload truncated: expected " + std::to_string(expected) +
                                               " bytes, got " + std::to_string(bytes.size()));
    }
    if (bytes.size() > expected) {
        throw FormatError(Kind::TrailingBytes, "FMAP has " + std::to_string(bytes.size() - expected) +
                                                   " trailing bytes");
    }
    std::vector<float> data(count);
    for (std::size_t i = 0; i < count; ++i) {
        const float v = std::bit_cast<float>(get_u32(bytes, kFmapHeaderSize + 4 * i));
        if (!std::isfinite(v)) {
            throw FormatError(Kind::NonFiniteValue, "non-finite value at element " + std::to_string(i));
        }
        data[i] = v;
    }
    return FeatureMap(h, w, c, std::move(data));
}

void write_fmap(const FeatureMap& map, const std::filesystem::path& path) {
    const auto bytes = encode_fmap(map);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

FeatureMap read_fmap(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open for reading: " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_fmap(bytes);
}

}  // namespace specprobe
