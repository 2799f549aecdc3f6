#pragma once

// FMAP interchange format, version 1. All integers little-endian.
//
//   offset  size  field
//   0       4     magic "FMAP" (46 4D 41 50)
//   4       1     version = 1
//   5       1     dtype   = 1 (f32 LE)
//   6       2     reserved = 0
//   8       4     height (u32)
//   12      4     width (u32)
//   16      4     channels (u32)
//   20      ...   height*width*channels f32, row-major channel-last
//
// Readers reject bad magic, unknown version/dtype, short payloads and
// non-finite values, each with its own FormatError::Kind.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "specprobe/feature_map.hpp"

namespace specprobe {

inline constexpr std::uint8_t kFmapVersion = 1;
inline constexpr std::uint8_t kFmapDtypeF32 = 1;
inline constexpr std::size_t kFmapHeaderSize = 20;

std::vector<std::uint8_t> encode_fmap(const FeatureMap& map);
FeatureMap decode_fmap(std::span<const std::uint8_t> bytes);

void write_fmap(const FeatureMap& map, const std::filesystem::path& path);
FeatureMap read_fmap(const std::filesystem::path& path);

}  // namespace specprobe
