#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace cdna {

using Digest = std::array<std::uint8_t, 32>;

/// SHA-256 over the concatenation of `parts`.
Digest sha256(std::initializer_list<std::span<const std::uint8_t>> parts);

inline Digest sha256(std::span<const std::uint8_t> data) { return sha256({data}); }

}  // namespace cdna
