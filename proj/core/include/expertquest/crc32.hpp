#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace expertquest::textpipe {

/// CRC-32 as used by zlib, PNG and Ethernet: reflected polynomial
/// 0xEDB88320, initial value and final xor 0xFFFFFFFF.
std::uint32_t crc32(std::span<const unsigned char> bytes) noexcept;

inline std::uint32_t crc32(std::string_view text) noexcept {
  return crc32(std::span<const unsigned char>(
      reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

}  // namespace expertquest::textpipe
