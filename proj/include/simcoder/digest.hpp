#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace simcoder {

// FNV-1a, 64-bit. Stable across platforms so digests recorded in attempt
// logs stay comparable between runs.
inline uint64_t fnv1a(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string digest_hex(std::string_view data) {
  static const char* hex = "0123456789abcdef";
  uint64_t h = fnv1a(data);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = hex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace simcoder
