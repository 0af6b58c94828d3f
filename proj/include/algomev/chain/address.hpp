#pragma once

#include "algomev/util/digest.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace algomev::address {

using PublicKey = std::array<std::uint8_t, 32>;

inline constexpr std::size_t kEncodedLength = 58;

namespace detail {

inline constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ234567";

inline std::string base32_nopad(std::span<const std::uint8_t> data) {
  std::string out;
  std::uint32_t buffer = 0;
  int bits = 0;
  for (auto b : data) {
    buffer = (buffer << 8) | b;
    bits += 8;
    while (bits >= 5) {
      out.push_back(kAlphabet[(buffer >> (bits - 5)) & 0x1f]);
      bits -= 5;
    }
  }
  if (bits > 0) out.push_back(kAlphabet[(buffer << (5 - bits)) & 0x1f]);
  return out;
}

inline std::optional<std::vector<std::uint8_t>> base32_decode(std::string_view s) {
  std::vector<std::uint8_t> out;
  std::uint32_t buffer = 0;
  int bits = 0;
  for (char c : s) {
    int v;
    if (c >= 'A' && c <= 'Z')
      v = c - 'A';
    else if (c >= '2' && c <= '7')
      v = 26 + (c - '2');
    else
      return std::nullopt;
    buffer = (buffer << 5) | static_cast<std::uint32_t>(v);
    bits += 5;
    if (bits >= 8) {
      out.push_back(static_cast<std::uint8_t>((buffer >> (bits - 8)) & 0xff));
      bits -= 8;
    }
  }
  return out;
}

}  // namespace detail

// 58-character Algorand address: base32(pubkey || last 4 bytes of SHA-512/256(pubkey)).
inline std::string encode(const PublicKey& key) {
  const auto h = digest::sha512_256(key);
  std::array<std::uint8_t, 36> buf{};
  std::copy(key.begin(), key.end(), buf.begin());
  std::copy(h.end() - 4, h.end(), buf.begin() + 32);
  return detail::base32_nopad(buf);
}

inline std::optional<PublicKey> decode(std::string_view addr) {
  if (addr.size() != kEncodedLength) return std::nullopt;
  auto raw = detail::base32_decode(addr);
  if (!raw || raw->size() != 36) return std::nullopt;
  PublicKey key{};
  std::copy(raw->begin(), raw->begin() + 32, key.begin());
  if (encode(key) != addr) return std::nullopt;
  return key;
}

inline bool is_valid(std::string_view addr) { return decode(addr).has_value(); }

// Escrow account of an application: SHA-512/256("appID" || big-endian app id).
inline std::string application_address(std::uint64_t app_id) {
  std::array<std::uint8_t, 13> msg{'a', 'p', 'p', 'I', 'D'};
  for (int i = 0; i < 8; ++i) msg[5 + i] = static_cast<std::uint8_t>(app_id >> (56 - 8 * i));
  return encode(digest::sha512_256(msg));
}

}  // namespace algomev::address
