#include "rdpairs/keys.hpp"

#include "rdpairs/error.hpp"

namespace rdp::encoding {

std::string packInts(std::span<const std::int64_t> values) {
  std::string out;
  out.reserve(values.size() * 8);
  for (std::int64_t v : values) {
    auto u = static_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      out.push_back(static_cast<char>((u >> (8 * b)) & 0xffu));
    }
  }
  return out;
}

std::vector<std::int64_t> unpackInts(std::string_view bytes, std::size_t count) {
  if (bytes.size() != count * 8) {
    throw Error(ErrorCode::MalformedKey, "expected " + std::to_string(count * 8) +
                                             " bytes, got " + std::to_string(bytes.size()));
  }
  std::vector<std::int64_t> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t u = 0;
    for (int b = 0; b < 8; ++b) {
      u |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i * 8 + b])) << (8 * b);
    }
    out[i] = static_cast<std::int64_t>(u);
  }
  return out;
}

std::string joinPair(std::string_view first, std::string_view second) {
  const auto n = static_cast<std::uint32_t>(first.size());
  std::string out;
  out.reserve(4 + first.size() + second.size());
  for (int b = 0; b < 4; ++b) {
    out.push_back(static_cast<char>((n >> (8 * b)) & 0xffu));
  }
  out.append(first);
  out.append(second);
  return out;
}

std::pair<std::string, std::string> splitPair(std::string_view bytes) {
  if (bytes.size() < 4) {
    throw Error(ErrorCode::MalformedKey, "product key shorter than its length prefix");
  }
  std::uint32_t n = 0;
  for (int b = 0; b < 4; ++b) {
    n |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[b])) << (8 * b);
  }
  if (bytes.size() < 4 + static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::MalformedKey, "product key length prefix exceeds key");
  }
  return {std::string(bytes.substr(4, n)), std::string(bytes.substr(4 + n))};
}

std::string hex(std::string_view bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (char c : bytes) {
    auto u = static_cast<unsigned char>(c);
    out.push_back(digits[u >> 4]);
    out.push_back(digits[u & 0xf]);
  }
  return out;
}

}  // namespace rdp::encoding
