#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rdp {

/// Canonical byte sequence; equal bytes iff equal objects within one model.
template <class Tag>
class ByteKey {
 public:
  ByteKey() = default;
  explicit ByteKey(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const noexcept { return bytes_; }
  std::size_t size() const noexcept { return bytes_.size(); }

  friend bool operator==(const ByteKey&, const ByteKey&) = default;
  friend std::strong_ordering operator<=>(const ByteKey& a, const ByteKey& b) {
    return a.bytes_.compare(b.bytes_) <=> 0;
  }

 private:
  std::string bytes_;
};

struct ElementTag {};
struct CosetTag {};

using ElementKey = ByteKey<ElementTag>;
using CosetKey = ByteKey<CosetTag>;

struct KeyHash {
  template <class Tag>
  std::size_t operator()(const ByteKey<Tag>& k) const noexcept {
    return std::hash<std::string>{}(k.bytes());
  }
};

namespace encoding {

/// Little-endian int64 tuple, the encoding used by lattice-type models.
std::string packInts(std::span<const std::int64_t> values);
std::vector<std::int64_t> unpackInts(std::string_view bytes, std::size_t count);

/// Length-prefixed concatenation used by product models and product coset keys.
std::string joinPair(std::string_view first, std::string_view second);
std::pair<std::string, std::string> splitPair(std::string_view bytes);

std::string hex(std::string_view bytes);

}  // namespace encoding

}  // namespace rdp
