#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace edgechain {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Currency units. Balances are unsigned 128-bit.
using Amount = boost::multiprecision::uint128_t;

std::string to_hex(ByteView data);
std::optional<Bytes> from_hex(std::string_view text);

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

/// Fixed-width byte string. The tag keeps digests, addresses and keys
/// from being mixed up even though they share a representation.
template <std::size_t N, class Tag>
struct FixedBytes {
  std::array<std::uint8_t, N> bytes{};

  static constexpr std::size_t size() { return N; }

  auto operator<=>(const FixedBytes&) const = default;

  bool is_zero() const {
    for (auto b : bytes) {
      if (b != 0) return false;
    }
    return true;
  }

  ByteView view() const { return {bytes.data(), N}; }
  std::string hex() const { return to_hex(view()); }

  static std::optional<FixedBytes> from_hex(std::string_view text) {
    auto raw = ::edgechain::from_hex(text);
    if (!raw || raw->size() != N) return std::nullopt;
    FixedBytes out;
    std::copy(raw->begin(), raw->end(), out.bytes.begin());
    return out;
  }

  static FixedBytes from_view(ByteView src) {
    FixedBytes out;
    std::copy_n(src.begin(), N, out.bytes.begin());
    return out;
  }
};

struct DigestTag;
struct AddressTag;
struct PublicKeyTag;

using Digest256 = FixedBytes<32, DigestTag>;
using Address = FixedBytes<20, AddressTag>;
using PublicKey = FixedBytes<32, PublicKeyTag>;

/// Big-endian, fixed-width writer used by every canonical encoding.
class Encoder {
 public:
  Encoder& u8(std::uint8_t v);
  Encoder& u32(std::uint32_t v);
  Encoder& u64(std::uint64_t v);
  Encoder& u128(const Amount& v);
  Encoder& raw(ByteView data);
  /// 4-byte big-endian length prefix followed by the bytes.
  Encoder& var(ByteView data);

  template <class Tag, std::size_t N>
  Encoder& fixed(const FixedBytes<N, Tag>& v) {
    return raw(v.view());
  }

  const Bytes& bytes() const& { return out_; }
  Bytes bytes() && { return std::move(out_); }

 private:
  Bytes out_;
};

/// Matching reader; every accessor returns nullopt on truncation.
class Decoder {
 public:
  explicit Decoder(ByteView data) : data_(data) {}

  std::optional<std::uint8_t> u8();
  std::optional<std::uint32_t> u32();
  std::optional<std::uint64_t> u64();
  std::optional<Amount> u128();
  std::optional<Bytes> var();

  template <class T>
  std::optional<T> fixed() {
    if (remaining() < T::size()) return std::nullopt;
    auto v = T::from_view(data_.subspan(pos_, T::size()));
    pos_ += T::size();
    return v;
  }

  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return remaining() == 0; }

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

std::string amount_to_string(const Amount& v);
std::optional<Amount> amount_from_string(std::string_view text);

}  // namespace edgechain
