#include "edgechain/ledger/bytes.hpp"

namespace edgechain {

namespace {

int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(ByteView data) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0x0f]);
  }
  return out;
}

std::optional<Bytes> from_hex(std::string_view text) {
  if (text.size() % 2 != 0) return std::nullopt;
  Bytes out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2) {
    int hi = nibble(text[i]);
    int lo = nibble(text[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

Encoder& Encoder::u8(std::uint8_t v) {
  out_.push_back(v);
  return *this;
}

Encoder& Encoder::u32(std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
  return *this;
}

Encoder& Encoder::u64(std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
  return *this;
}

Encoder& Encoder::u128(const Amount& v) {
  u64(static_cast<std::uint64_t>(v >> 64));
  u64(static_cast<std::uint64_t>(v & Amount(~std::uint64_t{0})));
  return *this;
}

Encoder& Encoder::raw(ByteView data) {
  out_.insert(out_.end(), data.begin(), data.end());
  return *this;
}

Encoder& Encoder::var(ByteView data) {
  u32(static_cast<std::uint32_t>(data.size()));
  return raw(data);
}

std::optional<std::uint8_t> Decoder::u8() {
  if (remaining() < 1) return std::nullopt;
  return data_[pos_++];
}

std::optional<std::uint32_t> Decoder::u32() {
  if (remaining() < 4) return std::nullopt;
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_++];
  return v;
}

std::optional<std::uint64_t> Decoder::u64() {
  if (remaining() < 8) return std::nullopt;
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | data_[pos_++];
  return v;
}

std::optional<Amount> Decoder::u128() {
  auto hi = u64();
  auto lo = u64();
  if (!hi || !lo) return std::nullopt;
  return (Amount(*hi) << 64) | Amount(*lo);
}

std::optional<Bytes> Decoder::var() {
  auto len = u32();
  if (!len || remaining() < *len) return std::nullopt;
  Bytes out(data_.begin() + pos_, data_.begin() + pos_ + *len);
  pos_ += *len;
  return out;
}

std::string amount_to_string(const Amount& v) { return v.str(); }

std::optional<Amount> amount_from_string(std::string_view text) {
  if (text.empty() || text.size() > 39) return std::nullopt;
  Amount v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    Amount next = v * 10 + (c - '0');
    if (next / 10 != v) return std::nullopt;
    v = next;
  }
  return v;
}

}  // namespace edgechain
