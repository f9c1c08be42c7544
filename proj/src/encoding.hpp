#pragma once

// Byte-level canonical encodings shared by the group models. Every encoder
// here is injective, so equal bytes mean equal values.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "gdist/errors.hpp"

namespace gdist::detail {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i64(std::int64_t v) {
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(u >> (8 * i)));
  }
  void bytes(std::string_view b) {
    u32(static_cast<std::uint32_t>(b.size()));
    out_.append(b);
  }
  void mpz(const mpz_class& v) {
    int sign = mpz_sgn(v.get_mpz_t());
    u8(static_cast<std::uint8_t>(sign == 0 ? 0 : (sign > 0 ? 1 : 2)));
    if (sign == 0) return;
    std::size_t count = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    std::string buf(count, '\0');
    std::size_t written = 0;
    mpz_export(buf.data(), &written, 1, 1, 1, 0, v.get_mpz_t());
    buf.resize(written);
    bytes(buf);
  }
  void raw(std::string_view b) { out_.append(b); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view in) : in_(in) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::int64_t i64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return static_cast<std::int64_t>(v);
  }
  std::string_view bytes() {
    std::uint32_t n = u32();
    need(n);
    auto out = in_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  mpz_class mpz() {
    std::uint8_t sign = u8();
    mpz_class v;
    if (sign == 0) return v;
    auto b = bytes();
    mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
    if (sign == 2) v = -v;
    return v;
  }
  std::string_view raw(std::size_t n) {
    need(n);
    auto out = in_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > in_.size()) throw InvalidArgument("truncated element encoding");
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("64-bit exponent overflow");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) {
  std::int64_t r;
  if (__builtin_sub_overflow(std::int64_t{0}, a, &r)) throw ArithmeticOverflow("64-bit exponent overflow");
  return r;
}

std::string to_hex(std::string_view bytes);

}  // namespace gdist::detail
