#ifndef ORBGROWTH_BASE_HPP_
#define ORBGROWTH_BASE_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orbgrowth {

using Point = std::uint32_t;
using Count = std::uint64_t;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument or violated precondition.
class ValueError : public Error {
 public:
  using Error::Error;
};

/// Syntax or constraint error in parsed input; carries a byte offset.
class ParseError : public Error {
 public:
  ParseError(std::string const& msg, std::size_t offset)
      : Error(msg + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Multiply with saturation at UINT64_MAX. Growth bounds such as
/// s1 * (s1 - 1)^(r-1) can exceed 64 bits for large radii; a saturated
/// right-hand side keeps every "lhs <= rhs" comparison valid.
inline Count sat_mul(Count a, Count b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

/// sat_mul folded over an exponent.
inline Count sat_pow(Count base, Count exp) {
  Count result = 1;
  for (Count i = 0; i < exp; ++i) result = sat_mul(result, base);
  return result;
}

// -------------------------------------------------------------------------
// Varint codec (LEB128, unsigned). Vertex keys and suborbit invariants are
// byte strings built from these.
// -------------------------------------------------------------------------

inline void varint_append(std::string& out, std::uint64_t value) {
  while (value >= 0x80) {
    out.push_back(static_cast<char>((value & 0x7f) | 0x80));
    value >>= 7;
  }
  out.push_back(static_cast<char>(value));
}

/// Decodes one varint starting at `pos`, advancing `pos` past it.
inline std::uint64_t varint_read(std::string_view bytes, std::size_t& pos) {
  std::uint64_t value = 0;
  int shift = 0;
  for (;;) {
    if (pos >= bytes.size())
      throw ValueError("truncated varint in vertex key");
    auto byte = static_cast<unsigned char>(bytes[pos++]);
    value |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
    if ((byte & 0x80) == 0) break;
    shift += 7;
    if (shift > 63) throw ValueError("varint overflow in vertex key");
  }
  return value;
}

inline std::string to_hex(std::string_view bytes) {
  static char const* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

}  // namespace orbgrowth

#endif  // ORBGROWTH_BASE_HPP_
