#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace symreeb {

/// Exact element of (1/2)Z, stored as twice its value. Every index in the
/// library is one of these; floating point never carries an index.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(std::int64_t integer) : twice_(2 * integer) {}

  static constexpr HalfInt from_twice(std::int64_t twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  static constexpr HalfInt half() { return from_twice(1); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr std::int64_t num() const { return is_integer() ? twice_ / 2 : twice_; }
  constexpr std::int64_t den() const { return is_integer() ? 1 : 2; }
  constexpr double value() const { return 0.5 * static_cast<double>(twice_); }

  // floor for integers and half-integers alike
  constexpr std::int64_t floor() const {
    return twice_ >= 0 ? twice_ / 2 : -((-twice_ + 1) / 2);
  }

  std::string str() const {
    return den() == 1 ? std::to_string(num()) : std::to_string(num()) + "/2";
  }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }
  friend constexpr HalfInt operator*(std::int64_t k, HalfInt a) { return from_twice(k * a.twice_); }
  friend constexpr HalfInt operator*(HalfInt a, std::int64_t k) { return from_twice(k * a.twice_); }

  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  friend std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

 private:
  std::int64_t twice_ = 0;
};

}  // namespace symreeb
