#pragma once

#include <compare>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qu21 {

/// Integer or half-odd-integer, stored as twice its value.
class HalfInt {
public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int value) : twice_(2 * value) {}

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  /// Value as an integer; the caller must know it is integral.
  constexpr int to_int() const { return twice_ / 2; }

  constexpr double to_double() const { return twice_ / 2.0; }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
  constexpr HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }

  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  /// Parses "3", "-1/2", "1.5" or "-0.5".
  static HalfInt parse(const std::string& text) {
    auto fail = [&] { throw std::invalid_argument("not a half-integer: '" + text + "'"); };
    if (text.empty()) fail();
    std::size_t pos = 0;
    if (auto slash = text.find('/'); slash != std::string::npos) {
      int num = std::stoi(text.substr(0, slash), &pos);
      if (pos != slash) fail();
      if (text.substr(slash + 1) != "2") fail();
      return from_twice(num);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
      std::string frac = text.substr(dot + 1);
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      if (!frac.empty() && frac != "5") fail();
      std::string whole = text.substr(0, dot);
      bool negative = !whole.empty() && whole[0] == '-';
      int w = (whole.empty() || whole == "-" || whole == "+") ? 0 : std::stoi(whole, &pos);
      if (!(whole.empty() || whole == "-" || whole == "+") && pos != whole.size()) fail();
      int twice = 2 * std::abs(w) + (frac.empty() ? 0 : 1);
      return from_twice(negative ? -twice : twice);
    }
    int v = std::stoi(text, &pos);
    if (pos != text.size()) fail();
    return HalfInt(v);
  }

private:
  int twice_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

/// (-1)^n for integral n.
constexpr int parity_sign(int n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace qu21
