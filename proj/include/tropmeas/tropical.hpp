#pragma once

// Max-plus semiring R_max = (R u {-inf}, max, +).
//
// Bottom (the additive zero, -inf) is a tagged case rather than an IEEE
// infinity, so finite arithmetic can never leak an infinity into results.

#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace tropmeas {

class MaxPlus {
 public:
  /// Multiplicative unit 1 = 0 (the default).
  constexpr MaxPlus() = default;

  /// Finite value; throws std::invalid_argument on NaN or +-inf.
  explicit MaxPlus(double v) : finite_(true), value_(v) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("MaxPlus: finite value expected, got " +
                                  std::to_string(v));
    }
  }

  static constexpr MaxPlus bottom() { return MaxPlus(Tag{}); }
  static constexpr MaxPlus one() { return MaxPlus(); }

  /// Boundary conversion: -inf maps to bottom, other non-finite values throw.
  static MaxPlus from_ieee(double v) {
    if (v == -std::numeric_limits<double>::infinity()) return bottom();
    return MaxPlus(v);
  }
  double to_ieee() const {
    return finite_ ? value_ : -std::numeric_limits<double>::infinity();
  }

  constexpr bool is_bottom() const { return !finite_; }

  /// The finite value; throws std::logic_error on bottom.
  double value() const {
    if (!finite_) throw std::logic_error("MaxPlus: bottom has no finite value");
    return value_;
  }

  friend constexpr bool operator==(const MaxPlus& a, const MaxPlus& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

  /// Total order with bottom as the least element.
  friend constexpr bool operator<(const MaxPlus& a, const MaxPlus& b) {
    if (!b.finite_) return false;
    if (!a.finite_) return true;
    return a.value_ < b.value_;
  }

  std::string to_string() const;

 private:
  struct Tag {};
  constexpr explicit MaxPlus(Tag) : finite_(false), value_(0.0) {}

  bool finite_ = true;
  double value_ = 0.0;
};

/// a (+) b = max(a, b).
constexpr MaxPlus oplus(const MaxPlus& a, const MaxPlus& b) {
  return a < b ? b : a;
}

/// a (.) b = a + b, bottom absorbing.
inline MaxPlus odot(const MaxPlus& a, const MaxPlus& b) {
  if (a.is_bottom() || b.is_bottom()) return MaxPlus::bottom();
  return MaxPlus(a.value() + b.value());
}

/// Multiplicative inverse of a finite value; throws std::domain_error on bottom.
inline MaxPlus inverse(const MaxPlus& a) {
  if (a.is_bottom()) throw std::domain_error("MaxPlus: bottom is not invertible");
  return MaxPlus(-a.value());
}

/// Fold of (+); the empty fold is bottom.
MaxPlus big_oplus(std::span<const MaxPlus> xs);
inline MaxPlus big_oplus(std::initializer_list<MaxPlus> xs) {
  return big_oplus(std::span<const MaxPlus>(xs.begin(), xs.size()));
}

}  // namespace tropmeas
