#pragma once

#include <string>

namespace mpgn {

/// A real number or one of +-infinity, kept apart from IEEE infinities so
/// that an infinite exponent is always an explicit state.
class ExtendedReal {
 public:
  enum class State { Finite, PositiveInfinity, NegativeInfinity };

  constexpr ExtendedReal() = default;
  static ExtendedReal finite(double v);
  static constexpr ExtendedReal positive_infinity() { return ExtendedReal(State::PositiveInfinity); }
  static constexpr ExtendedReal negative_infinity() { return ExtendedReal(State::NegativeInfinity); }

  State state() const { return state_; }
  bool is_finite() const { return state_ == State::Finite; }
  bool is_positive_infinity() const { return state_ == State::PositiveInfinity; }
  bool is_negative_infinity() const { return state_ == State::NegativeInfinity; }
  /// Throws OutOfDomain when infinite.
  double value() const;

  /// "inf", "-inf" or a 17-significant-digit decimal.
  std::string to_string() const;

  friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;

 private:
  constexpr explicit ExtendedReal(State s) : state_(s) {}
  State state_ = State::Finite;
  double value_ = 0.0;
};

}  // namespace mpgn
