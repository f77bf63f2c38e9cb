#pragma once

#include <string>
#include <string_view>

#include "fivesq/numeric.hpp"

namespace fivesq {

// Open rational interval (a, b) with 0 < a < b < 1. Selects the special
// primes p with {eta * p^k} inside it.
class Window {
 public:
  static Window make(Rational a, Rational b);
  // "a_num/a_den,b_num/b_den"
  static Window parse(std::string_view text);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  Rational length() const { return b_ - a_; }
  double a_double() const { return a_.get_d(); }
  double b_double() const { return b_.get_d(); }
  double length_double() const { return Rational(b_ - a_).get_d(); }

  bool contains(const Rational& x) const { return a_ < x && x < b_; }
  bool contains(const Window& inner) const { return a_ <= inner.a_ && inner.b_ <= b_; }

  std::string to_string() const;

 private:
  Window(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
  Rational a_;
  Rational b_;
};

}  // namespace fivesq
