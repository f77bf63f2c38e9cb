#include "fivesq/numeric.hpp"

#include <cmath>
#include <limits>

#include "fivesq/error.hpp"
#include "fivesq/window.hpp"

namespace fivesq {

Integer isqrt(const Integer& v) {
  if (sgn(v) < 0) throw InvalidArgument("isqrt of a negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  if (sgn(b) == 0) throw InvalidArgument("division by zero");
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer floor(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw InvalidArgument("empty rational");
  const auto slash = text.find('/');
  Integer num;
  Integer den = 1;
  const std::string num_text(trim(text.substr(0, slash)));
  if (num.set_str(num_text, 10) != 0) {
    throw InvalidArgument("malformed rational '" + std::string(text) + "'");
  }
  if (slash != std::string_view::npos) {
    const std::string den_text(trim(text.substr(slash + 1)));
    if (den.set_str(den_text, 10) != 0) {
      throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    }
    if (sgn(den) == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double upper_double(const Rational& q) {
  double d = q.get_d();
  if (Rational(d) < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

Window Window::make(Rational a, Rational b) {
  a.canonicalize();
  b.canonicalize();
  if (!(sgn(a) > 0 && a < b && b < 1)) {
    throw InvalidArgument("window must satisfy 0 < a < b < 1, got (" + format_rational(a) + ", " +
                          format_rational(b) + ")");
  }
  return Window(std::move(a), std::move(b));
}

Window Window::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw InvalidArgument("window must look like a_num/a_den,b_num/b_den");
  }
  return make(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

std::string Window::to_string() const { return format_rational(a_) + "," + format_rational(b_); }

}  // namespace fivesq
