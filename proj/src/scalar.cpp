#include "rdpairs/scalar.hpp"

#include <charconv>
#include <system_error>

#include "rdpairs/error.hpp"

namespace rdp {

Rational ScalarTraits<Rational>::parse(std::string_view text) {
  Rational q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0) {
    throw Error(ErrorCode::InvalidArgument, "not a rational literal: '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) {
    throw Error(ErrorCode::InvalidArgument, "zero denominator: '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

std::string formatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    throw Error(ErrorCode::InvalidArgument, "cannot format double");
  }
  return std::string(buf, end);
}

std::string ScalarTraits<double>::toString(double v) { return formatDouble(v); }

double ScalarTraits<double>::parse(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "not a float literal: '" + std::string(text) + "'");
  }
  return v;
}

Rational powRational(const Rational& base, unsigned exponent) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace rdp
