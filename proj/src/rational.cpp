#include "naryder/rational.hpp"

#include <cctype>

namespace naryder {

std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  const BigInt den = denominator(r);
  if (den != 1) {
    s += '/';
    s += den.str();
  }
  return s;
}

namespace {

bool is_integer_token(std::string_view t) {
  if (t.empty()) return false;
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::size_t slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_token(num) || (slash != std::string_view::npos && !is_integer_token(den))) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  const BigInt p{std::string(num)};
  if (slash == std::string_view::npos) return Rational(p);
  const BigInt q{std::string(den)};
  if (q == 0) throw std::invalid_argument("zero denominator in rational: '" + std::string(text) + "'");
  return Rational(p) / Rational(q);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  // A reduced fraction is a square exactly when numerator and denominator are.
  const BigInt p = numerator(r);
  const BigInt q = denominator(r);
  const BigInt sp = boost::multiprecision::sqrt(p);
  const BigInt sq = boost::multiprecision::sqrt(q);
  if (sp * sp != p || sq * sq != q) return std::nullopt;
  return Rational(sp) / Rational(sq);
}

}  // namespace naryder
