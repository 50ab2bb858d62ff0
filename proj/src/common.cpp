#include "clr/common.hpp"

#include <charconv>
#include <limits>

namespace clr {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InputError("malformed number '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto whole = text;
  if (text.empty()) {
    throw InputError("empty number");
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(text.substr(0, slash), whole);
    auto den = parse_int(text.substr(slash + 1), whole);
    if (den == 0) {
      throw InputError("zero denominator in '" + std::string(whole) + "'");
    }
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    bool negative = !text.empty() && text.front() == '-';
    auto int_part = text.substr(negative ? 1 : 0, dot - (negative ? 1 : 0));
    auto frac_part = text.substr(dot + 1);
    if (frac_part.size() > 15 || (int_part.empty() && frac_part.empty())) {
      throw InputError("malformed number '" + std::string(whole) + "'");
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) {
      scale *= 10;
    }
    std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, whole);
    std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, whole);
    if (ip > std::numeric_limits<std::int64_t>::max() / scale) {
      throw InputError("number out of range '" + std::string(whole) + "'");
    }
    Rational r(ip * scale + fp, scale);
    return negative ? -r : r;
  }
  return Rational(parse_int(text, whole));
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) {
    return std::to_string(r.numerator());
  }
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational ceil_div(const Rational& a, const Rational& b) {
  Rational q = a / b;
  auto n = q.numerator();
  auto d = q.denominator();
  auto fl = n / d;
  if (n % d != 0 && n > 0) {
    ++fl;
  }
  return Rational(fl);
}

}  // namespace clr
