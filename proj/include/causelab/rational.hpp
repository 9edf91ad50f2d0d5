#ifndef CAUSELAB_RATIONAL_HPP
#define CAUSELAB_RATIONAL_HPP

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace causelab {

/// Exact scores and probabilities. Nothing in a verdict is ever a float.
using Rational = boost::rational<std::int64_t>;

/// Always `p/q`, also for integers ("1/1", "0/1").
inline std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Accepts `p/q` or a bare integer `p`; rejects anything with a decimal point.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<std::int64_t> {
    if (s.empty()) return std::nullopt;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto p = parse_int(text);
    if (!p) return std::nullopt;
    return Rational(*p);
  }
  auto p = parse_int(text.substr(0, slash));
  auto q = parse_int(text.substr(slash + 1));
  if (!p || !q || *q == 0) return std::nullopt;
  return Rational(*p, *q);
}

}  // namespace causelab

#endif  // CAUSELAB_RATIONAL_HPP
