#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74 defines rational == integer through templates that call each
// other forever once C++20 adds reversed candidates. Exact non-template
// overloads win overload resolution and end the recursion.
namespace boost {

#define CLR_RATIONAL_EQ(Int)                                              \
  inline bool operator==(const rational<std::int64_t>& a, Int b) {        \
    return a.denominator() == 1 &&                                        \
           a.numerator() == static_cast<std::int64_t>(b);                 \
  }                                                                       \
  inline bool operator==(Int b, const rational<std::int64_t>& a) {        \
    return a == b;                                                        \
  }

CLR_RATIONAL_EQ(int)
CLR_RATIONAL_EQ(long)
CLR_RATIONAL_EQ(long long)
#undef CLR_RATIONAL_EQ

}  // namespace boost

namespace clr {

// Demands, capacities and flows are exact. Distances and costs are doubles.
using Rational = boost::rational<std::int64_t>;

// Tolerance for comparing float costs. Never used on demand/capacity values.
inline constexpr double cost_tolerance = 1e-9;

struct FacilityId {
  std::uint32_t value = 0;
  auto operator<=>(const FacilityId&) const = default;
};

struct ClientId {
  std::uint32_t value = 0;
  auto operator<=>(const ClientId&) const = default;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The problem (or a subproblem) admits no feasible solution.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size cap or similar precondition refused the request.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated an algorithmic precondition (e.g. non-vertex input).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

// Accepts "7", "-3", "3/4" and plain decimals like "0.125".
Rational parse_rational(std::string_view text);

// "7" or "3/4".
std::string format_rational(const Rational& r);

Rational ceil_div(const Rational& a, const Rational& b);

}  // namespace clr
