#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace l1opt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorCode {
  kInvalidDimension,
  kOutOfRange,
  kOutOfBall,
  kInvalidWeights,
  kShapeMismatch,
  kUnboundedRegion,
  kInfeasibleRegion,
  kLpInfeasible,
  kLpUnbounded,
  kGridTooLarge,
  kOracleFailure,
  kInvalidArgument,
  kParse,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for the library; `code()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class Arithmetic { kRational, kFloat };

// Per-scalar policy used by every templated solver. Only Rational and double
// are instantiated.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Arithmetic arithmetic = Arithmetic::kRational;
  static constexpr bool exact = true;
  static Rational default_tolerance() { return Rational(0); }
  static Rational from_int(std::int64_t v) { return Rational(v); }
};

template <>
struct ScalarTraits<double> {
  static constexpr Arithmetic arithmetic = Arithmetic::kFloat;
  static constexpr bool exact = false;
  static double default_tolerance() { return 1e-9; }
  static double from_int(std::int64_t v) { return static_cast<double>(v); }
};

// Exact floor of a rational; saturates nothing, throws if the result does not
// fit in int64.
std::int64_t floor_to_int64(const Rational& r);
std::int64_t floor_to_int64(double r);

// Largest integer radius L with L <= lambda; rejects negative or non-finite
// input.
std::int64_t radius_floor(const Rational& lambda);
std::int64_t radius_floor(double lambda);

// "p/q", or "p" when q == 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& v);

// Parses "7", "-3/4", "1.25", "-2.5e-3" exactly. Throws Error(kParse).
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);
inline double to_double(double r) { return r; }

// log10 of a positive big integer, accurate to ~1e-15 relative.
double big_log10(const BigInt& v);

BigInt binomial(std::int64_t n, std::int64_t k);
BigInt pow_big(std::int64_t base, std::uint64_t exponent);

}  // namespace l1opt
