#include "l1opt/numeric.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace l1opt {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDimension: return "invalid-dimension";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kOutOfBall: return "out-of-ball";
    case ErrorCode::kInvalidWeights: return "invalid-weights";
    case ErrorCode::kShapeMismatch: return "shape-mismatch";
    case ErrorCode::kUnboundedRegion: return "unbounded-region";
    case ErrorCode::kInfeasibleRegion: return "infeasible-region";
    case ErrorCode::kLpInfeasible: return "lp-infeasible";
    case ErrorCode::kLpUnbounded: return "lp-unbounded";
    case ErrorCode::kGridTooLarge: return "grid-too-large";
    case ErrorCode::kOracleFailure: return "oracle-failure";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kParse: return "parse-error";
  }
  return "unknown";
}

std::int64_t floor_to_int64(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  if (q > std::numeric_limits<std::int64_t>::max() ||
      q < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::kOutOfRange, "floor does not fit in 64 bits");
  }
  return q.convert_to<std::int64_t>();
}

std::int64_t floor_to_int64(double r) {
  if (!std::isfinite(r) || std::floor(r) > 9.2e18 || std::floor(r) < -9.2e18) {
    throw Error(ErrorCode::kOutOfRange, "floor does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(std::floor(r));
}

std::int64_t radius_floor(const Rational& lambda) {
  if (lambda < 0) throw Error(ErrorCode::kInvalidArgument, "lambda must be >= 0");
  return floor_to_int64(lambda);
}

std::int64_t radius_floor(double lambda) {
  if (!(lambda >= 0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be finite and >= 0");
  }
  return floor_to_int64(lambda);
}

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& r) {
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// cpp_int reads a leading 0 as an octal prefix, so strip it first.
BigInt decimal(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return BigInt{std::string(digits.substr(first))};
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::kParse, "not an exact number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad_number(text);

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    BigInt d = decimal(den);
    if (d == 0) throw Error(ErrorCode::kParse, "zero denominator in '" + std::string(text) + "'");
    value = Rational(decimal(num), d);
  } else {
    std::int64_t exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) bad_number(text);
      exponent = std::stoll(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    std::string_view int_part = s;
    std::string_view frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      int_part = s.substr(0, dot);
      frac_part = s.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) bad_number(text);
    if (!int_part.empty() && !all_digits(int_part)) bad_number(text);
    if (!frac_part.empty() && !all_digits(frac_part)) bad_number(text);
    digits.append(int_part);
    digits.append(frac_part);
    exponent -= static_cast<std::int64_t>(frac_part.size());
    const BigInt mantissa = decimal(digits);
    if (exponent >= 0) {
      value = Rational(mantissa * pow_big(10, static_cast<std::uint64_t>(exponent)));
    } else {
      value = Rational(mantissa, pow_big(10, static_cast<std::uint64_t>(-exponent)));
    }
  }
  return negative ? Rational(-value) : value;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

double big_log10(const BigInt& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 1000) return std::log10(v.convert_to<double>());
  // Keep the top 64 bits; the dropped tail changes the value by < 2^-63.
  const std::size_t shift = bits - 64;
  const double top = static_cast<BigInt>(v >> shift).convert_to<double>();
  return std::log10(top) + static_cast<double>(shift) * std::log10(2.0);
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

BigInt pow_big(std::int64_t base, std::uint64_t exponent) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

}  // namespace l1opt
