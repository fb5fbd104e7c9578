#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace atomlab {

using BigInt = boost::multiprecision::cpp_int;

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

inline double log_binomial(double n, double k) {
  if (k < 0 || k > n) return -INFINITY;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

inline BigInt factorial(std::uint64_t n) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt falling_factorial(std::uint64_t n, std::uint64_t k) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r *= (n - i);
  return r;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

inline double log_big(const BigInt& x) {
  if (x <= 0) return -INFINITY;
  // Shift down to keep the mantissa inside double range.
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 1000) return std::log(x.convert_to<double>());
  const auto shift = bits - 960;
  BigInt y = x >> shift;
  return std::log(y.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

/// h(p) = -p ln p - (1-p) ln(1-p), with h(0) = h(1) = 0.
inline double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

/// FNV-1a, 64 bit. Stable across platforms; used for spec hashes.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Mean over all entries of f(x).
template <class T, class F>
double mean_of(std::span<const T> xs, F&& f) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (const auto& x : xs) s += f(static_cast<double>(x));
  return s / static_cast<double>(xs.size());
}

}  // namespace atomlab
