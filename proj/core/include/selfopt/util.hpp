#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace selfopt {

using Vec = std::vector<double>;

inline bool all_finite(const Vec& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

// FNV-1a, used for config digests and checkpoint checksums.
inline uint64_t fnv1a64(const void* data, size_t n, uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

std::string to_hex(uint64_t v);

// Base64 of raw bytes; used for bit-exact little-endian float64 arrays in checkpoints.
std::string base64_encode(const void* data, size_t n);
bool base64_decode(const std::string& text, std::vector<unsigned char>& out);

// Vec <-> base64 of little-endian 64-bit reals.
std::string encode_f64_vec(const Vec& v);
bool decode_f64_vec(const std::string& text, Vec& out);

// Doubles formatted round-trip exactly (max_digits10); used by config and CSV writers.
std::string format_double(double v);

}  // namespace selfopt
