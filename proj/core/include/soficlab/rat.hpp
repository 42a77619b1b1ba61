#ifndef SOFICLAB_RAT_HPP
#define SOFICLAB_RAT_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace soficlab {

/// Exact rational with 64-bit numerator/denominator, always normalized
/// (gcd 1, denominator > 0). Intermediates go through 128-bit arithmetic;
/// results that do not fit back into 64 bits throw std::overflow_error.
/// This covers every quantity the library manipulates: all measures are
/// dyadic-or-small fractions of finite carriers.
class Rat {
public:
  constexpr Rat() : num_(0), den_(1) {}
  constexpr Rat(long long n) : num_(n), den_(1) {}
  Rat(long long n, long long d) { assign(n, d); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  Rat operator-() const { Rat r; r.num_ = -num_; r.den_ = den_; return r; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
  Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
  Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  Rat abs() const { return num_ < 0 ? -*this : *this; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// Canonical text form, always "num/den" (e.g. "0/1", "-3/2").
  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "p/q" or a bare integer "p".
  static Rat parse(const std::string& text) {
    size_t slash = text.find('/');
    try {
      if (slash == std::string::npos) {
        size_t pos = 0;
        long long n = std::stoll(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return Rat(n);
      }
      size_t p1 = 0, p2 = 0;
      long long n = std::stoll(text.substr(0, slash), &p1);
      long long d = std::stoll(text.substr(slash + 1), &p2);
      if (p1 != slash || p2 != text.size() - slash - 1) throw std::invalid_argument(text);
      return Rat(n, d);
    } catch (const std::domain_error&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rational \"" + text + "\"");
    }
  }

private:
  using i128 = __int128;

  void assign(long long n, long long d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    num_ = n;
    den_ = d;
  }

  static Rat from128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 a = n < 0 ? -n : n;
    i128 g = gcd128(a, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr i128 lim = i128(INT64_MAX);
    if (n > lim || n < -lim || d > lim) {
      throw std::overflow_error("Rat: value exceeds 64-bit range");
    }
    Rat r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a;
  }

  long long num_;
  long long den_;
};

} // namespace soficlab

#endif
