#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace paradiff {

// Exact rational arithmetic on 128-bit integers, for the closed-form
// references sum_{j=N}^{N^2} 1/j^q. Throws on overflow instead of wrapping.
class Frac {
 public:
  Frac() = default;
  Frac(long long num, long long den = 1) : n_(num), d_(den) {
    if (den == 0) throw std::invalid_argument("Frac: zero denominator");
    reduce();
  }

  static Frac zero() { return Frac(0, 1); }

  Frac operator+(const Frac& o) const {
    return make(checked_add(checked_mul(n_, o.d_), checked_mul(o.n_, d_)), checked_mul(d_, o.d_));
  }
  Frac operator*(const Frac& o) const { return make(checked_mul(n_, o.n_), checked_mul(d_, o.d_)); }
  Frac operator/(const Frac& o) const {
    if (o.n_ == 0) throw std::invalid_argument("Frac: division by zero");
    return make(checked_mul(n_, o.d_), checked_mul(d_, o.n_));
  }

  bool operator==(const Frac& o) const { return n_ == o.n_ && d_ == o.d_; }
  bool operator<(const Frac& o) const { return checked_mul(n_, o.d_) < checked_mul(o.n_, d_); }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(n_) / static_cast<long double>(d_));
  }

  std::string str() const { return int128_str(n_) + "/" + int128_str(d_); }

  // sum_{j=lo}^{hi} 1/j^q for integer q >= 1
  static Frac inverse_power_sum(long long lo, long long hi, int q) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("Frac: bad summation range");
    if (q < 1) throw std::invalid_argument("Frac: q must be a positive integer");
    Frac acc = zero();
    for (long long j = lo; j <= hi; ++j) {
      __int128 jp = 1;
      for (int i = 0; i < q; ++i) jp = checked_mul(jp, static_cast<__int128>(j));
      acc = acc + make(1, jp);
    }
    return acc;
  }

 private:
  __int128 n_ = 0;
  __int128 d_ = 1;

  static Frac make(__int128 n, __int128 d) {
    Frac f;
    f.n_ = n;
    f.d_ = d;
    f.reduce();
    return f;
  }

  void reduce() {
    if (d_ < 0) {
      n_ = -n_;
      d_ = -d_;
    }
    __int128 a = n_ < 0 ? -n_ : n_;
    __int128 b = d_;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n_ /= a;
      d_ /= a;
    }
  }

  static __int128 checked_add(__int128 a, __int128 b) {
    __int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Frac: overflow");
    return r;
  }
  static __int128 checked_mul(__int128 a, __int128 b) {
    __int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Frac: overflow");
    return r;
  }

  static std::string int128_str(__int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    std::string s;
    while (v != 0) {
      int digit = static_cast<int>(neg ? -(v % 10) : (v % 10));
      s.insert(s.begin(), static_cast<char>('0' + digit));
      v /= 10;
    }
    if (neg) s.insert(s.begin(), '-');
    return s;
  }
};

}  // namespace paradiff
