// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>

namespace cubicpt {

// Neumaier-compensated running sum of doubles.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

// Unevaluated sum hi + lo carrying roughly 106 bits.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  static DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double e = (a - (s - bb)) + (b - bb);
    return {s, e};
  }
  static DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
  }

  DoubleDouble& operator+=(double x) {
    DoubleDouble s = two_sum(hi, x);
    s.lo += lo;
    *this = two_sum(s.hi, s.lo);
    return *this;
  }
  DoubleDouble& operator+=(const DoubleDouble& o) {
    DoubleDouble s = two_sum(hi, o.hi);
    s.lo += lo + o.lo;
    *this = two_sum(s.hi, s.lo);
    return *this;
  }
  double value() const { return hi + lo; }
};

// Complex accumulator over DoubleDouble parts.
class ComplexDoubleDoubleSum {
 public:
  void add(std::complex<double> z) {
    re_ += z.real();
    im_ += z.imag();
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  DoubleDouble re_, im_;
};

}  // namespace cubicpt
