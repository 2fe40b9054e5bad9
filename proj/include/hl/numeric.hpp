#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace hl {

using Complex = std::complex<double>;

/// e(p/q) = exp(2 pi i p/q). The fraction is reduced to [-1/2, 1/2] in
/// integer arithmetic first, so huge numerators cost no phase accuracy.
Complex e_rational(std::int64_t p, std::uint64_t q);

/// e(x) for a real argument; x is reduced mod 1 before the trig call.
Complex e_real(double x);

/// Neumaier-compensated complex accumulator.
class ComplexSum {
 public:
  void add(Complex z) {
    add_one(re_, re_c_, z.real());
    add_one(im_, im_c_, z.imag());
  }
  void add(const ComplexSum& other) {
    add_one(re_, re_c_, other.re_);
    add_one(re_, re_c_, other.re_c_);
    add_one(im_, im_c_, other.im_);
    add_one(im_, im_c_, other.im_c_);
  }
  Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_one(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double re_ = 0.0, re_c_ = 0.0;
  double im_ = 0.0, im_c_ = 0.0;
};

/// Real counterpart of ComplexSum.
class RealSum {
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
  double sum_ = 0.0, comp_ = 0.0;
};

/// Table of e(k/q) for k in [0, q).
class RootTable {
 public:
  explicit RootTable(std::uint64_t q);
  std::uint64_t modulus() const { return q_; }
  const Complex& operator[](std::uint64_t k) const { return table_[k]; }

 private:
  std::uint64_t q_;
  std::vector<Complex> table_;
};

}  // namespace hl
