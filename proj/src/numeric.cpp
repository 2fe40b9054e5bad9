#include "hl/numeric.hpp"

#include <cmath>
#include <numbers>

#include "hl/arith.hpp"

namespace hl {

Complex e_rational(std::int64_t p, std::uint64_t q) {
  if (q == 0) throw DomainError("e_rational: zero denominator");
  std::uint64_t r = mod_floor(p, q);
  // Signed representative in (-q/2, q/2].
  long double num = (2 * r > q) ? -static_cast<long double>(q - r)
                                : static_cast<long double>(r);
  if (r == 0) return {1.0, 0.0};
  if (2 * r == q) return {-1.0, 0.0};
  if (4 * r == q) return {0.0, 1.0};
  if (4 * r == 3 * q) return {0.0, -1.0};
  const long double angle = 2.0L * std::numbers::pi_v<long double> * num /
                            static_cast<long double>(q);
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

Complex e_real(double x) {
  double frac = x - std::round(x);
  if (frac == 0.0) return {1.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

RootTable::RootTable(std::uint64_t q) : q_(q), table_(q) {
  if (q == 0) throw DomainError("RootTable: zero modulus");
  for (std::uint64_t k = 0; k < q; ++k)
    table_[k] = e_rational(static_cast<std::int64_t>(k), q);
}

}  // namespace hl
