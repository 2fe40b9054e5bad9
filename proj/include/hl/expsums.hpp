#pragma once

#include <cstdint>

#include "hl/arith.hpp"
#include "hl/numeric.hpp"

namespace hl {

struct SalieArgs {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t c = 1;
};

/// Moduli at or below this value are summed term by term in salie_fast.
inline constexpr std::uint64_t kSalieDirectThreshold = 10'000;

/// T(m, n; c) = sum over units x mod c of (x/c) e((m x' + n x)/c), x x' = 1.
Complex salie_direct(const SalieArgs& args);

/// Same value through the closed form on prime powers glued by the twisted
/// multiplicativity T(m,n;qr) = T(m r', n r'; q) T(m q', n q'; r).
/// Pass direct_threshold = 0 to force the closed-form path for every c.
Complex salie_fast(const SalieArgs& args, const Factorization& fact,
                   std::uint64_t direct_threshold = kSalieDirectThreshold);

enum class GaussMode { closed, direct };

/// sum over x mod C of e((A x + B x^2)/C) for odd C and gcd(B, C) = 1.
Complex gauss_quadratic(std::int64_t A, std::int64_t B, std::int64_t C,
                        GaussMode mode = GaussMode::closed);

/// Ramanujan sum c_q(n) from mu(q/g) phi(q) / phi(q/g).
std::int64_t ramanujan(std::uint64_t q, std::int64_t n);

/// Direct sum of e(n x / q) over units x; returns the rounded real part.
std::int64_t ramanujan_direct(std::uint64_t q, std::int64_t n);

/// S(m, n; c) = sum over units x mod c of e((m x' + n x)/c).
Complex kloosterman(std::int64_t m, std::int64_t n, std::int64_t c);

struct Lemma317Params {
  std::int64_t t1 = 3;
  std::int64_t t2 = 3;
  std::int64_t D = 1;
  std::int64_t gamma = 1;
  std::int64_t k = 1;
  std::int64_t N = 0;
  std::int64_t C = 0;
};

/// Which modulus the Jacobi factor ((t1^2-4)/.) uses on the decomposed side.
/// The cofactor reading (D/lambda) is the one that matches the left side.
enum class JacobiReading { cofactor, divisor };

/// Throws DomainError unless gcd(gamma, k) = 1 and gcd(D, 2(t1^2-4) gamma k) = 1.
void validate(const Lemma317Params& p);

/// Direct enumeration over all gamma*D residues h.
Complex lemma317_lhs(const Lemma317Params& p);

/// Decomposition into Salie sums over lambda | gcd(D, N).
Complex lemma317_rhs(const Lemma317Params& p,
                     JacobiReading reading = JacobiReading::cofactor);

}  // namespace hl
