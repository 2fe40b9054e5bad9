#pragma once

#include <complex>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace hl {

/// Raised whenever an argument lies outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Complete factorization of a positive integer; primes strictly increasing.
struct Factorization {
  std::uint64_t value = 1;
  std::vector<PrimePower> factors;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// The normalized Gauss-sum sign: 1 for c = 1 (mod 4), i for c = 3 (mod 4).
enum class EpsilonC { one, i };

std::complex<double> to_complex(EpsilonC e);

// Basic modular helpers. Residues are always returned in [0, m).
std::uint64_t mod_floor(std::int64_t a, std::uint64_t m);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::int64_t gcd_i64(std::int64_t a, std::int64_t b);

/// Inverse of a modulo m (m >= 1). Throws DomainError when gcd(a, m) != 1.
std::uint64_t inverse_mod(std::int64_t a, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

int jacobi(std::int64_t a, std::int64_t n);
EpsilonC epsilon_c(std::int64_t c);

/// p-adic valuation. n = 0 is rejected rather than mapped to a sentinel.
unsigned nu_p(std::uint64_t p, std::int64_t n);

/// Largest k >= 1 with k^2 dividing gcd(ns).
std::uint64_t square_part(std::span<const std::int64_t> ns);

/// Local Hilbert symbol (a, b)_p via the explicit odd / dyadic formulas.
int hilbert_p(std::int64_t a, std::int64_t b, std::uint64_t p);

/// Trial division up to 10^6, then Brent-Pollard rho on the cofactor.
Factorization factorize(std::uint64_t n);

/// All x in [0, c) with x^2 = a (mod c), sorted. c must be odd.
std::vector<std::uint64_t> sqrt_mod(std::int64_t a, std::uint64_t c,
                                    const Factorization& fact);

/// Roots of x^2 = a modulo p^k for an odd prime p.
std::vector<std::uint64_t> sqrt_mod_prime_power(std::int64_t a,
                                                std::uint64_t p, unsigned k);

std::vector<std::uint64_t> divisors(const Factorization& f);
int mobius(const Factorization& f);
std::uint64_t euler_phi(const Factorization& f);
std::uint64_t divisor_count(const Factorization& f);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// Least-prime-factor table over a window [lo, hi], for batch factorization.
class FactorSieve {
 public:
  FactorSieve(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  Factorization factorization(std::uint64_t n) const;

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
  // Remaining cofactor after removing all primes <= sqrt(hi); it is 1 or prime.
  std::vector<std::uint64_t> residual_;
  std::vector<std::vector<PrimePower>> small_;
};

/// Memoized factorization, safe for concurrent readers and writers.
class FactorCache {
 public:
  Factorization get(std::uint64_t n);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, Factorization> table_;
};

}  // namespace hl
