#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "hl/arith.hpp"
#include "hl/rng.hpp"

using namespace hl;

namespace {

int legendre_brute(std::int64_t a, std::int64_t p) {
  const std::int64_t r = ((a % p) + p) % p;
  if (r == 0) return 0;
  for (std::int64_t x = 1; x < p; ++x)
    if (x * x % p == r) return 1;
  return -1;
}

bool is_prime_slow(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("jacobi examples and errors") {
  CHECK(jacobi(1, 1) == 1);
  CHECK(jacobi(5, 11) == 1);
  CHECK(jacobi(2, 15) == 1);
  CHECK(jacobi(-7, 1) == 1);
  CHECK(jacobi(6, 15) == 0);
  CHECK_THROWS_AS(jacobi(3, 8), DomainError);
  CHECK_THROWS_AS(jacobi(3, 0), DomainError);
  CHECK_THROWS_AS(jacobi(3, -5), DomainError);
}

TEST_CASE("jacobi matches brute-force Legendre for odd primes up to 997") {
  for (std::int64_t p = 3; p <= 997; p += 2) {
    if (!is_prime_slow(static_cast<std::uint64_t>(p))) continue;
    for (std::int64_t a = 0; a < p; ++a) REQUIRE(jacobi(a, p) == legendre_brute(a, p));
  }
}

TEST_CASE("jacobi is multiplicative in both arguments") {
  CounterRng rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t a = rng.uniform(-500, 500), b = rng.uniform(-500, 500);
    std::int64_t n = 2 * rng.uniform(0, 200) + 1, m = 2 * rng.uniform(0, 200) + 1;
    CHECK(jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n));
    CHECK(jacobi(a, n * m) == jacobi(a, n) * jacobi(a, m));
  }
}

TEST_CASE("epsilon_c") {
  CHECK(epsilon_c(1) == EpsilonC::one);
  CHECK(epsilon_c(3) == EpsilonC::i);
  CHECK(epsilon_c(7) == EpsilonC::i);
  CHECK(epsilon_c(13) == EpsilonC::one);
  CHECK_THROWS_AS(epsilon_c(4), DomainError);
}

TEST_CASE("nu_p") {
  CHECK(nu_p(2, 48) == 4);
  CHECK(nu_p(5, 50) == 2);
  CHECK(nu_p(3, 7) == 0);
  CHECK(nu_p(3, -81) == 4);
  CHECK_THROWS_AS(nu_p(3, 0), DomainError);
}

TEST_CASE("square_part") {
  const std::int64_t a[] = {7};
  const std::int64_t b[] = {4, 8};
  const std::int64_t c[] = {144, 36};
  const std::int64_t z[] = {0, 0};
  CHECK(square_part(a) == 1);
  CHECK(square_part(b) == 2);
  CHECK(square_part(c) == 6);
  CHECK_THROWS_AS(square_part(z), DomainError);

  CounterRng rng(5);
  for (int i = 0; i < 500; ++i) {
    const std::int64_t v[] = {rng.uniform(-5000, 5000), rng.uniform(1, 5000),
                              rng.uniform(-5000, 5000)};
    const auto k = static_cast<std::int64_t>(square_part(v));
    const std::int64_t g = std::gcd(std::gcd(v[0], v[1]), v[2]);
    CHECK(g % (k * k) == 0);
    for (std::int64_t m = 2; k * m * k * m <= g; ++m) CHECK(g % (k * m * k * m) != 0);
  }
}

TEST_CASE("hilbert symbol examples") {
  CHECK(hilbert_p(1, 6, 5) == 1);
  CHECK(hilbert_p(-1, -1, 2) == -1);
  CHECK(hilbert_p(2, 3, 3) == -1);
  CHECK_THROWS_AS(hilbert_p(0, 3, 3), DomainError);
}

TEST_CASE("hilbert symbol: symmetry, bimultiplicativity, product formula") {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 200; ++p)
    if (is_prime_slow(p)) primes.push_back(p);
  for (std::int64_t a = -60; a <= 60; ++a) {
    if (a == 0) continue;
    for (std::int64_t b = -60; b <= 60; ++b) {
      if (b == 0) continue;
      int product = (a < 0 && b < 0) ? -1 : 1;
      for (std::uint64_t p : primes) {
        const int h = hilbert_p(a, b, p);
        REQUIRE(h == hilbert_p(b, a, p));
        if (p != 2 && (a % static_cast<std::int64_t>(p) != 0) &&
            (b % static_cast<std::int64_t>(p) != 0))
          REQUIRE(h == 1);
        product *= h;
      }
      REQUIRE(product == 1);
    }
  }
  CounterRng rng(7);
  for (int i = 0; i < 3000; ++i) {
    std::int64_t a = rng.uniform(1, 100) * (rng.uniform(0, 1) ? 1 : -1);
    std::int64_t a2 = rng.uniform(1, 100) * (rng.uniform(0, 1) ? 1 : -1);
    std::int64_t b = rng.uniform(1, 100) * (rng.uniform(0, 1) ? 1 : -1);
    std::uint64_t p = primes[static_cast<std::size_t>(rng.uniform(0, 10))];
    CHECK(hilbert_p(a * a2, b, p) == hilbert_p(a, b, p) * hilbert_p(a2, b, p));
  }
}

TEST_CASE("sqrt_mod examples") {
  CHECK(sqrt_mod(1, 3, factorize(3)) == std::vector<std::uint64_t>{1, 2});
  CHECK(sqrt_mod(2, 7, factorize(7)) == std::vector<std::uint64_t>{3, 4});
  CHECK(sqrt_mod(2, 3, factorize(3)).empty());
  CHECK(sqrt_mod(0, 1, factorize(1)) == std::vector<std::uint64_t>{0});
}

TEST_CASE("sqrt_mod agrees with brute force for all odd c < 700") {
  CounterRng rng(3);
  for (std::uint64_t c = 1; c < 700; c += 2) {
    const Factorization f = factorize(c);
    for (int trial = 0; trial < 6; ++trial) {
      const std::int64_t a = trial == 0 ? 0 : rng.uniform(-2000, 2000);
      std::vector<std::uint64_t> brute;
      const std::uint64_t ar = mod_floor(a, c);
      for (std::uint64_t x = 0; x < c; ++x)
        if (x * x % c == ar) brute.push_back(x);
      const auto roots = sqrt_mod(a, c, f);
      REQUIRE(roots == brute);
      // Root count is multiplicative over the prime-power factors.
      std::size_t expected = 1;
      for (const PrimePower& pp : f.factors)
        expected *= sqrt_mod_prime_power(a, pp.prime, pp.exponent).size();
      CHECK(roots.size() == expected);
    }
  }
}

TEST_CASE("sqrt_mod on larger prime powers by squaring") {
  CounterRng rng(9);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t p = std::vector<std::uint64_t>{3, 5, 7, 11, 13, 10007}[i % 6];
    const unsigned k = 1 + static_cast<unsigned>(rng.uniform(0, 3));
    const std::uint64_t q = ipow(p, k);
    const std::int64_t x0 = rng.uniform(0, static_cast<std::int64_t>(q) - 1);
    const std::int64_t a = static_cast<std::int64_t>(mul_mod(x0, x0, q));
    auto roots = sqrt_mod_prime_power(a, p, k);
    REQUIRE(std::find(roots.begin(), roots.end(), static_cast<std::uint64_t>(x0)) != roots.end());
    for (std::uint64_t r : roots) CHECK(mul_mod(r, r, q) == static_cast<std::uint64_t>(a));
  }
}

TEST_CASE("factorize") {
  CHECK(factorize(1).factors.empty());
  CHECK(factorize(360).factors == std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(factorize(1'000'000'007).factors == std::vector<PrimePower>{{1'000'000'007, 1}});
  CHECK_THROWS_AS(factorize(0), DomainError);
  // Semiprime beyond trial division reach.
  const std::uint64_t p = 1'000'000'007, q = 998'244'353;
  CHECK(factorize(p * q).factors == std::vector<PrimePower>{{q, 1}, {p, 1}});
  const std::uint64_t big = 18446744073709551557ULL;  // largest 64-bit prime
  CHECK(is_prime(big));
  CHECK(factorize(big).factors.size() == 1);
  for (std::uint64_t n = 1; n < 5000; ++n) {
    const Factorization f = factorize(n);
    std::uint64_t prod = 1;
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      REQUIRE(is_prime_slow(f.factors[i].prime));
      if (i > 0) REQUIRE(f.factors[i - 1].prime < f.factors[i].prime);
      prod *= ipow(f.factors[i].prime, f.factors[i].exponent);
    }
    REQUIRE(prod == n);
  }
}

TEST_CASE("is_prime against trial division") {
  for (std::uint64_t n = 0; n < 20000; ++n) REQUIRE(is_prime(n) == is_prime_slow(n));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("FactorSieve agrees with factorize") {
  const FactorSieve sieve(1'000'000, 1'010'000);
  for (std::uint64_t n = sieve.lo(); n <= sieve.hi(); ++n)
    REQUIRE(sieve.factorization(n) == factorize(n));
  CHECK_THROWS_AS(sieve.factorization(5), DomainError);
}

TEST_CASE("FactorCache memoizes") {
  FactorCache cache;
  CHECK(cache.get(360) == factorize(360));
  CHECK(cache.get(360) == factorize(360));
  CHECK(cache.size() == 1);
}

TEST_CASE("modular helpers") {
  CHECK(mod_floor(-1, 5) == 4);
  CHECK(mod_floor(-5, 5) == 0);
  CHECK(inverse_mod(3, 7) == 5);
  CHECK(inverse_mod(-3, 7) == 2);
  CHECK_THROWS_AS(inverse_mod(6, 9), DomainError);
  const Factorization f = factorize(360);
  CHECK(divisor_count(f) == 24);
  CHECK(divisors(f).size() == 24);
  CHECK(euler_phi(f) == 96);
  CHECK(mobius(f) == 0);
  CHECK(mobius(factorize(30)) == -1);
}
