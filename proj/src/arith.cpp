#include "hl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hl {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Brent's variant of Pollard rho; n must be odd and composite.
std::uint64_t pollard_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  split_into(d, out);
  split_into(n / d, out);
}

// One root of x^2 = a (mod p), p an odd prime and a a nonzero residue.
std::uint64_t tonelli_shanks(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s;
  std::uint64_t c = pow_mod(z, q, p);
  std::uint64_t t = pow_mod(a, q, p);
  std::uint64_t r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0;
    std::uint64_t tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

}  // namespace

std::complex<double> to_complex(EpsilonC e) {
  return e == EpsilonC::one ? std::complex<double>(1.0, 0.0)
                            : std::complex<double>(0.0, 1.0);
}

std::uint64_t mod_floor(std::int64_t a, std::uint64_t m) {
  if (a >= 0) return static_cast<std::uint64_t>(a) % m;
  std::uint64_t r = (static_cast<std::uint64_t>(-(a + 1)) % m);
  return m - 1 - r;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(std::gcd(a, b));
}

std::uint64_t inverse_mod(std::int64_t a, std::uint64_t m) {
  if (m == 0) throw DomainError("inverse_mod: zero modulus");
  if (m == 1) return 0;
  std::int64_t r0 = static_cast<std::int64_t>(m);
  std::int64_t r1 = static_cast<std::int64_t>(mod_floor(a, m));
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  if (r0 != 1) throw DomainError("inverse_mod: argument not invertible");
  return mod_floor(s0, m);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

int jacobi(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0)
    throw DomainError("jacobi: modulus must be odd and positive, got " +
                      std::to_string(n));
  std::uint64_t m = static_cast<std::uint64_t>(n);
  std::uint64_t x = mod_floor(a, m);
  int result = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      std::uint64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

EpsilonC epsilon_c(std::int64_t c) {
  if (c <= 0 || c % 2 == 0)
    throw DomainError("epsilon_c: modulus must be odd and positive");
  return c % 4 == 1 ? EpsilonC::one : EpsilonC::i;
}

unsigned nu_p(std::uint64_t p, std::int64_t n) {
  if (n == 0) throw DomainError("nu_p: valuation of zero is infinite");
  if (p < 2) throw DomainError("nu_p: p must be prime");
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(n)
                          : static_cast<std::uint64_t>(n);
  unsigned e = 0;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  return e;
}

std::uint64_t square_part(std::span<const std::int64_t> ns) {
  std::uint64_t g = 0;
  for (std::int64_t v : ns) {
    std::uint64_t a = v < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(v)
                            : static_cast<std::uint64_t>(v);
    g = std::gcd(g, a);
  }
  if (g == 0) throw DomainError("square_part: all entries are zero");
  std::uint64_t k = 1;
  for (const PrimePower& pp : factorize(g).factors)
    k *= ipow(pp.prime, pp.exponent / 2);
  return k;
}

int hilbert_p(std::int64_t a, std::int64_t b, std::uint64_t p) {
  if (a == 0 || b == 0) throw DomainError("hilbert_p: arguments must be nonzero");
  if (!is_prime(p)) throw DomainError("hilbert_p: p must be prime");
  const unsigned alpha = nu_p(p, a);
  const unsigned beta = nu_p(p, b);
  std::int64_t u = a, v = b;
  for (unsigned i = 0; i < alpha; ++i) u /= static_cast<std::int64_t>(p);
  for (unsigned i = 0; i < beta; ++i) v /= static_cast<std::int64_t>(p);
  if (p != 2) {
    const auto pi = static_cast<std::int64_t>(p);
    int sign = ((alpha * beta) % 2 == 1 && (p - 1) / 2 % 2 == 1) ? -1 : 1;
    int ju = jacobi(u, pi);
    int jv = jacobi(v, pi);
    if (beta % 2 == 1) sign *= ju;
    if (alpha % 2 == 1) sign *= jv;
    return sign;
  }
  // Exponents only matter mod 2, so u and v may be reduced modulo 8.
  const std::uint64_t u8 = mod_floor(u, 8), v8 = mod_floor(v, 8);
  unsigned e = ((u8 - 1) / 2) * ((v8 - 1) / 2);
  e += alpha * (((v8 * v8 - 1) / 8) % 2);
  e += beta * (((u8 * u8 - 1) / 8) % 2);
  return e % 2 == 0 ? 1 : -1;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: zero has no factorization");
  Factorization out;
  out.value = n;
  std::uint64_t m = n;
  for (std::uint32_t p : small_primes()) {
    if (static_cast<std::uint64_t>(p) * p > m) break;
    if (m % p != 0) continue;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  if (m > 1) {
    std::vector<std::uint64_t> rest;
    split_into(m, rest);
    std::sort(rest.begin(), rest.end());
    for (std::uint64_t p : rest) {
      if (!out.factors.empty() && out.factors.back().prime == p)
        ++out.factors.back().exponent;
      else
        out.factors.push_back({p, 1});
    }
  }
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<std::uint64_t> sqrt_mod_prime_power(std::int64_t a, std::uint64_t p,
                                                unsigned k) {
  const std::uint64_t pk = ipow(p, k);
  const std::uint64_t ar = mod_floor(a, pk);
  std::vector<std::uint64_t> roots;
  if (ar == 0) {
    const std::uint64_t step = ipow(p, (k + 1) / 2);
    for (std::uint64_t x = 0; x < pk; x += step) roots.push_back(x);
    return roots;
  }
  unsigned v = 0;
  std::uint64_t u = ar;
  while (u % p == 0) {
    u /= p;
    ++v;
  }
  if (v % 2 == 1) return roots;
  const unsigned k_unit = k - v;
  const std::uint64_t mod_unit = ipow(p, k_unit);
  u %= mod_unit;
  if (pow_mod(u % p, (p - 1) / 2, p) != 1) return roots;
  // Hensel lift from p to p^k_unit; the derivative 2r is a unit since p is odd.
  std::uint64_t r = tonelli_shanks(u % p, p);
  std::uint64_t cur = p;
  for (unsigned j = 1; j < k_unit; ++j) {
    cur *= p;
    std::uint64_t r2 = mul_mod(r, r, cur);
    std::uint64_t diff = (r2 + cur - u % cur) % cur;
    std::uint64_t inv2r = inverse_mod(static_cast<std::int64_t>((2 * r) % cur), cur);
    r = (r + cur - mul_mod(diff, inv2r, cur)) % cur;
  }
  const std::uint64_t half = ipow(p, v / 2);
  const std::uint64_t stride = ipow(p, k - v / 2);
  for (std::uint64_t y0 : {r, (mod_unit - r) % mod_unit}) {
    for (std::uint64_t t = 0; t < half; ++t)
      roots.push_back((half * y0 + t * stride) % pk);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<std::uint64_t> sqrt_mod(std::int64_t a, std::uint64_t c,
                                    const Factorization& fact) {
  if (c == 0 || c % 2 == 0) throw DomainError("sqrt_mod: modulus must be odd");
  if (fact.value != c) throw DomainError("sqrt_mod: factorization does not match modulus");
  std::vector<std::uint64_t> acc{0};
  std::uint64_t mod_acc = 1;
  for (const PrimePower& pp : fact.factors) {
    const std::uint64_t pk = ipow(pp.prime, pp.exponent);
    std::vector<std::uint64_t> local = sqrt_mod_prime_power(a, pp.prime, pp.exponent);
    if (local.empty()) return {};
    // CRT: x = x1 (mod mod_acc), x = x2 (mod pk).
    const std::uint64_t inv = inverse_mod(static_cast<std::int64_t>(mod_acc % pk), pk);
    const std::uint64_t next_mod = mod_acc * pk;
    std::vector<std::uint64_t> merged;
    merged.reserve(acc.size() * local.size());
    for (std::uint64_t x1 : acc) {
      for (std::uint64_t x2 : local) {
        std::uint64_t t = mul_mod((x2 + pk - x1 % pk) % pk, inv, pk);
        merged.push_back(x1 + mod_acc * t);
      }
    }
    acc.swap(merged);
    mod_acc = next_mod;
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out{1};
  for (const PrimePower& pp : f.factors) {
    const std::size_t n = out.size();
    std::uint64_t pw = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pw *= pp.prime;
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int mobius(const Factorization& f) {
  int mu = 1;
  for (const PrimePower& pp : f.factors) {
    if (pp.exponent > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::uint64_t euler_phi(const Factorization& f) {
  std::uint64_t phi = 1;
  for (const PrimePower& pp : f.factors)
    phi *= (pp.prime - 1) * ipow(pp.prime, pp.exponent - 1);
  return phi;
}

std::uint64_t divisor_count(const Factorization& f) {
  std::uint64_t d = 1;
  for (const PrimePower& pp : f.factors) d *= pp.exponent + 1;
  return d;
}

FactorSieve::FactorSieve(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) {
  if (lo == 0 || hi < lo) throw DomainError("FactorSieve: invalid window");
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  residual_.resize(n);
  small_.resize(n);
  for (std::size_t i = 0; i < n; ++i) residual_[i] = lo + i;
  const std::uint64_t root = isqrt(hi);
  if (root > kTrialLimit) throw DomainError("FactorSieve: window too high");
  for (std::uint32_t p : small_primes()) {
    if (p > root) break;
    std::uint64_t first = (lo + p - 1) / p * p;
    for (std::uint64_t m = first; m <= hi; m += p) {
      std::size_t idx = static_cast<std::size_t>(m - lo);
      unsigned e = 0;
      while (residual_[idx] % p == 0) {
        residual_[idx] /= p;
        ++e;
      }
      small_[idx].push_back({p, e});
    }
  }
}

Factorization FactorSieve::factorization(std::uint64_t n) const {
  if (n < lo_ || n > hi_) throw DomainError("FactorSieve: value outside window");
  const std::size_t idx = static_cast<std::size_t>(n - lo_);
  Factorization f;
  f.value = n;
  f.factors = small_[idx];
  if (residual_[idx] > 1) f.factors.push_back({residual_[idx], 1});
  return f;
}

Factorization FactorCache::get(std::uint64_t n) {
  {
    std::shared_lock lock(mutex_);
    auto it = table_.find(n);
    if (it != table_.end()) return it->second;
  }
  Factorization f = factorize(n);
  std::unique_lock lock(mutex_);
  table_[n] = f;
  return f;
}

std::size_t FactorCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

}  // namespace hl
