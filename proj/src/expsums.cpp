#include "hl/expsums.hpp"

#include <cmath>
#include <string>

namespace hl {

namespace {

void require_odd_modulus(std::int64_t c, const char* who) {
  if (c <= 0 || c % 2 == 0)
    throw DomainError(std::string(who) + ": modulus must be odd and positive, got " +
                      std::to_string(c));
}

// eps_c sqrt(c) (n/c) sum_{y^2 = mn (c)} e(2y/c), valid whenever gcd(n, c) = 1.
Complex salie_closed_prime_power(std::uint64_t m, std::uint64_t n, std::uint64_t p,
                                 unsigned k) {
  const std::uint64_t q = ipow(p, k);
  const auto qi = static_cast<std::int64_t>(q);
  const std::uint64_t mn = mul_mod(m, n, q);
  ComplexSum roots;
  for (std::uint64_t y : sqrt_mod_prime_power(static_cast<std::int64_t>(mn), p, k))
    roots.add(e_rational(static_cast<std::int64_t>((2 * y) % q), q));
  const Complex eps = to_complex(epsilon_c(qi));
  const double scale = std::sqrt(static_cast<double>(q)) *
                       jacobi(static_cast<std::int64_t>(n), qi);
  return eps * scale * roots.value();
}

Complex salie_prime_power(std::uint64_t m, std::uint64_t n, std::uint64_t p, unsigned k) {
  if (n % p != 0) return salie_closed_prime_power(m, n, p, k);
  if (m % p != 0) return salie_closed_prime_power(n, m, p, k);
  const auto q = static_cast<std::int64_t>(ipow(p, k));
  return salie_direct({static_cast<std::int64_t>(m), static_cast<std::int64_t>(n), q});
}

}  // namespace

Complex salie_direct(const SalieArgs& args) {
  require_odd_modulus(args.c, "salie_direct");
  const auto c = static_cast<std::uint64_t>(args.c);
  if (c == 1) return {1.0, 0.0};
  const std::uint64_t m = mod_floor(args.m, c);
  const std::uint64_t n = mod_floor(args.n, c);
  const RootTable roots(c);
  ComplexSum sum;
  for (std::uint64_t x = 1; x < c; ++x) {
    if (gcd_u64(x, c) != 1) continue;
    const int chi = jacobi(static_cast<std::int64_t>(x), args.c);
    const std::uint64_t xbar = inverse_mod(static_cast<std::int64_t>(x), c);
    const std::uint64_t phase = (mul_mod(m, xbar, c) + mul_mod(n, x, c)) % c;
    sum.add(static_cast<double>(chi) * roots[phase]);
  }
  return sum.value();
}

Complex salie_fast(const SalieArgs& args, const Factorization& fact,
                   std::uint64_t direct_threshold) {
  require_odd_modulus(args.c, "salie_fast");
  const auto c = static_cast<std::uint64_t>(args.c);
  if (fact.value != c) throw DomainError("salie_fast: factorization does not match modulus");
  if (c == 1) return {1.0, 0.0};
  if (c <= direct_threshold) return salie_direct(args);
  const std::uint64_t m = mod_floor(args.m, c);
  const std::uint64_t n = mod_floor(args.n, c);
  Complex product{1.0, 0.0};
  for (const PrimePower& pp : fact.factors) {
    const std::uint64_t q = ipow(pp.prime, pp.exponent);
    const std::uint64_t rest = c / q;
    const std::uint64_t rbar = inverse_mod(static_cast<std::int64_t>(rest % q), q);
    product *= salie_prime_power(mul_mod(m % q, rbar, q), mul_mod(n % q, rbar, q),
                                 pp.prime, pp.exponent);
  }
  return product;
}

Complex gauss_quadratic(std::int64_t A, std::int64_t B, std::int64_t C, GaussMode mode) {
  require_odd_modulus(C, "gauss_quadratic");
  const auto c = static_cast<std::uint64_t>(C);
  if (gcd_u64(mod_floor(B, c), c) != 1)
    throw DomainError("gauss_quadratic: B must be coprime to C");
  if (c == 1) return {1.0, 0.0};
  const std::uint64_t a = mod_floor(A, c);
  const std::uint64_t b = mod_floor(B, c);
  if (mode == GaussMode::direct) {
    const RootTable roots(c);
    ComplexSum sum;
    for (std::uint64_t x = 0; x < c; ++x)
      sum.add(roots[(mul_mod(a, x, c) + mul_mod(b, mul_mod(x, x, c), c)) % c]);
    return sum.value();
  }
  const std::uint64_t inv4b = inverse_mod(static_cast<std::int64_t>(mul_mod(4, b, c)), c);
  const std::uint64_t shift = mul_mod(mul_mod(a, a, c), inv4b, c);
  const Complex phase = e_rational(-static_cast<std::int64_t>(shift), c);
  const double scale = std::sqrt(static_cast<double>(c)) * jacobi(B, C);
  return phase * scale * to_complex(epsilon_c(C));
}

std::int64_t ramanujan(std::uint64_t q, std::int64_t n) {
  if (q == 0) throw DomainError("ramanujan: q must be positive");
  const std::uint64_t g = gcd_u64(mod_floor(n, q), q);
  const Factorization fq = factorize(q);
  const Factorization fr = factorize(q / g);
  return static_cast<std::int64_t>(mobius(fr)) *
         static_cast<std::int64_t>(euler_phi(fq) / euler_phi(fr));
}

std::int64_t ramanujan_direct(std::uint64_t q, std::int64_t n) {
  if (q == 0) throw DomainError("ramanujan_direct: q must be positive");
  const std::uint64_t nr = mod_floor(n, q);
  RealSum sum;
  for (std::uint64_t x = 0; x < q; ++x) {
    if (gcd_u64(x, q) != 1) continue;
    sum.add(e_rational(static_cast<std::int64_t>(mul_mod(nr, x, q)), q).real());
  }
  return static_cast<std::int64_t>(std::llround(sum.value()));
}

Complex kloosterman(std::int64_t m, std::int64_t n, std::int64_t c) {
  if (c <= 0) throw DomainError("kloosterman: modulus must be positive");
  const auto cu = static_cast<std::uint64_t>(c);
  if (cu == 1) return {1.0, 0.0};
  const std::uint64_t mr = mod_floor(m, cu);
  const std::uint64_t nr = mod_floor(n, cu);
  const RootTable roots(cu);
  ComplexSum sum;
  for (std::uint64_t x = 1; x < cu; ++x) {
    if (gcd_u64(x, cu) != 1) continue;
    const std::uint64_t xbar = inverse_mod(static_cast<std::int64_t>(x), cu);
    sum.add(roots[(mul_mod(mr, xbar, cu) + mul_mod(nr, x, cu)) % cu]);
  }
  return sum.value();
}

void validate(const Lemma317Params& p) {
  if (p.t1 <= 2 || p.t2 <= 2) throw DomainError("salie decomposition: t1, t2 must exceed 2");
  if (p.D < 1 || p.gamma < 1 || p.k < 1)
    throw DomainError("salie decomposition: D, gamma, k must be positive");
  if (gcd_i64(p.gamma, p.k) != 1) throw DomainError("salie decomposition: gcd(gamma, k) != 1");
  const std::int64_t p1 = p.t1 * p.t1 - 4;
  std::uint64_t g = gcd_u64(static_cast<std::uint64_t>(p.D), 2);
  g *= gcd_u64(static_cast<std::uint64_t>(p.D), static_cast<std::uint64_t>(p1));
  g *= gcd_u64(static_cast<std::uint64_t>(p.D), static_cast<std::uint64_t>(p.gamma));
  g *= gcd_u64(static_cast<std::uint64_t>(p.D), static_cast<std::uint64_t>(p.k));
  if (g != 1) throw DomainError("salie decomposition: D must be coprime to 2(t1^2-4) gamma k");
}

Complex lemma317_lhs(const Lemma317Params& p) {
  validate(p);
  const auto D = static_cast<std::uint64_t>(p.D);
  const auto gamma = static_cast<std::uint64_t>(p.gamma);
  const std::uint64_t mod = gamma * D;
  const std::uint64_t prod =
      mul_mod(mod_floor(p.t1 * p.t1 - 4, D), mod_floor(p.t2 * p.t2 - 4, D), D);
  const std::uint64_t k_g = mod_floor(p.k, gamma);
  const std::uint64_t c_g = mod_floor(p.C, gamma);
  const std::uint64_t k_d = mod_floor(p.k, D);
  const std::uint64_t n_mod = mod_floor(p.N, mod);
  ComplexSum sum;
  for (std::uint64_t h = 0; h < mod; ++h) {
    if (mul_mod(k_g, h % gamma, gamma) != c_g) continue;
    const std::uint64_t kh = mul_mod(k_d, h % D, D);
    if (mul_mod(kh, kh, D) != prod) continue;
    sum.add(e_rational(static_cast<std::int64_t>(mul_mod(n_mod, h, mod)), mod));
  }
  return sum.value();
}

Complex lemma317_rhs(const Lemma317Params& p, JacobiReading reading) {
  validate(p);
  const auto D = static_cast<std::uint64_t>(p.D);
  const auto gamma = static_cast<std::uint64_t>(p.gamma);
  const std::int64_t p1 = p.t1 * p.t1 - 4;
  const std::int64_t p2 = p.t2 * p.t2 - 4;

  const std::uint64_t kd_inv =
      inverse_mod(static_cast<std::int64_t>(mul_mod(mod_floor(p.k, gamma), D % gamma, gamma)),
                  gamma);
  const std::uint64_t nc = mul_mod(mod_floor(p.N, gamma), mod_floor(p.C, gamma), gamma);
  const Complex outer = e_rational(static_cast<std::int64_t>(mul_mod(nc, kd_inv, gamma)), gamma);

  const std::uint64_t absn = p.N < 0 ? static_cast<std::uint64_t>(-p.N)
                                     : static_cast<std::uint64_t>(p.N);
  const std::uint64_t g = gcd_u64(D, absn);
  ComplexSum inner;
  for (std::uint64_t lambda : divisors(factorize(g))) {
    const std::uint64_t d1 = D / lambda;
    const auto d1i = static_cast<std::int64_t>(d1);
    const std::int64_t n_over = p.N / static_cast<std::int64_t>(lambda);
    const std::uint64_t nl = mod_floor(n_over, d1);
    const std::uint64_t arg_m = mul_mod(mod_floor(p1, d1), mul_mod(nl, nl, d1), d1);
    const std::uint64_t gk = mul_mod(gamma % d1, mod_floor(p.k, d1), d1);
    const std::uint64_t four_gk2 = mul_mod(4 % d1, mul_mod(gk, gk, d1), d1);
    const std::uint64_t arg_n =
        d1 == 1 ? 0
                : mul_mod(inverse_mod(static_cast<std::int64_t>(four_gk2), d1),
                          mod_floor(p2, d1), d1);
    const Complex eps_bar = std::conj(to_complex(epsilon_c(d1i)));
    const int chi = reading == JacobiReading::cofactor
                        ? jacobi(p1, d1i)
                        : jacobi(p1, static_cast<std::int64_t>(lambda));
    const Complex t = salie_fast({static_cast<std::int64_t>(arg_m),
                                  static_cast<std::int64_t>(arg_n), d1i},
                                 factorize(d1));
    inner.add(eps_bar * (static_cast<double>(chi) / std::sqrt(static_cast<double>(d1))) * t);
  }
  return outer * inner.value();
}

}  // namespace hl
