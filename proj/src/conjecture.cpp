#include "hl/conjecture.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "hl/expsums.hpp"

namespace hl {

namespace {

constexpr std::int64_t kChunk = std::int64_t{1} << 16;

// Runs body(k) for k in [0, count) on up to `workers` threads; k is handed
// out round-robin so every k is processed exactly once.
template <class Body>
void for_each_chunk(std::int64_t count, int workers, Body body) {
  const int w = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(workers, count)));
  if (w <= 1) {
    for (std::int64_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::vector<std::thread> pool;
  for (int id = 0; id < w; ++id)
    pool.emplace_back([&, id] {
      for (std::int64_t k = id; k < count; k += w) body(k);
    });
  for (auto& t : pool) t.join();
}

// Smallest c0 >= 0 with c0 = r (mod L) and c0 = 0 (mod K); gcd(L, K) = 1.
std::int64_t crt_class(std::int64_t r, std::int64_t L, std::int64_t K) {
  // c0 = K x with K x = r (mod L).
  const auto x = static_cast<std::int64_t>(
      mul_mod(mod_floor(r, static_cast<std::uint64_t>(L)), inverse_mod(K, static_cast<std::uint64_t>(L)),
              static_cast<std::uint64_t>(L)));
  return K * x;
}

std::int64_t first_at_or_above(std::int64_t lo, std::int64_t residue, std::int64_t modulus) {
  const auto shift = static_cast<std::int64_t>(mod_floor(residue - lo, static_cast<std::uint64_t>(modulus)));
  return lo + shift;
}

std::function<double(double)> weight_of(const ConjectureParams& p) {
  if (p.weight) return p.weight;
  const double C = p.C;
  return [C](double c) { return unit_bump(c / C - 1); };
}

struct CWindow {
  std::int64_t lo;
  std::int64_t hi;
};

CWindow window(double C) {
  return {static_cast<std::int64_t>(std::ceil(C)), static_cast<std::int64_t>(std::floor(2 * C))};
}

// One term f(c) T(m, L'n; c) e(sqrt(mn) alpha / c) and its envelope contribution.
struct Term {
  Complex value;
  double bound;
};

Term conjecture_term(const ConjectureParams& p, const std::function<double(double)>& f, std::int64_t c,
                     const Factorization* fact) {
  const double w = f(static_cast<double>(c));
  if (w == 0) return {{0, 0}, 0};
  const auto uc = static_cast<std::uint64_t>(c);
  const std::uint64_t lbar = inverse_mod(p.L, uc);
  const auto n = static_cast<std::int64_t>(mul_mod(lbar, mod_floor(p.n, uc), uc));
  const SalieArgs args{static_cast<std::int64_t>(mod_floor(p.m, uc)), n, c};
  const Complex T = fact ? salie_fast(args, *fact) : salie_direct(args);
  const double phase = std::sqrt(static_cast<double>(p.m) * static_cast<double>(p.n)) * p.alpha /
                       static_cast<double>(c);
  const Factorization cf = fact ? *fact : factorize(uc);
  const auto g = static_cast<double>(gcd_i64(gcd_i64(p.m, p.n), c));
  const double bound = std::fabs(w) * static_cast<double>(divisor_count(cf)) *
                       std::sqrt(static_cast<double>(c) * g);
  return {w * T * e_real(phase), bound};
}

}  // namespace

double unit_bump(double t) {
  if (!(t > 0 && t < 1)) return 0;
  return std::exp(4 - 1 / (t * (1 - t)));
}

void validate(const ConjectureParams& p) {
  if (p.m < 1 || p.n < 1) throw DomainError("conjecture: m, n must be positive");
  if (p.L < 2 || p.L % 2 != 0) throw DomainError("conjecture: L must be a positive even integer");
  if (p.K < 1 || p.r < 1) throw DomainError("conjecture: K, r must be positive");
  if (gcd_i64(p.L, p.K * p.r) != 1) throw DomainError("conjecture: need gcd(L, K r) = 1");
  if (!(p.B > 0) || std::fabs(p.alpha) > p.B) throw DomainError("conjecture: need |alpha| <= B");
  if (!(p.C >= 1)) throw DomainError("conjecture: C must be at least 1");
}

ConjectureResult conjecture_sum(const ConjectureParams& p, int workers) {
  validate(p);
  const auto f = weight_of(p);
  const std::int64_t stride = p.L * p.K;
  const CWindow win = window(p.C);
  ConjectureResult out;
  if (win.hi < win.lo) return out;
  const std::int64_t first = first_at_or_above(win.lo, crt_class(p.r, p.L, p.K), stride);
  if (first > win.hi) {
    out.feasible = false;
    return out;
  }
  const std::int64_t count = (win.hi - first) / stride + 1;
  const FactorSieve sieve(static_cast<std::uint64_t>(first), static_cast<std::uint64_t>(win.hi));
  const std::int64_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<ComplexSum> partial(static_cast<std::size_t>(chunks));
  std::vector<RealSum> bounds(static_cast<std::size_t>(chunks));
  for_each_chunk(chunks, workers, [&](std::int64_t k) {
    const std::int64_t end = std::min(count, (k + 1) * kChunk);
    for (std::int64_t idx = k * kChunk; idx < end; ++idx) {
      const std::int64_t c = first + idx * stride;
      const Factorization fact = sieve.factorization(static_cast<std::uint64_t>(c));
      const Term t = conjecture_term(p, f, c, &fact);
      partial[static_cast<std::size_t>(k)].add(t.value);
      bounds[static_cast<std::size_t>(k)].add(t.bound);
    }
  });
  ComplexSum total;
  RealSum env;
  for (std::size_t k = 0; k < partial.size(); ++k) {
    total.add(partial[k]);
    env.add(bounds[k].value());
  }
  out.value = total.value() / p.C;
  out.envelope = env.value() / p.C;
  out.terms = count;
  return out;
}

ConjectureResult conjecture_sum_direct(const ConjectureParams& p) {
  validate(p);
  const auto f = weight_of(p);
  const CWindow win = window(p.C);
  ConjectureResult out;
  ComplexSum total;
  RealSum env;
  for (std::int64_t c = win.lo; c <= win.hi; ++c) {
    if (c % p.K != 0 || mod_floor(c - p.r, static_cast<std::uint64_t>(p.L)) != 0) continue;
    const Term t = conjecture_term(p, f, c, nullptr);
    total.add(t.value);
    env.add(t.bound);
    ++out.terms;
  }
  out.feasible = out.terms > 0 || win.hi < win.lo;
  out.value = total.value() / p.C;
  out.envelope = env.value() / p.C;
  return out;
}

ScanReport dyadic_scan(const ConjectureParams& base, const std::vector<double>& Cs, int workers) {
  for (std::size_t i = 1; i < Cs.size(); ++i)
    if (!(Cs[i] > Cs[i - 1])) throw DomainError("dyadic_scan: C values must increase");
  ScanReport report;
  std::vector<double> xs, ys;
  for (double C : Cs) {
    ConjectureParams p = base;
    p.C = C;
    const auto start = std::chrono::steady_clock::now();
    const ConjectureResult r = conjecture_sum(p, workers);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    ScanRecord rec;
    rec.C = C;
    rec.sumRe = r.value.real();
    rec.sumIm = r.value.imag();
    rec.absSum = std::hypot(rec.sumRe, rec.sumIm);
    rec.terms = r.terms;
    rec.seconds = took.count();
    rec.envelope = r.envelope;
    report.records.push_back(rec);
    if (rec.absSum > 0) {
      xs.push_back(std::log(C));
      ys.push_back(std::log(C * rec.absSum));
    }
  }
  report.fitted = static_cast<int>(xs.size());
  if (xs.size() >= 2) {
    const double k = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i] / k;
      my += ys[i] / k;
    }
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    report.slope = sxy / sxx;
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double e = ys[i] - (my + report.slope * (xs[i] - mx));
      rss += e * e;
    }
    report.residual = std::sqrt(rss / k);
  }
  return report;
}

std::vector<double> dyadic_range(int lo, int hi) {
  std::vector<double> out;
  for (int k = lo; k <= hi; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

std::string scan_csv(const ConjectureParams& base, const ScanReport& report, bool timing) {
  std::string out = "C,m,n,L,K,r,alpha,re,im,abs,terms,seconds\n";
  char line[512];
  for (const ScanRecord& rec : report.records) {
    std::snprintf(line, sizeof line, "%.17g,%lld,%lld,%lld,%lld,%lld,%.17g,%.17g,%.17g,%.17g,%lld,%.17g\n",
                  rec.C, static_cast<long long>(base.m), static_cast<long long>(base.n),
                  static_cast<long long>(base.L), static_cast<long long>(base.K),
                  static_cast<long long>(base.r), base.alpha, rec.sumRe, rec.sumIm, rec.absSum,
                  static_cast<long long>(rec.terms), timing ? rec.seconds : 0.0);
    out += line;
  }
  return out;
}

void validate(const StatementParams& p) {
  if (p.u < 4 || p.u % 4 != 0) throw DomainError("statement: u must be a positive multiple of 4");
  if (gcd_i64(p.r4, p.u) != 1) throw DomainError("statement: need gcd(r4, u) = 1");
  if (p.K < 1 || gcd_i64(p.K, p.L()) != 1) throw DomainError("statement: need K >= 1, gcd(K, L) = 1");
  if (p.kappa != 1 && p.kappa != -1) throw DomainError("statement: kappa must be +1 or -1");
  if (!(p.C >= 1 && p.a >= 1 && p.M >= 1 && p.X > 0)) throw DomainError("statement: C, a, M must be >= 1");
  if (p.max_terms < 0) throw DomainError("statement: negative budget");
}

namespace {

std::function<double(double, double, double, double)> g_of(const StatementParams& p) {
  if (p.g) return p.g;
  const double a = p.a, M = p.M, C = p.C;
  return [a, M, C](double t1, double t2, double m, double c) {
    return unit_bump(t1 / a - 1) * unit_bump(t2 / a - 1) * unit_bump(m / M - 1) * unit_bump(c / C - 1);
  };
}

std::vector<std::int64_t> residue_range(double lo, double hi, std::int64_t r, std::int64_t u) {
  std::vector<std::int64_t> out;
  const auto a = static_cast<std::int64_t>(std::ceil(lo)), b = static_cast<std::int64_t>(std::floor(hi));
  if (b < a) return out;
  for (std::int64_t x = first_at_or_above(a, r, u); x <= b; x += u) out.push_back(x);
  return out;
}

struct StatementTerm {
  Complex value;
  bool clipped;
};

StatementTerm statement_term(const StatementParams& p,
                             const std::function<double(double, double, double, double)>& g,
                             std::int64_t t1, std::int64_t t2, std::int64_t m, std::int64_t c,
                             const Factorization* fact) {
  const std::int64_t d1 = t1 * t1 - 4, d2 = t2 * t2 - 4;
  const double e1 = p.X - static_cast<double>(d1), e2 = p.X - static_cast<double>(d2);
  if (e1 < 0 || e2 < 0) return {{0, 0}, true};
  const double w = g(static_cast<double>(t1), static_cast<double>(t2), static_cast<double>(m),
                     static_cast<double>(c));
  if (w == 0) return {{0, 0}, false};
  const double s1 = std::sqrt(static_cast<double>(d1)), s2 = std::sqrt(static_cast<double>(d2));
  const double h = (p.X + p.kappa * std::sqrt(e1) * std::sqrt(e2)) / (s1 * s2);
  const double phase = static_cast<double>(m) * s1 * s2 * h / (static_cast<double>(c) * static_cast<double>(p.u));
  const auto uc = static_cast<std::uint64_t>(c);
  const auto mm = mod_floor(m, uc);
  const auto sm = static_cast<std::int64_t>(mul_mod(mod_floor(d1, uc), mul_mod(mm, mm, uc), uc));
  const auto sn = static_cast<std::int64_t>(mul_mod(inverse_mod(p.L(), uc), mod_floor(d2, uc), uc));
  const SalieArgs args{sm, sn, c};
  const Complex T = fact ? salie_fast(args, *fact) : salie_direct(args);
  return {w * e_real(phase) * T, false};
}

}  // namespace

StatementResult statement_sum(const StatementParams& p, int workers) {
  validate(p);
  const auto g = g_of(p);
  std::vector<std::int64_t> t1s;
  for (std::int64_t t : residue_range(p.a, 2 * p.a, p.r1, p.u))
    if (mod_floor(t * t - 4, static_cast<std::uint64_t>(p.K)) == 0) t1s.push_back(t);
  const auto t2s = residue_range(p.a, 2 * p.a, p.r2, p.u);
  const auto ms = residue_range(p.M, 2 * p.M, p.r3, p.u);
  std::vector<std::int64_t> cs;
  for (std::int64_t c : residue_range(p.C, 2 * p.C, p.r4, p.u))
    if (c % p.K == 0) cs.push_back(c);
  StatementResult out;
  const long double total = static_cast<long double>(t1s.size()) * t2s.size() * ms.size() * cs.size();
  if (total > static_cast<long double>(p.max_terms))
    throw DomainError("statement_sum: term count exceeds the budget");
  if (total == 0) return out;
  const FactorSieve sieve(static_cast<std::uint64_t>(cs.front()), static_cast<std::uint64_t>(cs.back()));
  const auto nc = static_cast<std::int64_t>(cs.size());
  std::vector<ComplexSum> partial(cs.size());
  std::vector<std::int64_t> clipped(cs.size(), 0);
  for_each_chunk(nc, workers, [&](std::int64_t k) {
    const std::int64_t c = cs[static_cast<std::size_t>(k)];
    const Factorization fact = sieve.factorization(static_cast<std::uint64_t>(c));
    for (std::int64_t t1 : t1s)
      for (std::int64_t t2 : t2s)
        for (std::int64_t m : ms) {
          const StatementTerm t = statement_term(p, g, t1, t2, m, c, &fact);
          partial[static_cast<std::size_t>(k)].add(t.value);
          clipped[static_cast<std::size_t>(k)] += t.clipped;
        }
  });
  ComplexSum sum;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    sum.add(partial[k]);
    out.clipped += clipped[k];
  }
  out.value = sum.value();
  out.terms = static_cast<std::int64_t>(total) - out.clipped;
  return out;
}

StatementResult statement_sum_direct(const StatementParams& p) {
  validate(p);
  const auto g = g_of(p);
  StatementResult out;
  ComplexSum sum;
  const auto lo = [](double x) { return static_cast<std::int64_t>(std::ceil(x)); };
  const auto hi = [](double x) { return static_cast<std::int64_t>(std::floor(x)); };
  const auto in_class = [&](std::int64_t x, std::int64_t r) {
    return mod_floor(x - r, static_cast<std::uint64_t>(p.u)) == 0;
  };
  for (std::int64_t c = lo(p.C); c <= hi(2 * p.C); ++c) {
    if (!in_class(c, p.r4) || c % p.K != 0) continue;
    for (std::int64_t t1 = lo(p.a); t1 <= hi(2 * p.a); ++t1) {
      if (!in_class(t1, p.r1) || (t1 * t1 - 4) % p.K != 0) continue;
      for (std::int64_t t2 = lo(p.a); t2 <= hi(2 * p.a); ++t2) {
        if (!in_class(t2, p.r2)) continue;
        for (std::int64_t m = lo(p.M); m <= hi(2 * p.M); ++m) {
          if (!in_class(m, p.r3)) continue;
          const StatementTerm t = statement_term(p, g, t1, t2, m, c, nullptr);
          sum.add(t.value);
          out.clipped += t.clipped;
          out.terms += !t.clipped;
        }
      }
    }
  }
  out.value = sum.value();
  return out;
}

}  // namespace hl
