#include "hl/acceptance.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "hl/analytic.hpp"
#include "hl/arith.hpp"
#include "hl/conjecture.hpp"
#include "hl/expsums.hpp"
#include "hl/hyperbolic.hpp"
#include "hl/quadpairs.hpp"
#include "hl/rng.hpp"
#include "hl/smoothweights.hpp"

namespace hl {

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome salie_equivalence(const AcceptanceOptions& o) {
  CounterRng rng(o.seed);
  double worst = 0;
  long checked = 0;
  for (std::int64_t c = 1; c <= 2000; c += 2) {
    const Factorization fact = factorize(static_cast<std::uint64_t>(c));
    for (int k = 0; k < 50; ++k) {
      const SalieArgs args{rng.uniform(-5 * c, 5 * c), rng.uniform(-5 * c, 5 * c), c};
      const double dev = std::abs(salie_fast(args, fact, 0) - salie_direct(args));
      worst = std::max(worst, dev / std::sqrt(static_cast<double>(c)));
      ++checked;
    }
  }
  return {worst <= 1e-9, std::to_string(checked) + " sums, max |fast-direct|/sqrt(c) = " + fmt("%.3g", worst)};
}

Outcome salie_decomposition_identity(const AcceptanceOptions& o) {
  CounterRng rng(o.seed + 1);
  int tried = 0, divisor_failures = 0;
  double worst = 0;
  while (tried < 1000) {
    Lemma317Params p;
    p.t1 = rng.uniform(3, 50);
    p.t2 = rng.uniform(3, 50);
    p.D = rng.uniform(1, 200);
    p.gamma = rng.uniform(1, 50);
    p.k = rng.uniform(1, 50);
    p.N = rng.uniform(-400, 400);
    p.C = rng.uniform(-100, 100);
    if (tried % 2 == 0) p.N = p.D * rng.uniform(-3, 3) + (tried % 4 == 0 ? 0 : p.N % 3);
    try {
      validate(p);
    } catch (const DomainError&) {
      continue;
    }
    ++tried;
    const Complex lhs = lemma317_lhs(p);
    const double scale = std::sqrt(static_cast<double>(p.gamma * p.D));
    worst = std::max(worst, std::abs(lhs - lemma317_rhs(p, JacobiReading::cofactor)) / scale);
    if (std::abs(lhs - lemma317_rhs(p, JacobiReading::divisor)) > 1e-8 * scale) ++divisor_failures;
  }
  return {worst <= 1e-8, std::to_string(tried) + " tuples, cofactor reading max dev/sqrt(gamma D) = " +
                             fmt("%.3g", worst) + "; divisor reading fails on " +
                             std::to_string(divisor_failures)};
}

Outcome gauss_closed_form(const AcceptanceOptions&) {
  double worst = 0;
  long checked = 0;
  for (std::int64_t C = 1; C <= 500; C += 2) {
    for (std::int64_t B = 1; B <= C; ++B) {
      if (gcd_i64(B, C) != 1) continue;
      for (std::int64_t A : {std::int64_t{0}, std::int64_t{1}, std::int64_t{2}, C - 1}) {
        const double dev =
            std::abs(gauss_quadratic(A, B, C) - gauss_quadratic(A, B, C, GaussMode::direct));
        worst = std::max(worst, dev / std::sqrt(static_cast<double>(C)));
        ++checked;
      }
    }
  }
  return {worst <= 1e-9, std::to_string(checked) + " sums, max dev/sqrt(C) = " + fmt("%.3g", worst)};
}

Outcome ramanujan_exact(const AcceptanceOptions&) {
  long mismatches = 0, checked = 0;
  for (std::uint64_t q = 1; q <= 500; ++q)
    for (std::int64_t n = 0; n <= static_cast<std::int64_t>(q); ++n) {
      mismatches += ramanujan(q, n) != ramanujan_direct(q, n);
      ++checked;
    }
  return {mismatches == 0, std::to_string(checked) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

struct Triple {
  std::int64_t t1, t2, f;
};

Triple sample_kappa_triple(CounterRng& rng) {
  for (;;) {
    const std::int64_t t1 = rng.uniform(3, 40), t2 = rng.uniform(3, 40);
    const std::int64_t p = (t1 * t1 - 4) * (t2 * t2 - 4);
    const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(p)));
    const std::int64_t f = root + rng.uniform(1, 400);
    if ((f * f - p) % 4 != 0) continue;
    return {t1, t2, f};
  }
}

Outcome reciprocity_chain(const AcceptanceOptions& o) {
  CounterRng rng(o.seed + 5);
  long divisors_checked = 0, failures = 0;
  for (int i = 0; i < 500; ++i) {
    const Triple s = sample_kappa_triple(rng);
    const LocalProfile prof = local_profile(s.t1, s.t2, s.f);
    const std::int64_t n = (s.f * s.f - (s.t1 * s.t1 - 4) * (s.t2 * s.t2 - 4)) / static_cast<std::int64_t>(prof.G);
    for (std::uint64_t d : divisors(factorize(static_cast<std::uint64_t>(n)))) {
      ++divisors_checked;
      failures += !complementary_divisor_check(s.t1, s.t2, s.f, prof.G, d);
    }
  }
  long compared = 0, changed = 0;
  for (int i = 0; i < 400; ++i) {
    const Triple s = sample_kappa_triple(rng);
    const LocalProfile prof = local_profile(s.t1, s.t2, s.f);
    const auto step = static_cast<std::int64_t>(4 * prof.G * prof.R);
    const int k = kappa(s.t1, s.t2, s.f, prof.G, prof.R);
    for (int j = 1; j <= 3; ++j) {
      const Triple t{s.t1 + j * step * (i % 2), s.t2 + j * step * ((i / 2) % 2), s.f + j * step};
      if (t.t1 > 3000 || t.t2 > 3000) continue;
      const LocalProfile q = local_profile(t.t1, t.t2, t.f);
      if (q.G != prof.G || q.R != prof.R) continue;
      if (t.f * t.f <= (t.t1 * t.t1 - 4) * (t.t2 * t.t2 - 4)) continue;
      ++compared;
      changed += kappa(t.t1, t.t2, t.f, prof.G, prof.R) != k;
    }
  }
  return {failures == 0 && changed == 0 && compared > 100,
          "500 triples, " + std::to_string(divisors_checked) + " divisors, " + std::to_string(failures) +
              " failures; kappa compared on " + std::to_string(compared) + " shifted triples, " +
              std::to_string(changed) + " changed"};
}

Outcome hilbert_properties(const AcceptanceOptions&) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 220; ++p)
    if (is_prime(p)) primes.push_back(p);
  long failures = 0, pairs = 0;
  const std::int64_t twists[] = {-1, 2, 3, 5, -7};
  for (std::int64_t a = -200; a <= 200; ++a) {
    if (a == 0) continue;
    for (std::int64_t b = -200; b <= 200; ++b) {
      if (b == 0) continue;
      ++pairs;
      int product = (a < 0 && b < 0) ? -1 : 1;
      for (std::uint64_t p : primes) {
        // Away from 2ab the symbol is 1; it is still evaluated at 3, 5 and 7.
        const auto sp = static_cast<std::int64_t>(p);
        if (p > 7 && a % sp != 0 && b % sp != 0) continue;
        const int h = hilbert_p(a, b, p);
        failures += h != hilbert_p(b, a, p);
        product *= h;
        for (std::int64_t w : twists)
          failures += hilbert_p(a * w, b, p) != h * hilbert_p(w, b, p);
      }
      failures += product != 1;
    }
  }
  return {failures == 0, std::to_string(pairs) + " pairs over " + std::to_string(primes.size()) +
                             " primes and infinity, " + std::to_string(failures) + " failures"};
}

Outcome orbit_counting(const AcceptanceOptions& o) {
  Outcome out;
  const HPoint i{0, 1}, rho{0.5, std::sqrt(3.0) / 2};
  const auto ni = count_orbit(i, 2).total, nrho = count_orbit(rho, 2).total;
  out.pass = ni == 2 && nrho == 3;
  CounterRng rng(o.seed + 7);
  int mismatches = 0;
  for (int k = 0; k < 20; ++k) {
    const HPoint z{rng.uniform_real(-0.5, 0.5), rng.uniform_real(0.7, 2.0)};
    for (double X : {3.0, 37.5, 120.0, 500.0}) {
      const auto bound = static_cast<std::int64_t>(std::ceil(3 * std::sqrt(X) * (1 + std::fabs(z.x)) / std::min(1.0, z.y))) + 2;
      mismatches += !(count_orbit(z, X, o.workers) == count_orbit_naive(z, X, bound));
    }
  }
  const double ratio = static_cast<double>(count_orbit(i, 1e4, o.workers).total) / 3e4;
  out.pass = out.pass && mismatches == 0 && ratio >= 0.85 && ratio <= 1.15;
  out.detail = "N(i,2) = " + std::to_string(ni) + ", N(rho,2) = " + std::to_string(nrho) + ", " +
               std::to_string(mismatches) + " naive mismatches over 20 points, N(i,1e4)/3e4 = " +
               fmt("%.4f", ratio);
  return out;
}

Outcome class_numbers(const AcceptanceOptions& o) {
  struct Case {
    std::int64_t d1, d2, t;
  };
  std::vector<Case> set;
  for (std::int64_t d1 = -12; d1 <= 12; ++d1)
    for (std::int64_t d2 = d1; d2 <= 12; ++d2)
      for (std::int64_t t = 0; t <= 12; ++t)
        if (t * t != d1 * d2) set.push_back({d1, d2, t});
  CounterRng rng(o.seed + 8);
  for (int k = 0; k < 200; ++k) {
    const std::int64_t t1 = rng.uniform(3, 15), t2 = rng.uniform(3, 15);
    const std::int64_t p = (t1 * t1 - 4) * (t2 * t2 - 4);
    set.push_back({t1 * t1 - 4, t2 * t2 - 4,
                   static_cast<std::int64_t>(std::sqrt(static_cast<double>(p))) + rng.uniform(1, 60)});
  }
  long inconclusive = 0, unstable = 0, asymmetric = 0;
  for (const Case& c : set) {
    const ClassNumberResult h = class_number(c.d1, c.d2, c.t);
    if (h.status != ClassStatus::ok) {
      ++inconclusive;
      continue;
    }
    const ClassNumberResult wide = class_number(c.d1, c.d2, c.t, {2 * default_box(c.d1, c.d2, c.t), 4});
    unstable += wide.status != ClassStatus::ok || wide.h != h.h;
    asymmetric += class_number(c.d2, c.d1, c.t).h != h.h || class_number(c.d1, c.d2, -c.t).h != h.h;
  }
  return {inconclusive == 0 && unstable == 0 && asymmetric == 0,
          std::to_string(set.size()) + " triples: " + std::to_string(inconclusive) + " inconclusive, " +
              std::to_string(unstable) + " changed under budget doubling, " + std::to_string(asymmetric) +
              " asymmetric"};
}

Outcome locality(const AcceptanceOptions&) {
  int pairs = 0, unequal = 0;
  for (std::int64_t t1 = 3; t1 <= 12 && pairs < 24; ++t1) {
    for (std::int64_t t2 = 3; t2 <= 12 && pairs < 24; ++t2) {
      const std::int64_t p = (t1 * t1 - 4) * (t2 * t2 - 4);
      const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(p)));
      for (std::int64_t f = root + 1; f <= root + 40; ++f) {
        if ((f * f - p) % 4 != 0) continue;
        const std::int64_t g = matched_partner(t1, t2, f);
        if (g == 0) continue;
        const LocalityRatio a = locality_ratio(t1, t2, f), b = locality_ratio(t1, t2, g);
        if (a.status != LocalityRatio::Status::ok || b.status != LocalityRatio::Status::ok) continue;
        unequal += a.num != b.num || a.den != b.den;
        ++pairs;
        break;
      }
    }
  }
  return {pairs >= 20 && unequal == 0,
          std::to_string(pairs) + " matched pairs, " + std::to_string(unequal) + " with unequal h/alpha_G"};
}

Outcome partition_of_unity(const AcceptanceOptions& o) {
  CounterRng rng(o.seed + 10);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = std::exp(rng.uniform_real(-6, 6));
    RealSum s;
    for (int m = -10; m <= 10; ++m) s.add(phi0(x / std::exp(static_cast<double>(m))));
    worst = std::max(worst, std::fabs(s.value() - 1));
  }
  const double at0 = std::abs(mellin_phi0(0) - 1.0);
  return {worst <= 1e-9 && at0 <= 1e-6,
          "max |sum - 1| = " + fmt("%.3g", worst) + ", |Phi0(0) - 1| = " + fmt("%.3g", at0)};
}

Outcome analytic_identities(const AcceptanceOptions& o) {
  CounterRng rng(o.seed + 11);
  double ab = 0, am1 = 0, round = 0;
  for (int i = 0; i < 10000; ++i) {
    const double S = std::pow(10.0, rng.uniform_real(-3, 3)), T = std::pow(10.0, rng.uniform_real(-3, 3));
    const AB<double> r = ab_funcs(S, T);
    ab = std::max(ab, std::fabs(r.A * r.B - (1 + S * S + T * T)) / (1 + S * S + T * T));
  }
  int contexts = 0;
  while (contexts < 10000) {
    const double X = std::pow(10.0, rng.uniform_real(4, 8));
    const double d = std::pow(X, rng.uniform_real(2.0 / 3.0, 0.99));
    const AnalyticContext ctx = make_context(X, d, rng.uniform_real(1, 2), 3);
    const int j1 = static_cast<int>(rng.uniform(0, 3)), j2 = static_cast<int>(rng.uniform(0, 3));
    const auto tmax = static_cast<std::int64_t>(std::sqrt(X - 6 * d - 2));
    if (tmax < 4) continue;
    STPoint p;
    try {
      p = s0t0f(ctx, j1, j2, rng.uniform(3, tmax), rng.uniform(3, tmax), 1);
    } catch (const DomainError&) {
      continue;
    }
    ++contexts;
    if (p.S0 == p.T0) continue;
    // 50-digit left side at the same point against the cancellation-free form.
    const Big lhs = ab_funcs_t<Big>(Big(p.S0), Big(p.T0)).A - 1;
    if (lhs == 0) continue;
    am1 = std::max(am1, static_cast<double>(abs((Big(a_minus_one(p.S0, p.T0)) - lhs) / lhs)));
  }
  for (int i = 0; i < 2000; ++i) {
    const double S = rng.uniform_real(0.01, 20), T = rng.uniform_real(0.01, 20);
    const AB<double> r = ab_funcs(S, T);
    const double F1 = rng.uniform_real(0, r.B);
    const double v1 = y1({S, T, F1});
    const double want1 = (r.B - F1) * (r.A + F1);
    round = std::max(round, std::fabs(std::pow((T + S * F1) * v1, 2) - want1) / want1);
    const double F2 = rng.uniform_real(0, r.A);
    if (std::fabs(T - S * F2) < 1e-6) continue;
    const double v2 = y2({S, T, F2});
    const double want2 = (r.B + F2) * (r.A - F2);
    round = std::max(round, std::fabs(std::pow((T - S * F2) * v2, 2) - want2) / want2);
  }
  return {ab <= 1e-12 && am1 <= 1e-12 && round <= 1e-10,
          "A*B rel " + fmt("%.3g", ab) + ", A-1 identity rel " + fmt("%.3g", am1) + " on " +
              std::to_string(contexts) + " contexts, y1/y2 round trip rel " + fmt("%.3g", round)};
}

Outcome conjecture_throughput(const AcceptanceOptions& o) {
  ConjectureParams p;
  p.C = 1e6;
  const auto start = std::chrono::steady_clock::now();
  const ConjectureResult many = conjecture_sum(p, o.workers);
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  const ConjectureResult one = conjecture_sum(p, 1);
  const bool same = many.value.real() == one.value.real() && many.value.imag() == one.value.imag();
  const ScanReport scan = dyadic_scan(p, dyadic_range(10, 20), o.workers);
  bool archived = true;
  std::string where = "not archived";
  if (!o.archive_dir.empty()) {
    where = o.archive_dir + "/conjecture_scan.csv";
    std::ofstream out(where);
    out << scan_csv(p, scan);
    out << "# slope " << fmt("%.17g", scan.slope) << " residual " << fmt("%.17g", scan.residual) << "\n";
    archived = static_cast<bool>(out);
  }
  return {took.count() < 600 && same && archived && scan.records.size() == 11,
          std::to_string(many.terms) + " terms in " + fmt("%.2f", took.count()) + " s on " +
              std::to_string(o.workers) + " workers, identical to 1 worker: " + (same ? "yes" : "no") +
              "; slope of log(C|S|) " + fmt("%.4f", scan.slope) + " (rms " + fmt("%.3f", scan.residual) +
              "), " + where};
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  Outcome (*run)(const AcceptanceOptions&);
};

const Criterion kCriteria[] = {
    {1, "salie fast = direct", 60, salie_equivalence},
    {2, "salie decomposition identity", 30, salie_decomposition_identity},
    {3, "quadratic gauss sum closed form", 30, gauss_closed_form},
    {4, "ramanujan sum evaluation", 10, ramanujan_exact},
    {5, "reciprocity chain", 60, reciprocity_chain},
    {6, "hilbert symbol laws", 10, hilbert_properties},
    {7, "orbit counting", 120, orbit_counting},
    {8, "class numbers", 300, class_numbers},
    {9, "locality of h / alpha_G", 300, locality},
    {10, "partition of unity", 5, partition_of_unity},
    {11, "analytic identities", 5, analytic_identities},
    {12, "conjecture scan throughput", 600, conjecture_throughput},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  for (const Criterion& c : kCriteria) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.id) == options.only.end())
      continue;
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.limit_seconds = c.limit;
    const auto start = std::chrono::steady_clock::now();
    Outcome res;
    try {
      res = c.run(options);
    } catch (const std::exception& e) {
      res = {false, std::string("threw: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.pass = res.pass && r.seconds < c.limit;
    r.detail = res.detail;
    if (res.pass && !r.pass) r.detail += "; over the time limit";
    out.push_back(r);
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s %2d %s (%.2f s / %.0f s): ", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.limit_seconds);
  return head + r.detail;
}

}  // namespace hl
