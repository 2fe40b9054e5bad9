#include "hl/quadpairs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hl {

namespace {

using i128 = __int128;

// Raised internally when an exact computation would leave 64-bit range.
struct Overflow : std::runtime_error {
  Overflow() : std::runtime_error("integer overflow") {}
};

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw Overflow();
  return static_cast<std::int64_t>(v);
}

i128 isqrt128(i128 n) {
  if (n < 0) return -1;
  auto r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(std::int64_t n) {
  if (n < 0) return false;
  const i128 r = isqrt128(n);
  return r * r == n;
}

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

std::int64_t max_abs(const QuadForm& q) {
  return std::max({iabs(q.a), iabs(q.b), iabs(q.c)});
}

std::int64_t max_abs(const FormPair& p) { return std::max(max_abs(p.q1), max_abs(p.q2)); }

Mat2 inverse(const Mat2& m) { return {m.d, -m.b, -m.c, m.a}; }

// Forms Q2 with disc d2 and codiscriminant t against r, for one middle
// coefficient B. Requires r.a != 0 and r.c != 0.
template <class Fn>
void partners_at(const QuadForm& r, std::int64_t d2, std::int64_t t, std::int64_t B, Fn&& emit) {
  const i128 a = r.a, b = r.b, c = r.c;
  const i128 lin = b * B - t;
  const i128 delta = lin * lin - 4 * a * c * (static_cast<i128>(B) * B - d2);
  if (delta < 0) return;
  const i128 root = isqrt128(delta);
  if (root * root != delta) return;
  for (int sign : {1, -1}) {
    if (sign == -1 && root == 0) break;
    const i128 num = lin + sign * root;
    if (num % (4 * c) != 0) continue;
    const i128 A = num / (4 * c);
    const i128 numC = b * B - 2 * c * A - t;
    if (numC % (2 * a) != 0) continue;
    const i128 C = numC / (2 * a);
    const i128 disc = static_cast<i128>(B) * B - 4 * A * C;
    const i128 co = b * B - 2 * a * C - 2 * A * c;
    if (disc != d2 || co != t) continue;
    emit(QuadForm{narrow(A), B, narrow(C)});
  }
}

struct IndefiniteClass {
  QuadForm rep;
  Mat2 automorph;  // generator of the stabilizer modulo -1
};

bool is_reduced_indefinite(const QuadForm& q, std::int64_t d) {
  // |sqrt(d) - 2|a|| < b < sqrt(d), with sqrt(d) irrational.
  if (q.b <= 0) return false;
  const i128 b = q.b, a2 = 2 * static_cast<i128>(iabs(q.a));
  if (b * b >= d) return false;
  if ((a2 + b) * (a2 + b) <= d) return false;
  if (a2 - b >= 0 && (a2 - b) * (a2 - b) >= d) return false;
  return true;
}

std::vector<QuadForm> reduced_indefinite(std::int64_t d) {
  std::vector<QuadForm> out;
  const auto fl = static_cast<std::int64_t>(isqrt128(d));
  for (std::int64_t b = 1; b <= fl; ++b) {
    if ((b - d) % 2 != 0) continue;
    const std::int64_t ac = (b * b - d) / 4;
    const std::int64_t m = -ac;
    for (std::int64_t g = 1; g * g <= m; ++g) {
      if (m % g != 0) continue;
      for (std::int64_t div : {g, m / g}) {
        if (div == m / g && g * g == m && div != g) continue;
        for (std::int64_t sign : {1, -1}) {
          const QuadForm q{sign * div, b, ac / (sign * div)};
          if (is_reduced_indefinite(q, d)) out.push_back(q);
        }
        if (g * g == m) break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// One step of the reduction operator on reduced forms, with its matrix.
std::pair<QuadForm, Mat2> rho(const QuadForm& q, std::int64_t d) {
  const auto fl = static_cast<std::int64_t>(isqrt128(d));
  const std::int64_t twoc = 2 * iabs(q.c);
  const std::int64_t bp = fl - static_cast<std::int64_t>(mod_floor(fl + q.b, twoc));
  const std::int64_t s = (bp + q.b) / (2 * q.c);
  const Mat2 tau{0, -1, 1, s};
  return {act(tau, q), tau};
}

std::vector<IndefiniteClass> indefinite_classes(std::int64_t d) {
  std::vector<IndefiniteClass> out;
  std::set<QuadForm> seen;
  for (const QuadForm& start : reduced_indefinite(d)) {
    if (seen.count(start)) continue;
    Mat2 m{};
    QuadForm cur = start;
    do {
      seen.insert(cur);
      auto [next, tau] = rho(cur, d);
      m = m * tau;
      cur = next;
    } while (cur != start);
    out.push_back({start, m});
  }
  return out;
}

std::vector<QuadForm> reduced_definite(std::int64_t d) {
  std::vector<QuadForm> out;
  const std::int64_t n = -d;
  for (std::int64_t a = 1; 3 * a * a <= n; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b - d;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      out.push_back({a, b, c});
      out.push_back({-a, -b, -c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Mat2> definite_stabilizer(const QuadForm& r) {
  std::vector<Mat2> out;
  for (std::int64_t a = -2; a <= 2; ++a)
    for (std::int64_t b = -2; b <= 2; ++b)
      for (std::int64_t c = -2; c <= 2; ++c)
        for (std::int64_t d = -2; d <= 2; ++d) {
          const Mat2 g{a, b, c, d};
          if (g.det() == 1 && act(g, r) == r) out.push_back(g);
        }
  return out;
}

class WorkCounter {
 public:
  explicit WorkCounter(std::int64_t limit) : limit_(limit) {}
  bool spend(std::int64_t n) {
    used_ += n;
    return used_ <= limit_;
  }

 private:
  std::int64_t limit_;
  std::int64_t used_ = 0;
};

long double form_at(const QuadForm& q, long double x) {
  return (static_cast<long double>(q.a) * x + static_cast<long double>(q.b)) * x +
         static_cast<long double>(q.c);
}

// Count Stab(r)-orbits of partners for r indefinite of non-square disc d1.
// Partners are counted in a fundamental window of the automorph, measured by
// log|Q(theta-)| - log|Q(theta+)| at the roots of r.
bool count_indefinite(const IndefiniteClass& cls, std::int64_t d1, std::int64_t d2,
                      std::int64_t t, WorkCounter& work, std::int64_t& count) {
  const QuadForm& r = cls.rep;
  const Mat2& m = cls.automorph;
  const long double sd = std::sqrt(static_cast<long double>(d1));
  const long double a = r.a, b = r.b;
  const long double th_p = (-b + sd) / (2 * a);
  const long double th_m = (-b - sd) / (2 * a);
  const long double mu_p = m.c * th_p + m.d;
  const long double mu_m = m.c * th_m + m.d;
  const long double shift = std::fabs(2 * std::log(std::fabs(mu_m / mu_p)));
  const long double eta = 1e-9L * std::max<long double>(1, shift);
  const long double lo = -shift / 2 - eta, hi = shift / 2 + eta;

  auto balance = [&](const QuadForm& q) {
    return std::log(std::fabs(form_at(q, th_m))) - std::log(std::fabs(form_at(q, th_p)));
  };
  auto in_window = [&](const QuadForm& q) {
    const long double v = balance(q);
    return v >= lo && v <= hi;
  };

  const long double p0 =
      std::fabs((static_cast<long double>(d1) * d2 - static_cast<long double>(t) * t) /
                (4 * a * a));
  const long double k = std::sqrt(p0) * std::exp(hi / 2) * (1 + 1e-6L) + 1e-6L;
  const long double coef_b = a * (-b + sd) / d1;
  const long double coef_a = 2 * a / sd - coef_b;
  const long double bw = (std::fabs(coef_a) + std::fabs(coef_b)) * k;
  const long double bc = static_cast<long double>(t) * b / d1;
  if (bw > 4e15L) return false;
  const auto bmin = static_cast<std::int64_t>(std::floor(bc - bw)) - 1;
  const auto bmax = static_cast<std::int64_t>(std::ceil(bc + bw)) + 1;
  if (!work.spend(bmax - bmin + 1)) return false;

  const Mat2 minv = inverse(m);
  std::set<QuadForm> canon;
  for (std::int64_t B = bmin; B <= bmax; ++B) {
    partners_at(r, d2, t, B, [&](const QuadForm& q) {
      if (!in_window(q)) return;
      QuadForm best = q;
      for (const Mat2& g : {m, minv}) {
        const QuadForm img = act(g, q);
        if (in_window(img)) best = std::min(best, img);
      }
      canon.insert(best);
    });
  }
  count += static_cast<std::int64_t>(canon.size());
  return true;
}

bool count_definite(const QuadForm& r, std::int64_t d1, std::int64_t d2, std::int64_t t,
                    WorkCounter& work, std::int64_t& count) {
  const long double nw =
      (static_cast<long double>(d1) * d2 - static_cast<long double>(t) * t) / d1;
  if (nw < 0) return true;
  const long double a = iabs(r.a), c = iabs(r.c);
  const long double bw = 2 * a * std::sqrt(nw * c / (a * std::fabs(static_cast<long double>(d1)))) + 1;
  const long double bc = static_cast<long double>(t) * r.b / d1;
  if (bw > 4e15L) return false;
  const auto bmin = static_cast<std::int64_t>(std::floor(bc - bw)) - 1;
  const auto bmax = static_cast<std::int64_t>(std::ceil(bc + bw)) + 1;
  if (!work.spend(bmax - bmin + 1)) return false;
  const std::vector<Mat2> stab = definite_stabilizer(r);
  std::set<QuadForm> canon;
  for (std::int64_t B = bmin; B <= bmax; ++B) {
    partners_at(r, d2, t, B, [&](const QuadForm& q) {
      QuadForm best = q;
      for (const Mat2& g : stab) best = std::min(best, act(g, q));
      canon.insert(best);
    });
  }
  count += static_cast<std::int64_t>(canon.size());
  return true;
}

bool valid_disc(std::int64_t d) {
  const std::int64_t r = static_cast<std::int64_t>(mod_floor(d, 4));
  return r == 0 || r == 1;
}

bool exact_capable(std::int64_t d) { return d < 0 || (d > 0 && !is_square(d)); }

}  // namespace

std::int64_t codiscriminant(const QuadForm& q1, const QuadForm& q2) {
  return narrow(static_cast<i128>(q1.b) * q2.b - 2 * static_cast<i128>(q1.a) * q2.c -
                2 * static_cast<i128>(q2.a) * q1.c);
}

std::int64_t codiscriminant(const FormPair& p) { return codiscriminant(p.q1, p.q2); }

QuadForm act(const Mat2& tau, const QuadForm& q) {
  if (tau.det() != 1) throw DomainError("act: matrix must have determinant 1");
  const i128 A = q.a, B = q.b, C = q.c;
  const i128 a = tau.a, b = tau.b, c = tau.c, d = tau.d;
  return {narrow(A * a * a + B * a * c + C * c * c),
          narrow(2 * A * a * b + B * (a * d + b * c) + 2 * C * c * d),
          narrow(A * b * b + B * b * d + C * d * d)};
}

FormPair act(const Mat2& tau, const FormPair& p) { return {act(tau, p.q1), act(tau, p.q2)}; }

std::int64_t default_box(std::int64_t d1, std::int64_t d2, std::int64_t t) {
  return std::max<std::int64_t>(32, 4 * std::max({iabs(d1), iabs(d2), iabs(t)}));
}

std::vector<QuadForm> class_representatives(std::int64_t d) {
  if (!valid_disc(d)) return {};
  if (d < 0) return reduced_definite(d);
  if (d == 0 || is_square(d))
    throw DomainError("class_representatives: discriminant must be negative or a non-square");
  std::vector<QuadForm> out;
  for (const auto& cls : indefinite_classes(d)) out.push_back(cls.rep);
  return out;
}

std::vector<QuadForm> forms_in_box(std::int64_t d, std::int64_t box) {
  std::vector<QuadForm> out;
  for (std::int64_t a = -box; a <= box; ++a) {
    for (std::int64_t b = -box; b <= box; ++b) {
      if (a == 0) {
        if (static_cast<i128>(b) * b != d) continue;
        for (std::int64_t c = -box; c <= box; ++c) out.push_back({0, b, c});
        continue;
      }
      const i128 num = static_cast<i128>(b) * b - d;
      if (num % (4 * a) != 0) continue;
      const i128 c = num / (4 * a);
      if (c < -box || c > box) continue;
      out.push_back({a, b, static_cast<std::int64_t>(c)});
    }
  }
  return out;
}

namespace {

// Components of the S, T^{+-1} graph on pairs within `big`, seeded by the
// pairs whose coefficients lie in [-box, box]. Returns -1 on state overflow.
std::int64_t closure_count(std::int64_t d1, std::int64_t d2, std::int64_t t, std::int64_t box,
                           std::int64_t big) {
  const auto f1 = forms_in_box(d1, box);
  const auto f2 = forms_in_box(d2, box);
  const Mat2 gens[] = {{0, -1, 1, 0}, {1, 1, 0, 1}, {1, -1, 0, 1}};
  std::set<FormPair> visited;
  std::int64_t components = 0;
  constexpr std::size_t kMaxStates = 4'000'000;
  for (const QuadForm& q1 : f1) {
    for (const QuadForm& q2 : f2) {
      if (codiscriminant(q1, q2) != t) continue;
      const FormPair start{q1, q2};
      if (!visited.insert(start).second) continue;
      ++components;
      std::deque<FormPair> queue{start};
      while (!queue.empty()) {
        const FormPair cur = queue.front();
        queue.pop_front();
        for (const Mat2& g : gens) {
          const FormPair nxt = act(g, cur);
          if (max_abs(nxt) > big) continue;
          if (visited.insert(nxt).second) queue.push_back(nxt);
        }
        if (visited.size() > kMaxStates) return -1;
      }
    }
  }
  return components;
}

}  // namespace

ClassNumberResult class_number_closure(std::int64_t d1, std::int64_t d2, std::int64_t t,
                                       ClassBudget budget) {
  const std::int64_t box = budget.box > 0 ? budget.box : default_box(d1, d2, t);
  const std::int64_t growth = std::max<std::int64_t>(1, budget.growth);
  ClassNumberResult res;
  res.box = box;
  res.method = "closure";
  try {
    const std::int64_t h1 = closure_count(d1, d2, t, box, box * growth);
    const std::int64_t h2 = h1 < 0 ? -1 : closure_count(d1, d2, t, 2 * box, 2 * box * growth);
    res.h = std::max<std::int64_t>(h1, 0);
    if (h1 < 0 || h2 != h1) res.status = ClassStatus::inconclusive;
  } catch (const Overflow&) {
    res.status = ClassStatus::inconclusive;
  }
  return res;
}

ClassNumberResult class_number(std::int64_t d1, std::int64_t d2, std::int64_t t,
                               ClassBudget budget) {
  if (static_cast<i128>(t) * t == static_cast<i128>(d1) * d2)
    throw DomainError("class_number: t^2 = d1 d2 gives infinitely many classes");
  const std::int64_t box = budget.box > 0 ? budget.box : default_box(d1, d2, t);
  ClassNumberResult res;
  res.box = box;
  if (!valid_disc(d1) || !valid_disc(d2)) {
    res.method = "empty";
    return res;
  }
  if (!exact_capable(d1) && exact_capable(d2)) {
    res = class_number(d2, d1, t, budget);
    return res;
  }
  if (!exact_capable(d1)) {
    // Both discriminants are squares or zero.
    return class_number_closure(d1, d2, t, {box, budget.growth});
  }
  const i128 span = static_cast<i128>(box) * std::max<std::int64_t>(1, budget.growth);
  WorkCounter work(narrow(std::min<i128>(16 * span * span, std::numeric_limits<std::int64_t>::max() / 2)));
  std::int64_t count = 0;
  try {
    if (d1 < 0) {
      res.method = "definite";
      for (const QuadForm& r : reduced_definite(d1)) {
        if (!count_definite(r, d1, d2, t, work, count)) {
          res.status = ClassStatus::inconclusive;
          break;
        }
      }
    } else {
      res.method = "indefinite";
      for (const auto& cls : indefinite_classes(d1)) {
        if (!count_indefinite(cls, d1, d2, t, work, count)) {
          res.status = ClassStatus::inconclusive;
          break;
        }
      }
    }
  } catch (const Overflow&) {
    res.status = ClassStatus::inconclusive;
  }
  res.h = count;
  return res;
}

std::int64_t alpha_G(std::int64_t t1, std::int64_t t2, std::int64_t f, std::uint64_t G) {
  if (t1 <= 2 || t2 <= 2) throw DomainError("alpha_G: t1, t2 must exceed 2");
  if (G == 0) throw DomainError("alpha_G: G must be positive");
  const i128 p = static_cast<i128>(t1 * t1 - 4) * (t2 * t2 - 4);
  const i128 m = static_cast<i128>(f) * f - p;
  if (m <= 0) throw DomainError("alpha_G: need f^2 > (t1^2-4)(t2^2-4)");
  std::int64_t sum = 0;
  for (std::uint64_t D : divisors(factorize(static_cast<std::uint64_t>(narrow(m))))) {
    if (gcd_u64(D, G) != 1) continue;
    if (D % 2 == 0) throw DomainError("alpha_G: an even divisor is coprime to G");
    sum += jacobi(t1 * t1 - 4, static_cast<std::int64_t>(D));
  }
  return sum;
}

std::uint64_t gamma_GR(std::uint64_t G, std::uint64_t R) {
  i128 rad = 1;
  for (const PrimePower& pp : factorize(G).factors) rad *= pp.prime;
  const i128 v = static_cast<i128>(16) * R * G * rad;
  if (v > static_cast<i128>(std::numeric_limits<std::int64_t>::max())) throw DomainError("gamma_GR: overflow");
  return static_cast<std::uint64_t>(v);
}

LocalProfile local_profile(std::int64_t t1, std::int64_t t2, std::int64_t f) {
  if (t1 <= 2 || t2 <= 2) throw DomainError("local_profile: t1, t2 must exceed 2");
  const std::int64_t d1 = t1 * t1 - 4;
  const i128 m = static_cast<i128>(f) * f - static_cast<i128>(d1) * (t2 * t2 - 4);
  if (m == 0) throw DomainError("local_profile: f^2 = (t1^2-4)(t2^2-4)");
  const std::int64_t m64 = narrow(m);
  LocalProfile p;
  p.E = gcd_u64(static_cast<std::uint64_t>(d1), static_cast<std::uint64_t>(iabs(f)));
  for (const PrimePower& pp : factorize(2 * p.E).factors) {
    p.G *= ipow(pp.prime, nu_p(pp.prime, m64));
    p.R *= ipow(pp.prime, nu_p(pp.prime, d1));
  }
  p.gammaGR = gamma_GR(p.G, p.R);
  p.A = mod_floor(t1, p.gammaGR);
  p.B = mod_floor(t2, p.gammaGR);
  p.C = mod_floor(f, p.gammaGR);
  return p;
}

std::uint64_t padding_modulus(std::int64_t t1, std::int64_t t2, std::int64_t f) {
  const LocalProfile prof = local_profile(t1, t2, f);
  const std::int64_t m = narrow(static_cast<i128>(f) * f -
                                static_cast<i128>(t1 * t1 - 4) * (t2 * t2 - 4));
  i128 mod = 1;
  for (const PrimePower& pp : factorize(prof.G).factors) {
    const unsigned e = nu_p(pp.prime, m) + 1 + (pp.prime == 2 ? 4 : 0);
    for (unsigned i = 0; i < e; ++i) {
      mod *= pp.prime;
      if (mod > static_cast<i128>(std::numeric_limits<std::int64_t>::max()))
        throw DomainError("padding_modulus: overflow");
    }
  }
  return static_cast<std::uint64_t>(mod);
}

bool in_residue_set(std::uint64_t G, std::uint64_t R, std::int64_t A, std::int64_t B,
                    std::int64_t C) {
  const auto gamma = static_cast<std::int64_t>(gamma_GR(G, R));
  if (A < 0 || B < 0 || C < 0 || A >= gamma || B >= gamma || C >= gamma) return false;
  const i128 m = static_cast<i128>(C) * C - static_cast<i128>(A * A - 4) * (B * B - 4);
  if (m == 0 || A * A == 4 || m % 4 != 0) return false;
  // Valuations of m only matter at primes of G, so reduce it modulo G^2 first.
  std::uint64_t g_part = 1, r_part = 1;
  for (const PrimePower& pp : factorize(G).factors) {
    i128 v = m;
    while (v % static_cast<i128>(pp.prime) == 0) {
      v /= static_cast<i128>(pp.prime);
      g_part *= pp.prime;
      if (g_part > G) return false;
    }
    r_part *= ipow(pp.prime, nu_p(pp.prime, A * A - 4));
  }
  return g_part == G && r_part == R;
}

std::int64_t good_prime_factor(std::int64_t t1, std::uint64_t p, unsigned beta) {
  if (p == 2 || !is_prime(p)) throw DomainError("good_prime_factor: p must be an odd prime");
  const int chi = jacobi(t1 * t1 - 4, static_cast<std::int64_t>(p));
  if (chi == 0) throw DomainError("good_prime_factor: p divides t1^2-4 (bad prime)");
  if (chi == 1) return static_cast<std::int64_t>(beta) + 1;
  return beta % 2 == 0 ? 1 : 0;
}

namespace {

struct KappaData {
  std::int64_t n;  // (f^2 - (t1^2-4)(t2^2-4)) / G
  std::int64_t q;  // (t1^2-4) / R
};

KappaData kappa_inputs(std::int64_t t1, std::int64_t t2, std::int64_t f, std::uint64_t G,
                       std::uint64_t R) {
  if (t1 <= 2 || t2 <= 2) throw DomainError("kappa: t1, t2 must exceed 2");
  const std::int64_t d1 = t1 * t1 - 4;
  const i128 m = static_cast<i128>(f) * f - static_cast<i128>(d1) * (t2 * t2 - 4);
  if (m <= 0) throw DomainError("kappa: need f^2 > (t1^2-4)(t2^2-4)");
  if (G % 4 != 0) throw DomainError("kappa: 4 must divide G");
  const LocalProfile prof = local_profile(t1, t2, f);
  if (prof.G != G || prof.R != R)
    throw DomainError("kappa: (G, R) does not match the profile of (t1, t2, f)");
  return {narrow(m / static_cast<i128>(G)), d1 / static_cast<std::int64_t>(R)};
}

}  // namespace

int kappa(std::int64_t t1, std::int64_t t2, std::int64_t f, std::uint64_t G, std::uint64_t R) {
  const KappaData k = kappa_inputs(t1, t2, f, G, R);
  const int sign = (((k.n - 1) / 2) % 2 != 0 && ((k.q - 1) / 2) % 2 != 0) ? -1 : 1;
  return jacobi(static_cast<std::int64_t>(R), k.n) * sign *
         jacobi(static_cast<std::int64_t>(G), k.q);
}

int kappa_at_unit_divisor(std::int64_t t1, std::int64_t t2, std::int64_t f, std::uint64_t G) {
  const LocalProfile prof = local_profile(t1, t2, f);
  const KappaData k = kappa_inputs(t1, t2, f, G, prof.R);
  return jacobi(t1 * t1 - 4, k.n);
}

bool complementary_divisor_check(std::int64_t t1, std::int64_t t2, std::int64_t f,
                                 std::uint64_t G, std::uint64_t D) {
  const LocalProfile prof = local_profile(t1, t2, f);
  const KappaData k = kappa_inputs(t1, t2, f, G, prof.R);
  if (D == 0 || k.n % static_cast<std::int64_t>(D) != 0 || gcd_u64(D, G) != 1)
    throw DomainError("complementary_divisor_check: D must divide the form and be coprime to G");
  const std::int64_t d1 = t1 * t1 - 4;
  const std::int64_t dstar = k.n / static_cast<std::int64_t>(D);
  return jacobi(d1, static_cast<std::int64_t>(D)) ==
         jacobi(d1, dstar) * kappa(t1, t2, f, G, prof.R);
}

std::int64_t matched_partner(std::int64_t t1, std::int64_t t2, std::int64_t f, int max_steps) {
  const LocalProfile prof = local_profile(t1, t2, f);
  const std::uint64_t pad = padding_modulus(t1, t2, f);
  const i128 m = static_cast<i128>(prof.gammaGR) / gcd_u64(prof.gammaGR, pad) * pad;
  for (int k = 1; k <= max_steps; ++k) {
    const i128 cand = f + k * m;
    if (cand > std::numeric_limits<std::int32_t>::max()) break;
    const LocalProfile other = local_profile(t1, t2, static_cast<std::int64_t>(cand));
    if (other.G == prof.G && other.R == prof.R) return static_cast<std::int64_t>(cand);
  }
  return 0;
}

LocalityRatio locality_ratio(std::int64_t t1, std::int64_t t2, std::int64_t f,
                             ClassBudget budget) {
  LocalityRatio out;
  const LocalProfile prof = local_profile(t1, t2, f);
  out.alpha = alpha_G(t1, t2, f, prof.G);
  const ClassNumberResult h = class_number(t1 * t1 - 4, t2 * t2 - 4, f, budget);
  out.h = h.h;
  if (h.status != ClassStatus::ok) {
    out.status = LocalityRatio::Status::inconclusive;
    return out;
  }
  if (out.alpha == 0) {
    out.status = LocalityRatio::Status::undefined;
    return out;
  }
  const std::int64_t g = std::max<std::int64_t>(1, gcd_i64(out.h, out.alpha));
  out.num = out.h / g;
  out.den = out.alpha / g;
  if (out.den < 0) {
    out.num = -out.num;
    out.den = -out.den;
  }
  return out;
}

std::string class_table_csv(const std::vector<ClassRow>& rows) {
  std::ostringstream os;
  os << "d1,d2,t,h,status,box\n";
  for (const ClassRow& r : rows) {
    const bool ok = r.result.status == ClassStatus::ok;
    os << r.d1 << ',' << r.d2 << ',' << r.t << ',';
    if (ok) os << r.result.h;
    os << ',' << (ok ? "ok" : "inconclusive") << ',' << r.result.box << '\n';
  }
  return os.str();
}

}  // namespace hl
