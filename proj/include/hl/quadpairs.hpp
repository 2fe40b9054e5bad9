#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "hl/arith.hpp"

namespace hl {

/// A X^2 + B XY + C Y^2.
struct QuadForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  std::int64_t disc() const { return b * b - 4 * a * c; }
  auto operator<=>(const QuadForm&) const = default;
};

struct FormPair {
  QuadForm q1;
  QuadForm q2;

  auto operator<=>(const FormPair&) const = default;
};

/// Row-major 2x2 integer matrix (a b; c d).
struct Mat2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  bool operator==(const Mat2&) const = default;
};

/// B1 B2 - 2 A1 C2 - 2 A2 C1; equals disc(q) when both forms are q.
std::int64_t codiscriminant(const QuadForm& q1, const QuadForm& q2);
std::int64_t codiscriminant(const FormPair& p);

/// Q^tau(X, Y) = Q(aX + bY, cX + dY). A right action: (Q^s)^t = Q^(st).
QuadForm act(const Mat2& tau, const QuadForm& q);
FormPair act(const Mat2& tau, const FormPair& p);

struct ClassBudget {
  std::int64_t box = 0;  // 0 selects default_box(d1, d2, t)
  std::int64_t growth = 4;
};

std::int64_t default_box(std::int64_t d1, std::int64_t d2, std::int64_t t);

enum class ClassStatus { ok, inconclusive };

struct ClassNumberResult {
  ClassStatus status = ClassStatus::ok;
  std::int64_t h = 0;
  std::int64_t box = 0;
  std::string method;
};

/// Number of SL2(Z)-classes of pairs (Q1, Q2) with disc Q_i = d_i and
/// codiscriminant t. Exact whenever one discriminant is negative or a positive
/// non-square; otherwise the box closure below is used and may be inconclusive.
ClassNumberResult class_number(std::int64_t d1, std::int64_t d2, std::int64_t t,
                               ClassBudget budget = {});

/// Box-closure count: pairs with coefficients in [-box, box], joined when
/// S or T^{+-1} connects them inside the box enlarged by `growth`. Orbits are
/// infinite, so the count is accepted only when doubling the box leaves it
/// unchanged; otherwise the status is inconclusive.
ClassNumberResult class_number_closure(std::int64_t d1, std::int64_t d2, std::int64_t t,
                                       ClassBudget budget);

/// One reduced representative per SL2(Z)-class of forms of discriminant d
/// (negative, or positive non-square). Imprimitive forms are included.
std::vector<QuadForm> class_representatives(std::int64_t d);

/// All forms of discriminant d with every coefficient in [-box, box].
std::vector<QuadForm> forms_in_box(std::int64_t d, std::int64_t box);

/// Sum over D | f^2 - (t1^2-4)(t2^2-4), gcd(D, G) = 1 of ((t1^2-4)/D).
std::int64_t alpha_G(std::int64_t t1, std::int64_t t2, std::int64_t f, std::uint64_t G);

struct LocalProfile {
  std::uint64_t E = 1;
  std::uint64_t G = 1;
  std::uint64_t R = 1;
  std::uint64_t gammaGR = 16;
  std::uint64_t A = 0;  // residues of t1, t2, f modulo gammaGR
  std::uint64_t B = 0;
  std::uint64_t C = 0;

  bool operator==(const LocalProfile&) const = default;
};

LocalProfile local_profile(std::int64_t t1, std::int64_t t2, std::int64_t f);

/// gamma(G, R) = 16 R G prod_{p | G} p.
std::uint64_t gamma_GR(std::uint64_t G, std::uint64_t R);

/// prod over p | G of p^(beta_p + 1 + nu_p(16)), beta_p = nu_p(f^2 - (t1^2-4)(t2^2-4)).
std::uint64_t padding_modulus(std::int64_t t1, std::int64_t t2, std::int64_t f);

/// Whether (A, B, C) lies in the residue set H_{G,R}.
bool in_residue_set(std::uint64_t G, std::uint64_t R, std::int64_t A, std::int64_t B,
                    std::int64_t C);

/// sum_{j=0}^{beta} ((t1^2-4)/p)^j for an odd prime p not dividing t1^2-4.
std::int64_t good_prime_factor(std::int64_t t1, std::uint64_t p, unsigned beta);

/// The reciprocity sign from its closed form
/// (R/N) (-1)^{((N-1)/2)((Q-1)/2)} (G/Q), N = (f^2-(t1^2-4)(t2^2-4))/G, Q = (t1^2-4)/R.
int kappa(std::int64_t t1, std::int64_t t2, std::int64_t f, std::uint64_t G, std::uint64_t R);

/// The same sign read off the divisor relation at D = 1: ((t1^2-4)/N).
int kappa_at_unit_divisor(std::int64_t t1, std::int64_t t2, std::int64_t f, std::uint64_t G);

/// ((t1^2-4)/D) == ((t1^2-4)/D*) kappa with D* = (f^2-(t1^2-4)(t2^2-4))/(D G).
bool complementary_divisor_check(std::int64_t t1, std::int64_t t2, std::int64_t f,
                                 std::uint64_t G, std::uint64_t D);

/// Smallest f' = f + k M (1 <= k <= max_steps) with the same G and R as f, where
/// M = lcm(gamma(G, R), padding_modulus(t1, t2, f)). Returns 0 when none is found.
std::int64_t matched_partner(std::int64_t t1, std::int64_t t2, std::int64_t f,
                             int max_steps = 64);

struct LocalityRatio {
  enum class Status { ok, undefined, inconclusive } status = Status::ok;
  std::int64_t h = 0;
  std::int64_t alpha = 0;
  std::int64_t num = 0;  // h / alpha in lowest terms, den > 0
  std::int64_t den = 1;
};

LocalityRatio locality_ratio(std::int64_t t1, std::int64_t t2, std::int64_t f,
                             ClassBudget budget = {});

struct ClassRow {
  std::int64_t d1, d2, t;
  ClassNumberResult result;
};

/// CSV with header d1,d2,t,h,status,box.
std::string class_table_csv(const std::vector<ClassRow>& rows);

}  // namespace hl
