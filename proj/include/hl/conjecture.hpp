#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hl/arith.hpp"
#include "hl/numeric.hpp"

namespace hl {

/// exp(4 - 1/(t(1-t))) on 0 < t < 1, else 0; equals 1 at t = 1/2.
double unit_bump(double t);

struct ConjectureParams {
  std::int64_t m = 1;
  std::int64_t n = 1;
  std::int64_t L = 2;
  std::int64_t K = 1;
  std::int64_t r = 1;
  double B = 1;
  double alpha = 0;
  double C = 1000;
  /// Weight f(c); only c in [C, 2C] is ever evaluated. Empty means
  /// unit_bump(c/C - 1).
  std::function<double(double)> weight;
};

/// Throws DomainError unless m, n, K, r, C >= 1, L even, gcd(L, K r) = 1 and
/// |alpha| <= B.
void validate(const ConjectureParams& p);

struct ConjectureResult {
  Complex value;
  std::int64_t terms = 0;
  /// sum over c of |f(c)| d(c) sqrt(c gcd(m, n, c)) / C, an upper bound for |value|.
  double envelope = 0;
  /// False when the congruence classes admit no c (then value = 0).
  bool feasible = true;
};

/// (1/C) sum over c in [C, 2C], c = r (mod L), K | c of
/// f(c) T(m, L'n; c) e(sqrt(mn) alpha / c), with L L' = 1 (mod c).
/// Admissible c are enumerated by one CRT stride, factored by a window
/// sieve, and summed in chunks of 2^16 combined in index order, so the
/// result does not depend on the worker count.
ConjectureResult conjecture_sum(const ConjectureParams& p, int workers = 1);

/// Same sum by testing every integer c in the window and calling
/// salie_direct; a reference for moderate C.
ConjectureResult conjecture_sum_direct(const ConjectureParams& p);

struct ScanRecord {
  double C = 0;
  double sumRe = 0;
  double sumIm = 0;
  double absSum = 0;
  std::int64_t terms = 0;
  double seconds = 0;
  double envelope = 0;
};

struct ScanReport {
  std::vector<ScanRecord> records;
  /// Least-squares slope of log(C absSum) against log C over records with
  /// absSum > 0, and the root-mean-square residual of the fit.
  double slope = 0;
  double residual = 0;
  int fitted = 0;
};

/// One record per C in Cs (which must increase).
ScanReport dyadic_scan(const ConjectureParams& base, const std::vector<double>& Cs,
                       int workers = 1);

/// 2^lo, 2^(lo+1), ..., 2^hi.
std::vector<double> dyadic_range(int lo, int hi);

/// Header C,m,n,L,K,r,alpha,re,im,abs,terms,seconds with %.17g values. With
/// timing = false the seconds column is written as 0.
std::string scan_csv(const ConjectureParams& base, const ScanReport& report, bool timing = true);

struct StatementParams {
  std::int64_t K = 1;
  std::int64_t u = 4;
  std::int64_t r1 = 0;
  std::int64_t r2 = 0;
  std::int64_t r3 = 0;
  std::int64_t r4 = 1;
  double X = 2000;
  double C = 100;
  double a = 40;
  double M = 2;
  int kappa = 1;
  /// g(t1, t2, m, c), supported in a <= t1, t2 <= 2a, M <= m <= 2M,
  /// C <= c <= 2C. Empty means the product of unit_bump over the four boxes.
  std::function<double(double, double, double, double)> g;
  std::int64_t max_terms = 100'000'000;

  std::int64_t L() const { return 4 * u * u; }
};

/// Throws DomainError unless u > 0, 4 | u, gcd(r4, u) = 1, gcd(K, L) = 1,
/// kappa = +-1 and C, a, M >= 1.
void validate(const StatementParams& p);

struct StatementResult {
  Complex value;
  std::int64_t terms = 0;
  /// Tuples dropped because t^2 - 4 > X leaves the phase undefined.
  std::int64_t clipped = 0;
};

/// Sum over the box with t1 = r1, t2 = r2, m = r3, c = r4 (mod u), K | t1^2 - 4
/// and K | c of g e(m sqrt(t1^2-4) sqrt(t2^2-4) h_kappa / (c u))
/// T((t1^2-4) m^2, L'(t2^2-4); c). The term count is checked against
/// max_terms before any sum is evaluated.
StatementResult statement_sum(const StatementParams& p, int workers = 1);

/// Plain nested loops over every integer in the box with salie_direct.
StatementResult statement_sum_direct(const StatementParams& p);

}  // namespace hl
