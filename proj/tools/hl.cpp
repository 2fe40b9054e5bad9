#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hl/acceptance.hpp"
#include "hl/analytic.hpp"
#include "hl/arith.hpp"
#include "hl/cache.hpp"
#include "hl/conjecture.hpp"
#include "hl/expsums.hpp"
#include "hl/hyperbolic.hpp"
#include "hl/quadpairs.hpp"
#include "hl/rng.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kDomain = 2, kInconclusive = 3, kCheckFailed = 4 };

struct Inconclusive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int threads = 1;
  std::uint64_t seed = 42;
  std::string cache_dir;
  std::string format = "csv";
  std::string out;
  std::string config;
};

// Rows of JSON scalars printed as CSV (%.17g for reals) or as an array of objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<hl::Json>> rows;
  bool header = true;
};

std::string csv_cell(const hl::Json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string render(const Table& t, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    hl::Json arr = hl::Json::array();
    for (const auto& row : t.rows) {
      hl::Json obj = hl::Json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
      arr.push_back(obj);
    }
    out << arr.dump() << '\n';
    return out.str();
  }
  if (t.header) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
  }
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
  return out.str();
}

class Runner {
 public:
  explicit Runner(RunConfig& cfg) : cfg_(cfg) {}

  void emit(const Table& t) {
    const std::string text = render(t, cfg_.format);
    if (cfg_.out.empty()) {
      std::fputs(text.c_str(), stdout);
      return;
    }
    std::ofstream f(cfg_.out);
    f << text;
    if (!f) throw hl::DomainError("cannot write " + cfg_.out);
  }

  // Value of op(params) from the cache when configured, else computed (and stored).
  hl::Json cached(const std::string& op, const hl::Json& params, const std::function<hl::Json()>& compute) {
    if (cfg_.cache_dir.empty()) return compute();
    if (!cache_) cache_ = std::make_unique<hl::ResultCache>(cfg_.cache_dir);
    if (auto hit = cache_->lookup(op, params)) return *hit;
    hl::Json v = compute();
    cache_->store(op, params, v);
    return v;
  }

  RunConfig& cfg() { return cfg_; }

 private:
  RunConfig& cfg_;
  std::unique_ptr<hl::ResultCache> cache_;
};

hl::Json complex_json(hl::Complex z) { return hl::Json::array({z.real(), z.imag()}); }

Table complex_row(const hl::Json& v) { return {{"re", "im"}, {{v[0], v[1]}}, false}; }

// key = value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq), v = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
    };
    trim(k);
    trim(v);
    if (!k.empty()) kv[k] = v;
  }
  return kv;
}

struct IdentityReport {
  int trials = 0;
  int failures = 0;
  double max_dev = 0;
};

IdentityReport identity_check(const std::string& which, int trials, std::uint64_t seed) {
  hl::CounterRng rng(seed);
  IdentityReport rep;
  auto record = [&](double dev, double tol) {
    ++rep.trials;
    rep.max_dev = std::max(rep.max_dev, dev);
    rep.failures += !(dev <= tol);
  };
  if (which == "3.17" || which == "salie-decomposition") {
    while (rep.trials < trials) {
      hl::Lemma317Params p;
      p.t1 = rng.uniform(3, 50);
      p.t2 = rng.uniform(3, 50);
      p.D = rng.uniform(1, 200);
      p.gamma = rng.uniform(1, 50);
      p.k = rng.uniform(1, 50);
      p.N = rng.uniform(-400, 400);
      p.C = rng.uniform(-100, 100);
      try {
        hl::validate(p);
      } catch (const hl::DomainError&) {
        continue;
      }
      const double scale = std::sqrt(static_cast<double>(p.gamma * p.D));
      record(std::abs(hl::lemma317_lhs(p) - hl::lemma317_rhs(p)) / scale, 1e-8);
    }
  } else if (which == "salie") {
    for (int i = 0; i < trials; ++i) {
      const std::int64_t c = 2 * rng.uniform(0, 999) + 1;
      const hl::SalieArgs a{rng.uniform(-5 * c, 5 * c), rng.uniform(-5 * c, 5 * c), c};
      const double dev = std::abs(hl::salie_fast(a, hl::factorize(static_cast<std::uint64_t>(c)), 0) - hl::salie_direct(a));
      record(dev / std::sqrt(static_cast<double>(c)), 1e-9);
    }
  } else if (which == "gauss") {
    while (rep.trials < trials) {
      const std::int64_t C = 2 * rng.uniform(0, 249) + 1, B = rng.uniform(1, C), A = rng.uniform(0, C - 1);
      if (hl::gcd_i64(B, C) != 1) continue;
      const double dev = std::abs(hl::gauss_quadratic(A, B, C) - hl::gauss_quadratic(A, B, C, hl::GaussMode::direct));
      record(dev / std::sqrt(static_cast<double>(C)), 1e-9);
    }
  } else if (which == "ramanujan") {
    for (int i = 0; i < trials; ++i) {
      const auto q = static_cast<std::uint64_t>(rng.uniform(1, 500));
      const std::int64_t n = rng.uniform(0, static_cast<std::int64_t>(q));
      record(std::fabs(static_cast<double>(hl::ramanujan(q, n) - hl::ramanujan_direct(q, n))), 0);
    }
  } else if (which == "ab") {
    for (int i = 0; i < trials; ++i) {
      const double S = std::pow(10.0, rng.uniform_real(-3, 3)), T = std::pow(10.0, rng.uniform_real(-3, 3));
      const hl::AB<double> r = hl::ab_funcs(S, T);
      const double want = 1 + S * S + T * T;
      record(std::fabs(r.A * r.B - want) / want, 1e-12);
    }
  } else {
    throw CLI::ValidationError("--lemma", "unknown identity '" + which +
                                              "' (3.17, salie-decomposition, salie, gauss, ramanujan, ab)");
  }
  return rep;
}

int run(int argc, char** argv) {
  CLI::App app{"hl: exponential sums, quadratic form pairs and hyperbolic lattice counts", "hl"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  if (const char* env = std::getenv("HL_CACHE_DIR")) cfg.cache_dir = env;
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for every random draw");
  app.add_option("--cache-dir", cfg.cache_dir, "JSON-lines result cache directory (default $HL_CACHE_DIR)");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--config", cfg.config, "key = value file; flags override it");

  Runner runner(cfg);
  std::function<int()> action;

  std::int64_t m = 1, n = 1, c = 1;
  bool fast = false;
  auto* salie = app.add_subcommand("salie", "Salie sum T(m, n; c) as re,im");
  salie->add_option("--m", m)->required();
  salie->add_option("--n", n)->required();
  salie->add_option("--c", c)->required();
  salie->add_flag("--fast", fast, "closed form through the factorization of c");
  salie->callback([&] {
    action = [&] {
      const hl::Json v = runner.cached("salie", {{"m", m}, {"n", n}, {"c", c}}, [&] {
        const hl::SalieArgs a{m, n, c};
        if (c < 1) throw hl::DomainError("salie: c must be a positive odd integer");
        return complex_json(fast ? hl::salie_fast(a, hl::factorize(static_cast<std::uint64_t>(c)), 0)
                                 : hl::salie_direct(a));
      });
      runner.emit(complex_row(v));
      return int{kOk};
    };
  });

  std::int64_t gA = 0, gB = 1, gC = 1;
  bool direct = false;
  auto* gauss = app.add_subcommand("gauss", "quadratic Gauss sum over x mod C of e((A x + B x^2)/C)");
  gauss->add_option("--A", gA)->required();
  gauss->add_option("--B", gB)->required();
  gauss->add_option("--C", gC)->required();
  gauss->add_flag("--direct", direct, "sum term by term");
  gauss->callback([&] {
    action = [&] {
      const hl::Json v = runner.cached("gauss", {{"A", gA}, {"B", gB}, {"C", gC}}, [&] {
        return complex_json(hl::gauss_quadratic(gA, gB, gC, direct ? hl::GaussMode::direct : hl::GaussMode::closed));
      });
      runner.emit(complex_row(v));
      return int{kOk};
    };
  });

  std::uint64_t rq = 1;
  std::int64_t rn = 0;
  auto* ram = app.add_subcommand("ramanujan", "Ramanujan sum c_q(n)");
  ram->add_option("--q", rq)->required()->check(CLI::PositiveNumber);
  ram->add_option("--n", rn)->required();
  ram->callback([&] {
    action = [&] {
      const hl::Json v = runner.cached("ramanujan", {{"q", rq}, {"n", rn}}, [&] { return hl::Json(hl::ramanujan(rq, rn)); });
      runner.emit({{"value"}, {{v}}, false});
      return int{kOk};
    };
  });

  std::int64_t ha = 1, hb = 1;
  std::uint64_t hp = 2;
  auto* hil = app.add_subcommand("hilbert", "local Hilbert symbol (a, b)_p");
  hil->add_option("--a", ha)->required();
  hil->add_option("--b", hb)->required();
  hil->add_option("--p", hp)->required();
  hil->callback([&] {
    action = [&] {
      runner.emit({{"value"}, {{hl::hilbert_p(ha, hb, hp)}}, false});
      return int{kOk};
    };
  });

  std::int64_t d1 = 0, d2 = 0, ct = 0, box = 0, growth = 4;
  auto* cls = app.add_subcommand("classnum", "h(d1, d2, t): classes of form pairs; exit 3 when inconclusive");
  cls->add_option("--d1", d1)->required();
  cls->add_option("--d2", d2)->required();
  cls->add_option("--t", ct)->required();
  cls->add_option("--box", box, "coefficient box (0 = default)");
  cls->add_option("--growth", growth, "work-limit growth factor");
  cls->callback([&] {
    action = [&] {
      const hl::Json v = runner.cached(
          "classnum", {{"d1", d1}, {"d2", d2}, {"t", ct}, {"box", box}, {"growth", growth}}, [&] {
            const hl::ClassNumberResult r = hl::class_number(d1, d2, ct, {box, growth});
            if (r.status != hl::ClassStatus::ok) return hl::Json(nullptr);
            return hl::Json(r.h);
          });
      if (v.is_null()) throw Inconclusive("classnum: budget exhausted before the count settled");
      runner.emit({{"d1", "d2", "t", "h"}, {{d1, d2, ct, v}}, false});
      return int{kOk};
    };
  });

  std::int64_t at1 = 3, at2 = 3, af = 1;
  std::uint64_t aG = 4;
  auto* alpha = app.add_subcommand("alpha-g", "alpha_G(t1, t2, f)");
  alpha->add_option("--t1", at1)->required();
  alpha->add_option("--t2", at2)->required();
  alpha->add_option("--f", af)->required();
  alpha->add_option("--G", aG)->required();
  alpha->callback([&] {
    action = [&] {
      const hl::Json v = runner.cached("alpha-g", {{"t1", at1}, {"t2", at2}, {"f", af}, {"G", aG}},
                                       [&] { return hl::Json(hl::alpha_G(at1, at2, af, aG)); });
      runner.emit({{"value"}, {{v}}, false});
      return int{kOk};
    };
  });

  std::string lemma;
  int trials = 1000;
  auto* ident = app.add_subcommand("identity-check", "randomized check of an identity; exit 4 on failure");
  ident->add_option("--lemma", lemma, "3.17 (salie-decomposition), salie, gauss, ramanujan or ab")->required();
  ident->add_option("--trials", trials)->check(CLI::PositiveNumber);
  ident->callback([&] {
    action = [&] {
      const IdentityReport r = identity_check(lemma, trials, cfg.seed);
      const bool ok = r.failures == 0;
      runner.emit({{"identity", "result", "trials", "failures", "max_dev"},
                   {{lemma, ok ? "pass" : "fail", r.trials, r.failures, r.max_dev}},
                   true});
      if (!ok) throw CheckFailed("identity-check: " + std::to_string(r.failures) + " failures");
      return int{kOk};
    };
  });

  double cx = 0, cy = 1, cX = 2;
  bool by_trace = false;
  auto* circle = app.add_subcommand("circle", "orbit count N(z, X)");
  circle->add_option("--x", cx);
  circle->add_option("--y", cy)->required();
  circle->add_option("--X", cX)->required();
  circle->add_flag("--by-trace", by_trace, "one row per |trace|");
  circle->callback([&] {
    action = [&] {
      const hl::CountResult r = hl::count_orbit({cx, cy}, cX, cfg.threads);
      if (by_trace) {
        Table t{{"abs_trace", "count"}, {}, true};
        for (const auto& [tr, k] : r.byAbsTrace) t.rows.push_back({tr, k});
        runner.emit(t);
      } else {
        runner.emit({{"x", "y", "X", "N", "err"}, {{cx, cy, cX, r.total, static_cast<double>(r.total) - 3 * cX}}, true});
      }
      return int{kOk};
    };
  });

  hl::Rect rect{-0.5, 0.5, 1.0, 2.0};
  double lX = 100;
  int grid = 8;
  auto* l2 = app.add_subcommand("local-l2", "mean square of N(z, X) - 3X over a rectangle in F");
  l2->add_option("--x0", rect.x0);
  l2->add_option("--x1", rect.x1);
  l2->add_option("--y0", rect.y0);
  l2->add_option("--y1", rect.y1);
  l2->add_option("--X", lX)->required();
  l2->add_option("--grid", grid)->check(CLI::PositiveNumber);
  l2->callback([&] {
    action = [&] {
      runner.emit({{"X", "grid", "value"}, {{lX, grid, hl::local_l2(rect, lX, grid, cfg.threads)}}, true});
      return int{kOk};
    };
  });

  hl::ConjectureParams cp;
  int lo = 10, hi = 20;
  std::vector<double> Cs;
  bool timing = false;
  auto* conj = app.add_subcommand("conjecture-scan", "dyadic scan of the smoothed Salie average");
  conj->add_option("--m", cp.m);
  conj->add_option("--n", cp.n);
  conj->add_option("--L", cp.L);
  conj->add_option("--K", cp.K);
  conj->add_option("--r", cp.r);
  conj->add_option("--B", cp.B);
  conj->add_option("--alpha", cp.alpha);
  conj->add_option("--lo", lo, "smallest C is 2^lo");
  conj->add_option("--hi", hi, "largest C is 2^hi");
  conj->add_option("--C", Cs, "explicit C values instead of the dyadic range");
  conj->add_flag("--timing", timing, "write wall-clock seconds (otherwise 0, keeping output reproducible)");
  conj->callback([&] {
    action = [&] {
      const std::vector<double> grid_c = Cs.empty() ? hl::dyadic_range(lo, hi) : Cs;
      const hl::ScanReport rep = hl::dyadic_scan(cp, grid_c, cfg.threads);
      Table t{{"C", "m", "n", "L", "K", "r", "alpha", "re", "im", "abs", "terms", "seconds"}, {}, true};
      for (const hl::ScanRecord& s : rep.records)
        t.rows.push_back({s.C, cp.m, cp.n, cp.L, cp.K, cp.r, cp.alpha, s.sumRe, s.sumIm, s.absSum, s.terms,
                          timing ? s.seconds : 0.0});
      runner.emit(t);
      std::fprintf(stderr, "slope %.17g residual %.17g fitted %d\n", rep.slope, rep.residual, rep.fitted);
      return int{kOk};
    };
  });

  hl::StatementParams sp;
  auto* stmt = app.add_subcommand("statement-scan", "four-fold twisted Salie sum over a box");
  stmt->add_option("--K", sp.K);
  stmt->add_option("--u", sp.u);
  stmt->add_option("--r1", sp.r1);
  stmt->add_option("--r2", sp.r2);
  stmt->add_option("--r3", sp.r3);
  stmt->add_option("--r4", sp.r4);
  stmt->add_option("--X", sp.X);
  stmt->add_option("--C", sp.C);
  stmt->add_option("--a", sp.a);
  stmt->add_option("--M", sp.M);
  stmt->add_option("--kappa", sp.kappa);
  stmt->add_option("--max-terms", sp.max_terms);
  stmt->callback([&] {
    action = [&] {
      const hl::Json params = {{"K", sp.K}, {"u", sp.u}, {"r1", sp.r1}, {"r2", sp.r2}, {"r3", sp.r3},
                               {"r4", sp.r4}, {"X", sp.X}, {"C", sp.C}, {"a", sp.a}, {"M", sp.M},
                               {"kappa", sp.kappa}};
      const hl::Json v = runner.cached("statement", params, [&] {
        const hl::StatementResult r = hl::statement_sum(sp, cfg.threads);
        return hl::Json::array({r.value.real(), r.value.imag(), r.terms, r.clipped});
      });
      runner.emit({{"re", "im", "terms", "clipped"}, {{v[0], v[1], v[2], v[3]}}, true});
      return int{kOk};
    };
  });

  std::vector<int> only;
  std::string archive = ".";
  auto* self = app.add_subcommand("selftest", "acceptance checks 1-12; nonzero exit on any failure");
  self->add_option("--only", only, "criteria to run");
  self->add_option("--archive-dir", archive, "where the conjecture scan CSV is written");
  self->callback([&] {
    action = [&] {
      hl::AcceptanceOptions o;
      o.seed = cfg.seed;
      o.workers = cfg.threads;
      o.archive_dir = archive;
      o.only = only;
      int failed = 0;
      for (const hl::CriterionResult& r : hl::run_acceptance(o)) {
        std::printf("%s\n", hl::format_result(r).c_str());
        std::fflush(stdout);
        failed += !r.pass;
      }
      return failed == 0 ? int{kOk} : int{kCheckFailed};
    };
  });

  // Config values are appended after the subcommand unless the flag was given.
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") cfg.config = args[i + 1];
  if (!cfg.config.empty()) {
    CLI::App* sub = nullptr;
    for (const std::string& a : args)
      if (!a.empty() && a[0] != '-' && (sub = app.get_subcommand_no_throw(a))) break;
    for (const auto& [k, v] : read_config(cfg.config)) {
      const std::string flag = "--" + k;
      bool given = false;
      for (const std::string& a : args) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
      if (given) continue;
      const bool known = (sub && sub->get_option_no_throw(flag)) || app.get_option_no_throw(flag);
      if (!known) {
        std::fprintf(stderr, "warning: config key '%s' ignored\n", k.c_str());
        continue;
      }
      args.push_back(flag);
      args.push_back(v);
    }
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? int{kOk} : int{kUsage};
  }
  try {
    return action();
  } catch (const Inconclusive& e) {
    std::fprintf(stderr, "inconclusive: %s\n", e.what());
    return kInconclusive;
  } catch (const CheckFailed& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kCheckFailed;
  } catch (const hl::DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kDomain;
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "usage: %s\n", e.what());
    return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
