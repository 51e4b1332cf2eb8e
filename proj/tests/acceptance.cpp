// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Every numeric check runs against test-side oracles (lgamma
// binomials, direct summation, independent bisection), never against the
// library's own internals.

#include <sys/wait.h>

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "pascalspiral/class_criteria.hpp"
#include "pascalspiral/explorer.hpp"
#include "pascalspiral/inclusion.hpp"
#include "pascalspiral/pascal_core.hpp"
#include "pascalspiral/verify.hpp"

using namespace pascalspiral;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned acceptance tolerances.
constexpr double kIdentityRelTol = 1e-10;  // closed identities vs brute sums
constexpr double kOracleRelTol = 1e-9;     // closed criteria vs certified sums
constexpr double kScalingRelTol = 1e-12;   // operator lhs vs scale * base lhs
constexpr double kThresholdTol = 1e-10;    // thresholds vs algebraic roots
constexpr double kStrictMargin = 1e-3;     // "clearly in/out of class" cut
constexpr int kGeometrySets = 100;         // parameter sets per side
constexpr int kDiskPoints = 1000;          // sample points per in-class set

int g_failures = 0;

void report(int criterion, const std::string& description, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": "
            << description;
  if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
  std::cout << '\n';
  if (!ok) ++g_failures;
}

bool rel_close(double got, double want, double rel_tol, double extra = 0.0) {
  return std::abs(got - want) <= rel_tol * std::max(1.0, std::abs(want)) + extra;
}

std::vector<Criterion> function_criteria() {
  return {Criterion::PhiTsp, Criterion::PhiUct, Criterion::GUct, Criterion::GTsp};
}

MembershipVerdict numeric_verdict(Criterion which, const PascalParams& p,
                                  const ClassParams& c,
                                  const std::optional<RTauParams>& r) {
  CoefficientSeries stream = CoefficientSeries::zero();
  switch (which) {
    case Criterion::PhiTsp:
    case Criterion::PhiUct:
      stream = phi_coefficients(p);
      break;
    case Criterion::GUct:
    case Criterion::GTsp:
      stream = g_coefficients(p);
      break;
    default:
      stream = apply_operator(extremal_coefficients(*r), p);
      break;
  }
  return c.kind == ClassKind::Tsp ? tsp_coefficient_criterion(stream, c, 1e-12)
                                  : uct_coefficient_criterion(stream, c, 1e-12);
}

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PASCALSPIRAL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// ---- criterion 1: summation identities vs brute force ----------------------

void criterion_1() {
  std::string detail;
  int bad = 0;
  for (int m = 1; m <= 10; ++m) {
    for (double q : oracles::q_grid()) {
      PascalParams p(m, q);
      // The four binomial-series identities.
      struct IdCase {
        GeometricIdentity id;
        int order;
      };
      const IdCase ids[] = {{GeometricIdentity::OrderM, m},
                            {GeometricIdentity::OrderMMinus1, m - 1},
                            {GeometricIdentity::OrderMPlus1, m + 1},
                            {GeometricIdentity::OrderMPlus2, m + 2}};
      for (const auto& [id, order] : ids) {
        if (order < 1) continue;
        double brute = oracles::sum(
            [&, k = order](int n) { return oracles::binomial(n + k - 1, k - 1) * std::pow(q, n); },
            0);
        if (!rel_close(closed_geometric_sum(id, p), brute, kIdentityRelTol)) {
          ++bad;
          if (detail.empty()) {
            detail = "identity order " + std::to_string(order) + " at m=" + std::to_string(m) +
                     " q=" + std::to_string(q);
          }
        }
      }
      // The three moment reductions driving the closed criteria.
      auto ms = moment_sums(p);
      auto bn = [&](int n) { return oracles::coefficient(n, m, q); };
      const std::pair<double, double> reductions[] = {
          {ms.s0, oracles::sum(bn)},
          {ms.s1, oracles::sum([&](int n) { return (n - 1) * bn(n); })},
          {ms.s2, oracles::sum([&](int n) { return (n - 1.0) * (n - 2.0) * bn(n); })},
      };
      for (const auto& [closed, brute] : reductions) {
        if (!rel_close(closed, brute, kIdentityRelTol)) {
          ++bad;
          if (detail.empty()) {
            detail = "moment reduction at m=" + std::to_string(m) + " q=" + std::to_string(q);
          }
        }
      }
    }
  }
  report(1, "closed summation identities and moment reductions match brute-force "
            "sums to 1e-10 over m in 1..10, q in 0.05..0.9",
         bad == 0, detail);
}

// ---- criteria 2-4: closed criteria vs certified coefficient sums -----------

void oracle_criterion(int number, Criterion which, const std::string& description) {
  std::string detail;
  int bad = 0;
  for (int m : oracles::m_grid()) {
    if (m == 1 && criterion_needs_m_above_one(which)) continue;
    for (double q : oracles::q_grid()) {
      for (double alpha : oracles::alpha_grid()) {
        for (double beta : oracles::beta_grid()) {
          PascalParams p(m, q);
          ClassParams c(alpha, beta, criterion_class(which));
          auto closed = evaluate_criterion(which, p, c, std::nullopt);
          auto numeric = numeric_verdict(which, p, c, std::nullopt);
          bool ok = rel_close(numeric.lhs, closed.lhs, kOracleRelTol, numeric.error_bound) &&
                    numeric.in_class == closed.in_class;
          if (!ok) {
            ++bad;
            if (detail.empty()) {
              std::ostringstream os;
              os << "m=" << m << " q=" << q << " alpha=" << alpha << " beta=" << beta
                 << " closed=" << closed.lhs << " numeric=" << numeric.lhs;
              detail = os.str();
            }
          }
        }
      }
    }
  }
  report(number, description, bad == 0, detail);
}

// ---- criterion 5: operator criteria soundness -------------------------------

void criterion_5() {
  std::string detail;
  int bad = 0;
  const std::pair<double, double> ab_cases[] = {{1.0, -1.0}, {0.5, 0.0}, {1.0, 0.0}};
  const double tau_moduli[] = {0.5, 1.0, 2.0};
  const std::pair<double, double> angles[] = {{0.0, 0.0}, {kPi / 6, 0.25}};
  for (const auto& [A, B] : ab_cases) {
    for (double tau : tau_moduli) {
      RTauParams r(A, B, {tau, 0.0});
      for (int m : oracles::m_grid()) {
        for (double q : {0.05, 0.25, 0.5, 0.75, 0.9}) {
          for (const auto& [alpha, beta] : angles) {
            PascalParams p(m, q);
            auto image = apply_operator(extremal_coefficients(r), p);

            // UCT operator criterion vs the certified sum of the image.
            {
              ClassParams c(alpha, beta, ClassKind::Uct);
              auto closed = operator_uct_criterion(p, c, r);
              auto numeric = uct_coefficient_criterion(image, c, 1e-12);
              if (!rel_close(numeric.lhs, closed.lhs, kOracleRelTol, numeric.error_bound)) {
                ++bad;
                if (detail.empty()) detail = "uct sum mismatch";
              }
              // Scaling law: lhs = (A - B)|tau| * base criterion lhs.
              auto base = phi_tsp_criterion(p, ClassParams(alpha, beta, ClassKind::Tsp));
              if (!rel_close(closed.lhs, r.coefficient_scale() * base.lhs, kScalingRelTol)) {
                ++bad;
                if (detail.empty()) detail = "uct scaling law violated";
              }
            }
            // TSP operator criterion (m >= 2) vs the certified sum.
            if (m > 1) {
              ClassParams c(alpha, beta, ClassKind::Tsp);
              auto closed = operator_tsp_criterion(p, c, r);
              auto numeric = tsp_coefficient_criterion(image, c, 1e-12);
              if (!rel_close(numeric.lhs, closed.lhs, kOracleRelTol, numeric.error_bound)) {
                ++bad;
                if (detail.empty()) detail = "tsp sum mismatch";
              }
              auto base = g_tsp_criterion(p, ClassParams(alpha, beta, ClassKind::Tsp));
              if (!rel_close(closed.lhs, r.coefficient_scale() * base.lhs, kScalingRelTol)) {
                ++bad;
                if (detail.empty()) detail = "tsp scaling law violated";
              }
            }
          }
        }
      }
    }
  }
  report(5, "operator criteria equal the certified worst-case image sums to 1e-9 "
            "and scale the base criteria by (A-B)|tau| to 1e-12",
         bad == 0, detail);
}

// ---- criterion 6: thresholds vs algebraic roots ------------------------------

void criterion_6() {
  std::string detail;
  bool ok = true;

  auto check_root = [&](Criterion which, int m, double want, const char* label) {
    auto res = find_q_threshold(which, m, 0.0, 0.0, std::nullopt, 1e-12);
    if (res.status != ThresholdStatus::Bracketed ||
        std::abs(res.q_star - want) > kThresholdTol) {
      ok = false;
      if (detail.empty()) detail = label;
    }
  };

  check_root(Criterion::PhiTsp, 1, 2.0 - std::sqrt(3.0), "quadratic root (phi, tsp)");
  check_root(Criterion::GTsp, 2, (3.0 - std::sqrt(5.0)) / 2.0, "quadratic root (g, tsp)");

  double cubic_root = oracles::bisect(
      [](double q) { return -(q * q * q - 4.0 * q * q + 8.0 * q - 1.0); }, 0.0, 0.5, 1e-14);
  check_root(Criterion::PhiUct, 1, cubic_root, "cubic root (phi, uct)");

  report(6, "bisection thresholds land on the three algebraic boundary roots "
            "within 1e-10 (cubic root from an in-test bisection oracle)",
         ok, detail);
}

// ---- criterion 7: pointwise geometry matches the verdicts -------------------

void criterion_7() {
  struct ParamSet {
    Criterion which;
    int m;
    double q;
    double alpha;
    double beta;
  };
  // In-class pool: any tilt qualifies, because a passing coefficient sum is
  // sufficient for membership at every alpha.
  std::vector<ParamSet> in_class;
  for (Criterion which : function_criteria()) {
    for (int m : oracles::m_grid()) {
      if (m == 1 && criterion_needs_m_above_one(which)) continue;
      for (double q : oracles::q_grid()) {
        for (double alpha : oracles::alpha_grid()) {
          for (double beta : oracles::beta_grid()) {
            if ((int)in_class.size() >= kGeometrySets) break;
            PascalParams p(m, q);
            ClassParams c(alpha, beta, criterion_class(which));
            auto v = evaluate_criterion(which, p, c, std::nullopt);
            if (v.margin > kStrictMargin) in_class.push_back({which, m, q, alpha, beta});
          }
        }
      }
    }
  }

  // Out-of-class pool: untilted classes only.  A failing coefficient sum forces
  // a real-axis violation when alpha = 0; for tilted classes the sum test is
  // one-sided, and a function can stay inside the class even when the sum
  // criterion rejects it, so no pointwise witness exists to find.
  std::vector<ParamSet> out_class;
  for (Criterion which : function_criteria()) {
    for (int m : oracles::m_grid()) {
      if (m == 1 && criterion_needs_m_above_one(which)) continue;
      for (double q : oracles::q_grid()) {
        for (double beta : oracles::beta_grid()) {
          if ((int)out_class.size() >= kGeometrySets) break;
          PascalParams p(m, q);
          ClassParams c(0.0, beta, criterion_class(which));
          auto v = evaluate_criterion(which, p, c, std::nullopt);
          if (v.margin < -kStrictMargin) out_class.push_back({which, m, q, 0.0, beta});
        }
      }
    }
  }

  std::string detail;
  bool ok = (int)in_class.size() == kGeometrySets && (int)out_class.size() == kGeometrySets;
  if (!ok) detail = "grid did not yield 100 sets per side";

  const auto grid = spiral_disk_grid(kDiskPoints, 0.999);
  for (const auto& s : in_class) {
    if (!ok) break;
    PascalParams p(s.m, s.q);
    ClassParams c(s.alpha, s.beta, criterion_class(s.which));
    const bool g_target = s.which == Criterion::GUct || s.which == Criterion::GTsp;
    for (auto zc : grid) {
      DiskPoint z(zc);
      double margin = spiral_margin(g_target ? g_jet(z, p, 1e-13) : phi_jet(z, p, 1e-13), z, c);
      if (!(margin > 0.0)) {
        ok = false;
        std::ostringstream os;
        os << "in-class margin " << margin << " at |z|=" << std::abs(zc) << " for "
           << criterion_name(s.which) << " m=" << s.m << " q=" << s.q;
        detail = os.str();
        break;
      }
    }
  }

  for (const auto& s : out_class) {
    if (!ok) break;
    PascalParams p(s.m, s.q);
    ClassParams c(s.alpha, s.beta, criterion_class(s.which));
    auto witness = necessity_witness(s.which, p, c);
    bool found = witness.has_value();
    double margin = 0.0;
    if (found) {
      DiskPoint z{std::complex<double>(*witness, 0.0)};
      const bool g_target = s.which == Criterion::GUct || s.which == Criterion::GTsp;
      margin = spiral_margin(g_target ? g_jet(z, p, 1e-13) : phi_jet(z, p, 1e-13), z, c);
    }
    if (!found || !(margin < 0.0)) {
      ok = false;
      std::ostringstream os;
      os << "no violating point for " << criterion_name(s.which) << " m=" << s.m
         << " q=" << s.q << " alpha=" << s.alpha << " beta=" << s.beta;
      detail = os.str();
    }
  }

  report(7, "100 strictly in-class sets keep spiral margin > 0 at 1000 disk points; "
            "100 strictly out-of-class untilted sets admit a violating real witness",
         ok, detail);
}

// ---- criterion 8: structural invariants -------------------------------------

void criterion_8() {
  std::string detail;
  bool ok = true;
  const RTauParams rtau(1.0, -1.0, {1.0, 0.0});

  for (int m : oracles::m_grid()) {
    for (double alpha : oracles::alpha_grid()) {
      for (double beta : oracles::beta_grid()) {
        bool phi_left = false;
        bool g_left = false;
        for (double q : oracles::q_grid()) {
          PascalParams p(m, q);
          ClassParams tsp(alpha, beta, ClassKind::Tsp);
          ClassParams uct(alpha, beta, ClassKind::Uct);

          // UCT membership implies TSP membership for the same function.
          auto pu = phi_uct_criterion(p, uct);
          auto pt = phi_tsp_criterion(p, tsp);
          if (pu.in_class && !pt.in_class) {
            ok = false;
            if (detail.empty()) detail = "phi UCT verdict without TSP verdict";
          }
          if (m > 1) {
            auto gu = g_uct_criterion(p, uct);
            auto gt = g_tsp_criterion(p, tsp);
            if (gu.in_class && !gt.in_class) {
              ok = false;
              if (detail.empty()) detail = "g UCT verdict without TSP verdict";
            }
          }

          // Verdicts are monotone along q: once lost, membership stays lost.
          if (!pu.in_class) phi_left = true;
          if (phi_left && pu.in_class) {
            ok = false;
            if (detail.empty()) detail = "phi UCT verdict not monotone in q";
          }
          auto gv = g_uct_criterion(p, uct);
          if (!gv.in_class) g_left = true;
          if (g_left && gv.in_class) {
            ok = false;
            if (detail.empty()) detail = "g UCT verdict not monotone in q";
          }

          // beta = 0 specializations are bit-identical to the general path.
          if (beta == 0.0) {
            for (Criterion which :
                 {Criterion::PhiTsp, Criterion::PhiUct, Criterion::GUct, Criterion::GTsp,
                  Criterion::OperatorTsp, Criterion::OperatorUct}) {
              if (m == 1 && criterion_needs_m_above_one(which)) continue;
              std::optional<RTauParams> r;
              if (criterion_needs_rtau(which)) r = rtau;
              ClassParams c(alpha, 0.0, criterion_class(which));
              auto general = evaluate_criterion(which, p, c, r);
              auto special = criterion_needs_rtau(which)
                                 ? beta_zero_criterion(p, alpha, which, rtau)
                                 : beta_zero_criterion(p, alpha, which);
              if (special.lhs != general.lhs || special.rhs != general.rhs ||
                  special.margin != general.margin || special.in_class != general.in_class) {
                ok = false;
                if (detail.empty()) {
                  detail = std::string("beta=0 path differs for ") +
                           std::string(criterion_name(which));
                }
              }
            }
          }
        }
      }
    }
  }

  report(8, "UCT verdicts imply TSP verdicts, verdicts are monotone in q, and "
            "beta = 0 specializations are bit-identical to the general path",
         ok, detail);
}

// ---- criterion 9: CLI behaviour ---------------------------------------------

void criterion_9() {
  std::string detail;
  bool ok = true;

  // Self-verification exits zero on a clean build.
  if (run_cli("verify").exit_code != 0) {
    ok = false;
    detail = "verify subcommand failed";
  }

  const std::string table_cmd =
      "table --m 1,2,5 --q 0.05,0.15,0.35,0.55,0.85 --alpha 0,0.5235987755982988 "
      "--beta 0,0.25 --criterion phi-tsp,phi-uct,g-uct,operator-uct";

  auto csv = run_cli(table_cmd);
  auto csv_again = run_cli(table_cmd);
  auto js = run_cli(table_cmd + " --format json");
  auto js_again = run_cli(table_cmd + " --format json");
  if (csv.exit_code != 0 || js.exit_code != 0) {
    ok = false;
    if (detail.empty()) detail = "table subcommand failed";
  }
  if (ok && (csv.output != csv_again.output || js.output != js_again.output)) {
    ok = false;
    detail = "reruns are not byte-identical";
  }

  if (ok) {
    // Every CSV real survives a parse/print round trip, and the JSON stream
    // carries bit-identical doubles in the same order.
    auto parsed = nlohmann::json::parse(js.output);
    std::istringstream in(csv.output);
    std::string line;
    std::getline(in, line);  // header
    size_t row = 0;
    while (std::getline(in, line) && ok) {
      std::vector<std::string> fields;
      std::string field;
      std::istringstream fl(line);
      while (std::getline(fl, field, ',')) fields.push_back(field);
      if (fields.size() != 12 || row >= parsed.size()) {
        ok = false;
        detail = "row shape mismatch";
        break;
      }
      const char* keys[] = {"q", "alpha", "beta", "lhs", "rhs", "margin"};
      const int cols[] = {1, 2, 3, 7, 8, 9};
      for (int i = 0; i < 6 && ok; ++i) {
        const std::string& text = fields[cols[i]];
        double value = std::strtod(text.c_str(), nullptr);
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), value);
        if (std::string(buf, res.ptr) != text) {
          ok = false;
          detail = "csv real '" + text + "' does not round-trip";
        } else if (parsed[row][keys[i]].get<double>() != value) {
          ok = false;
          detail = std::string("json/csv value mismatch on ") + keys[i];
        }
      }
      ++row;
    }
    if (ok && row != parsed.size()) {
      ok = false;
      detail = "row count mismatch between csv and json";
    }
  }

  report(9, "CLI self-verification exits 0, reruns are byte-identical, and "
            "CSV/JSON reals round-trip bit-exactly",
         ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  oracle_criterion(2, Criterion::PhiTsp,
                   "closed phi TSP criterion matches its certified coefficient sum "
                   "to 1e-9 with identical verdicts over the full grid");
  oracle_criterion(3, Criterion::PhiUct,
                   "closed phi UCT criterion matches its certified coefficient sum "
                   "to 1e-9 with identical verdicts over the full grid");
  {
    // Criterion 4 covers both integral-transform criteria.
    std::string detail;
    int bad = 0;
    for (Criterion which : {Criterion::GUct, Criterion::GTsp}) {
      for (int m : oracles::m_grid()) {
        if (m == 1 && criterion_needs_m_above_one(which)) continue;
        for (double q : oracles::q_grid()) {
          for (double alpha : oracles::alpha_grid()) {
            for (double beta : oracles::beta_grid()) {
              PascalParams p(m, q);
              ClassParams c(alpha, beta, criterion_class(which));
              auto closed = evaluate_criterion(which, p, c, std::nullopt);
              auto numeric = numeric_verdict(which, p, c, std::nullopt);
              if (!rel_close(numeric.lhs, closed.lhs, kOracleRelTol, numeric.error_bound) ||
                  numeric.in_class != closed.in_class) {
                ++bad;
                if (detail.empty()) {
                  std::ostringstream os;
                  os << criterion_name(which) << " m=" << m << " q=" << q;
                  detail = os.str();
                }
              }
            }
          }
        }
      }
    }
    report(4, "closed integral-transform criteria match their certified sums over "
              "the b_n/n stream to 1e-9 with identical verdicts",
           bad == 0, detail);
  }
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();

  if (g_failures > 0) {
    std::cerr << g_failures << " acceptance criterion(s) failed\n";
    return 1;
  }
  return 0;
}
