// Command-line front end: membership checks, series evaluation, threshold
// search, parameter sweeps, self-verification, and pmf queries, with
// deterministic CSV/JSON output.

#include <charconv>
#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pascalspiral/class_criteria.hpp"
#include "pascalspiral/explorer.hpp"
#include "pascalspiral/inclusion.hpp"
#include "pascalspiral/pascal_core.hpp"
#include "pascalspiral/verify.hpp"

namespace ps = pascalspiral;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr char kRowHeader[] =
    "m,q,alpha,beta,class_kind,criterion,criterion_kind,lhs,rhs,margin,verdict,method";

// Shortest representation that parses back to the identical double.
std::string fmt_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

const char* class_kind_name(ps::ClassKind kind) {
  return kind == ps::ClassKind::Tsp ? "tsp" : "uct";
}

const char* kind_name(ps::CriterionKind kind) {
  return kind == ps::CriterionKind::Iff ? "iff" : "sufficient";
}

const char* method_name(ps::VerdictMethod method) {
  switch (method) {
    case ps::VerdictMethod::ClosedForm:
      return "closed_form";
    case ps::VerdictMethod::NumericSum:
      return "numeric_sum";
    case ps::VerdictMethod::GeometricSample:
      return "geometric_sample";
  }
  return "unknown";
}

const char* status_name(ps::ThresholdStatus status) {
  switch (status) {
    case ps::ThresholdStatus::Bracketed:
      return "bracketed";
    case ps::ThresholdStatus::Saturated:
      return "saturated";
    case ps::ThresholdStatus::NotAttainable:
      return "not_attainable";
  }
  return "unknown";
}

void emit_rows(const std::vector<ps::SweepRow>& rows, const std::string& format) {
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json obj;
      obj["m"] = row.m;
      obj["q"] = row.q;
      obj["alpha"] = row.alpha;
      obj["beta"] = row.beta;
      obj["class_kind"] = class_kind_name(row.class_kind);
      obj["criterion"] = std::string(ps::criterion_name(row.criterion));
      obj["criterion_kind"] = kind_name(row.criterion_kind);
      obj["lhs"] = row.lhs;
      obj["rhs"] = row.rhs;
      obj["margin"] = row.margin;
      obj["verdict"] = row.verdict;
      obj["method"] = method_name(row.method);
      arr.push_back(std::move(obj));
    }
    std::cout << arr.dump(2) << '\n';
    return;
  }
  std::cout << kRowHeader << '\n';
  for (const auto& row : rows) {
    std::cout << row.m << ',' << fmt_real(row.q) << ',' << fmt_real(row.alpha) << ','
              << fmt_real(row.beta) << ',' << class_kind_name(row.class_kind) << ','
              << ps::criterion_name(row.criterion) << ',' << kind_name(row.criterion_kind)
              << ',' << fmt_real(row.lhs) << ',' << fmt_real(row.rhs) << ','
              << fmt_real(row.margin) << ',' << row.verdict << ','
              << method_name(row.method) << '\n';
  }
}

double to_radians(double angle, bool degrees) {
  return degrees ? angle * std::numbers::pi / 180.0 : angle;
}

struct RTauFlags {
  double upper = 1.0;
  double lower = -1.0;
  double tau_re = 1.0;
  double tau_im = 0.0;

  ps::RTauParams build() const {
    return ps::RTauParams(upper, lower, std::complex<double>(tau_re, tau_im));
  }
  void attach(CLI::App* cmd) {
    cmd->add_option("--A", upper, "subordination upper bound A (default 1)");
    cmd->add_option("--B", lower, "subordination lower bound B (default -1)");
    cmd->add_option("--tau-re", tau_re, "real part of tau (default 1)");
    cmd->add_option("--tau-im", tau_im, "imaginary part of tau (default 0)");
  }
};

struct CheckArgs {
  std::string target;
  std::string cls;
  int m = 1;
  double q = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  RTauFlags rtau;
  bool verify = false;
  bool degrees = false;
  std::string format = "csv";
};

struct EvalArgs {
  std::string target = "phi";
  int m = 1;
  double q = 0.0;
  double z_re = 0.0;
  double z_im = 0.0;
  double tol = 1e-12;
  std::string format = "csv";
};

struct BoundaryArgs {
  std::string criterion;
  int m = 1;
  double alpha = 0.0;
  double beta = 0.0;
  double tol = 1e-12;
  RTauFlags rtau;
  bool verify = false;
  bool degrees = false;
  std::string format = "csv";
};

struct TableArgs {
  std::vector<int> ms;
  std::vector<double> qs;
  std::vector<double> alphas{0.0};
  std::vector<double> betas{0.0};
  std::vector<std::string> criteria;
  RTauFlags rtau;
  bool degrees = false;
  std::string format = "csv";
};

struct PmfArgs {
  int m = 1;
  double q = 0.0;
  int k = 0;
  int count = 1;
  std::string format = "csv";
};

int run_check(const CheckArgs& a) {
  const auto crit = ps::criterion_from_name(a.target + "-" + a.cls);
  if (!crit) throw std::invalid_argument("unknown target/class combination");
  const double alpha = to_radians(a.alpha, a.degrees);
  const ps::PascalParams p(a.m, a.q);
  const ps::ClassParams c(alpha, a.beta, ps::criterion_class(*crit));
  std::optional<ps::RTauParams> r;
  if (ps::criterion_needs_rtau(*crit)) r = a.rtau.build();
  const ps::MembershipVerdict v = ps::evaluate_criterion(*crit, p, c, r);
  ps::SweepRow row{a.m,    a.q,      alpha,    a.beta,
                   c.kind, *crit,    v.criterion_kind,
                   v.lhs,  v.rhs,    v.margin,
                   std::string(v.verdict_label()), v.method};
  emit_rows({row}, a.format);
  if (a.verify) {
    const ps::EquivalenceReport rep = ps::criterion_equivalence(*crit, p, c, r, 1e-9);
    if (!rep.consistent) {
      std::cerr << "verification mismatch: closed=" << fmt_real(rep.closed_lhs)
                << " numeric=" << fmt_real(rep.numeric_lhs)
                << " abs_diff=" << fmt_real(rep.abs_diff)
                << " numeric_error=" << fmt_real(rep.numeric_error) << '\n';
      return 3;
    }
  }
  return 0;
}

int run_eval(const EvalArgs& a) {
  const ps::PascalParams p(a.m, a.q);
  const ps::DiskPoint z(std::complex<double>(a.z_re, a.z_im));
  std::complex<double> value;
  if (a.target == "psi") {
    value = ps::eval_psi(z, p, a.tol);
  } else if (a.target == "phi") {
    value = ps::eval_phi(z, p, a.tol);
  } else if (a.target == "phi-deriv") {
    value = ps::eval_phi_deriv(z, p, a.tol);
  } else {
    value = ps::eval_g(z, p, a.tol);
  }
  if (a.format == "json") {
    ordered_json arr = ordered_json::array();
    ordered_json obj;
    obj["target"] = a.target;
    obj["m"] = a.m;
    obj["q"] = a.q;
    obj["z_re"] = a.z_re;
    obj["z_im"] = a.z_im;
    obj["value_re"] = value.real();
    obj["value_im"] = value.imag();
    arr.push_back(std::move(obj));
    std::cout << arr.dump(2) << '\n';
  } else {
    std::cout << "target,m,q,z_re,z_im,value_re,value_im\n"
              << a.target << ',' << a.m << ',' << fmt_real(a.q) << ','
              << fmt_real(a.z_re) << ',' << fmt_real(a.z_im) << ','
              << fmt_real(value.real()) << ',' << fmt_real(value.imag()) << '\n';
  }
  return 0;
}

int run_boundary(const BoundaryArgs& a) {
  const ps::Criterion crit = *ps::criterion_from_name(a.criterion);
  const double alpha = to_radians(a.alpha, a.degrees);
  std::optional<ps::RTauParams> r;
  if (ps::criterion_needs_rtau(crit)) r = a.rtau.build();
  const ps::ThresholdResult res = ps::find_q_threshold(crit, a.m, alpha, a.beta, r, a.tol);
  if (a.format == "json") {
    ordered_json arr = ordered_json::array();
    ordered_json obj;
    obj["criterion"] = a.criterion;
    obj["m"] = a.m;
    obj["alpha"] = alpha;
    obj["beta"] = a.beta;
    obj["q_star"] = res.q_star;
    obj["bracket_width"] = res.bracket_width;
    obj["evaluations"] = res.evaluations;
    obj["status"] = status_name(res.status);
    arr.push_back(std::move(obj));
    std::cout << arr.dump(2) << '\n';
  } else {
    std::cout << "criterion,m,alpha,beta,q_star,bracket_width,evaluations,status\n"
              << a.criterion << ',' << a.m << ',' << fmt_real(alpha) << ','
              << fmt_real(a.beta) << ',' << fmt_real(res.q_star) << ','
              << fmt_real(res.bracket_width) << ',' << res.evaluations << ','
              << status_name(res.status) << '\n';
  }
  if (a.verify && res.status == ps::ThresholdStatus::Bracketed) {
    const ps::ClassParams c(alpha, a.beta, ps::criterion_class(crit));
    for (double q : {res.q_star - res.bracket_width, res.q_star + res.bracket_width}) {
      if (!(q >= 0.0 && q < 1.0)) continue;
      const ps::EquivalenceReport rep =
          ps::criterion_equivalence(crit, ps::PascalParams(a.m, q), c, r, 1e-9);
      if (!rep.consistent) {
        std::cerr << "verification mismatch at q=" << fmt_real(q)
                  << ": closed=" << fmt_real(rep.closed_lhs)
                  << " numeric=" << fmt_real(rep.numeric_lhs) << '\n';
        return 3;
      }
    }
  }
  return 0;
}

int run_table(const TableArgs& a) {
  std::vector<ps::Criterion> crits;
  crits.reserve(a.criteria.size());
  bool needs_rtau = false;
  for (const std::string& name : a.criteria) {
    const ps::Criterion crit = *ps::criterion_from_name(name);
    needs_rtau = needs_rtau || ps::criterion_needs_rtau(crit);
    crits.push_back(crit);
  }
  std::vector<double> alphas;
  alphas.reserve(a.alphas.size());
  for (double angle : a.alphas) alphas.push_back(to_radians(angle, a.degrees));
  std::optional<ps::RTauParams> r;
  if (needs_rtau) r = a.rtau.build();
  emit_rows(ps::sweep(a.ms, a.qs, alphas, a.betas, crits, r), a.format);
  return 0;
}

int run_pmf(const PmfArgs& a) {
  const ps::PascalParams p(a.m, a.q);
  if (a.count < 1) throw std::invalid_argument("--count must be >= 1");
  if (a.format == "json") {
    ordered_json arr = ordered_json::array();
    for (int k = a.k; k < a.k + a.count; ++k) {
      ordered_json obj;
      obj["m"] = a.m;
      obj["q"] = a.q;
      obj["k"] = k;
      obj["probability"] = ps::pmf(k, p);
      arr.push_back(std::move(obj));
    }
    std::cout << arr.dump(2) << '\n';
  } else {
    std::cout << "m,q,k,probability\n";
    for (int k = a.k; k < a.k + a.count; ++k) {
      std::cout << a.m << ',' << fmt_real(a.q) << ',' << k << ','
                << fmt_real(ps::pmf(k, p)) << '\n';
    }
  }
  return 0;
}

// Everything below is the self-verification command: closed forms replayed
// against the library's certified numeric sums and direct partial summation.

double brute_geometric_sum(int order, double q) {
  double term = 1.0;
  double sum = 0.0;
  for (int n = 0; n < 4'000'000; ++n) {
    sum += term;
    if (term < 1e-16 * sum && n > 16) break;
    term *= q * (n + order) / (n + 1.0);
  }
  return sum;
}

std::vector<double> q_grid() {
  std::vector<double> qs;
  for (int i = 1; i <= 18; ++i) qs.push_back(0.05 * i);
  return qs;
}

int run_verify() {
  int suites_failed = 0;

  {  // geometric summation identities vs direct partial sums
    int checked = 0;
    int bad = 0;
    for (int m = 1; m <= 10; ++m) {
      for (double q : q_grid()) {
        const ps::PascalParams p(m, q);
        const std::pair<ps::GeometricIdentity, int> cases[] = {
            {ps::GeometricIdentity::OrderM, m},
            {ps::GeometricIdentity::OrderMMinus1, m - 1},
            {ps::GeometricIdentity::OrderMPlus1, m + 1},
            {ps::GeometricIdentity::OrderMPlus2, m + 2},
        };
        for (const auto& [id, order] : cases) {
          if (id == ps::GeometricIdentity::OrderMMinus1 && m == 1) continue;
          const double closed = ps::closed_geometric_sum(id, p);
          const double brute = brute_geometric_sum(order, q);
          ++checked;
          if (std::abs(closed - brute) > 1e-10 * std::max(1.0, std::abs(closed))) ++bad;
        }
      }
    }
    std::cout << "identity-sums: " << (checked - bad) << '/' << checked << " ok\n";
    if (bad > 0) ++suites_failed;
  }

  {  // moment reductions vs certified sums over the raw coefficient stream
    int checked = 0;
    int bad = 0;
    for (int m = 1; m <= 10; ++m) {
      for (double q : q_grid()) {
        const ps::PascalParams p(m, q);
        const ps::MomentSums s = ps::moment_sums(p);
        const ps::CoefficientSeries stream = ps::phi_coefficients(p);
        const std::pair<ps::SumWeight, std::optional<double>> cases[] = {
            {ps::SumWeight::One, s.s0},
            {ps::SumWeight::ShiftOne, s.s1},
            {ps::SumWeight::ShiftTwoProd, s.s2},
            {ps::SumWeight::Reciprocal, s.s_recip},
        };
        for (const auto& [weight, closed] : cases) {
          if (!closed) continue;
          const double tol = 1e-12 * std::max(1.0, std::abs(*closed));
          const ps::CertifiedValue numeric = ps::certified_sum(stream, weight, 0.0, tol);
          ++checked;
          if (!ps::equivalence_report(*closed, numeric, 1e-10).consistent) ++bad;
        }
      }
    }
    std::cout << "moment-sums: " << (checked - bad) << '/' << checked << " ok\n";
    if (bad > 0) ++suites_failed;
  }

  {  // closed criteria vs certified coefficient sums over the full grid
    const int ms[] = {1, 2, 3, 5, 10};
    const double alphas[] = {0.0, std::numbers::pi / 6.0, -std::numbers::pi / 6.0,
                             std::numbers::pi / 3.0, -std::numbers::pi / 3.0};
    const double betas[] = {0.0, 0.25, 0.5};
    const std::optional<ps::RTauParams> rtau(
        ps::RTauParams(1.0, -1.0, std::complex<double>(1.0, 0.0)));
    for (ps::Criterion crit :
         {ps::Criterion::PhiTsp, ps::Criterion::PhiUct, ps::Criterion::GUct,
          ps::Criterion::GTsp, ps::Criterion::OperatorTsp, ps::Criterion::OperatorUct}) {
      int checked = 0;
      int bad = 0;
      for (int m : ms) {
        if (m == 1 && ps::criterion_needs_m_above_one(crit)) continue;
        for (double q : q_grid()) {
          for (double alpha : alphas) {
            for (double beta : betas) {
              const ps::ClassParams c(alpha, beta, ps::criterion_class(crit));
              const std::optional<ps::RTauParams> r =
                  ps::criterion_needs_rtau(crit) ? rtau : std::nullopt;
              ++checked;
              if (!ps::criterion_equivalence(crit, ps::PascalParams(m, q), c, r, 1e-9)
                       .consistent) {
                ++bad;
              }
            }
          }
        }
      }
      std::cout << "equivalence " << ps::criterion_name(crit) << ": " << (checked - bad)
                << '/' << checked << " ok\n";
      if (bad > 0) ++suites_failed;
    }
  }

  if (suites_failed > 0) {
    std::cerr << suites_failed << " verification suite(s) failed\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pascal-series spirallike class membership certification"};
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "membership verdict for one parameter set");
  check->add_option("--target", check_args.target, "series family: phi, g, or operator")
      ->required()
      ->check(CLI::IsMember({"phi", "g", "operator"}));
  check->add_option("--class", check_args.cls, "membership class: tsp or uct")
      ->required()
      ->check(CLI::IsMember({"tsp", "uct"}));
  check->add_option("--m", check_args.m, "distribution shape m")->required();
  check->add_option("--q", check_args.q, "distribution parameter q")->required();
  check->add_option("--alpha", check_args.alpha, "spiral angle (radians unless --degrees)");
  check->add_option("--beta", check_args.beta, "class order beta");
  check_args.rtau.attach(check);
  check->add_flag("--verify", check_args.verify,
                  "re-run the certified numeric sum and compare (exit 3 on mismatch)");
  check->add_flag("--degrees", check_args.degrees, "interpret --alpha in degrees");
  check->add_option("--format", check_args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "evaluate a series at a disk point");
  eval->add_option("--target", eval_args.target, "series: psi, phi, phi-deriv, or g")
      ->check(CLI::IsMember({"psi", "phi", "phi-deriv", "g"}));
  eval->add_option("--m", eval_args.m, "distribution shape m")->required();
  eval->add_option("--q", eval_args.q, "distribution parameter q")->required();
  eval->add_option("--z-re", eval_args.z_re, "real part of z");
  eval->add_option("--z-im", eval_args.z_im, "imaginary part of z");
  eval->add_option("--tol", eval_args.tol, "certified truncation tolerance");
  eval->add_option("--format", eval_args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  BoundaryArgs boundary_args;
  CLI::App* boundary =
      app.add_subcommand("boundary", "largest q for which a criterion still holds");
  boundary->add_option("--criterion", boundary_args.criterion, "criterion name")
      ->required()
      ->check(CLI::IsMember({"phi-tsp", "phi-uct", "g-tsp", "g-uct", "operator-tsp",
                             "operator-uct"}));
  boundary->add_option("--m", boundary_args.m, "distribution shape m")->required();
  boundary->add_option("--alpha", boundary_args.alpha,
                       "spiral angle (radians unless --degrees)");
  boundary->add_option("--beta", boundary_args.beta, "class order beta");
  boundary->add_option("--tol", boundary_args.tol, "bisection tolerance");
  boundary_args.rtau.attach(boundary);
  boundary->add_flag("--verify", boundary_args.verify,
                     "certify the bracket endpoints numerically (exit 3 on mismatch)");
  boundary->add_flag("--degrees", boundary_args.degrees, "interpret --alpha in degrees");
  boundary->add_option("--format", boundary_args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  TableArgs table_args;
  CLI::App* table = app.add_subcommand("table", "criterion sweep over parameter grids");
  table->add_option("--m", table_args.ms, "shape values")->required()->delimiter(',');
  table->add_option("--q", table_args.qs, "q values")->required()->delimiter(',');
  table->add_option("--alpha", table_args.alphas, "spiral angles")->delimiter(',');
  table->add_option("--beta", table_args.betas, "class orders")->delimiter(',');
  table->add_option("--criterion", table_args.criteria, "criteria to evaluate")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember({"phi-tsp", "phi-uct", "g-tsp", "g-uct", "operator-tsp",
                             "operator-uct"}));
  table_args.rtau.attach(table);
  table->add_flag("--degrees", table_args.degrees, "interpret --alpha in degrees");
  table->add_option("--format", table_args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* verify = app.add_subcommand(
      "verify", "replay closed forms against certified numeric sums (exit 3 on failure)");

  PmfArgs pmf_args;
  CLI::App* pmf = app.add_subcommand("pmf", "Pascal probability mass function values");
  pmf->add_option("--m", pmf_args.m, "distribution shape m")->required();
  pmf->add_option("--q", pmf_args.q, "distribution parameter q")->required();
  pmf->add_option("--k", pmf_args.k, "first index k")->required();
  pmf->add_option("--count", pmf_args.count, "number of consecutive indices");
  pmf->add_option("--format", pmf_args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (*check) return run_check(check_args);
    if (*eval) return run_eval(eval_args);
    if (*boundary) return run_boundary(boundary_args);
    if (*table) return run_table(table_args);
    if (*verify) return run_verify();
    if (*pmf) return run_pmf(pmf_args);
    return 64;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
