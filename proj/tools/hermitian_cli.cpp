// hermitian: construct, verify, tabulate and plot the metrics.
//
// Exit codes: 0 success, 2 invalid flags or malformed file, 3 solver
// failure, 4 verification failure.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hermitian/geometry/curvature.hpp"
#include "hermitian/hirzebruch/closed_form.hpp"
#include "hermitian/hirzebruch/profile_builder.hpp"
#include "hermitian/io/csv.hpp"
#include "hermitian/io/metric_file.hpp"
#include "hermitian/io/svg.hpp"
#include "hermitian/io/verify.hpp"
#include "hermitian/ruled/admissible.hpp"

namespace fs = std::filesystem;
using namespace hermitian;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kSolver = 3;
constexpr int kVerify = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::optional<fs::path>& out, const std::string& text) {
  if (out) {
    write_text_file(*out, text);
  } else {
    std::cout << text;
  }
}

// --- construct --------------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  int m = 1;
  std::optional<int> genus;
  std::optional<double> b, phi0, phi1;
  std::size_t n_grid = 512;
  std::optional<fs::path> out;
};

MetricFile construct(const ConstructArgs& a) {
  const auto kind = parse_metric_kind(a.kind);
  if (!kind) throw UsageError("--kind must be one of chern, third, critical, ruled-zero, ruled-numeric");
  if (a.m < 1) throw UsageError("--m must be a positive integer");
  if (a.n_grid < 64) throw UsageError("--n-grid must be at least 64");

  if (!is_ruled(*kind)) {
    if (a.genus || a.b) throw UsageError("--genus and --b apply to ruled kinds only");
    double scale = 1.0;
    if (*kind == MetricKind::Chern) {
      if (a.phi0) throw UsageError("chern solutions are normalized by --phi1; phi0 follows from the ratio");
      if (a.phi1) scale = *a.phi1;
    } else {
      if (a.phi1) throw UsageError(std::string(to_string(*kind)) + " solutions are normalized by --phi0");
      if (a.phi0) scale = *a.phi0;
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) throw UsageError("phi0/phi1 must be positive");
    const auto sol = solve_closed_form(solution_kind(*kind), a.m, scale);
    return make_metric_file(sol, build_profile(sol, a.n_grid));
  }

  if (a.phi0 || a.phi1) throw UsageError("--phi0/--phi1 do not apply to ruled kinds");
  if (a.b && !(*a.b > 1.0)) throw UsageError("--b must exceed 1");
  if (*kind == MetricKind::RuledZero) {
    if (a.b && a.genus) throw UsageError("ruled-zero takes either --b or --genus with --m, not both");
    if (a.b) return make_metric_file(*kind, solve_zero_chern(*a.b), a.n_grid);
    if (!a.genus) throw UsageError("ruled-zero needs --b, or --genus and --m");
    return make_metric_file(*kind, solve_zero_chern_for_degree(*a.genus, a.m), a.n_grid);
  }
  if (!a.genus || !a.b) throw UsageError("ruled-numeric needs --genus, --m and --b");
  if (*a.genus < 0) throw UsageError("--genus must be non-negative");
  return make_metric_file(*kind, solve_x_for_genus(*a.genus, a.m, *a.b), a.n_grid);
}

// --- table ------------------------------------------------------------------

struct TableArgs {
  std::vector<int> genus, m;
  std::vector<double> b;
  std::optional<fs::path> out;
};

CsvTable table(const TableArgs& a) {
  std::vector<int> genus = a.genus, m = a.m;
  std::vector<double> b = a.b;
  if (genus.empty() && m.empty() && b.empty()) {
    genus = {1, 2, 2};
    m = {1, 1, 1};
    b = {2.0, 2.0, 3.0};
  }
  if (m.empty()) m.assign(genus.size(), 1);
  if (genus.size() != b.size() || m.size() != genus.size()) {
    throw UsageError("give one --genus, --b (and optionally --m) per row");
  }
  CsvTable t;
  t.header = {"genus", "m", "s_sigma", "b", "x", "c1", "c2", "sC_tilde", "F_positive"};
  for (std::size_t i = 0; i < genus.size(); ++i) {
    if (genus[i] < 0 || m[i] < 1) throw UsageError("rows need genus >= 0 and m >= 1");
    if (!(b[i] > 1.0)) throw UsageError("rows need b > 1");
    const auto all = solve_x_for_genus_all(genus[i], m[i], b[i]);
    if (all.empty()) {
      throw Error(ErrorKind::NoSolution, "row genus " + std::to_string(genus[i]) + ", m " + std::to_string(m[i]) +
                                             ", b " + std::to_string(b[i]) + " has no x in (0, 1)");
    }
    // Prefer a root with positive F; otherwise report the first, flagged.
    const AdmissibleSolution* pick = &all.front();
    bool positive = false;
    for (const auto& s : all) {
      if (check_positivity_F(s, 1001)) {
        pick = &s;
        positive = true;
        break;
      }
    }
    const auto& e = std::get<EulerF>(pick->F);
    t.add_row({double(genus[i]), double(m[i]), pick->sSigma, b[i], pick->x, e.c1, e.c2, pick->sC, positive ? 1.0 : 0.0});
  }
  return t;
}

// --- plot -------------------------------------------------------------------

PlotSpec plot_spec(const MetricFile& f, const std::string& what) {
  PlotSpec p;
  if (what == "F") {
    if (!is_ruled(f.kind)) throw UsageError("--what F needs a ruled metric file");
    p.title = "F(z), " + std::string(to_string(f.kind));
    p.xlabel = "z";
    p.ylabel = "F";
    p.x = f.grid;
    p.series.push_back({"F", f.F});
    return p;
  }
  if (what == "profiles") {
    if (is_ruled(f.kind)) throw UsageError("--what profiles needs a chern, third or critical metric file");
    p.title = "profiles, " + std::string(to_string(f.kind)) + ", m = " + std::to_string(f.profile_solution().m);
    p.xlabel = "t";
    p.ylabel = "f, h";
    p.x = f.grid;
    p.series.push_back({"f", f.f});
    p.series.push_back({"h", f.h});
    return p;
  }
  if (what == "curvatures") {
    p.title = "curvatures, " + std::string(to_string(f.kind));
    if (is_ruled(f.kind)) {
      const auto& sol = f.ruled_solution();
      p.xlabel = "z";
      p.ylabel = "curvature";
      PlotSeries sg{"sg", {}}, sc{"sC_tilde", {}};
      for (double z : f.grid) {
        if (!(std::abs(z) < 1.0)) continue;
        p.x.push_back(z);
        sg.y.push_back(admissible_scalar(sol, z));
        sc.y.push_back(conformal_chern(sol, z));
      }
      p.series = {sg, sc};
      return p;
    }
    const auto prof = f.profile();
    p.xlabel = "t";
    p.ylabel = "curvature";
    PlotSeries sc{"sC", {}}, s3{"s", {}}, sg{"sg", {}}, gc{"sC+delta_theta", {}};
    const auto& g = prof.grid();
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
      const auto q = prof.at(g[i]);
      p.x.push_back(g[i]);
      sc.y.push_back(chern_scalar(q));
      s3.y.push_back(third_scalar(q));
      sg.y.push_back(riemannian_scalar(q));
      gc.y.push_back(gauduchon_combination(q));
    }
    p.series = {sc, s3, sg, gc};
    return p;
  }
  throw UsageError("--what must be F, profiles or curvatures");
}

fs::path csv_twin(const fs::path& svg) {
  fs::path c = svg;
  c.replace_extension(".csv");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian metrics of constant Chern-type scalar curvature"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "solve for a metric and write its metric file");
  construct_cmd->add_option("--kind", ca.kind, "chern | third | critical | ruled-zero | ruled-numeric")->required();
  construct_cmd->add_option("--m", ca.m, "degree m");
  construct_cmd->add_option("--genus", ca.genus, "genus of the base curve (ruled kinds)");
  construct_cmd->add_option("--b", ca.b, "conformal factor parameter b > 1 (ruled kinds)");
  construct_cmd->add_option("--phi0", ca.phi0, "scale phi0 (third, critical)");
  construct_cmd->add_option("--phi1", ca.phi1, "scale phi1 (chern)");
  construct_cmd->add_option("--n-grid", ca.n_grid, "number of grid nodes")->capture_default_str();
  construct_cmd->add_option("--out", ca.out, "output path (stdout if omitted)");

  fs::path verify_in;
  std::optional<fs::path> verify_report;
  VerifyOptions vopt;
  auto* verify_cmd = app.add_subcommand("verify", "check a metric file");
  verify_cmd->add_option("--in", verify_in, "metric file")->required();
  verify_cmd->add_option("--tol", vopt.tol, "constancy tolerance")->capture_default_str();
  verify_cmd->add_option("--report", verify_report, "per-node CSV report path");

  TableArgs ta;
  auto* table_cmd = app.add_subcommand("table", "numeric solutions on ruled surfaces, one row per (genus, m, b)");
  table_cmd->add_option("--genus", ta.genus, "genus (repeatable)");
  table_cmd->add_option("--m", ta.m, "degree (repeatable, default 1)");
  table_cmd->add_option("--b", ta.b, "b (repeatable)");
  table_cmd->add_option("--out", ta.out, "CSV path (stdout if omitted)");

  fs::path plot_in, plot_out;
  std::string plot_what;
  auto* plot_cmd = app.add_subcommand("plot", "SVG plot of a metric file, with a CSV of the samples");
  plot_cmd->add_option("--in", plot_in, "metric file")->required();
  plot_cmd->add_option("--what", plot_what, "F | profiles | curvatures")->required();
  plot_cmd->add_option("--out", plot_out, "SVG path; the CSV goes next to it")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*construct_cmd) {
      MetricFile f;
      try {
        f = construct(ca);
      } catch (const Error& e) {
        std::cerr << "construct: " << e.what() << "\n";
        return kSolver;
      }
      emit(ca.out, canonical_dump(f));
      return kOk;
    }

    if (*verify_cmd) {
      if (!(vopt.tol > 0.0)) throw UsageError("--tol must be positive");
      MetricFile f;
      try {
        f = read_metric_file(verify_in);
        if (!is_ruled(f.kind)) (void)f.profile();
      } catch (const Error& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return kUsage;
      }
      const auto r = verify_metric_file(f, vopt);
      if (verify_report) write_text_file(*verify_report, r.report.str());
      std::cout << "constancy " << r.constancy << "\nboundary " << r.boundary << "\n";
      for (const auto& msg : r.failures) std::cerr << "verify: " << msg << "\n";
      std::cout << (r.passed ? "PASS" : "FAIL") << "\n";
      return r.passed ? kOk : kVerify;
    }

    if (*table_cmd) {
      CsvTable t;
      try {
        t = table(ta);
      } catch (const Error& e) {
        std::cerr << "table: " << e.what() << "\n";
        return kSolver;
      }
      emit(ta.out, t.str());
      return kOk;
    }

    if (*plot_cmd) {
      MetricFile f;
      try {
        f = read_metric_file(plot_in);
      } catch (const Error& e) {
        std::cerr << "plot: " << e.what() << "\n";
        return kUsage;
      }
      const auto spec = plot_spec(f, plot_what);
      write_text_file(plot_out, render_svg(spec));
      write_text_file(csv_twin(plot_out), plot_csv(spec).str());
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Format ? kUsage : kSolver;
  }
  return kUsage;
}
