#include "hill/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "hill/errors.hpp"
#include "hill/floquet.hpp"
#include "hill/io.hpp"
#include "hill/lyapunov.hpp"
#include "hill/nonlinear.hpp"
#include "hill/witness.hpp"
#include "hill/zeros.hpp"

namespace hill::cli {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

struct Globals {
  std::string period_override;
  double tol_quad = 1e-10;
  double tol_root = 1e-10;
  std::uint64_t seed = ShootingOptions{}.seed;
};

/// Numeric flags that name a period accept constant expressions such as 2*pi.
double constant(const std::string& text, const char* what) {
  const auto v = Expression::parse(text).constant_value();
  if (!v) throw ParseError(std::string(what) + " must be a constant expression");
  return *v;
}

std::optional<double> override_of(const Globals& g) {
  if (g.period_override.empty()) return std::nullopt;
  return constant(g.period_override, "--period-override");
}

FloquetOptions floquet_options(const Globals& g) {
  FloquetOptions o;
  o.tol_root = g.tol_root;
  return o;
}

CertifyOptions certify_options(const Globals& g) {
  CertifyOptions o;
  o.quadrature.abs_tol = g.tol_quad;
  return o;
}

json manifest(const std::string& command, const std::vector<std::string>& inputs, json parameters, const Globals& g) {
  const FloquetOptions f = floquet_options(g);
  return {{"tool", "hillcert"},
          {"version", kVersion},
          {"command", command},
          {"inputs", inputs},
          {"parameters", std::move(parameters)},
          {"tolerances",
           {{"quadrature", g.tol_quad},
            {"root", f.tol_root},
            {"boundary", f.tol_boundary},
            {"coexistence", f.tol_coexistence},
            {"ode", f.ode.tol}}},
          {"period_override", g.period_override.empty() ? json(nullptr) : json(g.period_override)},
          {"seed", g.seed}};
}

json eigen_list(const std::vector<Eigenvalue>& v) {
  json out = json::array();
  for (const Eigenvalue& e : v) out.push_back({{"index", e.index}, {"value", e.value}, {"multiplicity", e.multiplicity}});
  return out;
}

json named(const std::vector<NamedValue>& v) {
  json out = json::object();
  for (const NamedValue& n : v) out[n.name] = n.value;
  return out;
}

json eigen_ref(const std::optional<EigenRef>& r) {
  if (!r) return nullptr;
  return {{"bc", to_string(r->bc)}, {"index", r->index}};
}

std::string claim_name(ClaimKind k) {
  switch (k) {
    case ClaimKind::EigenvalueSigns:
      return "eigenvalue-signs";
    case ClaimKind::StableAtZero:
      return "stable-at-zero";
    case ClaimKind::NotPeriodicEigenvalue:
      return "not-periodic-eigenvalue";
    case ClaimKind::UniquePeriodicSolution:
      return "unique-periodic-solution";
  }
  return "unknown";
}

json certificate_json(const Certificate& c) {
  return {{"theorem", to_string(c.theorem)},
          {"index", c.index},
          {"holds", c.holds},
          {"hypotheses", named(c.hypotheses)},
          {"margins", named(c.margins)},
          {"conclusion",
           {{"kind", claim_name(c.conclusion.kind)},
            {"text", c.conclusion.text},
            {"negative", eigen_ref(c.conclusion.negative)},
            {"positive", eigen_ref(c.conclusion.positive)}}},
          {"diagnostics", c.diagnostics}};
}

json structure_json(const StructureReport& r) {
  return {{"spacing_bound", r.spacing_bound},   {"max_spacing", r.max_spacing},
          {"min_spacing", r.min_spacing},       {"spacings_bounded", r.spacings_bounded},
          {"one_strict", r.one_strict},         {"parity", r.parity},
          {"count", r.count},                   {"alternation", r.alternation},
          {"sum_is_period", r.sum_is_period},   {"ok", r.ok()}};
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Boundary parse_bc(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "antiperiodic") return Boundary::Antiperiodic;
  throw ParseError("boundary condition must be periodic or antiperiodic");
}

// ---- subcommands -------------------------------------------------------------

struct EigsArgs {
  std::string file;
  int count = 7;
  std::string bc = "both";
};

int cmd_eigs(const EigsArgs& args, const Globals& g, std::ostream& out) {
  const PeriodicCoefficient a = coefficient_from_json(read_json_file(args.file), override_of(g));
  if (args.count < 1) throw DomainError("--count must be positive");
  if (args.bc != "both") parse_bc(args.bc);
  const SpectrumSlice s = spectrum(a, args.count, args.count, floquet_options(g));
  const InterlacingReport il = check_interlacing(s);
  json doc = {{"manifest", manifest("eigs", {args.file}, {{"count", args.count}, {"bc", args.bc}}, g)},
              {"period", a.period()},
              {"interlacing",
               {{"ok", il.ok},
                {"violation", il.violation ? json(*il.violation) : json(nullptr)},
                {"detail", il.detail}}}};
  if (args.bc != "antiperiodic") doc["periodic"] = eigen_list(s.periodic);
  if (args.bc != "periodic") doc["antiperiodic"] = eigen_list(s.antiperiodic);
  out << doc.dump(2) << '\n';
  return kOk;
}

struct CertifyArgs {
  std::string file;
  std::optional<int> n;
  std::vector<std::string> theorems;
  bool verify = false;
  double margin = 0.0;
};

int cmd_certify(const CertifyArgs& args, const Globals& g, std::ostream& out, std::ostream& err) {
  const PeriodicCoefficient a = coefficient_from_json(read_json_file(args.file), override_of(g));
  const CertifyOptions opts = certify_options(g);
  const bool pi_period = std::abs(a.period() - kPi) <= 1e-12;

  std::vector<TheoremId> ids;
  for (const std::string& name : args.theorems) {
    const auto id = theorem_from_string(name);
    if (!id) throw ParseError("unknown theorem " + name);
    if (*id == TheoremId::NONLINEAR_L1 || *id == TheoremId::NONLINEAR_LINF || *id == TheoremId::CLASSICAL_BAND) {
      throw ParseError(name + " applies to nonlinear problems; use `nonlinear check`");
    }
    ids.push_back(*id);
  }
  if (ids.empty()) {
    ids = {TheoremId::L1_PERIODIC_N, TheoremId::L1_ANTIPERIODIC_N, TheoremId::L1_ZONE_KP};
    if (pi_period) {
      ids.push_back(TheoremId::LINF_FIRST_ZONE);
      ids.push_back(TheoremId::LINF_PERIODIC);
    }
    ids.push_back(TheoremId::CLASSICAL_16T);
  }

  json certs = json::array();
  bool contradicted = false;
  for (TheoremId id : ids) {
    Certificate c;
    switch (id) {
      case TheoremId::L1_PERIODIC_N:
        c = certify_l1_periodic(a, args.n.value_or(default_index_periodic(a)), opts);
        break;
      case TheoremId::L1_ANTIPERIODIC_N:
        c = certify_l1_antiperiodic(a, args.n.value_or(default_index_antiperiodic(a)), opts);
        break;
      case TheoremId::L1_ZONE_KP:
        c = certify_zone_kp(a, opts);
        break;
      case TheoremId::LINF_FIRST_ZONE:
        c = certify_linf_first_zone(a, opts);
        break;
      case TheoremId::LINF_PERIODIC:
        c = certify_linf_periodic(a, opts);
        break;
      case TheoremId::CLASSICAL_16T:
        c = classical_16T(a, opts);
        break;
      default:
        break;
    }
    json cj = certificate_json(c);
    if (args.verify) {
      const Verification v = verify(a, c, args.margin, floquet_options(g));
      cj["verification"] = {{"consistent", v.consistent}, {"evidence", named(v.evidence)}, {"detail", v.detail}};
      if (!v.consistent) {
        contradicted = true;
        err << "soundness alarm: " << to_string(c.theorem) << " holds but " << v.detail << '\n';
      }
    }
    certs.push_back(std::move(cj));
  }
  json params = {{"theorems", args.theorems}, {"verify", args.verify}, {"margin", args.margin}};
  params["n"] = args.n ? json(*args.n) : json(nullptr);
  const json doc = {{"manifest", manifest("certify", {args.file}, params, g)}, {"certificates", certs}};
  out << doc.dump(2) << '\n';
  return contradicted ? kContradiction : kOk;
}

struct ConstantsArgs {
  int n_max = 10;
  std::string period = "2*pi";
  std::string format = "json";
};

int cmd_constants(const ConstantsArgs& args, const Globals& g, std::ostream& out) {
  const double T = constant(args.period, "--period");
  const auto rows = constants_table(args.n_max, T);
  const json m = manifest("constants", {}, {{"n_max", args.n_max}, {"period", T}, {"format", args.format}}, g);
  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  if (args.format == "csv") {
    out << "# manifest: " << m.dump() << '\n';
    out << "n,period,lambda_2n_minus_1,beta1,gamma1,beta1_anti,gamma1_anti,zhang\n";
    const auto cell = [](const std::optional<double>& v) { return v ? csv_number(*v) : std::string(); };
    for (const ConstantsRow& r : rows) {
      out << r.n << ',' << csv_number(r.period) << ',' << csv_number(r.lambda_2n_minus_1) << ',' << csv_number(r.beta1)
          << ',' << csv_number(r.gamma1) << ',' << cell(r.beta1_anti) << ',' << cell(r.gamma1_anti) << ','
          << cell(r.zhang) << '\n';
    }
    return kOk;
  }
  if (args.format != "json") throw ParseError("--format must be json or csv");
  json table = json::array();
  for (const ConstantsRow& r : rows) {
    table.push_back({{"n", r.n},
                     {"period", r.period},
                     {"lambda_2n_minus_1", r.lambda_2n_minus_1},
                     {"beta1", r.beta1},
                     {"gamma1", r.gamma1},
                     {"beta1_anti", opt(r.beta1_anti)},
                     {"gamma1_anti", opt(r.gamma1_anti)},
                     {"zhang", opt(r.zhang)}});
  }
  out << json{{"manifest", m}, {"rows", table}}.dump(2) << '\n';
  return kOk;
}

struct WitnessArgs {
  int n = 1;
  std::string period = "2*pi";
  double eps = 1e-3;
  bool solution = false;
  std::vector<double> sweep = {1e-2, 1e-3, 1e-4};
  double alpha = kPi / 4;
  double x0 = kPi / 2;
};

int cmd_witness_a_eps(const WitnessArgs& args, const Globals& g, std::ostream& out) {
  const double T = constant(args.period, "--period");
  const PeriodicCoefficient c = args.solution ? make_u_eps(args.n, T, args.eps) : make_a_eps(args.n, T, args.eps);
  json doc = coefficient_to_json(c);
  doc["manifest"] = manifest("witness a-eps", {},
                             {{"n", args.n}, {"period", T}, {"eps", args.eps}, {"solution", args.solution}}, g);
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_witness_sweep(const WitnessArgs& args, const Globals& g, std::ostream& out) {
  const double T = constant(args.period, "--period");
  json rows = json::array();
  for (const auto& [eps, d] : tightness_sweep(args.n, T, args.sweep)) rows.push_back({{"eps", eps}, {"l1_distance", d}});
  const json doc = {{"manifest", manifest("witness sweep", {}, {{"n", args.n}, {"period", T}, {"eps", args.sweep}}, g)},
                    {"beta1", beta1(args.n, T)},
                    {"rows", rows}};
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_witness_two_step(const WitnessArgs& args, const Globals& g, std::ostream& out) {
  const TwoStepPotential w = make_two_step(args.alpha, args.x0);
  json doc = coefficient_to_json(w.a);
  json det = {{"anti", anti_determinant(args.alpha, args.x0)},
              {"anti_system", anti_determinant_system(args.alpha, args.x0)},
              {"periodic_system", periodic_determinant_system(args.alpha, args.x0)}};
  if (args.alpha < kPi) det["periodic"] = periodic_determinant(args.alpha, args.x0);
  doc["determinants"] = det;
  if (args.alpha < kPi / 2) {
    const auto [lo, hi] = anti_resonant_x0(args.alpha);
    doc["antiperiodic_resonance_x0"] = {lo, hi};
  }
  doc["manifest"] = manifest("witness two-step", {}, {{"alpha", args.alpha}, {"x0", args.x0}}, g);
  out << doc.dump(2) << '\n';
  return kOk;
}

struct ZerosArgs {
  std::string file;
  std::string bc = "periodic";
  int n = 1;
  int intervals = 4096;
};

int cmd_zeros(const ZerosArgs& args, const Globals& g, std::ostream& out) {
  const PeriodicCoefficient a = coefficient_from_json(read_json_file(args.file), override_of(g));
  const Boundary bc = parse_bc(args.bc);
  const ZeroStructure z = extract_zero_structure(a, bc, args.intervals);
  const StructureReport r = bc == Boundary::Periodic ? check_periodic_structure(z, args.n, a.period())
                                                     : check_antiperiodic_structure(z, args.n, a.period());
  QuadratureOptions quad;
  quad.abs_tol = g.tol_quad;
  const SubintervalReport s = subinterval_inequality(a, z, args.n, bc, quad);
  const json doc = {
      {"manifest", manifest("zeros", {args.file}, {{"bc", args.bc}, {"n", args.n}, {"intervals", args.intervals}}, g)},
      {"u_zeros", z.u_zeros},
      {"du_zeros", z.du_zeros},
      {"m", z.m},
      {"spacings", z.spacings},
      {"shift", z.shift},
      {"checks", structure_json(r)},
      {"subinterval",
       {{"lambda", s.lambda},
        {"margins", s.margins},
        {"distances", s.distances},
        {"cot_sum", s.cot_sum},
        {"total_distance", s.total_distance},
        {"min_margin", s.min_margin}}}};
  out << doc.dump(2) << '\n';
  return kOk;
}

struct ChartArgs {
  std::string file;
  double mu_from = -1.0;
  double mu_to = 5.0;
  int points = 601;
};

int cmd_chart(const ChartArgs& args, const Globals& g, std::ostream& out) {
  const PeriodicCoefficient a = coefficient_from_json(read_json_file(args.file), override_of(g));
  if (!(args.mu_from < args.mu_to)) throw DomainError("--mu-from must be below --mu-to");
  if (args.points < 2) throw DomainError("--points must be at least 2");
  SpectrumSolver solver(a, floquet_options(g));
  const json m = manifest("chart", {args.file},
                          {{"mu_from", args.mu_from}, {"mu_to", args.mu_to}, {"points", args.points}}, g);
  out << "# manifest: " << m.dump() << '\n';
  out << "mu,discriminant,verdict\n";
  for (int i = 0; i < args.points; ++i) {
    const double mu =
        i == args.points - 1 ? args.mu_to : args.mu_from + (args.mu_to - args.mu_from) * i / (args.points - 1);
    const StabilityVerdict v = solver.classify(mu);
    out << csv_number(mu) << ',' << csv_number(v.discriminant) << ',' << to_string(v.kind) << '\n';
  }
  return kOk;
}

struct NonlinearArgs {
  std::string file;
  std::vector<std::string> theorems;
  int n = 1;
  int starts = 16;
  std::vector<double> u_box;
  bool trajectory = false;
};

UBox resolve_box(const NonlinearArgs& args, const ProblemFile& pf) {
  if (!args.u_box.empty()) {
    if (args.u_box.size() != 2) throw ParseError("--u-box takes two values");
    return {args.u_box[0], args.u_box[1]};
  }
  if (pf.u_box) return *pf.u_box;
  throw DomainError("a u_box is required (file field or --u-box)");
}

json nonlinear_certificates(const NonlinearArgs& args, const ProblemFile& pf, const Globals& g) {
  const UBox box = resolve_box(args, pf);
  std::vector<std::string> names = args.theorems;
  if (names.empty()) {
    if (pf.problem.has_envelopes()) {
      names.push_back("NONLINEAR_L1");
      if (std::abs(pf.problem.period() - kPi) <= 1e-12) names.push_back("NONLINEAR_LINF");
    }
    names.push_back("CLASSICAL_BAND");
  }
  json certs = json::array();
  for (const std::string& name : names) {
    const auto id = theorem_from_string(name);
    if (id == TheoremId::NONLINEAR_L1) {
      certs.push_back(certificate_json(check_l1_hypotheses(pf.problem, args.n, box, certify_options(g))));
    } else if (id == TheoremId::NONLINEAR_LINF) {
      certs.push_back(certificate_json(check_linf_hypotheses(pf.problem, box, certify_options(g))));
    } else if (id == TheoremId::CLASSICAL_BAND) {
      certs.push_back(certificate_json(check_classical_band(pf.problem, box)));
    } else {
      throw ParseError("unknown nonlinear theorem " + name);
    }
  }
  return certs;
}

json nonlinear_params(const NonlinearArgs& args) {
  json p = {{"theorems", args.theorems}, {"n", args.n}, {"starts", args.starts}, {"trajectory", args.trajectory}};
  p["u_box"] = args.u_box.empty() ? json(nullptr) : json(args.u_box);
  return p;
}

int cmd_nonlinear_check(const NonlinearArgs& args, const Globals& g, std::ostream& out) {
  const ProblemFile pf = problem_from_json(read_json_file(args.file), override_of(g));
  const json doc = {{"manifest", manifest("nonlinear check", {args.file}, nonlinear_params(args), g)},
                    {"certificates", nonlinear_certificates(args, pf, g)}};
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_nonlinear_solve(const NonlinearArgs& args, const Globals& g, std::ostream& out) {
  const ProblemFile pf = problem_from_json(read_json_file(args.file), override_of(g));
  ShootingOptions opts;
  opts.starts = args.starts;
  opts.seed = g.seed;
  const ShootingResult r = solve_periodic(pf.problem, opts);
  json sols = json::array();
  for (const PeriodicSolution& s : r.solutions) {
    json j = {{"u0", s.u0}, {"du0", s.du0}, {"residual", s.residual}};
    if (args.trajectory) j["trajectory"] = {{"x", s.trajectory.x}, {"u", s.trajectory.u}, {"du", s.trajectory.du}};
    sols.push_back(std::move(j));
  }
  json doc = {{"manifest", manifest("nonlinear solve", {args.file}, nonlinear_params(args), g)},
              {"shooting",
               {{"solutions", sols},
                {"unique", r.unique},
                {"converged_starts", r.converged},
                {"starts", r.starts},
                {"box", r.box}}}};
  // The theorem-level claims are reported separately from the numerical probe.
  if (pf.u_box || !args.u_box.empty()) doc["certificates"] = nonlinear_certificates(args, pf, g);
  out << doc.dump(2) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability certificates and spectra for Hill's equation u'' + (mu + a(x)) u = 0", "hillcert"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Globals g;
  app.add_option("--period-override", g.period_override, "Period for coefficient files that omit one");
  app.add_option("--tol-quad", g.tol_quad, "Absolute quadrature tolerance");
  app.add_option("--tol-root", g.tol_root, "Eigenvalue root tolerance");
  app.add_option("--seed", g.seed, "Seed for randomized starts");

  std::function<int()> action;

  EigsArgs eigs;
  auto* s_eigs = app.add_subcommand("eigs", "Periodic and antiperiodic eigenvalues");
  s_eigs->add_option("file", eigs.file, "Coefficient JSON")->required();
  s_eigs->add_option("--count", eigs.count, "Eigenvalues per boundary condition");
  s_eigs->add_option("--bc", eigs.bc, "periodic, antiperiodic or both");
  s_eigs->callback([&] { action = [&] { return cmd_eigs(eigs, g, out); }; });

  CertifyArgs cert;
  auto* s_cert = app.add_subcommand("certify", "Check the stability criteria for a coefficient");
  s_cert->add_option("file", cert.file, "Coefficient JSON")->required();
  s_cert->add_option("--n", cert.n, "Index for the L1 criteria");
  s_cert->add_option("--theorem", cert.theorems, "Restrict to these theorem ids");
  s_cert->add_flag("--verify", cert.verify, "Cross-check conclusions against the spectrum");
  s_cert->add_option("--margin", cert.margin, "Distance from 0 required of verified eigenvalues");
  s_cert->callback([&] { action = [&] { return cmd_certify(cert, g, out, err); }; });

  ConstantsArgs cons;
  auto* s_cons = app.add_subcommand("constants", "Table of the optimal L1 constants");
  s_cons->add_option("--n-max", cons.n_max);
  s_cons->add_option("--period", cons.period);
  s_cons->add_option("--format", cons.format, "json or csv");
  s_cons->callback([&] { action = [&] { return cmd_constants(cons, g, out); }; });

  WitnessArgs wit;
  auto* s_wit = app.add_subcommand("witness", "Extremal coefficient families");
  s_wit->require_subcommand(1);
  auto* s_aeps = s_wit->add_subcommand("a-eps", "Smoothed witness coefficient");
  s_aeps->add_option("--n", wit.n);
  s_aeps->add_option("--period", wit.period);
  s_aeps->add_option("--eps", wit.eps);
  s_aeps->add_flag("--solution", wit.solution, "Emit the periodic solution instead of the coefficient");
  s_aeps->callback([&] { action = [&] { return cmd_witness_a_eps(wit, g, out); }; });
  auto* s_sweep = s_wit->add_subcommand("sweep", "L1 distance of the witnesses for decreasing eps");
  s_sweep->add_option("--n", wit.n);
  s_sweep->add_option("--period", wit.period);
  s_sweep->add_option("--eps", wit.sweep);
  s_sweep->callback([&] { action = [&] { return cmd_witness_sweep(wit, g, out); }; });
  auto* s_two = s_wit->add_subcommand("two-step", "Two-level coefficient on (0, pi)");
  s_two->add_option("--alpha", wit.alpha);
  s_two->add_option("--x0", wit.x0);
  s_two->callback([&] { action = [&] { return cmd_witness_two_step(wit, g, out); }; });

  ZerosArgs zer;
  auto* s_zeros = app.add_subcommand("zeros", "Zero structure of the solution at mu = 0");
  s_zeros->add_option("file", zer.file, "Coefficient JSON")->required();
  s_zeros->add_option("--bc", zer.bc);
  s_zeros->add_option("--n", zer.n);
  s_zeros->add_option("--intervals", zer.intervals);
  s_zeros->callback([&] { action = [&] { return cmd_zeros(zer, g, out); }; });

  ChartArgs chart;
  auto* s_chart = app.add_subcommand("chart", "Discriminant and verdict on a mu grid (CSV)");
  s_chart->add_option("file", chart.file, "Coefficient JSON")->required();
  s_chart->add_option("--mu-from", chart.mu_from);
  s_chart->add_option("--mu-to", chart.mu_to);
  s_chart->add_option("--points", chart.points);
  s_chart->callback([&] { action = [&] { return cmd_chart(chart, g, out); }; });

  NonlinearArgs nl;
  auto* s_nl = app.add_subcommand("nonlinear", "Periodic problem u'' + f(x, u) = 0");
  s_nl->require_subcommand(1);
  auto* s_check = s_nl->add_subcommand("check", "Hypotheses of the uniqueness criteria");
  auto* s_solve = s_nl->add_subcommand("solve", "Multistart shooting");
  for (auto* s : {s_check, s_solve}) {
    s->add_option("file", nl.file, "Problem JSON")->required();
    s->add_option("--theorem", nl.theorems);
    s->add_option("--n", nl.n);
    s->add_option("--u-box", nl.u_box)->expected(2);
  }
  s_solve->add_option("--starts", nl.starts);
  s_solve->add_flag("--trajectory", nl.trajectory);
  s_check->callback([&] { action = [&] { return cmd_nonlinear_check(nl, g, out); }; });
  s_solve->callback([&] { action = [&] { return cmd_nonlinear_solve(nl, g, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  }

  try {
    return action ? action() : kParse;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const RootSearchFailure& e) {
    err << "root search failed: " << e.what() << '\n';
    return kNumeric;
  } catch (const IntegrationFailure& e) {
    err << "integration failed: " << e.what() << '\n';
    return kNumeric;
  } catch (const QuadratureFailure& e) {
    err << "quadrature failed: " << e.what() << '\n';
    return kNumeric;
  } catch (const NoConvergence& e) {
    err << "no convergence: " << e.what() << '\n';
    return kNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace hill::cli
