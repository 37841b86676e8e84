#include "fqm/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "fqm/characters.hpp"
#include "fqm/errors.hpp"
#include "fqm/ffpoly.hpp"
#include "fqm/lseries.hpp"
#include "fqm/momentcalc.hpp"
#include "fqm/moments.hpp"
#include "fqm/parallel.hpp"

namespace fqm {

namespace {

const std::vector<std::string> kCommands{"prime", "lfunc", "moment", "verify", "constants", "report"};
const std::vector<std::string> kMomentKinds{"first", "second", "fourth"};
const std::vector<std::string> kVerifyKinds{"orthogonality", "fe", "odd-reduction", "even-reduction", "identities"};
const std::vector<std::string> kConstantKinds{"dm", "fourth"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("config is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config field '") + key + "' has the wrong type");
  }
}

}  // namespace

json config_to_json(const RunConfig& c) {
  return json{{"command", c.command},
              {"target", c.target},
              {"p", c.p},
              {"e", c.e},
              {"degQ", c.degQ},
              {"deg_max", c.deg_max},
              {"Q", c.Q},
              {"k", c.k},
              {"l", c.l ? json(*c.l) : json(nullptr)},
              {"j", c.j},
              {"seed", c.seed},
              {"decompose", c.decompose},
              {"max_m", c.max_m},
              {"exact", c.exact},
              {"tolerance", c.tolerance ? json(*c.tolerance) : json(nullptr)},
              {"workers", c.workers},
              {"format", c.format},
              {"output", c.output}};
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  RunConfig c;
  c.command = field<std::string>(j, "command");
  c.target = field<std::string>(j, "target");
  c.p = field<std::uint32_t>(j, "p");
  c.e = field<int>(j, "e");
  c.degQ = field<int>(j, "degQ");
  c.deg_max = field<int>(j, "deg_max");
  c.Q = field<std::string>(j, "Q");
  c.k = field<int>(j, "k");
  if (j.contains("l") && !j.at("l").is_null()) c.l = field<int>(j, "l");
  c.j = field<std::uint64_t>(j, "j");
  c.seed = field<std::uint64_t>(j, "seed");
  c.decompose = field<bool>(j, "decompose");
  c.max_m = field<int>(j, "max_m");
  c.exact = field<bool>(j, "exact");
  if (j.contains("tolerance") && !j.at("tolerance").is_null()) c.tolerance = field<double>(j, "tolerance");
  c.workers = field<unsigned>(j, "workers");
  c.format = field<std::string>(j, "format");
  c.output = field<std::string>(j, "output");
  return c;
}

RunConfig parse_args(const std::vector<std::string>& args, std::string* help) {
  CLI::App app{"Moments of Dirichlet L-functions over F_q[t]", "fqmoments"};
  app.require_subcommand(0, 1);
  RunConfig c;
  std::uint64_t q = 0;
  std::string config_path;
  std::optional<int> l;
  std::optional<double> tol;
  bool as_float = false;
  app.add_option("--config", config_path, "Run a serialized RunConfig (JSON, or a report containing one)");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--q", q, "Field order (prime power)");
    sub->add_option("--p", c.p, "Field characteristic");
    sub->add_option("--e", c.e, "Extension degree");
    sub->add_option("--deg", c.degQ, "Degree of the prime modulus");
    sub->add_option("--Q", c.Q, "Explicit monic irreducible modulus, e.g. 1+t+t^3");
    sub->add_option("--seed", c.seed, "Seed for choosing the modulus");
    sub->add_option("--workers", c.workers, "Worker threads (default FQM_WORKERS, then all cores)");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--output", c.output, "Output file (written atomically)");
    sub->add_option("--tolerance", tol, "Relative tolerance for identity checks");
  };
  auto with_target = [&](CLI::App* sub, const std::vector<std::string>& kinds) {
    sub->add_option("target", c.target, "What to compute")->required()->check(CLI::IsMember(kinds));
  };

  CLI::App* prime = app.add_subcommand("prime", "Choose a prime modulus and describe its unit group");
  common(prime);
  CLI::App* lfunc = app.add_subcommand("lfunc", "L-function coefficients, derivative, root number");
  common(lfunc);
  lfunc->add_option("--j", c.j, "Character index");
  lfunc->add_option("--k", c.k, "Derivative order");
  CLI::App* moment = app.add_subcommand("moment", "First, second or mixed fourth moment");
  common(moment);
  with_target(moment, kMomentKinds);
  moment->add_option("--k", c.k, "Derivative order");
  moment->add_option("--l", l, "Second derivative order (fourth moment)");
  moment->add_flag("--decompose", c.decompose, "Diagonal / off-diagonal / remainder split");
  CLI::App* verify = app.add_subcommand("verify", "Identity checks with residuals");
  common(verify);
  with_target(verify, kVerifyKinds);
  verify->add_option("--k", c.k, "Largest derivative order checked");
  verify->add_option("--l", l, "Second order for the fourth-moment identities");
  CLI::App* constants = app.add_subcommand("constants", "Exact limiting constants");
  common(constants);
  with_target(constants, kConstantKinds);
  constants->add_option("--max", c.max_m, "Largest m in the D_m table");
  constants->add_option("--k", c.k, "First order");
  constants->add_option("--l", l, "Second order");
  constants->add_flag("--exact", "Exact rationals (default)");
  constants->add_flag("--float", as_float, "Decimals only");
  CLI::App* report = app.add_subcommand("report", "Convergence table over a range of degrees");
  common(report);
  with_target(report, kMomentKinds);
  report->add_option("--deg-max", c.deg_max, "Last degree of the sweep");
  report->add_option("--k", c.k, "Derivative order");
  report->add_option("--l", l, "Second order (fourth moment)");

  std::vector<std::string> argv_store{"fqmoments"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    if (help) *help = app.help();
    return RunConfig{};
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(e.what());
  }

  if (!config_path.empty()) {
    if (!app.get_subcommands().empty()) throw std::invalid_argument("--config cannot be combined with a subcommand");
    std::ifstream f(config_path);
    if (!f) throw std::invalid_argument("cannot read " + config_path);
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& ex) {
      throw std::invalid_argument(config_path + ": " + ex.what());
    }
    return config_from_json(j.contains("config") ? j.at("config") : j);
  }
  if (app.get_subcommands().empty()) {
    if (help) *help = app.help();
    return RunConfig{};
  }
  c.command = app.get_subcommands().front()->get_name();
  if (q != 0) {
    if (c.p != 0) throw std::invalid_argument("give either --q or --p/--e");
    const FieldDesc F = FieldDesc::from_order(q);
    c.p = F.p();
    c.e = F.e();
  }
  c.l = l;
  c.tolerance = tol;
  c.exact = !as_float;
  return c;
}

namespace {

struct Outcome {
  json results;
  bool ok = true;
  std::string csv;  // used when format is csv
};

double tolerance_of(const RunConfig& c) { return c.tolerance.value_or(kIdentityTolerance); }

FieldDesc field_of(const RunConfig& c) {
  if (c.p == 0) throw std::invalid_argument("the field is required: --q or --p/--e");
  return FieldDesc::make(c.p, c.e);
}

CharGroup group_of(const RunConfig& c) {
  const FieldDesc F = field_of(c);
  PolyFq Q;
  if (!c.Q.empty()) {
    Q = parse_poly(F, c.Q);
  } else {
    if (c.degQ < 1) throw std::invalid_argument("the modulus is required: --deg (with --seed) or --Q");
    Q = random_prime(F, c.degQ, c.seed);
  }
  return CharGroup::build(F, Q);
}

void require_json(const RunConfig& c) {
  if (c.format != "json") throw std::invalid_argument(c.command + " " + c.target + " only emits json");
}

// Pass flags recomputed against the configured tolerance.
bool moment_passes(MomentReport& r, double tol) {
  if (r.relative_error) r.passed = *r.relative_error <= tol;
  if (r.pieces) {
    r.pieces->passed = r.pieces->relative_error <= tol;
    r.passed = r.passed && r.pieces->passed;
  }
  return r.passed;
}

bool reduction_passes(ReductionReport& r, double tol) {
  r.passed = r.abs_error <= tol * std::max(std::abs(r.lhs), r.mass);
  return r.passed;
}

MomentReport compute_moment(const CharGroup& G, const std::string& kind, const RunConfig& c) {
  if (kind == "first") return first_moment(G, c.k, c.workers);
  if (kind == "second") return second_moment(G, c.k, c.workers);
  return fourth_moment(G, c.k, c.l.value_or(c.k), c.decompose, c.workers);
}

Outcome do_prime(const RunConfig& c) {
  require_json(c);
  const CharGroup G = group_of(c);
  return Outcome{group_json(G), true, {}};
}

Outcome do_lfunc(const RunConfig& c) {
  require_json(c);
  const CharGroup G = group_of(c);
  if (c.j == 0 || c.j >= G.phi()) throw std::invalid_argument("--j must lie in [1, phi)");
  const Character chi(G, c.j);
  const LSeriesData s = l_coeffs(G, chi);
  const FunctionalEquationReport fe = verify_functional_equation(s);
  json L = json::array();
  for (const cd& x : s.L) L.push_back(complex_json(x));
  json r{{"group", group_json(G, 0)},
         {"j", c.j},
         {"even", chi.is_even()},
         {"k", c.k},
         {"L", L},
         {"derivative", complex_json(l_derivative_half(s, c.k))}};
  if (chi.is_even()) r["lhat_derivative"] = complex_json(lhat_derivative_half(s, c.k));
  r["W"] = complex_json(fe.W);
  r["residuals"] = json{{"fe_max_residual", fe.max_residual}, {"fe_tolerance", fe.tolerance},
                        {"abs_W_minus_1", std::abs(std::abs(fe.W) - 1.0)}};
  r["passed"] = fe.passed;
  return Outcome{r, fe.passed, {}};
}

Outcome do_moment(const RunConfig& c) {
  const CharGroup G = group_of(c);
  MomentReport m = compute_moment(G, c.target, c);
  const bool ok = moment_passes(m, tolerance_of(c));
  return Outcome{moment_json(m), ok, emit_csv({csv_row(m)})};
}

Outcome do_report(const RunConfig& c) {
  const FieldDesc F = field_of(c);
  if (c.degQ < 1 || c.deg_max < c.degQ) throw std::invalid_argument("need 1 <= --deg <= --deg-max");
  if (!c.Q.empty()) throw std::invalid_argument("report sweeps degrees; --Q is not allowed");
  json rows = json::array();
  std::vector<CsvRow> csv;
  bool ok = true;
  for (int d = c.degQ; d <= c.deg_max; ++d) {
    RunConfig step = c;
    step.degQ = d;
    step.decompose = false;
    const CharGroup G = group_of(step);
    MomentReport m = compute_moment(G, c.target, step);
    ok = moment_passes(m, tolerance_of(c)) && ok;
    rows.push_back(moment_json(m));
    csv.push_back(csv_row(m));
  }
  return Outcome{json{{"rows", rows}}, ok, emit_csv(csv)};
}

const char* family_name(SumFamily f) {
  switch (f) {
    case SumFamily::Units: return "units";
    case SumFamily::Characters: return "characters";
    case SumFamily::ConjugatePair: return "conjugate_pair";
    case SumFamily::OddScalars: return "odd_scalars";
    case SumFamily::EvenCharacters: return "even_characters";
  }
  return "?";
}

struct Tally {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  double max_relative = 0.0;

  void add(bool passed, double rel) {
    ++checks;
    if (!passed) ++failures;
    max_relative = std::max(max_relative, rel);
  }
  json to_json() const { return json{{"checks", checks}, {"failures", failures}, {"max_relative_error", max_relative}}; }
};

double scaled_error(const ReductionReport& r) { return r.abs_error / std::max({std::abs(r.lhs), r.mass, 1e-300}); }

Outcome do_verify(const RunConfig& c) {
  require_json(c);
  const CharGroup G = group_of(c);
  const double tol = tolerance_of(c);
  json res{{"group", group_json(G, 0)}, {"check", c.target}};
  bool ok = true;

  if (c.target == "orthogonality") {
    json fams = json::array();
    for (SumFamily f : {SumFamily::Units, SumFamily::Characters, SumFamily::ConjugatePair, SumFamily::OddScalars,
                        SumFamily::EvenCharacters}) {
      const OrthogonalitySummary s = verify_orthogonality(G, f);
      ok = ok && s.failures == 0;
      fams.push_back(json{{"family", family_name(f)}, {"checks", s.checks}, {"failures", s.failures},
                          {"max_residual", s.max_residual}});
    }
    res["residuals"] = fams;
    res["passed"] = ok;
    return Outcome{res, ok, {}};
  }

  const LMatrix L = l_coeffs_all(G, c.workers);
  if (c.target == "fe") {
    Tally fe;
    Tally unimodular;
    Tally rebuild;
    for (std::uint64_t j = 1; j < G.phi(); ++j) {
      const LSeriesData s = L.series(G, j);
      const FunctionalEquationReport r = verify_functional_equation(s);
      fe.add(r.passed, r.max_residual / std::pow(static_cast<double>(G.field().q()), G.degree() / 2.0));
      const double dev = std::abs(std::abs(r.W) - 1.0);
      unimodular.add(dev <= 1e-9, dev);
      if (!s.chi.is_even()) continue;
      for (int k = 0; k <= c.k; ++k) {
        const cd direct = l_derivative_half(s, k);
        const double rel = std::abs(l_from_lhat(s, k) - direct) / std::max(std::abs(direct), 1e-300);
        rebuild.add(rel <= tol, rel);
      }
    }
    ok = fe.failures == 0 && unimodular.failures == 0 && rebuild.failures == 0;
    res["residuals"] = json{{"functional_equation", fe.to_json()}, {"root_number_modulus", unimodular.to_json()},
                            {"reconstruction", rebuild.to_json()}};
  } else if (c.target == "odd-reduction") {
    Tally full;
    Tally control;
    for (std::uint64_t j = 1; j < G.phi(); ++j) {
      const LSeriesData s = L.series(G, j);
      if (s.chi.is_even()) continue;
      for (int k = 0; k <= c.k; ++k) {
        ReductionReport r = verify_odd_reduction(s, k);
        full.add(reduction_passes(r, tol), scaled_error(r));
        ReductionReport n = verify_odd_reduction(s, k, false);
        control.add(!reduction_passes(n, tol), scaled_error(n));
      }
    }
    ok = full.failures == 0;
    res["residuals"] = json{{"with_shell", full.to_json()}, {"without_shell", control.to_json()}};
  } else if (c.target == "even-reduction") {
    Tally msel;
    Tally fgh;
    for (std::uint64_t j = 1; j < G.phi(); ++j) {
      const LSeriesData s = L.series(G, j);
      if (!s.chi.is_even()) continue;
      for (int k = 0; k <= c.k; ++k) {
        ReductionReport a = verify_even_reduction(s, k, EvenMode::MSelection);
        msel.add(reduction_passes(a, tol), scaled_error(a));
        ReductionReport b = verify_even_reduction(s, k, EvenMode::Fgh);
        fgh.add(reduction_passes(b, tol), scaled_error(b));
      }
    }
    ok = msel.failures == 0 && fgh.failures == 0;
    res["residuals"] = json{{"m_selection", msel.to_json()}, {"fgh", fgh.to_json()}};
    // total degrees in (i, j, D) of the exact weights, as computed
    json degrees = json::array();
    for (int k = 0; k <= c.k; ++k) {
      const EvenWeights w = gh_even(k);
      degrees.push_back(json{{"k", k},
                             {"g", w.g.total_degree()},
                             {"h", json::array({w.h[0].total_degree(), w.h[1].total_degree(), w.h[2].total_degree()})}});
    }
    res["weight_degrees"] = degrees;
  } else {
    json checks = json::object();
    const int l = c.l.value_or(c.k);
    if (c.k >= 1) {
      MomentReport m = first_moment(G, L, c.k, c.workers);
      ok = moment_passes(m, tol) && ok;
      checks["first"] = moment_json(m);
    }
    MomentReport s = second_moment(G, L, c.k, c.workers);
    ok = moment_passes(s, tol) && ok;
    checks["second"] = moment_json(s);
    try {
      FourthPieces p = decompose_fourth(G, L, c.k, l);
      p.passed = p.relative_error <= tol;
      ok = ok && p.passed;
      checks["fourth_decomposition"] = pieces_json(p);
      const DiagonalOracle d = diagonal_sum_oracle(G.field().q(), G.degree(), tuple_weight(c.k, l));
      ok = ok && d.equal;
      checks["diagonal_two_path"] =
          json{{"enumeration", sqrtq_json(d.enumeration)}, {"lattice", sqrtq_json(d.lattice)}, {"equal", d.equal}};
    } catch (const ResourceError& e) {
      checks["fourth_decomposition"] = json{{"skipped", e.what()}};
    }
    res["residuals"] = checks;
  }
  res["passed"] = ok;
  return Outcome{res, ok, {}};
}

Outcome do_constants(const RunConfig& c) {
  if (c.target == "dm") {
    const auto rows = dm_asymptotic_table(c.max_m);
    json out = json::array();
    bool monotone = true;
    bool bounded = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out.push_back(dm_row_json(rows[i], c.exact));
      if (rows[i].m >= 3 && !(rows[i].distance < rows[i - 1].distance)) monotone = false;
      if (rows[i].cross > rows[i].cross_bound) bounded = false;
    }
    const ReferenceConstants ref;
    json res{{"rows", out},
             {"distance_decreasing_from_2", monotone},
             {"cross_within_bound", bounded},
             {"reference_b2", rational_json(ref.b2)}};
    return Outcome{res, true, emit_dm_csv(rows)};
  }
  require_json(c);
  const int l = c.l.value_or(c.k);
  const BigRational v = fourth_main_coefficient(c.k, l);
  json res{{"k", c.k}, {"l", l}, {"coefficient", c.exact ? rational_json(v) : json(to_double(v))}};
  return Outcome{res, true, {}};
}

Outcome dispatch(const RunConfig& c) {
  if (c.command == "prime") return do_prime(c);
  if (c.command == "lfunc") return do_lfunc(c);
  if (c.command == "moment") {
    if (!contains(kMomentKinds, c.target)) throw std::invalid_argument("moment needs first, second or fourth");
    return do_moment(c);
  }
  if (c.command == "verify") {
    if (!contains(kVerifyKinds, c.target)) throw std::invalid_argument("unknown verify target '" + c.target + "'");
    return do_verify(c);
  }
  if (c.command == "constants") {
    if (!contains(kConstantKinds, c.target)) throw std::invalid_argument("constants needs dm or fourth");
    return do_constants(c);
  }
  if (c.command == "report") {
    if (!contains(kMomentKinds, c.target)) throw std::invalid_argument("report needs first, second or fourth");
    return do_report(c);
  }
  throw std::invalid_argument("unknown command '" + c.command + "'");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!contains(kCommands, cfg.command)) throw std::invalid_argument("unknown command '" + cfg.command + "'");
    if (cfg.format != "json" && cfg.format != "csv") throw std::invalid_argument("format must be json or csv");
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o = dispatch(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string bytes =
        cfg.format == "csv" ? o.csv : emit_json(make_document(config_to_json(cfg), o.results, secs));
    if (cfg.output.empty()) {
      out << bytes;
    } else {
      write_atomic(cfg.output, bytes);
    }
    if (!o.ok) {
      err << "verification failed; residuals are in the report\n";
      return kExitVerification;
    }
    return kExitOk;
  } catch (const InternalError& e) {
    err << "internal consistency check failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string help;
  try {
    cfg = parse_args(args, &help);
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\nrun with --help for the list of commands\n";
    return kExitUsage;
  }
  if (cfg.command.empty()) {
    out << help;
    return args.empty() ? kExitUsage : kExitOk;
  }
  return run(cfg, out, err);
}

}  // namespace fqm
