#include "philap/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "philap/cli/csv.hpp"
#include "philap/errors.hpp"
#include "philap/oracle.hpp"
#include "philap/period.hpp"
#include "philap/reflection.hpp"
#include "philap/sensitivity.hpp"
#include "philap/solution.hpp"
#include "philap/sweep.hpp"

namespace philap::cli {

namespace {

const std::set<std::string> kFlagKeys = {"oracle", "scan", "closed_form", "arcsin", "sensitivity"};

std::string dashed(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

PeriodMethod parse_method(const std::string& name) {
  if (name == "general") return PeriodMethod::general_quadrature;
  if (name == "particular") return PeriodMethod::particular_quadrature;
  if (name == "odd") return PeriodMethod::odd_homogeneous;
  if (name == "closed") return PeriodMethod::plaplacian_closed;
  throw ConfigError("unknown method '" + name + "' (expected general, particular, odd, closed or all)");
}

bool is_plain_power(const Nonlinearity& f) { return f.family() == Family::power; }

void print_period(std::ostream& out, const PeriodResult& r) {
  out << "T=" << fmt(r.T) << '\n'
      << "method=" << to_string(r.method) << '\n'
      << "err_estimate=" << fmt(r.err_estimate) << '\n';
}

struct AssertSpec {
  SweepAxis axis;
  Trend trend;
  std::string label;
};

std::vector<AssertSpec> parse_asserts(const std::string& text) {
  std::vector<AssertSpec> out;
  std::string spaced = text;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream in(spaced);
  for (std::string item; in >> item;) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("assert_monotone item '" + item + "' lacks ':'");
    const std::string axis = item.substr(0, colon);
    const std::string trend = item.substr(colon + 1);
    AssertSpec a{SweepAxis::c, Trend::increasing, item};
    if (axis == "c") {
      a.axis = SweepAxis::c;
    } else if (axis == "lambda") {
      a.axis = SweepAxis::lambda;
    } else {
      throw ConfigError("assert_monotone axis '" + axis + "' (expected c or lambda)");
    }
    if (trend == "inc") {
      a.trend = Trend::increasing;
    } else if (trend == "dec") {
      a.trend = Trend::decreasing;
    } else {
      throw ConfigError("assert_monotone trend '" + trend + "' (expected inc or dec)");
    }
    out.push_back(a);
  }
  return out;
}

int dispatch(const std::string& command, const RunConfig& config, std::ostream& out,
             std::ostream& err) {
  if (command == "period") return cmd_period(config, out, err);
  if (command == "solve") return cmd_solve(config, out, err);
  if (command == "sweep") return cmd_sweep(config, out, err);
  if (command == "shoot") return cmd_shoot(config, out, err);
  if (command == "sine") return cmd_sine(config, out, err);
  throw ConfigError("unknown command '" + command + "'");
}

// Runs fn and maps library errors onto the exit-code contract.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InfeasibleError& e) {
    err << e.what() << '\n';
    return kExitInfeasible;
  } catch (const BracketError& e) {
    err << "bracket error: " << e.what() << '\n';
    return kExitBracket;
  } catch (const ConvergenceError& e) {
    err << "convergence failure: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const IntegrityError& e) {
    err << "integrity failure: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const BlowUpError& e) {
    err << "oracle blow-up: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitConvergence;
  }
}

}  // namespace

int cmd_period(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const double tol = config.tolerance(kPeriodTol);
  const std::string method = config.get_string("method", config.particular() ? "particular" : "general");
  if (!config.particular()) {
    if (method != "general" && method != "all") {
      throw ConfigError("method '" + method + "' needs the particular problem (set 'c')");
    }
    if (config.get_bool("sensitivity")) throw ConfigError("sensitivity needs the particular problem");
    print_period(out, period_general(config.ivp(), tol));
    return kExitOk;
  }
  const Nonlinearity f = config.f();
  const double c = config.get_double("c", 0.0);
  const double lambda = config.get_double("lambda", 1.0);
  if (config.has("a") && config.get_double("a", 0.0) != 0.0) {
    err << "warning: the period does not depend on a\n";
  }
  require_global(normalize(IVPSpec::particular_case(f, c, lambda)));

  if (method != "all") {
    print_period(out, period_by_method(parse_method(method), f, c, lambda, tol));
  } else {
    std::vector<PeriodMethod> methods = {PeriodMethod::general_quadrature,
                                         PeriodMethod::particular_quadrature};
    if (is_plain_power(f)) {
      if (c > 0.0) methods.push_back(PeriodMethod::odd_homogeneous);
      methods.push_back(PeriodMethod::plaplacian_closed);
    }
    std::vector<double> values;
    for (PeriodMethod m : methods) {
      const PeriodResult r = period_by_method(m, f, c, lambda, tol);
      out << "method=" << to_string(m) << " T=" << fmt(r.T) << " err_estimate=" << fmt(r.err_estimate)
          << '\n';
      values.push_back(r.T);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        worst = std::max(worst, std::fabs(values[i] - values[j]) /
                                    std::max(std::fabs(values[i]), std::fabs(values[j])));
      }
    }
    out << "max_rel_disagreement=" << fmt(worst) << '\n';
  }
  if (config.get_bool("sensitivity")) {
    const double stol = config.has("tol") ? tol : kSensitivityTol;
    out << "dT_dlambda=" << fmt(sensitivity_lambda(f, c, lambda, stol)) << '\n'
        << "dT_dc=" << fmt(sensitivity_c(f, c, lambda, stol)) << '\n';
  }
  return kExitOk;
}

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const IVPSpec spec = config.ivp();
  const SolutionCurve curve = solve_ivp(spec);
  const int samples = config.get_int("samples", 1000);
  if (samples < 1) throw ConfigError("samples must be at least 1");
  const double t_start = config.get_double("t_start", spec.a);
  if (curve.degenerate()) {
    err << "warning: c1 = c2 = 0 is an equilibrium; the solution is constant, emitting one row\n";
    curve.write_csv(out, t_start, t_start, 1);
    return kExitOk;
  }
  const double t_end = config.get_double("t_end", t_start + 3.0 * curve.period());
  if (!config.get_bool("oracle")) {
    curve.write_csv(out, t_start, t_end, samples);
    return kExitOk;
  }
  std::vector<double> times(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    times[i] = samples == 1 ? t_start : t_start + (t_end - t_start) * i / static_cast<double>(samples - 1);
  }
  const double step = config.get_double("oracle_step", default_oracle_step(spec));
  const std::vector<PhaseState> oracle = sample_planar(spec, times, step);
  const Nonlinearity g_inv = spec.g_part.inverted();
  double dev_x = 0.0;
  double dev_xp = 0.0;
  out << "t,x,xprime,energy_residual,x_oracle,xprime_oracle\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    const State s = curve.at(times[i]);
    const double xo = oracle[i].x;
    const double xpo = g_inv.eval_unchecked(oracle[i].y);
    dev_x = std::max(dev_x, std::fabs(s.x - xo));
    dev_xp = std::max(dev_xp, std::fabs(s.xprime - xpo));
    out << fmt(times[i]) << ',' << fmt(s.x) << ',' << fmt(s.xprime) << ','
        << fmt(curve.energy_residual(times[i])) << ',' << fmt(xo) << ',' << fmt(xpo) << '\n';
  }
  out << "# max_deviation=" << fmt(dev_x) << '\n'
      << "# max_deviation_xprime=" << fmt(dev_xp) << '\n'
      << "# oracle_step=" << fmt(step) << '\n';
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Nonlinearity f = config.f();
  const SweepTable table =
      sweep_grid(f, config.get_grid("c_grid"), config.get_grid("lambda_grid"), config.tolerance(kPeriodTol));
  table.write_csv(out);
  if (table.feasible_count() == 0) {
    err << "infeasible: no feasible cell in the grid\n";
    return kExitInfeasible;
  }
  int code = kExitOk;
  if (const auto text = config.get("assert_monotone")) {
    for (const AssertSpec& a : parse_asserts(*text)) {
      const MonotoneCheck check = check_monotone(table, a.axis, a.trend);
      out << "# assert " << a.label << (check.ok ? " ok" : " FAILED") << " pairs=" << check.pairs_checked
          << '\n';
      for (const auto& v : check.violations) err << "monotone violation (" << a.label << "): " << v << '\n';
      if (!check.ok) code = kExitMonotone;
    }
  }
  return code;
}

int cmd_shoot(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Nonlinearity f = config.f();
  if (!config.has("a") || !config.has("b")) throw ConfigError("shoot needs 'a' and 'b'");
  const double a = config.get_double("a", 0.0);
  const double b = config.get_double("b", 0.0);
  std::optional<double> closed;
  if (config.get_bool("closed_form")) {
    if (!is_plain_power(f)) {
      throw UnsupportedError("the closed-form c exists only for the unshifted power family");
    }
    if (f.exponent() == 2.0) {
      out << "closed_form=degenerate\n";
      err << "warning: p = 2 gives T = 2*pi for every c; the closed form has no unique c\n";
      return kExitOk;
    }
    closed = closed_form_c_plaplacian(f.exponent(), a, b);
  }

  double c_lo = 0.0;
  double c_hi = 0.0;
  if (config.has("bracket")) {
    const auto br = config.get_doubles("bracket");
    if (br.size() != 2) throw ConfigError("bracket needs two values");
    c_lo = br[0];
    c_hi = br[1];
  } else if (config.get_bool("scan")) {
    const auto changes = scan_brackets(f, a, b, config.get_double("scan_min", 1e-2),
                                       config.get_double("scan_max", 1e2), config.get_int("scan_points", 41));
    if (changes.empty()) {
      throw BracketError("scan found no sign change of (b-a) - T(c)", std::nan(""), std::nan(""));
    }
    out << "scan_sign_changes=" << changes.size() << '\n';
    c_lo = changes.front().c_lo;
    c_hi = changes.front().c_hi;
  } else {
    throw ConfigError("shoot needs 'bracket' or 'scan'");
  }

  const ShootingResult result = shoot_bolzano(f, a, b, c_lo, c_hi);
  result.write_report(out);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  if (closed) {
    out << "closed_form_c=" << fmt(*closed) << '\n'
        << "closed_form_rel_diff=" << fmt(std::fabs(result.c_star - *closed) / std::fabs(*closed)) << '\n';
  }
  if (const auto path = config.get("curve_out")) {
    std::ofstream file(*path);
    if (!file) throw ConfigError("cannot write curve file '" + *path + "'");
    result.curve->write_csv(file, a, b, config.get_int("samples", 1000));
  }
  return kExitOk;
}

int cmd_sine(const RunConfig& config, std::ostream& out, std::ostream&) {
  const GeneralizedSine sine(config.f(), config.g());
  const int samples = config.get_int("samples", config.get_bool("arcsin") ? 101 : 1000);
  if (samples < 2) throw ConfigError("samples must be at least 2");
  if (config.get_bool("arcsin")) {
    const double lo = sine.curve().x_min();
    const double hi = sine.curve().x_max();
    out << "r,arcsin_plus,arcsin_minus\n";
    for (int i = 0; i < samples; ++i) {
      const double r = i == samples - 1 ? hi : lo + (hi - lo) * i / static_cast<double>(samples - 1);
      out << fmt(r) << ',' << fmt(sine.arcsin_plus(r)) << ',' << fmt(sine.arcsin_minus(r)) << '\n';
    }
    return kExitOk;
  }
  const double t_start = config.get_double("t_start", 0.0);
  const double t_end = config.get_double("t_end", t_start + sine.curve().period());
  out << "t,sin,sin_prime\n";
  for (int i = 0; i < samples; ++i) {
    const double t = t_start + (t_end - t_start) * i / static_cast<double>(samples - 1);
    out << fmt(t) << ',' << fmt(sine.sin(t)) << ',' << fmt(sine.sin_prime(t)) << '\n';
  }
  return kExitOk;
}

int cmd_validate_csv(const std::string& path, std::ostream& out, std::ostream&) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open csv file '" + path + "'");
  const CsvSummary s = validate_csv(in, path);
  out << "csv_ok=true\ncolumns=" << s.header.size() << "\nrows=" << s.rows << "\ncomments=" << s.comments
      << '\n';
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic solutions of phi-Laplacian problems (g(x'))' + lambda f(x) = 0"};
  app.name("philap");
  std::string from_csv;
  app.add_option("--from-csv", from_csv, "Validate a CSV emitted by this tool");
  app.require_subcommand(0, 1);

  struct Binding {
    std::string config_path;
    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
    std::vector<std::string> bracket;
    std::map<std::string, CLI::Option*> options;
  };
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"period", "Period by one or all formulas"},
      {"solve", "Sample the solution curve as CSV"},
      {"sweep", "Period over a (c, lambda) grid as CSV"},
      {"shoot", "Reflection problem by shooting on c"},
      {"sine", "Tabulate the generalized sine or its inverses"},
  };
  std::map<std::string, Binding> bindings;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    Binding& bind = bindings[name];
    sub->add_option("--config", bind.config_path, "Config file of key = value lines");
    for (const std::string& key : known_keys()) {
      const std::string flag = "--" + dashed(key);
      if (key == "bracket") {
        bind.options[key] = sub->add_option(flag, bind.bracket, "c_lo c_hi")->expected(2);
      } else if (kFlagKeys.count(key) != 0) {
        bind.options[key] = sub->add_flag(flag, bind.flags[key]);
      } else {
        bind.options[key] = sub->add_option(flag, bind.values[key]);
      }
    }
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  return guarded(err, [&]() -> int {
    std::string command;
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) command = name;
    }
    if (command.empty()) {
      if (!from_csv.empty()) return cmd_validate_csv(from_csv, out, err);
      err << app.help();
      return kExitConfig;
    }
    const Binding& bind = bindings.at(command);
    RunConfig config;
    if (!bind.config_path.empty()) config = RunConfig::load(bind.config_path);
    RunConfig overrides;
    for (const auto& [key, opt] : bind.options) {
      if (opt->count() == 0) continue;
      if (key == "bracket") {
        overrides.set(key, bind.bracket[0] + " " + bind.bracket[1]);
      } else if (kFlagKeys.count(key) != 0) {
        overrides.set(key, bind.flags.at(key) ? "true" : "false");
      } else {
        overrides.set(key, bind.values.at(key));
      }
    }
    config.merge(overrides);
    if (const auto path = config.get("output")) {
      std::ofstream file(*path);
      if (!file) throw ConfigError("cannot write output file '" + *path + "'");
      const int code = dispatch(command, config, file, err);
      if (!from_csv.empty()) err << "warning: --from-csv ignored with a subcommand\n";
      return code;
    }
    return dispatch(command, config, out, err);
  });
}

}  // namespace philap::cli
