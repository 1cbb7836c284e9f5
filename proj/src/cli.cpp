#include "maass/cli.hpp"

#include <algorithm>
#include <iostream>

#include <CLI11.hpp>

#include "maass/io.hpp"
#include "maass/lseries.hpp"
#include "maass/parallel.hpp"
#include "maass/qseries.hpp"
#include "maass/verify.hpp"

namespace maass::cli {

namespace {

using form::FormData;
using io::json;
using testfn::TestFunction;

constexpr long kMaxPrecision = 50000;

long default_precision(const std::string& name) { return name == "theta" ? 256 : 64; }

FormData load(const FormSource& s) {
  if (!s.path.empty()) return io::read_form(s.path);
  const auto& names = qseries::fixture_names();
  if (std::find(names.begin(), names.end(), s.fixture) == names.end())
    throw InputError("unknown fixture \"" + s.fixture + "\"");
  return qseries::fixture(s.fixture, s.precision > 0 ? s.precision : default_precision(s.fixture));
}

// Runs fn(config); when stored coefficients run out, regenerates fixture-backed
// forms at a larger precision and tries again.
template <class Fn>
int with_retry(RunConfig c, Fn fn) {
  for (;;) {
    try {
      return fn(c);
    } catch (const InsufficientDataError& e) {
      bool bumped = false;
      for (FormSource* s : {&c.f, &c.g, &c.gw}) {
        if (s->fixture.empty()) continue;
        const long p = s->precision > 0 ? s->precision : default_precision(s->fixture);
        const long next = std::max(2 * p, e.required_n_max() + 1);
        if (next > kMaxPrecision) continue;
        s->precision = next;
        bumped = true;
        std::cerr << "note: regenerating fixture " << s->fixture << " at precision " << next << '\n';
      }
      if (!bumped) throw;
    }
  }
}

std::vector<TestFunction> make_battery(const BatterySpec& b) {
  std::vector<cplx> shifts(b.shifts.begin(), b.shifts.end());
  if (b.kind == "extended") return testfn::extended_battery();
  if (b.kind == "custom") return testfn::make_battery(b.count, b.lo, b.hi, shifts);
  auto base = testfn::standard_battery();
  if (shifts.empty()) return base;
  std::vector<TestFunction> out;
  for (cplx s : shifts)
    for (const auto& f : base) out.push_back(testfn::shift_s(f, s).with_id(f.id() + "_s" + std::to_string(s.real())));
  return out;
}

void emit(const RunConfig& c, const json& report, const std::string& csv) {
  io::write_output(c.output, c.format == Format::Csv ? csv : report.dump(2));
}

void print_witness(const verify::FEReport& w) {
  std::cerr << "witness: D=" << w.D << " chi=" << w.chi_id << " phi=" << w.phi_id
            << " equation=" << (w.delta ? "delta" : "plain") << " rel_residual=" << w.rel_residual
            << " tol=" << w.tol << '\n';
}

double rel_gap(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

int cmd_lseries(const RunConfig& c) {
  const FormData f = load(c.f);
  const double tol = c.tol > 0 ? c.tol : 1e-12;
  json records = json::array();
  if (c.classical) {
    if (c.s_values.empty()) throw InputError("--classical needs at least one --s value");
    std::string csv = "s,value_re,value_im,tail_bound,alpha,n_terms\n";
    for (double s : c.s_values) {
      const auto v = lseries::classical_value(f, s, c.tol > 0 ? c.tol : 1e-10);
      records.push_back({{"s", s},
                         {"value", io::complex_json(v.value)},
                         {"tail_bound", v.tail_bound},
                         {"alpha", v.alpha},
                         {"n_terms", v.n_terms}});
      char buf[200];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%ld\n", s, v.value.real(), v.value.imag(),
                    v.tail_bound, v.alpha, v.n_terms);
      csv += buf;
    }
    emit(c, json{{"command", "lseries"}, {"mode", "classical"}, {"records", records}}, csv);
    return kPass;
  }
  const auto battery = make_battery(c.battery);
  std::vector<io::LRow> rows;
  const bool has_g = c.g.given();
  const FormData g = has_g ? load(c.g) : f;
  auto one = [&](const TestFunction& phi, std::optional<double> s) {
    io::LRow r;
    r.phi_id = phi.id();
    if (s) {
      r.has_s = true;
      r.s = *s;
      r.series = has_g ? lseries::lseries_s(f, g, phi, *s, tol) : lseries::lseries_s(f, phi, *s, tol);
      if (c.integral) r.integral = lseries::lseries_integral(f, testfn::shift_s(phi, *s), tol);
    } else {
      r.series = lseries::lseries_series(f, phi, tol);
      if (c.integral) r.integral = lseries::lseries_integral(f, phi, tol);
    }
    if (c.integral) {
      r.has_integral = true;
      r.agreement = rel_gap(r.series.value, r.integral.value);
    }
    return r;
  };
  for (const auto& phi : battery) {
    if (c.s_values.empty()) rows.push_back(one(phi, std::nullopt));
    for (double s : c.s_values) rows.push_back(one(phi, s));
  }
  for (const auto& r : rows) records.push_back(io::lrow_json(r));
  emit(c, json{{"command", "lseries"}, {"records", records}}, io::lseries_csv(rows));
  return kPass;
}

int cmd_fe_check(const RunConfig& c) {
  const FormData f = load(c.f);
  const FormData g = c.g.given() ? load(c.g) : f;
  const auto battery = make_battery(c.battery);
  std::vector<specials::Character> chars;
  for (long D : c.moduli)
    for (const auto& chi : specials::characters_mod(D)) chars.push_back(chi);
  std::vector<io::FERow> rows(chars.size() * battery.size());
  parallel::for_each_index(long(rows.size()), [&](long i) {
    const auto& chi = chars[size_t(i) / battery.size()];
    const auto& phi = battery[size_t(i) % battery.size()];
    const auto p = verify::fe_residual(f, g, chi, phi, c.tol);
    rows[size_t(i)] = {p.plain, p.delta};
  });
  bool pass = true;
  json records = json::array();
  for (const auto& r : rows) {
    const bool ok = r.plain.pass && (!c.include_delta || r.delta.pass);
    if (!ok && pass) print_witness(!r.plain.pass ? r.plain : r.delta);
    pass = pass && ok;
    records.push_back(io::fe_row_json(r));
  }
  emit(c, json{{"command", "fe-check"}, {"pass", pass}, {"records", records}}, io::fe_csv(rows));
  return pass ? kPass : kCheckFailed;
}

int cmd_converse(const RunConfig& c) {
  const FormData f = load(c.f);
  const FormData g = c.g.given() ? load(c.g) : f;
  verify::SweepOptions o;
  o.tol = c.tol;
  o.primitive_only = c.primitive;
  o.dcap = c.dcap;
  o.include_delta = c.include_delta;
  const auto r = verify::converse_sweep(f, g, make_battery(c.battery), o);
  if (r.witness) print_witness(*r.witness);
  json report{{"command", "converse"}};
  report.update(io::sweep_json(r));
  emit(c, report, io::fe_csv(io::fe_rows(r)));
  return r.consistent ? kPass : kCheckFailed;
}

int cmd_summation(const RunConfig& c) {
  auto want = [&](const char* t) { return std::find(c.terms.begin(), c.terms.end(), t) != c.terms.end(); };
  for (const auto& t : c.terms)
    if (t != "gf" && t != "mf" && t != "residual" && t != "decomp")
      throw InputError("unknown --terms entry \"" + t + "\" (gf, mf, residual, decomp)");
  const auto phi = testfn::bump(c.phi_lo, c.phi_hi);
  json report{{"command", "summation-check"}};
  std::vector<io::CheckRow> rows;
  bool pass = true;
  json terms = json::array();
  for (int k : c.ks)
    for (long n = 1; n <= c.nmax; ++n) {
      if (want("gf")) {
        const auto t = verify::gf_term_check(n, k, phi, c.tol_gf);
        terms.push_back(io::term_json(t, "gf"));
        rows.push_back(io::check_row(t, "gf", phi.id()));
        pass = pass && t.pass;
      }
      if (want("mf")) {
        const auto t = verify::mf_term_check(n, k, c.level, phi, c.tol_mf);
        terms.push_back(io::term_json(t, "mf"));
        rows.push_back(io::check_row(t, "mf", phi.id()));
        pass = pass && t.pass;
      }
    }
  report["terms"] = terms;
  if (want("residual") || want("decomp")) {
    if (!c.f.given() || !c.g.given()) throw InputError("residual/decomp checks need f (--fixture/--input) and g⁺ (--g-fixture/--g-input)");
    const FormData f = load(c.f), gp = load(c.g);
    const FormData gw = c.gw.given() ? load(c.gw) : gp;
    const auto battery = make_battery(c.battery);
    json res = json::array(), dec = json::array();
    for (const auto& p : battery) {
      if (want("residual")) {
        const auto r = verify::summation_residual(f, gp, gw, p, c.tol > 0 ? c.tol : 1e-8);
        res.push_back(io::summation_json(r, p.id()));
        rows.push_back({"residual", p.id(), 0, f.weight2() / 2, f.level(), r.lhs, r.rhs, r.abs_residual,
                        r.rel_residual, r.tol, r.pass});
        pass = pass && r.pass;
      }
      if (want("decomp")) {
        const auto r = verify::decomp_check(f, gp, p, c.tol > 0 ? c.tol : 1e-9);
        dec.push_back(io::decomp_json(r, p.id()));
        rows.push_back({"decomp", p.id(), 0, f.weight2() / 2, f.level(), r.lg, r.lg_plus - std::conj(r.shadow_sum),
                        r.abs_residual, r.rel_residual, r.tol, r.pass});
        pass = pass && r.pass;
      }
    }
    if (want("residual")) report["residual"] = res;
    if (want("decomp")) report["decomp"] = dec;
  }
  report["pass"] = pass;
  emit(c, report, io::check_csv(rows));
  return pass ? kPass : kCheckFailed;
}

int cmd_fixtures_export(const RunConfig& c) {
  if (c.f.fixture.empty()) throw InputError("fixtures export needs --name");
  io::write_output(c.output, io::form_to_json(load(c.f)).dump());
  return kPass;
}

int cmd_fixtures_list(const RunConfig& c) {
  std::string out;
  for (const auto& n : qseries::fixture_names()) out += n + "\n";
  io::write_output(c.output, out);
  return kPass;
}

void add_form_options(CLI::App* app, FormSource& f, FormSource& g) {
  auto* fx = app->add_option("--fixture", f.fixture, "Built-in form: " + [] {
    std::string s;
    for (const auto& n : qseries::fixture_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }());
  auto* in = app->add_option("--input", f.path, "Coefficient JSON file for f");
  fx->excludes(in);
  app->add_option("--precision", f.precision, "Fixture precision (number of coefficients)");
  auto* gfx = app->add_option("--g-fixture", g.fixture, "Built-in form for g");
  auto* gin = app->add_option("--g-input", g.path, "Coefficient JSON file for g");
  gfx->excludes(gin);
  app->add_option("--g-precision", g.precision, "Fixture precision for g");
}

void add_battery_options(CLI::App* app, BatterySpec& b) {
  app->add_option("--battery", b.kind, "Test-function battery")
      ->check(CLI::IsMember({"default", "extended", "custom"}));
  app->add_option("--battery-count", b.count, "Custom battery size");
  app->add_option("--support-lo", b.lo, "Custom battery lower support bound");
  app->add_option("--support-hi", b.hi, "Custom battery upper support bound");
  app->add_option("--shift", b.shifts, "Replace each φ by x^{s−1}φ(x) (repeatable)");
}

void add_output_options(CLI::App* app, RunConfig& c) {
  app->add_option("-o,--output", c.output, "Report path (stdout by default)");
  app->add_option("--format", c.format, "Report format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"json", Format::Json}, {"csv", Format::Csv}},
                                          CLI::ignore_case)
                      .description(""))
      ->option_text("json|csv");
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.tol < 0 || !(c.tol_gf > 0) || !(c.tol_mf > 0)) throw InputError("tolerances must be positive");
  if (c.battery.count < 1) throw InputError("battery count must be ≥ 1");
  if (!(c.battery.lo > 0 && c.battery.hi > c.battery.lo)) throw InputError("battery support needs 0 < lo < hi");
  if (c.dcap < 1) throw InputError("D-cap must be ≥ 1");
  for (long D : c.moduli)
    if (D < 1) throw InputError("moduli must be positive");
  if (c.nmax < 1 || c.level < 1) throw InputError("--nmax and --level must be positive");
  if (!(c.phi_lo > 0 && c.phi_hi > c.phi_lo)) throw InputError("--phi-lo/--phi-hi need 0 < lo < hi");
  const bool needs_f = c.command == Command::LSeries || c.command == Command::FECheck || c.command == Command::Converse;
  if (needs_f && !c.f.given()) throw InputError("a form is required (--fixture or --input)");
}

int execute(const RunConfig& c) {
  validate(c);
  switch (c.command) {
    case Command::LSeries: return with_retry(c, cmd_lseries);
    case Command::FECheck: return with_retry(c, cmd_fe_check);
    case Command::Converse: return with_retry(c, cmd_converse);
    case Command::SummationCheck: return with_retry(c, cmd_summation);
    case Command::FixturesExport: return cmd_fixtures_export(c);
    case Command::FixturesList: return cmd_fixtures_list(c);
  }
  return kInputError;
}

int run(int argc, char** argv) {
  CLI::App app{"Test-function L-series of harmonic Maass forms: evaluation and functional-equation checks"};
  app.require_subcommand(1);
  RunConfig c;

  auto* ls = app.add_subcommand("lseries", "Evaluate L_f(φ) over a battery, L(s, f, φ), or classical values");
  add_form_options(ls, c.f, c.g);
  add_battery_options(ls, c.battery);
  add_output_options(ls, c);
  ls->add_option("--s", c.s_values, "Values of s (repeatable)");
  ls->add_flag("--classical", c.classical, "Σ a(n) n^{−s} instead of test-function values");
  ls->add_flag("!--no-integral", c.integral, "Skip the integral-representation column");
  ls->add_option("--tol", c.tol, "Relative tolerance");

  auto* fe = app.add_subcommand("fe-check", "Functional-equation residuals over (D, χ, φ)");
  add_form_options(fe, c.f, c.g);
  add_battery_options(fe, c.battery);
  add_output_options(fe, c);
  fe->add_option("--modulus", c.moduli, "Twist moduli D (every χ mod D); default 1");
  fe->add_option("--tol", c.tol, "Pass tolerance (default by weight)");
  fe->add_flag("!--no-delta", c.include_delta, "Ignore the δ_k equation in the verdict");

  auto* cv = app.add_subcommand("converse", "Converse-theorem sweep");
  add_form_options(cv, c.f, c.g);
  add_battery_options(cv, c.battery);
  add_output_options(cv, c);
  cv->add_option("--dcap", c.dcap, "Largest D in primitive mode");
  cv->add_flag("--primitive", c.primitive, "Primitive characters with D ≤ dcap");
  cv->add_option("--tol", c.tol, "Pass tolerance (default by weight)");
  cv->add_flag("!--no-delta", c.include_delta, "Skip the δ_k equation");

  auto* sm = app.add_subcommand("summation-check", "Summation-formula term identities and residuals");
  add_form_options(sm, c.f, c.g);
  add_battery_options(sm, c.battery);
  add_output_options(sm, c);
  sm->add_option("--gw-fixture", c.gw.fixture, "Built-in form for the holomorphic part of g|W_N");
  sm->add_option("--gw-input", c.gw.path, "Coefficient file for the holomorphic part of g|W_N");
  sm->add_option("--terms", c.terms, "Checks: gf, mf, residual, decomp")->delimiter(',');
  sm->add_option("--k", c.ks, "Weights k")->delimiter(',');
  sm->add_option("--nmax", c.nmax, "Largest n in the term grid");
  sm->add_option("--level", c.level, "Level N for the Whittaker terms");
  sm->add_option("--phi-lo", c.phi_lo, "Bump support start for the term grid");
  sm->add_option("--phi-hi", c.phi_hi, "Bump support end for the term grid");
  sm->add_option("--tol", c.tol, "Tolerance for residual/decomp checks");
  sm->add_option("--tol-gf", c.tol_gf, "Tolerance for the gf identities");
  sm->add_option("--tol-mf", c.tol_mf, "Tolerance for the mf identities");

  auto* fx = app.add_subcommand("fixtures", "Built-in forms");
  fx->require_subcommand(1);
  auto* ex = fx->add_subcommand("export", "Write a fixture in the coefficient JSON schema");
  ex->add_option("--name", c.f.fixture, "Fixture name")->required();
  ex->add_option("--precision", c.f.precision, "Number of coefficients");
  ex->add_option("-o,--output", c.output, "Output path (stdout by default)");
  auto* li = fx->add_subcommand("list", "List fixture names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }
  if (ls->parsed()) c.command = Command::LSeries;
  else if (fe->parsed()) c.command = Command::FECheck;
  else if (cv->parsed()) c.command = Command::Converse;
  else if (sm->parsed()) c.command = Command::SummationCheck;
  else if (ex->parsed()) c.command = Command::FixturesExport;
  else if (li->parsed()) c.command = Command::FixturesList;

  try {
    return execute(c);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const InsufficientDataError& e) {
    std::cerr << "input error: " << e.what() << " (coefficients needed up to n = " << e.required_n_max() << ")\n";
    return kInputError;
  } catch (const MembershipError& e) {
    std::cerr << "membership error (" << e.side() << " side): " << e.what() << '\n';
    return kDomainError;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const RangeError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace maass::cli
