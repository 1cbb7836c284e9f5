#include "maass/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace maass::io {

namespace {

const std::set<std::string> kKeys = {"weight2", "level", "character", "period", "n0", "growth_C", "a", "b"};

[[noreturn]] void bad(const std::string& msg) { throw InputError("coefficient file: " + msg); }

long get_int(const json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  return v.get<long>();
}

std::map<long, cplx> get_coeffs(const json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  const auto& arr = j.at(key);
  if (!arr.is_array()) bad(std::string("field \"") + key + "\" must be an array of [n, re, im]");
  std::map<long, cplx> out;
  bool first = true;
  long prev = 0;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number() || !e[2].is_number())
      bad(std::string("entries of \"") + key + "\" must be [integer n, re, im]");
    const long n = e[0].get<long>();
    if (!first && n <= prev) bad(std::string("indices in \"") + key + "\" must be strictly ascending");
    out[n] = {e[1].get<double>(), e[2].get<double>()};
    prev = n;
    first = false;
  }
  return out;
}

json coeffs_json(const std::map<long, cplx>& m) {
  json arr = json::array();
  for (const auto& [n, c] : m) arr.push_back({n, c.real(), c.imag()});
  return arr;
}

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json fe_json(const verify::FEReport& r) {
  return {{"lhs", complex_json(r.lhs)},           {"rhs", complex_json(r.rhs)},
          {"abs_residual", r.abs_residual},       {"rel_residual", r.rel_residual},
          {"prefactor", complex_json(r.prefactor)}, {"tol", r.tol},
          {"pass", r.pass}};
}

void fe_csv_cols(std::ostringstream& os, const verify::FEReport& r) {
  os << ',' << csv_num(r.lhs.real()) << ',' << csv_num(r.lhs.imag()) << ',' << csv_num(r.rhs.real()) << ','
     << csv_num(r.rhs.imag()) << ',' << csv_num(r.abs_residual) << ',' << csv_num(r.rel_residual) << ','
     << csv_num(r.prefactor.real()) << ',' << csv_num(r.prefactor.imag()) << ',' << csv_num(r.tol) << ','
     << (r.pass ? "true" : "false");
}

const char* method_name(lseries::Method m) { return m == lseries::Method::Series ? "series" : "integral"; }

json lvalue_json(const lseries::LValue& v) {
  return {{"value", complex_json(v.value)}, {"trunc_err", v.trunc_err}, {"quad_err", v.quad_err},
          {"n_terms", v.n_terms},           {"method", method_name(v.method)}};
}

}  // namespace

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

form::FormData form_from_json(const json& j) {
  if (!j.is_object()) bad("top level must be an object");
  for (const auto& [key, _] : j.items())
    if (!kKeys.count(key) && key != "finite") bad("unknown field \"" + key + "\"");
  form::FormSpec s;
  s.weight2 = int(get_int(j, "weight2"));
  s.level = get_int(j, "level");
  s.period = get_int(j, "period");
  s.n0 = get_int(j, "n0");
  if (!j.contains("growth_C") || !j.at("growth_C").is_number()) bad("field \"growth_C\" must be a number");
  s.growth_C = j.at("growth_C").get<double>();
  if (!j.contains("character") || !j.at("character").is_object()) bad("field \"character\" must be an object");
  const auto& ch = j.at("character");
  const long m = get_int(ch, "modulus"), idx = get_int(ch, "index");
  if (m != s.level && !(m == 1 && idx == 0)) bad("character modulus must equal the level");
  s.a = get_coeffs(j, "a");
  s.b = get_coeffs(j, "b");
  if (j.contains("finite")) {
    if (!j.at("finite").is_boolean()) bad("field \"finite\" must be a boolean");
    s.finite = j.at("finite").get<bool>();
  }
  try {
    if (m > 1) {
      const specials::CharacterGroup group(m);
      if (idx < 0 || idx >= group.size()) bad("character index out of range");
      s.psi = group.character(idx);
    }
    return form::FormData(std::move(s));
  } catch (const DomainError& e) {
    bad(e.what());
  } catch (const RangeError& e) {
    bad(e.what());
  }
}

json form_to_json(const form::FormData& f) {
  json j;
  j["weight2"] = f.weight2();
  j["level"] = f.level();
  j["character"] = {{"modulus", f.psi().modulus()}, {"index", f.psi().index()}};
  j["period"] = f.period();
  j["n0"] = f.n0();
  j["growth_C"] = f.growth_C();
  j["a"] = coeffs_json(f.a());
  j["b"] = coeffs_json(f.b());
  if (f.finite()) j["finite"] = true;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": invalid JSON (" + e.what() + ")");
  }
}

form::FormData read_form(const std::string& path) { return form_from_json(parse_json_text(read_file(path), path)); }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write \"" + path + "\"");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

json fe_row_json(const FERow& r) {
  return {{"D", r.plain.D},
          {"chi_index", r.plain.chi_index},
          {"chi_id", r.plain.chi_id},
          {"phi_id", r.plain.phi_id},
          {"pass", r.plain.pass && r.delta.pass},
          {"plain", fe_json(r.plain)},
          {"delta", fe_json(r.delta)}};
}

std::string fe_csv(const std::vector<FERow>& rows) {
  std::ostringstream os;
  os << "D,chi_index,chi_id,phi_id,pass";
  for (const char* eq : {"plain", "delta"})
    for (const char* c : {"lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_residual", "rel_residual", "prefactor_re",
                          "prefactor_im", "tol", "pass"})
      os << ',' << eq << '_' << c;
  os << '\n';
  for (const auto& r : rows) {
    os << r.plain.D << ',' << r.plain.chi_index << ',' << csv_field(r.plain.chi_id) << ','
       << csv_field(r.plain.phi_id) << ',' << (r.plain.pass && r.delta.pass ? "true" : "false");
    fe_csv_cols(os, r.plain);
    fe_csv_cols(os, r.delta);
    os << '\n';
  }
  return os.str();
}

std::vector<FERow> fe_rows(const verify::SweepReport& s) {
  std::vector<FERow> rows;
  for (const auto& r : s.reports) {
    if (!r.delta) {
      rows.push_back({r, {}});
      rows.back().delta.pass = true;
    } else if (!rows.empty()) {
      rows.back().delta = r;
    }
  }
  return rows;
}

json sweep_json(const verify::SweepReport& s) {
  json j;
  j["verdict"] = s.consistent ? "consistent-with-modular" : "failed";
  j["consistent"] = s.consistent;
  j["n_checks"] = s.n_checks;
  j["moduli"] = s.moduli;
  auto brief = [](const verify::FEReport& r) {
    return json{{"D", r.D},           {"chi_index", r.chi_index},       {"chi_id", r.chi_id},
                {"phi_id", r.phi_id}, {"equation", r.delta ? "delta" : "plain"}, {"rel_residual", r.rel_residual},
                {"tol", r.tol}};
  };
  j["worst"] = brief(s.worst);
  j["witness"] = s.witness ? brief(*s.witness) : json(nullptr);
  json recs = json::array();
  for (const auto& r : fe_rows(s)) recs.push_back(fe_row_json(r));
  j["records"] = std::move(recs);
  return j;
}

json lrow_json(const LRow& r) {
  json j{{"phi_id", r.phi_id}};
  if (r.has_s) j["s"] = complex_json(r.s);
  j["series"] = lvalue_json(r.series);
  if (r.has_integral) {
    j["integral"] = lvalue_json(r.integral);
    j["agreement"] = r.agreement;
  }
  return j;
}

std::string lseries_csv(const std::vector<LRow>& rows) {
  std::ostringstream os;
  os << "phi_id,s_re,s_im,value_re,value_im,trunc_err,quad_err,n_terms,method,integral_re,integral_im,agreement\n";
  for (const auto& r : rows) {
    os << csv_field(r.phi_id) << ',' << (r.has_s ? csv_num(r.s.real()) : "") << ','
       << (r.has_s ? csv_num(r.s.imag()) : "") << ',' << csv_num(r.series.value.real()) << ','
       << csv_num(r.series.value.imag()) << ',' << csv_num(r.series.trunc_err) << ','
       << csv_num(r.series.quad_err) << ',' << r.series.n_terms << ',' << method_name(r.series.method) << ',';
    if (r.has_integral)
      os << csv_num(r.integral.value.real()) << ',' << csv_num(r.integral.value.imag()) << ','
         << csv_num(r.agreement);
    else
      os << ",,";
    os << '\n';
  }
  return os.str();
}

json term_json(const verify::TermReport& t, const std::string& kind) {
  json j{{"kind", kind},
         {"n", t.n},
         {"k", t.k},
         {"N", t.N},
         {"lhs", complex_json(t.lhs)},
         {"rhs", complex_json(t.rhs)},
         {"abs_residual", t.abs_residual},
         {"rel_residual", t.rel_residual},
         {"tol", t.tol},
         {"pass", t.pass}};
  if (kind == "mf") j["printed_ratio"] = t.printed_ratio;
  return j;
}

CheckRow check_row(const verify::TermReport& t, const std::string& kind, const std::string& phi_id) {
  return {kind, phi_id, t.n, t.k, t.N, t.lhs, t.rhs, t.abs_residual, t.rel_residual, t.tol, t.pass};
}

std::string check_csv(const std::vector<CheckRow>& rows) {
  std::ostringstream os;
  os << "kind,phi_id,n,k,N,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,tol,pass\n";
  for (const auto& r : rows)
    os << r.kind << ',' << csv_field(r.phi_id) << ',' << r.n << ',' << r.k << ',' << r.N << ','
       << csv_num(r.lhs.real()) << ',' << csv_num(r.lhs.imag()) << ',' << csv_num(r.rhs.real()) << ','
       << csv_num(r.rhs.imag()) << ',' << csv_num(r.abs_residual) << ',' << csv_num(r.rel_residual) << ','
       << csv_num(r.tol) << ',' << (r.pass ? "true" : "false") << '\n';
  return os.str();
}

json summation_json(const verify::SummationReport& r, const std::string& phi_id) {
  return {{"phi_id", phi_id},
          {"lhs", complex_json(r.lhs)},
          {"rhs", complex_json(r.rhs)},
          {"lhs_g", complex_json(r.lhs_g)},
          {"lhs_gW", complex_json(r.lhs_gW)},
          {"rhs_terms", r.rhs_terms},
          {"abs_residual", r.abs_residual},
          {"rel_residual", r.rel_residual},
          {"tol", r.tol},
          {"pass", r.pass}};
}

json decomp_json(const verify::DecompReport& r, const std::string& phi_id) {
  return {{"phi_id", phi_id},
          {"lg", complex_json(r.lg)},
          {"lg_plus", complex_json(r.lg_plus)},
          {"shadow_sum", complex_json(r.shadow_sum)},
          {"abs_residual", r.abs_residual},
          {"rel_residual", r.rel_residual},
          {"tol", r.tol},
          {"pass", r.pass}};
}

}  // namespace maass::io
