#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "maass/form.hpp"
#include "maass/lseries.hpp"
#include "maass/verify.hpp"

namespace maass::io {

using json = nlohmann::ordered_json;

// Coefficient files:
// {"weight2", "level", "character": {"modulus", "index"}, "period", "n0", "growth_C",
//  "a": [[n, re, im], ...], "b": [[n, re, im], ...]}
// with n strictly ascending. An optional boolean "finite" marks the data as the
// complete expansion. Violations throw InputError.
form::FormData form_from_json(const json& j);
json form_to_json(const form::FormData& f);
form::FormData read_form(const std::string& path);
json parse_json_text(const std::string& text, const std::string& source);

std::string read_file(const std::string& path);
// Writes to path, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text);

json complex_json(cplx z);

// FE checks: one record per (D, χ index, φ id) holding both equations.
struct FERow {
  verify::FEReport plain, delta;
};
json fe_row_json(const FERow& r);
std::string fe_csv(const std::vector<FERow>& rows);
// Pairs the plain/δ reports of a sweep in order.
std::vector<FERow> fe_rows(const verify::SweepReport& s);
json sweep_json(const verify::SweepReport& s);

struct LRow {
  std::string phi_id;
  cplx s = 1.0;
  bool has_s = false;
  lseries::LValue series;
  bool has_integral = false;
  lseries::LValue integral;
  double agreement = 0.0;  // relative gap series vs integral
};
json lrow_json(const LRow& r);
std::string lseries_csv(const std::vector<LRow>& rows);

json term_json(const verify::TermReport& t, const std::string& kind);
json summation_json(const verify::SummationReport& r, const std::string& phi_id);
json decomp_json(const verify::DecompReport& r, const std::string& phi_id);

// Flat table for the summation-formula checks (term identities, residuals, decomposition).
struct CheckRow {
  std::string kind, phi_id;
  long n = 0;
  int k = 0;
  long N = 0;
  cplx lhs, rhs;
  double abs_residual = 0.0, rel_residual = 0.0, tol = 0.0;
  bool pass = false;
};
CheckRow check_row(const verify::TermReport& t, const std::string& kind, const std::string& phi_id);
std::string check_csv(const std::vector<CheckRow>& rows);

}  // namespace maass::io
