#pragma once

// JSON forms of systems, solutions and reports. Every report carries a
// "schema" field; rationals are always "p/q" strings.

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

#include "fracsum/addcomb.hpp"
#include "fracsum/boxdim.hpp"
#include "fracsum/ifs.hpp"
#include "fracsum/proofs.hpp"
#include "fracsum/rational.hpp"

namespace fracsum::json_io {

using nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "fracsum-report v1";
inline constexpr const char* kSystemSchema = "fracsum-system v1";
inline constexpr const char* kCsvHeader = "# fracsum-csv v1";

inline Rational rational_from(const ordered_json& j) {
  if (!j.is_string()) throw ParseError("rationals must be given as \"p/q\" strings");
  return parse_rational(j.get<std::string>());
}

inline ordered_json to_json(const ifs::IFSystem& sys) {
  ordered_json b = ordered_json::array();
  for (const auto& m : sys.maps()) {
    ordered_json v = ordered_json::array();
    for (const auto& x : m.b) v.push_back(format_rational(x));
    b.push_back(v);
  }
  return {{"schema", kSystemSchema},
          {"d", sys.dim()},
          {"r", format_rational(sys.ratio())},
          {"b", b},
          {"label", ifs::describe(sys.label())}};
}

// {"d": 1, "r": "1/3", "b": [["0"], ["2/3"]]}; "label" is informational.
inline ifs::IFSystem system_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("b")) throw ParseError("system JSON needs \"r\" and \"b\"");
  const int d = j.value("d", 1);
  const Rational r = rational_from(j.at("r"));
  std::vector<ifs::Similarity> maps;
  for (const auto& v : j.at("b")) {
    ifs::Vec b;
    if (!v.is_array()) throw ParseError("each translation must be an array of \"p/q\" strings");
    for (const auto& x : v) b.push_back(rational_from(x));
    maps.push_back({r, b, true});
  }
  return ifs::IFSystem(d, std::move(maps));
}

inline ordered_json to_json(const proofs::Report& rep) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name},
                      {"statement", c.statement},
                      {"method", c.method},
                      {"verdict", c.pass ? "pass" : "fail"},
                      {"detail", c.detail}});
  return {{"schema", kReportSchema},
          {"engine", rep.engine},
          {"verdict", rep.all_pass() ? "pass" : "fail"},
          {"checks", checks},
          {"notes", rep.notes}};
}

inline std::string digit_string(const std::vector<int>& digits) {
  std::string s;
  for (int d : digits) s += static_cast<char>(d < 10 ? '0' + d : 'a' + d - 10);
  return s;
}

inline std::vector<int> parse_digit_string(const std::string& s, int n) {
  std::vector<int> out;
  for (char c : s) {
    int d = -1;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'z') d = c - 'a' + 10;
    if (d < 0 || d >= n) throw ParseError("bad base-" + std::to_string(n) + " digit '" + std::string(1, c) + "'");
    out.push_back(d);
  }
  return out;
}

inline ordered_json to_json(const proofs::DigitSolution& sol) {
  ordered_json x = ordered_json::array(), y = ordered_json::array(), xv = ordered_json::array();
  for (std::size_t p = 0; p < sol.x_digits.size(); ++p) {
    x.push_back(digit_string(sol.x_digits[p]));
    xv.push_back(format_rational(sol.x(p)));
  }
  for (const auto& v : sol.y) y.push_back(format_rational(v));
  return {{"n", sol.n}, {"k", sol.k},         {"M", sol.M},          {"x_digits", x},
          {"x", xv},    {"delta", sol.delta}, {"y", y},              {"identity", sol.verify() ? "exact" : "broken"}};
}

inline proofs::DigitSolution digit_solution_from_json(const ordered_json& j) {
  proofs::DigitSolution sol;
  sol.n = j.at("n").get<int>();
  sol.k = j.at("k").get<int>();
  sol.M = j.at("M").get<int>();
  for (const auto& s : j.at("x_digits")) sol.x_digits.push_back(parse_digit_string(s.get<std::string>(), sol.n));
  sol.delta = j.at("delta").get<std::vector<int>>();
  for (const auto& v : j.at("y")) sol.y.push_back(rational_from(v));
  return sol;
}

inline ordered_json to_json(const addcomb::InequalityReport& r) {
  return {{"statement", r.statement},       {"lhs_count", r.lhs_count},
          {"s_count", r.s_count},           {"sum_count", r.sum_count},
          {"lhs_power", r.lhs.get_str()},   {"rhs_power", r.rhs.get_str()},
          {"ratio", format_rational(r.ratio())}, {"verdict", r.holds ? "pass" : "fail"}};
}

inline ordered_json to_json(const addcomb::Conj5Record& rec) {
  return {{"trial", rec.trial}, {"instance", addcomb::serialize(rec.instance)}, {"check", to_json(rec.check)}};
}

inline ordered_json to_json(const addcomb::Conj5Report& rep) {
  ordered_json viol = ordered_json::array();
  for (const auto& v : rep.violations) viol.push_back(to_json(v));
  ordered_json j = {{"schema", kReportSchema}, {"engine", "conj5"},     {"seed", rep.seed},
                    {"trials", rep.trials},    {"nmin", rep.nmin},      {"nmax", rep.nmax}};
  if (rep.max) {
    j["max_ratio"] = format_rational(rep.max->check.ratio());
    j["max_ratio_root"] = std::pow(boxdim::to_double(rep.max->check.ratio()), 1.0 / 5.0);
    j["argmax"] = to_json(*rep.max);
  }
  j["violations"] = viol;
  return j;
}

inline ordered_json to_json(const proofs::Conj222Report& rep) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"depth", r.depth},
                    {"outer_cells", r.outer_cells},
                    {"outer_measure", format_rational(r.outer_measure)},
                    {"outer_measure_approx", boxdim::to_double(r.outer_measure)}});
  return {{"schema", kReportSchema},     {"engine", "conj222"},       {"a", format_rational(rep.a)},
          {"k", rep.k},                  {"grid_base", rep.grid_base}, {"grid_depth", rep.grid_depth},
          {"rows", rows},                {"nonincreasing", rep.nonincreasing},
          {"note", "report only; an outer-measure upper bound on a common grid"}};
}

inline ordered_json to_json(const boxdim::DimBound& b, double dim_e) {
  ordered_json j = {{"tag", to_string(b.tag)},
                    {"params", b.params},
                    {"formula", b.formula()},
                    {"value", b.value(dim_e)},
                    {"conjectural", b.conjectural}};
  if (b.gamma) j["gamma"] = b.gamma->text();
  return j;
}

inline ordered_json to_json(const boxdim::DimEstimate& e) {
  ordered_json samples = ordered_json::array();
  for (const auto& s : e.samples) samples.push_back({{"depth", s.depth}, {"count", s.count}});
  return {{"base", e.base},
          {"samples", samples},
          {"estimate", e.slope},
          {"residual", e.residual},
          {"step_slopes", e.step_slopes},
          {"counts_nondecreasing", e.counts_nondecreasing}};
}

inline ordered_json to_json(const boxdim::SumExperiment& ex) {
  ordered_json bounds = ordered_json::array();
  for (const auto& b : ex.bounds) bounds.push_back(to_json(b, ex.dim_e));
  ordered_json j = {{"schema", kReportSchema},
                    {"engine", "sumdim"},
                    {"K", ex.k_name},
                    {"E", ex.e_name},
                    {"base", ex.base},
                    {"estimate", ex.est_sum.slope},
                    {"residual", ex.est_sum.residual},
                    {"estimate_K", ex.est_k.slope},
                    {"estimate_E", ex.est_e.slope},
                    {"dimE", ex.dim_e},
                    {"dimE_source", ex.dim_e_source}};
  if (ex.bound) {
    j["bound"] = ex.bound_value;
    j["bound_tag"] = to_string(ex.bound->tag);
    j["gamma"] = ex.bound->gamma ? ex.bound->gamma->text() : "";
  } else {
    j["bound"] = nullptr;
    j["gamma"] = nullptr;
  }
  j["tolerance"] = ex.tolerance;
  j["verdict"] = ex.bound ? (ex.pass ? "PASS" : "FAIL") : "NO-BOUND";
  j["bounds"] = bounds;
  j["note"] = "finite-depth slopes estimate a liminf; see step_slope for oscillation";
  return j;
}

inline std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

inline std::string to_csv(const boxdim::SumExperiment& ex) {
  std::string out = std::string(kCsvHeader) + "\ndepth,N_K,N_E,N_sum,step_slope\n";
  for (const auto& r : ex.rows)
    out += std::to_string(r.depth) + "," + std::to_string(r.n_k) + "," + std::to_string(r.n_e) + "," +
           std::to_string(r.n_sum) + "," + (r.step_slope ? fixed(*r.step_slope) : "") + "\n";
  return out;
}

inline std::string to_csv(const boxdim::DimEstimate& e) {
  std::string out = std::string(kCsvHeader) + "\ndepth,N,step_slope\n";
  for (std::size_t i = 0; i < e.samples.size(); ++i)
    out += std::to_string(e.samples[i].depth) + "," + std::to_string(e.samples[i].count) + "," +
           (i ? fixed(e.step_slopes[i - 1]) : "") + "\n";
  return out;
}

}  // namespace fracsum::json_io
