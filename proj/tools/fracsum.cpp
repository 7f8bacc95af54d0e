// fracsum: command-line harness for the attractor, box-counting, verifier and
// search engines. Exit codes: 0 pass, 1 failure, 2 hypothesis or input error,
// 3 resource cap, 4 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fracsum/addcomb.hpp"
#include "fracsum/boxdim.hpp"
#include "fracsum/cellgrid.hpp"
#include "fracsum/errors.hpp"
#include "fracsum/ifs.hpp"
#include "fracsum/json_io.hpp"
#include "fracsum/proofs.hpp"
#include "fracsum/rational.hpp"
#include "fracsum/sumset.hpp"

namespace {

using namespace fracsum;
using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitInternal = 4;

// Cap overrides from the environment.
std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  const auto parsed = addcomb::parse_int_list(v);
  if (parsed.size() != 1 || parsed[0] < 1) throw ParseError(std::string(name) + " must be a positive integer");
  return static_cast<std::uint64_t>(parsed[0]);
}

std::uint64_t interval_cap() { return env_cap("FRACSUM_INTERVAL_CAP", ifs::kDefaultIntervalCap); }
std::uint64_t pair_cap() { return env_cap("FRACSUM_PAIR_CAP", sumset::kDefaultPairCap); }
std::uint64_t point_cap() { return env_cap("FRACSUM_POINT_CAP", 10'000'000); }

const char* kCapHelp =
    "Resource caps (environment overrides): FRACSUM_INTERVAL_CAP (default 10000000 intervals per approximant), "
    "FRACSUM_PAIR_CAP (default 50000000 pairs per interval sum), FRACSUM_POINT_CAP (default 10000000 grid points "
    "for the digit cover check). Exceeding a cap exits with status 3.";

// "a:b" inclusive, or a single depth.
std::vector<int> parse_depths(const std::string& text) {
  const auto colon = text.find(':');
  auto one = [&](const std::string& s) {
    const auto v = addcomb::parse_int_list(s);
    if (v.size() != 1 || v[0] < 0 || v[0] > 64) throw ParseError("bad depth '" + s + "'");
    return static_cast<int>(v[0]);
  };
  if (colon == std::string::npos) return {one(text)};
  const int a = one(text.substr(0, colon));
  const int b = one(text.substr(colon + 1));
  if (b < a) throw ParseError("depth range " + text + " is empty");
  std::vector<int> out;
  for (int m = a; m <= b; ++m) out.push_back(m);
  return out;
}

std::vector<int> parse_digits(const std::string& text) {
  std::vector<int> out;
  for (auto v : addcomb::parse_int_list(text)) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<int> parse_signs(const std::string& text) {
  std::vector<int> out;
  for (char c : text) {
    if (c == '+') out.push_back(1);
    else if (c == '-') out.push_back(-1);
    else if (c != ',' && c != ' ') throw ParseError("signs must be a string of + and -");
  }
  return out;
}

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
  }
  void json(const ordered_json& j) const { write(j.dump(2) + "\n"); }
};

void write_file(const std::string& path, const std::string& text, bool append = false) {
  std::ofstream f(path, append ? std::ios::binary | std::ios::app : std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

// Family selection shared by attractor, boxdim and prop3.
struct FamilyArgs {
  std::string family;
  int n = 3;
  std::string digits = "0,2";
  std::string a;
  int J = 3;
  std::string r;
  std::string system_file;

  void add_to(CLI::App* app) {
    app->add_option("--family", family,
                     "digit-cantor | homogeneous | r2 | middle-thirds | system, or a set name "
                     "(cantor3, cantor4, digit:n:A, homogeneous:a, r2:J:r)");
    app->add_option("--n", n, "digit base for digit-cantor");
    app->add_option("--A", digits, "digit set for digit-cantor, comma separated");
    app->add_option("--a", a, "parameter a = p/q for homogeneous");
    app->add_option("--J", J, "J for the r2 family");
    app->add_option("--r", r, "ratio r = p/q for the r2 family");
    app->add_option("--system", system_file, "system JSON file {d, r, b} for --family system");
  }

  boxdim::SetSpec spec() const {
    boxdim::SetSpec s;
    s.kind = boxdim::SetSpec::Kind::system;
    if (family == "digit-cantor") {
      s.name = "digit:" + std::to_string(n) + ":" + digits;
      s.sys = ifs::build(ifs::DigitCantor{n, parse_digits(digits)});
    } else if (family == "homogeneous") {
      if (a.empty()) throw ParseError("--a is required for the homogeneous family");
      s.name = "homogeneous:" + a;
      s.sys = ifs::build(ifs::HomogeneousCantor{parse_rational(a)});
    } else if (family == "r2") {
      if (r.empty()) throw ParseError("--r is required for the r2 family");
      const Rational rr = parse_rational(r);
      if (!ifs::check_r2_hypotheses(J, rr))
        throw HypothesisError("r2 family needs J >= 3 and 2/(3J) <= r < 1/(J+1); got J=" + std::to_string(J) +
                              ", r=" + to_string(rr));
      s.name = "r2:" + std::to_string(J) + ":" + r;
      s.sys = ifs::build(ifs::R2Family{J, rr});
    } else if (family == "middle-thirds") {
      s.name = "cantor3";
      s.sys = ifs::middle_thirds();
    } else if (family == "system") {
      std::ifstream f(system_file);
      if (!f) throw ParseError("cannot read system file '" + system_file + "'");
      ordered_json j;
      try {
        j = ordered_json::parse(f);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("system file: ") + e.what());
      }
      s.name = system_file;
      s.sys = json_io::system_from_json(j);
    } else if (family.empty()) {
      throw ParseError("--family is required");
    } else {
      s = boxdim::parse_set(family);
      if (s.kind != boxdim::SetSpec::Kind::system) throw ParseError("--family needs a self-similar set");
    }
    return s;
  }
};

// ---------------------------------------------------------------------------

struct AttractorCmd {
  FamilyArgs fam;
  int depth = 0;
  std::string format = "intervals";
  int base = 0;
  int cell_depth = -1;
  Output out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("attractor", "Write the depth-m approximant K_m");
    fam.add_to(c);
    c->add_option("--depth", depth, "approximant depth m")->required();
    c->add_option("--format", format, "intervals | cells | json")->check(CLI::IsMember({"intervals", "cells", "json"}));
    c->add_option("--base", base, "cell base for --format cells (default: natural base)");
    c->add_option("--cell-depth", cell_depth, "cell depth for --format cells (default: --depth)");
    c->add_option("-o,--out", out.path, "output file (default stdout)");
    c->callback([this] { code = run(); });
  }
  int code = 0;

  int run() const {
    const auto s = fam.spec();
    const auto& sys = *s.sys;
    if (sys.dim() == 1) {
      const auto km = ifs::approximant(sys, depth, interval_cap());
      if (format == "intervals") {
        out.write(to_text(km));
      } else if (format == "cells") {
        BigInt nb = boxdim::natural_base(s);
        const int b = base ? base : (nb < 2 ? 2 : static_cast<int>(nb.get_si()));
        out.write(to_text(from_intervals(km, b, cell_depth >= 0 ? cell_depth : depth, CellMode::outer)));
      } else {
        ordered_json iv = ordered_json::array();
        for (const auto& i : km.intervals()) iv.push_back({format_rational(i.lo), format_rational(i.hi)});
        out.json({{"schema", json_io::kReportSchema},
                  {"engine", "attractor"},
                  {"system", json_io::to_json(sys)},
                  {"depth", depth},
                  {"count", km.size()},
                  {"measure", format_rational(km.measure())},
                  {"intervals", iv}});
      }
    } else {
      const auto km = ifs::box_approximant(sys, depth, ifs::hull_box(sys), interval_cap());
      std::ostringstream os;
      for (const auto& bx : km.boxes()) {
        for (std::size_t i = 0; i < bx.lo.size(); ++i) os << (i ? " " : "") << format_rational(bx.lo[i]);
        for (std::size_t i = 0; i < bx.hi.size(); ++i) os << " " << format_rational(bx.hi[i]);
        os << "\n";
      }
      out.write(os.str());
    }
    return kExitPass;
  }
};

struct BoxdimCmd {
  FamilyArgs fam;
  std::string depths = "4:12";
  int base = 0;
  std::string csv;
  unsigned workers = 1;
  Output out;
  int code = 0;

  void add(CLI::App& app, unsigned& w) {
    auto* c = app.add_subcommand("boxdim", "Box counts and slope estimate for one self-similar set");
    fam.add_to(c);
    c->add_option("--depths", depths, "depth range a:b (inclusive)");
    c->add_option("--base", base, "grid base (default: natural base of the set)");
    c->add_option("--csv", csv, "write depth,N,step_slope CSV here");
    c->add_option("-o,--out", out.path, "JSON summary file (default stdout)");
    c->callback([this, &w] {
      workers = w;
      code = run();
    });
  }

  int run() const {
    const auto s = fam.spec();
    if (s.sys->dim() != 1) throw std::invalid_argument("boxdim supports d = 1 systems");
    const auto est = boxdim::run_box_dimension(s, parse_depths(depths), base ? std::optional<int>(base) : std::nullopt,
                                               workers);
    if (!csv.empty()) write_file(csv, json_io::to_csv(est));
    ordered_json j = {{"schema", json_io::kReportSchema}, {"engine", "boxdim"}, {"set", s.name}};
    j.update(json_io::to_json(est));
    j["similarity_dimension"] = s.similarity_dimension().text();
    out.json(j);
    return kExitPass;
  }
};

struct SumdimCmd {
  std::string k_set = "cantor3";
  std::string e_set = "point";
  std::string depths = "4:8";
  int base = 0;
  std::string bound;
  std::string tolerance = "1/20";
  std::string csv;
  unsigned workers = 1;
  Output out;
  int code = 0;

  void add(CLI::App& app, unsigned& w) {
    auto* c = app.add_subcommand("sumdim", "Box-counting experiment for K+E against the applicable lower bounds");
    c->add_option("--K", k_set, "set K (cantor3, cantor4, digit:n:A, homogeneous:a, r2:J:r)");
    c->add_option("--E", e_set, "set E (any set name, point or interval)");
    c->add_option("--depths", depths, "depth range a:b (inclusive)");
    c->add_option("--base", base, "common grid base (default: lcm of natural bases)");
    c->add_option("--bound", bound, "bound tag to compare against (default: strongest proven bound)");
    c->add_option("--tolerance", tolerance, "tolerance on the slope as p/q");
    c->add_option("--csv", csv, "write depth,N_K,N_E,N_sum,step_slope CSV here");
    c->add_option("-o,--out", out.path, "JSON summary file (default stdout)");
    c->callback([this, &w] {
      workers = w;
      code = run();
    });
  }

  int run() const {
    boxdim::ExperimentOptions opt;
    if (base) opt.base = base;
    if (!bound.empty()) opt.bound_tag = boxdim::parse_bound_tag(bound);
    const Rational tol = parse_rational(tolerance);
    if (tol < 0) throw ParseError("tolerance must be >= 0");
    opt.tolerance = boxdim::to_double(tol);
    opt.workers = workers;
    const auto ex = boxdim::run_sum_experiment(boxdim::parse_set(k_set), boxdim::parse_set(e_set), parse_depths(depths), opt);
    if (!csv.empty()) write_file(csv, json_io::to_csv(ex));
    out.json(json_io::to_json(ex));
    return ex.bound && !ex.pass ? kExitFail : kExitPass;
  }
};

// ---------------------------------------------------------------------------
// verify

struct VerifyCmd {
  unsigned workers = 1;
  Output out;
  int code = 0;

  // prop2
  int n = 3;
  std::string digits = "0,1";
  int k = 1;
  int depth = 6;
  std::vector<std::string> y;
  // prop3
  FamilyArgs fam;
  bool report_violations = false;
  // r3 / r4
  int J = 3;
  std::string r = "9/40";
  int grid_base = 2;
  int grid_depth = 8;
  // addcomb
  std::string k_list;
  std::string s_list;
  std::string signs;
  bool exhaustive = false;
  std::uint64_t random_trials = 0;
  std::uint64_t seed = 1;
  std::int64_t nmax = 64;
  int kmax = 4;

  void add(CLI::App& app, unsigned& w) {
    auto* v = app.add_subcommand("verify", "Run a verifier; exit 0 iff every check passes");
    v->require_subcommand(1);
    auto wrap = [this, &w](auto fn) {
      return [this, &w, fn] {
        workers = w;
        code = (this->*fn)();
      };
    };

    auto* p2 = v->add_subcommand("prop2", "Digit recursion and the 2^k-translate cover check");
    p2->add_option("--n", n, "digit base");
    p2->add_option("--A", digits, "digit set, comma separated");
    p2->add_option("--k", k, "tuple length k");
    p2->add_option("--depth", depth, "grid depth of the cover check");
    p2->add_option("--y", y, "solve for these targets (one base-n digit string per coordinate) instead");
    p2->add_option("-o,--out", out.path, "report file (default stdout)");
    p2->callback(wrap(&VerifyCmd::prop2));

    auto* p3 = v->add_subcommand("prop3", "conv{(k+1)b_j} inside k-fold sums of the approximants");
    fam.add_to(p3);
    p3->add_option("--k", k, "number of summands");
    p3->add_option("--depth", depth, "largest depth m");
    p3->add_flag("--report-violations", report_violations,
                 "record a failed k+1 >= d/r hypothesis and run anyway (exit 1) instead of exiting 2");
    p3->add_option("-o,--out", out.path, "report file (default stdout)");
    p3->callback(wrap(&VerifyCmd::prop3));

    auto* r3 = v->add_subcommand("r3", "Hexagon inside the difference set D(K_m) of the r2 family");
    r3->add_option("--J", J, "J");
    r3->add_option("--r", r, "ratio p/q");
    r3->add_option("--depth", depth, "largest depth m");
    r3->add_option("--grid-base", grid_base, "raster base");
    r3->add_option("--grid-depth", grid_depth, "raster depth");
    r3->add_option("-o,--out", out.path, "report file (default stdout)");
    r3->callback(wrap(&VerifyCmd::r3));

    auto* r4 = v->add_subcommand("r4", "Exact polygon tiling argument for the hexagon inclusion");
    r4->add_option("--J", J, "J");
    r4->add_option("--r", r, "ratio p/q");
    r4->add_option("-o,--out", out.path, "report file (default stdout)");
    r4->callback(wrap(&VerifyCmd::r4));

    auto* e42 = v->add_subcommand("eq42", "Do the difference tuples of A fill (Z_n)^k?");
    e42->add_option("--n", n, "modulus");
    e42->add_option("--A", digits, "subset of Z_n, comma separated");
    e42->add_option("--k", k, "tuple length");
    e42->add_option("-o,--out", out.path, "report file (default stdout)");
    e42->callback(wrap(&VerifyCmd::eq42));

    for (const char* name : {"lemma2a", "plunnecke"}) {
      const bool pl = std::string(name) == "plunnecke";
      auto* c = v->add_subcommand(name, pl ? "Signed-sum inequality |K±...±K| |S|^(k-1) <= |K+S|^k"
                                           : "Tuple inequality |D_k(K)| |S| <= |K+S|^(k+1)");
      c->add_option("--n", n, "modulus");
      c->add_option("--K", k_list, "K, comma separated");
      c->add_option("--S", s_list, "S, comma separated");
      if (pl) c->add_option("--signs", signs, "signs such as +- (k = number of signs)");
      c->add_option("--k", k, pl ? "number of terms for --exhaustive" : "tuple length");
      c->add_flag("--exhaustive", exhaustive, "all nonempty K, S in Z_n, both inequalities (uses --n and --k >= 2)");
      c->add_option("--random", random_trials, "number of seeded random instances");
      c->add_option("--seed", seed, "seed for --random");
      c->add_option("--nmax", nmax, "largest modulus for --random");
      c->add_option("--kmax", kmax, "largest k for --random");
      c->add_option("-o,--out", out.path, "report file (default stdout)");
      c->callback(pl ? wrap(&VerifyCmd::plunnecke) : wrap(&VerifyCmd::lemma2a));
    }
  }

  int emit(const proofs::Report& rep) const {
    out.json(json_io::to_json(rep));
    return rep.all_pass() ? kExitPass : kExitFail;
  }

  int prop2() const {
    const auto a = parse_digits(digits);
    if (!y.empty()) {
      std::vector<std::vector<int>> yd;
      for (const auto& s : y) yd.push_back(json_io::parse_digit_string(s, n));
      const auto sol = proofs::prop2_solve(n, a, k, yd);
      ordered_json j = {{"schema", json_io::kReportSchema}, {"engine", "prop2"}};
      j["solution"] = json_io::to_json(sol);
      j["verdict"] = sol.verify() ? "pass" : "fail";
      out.json(j);
      return sol.verify() ? kExitPass : kExitFail;
    }
    const auto res = proofs::prop2_cover_check(n, a, k, depth, workers, point_cap());
    proofs::Report rep;
    rep.engine = "prop2";
    rep.add("hypothesis.eq42", "difference tuples of A fill (Z_n)^k", "exact", true);
    std::string detail = std::to_string(res.points) + " grid points, " + std::to_string(res.raster_checked) +
                         " cross-checked against the difference-set raster";
    if (res.failure) {
      detail += "; first failure at y = (";
      for (std::size_t i = 0; i < res.failure->size(); ++i) detail += (i ? "," : "") + to_string((*res.failure)[i]);
      detail += ")";
    }
    rep.add("cover", "every grid point of [0,1]^k is delta + (x_0 - x_1, ..., x_0 - x_k) with delta in {-1,0}^k",
            "exact", res.holds, detail);
    rep.notes.push_back("passing at one depth is finite-depth evidence, not a proof of the limit statement");
    return emit(rep);
  }

  int prop3() const {
    proofs::Prop3Options opt;
    opt.strict = !report_violations;
    opt.cap = pair_cap();
    return emit(proofs::prop3_verify(*fam.spec().sys, k, depth, opt));
  }

  int r3() const {
    proofs::R3Options opt;
    opt.grid_base = grid_base;
    opt.grid_depth = grid_depth;
    opt.workers = workers;
    return emit(proofs::r3_verify(J, parse_rational(r), depth, opt));
  }

  int r4() const { return emit(proofs::r4_tiling_check(J, parse_rational(r))); }

  int eq42() const {
    std::vector<std::int64_t> a;
    for (auto v : addcomb::parse_int_list(digits)) a.push_back(v);
    const auto res = addcomb::eq42_holds(n, a, k);
    ordered_json j = {{"schema", json_io::kReportSchema}, {"engine", "eq42"}, {"n", n}, {"A", a}, {"k", k},
                      {"counting_bound", res.counting_bound}, {"verdict", res.holds ? "pass" : "fail"}};
    if (res.witness) j["witness"] = *res.witness;
    out.json(j);
    return res.holds ? kExitPass : kExitFail;
  }

  int sweep_report(const char* engine, const addcomb::SweepReport& rep) const {
    ordered_json viol = ordered_json::array();
    for (const auto& i : rep.violations) viol.push_back(addcomb::serialize(i));
    out.json({{"schema", json_io::kReportSchema},
              {"engine", engine},
              {"instances", rep.instances},
              {"violations", viol},
              {"verdict", rep.violations.empty() ? "pass" : "fail"}});
    return rep.violations.empty() ? kExitPass : kExitFail;
  }

  int single(const char* engine, const addcomb::InequalityReport& r) const {
    ordered_json j = {{"schema", json_io::kReportSchema}, {"engine", engine}};
    j.update(json_io::to_json(r));
    out.json(j);
    return r.holds ? kExitPass : kExitFail;
  }

  int lemma2a() const {
    if (exhaustive) return sweep_report("lemma2a", addcomb::sweep_exhaustive(n, k));
    if (random_trials) return sweep_report("lemma2a", addcomb::sweep_random(false, random_trials, nmax, kmax, seed, workers));
    return single("lemma2a", addcomb::check_tuple_inequality(addcomb::GroupSubset::cyclic(n, addcomb::parse_int_list(k_list)),
                                                              addcomb::GroupSubset::cyclic(n, addcomb::parse_int_list(s_list)), k));
  }

  int plunnecke() const {
    if (exhaustive) return sweep_report("plunnecke", addcomb::sweep_exhaustive(n, k));
    if (random_trials) return sweep_report("plunnecke", addcomb::sweep_random(true, random_trials, nmax, kmax, seed, workers));
    return single("plunnecke", addcomb::check_plunnecke(addcomb::GroupSubset::cyclic(n, addcomb::parse_int_list(k_list)),
                                                         addcomb::GroupSubset::cyclic(n, addcomb::parse_int_list(s_list)),
                                                         parse_signs(signs)));
  }
};

// ---------------------------------------------------------------------------
// search

struct SearchCmd {
  unsigned workers = 1;
  Output out;
  int code = 0;
  std::int64_t nmin = 2;
  std::int64_t nmax = 32;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 7;
  std::string violations;
  std::string a = "49/100";
  int k = 2;
  std::string depths = "1:8";
  int grid_base = 0;
  int grid_depth = 0;

  void add(CLI::App& app, unsigned& w) {
    auto* s = app.add_subcommand("search", "Report-only conjecture harnesses");
    s->require_subcommand(1);
    auto* c5 = s->add_subcommand("conj5", "Seeded random search on the five-variable sumset conjecture");
    c5->add_option("--nmin", nmin, "smallest modulus");
    c5->add_option("--nmax", nmax, "largest modulus (<= 64)");
    c5->add_option("--trials", trials, "number of trials");
    c5->add_option("--seed", seed, "seed");
    c5->add_option("--violations", violations, "append violating instances to this JSON-lines file");
    c5->add_option("-o,--out", out.path, "summary JSON line (default stdout)");
    c5->callback([this, &w] {
      workers = w;
      code = conj5();
    });
    auto* c2 = s->add_subcommand("conj222", "Outer measures of rasterized D_k(C_a) on one common grid");
    c2->add_option("--a", a, "parameter a = p/q in (0, 1/2)");
    c2->add_option("--k", k, "k in {1,2,3}");
    c2->add_option("--depths", depths, "depth range a:b (inclusive)");
    c2->add_option("--grid-base", grid_base, "raster base (default: chosen from a and k)");
    c2->add_option("--grid-depth", grid_depth, "raster depth (with --grid-base)");
    c2->add_option("-o,--out", out.path, "JSON-lines report (default stdout)");
    c2->callback([this, &w] {
      workers = w;
      code = conj222();
    });
  }

  int conj5() const {
    const auto rep = addcomb::search_conjecture5(nmin, nmax, trials, seed, workers);
    if (!violations.empty() && !rep.violations.empty()) {
      std::string lines;
      for (const auto& v : rep.violations) lines += json_io::to_json(v).dump() + "\n";
      write_file(violations, lines, true);
    }
    out.write(json_io::to_json(rep).dump() + "\n");
    return kExitPass;
  }

  int conj222() const {
    std::optional<std::pair<int, int>> grid;
    if (grid_base) {
      if (grid_depth <= 0) throw std::invalid_argument("--grid-depth is required with --grid-base");
      grid = std::make_pair(grid_base, grid_depth);
    }
    const auto rep = proofs::explore_conj222(parse_rational(a), k, parse_depths(depths), grid, workers);
    const auto j = json_io::to_json(rep);
    std::string lines;
    for (const auto& row : j.at("rows")) {
      ordered_json line = {{"schema", json_io::kReportSchema}, {"engine", "conj222"}, {"a", j.at("a")}, {"k", rep.k}};
      line.update(row);
      lines += line.dump() + "\n";
    }
    ordered_json summary = j;
    summary.erase("rows");
    lines += summary.dump() + "\n";
    out.write(lines);
    return kExitPass;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracsum: sums of self-similar sets, box counting and exact verifiers"};
  app.footer(std::string(kCapHelp) +
             "\nRationals are exact \"p/q\" strings; decimals are rejected. Depth ranges are \"a:b\" inclusive.\n"
             "Exit codes: 0 pass, 1 failure, 2 hypothesis or input error, 3 resource cap, 4 internal error.");
  app.require_subcommand(1);
  app.fallthrough();
  unsigned workers = 1;
  app.add_option("--workers", workers, "worker threads (outputs do not depend on it)")->check(CLI::Range(1u, 256u));

  AttractorCmd attractor;
  BoxdimCmd boxdim_cmd;
  SumdimCmd sumdim;
  VerifyCmd verify;
  SearchCmd search;
  attractor.add(app);
  boxdim_cmd.add(app, workers);
  sumdim.add(app, workers);
  verify.add(app, workers);
  search.add(app, workers);
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  for (int c : {attractor.code, boxdim_cmd.code, sumdim.code, verify.code, search.code})
    if (c != 0) return c;
  return kExitPass;
}
