#pragma once

// Box-counting estimates and the lower bounds of the form
// dim(K+E) >= gamma d + (1 - gamma) dim(E). Floating point appears only in
// slopes, bound values and the tolerance comparison of experiments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fracsum/addcomb.hpp"
#include "fracsum/bitline.hpp"
#include "fracsum/cellgrid.hpp"
#include "fracsum/errors.hpp"
#include "fracsum/ifs.hpp"
#include "fracsum/parallel.hpp"
#include "fracsum/rational.hpp"
#include "fracsum/sumset.hpp"

namespace fracsum::boxdim {

using fracsum::to_string;

// Nearest double for moderate numerators and denominators.
inline double to_double(const Rational& q) { return q.get_num().get_d() / q.get_den().get_d(); }

// Number of depth-m cells meeting the set.
inline std::uint64_t box_count(const IntervalUnion& e, int base, int m) {
  return from_intervals(e, base, m, CellMode::outer).size();
}

// Cells of e coarsened to depth m (e must be at depth >= m on the same base).
inline std::uint64_t box_count(const CellSet& e, int m) {
  if (m > e.depth()) throw std::invalid_argument("box_count: target depth exceeds the set's depth");
  const std::int64_t f = to_int64(ipow(BigInt(e.base()), static_cast<unsigned long>(e.depth() - m)));
  auto coarse = [f](std::int64_t c) { return c >= 0 ? c / f : -((-c + f - 1) / f); };
  std::vector<Cell> out;
  for (const auto& c : e.cells()) out.push_back({coarse(c[0]), e.dim() > 1 ? coarse(c[1]) : 0, e.dim() > 2 ? coarse(c[2]) : 0});
  std::sort(out.begin(), out.end());
  return static_cast<std::uint64_t>(std::unique(out.begin(), out.end()) - out.begin());
}

struct Sample {
  int depth = 0;
  std::uint64_t count = 0;
};

struct DimEstimate {
  int base = 2;
  std::vector<Sample> samples;
  double slope = 0;
  double intercept = 0;
  double residual = 0;               // max |log N - fit| in units of log(base); below 1e-12 reported as 0
  std::vector<double> step_slopes;   // between consecutive samples
  bool counts_nondecreasing = true;
};

// Least-squares slope of log N_m against m log(base).
inline DimEstimate estimate_dim(std::vector<Sample> samples, int base) {
  if (samples.size() < 2) throw std::invalid_argument("estimate_dim: need at least two samples");
  if (base < 2) throw std::invalid_argument("estimate_dim: base must be >= 2");
  std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.depth < b.depth; });
  for (const auto& s : samples)
    if (s.count == 0) throw std::invalid_argument("estimate_dim: counts must be positive");
  DimEstimate est;
  est.base = base;
  est.samples = samples;
  const double lb = std::log(static_cast<double>(base));
  const auto n = static_cast<double>(samples.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& s : samples) {
    const double x = s.depth;
    const double y = std::log(static_cast<double>(s.count)) / lb;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0) throw std::invalid_argument("estimate_dim: depths must differ");
  est.slope = (n * sxy - sx * sy) / den;
  est.intercept = (sy - est.slope * sx) / n;
  for (const auto& s : samples) {
    const double y = std::log(static_cast<double>(s.count)) / lb;
    est.residual = std::max(est.residual, std::abs(y - (est.intercept + est.slope * s.depth)));
  }
  if (est.residual < 1e-12) est.residual = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    est.step_slopes.push_back((std::log(static_cast<double>(samples[i].count)) -
                               std::log(static_cast<double>(samples[i - 1].count))) /
                              (lb * (samples[i].depth - samples[i - 1].depth)));
    if (samples[i].count < samples[i - 1].count) est.counts_nondecreasing = false;
  }
  return est;
}

// An exact rational, or log(p)/log(q) for positive rationals p, q with q != 1.
class Gamma {
 public:
  static Gamma exact(Rational v) { return Gamma(std::move(v)); }
  static Gamma log_ratio(Rational p, Rational q) {
    if (p <= 0 || q <= 0 || q == 1) throw std::invalid_argument("log ratio needs p, q > 0 and q != 1");
    Gamma g(Rational(0));
    g.log_ = std::make_pair(std::move(p), std::move(q));
    return g;
  }

  bool is_rational() const { return !log_.has_value(); }
  const Rational& rational() const {
    if (log_) throw std::logic_error("gamma is not rational");
    return q_;
  }
  double value() const {
    if (!log_) return to_double(q_);
    return std::log(to_double(log_->first)) / std::log(to_double(log_->second));
  }
  std::string text() const {
    if (!log_) return to_string(q_);
    return "log(" + to_string(log_->first) + ")/log(" + to_string(log_->second) + ")";
  }
  friend bool operator==(const Gamma& a, const Gamma& b) { return a.q_ == b.q_ && a.log_ == b.log_; }

 private:
  explicit Gamma(Rational v) : q_(std::move(v)) {}
  Rational q_;
  std::optional<std::pair<Rational, Rational>> log_;
};

enum class BoundTag { thm1, prop1, eq2106, r2, thm2, ca_conjecture, generic_conc, trivial_eq1 };

inline const char* to_string(BoundTag t) {
  switch (t) {
    case BoundTag::thm1: return "thm1";
    case BoundTag::prop1: return "prop1";
    case BoundTag::eq2106: return "eq2106";
    case BoundTag::r2: return "r2";
    case BoundTag::thm2: return "thm2";
    case BoundTag::ca_conjecture: return "ca_conjecture";
    case BoundTag::generic_conc: return "generic_conc";
    case BoundTag::trivial_eq1: return "trivial_eq1";
  }
  return "?";
}

inline BoundTag parse_bound_tag(const std::string& s) {
  for (auto t : {BoundTag::thm1, BoundTag::prop1, BoundTag::eq2106, BoundTag::r2, BoundTag::thm2,
                 BoundTag::ca_conjecture, BoundTag::generic_conc, BoundTag::trivial_eq1})
    if (s == to_string(t)) return t;
  throw ParseError("unknown bound tag: " + s);
}

struct DimBound {
  BoundTag tag = BoundTag::generic_conc;
  std::string params;
  int d = 1;
  std::optional<Gamma> gamma;  // absent only for the trivial min bound
  std::optional<Gamma> dim_k;  // used by the trivial bound
  bool conjectural = false;

  // gamma d + (1 - gamma) dimE, or min(dim K, dimE) for the trivial bound.
  double value(double dim_e) const {
    if (!gamma) return std::min(dim_k->value(), dim_e);
    const double g = gamma->value();
    return g * d + (1 - g) * dim_e;
  }
  // Exact value when gamma is rational.
  std::optional<Rational> exact_value(const Rational& dim_e) const {
    if (!gamma || !gamma->is_rational()) return std::nullopt;
    const Rational& g = gamma->rational();
    return g * d + (1 - g) * dim_e;
  }
  // dim E > (dim K - gamma d) / (1 - gamma): the bound beats min(dim K, dim E).
  bool improves_on_trivial(double dim_k_value, double dim_e) const {
    if (!gamma) return false;
    const double g = gamma->value();
    return dim_e > (dim_k_value - g * d) / (1 - g);
  }
  std::string formula() const {
    if (!gamma) return "min(" + dim_k->text() + ", dimE)";
    const std::string g = gamma->text();
    return g + "*" + std::to_string(d) + " + (1 - " + g + ")*dimE";
  }
};

inline DimBound bound_thm1(int d, const Rational& r, std::optional<long> k = std::nullopt) {
  if (r <= 0 || r >= 1) throw HypothesisError("r must lie in (0,1)");
  const long kk = k.value_or(ifs::min_k_thm1(d, r));
  if (kk < 1 || Rational(kk + 1) < Rational(d) / r)
    throw HypothesisError("k+1 >= d/r fails for k=" + std::to_string(kk) + ", d/r=" + to_string(Rational(d) / r));
  return {BoundTag::thm1, "d=" + std::to_string(d) + ",r=" + to_string(r) + ",k=" + std::to_string(kk), d,
          Gamma::exact(make_rational(1, kk)), std::nullopt, false};
}

inline DimBound bound_prop1(const Rational& a, std::optional<long> k = std::nullopt) {
  const long need = ifs::min_k_prop1(a);
  const long kk = k.value_or(need);
  if (kk < need) throw HypothesisError("k >= (1-a)/a fails for k=" + std::to_string(kk) + ", a=" + to_string(a));
  return {BoundTag::prop1, "a=" + to_string(a) + ",k=" + std::to_string(kk), 1, Gamma::exact(make_rational(1, kk)),
          std::nullopt, false};
}

// Middle-thirds set: gamma = log 2 / log 3.
inline DimBound bound_eq2106() {
  return {BoundTag::eq2106, "n=3,A={0,2}", 1, Gamma::log_ratio(2, 3), std::nullopt, false};
}

// C_{n,A} with 0 in A and |A| = n - 1: gamma = log(n-1)/log n.
inline DimBound bound_eq2106(int n, const std::vector<int>& digits) {
  std::vector<int> a = digits;
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  if (n < 3) throw HypothesisError("n must be >= 3");
  if (a.empty() || a.front() != 0) throw HypothesisError("0 must belong to A");
  if (static_cast<int>(a.size()) != n - 1) throw HypothesisError("|A| must equal n - 1");
  if (a.back() >= n) throw HypothesisError("digits must lie in {0..n-1}");
  std::string s = "n=" + std::to_string(n) + ",A={";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return {BoundTag::eq2106, s + "}", 1, Gamma::log_ratio(n - 1, n), std::nullopt, false};
}

inline DimBound bound_r2(long J, const Rational& r) {
  if (!ifs::check_r2_hypotheses(J, r))
    throw HypothesisError("need J >= 3 and 2/(3J) <= r < 1/(J+1); got J=" + std::to_string(J) + ", r=" + to_string(r));
  return {BoundTag::r2, "J=" + std::to_string(J) + ",r=" + to_string(r), 1, Gamma::exact(make_rational(2, 3)),
          std::nullopt, false};
}

// k/(k+1) + dimE/(k+1); when (n, A) is given the fill condition is checked.
inline DimBound bound_thm2(long k, std::optional<std::pair<int, std::vector<int>>> digit_set = std::nullopt) {
  if (k < 1) throw HypothesisError("k must be >= 1");
  std::string params = "k=" + std::to_string(k);
  if (digit_set) {
    std::vector<std::int64_t> a(digit_set->second.begin(), digit_set->second.end());
    const auto res = addcomb::eq42_holds(digit_set->first, a, static_cast<int>(k));
    if (!res.holds) throw HypothesisError("difference tuples of A do not fill (Z_n)^k");
    params += ",n=" + std::to_string(digit_set->first);
  }
  return {BoundTag::thm2, params, 1, Gamma::exact(make_rational(k, k + 1)), std::nullopt, false};
}

inline DimBound bound_ca_conjecture(const Rational& a) {
  if (a <= 0 || a >= make_rational(1, 2)) throw HypothesisError("a must lie in (0, 1/2)");
  return {BoundTag::ca_conjecture, "a=" + to_string(a), 1, Gamma::log_ratio(2, 1 / a), std::nullopt, true};
}

inline DimBound bound_generic(const Rational& gamma, int d) {
  if (gamma <= 0 || gamma >= 1) throw HypothesisError("gamma must lie in (0,1)");
  return {BoundTag::generic_conc, "gamma=" + to_string(gamma) + ",d=" + std::to_string(d), d, Gamma::exact(gamma),
          std::nullopt, false};
}

inline DimBound bound_trivial(const Gamma& dim_k) {
  return {BoundTag::trivial_eq1, "dimK=" + dim_k.text(), 1, std::nullopt, dim_k, false};
}

// ---------------------------------------------------------------------------
// Sets for experiments

struct SetSpec {
  enum class Kind { point, interval, system };
  Kind kind = Kind::point;
  std::string name;
  std::optional<ifs::IFSystem> sys;

  // Similarity dimension log(#maps)/log(1/r) for systems, 0 or 1 otherwise.
  Gamma similarity_dimension() const {
    if (kind == Kind::point) return Gamma::exact(0);
    if (kind == Kind::interval) return Gamma::exact(1);
    return Gamma::log_ratio(static_cast<long>(sys->map_count()), 1 / sys->ratio());
  }
};

// cantor3, cantor4, point, interval, digit:n:a,b,..., homogeneous:p/q, r2:J:p/q
inline SetSpec parse_set(const std::string& text) {
  SetSpec s;
  s.name = text;
  if (text == "point") return s;
  if (text == "interval") {
    s.kind = SetSpec::Kind::interval;
    return s;
  }
  s.kind = SetSpec::Kind::system;
  if (text == "cantor3") {
    s.sys = ifs::build(ifs::DigitCantor{3, {0, 2}});
    return s;
  }
  if (text == "cantor4") {
    s.sys = ifs::build(ifs::DigitCantor{4, {0, 3}});
    return s;
  }
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() == 3 && parts[0] == "digit") {
    std::vector<int> digits;
    for (auto v : addcomb::parse_int_list(parts[2])) digits.push_back(static_cast<int>(v));
    const auto n = addcomb::parse_int_list(parts[1]);
    if (n.size() != 1) throw ParseError("bad digit base in " + text);
    s.sys = ifs::build(ifs::DigitCantor{static_cast<int>(n[0]), digits});
    return s;
  }
  if (parts.size() == 2 && parts[0] == "homogeneous") {
    s.sys = ifs::build(ifs::HomogeneousCantor{parse_rational(parts[1])});
    return s;
  }
  if (parts.size() == 3 && parts[0] == "r2") {
    const auto J = addcomb::parse_int_list(parts[1]);
    if (J.size() != 1) throw ParseError("bad J in " + text);
    s.sys = ifs::build(ifs::R2Family{static_cast<int>(J[0]), parse_rational(parts[2])});
    return s;
  }
  throw ParseError("unknown set: " + text +
                   " (expected cantor3, cantor4, point, interval, digit:n:A, homogeneous:a or r2:J:r)");
}

// Smallest base whose grid carries the system's first-level data.
inline BigInt natural_base(const SetSpec& s) {
  if (s.kind != SetSpec::Kind::system) return 1;
  if (const auto* dc = std::get_if<ifs::DigitCantor>(&s.sys->label())) return dc->n;
  BigInt b = s.sys->ratio().get_den();
  for (const auto& m : s.sys->maps())
    for (const auto& x : m.b) b = lcm(b, x.get_den());
  return b;
}

// Bounds that apply to K, from its family and the general theorems.
inline std::vector<DimBound> applicable_bounds(const SetSpec& k_spec) {
  std::vector<DimBound> out;
  if (k_spec.kind != SetSpec::Kind::system) return out;
  const auto& sys = *k_spec.sys;
  out.push_back(bound_thm1(1, sys.ratio()));
  const auto& label = sys.label();
  if (const auto* h = std::get_if<ifs::HomogeneousCantor>(&label)) {
    out.push_back(bound_prop1(h->a));
    out.push_back(bound_ca_conjecture(h->a));
  }
  if (const auto* dc = std::get_if<ifs::DigitCantor>(&label)) {
    if (dc->digits.size() == 2 && dc->digits[0] == 0 && dc->digits[1] == dc->n - 1) {
      out.push_back(bound_prop1(make_rational(1, dc->n)));
      out.push_back(bound_ca_conjecture(make_rational(1, dc->n)));
    }
    if (dc->n == 3 && dc->digits == std::vector<int>{0, 2})
      out.push_back(bound_eq2106());
    else if (dc->digits.front() == 0 && static_cast<int>(dc->digits.size()) == dc->n - 1)
      out.push_back(bound_eq2106(dc->n, dc->digits));
    std::vector<std::int64_t> a(dc->digits.begin(), dc->digits.end());
    long best = 0;
    for (int k = 1; k <= 8; ++k) {
      const BigInt lhs = ipow(BigInt(static_cast<unsigned long>(a.size())), static_cast<unsigned long>(k + 1));
      if (lhs < ipow(BigInt(dc->n), static_cast<unsigned long>(k))) break;
      if (addcomb::detail::power_count(static_cast<std::uint64_t>(dc->n), k) > addcomb::kEnumerationCap) break;
      if (!addcomb::eq42_holds(dc->n, a, k).holds) break;
      best = k;
    }
    if (best > 0) out.push_back(bound_thm2(best, std::make_pair(dc->n, dc->digits)));
  }
  if (const auto* f = std::get_if<ifs::R2Family>(&label))
    if (ifs::check_r2_hypotheses(f->J, f->r)) out.push_back(bound_r2(f->J, f->r));
  out.push_back(bound_trivial(k_spec.similarity_dimension()));
  return out;
}

// ---------------------------------------------------------------------------
// Grid decomposition: set = union over offsets o of (o + local pattern), where
// every offset is a multiple of the cell width, so cell covers add as lattices.

struct Decomposition {
  std::vector<std::int64_t> offsets;  // in cell units, sorted
  IntervalUnion local;                // pieces no longer than one cell
};

inline constexpr std::size_t kOffsetCap = std::size_t{1} << 22;
inline constexpr std::size_t kPieceCap = std::size_t{1} << 22;

inline Decomposition decompose(const SetSpec& s, int base, int m) {
  Decomposition dec;
  const BigInt scale = ipow(BigInt(base), static_cast<unsigned long>(m));
  if (s.kind == SetSpec::Kind::point) {
    dec.offsets = {0};
    dec.local = IntervalUnion::point(0);
    return dec;
  }
  if (s.kind == SetSpec::Kind::interval) {
    dec.offsets = {0};
    dec.local = IntervalUnion::single(0, 1);
    return dec;
  }
  const auto& sys = *s.sys;
  const Rational& r = sys.ratio();
  const Rational h(BigInt(1), scale);

  // Offsets: sums of r^i b_{a_i} for i < j, kept while they stay on the grid.
  std::vector<Rational> offs{Rational(0)};
  Rational ri = 1;
  int j = 0;
  while (true) {
    bool integral = true;
    for (const auto& mp : sys.maps()) {
      const Rational v = ri * mp.b[0] * Rational(scale);
      if (v.get_den() != 1) integral = false;
    }
    if (!integral || offs.size() * sys.map_count() > kOffsetCap) break;
    // Stop once the pieces are a cell wide: finer offsets add nothing.
    const Box hull = ifs::hull_box(sys);
    if (ri * (hull.hi[0] - hull.lo[0]) <= h) break;
    std::vector<Rational> next;
    next.reserve(offs.size() * sys.map_count());
    for (const auto& o : offs)
      for (const auto& mp : sys.maps()) next.push_back(o + ri * mp.b[0]);
    offs = std::move(next);
    ri *= r;
    ++j;
  }
  for (const auto& o : offs) dec.offsets.push_back(to_int64(Rational(o * Rational(scale)).get_num()));
  std::sort(dec.offsets.begin(), dec.offsets.end());
  dec.offsets.erase(std::unique(dec.offsets.begin(), dec.offsets.end()), dec.offsets.end());

  // Local pattern r^j K_i, refined until each piece fits in a cell.
  const Box hull = ifs::hull_box(sys);
  IntervalUnion local = IntervalUnion::single(hull.lo[0], hull.hi[0]);
  Rational len = hull.hi[0] - hull.lo[0];
  while (ri * len > h) {
    if (local.size() * sys.map_count() > kPieceCap) throw ResourceCapError("decompose: local pattern too fine");
    local = ifs::iterate(sys, local, kPieceCap);
    len *= r;
  }
  dec.local = local.affine(ri, 0);
  return dec;
}

// |{o + p : o in offsets, p in pattern}| using a chunked bit array.
inline std::uint64_t count_lattice_sum(const std::vector<std::int64_t>& offsets, const BitLine& pattern) {
  if (offsets.empty() || pattern.count() == 0) return 0;
  const std::int64_t lo = offsets.front() + pattern.lo();
  const std::int64_t hi = offsets.back() + pattern.hi();
  constexpr std::int64_t kChunk = std::int64_t{1} << 24;
  std::uint64_t total = 0;
  std::size_t first = 0;
  for (std::int64_t c0 = lo; c0 <= hi; c0 += kChunk) {
    const std::int64_t c1 = std::min(hi + 1, c0 + kChunk);
    std::vector<std::uint64_t> chunk(static_cast<std::size_t>((c1 - c0 + 63) / 64), 0);
    while (first < offsets.size() && offsets[first] + pattern.hi() < c0) ++first;
    for (std::size_t i = first; i < offsets.size() && offsets[i] + pattern.lo() < c1; ++i)
      bits::or_shifted(chunk, pattern.words(), offsets[i] + pattern.lo() - c0);
    const auto rem = static_cast<unsigned>((c1 - c0) & 63);
    if (rem) chunk.back() &= (std::uint64_t{1} << rem) - 1;
    total += bits::popcount(chunk);
  }
  return total;
}

inline BitLine pattern_cells(const IntervalUnion& local, int base, int m) {
  return from_intervals(local, base, m, CellMode::outer).line();
}

// Cells of the set at depth m on the given base.
inline std::uint64_t set_box_count(const SetSpec& s, int base, int m) {
  const auto dec = decompose(s, base, m);
  return count_lattice_sum(dec.offsets, pattern_cells(dec.local, base, m));
}

inline std::uint64_t sum_box_count(const SetSpec& k, const SetSpec& e, int base, int m) {
  const auto dk = decompose(k, base, m);
  const auto de = decompose(e, base, m);
  if (dk.offsets.size() * de.offsets.size() > (std::size_t{1} << 28))
    throw ResourceCapError("sum_box_count: too many offset pairs");
  std::vector<std::int64_t> offs;
  offs.reserve(dk.offsets.size() * de.offsets.size());
  for (auto a : dk.offsets)
    for (auto b : de.offsets) offs.push_back(a + b);
  std::sort(offs.begin(), offs.end());
  offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
  const IntervalUnion local = sumset::minkowski_sum(dk.local, de.local);
  return count_lattice_sum(offs, pattern_cells(local, base, m));
}

struct ExperimentRow {
  int depth = 0;
  std::uint64_t n_k = 0;
  std::uint64_t n_e = 0;
  std::uint64_t n_sum = 0;
  std::optional<double> step_slope;  // of N_sum against the previous depth
};

struct SumExperiment {
  std::string k_name;
  std::string e_name;
  int base = 2;
  std::vector<ExperimentRow> rows;
  DimEstimate est_k, est_e, est_sum;
  double dim_e = 0;
  std::string dim_e_source;
  std::vector<DimBound> bounds;
  std::optional<DimBound> bound;  // the one the verdict uses
  double bound_value = 0;
  double tolerance = 0.05;
  bool pass = false;
};

struct ExperimentOptions {
  std::optional<int> base;               // default: lcm of the natural bases
  std::optional<BoundTag> bound_tag;     // default: strongest proven bound
  double tolerance = 0.05;
  unsigned workers = 1;
};

inline int common_base(const SetSpec& k, const SetSpec& e) {
  BigInt b = lcm(natural_base(k), natural_base(e));
  if (b < 2) b = 2;
  if (b > 1'000'000) throw ResourceCapError("common base " + b.get_str() + " too large");
  return static_cast<int>(b.get_si());
}

inline SumExperiment run_sum_experiment(const SetSpec& k, const SetSpec& e, const std::vector<int>& depths,
                                        const ExperimentOptions& opt = {}) {
  if (depths.size() < 2) throw std::invalid_argument("need at least two depths");
  SumExperiment ex;
  ex.k_name = k.name;
  ex.e_name = e.name;
  ex.base = opt.base.value_or(common_base(k, e));
  ex.tolerance = opt.tolerance;
  std::vector<int> ds = depths;
  std::sort(ds.begin(), ds.end());
  ex.rows.resize(ds.size());
  parallel_for(ds.size(), opt.workers, [&](std::size_t i) {
    const int m = ds[i];
    ex.rows[i] = {m, set_box_count(k, ex.base, m), set_box_count(e, ex.base, m), sum_box_count(k, e, ex.base, m), {}};
  });
  std::vector<Sample> sk, se, ss;
  for (std::size_t i = 0; i < ex.rows.size(); ++i) {
    const auto& r = ex.rows[i];
    sk.push_back({r.depth, r.n_k});
    se.push_back({r.depth, r.n_e});
    ss.push_back({r.depth, r.n_sum});
    if (i > 0) {
      const auto& p = ex.rows[i - 1];
      ex.rows[i].step_slope = (std::log(static_cast<double>(r.n_sum)) - std::log(static_cast<double>(p.n_sum))) /
                              (std::log(static_cast<double>(ex.base)) * (r.depth - p.depth));
    }
  }
  ex.est_k = estimate_dim(sk, ex.base);
  ex.est_e = estimate_dim(se, ex.base);
  ex.est_sum = estimate_dim(ss, ex.base);
  if (e.kind == SetSpec::Kind::system || e.kind == SetSpec::Kind::point || e.kind == SetSpec::Kind::interval) {
    const Gamma g = e.similarity_dimension();
    ex.dim_e = g.value();
    ex.dim_e_source = "similarity dimension " + g.text();
  } else {
    ex.dim_e = ex.est_e.slope;
    ex.dim_e_source = "estimated slope";
  }
  ex.bounds = applicable_bounds(k);
  for (const auto& b : ex.bounds) {
    if (opt.bound_tag) {
      if (b.tag == *opt.bound_tag) ex.bound = b;
      continue;
    }
    if (b.conjectural || b.tag == BoundTag::trivial_eq1) continue;
    if (!ex.bound || b.value(ex.dim_e) > ex.bound->value(ex.dim_e)) ex.bound = b;
  }
  if (opt.bound_tag && !ex.bound)
    throw HypothesisError(std::string("bound ") + to_string(*opt.bound_tag) + " does not apply to " + k.name);
  if (ex.bound) {
    ex.bound_value = ex.bound->value(ex.dim_e);
    ex.pass = ex.est_sum.slope >= ex.bound_value - ex.tolerance;
  }
  return ex;
}

// Box counts of one set over a depth range.
inline DimEstimate run_box_dimension(const SetSpec& s, const std::vector<int>& depths, std::optional<int> base = std::nullopt,
                                     unsigned workers = 1) {
  BigInt nb = natural_base(s);
  const int b = base.value_or(nb < 2 ? 2 : static_cast<int>(nb.get_si()));
  std::vector<Sample> samples(depths.size());
  parallel_for(depths.size(), workers, [&](std::size_t i) { samples[i] = {depths[i], set_box_count(s, b, depths[i])}; });
  return estimate_dim(samples, b);
}

}  // namespace fracsum::boxdim
