#pragma once

// Constructive engines: the digit recursion for difference tuples of digit
// Cantor sets, the inductive k-fold sum containment, the hexagon tiling for the
// r x + j family, and the difference-set measure explorer.
//
// Every verdict is an exact integer or rational comparison. Finite-depth passes
// are evidence consistent with a statement about all depths, never a proof of it.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fracsum/addcomb.hpp"
#include "fracsum/cellgrid.hpp"
#include "fracsum/errors.hpp"
#include "fracsum/geometry.hpp"
#include "fracsum/ifs.hpp"
#include "fracsum/parallel.hpp"
#include "fracsum/rational.hpp"
#include "fracsum/sumset.hpp"

namespace fracsum::proofs {

using geom::ConvexPolygon;
using geom::Point2;

struct SubCheck {
  std::string name;
  std::string statement;
  std::string method;  // "exact" or "raster"
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string engine;
  std::vector<SubCheck> checks;
  std::vector<std::string> notes;

  void add(std::string name, std::string statement, std::string method, bool pass, std::string detail = {}) {
    checks.push_back({std::move(name), std::move(statement), std::move(method), pass, std::move(detail)});
  }
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const SubCheck& c) { return c.pass; });
  }
  const SubCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// max{p in Z : p < theta}, and 0 at 0.
inline BigInt sfloor(const Rational& theta) {
  if (theta < 0) throw std::invalid_argument("sfloor: argument must be >= 0");
  if (theta == 0) return 0;
  return ceil_of(theta) - 1;
}

// ---------------------------------------------------------------------------
// Digit recursion

struct DigitSolution {
  int n = 3;
  int k = 1;
  int M = 0;
  std::vector<std::vector<int>> x_digits;  // k + 1 strings of length M over A
  std::vector<int> delta;                  // each -1 or 0
  std::vector<Rational> y;                 // targets

  static Rational digits_value(const std::vector<int>& digits, int n) {
    Rational v = 0, scale = 1;
    for (int d : digits) {
      scale /= n;
      v += scale * d;
    }
    return v;
  }
  Rational x(std::size_t p) const { return digits_value(x_digits[p], n); }

  // x_0 - x_l = delta_l + y_l for every l, delta in {-1, 0}^k.
  bool verify() const {
    if (x_digits.size() != static_cast<std::size_t>(k + 1)) return false;
    for (int l = 1; l <= k; ++l) {
      const auto L = static_cast<std::size_t>(l);
      if (delta[L - 1] != 0 && delta[L - 1] != -1) return false;
      if (x(0) - x(L) != Rational(delta[L - 1]) + y[L - 1]) return false;
    }
    return true;
  }
};

namespace detail {

// Backward recursion over digit positions M..1. At each position the digits
// (a_0..a_k) are the lexicographically smallest with a_0 - a_l = y_l - delta_l mod n.
inline DigitSolution run_recursion(int n, const std::vector<int>& a_sorted, int k,
                                   const std::vector<std::vector<int>>& y_digits, std::vector<int> delta, int M) {
  std::vector<bool> in_a(static_cast<std::size_t>(n), false);
  for (int a : a_sorted) in_a[static_cast<std::size_t>(a)] = true;
  DigitSolution sol;
  sol.n = n;
  sol.k = k;
  sol.M = M;
  sol.x_digits.assign(static_cast<std::size_t>(k + 1), std::vector<int>(static_cast<std::size_t>(M), 0));
  std::vector<int> pick(static_cast<std::size_t>(k + 1));
  for (int j = M - 1; j >= 0; --j) {
    bool found = false;
    for (int a0 : a_sorted) {
      pick[0] = a0;
      bool ok = true;
      for (int l = 1; l <= k && ok; ++l) {
        const int want = y_digits[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(j)] - delta[static_cast<std::size_t>(l - 1)];
        const int al = (((a0 - want) % n) + n) % n;
        ok = in_a[static_cast<std::size_t>(al)];
        pick[static_cast<std::size_t>(l)] = al;
      }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("digit recursion: no admissible digits although the fill condition holds");
    for (int l = 1; l <= k; ++l) {
      const auto L = static_cast<std::size_t>(l);
      const int num = pick[0] - pick[L] + delta[L - 1] - y_digits[L - 1][static_cast<std::size_t>(j)];
      if (num % n != 0) throw std::logic_error("digit recursion: carry is not an integer");
      delta[L - 1] = num / n;
      if (delta[L - 1] != 0 && delta[L - 1] != -1) throw std::logic_error("digit recursion: carry left {-1, 0}");
    }
    for (int p = 0; p <= k; ++p)
      sol.x_digits[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(p)];
  }
  sol.delta = std::move(delta);
  return sol;
}

inline std::vector<int> checked_digits(int n, const std::vector<int>& a) {
  if (n < 3) throw std::invalid_argument("digit base must be >= 3");
  std::vector<int> s = a;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) throw std::invalid_argument("digit set must be nonempty");
  for (int d : s)
    if (d < 0 || d >= n) throw std::invalid_argument("digit " + std::to_string(d) + " outside {0..n-1}");
  return s;
}

inline void require_fill(int n, const std::vector<int>& a, int k) {
  std::vector<std::int64_t> a64(a.begin(), a.end());
  const auto res = addcomb::eq42_holds(n, a64, k);
  if (!res.holds) {
    std::string w;
    for (std::size_t i = 0; i < res.witness->size(); ++i) w += (i ? "," : "") + std::to_string((*res.witness)[i]);
    throw HypothesisError("difference tuples of A do not fill (Z_n)^k; missing (" + w + ")");
  }
}

}  // namespace detail

// Targets y_l = .y_l1 ... y_lM (base n).
inline DigitSolution prop2_solve(int n, const std::vector<int>& a, int k, const std::vector<std::vector<int>>& y_digits) {
  const auto digits = detail::checked_digits(n, a);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (y_digits.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("need k target digit strings");
  const std::size_t M = y_digits.front().size();
  for (const auto& s : y_digits) {
    if (s.size() != M) throw std::invalid_argument("target digit strings must share one length");
    for (int d : s)
      if (d < 0 || d >= n) throw std::invalid_argument("target digit outside {0..n-1}");
  }
  detail::require_fill(n, digits, k);
  DigitSolution sol = detail::run_recursion(n, digits, k, y_digits, std::vector<int>(static_cast<std::size_t>(k), 0),
                                            static_cast<int>(M));
  for (const auto& s : y_digits) sol.y.push_back(DigitSolution::digits_value(s, n));
  if (!sol.verify()) throw std::logic_error("digit recursion: identity check failed");
  return sol;
}

// Targets y_l in [0,1] with y_l n^M an integer. y_l = 1 is written .(n-1)(n-1)...
// whose tail past position M equals 1, so it starts with carry -1.
inline DigitSolution prop2_solve_values(int n, const std::vector<int>& a, int k, const std::vector<Rational>& y, int M) {
  const auto digits = detail::checked_digits(n, a);
  if (y.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("need k targets");
  const BigInt scale = ipow(BigInt(n), static_cast<unsigned long>(M));
  std::vector<std::vector<int>> yd(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(M), 0));
  std::vector<int> delta(static_cast<std::size_t>(k), 0);
  for (int l = 0; l < k; ++l) {
    const auto L = static_cast<std::size_t>(l);
    if (y[L] < 0 || y[L] > 1) throw std::invalid_argument("targets must lie in [0,1]");
    const Rational scaled = y[L] * Rational(scale);
    if (scaled.get_den() != 1) throw std::invalid_argument("target is not a multiple of n^-M");
    if (y[L] == 1) {
      std::fill(yd[L].begin(), yd[L].end(), n - 1);
      delta[L] = -1;
      continue;
    }
    BigInt v = scaled.get_num();
    for (int j = M - 1; j >= 0; --j) {
      yd[L][static_cast<std::size_t>(j)] = static_cast<int>(BigInt(v % n).get_si());
      v /= n;
    }
  }
  detail::require_fill(n, digits, k);
  DigitSolution sol = detail::run_recursion(n, digits, k, yd, delta, M);
  sol.y = y;
  if (!sol.verify()) throw std::logic_error("digit recursion: identity check failed");
  return sol;
}

struct CoverCheck {
  bool holds = true;
  std::uint64_t points = 0;
  std::uint64_t raster_checked = 0;  // points also located in the rasterized difference set
  std::optional<std::vector<Rational>> failure;
};

// Every point of the grid n^-depth Z^k ∩ [0,1]^k is delta + (x_0 - x_1, ..., x_0 - x_k)
// with delta in {-1,0}^k and x_p digit strings over A, so [0,1]^k is covered by
// 2^k translates of the difference set.
inline CoverCheck prop2_cover_check(int n, const std::vector<int>& a, int k, int depth, unsigned workers = 1,
                                    std::uint64_t point_cap = 10'000'000) {
  const auto digits = detail::checked_digits(n, a);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  detail::require_fill(n, digits, k);
  const BigInt side_big = ipow(BigInt(n), static_cast<unsigned long>(depth)) + 1;
  const BigInt total_big = ipow(side_big, static_cast<unsigned long>(k));
  if (total_big > BigInt(static_cast<unsigned long>(point_cap)))
    throw ResourceCapError("prop2 cover check: grid has too many points");
  const std::int64_t side = to_int64(side_big);
  const auto total = static_cast<std::uint64_t>(to_int64(total_big));

  // Grid trace of the difference set of the depth approximant, when it is small.
  std::optional<sumset::DiffVectorSet> trace;
  if (k <= 2 && (k == 1 || side <= 2048)) {
    const ifs::IFSystem sys = ifs::build(ifs::DigitCantor{n, digits});
    trace = sumset::diff_vectors(from_intervals(ifs::approximant(sys, depth), n, depth, CellMode::outer), k, workers);
  }
  const std::int64_t unit = side - 1;

  std::vector<char> ok(total, 1);
  std::vector<char> traced(total, 0);
  parallel_for(total, workers, [&](std::size_t idx) {
    std::vector<Rational> y(static_cast<std::size_t>(k));
    std::size_t rest = idx;
    for (int l = k - 1; l >= 0; --l) {
      y[static_cast<std::size_t>(l)] = make_rational(static_cast<long>(rest % static_cast<std::size_t>(side)), unit);
      rest /= static_cast<std::size_t>(side);
    }
    const DigitSolution sol = prop2_solve_values(n, digits, k, y, depth);
    bool good = sol.verify();
    if (good && trace) {
      // Offsets of the chosen prefix cells must be occupied in the trace.
      sumset::Offset o{0, 0, 0};
      const Rational scale(ipow(BigInt(n), static_cast<unsigned long>(depth)));
      for (int l = 1; l <= k; ++l)
        o[static_cast<std::size_t>(l - 1)] =
            to_int64(Rational((sol.x(0) - sol.x(static_cast<std::size_t>(l))) * scale).get_num());
      good = trace->occupied(o);
      traced[idx] = 1;
    }
    ok[idx] = good;
  });
  CoverCheck res;
  res.points = total;
  for (std::uint64_t i = 0; i < total; ++i) {
    res.raster_checked += static_cast<std::uint64_t>(traced[i]);
    if (!ok[i] && res.holds) {
      res.holds = false;
      std::vector<Rational> y(static_cast<std::size_t>(k));
      std::uint64_t rest = i;
      for (int l = k - 1; l >= 0; --l) {
        y[static_cast<std::size_t>(l)] = make_rational(static_cast<long>(rest % static_cast<std::uint64_t>(side)), unit);
        rest /= static_cast<std::uint64_t>(side);
      }
      res.failure = y;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// k-fold sums of self-similar approximants

struct Prop3Options {
  bool strict = true;  // throw on a failed hypothesis instead of recording it
  std::size_t cap = sumset::kDefaultPairCap;
};

namespace detail {

// Writes x = sum theta_j b_j over one or two chosen b_j with theta_j >= 0 and
// sum theta_j <= k+1, then checks the integer/fractional split budgets.
inline std::optional<std::vector<std::pair<std::size_t, Rational>>> coefficients(const std::vector<ifs::Vec>& b,
                                                                                  const ifs::Vec& x, int k) {
  const Rational cap = k + 1;
  if (x.size() == 1) {
    for (std::size_t j = 1; j < b.size(); ++j) {
      if (b[j][0] == 0) continue;
      const Rational t = x[0] / b[j][0];
      if (t >= 0 && t <= cap) return std::vector<std::pair<std::size_t, Rational>>{{j, t}};
    }
    if (x[0] == 0) return std::vector<std::pair<std::size_t, Rational>>{};
    return std::nullopt;
  }
  for (std::size_t i = 1; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      const Rational det = b[i][0] * b[j][1] - b[i][1] * b[j][0];
      if (det == 0) continue;
      const Rational ti = (x[0] * b[j][1] - x[1] * b[j][0]) / det;
      const Rational tj = (b[i][0] * x[1] - b[i][1] * x[0]) / det;
      if (ti >= 0 && tj >= 0 && ti + tj <= cap)
        return std::vector<std::pair<std::size_t, Rational>>{{i, ti}, {j, tj}};
    }
  return std::nullopt;
}

inline std::string vec_text(const ifs::Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

}  // namespace detail

// Checks conv{(k+1) b_j} ⊆ k·K_m for m = 0..max_depth after moving b_0 to the
// origin, with K_0 the attractor's bounding box. Exact interval sums in d = 1,
// an exact slab test against the k-fold box sum in d = 2.
inline Report prop3_verify(const ifs::IFSystem& input, int k, int max_depth, const Prop3Options& opt = {}) {
  const int d = input.dim();
  if (d > 2) throw std::invalid_argument("prop3_verify supports d = 1 and d = 2");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (max_depth < 0) throw std::invalid_argument("depth must be >= 0");
  Report rep;
  rep.engine = "prop3";
  const ifs::IFSystem sys = input.normalized_at_origin();
  const auto b = sys.translations();
  const Rational& r = sys.ratio();

  const bool interior = ifs::hull_has_interior(b, d);
  rep.add("hypothesis.hull_interior", "conv{b_0..b_J} has nonempty interior", "exact", interior);
  if (!interior) throw HypothesisError("conv{b_j} has empty interior");
  const bool power = Rational(k + 1) * r >= d;
  rep.add("hypothesis.k_plus_1_ge_d_over_r", "k+1 >= d/r", "exact", power,
          "k=" + std::to_string(k) + ", d/r=" + to_string(Rational(d) / r) +
              ", smallest admissible k=" + std::to_string(ifs::min_k_thm1(d, r)));
  if (!power && opt.strict)
    throw HypothesisError("k+1 >= d/r fails: k=" + std::to_string(k) + ", d/r=" + to_string(Rational(d) / r));
  if (!power) rep.notes.push_back("hypothesis k+1 >= d/r is violated; containment results are reported, not expected");
  rep.notes.push_back("b_0 moved to the origin; K_0 is the bounding box of the attractor");
  rep.notes.push_back("passing at depths 0.." + std::to_string(max_depth) +
                      " is finite-depth evidence consistent with the statement for all depths");

  // Decomposition replay on sample points of the target.
  std::vector<ifs::Vec> samples;
  const Rational kp1 = k + 1;
  if (d == 1) {
    Rational lo = 0, hi = 0;
    for (const auto& v : b) {
      lo = std::min(lo, Rational(kp1 * v[0]));
      hi = std::max(hi, Rational(kp1 * v[0]));
    }
    for (const Rational& t : {Rational(0), make_rational(1, 7), make_rational(1, 2), make_rational(5, 7), Rational(1)}) {
      samples.push_back({t * hi});
      if (lo < 0) samples.push_back({t * lo});
    }
  } else {
    std::vector<Point2> pts;
    for (const auto& v : b) pts.push_back({kp1 * v[0], kp1 * v[1]});
    const auto poly = ConvexPolygon::hull(pts);
    const auto& vs = poly.vertices();
    Point2 c{0, 0};
    for (const auto& v : vs) c = c + v;
    c = make_rational(1, static_cast<long>(vs.size())) * c;
    samples.push_back({c.x, c.y});
    for (std::size_t i = 0; i < vs.size(); ++i) {
      samples.push_back({vs[i].x, vs[i].y});
      const Point2 mid = make_rational(1, 2) * (vs[i] + vs[(i + 1) % vs.size()]);
      samples.push_back({mid.x, mid.y});
      const Point2 inner = make_rational(1, 3) * (vs[i] + c + c);
      samples.push_back({inner.x, inner.y});
    }
  }
  bool replay_ok = true;
  std::string replay_detail;
  for (const auto& x : samples) {
    auto coeff = detail::coefficients(b, x, k);
    if (!coeff) {
      replay_ok = false;
      replay_detail = "no admissible coefficients for " + detail::vec_text(x);
      break;
    }
    Rational frac_sum = 0;
    BigInt floor_sum = 0;
    ifs::Vec recon(static_cast<std::size_t>(d), Rational(0));
    for (const auto& [j, t] : *coeff) {
      const BigInt s = sfloor(t);
      frac_sum += t - Rational(s);
      floor_sum += s;
      for (std::size_t i = 0; i < recon.size(); ++i)
        recon[i] += (t - Rational(s)) * b[j][i] + Rational(s) * b[j][i];
    }
    const bool good = recon == x && frac_sum <= d && floor_sum <= k;
    if (!good) {
      replay_ok = false;
      replay_detail = "budget failed at " + detail::vec_text(x) + ": fractional sum " + to_string(frac_sum) +
                      ", integer sum " + floor_sum.get_str();
      break;
    }
  }
  if (replay_ok) replay_detail = std::to_string(samples.size()) + " sample points";
  rep.add("decomposition.budgets",
          "x = sum (theta_j - sfloor theta_j) b_j + sum sfloor(theta_j) b_j with fractional sum <= d and integer sum <= k",
          "exact", replay_ok, replay_detail);
  rep.add("decomposition.scaling", "d conv{b_0..b_d} ⊆ r conv{(k+1) b_0..(k+1) b_d}, i.e. d <= (k+1) r", "exact", power);

  const Box k0 = ifs::hull_box(sys);
  if (d == 1) {
    Rational lo = 0, hi = 0;
    for (const auto& v : b) {
      lo = std::min(lo, Rational(kp1 * v[0]));
      hi = std::max(hi, Rational(kp1 * v[0]));
    }
    const IntervalUnion target = IntervalUnion::single(lo, hi);
    IntervalUnion km = IntervalUnion::single(k0.lo[0], k0.hi[0]);
    std::optional<IntervalUnion> prev;
    for (int m = 0; m <= max_depth; ++m) {
      if (m > 0) km = ifs::iterate(sys, km, opt.cap);
      const IntervalUnion sum = sumset::kfold_sum(km, k, opt.cap);
      const bool ok = covers_interval(target, sum);
      rep.add("depth." + std::to_string(m), "[" + to_string(lo) + "," + to_string(hi) + "] ⊆ k·K_" + std::to_string(m),
              "exact", ok,
              "k·K_m has " + std::to_string(sum.size()) + " intervals, measure " + to_string(sum.measure()));
      if (prev) {
        const bool nested = prev->contains(sum);
        rep.add("nesting." + std::to_string(m), "k·K_" + std::to_string(m) + " ⊆ k·K_" + std::to_string(m - 1), "exact",
                nested);
      }
      prev = sum;
    }
    return rep;
  }

  std::vector<Point2> pts;
  for (const auto& v : b) pts.push_back({kp1 * v[0], kp1 * v[1]});
  const auto target = ConvexPolygon::hull(pts);
  BoxUnion km(2, {k0});
  for (int m = 0; m <= max_depth; ++m) {
    if (m > 0) km = ifs::iterate(sys, km, opt.cap);
    const BoxUnion sum = sumset::kfold_sum(km, k, opt.cap);
    const bool ok = geom::covered_by_boxes(target, sum.boxes());
    rep.add("depth." + std::to_string(m), "conv{(k+1) b_j} ⊆ k·K_" + std::to_string(m), "exact", ok,
            "k·K_m is a union of " + std::to_string(sum.size()) + " boxes");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Hexagon machinery for phi_j(x) = r x + j, 0 <= j <= J

// The six points of the hexagon: 0 <= x, y <= 2J and |x - y| <= J.
inline std::vector<Point2> hexagon_vertices(long J) {
  const Rational j = J, jj = 2 * J;
  return {{0, 0}, {0, j}, {j, jj}, {jj, jj}, {jj, j}, {j, 0}};
}

inline ConvexPolygon hexagon(long J) { return ConvexPolygon::hull(hexagon_vertices(J)); }

// {(x_0 + x_1, x_0 + x_2) : x_i in {0..J}}
inline std::set<std::pair<long, long>> pair_sums(long J) {
  std::set<std::pair<long, long>> out;
  for (long a = 0; a <= J; ++a)
    for (long b = 0; b <= J; ++b)
      for (long c = 0; c <= J; ++c) out.insert({a + b, a + c});
  return out;
}

inline Point2 rational_shift(const Rational& c) { return {c, c}; }

// The translate w* = ((1-J)/(1-r), (1-J)/(1-r)).
inline Point2 hexagon_anchor(long J, const Rational& r) { return rational_shift(Rational(1 - J) / (1 - r)); }

inline Report r4_tiling_check(long J, const Rational& r) {
  if (!ifs::check_r2_hypotheses(J, r))
    throw HypothesisError("need J >= 3 and 2/(3J) <= r < 1/(J+1); got J=" + std::to_string(J) + ", r=" + to_string(r));
  Report rep;
  rep.engine = "r4";
  const Rational Jq = J;
  rep.add("hypothesis.range", "J >= 3 and 2/(3J) <= r < 1/(J+1)", "exact", true);
  rep.add("hypothesis.r_ge_1_over_2J", "r >= 1/(2J)", "exact", r >= make_rational(1, 2 * J));
  rep.add("hypothesis.r_between_2_over_3J_and_1_over_J", "2/(3J) <= r <= 1/J", "exact",
          make_rational(2, 3 * J) <= r && r <= make_rational(1, J));

  const ConvexPolygon hex = hexagon(J);
  const ConvexPolygon rhex = hex.scaled(r);
  const Rational rJ = r * Jq;

  const auto quad = ConvexPolygon::hull({{0, 0}, {0, rJ}, {1 - rJ, 1}, {1, 1}});
  rep.add("utcont.quad", "conv{(0,0),(0,rJ),(1-rJ,1),(1,1)} ⊆ r conv(V)", "exact", rhex.contains(quad));

  const Rational inv = 1 / r;
  const std::vector<std::pair<std::string, Point2>> memberships = {
      {"utcont.vertex_1", {inv, inv}}, {"utcont.vertex_2", {inv, Jq}}, {"utcont.vertex_3", {2 * inv - Jq, inv}}};
  for (const auto& [name, p] : memberships)
    rep.add(name, "(" + to_string(p.x) + "," + to_string(p.y) + ") ∈ conv(V)", "exact", hex.contains(p));

  const auto top_gap = ConvexPolygon::hull({{0, 1}, {0, rJ}, {1 - rJ, 1}});
  rep.add("utcont.top_gap", "conv{(0,1),(0,rJ),(1-rJ,1)} ⊆ r conv(V) + (-1,0)", "exact",
          rhex.translated({-1, 0}).contains(top_gap));

  const auto a_u = ConvexPolygon::hull({{0, 0}, {1, 1}, {0, 1}});
  const auto a_l = ConvexPolygon::hull({{0, 0}, {1, 1}, {1, 0}});
  rep.add("utcont", "A_u ⊆ r conv(V) + {(0,0),(-1,0)}", "exact",
          geom::covered_by(a_u, {rhex, rhex.translated({-1, 0})}));
  rep.add("ltcont", "A_l ⊆ r conv(V) + {(0,0),(0,-1)}", "exact",
          geom::covered_by(a_l, {rhex, rhex.translated({0, -1})}));

  const auto P = pair_sums(J);
  auto in_p = [&](long x, long y) { return P.count({x, y}) > 0; };

  // Tiles of the two parallelograms, each with the two points of P that carry it.
  struct Tile {
    ConvexPolygon shape;
    std::pair<long, long> p1, p2;
  };
  auto tiles_for = [&](bool first) {
    std::vector<Tile> tiles;
    auto unit_triangles = [&](long j, long k) {
      tiles.push_back({a_u.translated({j, k}), {j, k}, {j - 1, k}});
      tiles.push_back({a_l.translated({j, k}), {j, k}, {j, k - 1}});
    };
    if (first) {
      for (long j = 1; j <= J; ++j) {
        for (long k = 1; k <= J - 1 + j; ++k) unit_triangles(j, k);
        tiles.push_back({a_l.translated({j, J + j}), {j, J + j}, {j, J - 1 + j}});
      }
    } else {
      for (long j = J + 1; j <= 2 * J; ++j) {
        for (long k = j - J + 1; k <= 2 * J; ++k) unit_triangles(j, k);
        tiles.push_back({a_u.translated({j, j - J}), {j, j - J}, {j - 1, j - J}});
      }
    }
    return tiles;
  };

  const auto para1 = ConvexPolygon::hull({{1, 1}, {Jq + 1, 1}, {1, Jq + 1}, {Jq + 1, 2 * Jq + 1}});
  const auto para2 =
      ConvexPolygon::hull({{Jq + 1, 1}, {Jq + 1, 2 * Jq + 1}, {2 * Jq + 1, Jq + 1}, {2 * Jq + 1, 2 * Jq + 1}});

  bool assembled = true;
  for (int which = 0; which < 2; ++which) {
    const bool first = which == 0;
    const std::string tag = first ? "firstjtileunion" : "secondjtileunion";
    const auto tiles = tiles_for(first);
    bool points_ok = true;
    std::string missing;
    bool tiles_ok = true;
    std::vector<ConvexPolygon> shapes;
    for (const auto& t : tiles) {
      shapes.push_back(t.shape);
      for (const auto& p : {t.p1, t.p2})
        if (!in_p(p.first, p.second) && points_ok) {
          points_ok = false;
          missing = "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
        }
      const Point2 q1{t.p1.first, t.p1.second}, q2{t.p2.first, t.p2.second};
      if (!geom::covered_by(t.shape, {rhex.translated(q1), rhex.translated(q2)})) tiles_ok = false;
    }
    rep.add(tag + ".pair_sums", "every tile translate used lies in P({0..J})", "exact", points_ok, missing);
    rep.add(tag + ".tiles_in_W", "every tile lies in r conv(V) + (its two points of P)", "exact", tiles_ok,
            std::to_string(tiles.size()) + " tiles");
    const bool covered = geom::covered_by(first ? para1 : para2, shapes);
    rep.add(tag + ".covered", std::string("tiles cover the ") + (first ? "first" : "second") + " parallelogram", "exact",
            covered);
    assembled = assembled && points_ok && tiles_ok && covered;
  }
  const auto target = hex.translated({1, 1});
  const bool split = geom::covered_by(target, {para1, para2});
  rep.add("parallelograms_cover_target", "(1,1) + conv(V) ⊆ union of the two parallelograms", "exact", split);
  rep.add("wcontains", "W = r conv(V) + P({0..J}) ⊇ (1,1) + conv(V), assembled from the tiles", "exact",
          assembled && split);

  std::vector<ConvexPolygon> w_pieces;
  for (const auto& [x, y] : P) w_pieces.push_back(rhex.translated({x, y}));
  rep.add("wcontains.direct", "(1,1) + conv(V) ⊆ union of r conv(V) + p over p in P({0..J})", "exact",
          geom::covered_by(target, w_pieces));
  return rep;
}

struct R3Options {
  int grid_base = 2;
  int grid_depth = 8;
  unsigned workers = 1;
};

// D(I) for an interval I of length L: |u|, |v|, |u - v| <= L.
inline bool interval_difference_contains(const Rational& L, const Point2& p) {
  return abs(p.x) <= L && abs(p.y) <= L && abs(p.x - p.y) <= L;
}

inline Report r3_verify(long J, const Rational& r, int depth, const R3Options& opt = {}) {
  if (!ifs::check_r2_hypotheses(J, r))
    throw HypothesisError("need J >= 3 and 2/(3J) <= r < 1/(J+1); got J=" + std::to_string(J) + ", r=" + to_string(r));
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  Report rep;
  rep.engine = "r3";
  const auto sys = ifs::build(ifs::R2Family{static_cast<int>(J), r});
  const Point2 w = hexagon_anchor(J, r);
  std::vector<Point2> hex_pts;
  for (const auto& v : hexagon_vertices(J)) hex_pts.push_back(v + w);
  const auto target = ConvexPolygon::hull(hex_pts);
  const Rational L = Rational(J) / (1 - r);
  rep.notes.push_back("K_0 = [0, J/(1-r)], target w* + conv(V) with w* = (" + to_string(w.x) + "," + to_string(w.y) + ")");
  rep.notes.push_back("grid base " + std::to_string(opt.grid_base) + ", depth " + std::to_string(opt.grid_depth));

  bool base_ok = true;
  for (const auto& p : hex_pts) base_ok = base_ok && interval_difference_contains(L, p);
  rep.add("base_case", "w* + conv(V) ⊆ D(K_0) by six half-plane tests on each vertex", "exact", base_ok);

  IntervalUnion km = IntervalUnion::single(0, L);
  for (int m = 0; m <= depth; ++m) {
    if (m > 0) km = ifs::iterate(sys, km);
    const CellSet cells = from_intervals(km, opt.grid_base, opt.grid_depth, CellMode::outer);
    const auto dvs = sumset::diff_vectors(cells, 2, opt.workers, "K_" + std::to_string(m));
    const auto check = sumset::contains_polytope(dvs, hex_pts);
    std::string detail = std::to_string(check.cells_checked) + " cells checked";
    if (check.missing)
      detail += ", first missing cell (" + std::to_string((*check.missing)[0]) + "," + std::to_string((*check.missing)[1]) + ")";
    rep.add("depth." + std::to_string(m), "w* + conv(V) ⊆ D(K_" + std::to_string(m) + ")", "raster", check.holds, detail);

    if (m != 0) continue;
    // Grid points strictly inside the hexagon: exact membership in D(K_0) and
    // presence in the rasterized set must agree.
    const Rational h = dvs.cell_width();
    const BigInt scale = ceil_of(1 / h);
    bool agree = true;
    std::uint64_t points = 0;
    const std::int64_t a0 = to_int64(floor_of(target.min_x() * scale));
    const std::int64_t a1 = to_int64(ceil_of(target.max_x() * scale));
    for (std::int64_t a = a0; a <= a1 && agree; ++a) {
      const Rational x = Rational(a) * h;
      if (x <= target.min_x() || x >= target.max_x()) continue;
      const auto sec = geom::detail::vertical_section(target, x);
      if (!sec) continue;
      const std::int64_t b0 = to_int64(floor_of(sec->first * scale)) + 1;
      const std::int64_t b1 = to_int64(ceil_of(sec->second * scale)) - 1;
      if (b0 > b1) continue;
      if (!interval_difference_contains(L, {x, Rational(b0) * h}) || !interval_difference_contains(L, {x, Rational(b1) * h}))
        agree = false;  // D(K_0) is convex, so the column's end points decide the column
      for (std::int64_t bb = b0; bb <= b1 && agree; ++bb) {
        ++points;
        bool hit = false;
        for (std::int64_t da = -1; da <= 0 && !hit; ++da)
          for (std::int64_t db = -1; db <= 0 && !hit; ++db) hit = dvs.outer_contains({a + da, bb + db, 0});
        agree = hit;
      }
    }
    rep.add("base_case.raster_agreement", "grid points inside w* + conv(V): exact D(K_0) membership matches the raster",
            "exact", agree, std::to_string(points) + " grid points");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Measure explorer for difference sets of C_a

struct MeasureRow {
  int depth = 0;
  std::uint64_t outer_cells = 0;
  Rational outer_measure;
};

struct Conj222Report {
  Rational a;
  int k = 2;
  int grid_base = 2;
  int grid_depth = 0;
  std::vector<MeasureRow> rows;
  bool nonincreasing = true;
};

// Default common grid: base = denominator of a when its depth-D power stays small,
// otherwise base 2 at a resolution that keeps the k-dimensional grid bounded.
inline std::pair<int, int> default_conj222_grid(const Rational& a, int k, int max_depth) {
  const BigInt q = a.get_den();
  const BigInt limit = k == 1 ? BigInt(1) << 16 : (k == 2 ? BigInt(1) << 11 : BigInt(1) << 7);
  if (ipow(q, static_cast<unsigned long>(max_depth)) <= limit) return {static_cast<int>(q.get_si()), max_depth};
  return {2, k == 1 ? 16 : (k == 2 ? 11 : 7)};
}

// Outer measure of the rasterized D_k(K_m) for the depth-m approximants of C_a on
// one fixed grid, so that the sequence is a nonincreasing upper bound.
inline Conj222Report explore_conj222(const Rational& a, int k, const std::vector<int>& depths,
                                     std::optional<std::pair<int, int>> grid = std::nullopt, unsigned workers = 1) {
  if (a <= 0 || a >= make_rational(1, 2)) throw HypothesisError("a must lie in (0, 1/2), got " + to_string(a));
  if (k < 1 || k > 3) throw std::invalid_argument("k must be 1, 2 or 3");
  if (depths.empty()) throw std::invalid_argument("need at least one depth");
  const int max_depth = *std::max_element(depths.begin(), depths.end());
  const auto [base, gdepth] = grid ? *grid : default_conj222_grid(a, k, max_depth);
  Conj222Report rep;
  rep.a = a;
  rep.k = k;
  rep.grid_base = base;
  rep.grid_depth = gdepth;
  const auto sys = ifs::build(ifs::HomogeneousCantor{a});
  std::vector<int> sorted = depths;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  IntervalUnion km = ifs::natural_initial_set(sys);
  int at = 0;
  for (int m : sorted) {
    if (m < 0) throw std::invalid_argument("depths must be >= 0");
    for (; at < m; ++at) km = ifs::iterate(sys, km);
    const auto cells = from_intervals(km, base, gdepth, CellMode::outer);
    const auto dvs = sumset::diff_vectors(cells, k, workers, "C_a depth " + std::to_string(m));
    MeasureRow row{m, dvs.outer_count(), dvs.outer_measure()};
    if (!rep.rows.empty() && row.outer_measure > rep.rows.back().outer_measure) rep.nonincreasing = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace fracsum::proofs
