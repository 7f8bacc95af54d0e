// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "exactness_scan.hpp"
#include "fracsum/addcomb.hpp"
#include "fracsum/boxdim.hpp"
#include "fracsum/json_io.hpp"
#include "fracsum/proofs.hpp"

using namespace fracsum;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

template <class F>
bool throws_hypothesis(F&& f) {
  try {
    f();
  } catch (const HypothesisError&) {
    return true;
  } catch (...) {
    return false;
  }
  return false;
}

Outcome box_counting() {
  Outcome o;
  const auto mt = ifs::middle_thirds();
  IntervalUnion km = ifs::approximant(mt, 0);
  std::vector<boxdim::Sample> samples;
  for (int m = 1; m <= 12; ++m) {
    km = ifs::iterate(mt, km);
    const auto n = boxdim::box_count(km, 3, m);
    o.require(n == (std::uint64_t{1} << m), "N(3^-" + std::to_string(m) + ") = " + std::to_string(n));
    samples.push_back({m, n});
  }
  const double slope = boxdim::estimate_dim(samples, 3).slope;
  o.require(std::abs(slope - std::log(2.0) / std::log(3.0)) < 1e-9, "slope " + json_io::fixed(slope, 12));
  return o;
}

Outcome bound_coefficients() {
  Outcome o;
  o.require(boxdim::bound_thm1(1, q(1, 3)).gamma->rational() == q(1, 2), "thm1 at r=1/3");
  o.require(boxdim::bound_eq2106().gamma == boxdim::Gamma::log_ratio(2, 3), "eq2106 gamma");
  const auto r2 = boxdim::bound_r2(3, q(9, 40));
  for (long e = 0; e <= 4; ++e)
    o.require(*r2.exact_value(q(e, 4)) == q(2, 3) + q(e, 4) / 3, "r2 at dimE=" + std::to_string(e) + "/4");
  for (long k = 1; k <= 6; ++k) {
    const auto b = boxdim::bound_thm2(k);
    o.require(*b.exact_value(q(1, 5)) == q(k, k + 1) + q(1, 5) / (k + 1), "thm2 k=" + std::to_string(k));
  }
  o.require(ifs::min_k_prop1(q(1, 3)) == 2, "prop1 k at a=1/3");
  o.require(boxdim::bound_prop1(q(1, 3)).gamma->rational() == q(1, 2), "prop1 coefficient");
  return o;
}

Outcome lemma2_suites() {
  Outcome o;
  const auto ex = addcomb::sweep_exhaustive(7, 2);
  o.require(ex.violations.empty(), std::to_string(ex.violations.size()) + " exhaustive violations");
  o.require(ex.instances == 127u * 127u * 3u, "exhaustive instance count " + std::to_string(ex.instances));
  const auto a = addcomb::sweep_random(false, 10'000, 64, 4, 1);
  o.require(a.violations.empty(), std::to_string(a.violations.size()) + " tuple-inequality violations");
  const auto b = addcomb::sweep_random(true, 10'000, 64, 4, 2);
  o.require(b.violations.empty(), std::to_string(b.violations.size()) + " signed-sum violations");
  return o;
}

// |{(a_0 - a_1, ..., a_0 - a_k) mod n}| == n^k by direct enumeration.
bool fills_by_enumeration(std::int64_t n, const std::vector<std::int64_t>& a, int k) {
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k + 1), 0);
  while (true) {
    std::vector<std::int64_t> t;
    for (int l = 1; l <= k; ++l) t.push_back(((a[idx[0]] - a[idx[static_cast<std::size_t>(l)]]) % n + n) % n);
    seen.insert(t);
    std::size_t p = 0;
    while (p < idx.size() && ++idx[p] == a.size()) idx[p++] = 0;
    if (p == idx.size()) break;
  }
  std::size_t full = 1;
  for (int i = 0; i < k; ++i) full *= static_cast<std::size_t>(n);
  return seen.size() == full;
}

Outcome eq42_checker() {
  Outcome o;
  o.require(addcomb::eq42_holds(3, {0, 1}, 1).holds, "(3,{0,1},1)");
  const auto f = addcomb::eq42_holds(3, {0, 1}, 2);
  o.require(!f.holds && f.witness && *f.witness == addcomb::Element{1, 2}, "(3,{0,1},2) witness");
  o.require(addcomb::eq42_holds(4, {0, 1, 2}, 1).holds, "(4,{0,1,2},1)");
  for (std::int64_t n = 2; n <= 8; ++n)
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<std::int64_t> a;
      for (std::int64_t i = 0; i < n; ++i)
        if ((mask >> i) & 1U) a.push_back(i);
      for (int k = 1; k <= 2; ++k)
        if (addcomb::eq42_holds(n, a, k).holds != fills_by_enumeration(n, a, k)) {
          o.require(false, "oracle disagreement at n=" + std::to_string(n));
          return o;
        }
    }
  return o;
}

Outcome prop2_engine() {
  Outcome o;
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    std::vector<int> y(20);
    for (auto& d : y) d = static_cast<int>(rng() % 3);
    const auto sol = proofs::prop2_solve(3, {0, 1}, 1, {y});
    const bool ok = (sol.delta[0] == 0 || sol.delta[0] == -1) &&
                    sol.x(0) - sol.x(1) == Rational(sol.delta[0]) + proofs::DigitSolution::digits_value(y, 3);
    if (!ok) {
      o.require(false, "identity failed at trial " + std::to_string(t));
      break;
    }
  }
  const auto cover = proofs::prop2_cover_check(3, {0, 1}, 1, 6);
  o.require(cover.holds, "cover check at depth 6");
  return o;
}

Outcome prop3_engine() {
  Outcome o;
  o.require(proofs::prop3_verify(ifs::middle_thirds(), 2, 8).all_pass(), "middle-thirds k=2");
  const auto c4 = ifs::build(ifs::HomogeneousCantor{q(1, 4)});
  o.require(proofs::prop3_verify(c4, 3, 8).all_pass(), "C_1/4 k=3");
  o.require(throws_hypothesis([&] { proofs::prop3_verify(c4, 2, 8); }), "C_1/4 k=2 not rejected");
  proofs::Prop3Options lax;
  lax.strict = false;
  const auto rep = proofs::prop3_verify(c4, 2, 8, lax);
  const auto* hyp = rep.find("hypothesis.k_plus_1_ge_d_over_r");
  o.require(!rep.all_pass() && hyp && !hyp->pass, "C_1/4 k=2 report does not flag the hypothesis");
  return o;
}

Outcome r4_r3() {
  Outcome o;
  for (const auto& [J, r] : std::vector<std::pair<long, Rational>>{{3, q(2, 9)}, {3, q(9, 40)}, {4, q(1, 6)}})
    o.require(proofs::r4_tiling_check(J, r).all_pass(), "r4 J=" + std::to_string(J) + " r=" + to_string(r));
  o.require(proofs::r3_verify(3, q(9, 40), 3).all_pass(), "r3 (3, 9/40) depth 3");
  o.require(throws_hypothesis([] { proofs::r4_tiling_check(3, q(1, 4)); }), "r4 boundary accepted");
  o.require(throws_hypothesis([] { proofs::r3_verify(3, q(1, 4), 1); }), "r3 boundary accepted");
  return o;
}

Outcome sum_experiment() {
  Outcome o;
  const auto ex = boxdim::run_sum_experiment(boxdim::parse_set("cantor3"), boxdim::parse_set("cantor4"), {4, 5, 6, 7, 8});
  const double bound = boxdim::bound_eq2106().value(std::log(2.0) / std::log(4.0));
  o.require(ex.bound && ex.bound->tag == boxdim::BoundTag::eq2106, "headline bound is not eq2106");
  o.require(std::abs(bound - 0.81547) < 1e-5, "bound value " + json_io::fixed(bound));
  o.require(ex.est_sum.slope > bound - 0.05, "slope " + json_io::fixed(ex.est_sum.slope));
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("slope ") + json_io::fixed(ex.est_sum.slope, 4) +
              " vs bound " + json_io::fixed(bound, 5);
  return o;
}

Outcome conjecture_harnesses() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = addcomb::search_conjecture5(2, 32, 10'000, 7);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto b = addcomb::search_conjecture5(2, 32, 10'000, 7, 4);
  o.require(json_io::to_json(a).dump() == json_io::to_json(b).dump(), "conj5 reports differ");
  o.require(a.max.has_value(), "no max ratio recorded");
  o.require(secs < 60, "conj5 took " + json_io::fixed(secs, 1) + " s");
  std::vector<int> depths{1, 2, 3, 4, 5, 6, 7, 8};
  const auto c1 = proofs::explore_conj222(q(49, 100), 2, depths);
  const auto c2 = proofs::explore_conj222(q(49, 100), 2, depths);
  o.require(c1.nonincreasing, "conj222 sequence increases");
  o.require(json_io::to_json(c1).dump() == json_io::to_json(c2).dump(), "conj222 reports differ");
  return o;
}

Outcome exactness_discipline() {
  Outcome o;
  const auto findings = exactness::float_findings();
  for (const auto& f : findings) o.require(false, f);
  o.require(exactness::verifier_headers().size() >= 6, "verifier headers not found");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact self-similar box counting", 1, box_counting},
      {2, "theorem-bound coefficients", 1, bound_coefficients},
      {3, "tuple and signed-sum inequality suites", 60, lemma2_suites},
      {4, "difference-tuple fill checker", 5, eq42_checker},
      {5, "digit recursion engine", 10, prop2_engine},
      {6, "k-fold sum containment engine", 30, prop3_engine},
      {7, "hexagon tiling and containment", 60, r4_r3},
      {8, "sum-dimension experiment", 120, sum_experiment},
      {9, "deterministic conjecture harnesses", 120, conjecture_harnesses},
      {10, "exactness discipline", 5, exactness_discipline},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) o.require(false, "runtime " + json_io::fixed(secs, 2) + " s over " + json_io::fixed(c.limit_s, 0) + " s");
    failed += o.pass ? 0 : 1;
    std::cout << "criterion " << std::setw(2) << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << " ("
              << json_io::fixed(secs, 2) << " s)" << (o.detail.empty() ? "" : "  " + o.detail) << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
