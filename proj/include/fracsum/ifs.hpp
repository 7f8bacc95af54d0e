#pragma once

// Self-similar systems x -> r x + b_j with a common rational ratio, the
// hypothesis checks of the lower-bound theorems, and depth-m approximants
// K_m = T^m(K_0) with T(F) = union_j (r F + b_j).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fracsum/cellgrid.hpp"
#include "fracsum/errors.hpp"
#include "fracsum/rational.hpp"

namespace fracsum::ifs {

using Vec = std::vector<Rational>;

inline constexpr std::size_t kDefaultIntervalCap = 10'000'000;

struct Similarity {
  Rational r;
  Vec b;
  // Only the identity is supported; a non-identity orthogonal part is rejected.
  bool orthogonal_identity = true;
};

struct Generic {};
struct HomogeneousCantor {
  Rational a;
};
struct DigitCantor {
  int n = 3;
  std::vector<int> digits;
};
struct R2Family {
  int J = 3;
  Rational r;
};

using Label = std::variant<Generic, HomogeneousCantor, DigitCantor, R2Family>;

inline std::string describe(const Label& label) {
  struct V {
    std::string operator()(const Generic&) const { return "generic"; }
    std::string operator()(const HomogeneousCantor& h) const { return "homogeneous_cantor(" + to_string(h.a) + ")"; }
    std::string operator()(const DigitCantor& d) const {
      std::string s = "digit_cantor(" + std::to_string(d.n) + ",{";
      for (std::size_t i = 0; i < d.digits.size(); ++i) s += (i ? "," : "") + std::to_string(d.digits[i]);
      return s + "})";
    }
    std::string operator()(const R2Family& f) const {
      return "r2_family(" + std::to_string(f.J) + "," + to_string(f.r) + ")";
    }
  };
  return std::visit(V{}, label);
}

class IFSystem {
 public:
  IFSystem(int dim, std::vector<Similarity> maps, Label label = Generic{})
      : dim_(dim), maps_(std::move(maps)), label_(std::move(label)) {
    if (dim_ < 1) throw HypothesisError("dimension must be >= 1");
    if (maps_.size() < 2) throw HypothesisError("a system needs at least two maps (J >= 1)");
    for (const auto& m : maps_) {
      if (!m.orthogonal_identity) throw HypothesisError("non-identity orthogonal parts are not supported");
      if (m.r != maps_.front().r) throw HypothesisError("all maps must share a common ratio r");
      if (static_cast<int>(m.b.size()) != dim_) throw HypothesisError("translation vector has wrong dimension");
    }
    if (ratio() <= 0 || ratio() >= 1) throw HypothesisError("contraction ratio must lie in (0,1), got " + to_string(ratio()));
  }

  int dim() const { return dim_; }
  const Rational& ratio() const { return maps_.front().r; }
  const std::vector<Similarity>& maps() const { return maps_; }
  const Label& label() const { return label_; }
  std::size_t map_count() const { return maps_.size(); }

  std::vector<Vec> translations() const {
    std::vector<Vec> out;
    for (const auto& m : maps_) out.push_back(m.b);
    return out;
  }

  // The same system with b_0 moved to the origin (b_j -> b_j - b_0). Its attractor
  // is K - b_0 / (1 - r).
  IFSystem normalized_at_origin() const {
    std::vector<Similarity> maps = maps_;
    const Vec b0 = maps_.front().b;
    for (auto& m : maps)
      for (int i = 0; i < dim_; ++i) m.b[static_cast<std::size_t>(i)] -= b0[static_cast<std::size_t>(i)];
    return IFSystem(dim_, std::move(maps), Generic{});
  }

 private:
  int dim_;
  std::vector<Similarity> maps_;
  Label label_;
};

// Exact rank of a list of rational vectors (Gaussian elimination).
inline int rank(std::vector<Vec> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int r = 0;
  for (std::size_t c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    std::size_t pivot = static_cast<std::size_t>(r);
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[static_cast<std::size_t>(r)]);
    const Vec& p = rows[static_cast<std::size_t>(r)];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == static_cast<std::size_t>(r) || rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / p[c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * p[k];
    }
    ++r;
  }
  return r;
}

// conv{b_0..b_J} has an interior point iff the differences b_j - b_0 span R^d.
inline bool hull_has_interior(const std::vector<Vec>& b_list, int d) {
  if (b_list.empty()) return false;
  std::vector<Vec> diffs;
  for (std::size_t j = 1; j < b_list.size(); ++j) {
    Vec v(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] = b_list[j][static_cast<std::size_t>(i)] - b_list[0][static_cast<std::size_t>(i)];
    diffs.push_back(std::move(v));
  }
  return rank(std::move(diffs)) == d;
}

// Smallest positive integer k with k + 1 >= d / r.
inline long min_k_thm1(int d, const Rational& r) {
  if (d < 1) throw HypothesisError("d must be >= 1");
  if (r <= 0 || r >= 1) throw HypothesisError("r must lie in (0,1)");
  const Rational q = Rational(d) / r;
  const BigInt k = ceil_of(q) - 1;
  return std::max<long>(1, to_int64(k));
}

// Smallest integer k >= (1 - a) / a, for 0 < a < 1/2.
inline long min_k_prop1(const Rational& a) {
  if (a <= 0 || a >= Rational(1, 2)) throw HypothesisError("a must lie in (0, 1/2), got " + to_string(a));
  return to_int64(ceil_of((1 - a) / a));
}

inline bool check_r2_hypotheses(long J, const Rational& r) {
  if (J < 3) return false;
  return make_rational(2, 3 * J) <= r && r < make_rational(1, J + 1);
}

inline IFSystem build(const Label& label) {
  struct V {
    IFSystem operator()(const Generic&) const { throw HypothesisError("generic systems are built from explicit maps"); }
    IFSystem operator()(const HomogeneousCantor& h) const {
      if (h.a <= 0 || h.a >= Rational(1, 2))
        throw HypothesisError("homogeneous Cantor parameter must lie in (0, 1/2), got " + to_string(h.a));
      return IFSystem(1, {{h.a, {Rational(0)}}, {h.a, {Rational(1 - h.a)}}}, h);
    }
    IFSystem operator()(const DigitCantor& dc) const {
      if (dc.n < 3) throw HypothesisError("digit base must be >= 3");
      std::vector<int> digits = dc.digits;
      std::sort(digits.begin(), digits.end());
      digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
      if (digits.size() < 2) throw HypothesisError("digit set needs at least two digits");
      for (int a : digits)
        if (a < 0 || a >= dc.n) throw HypothesisError("digit " + std::to_string(a) + " outside {0..n-1}");
      std::vector<Similarity> maps;
      const Rational r(1, dc.n);
      for (int a : digits) maps.push_back({r, {make_rational(a, dc.n)}});
      return IFSystem(1, std::move(maps), DigitCantor{dc.n, digits});
    }
    IFSystem operator()(const R2Family& f) const {
      if (f.J < 1) throw HypothesisError("J must be >= 1");
      std::vector<Similarity> maps;
      for (int j = 0; j <= f.J; ++j) maps.push_back({f.r, {Rational(j)}});
      return IFSystem(1, std::move(maps), f);
    }
  };
  return std::visit(V{}, label);
}

inline IFSystem middle_thirds() { return build(DigitCantor{3, {0, 2}}); }

// R = max_j |b_j|_inf / (1 - r); [-R, R]^d is invariant.
inline Rational initial_radius(const IFSystem& sys) {
  Rational m = 0;
  for (const auto& s : sys.maps())
    for (const auto& x : s.b) m = std::max(m, abs(x));
  return m / (1 - sys.ratio());
}

inline IntervalUnion initial_set(const IFSystem& sys) {
  if (sys.dim() != 1) throw std::invalid_argument("initial_set: use initial_box for d >= 2");
  const Rational R = initial_radius(sys);
  return IntervalUnion::single(-R, R);
}

inline Box initial_box(const IFSystem& sys) {
  const Rational R = initial_radius(sys);
  return Box{Vec(static_cast<std::size_t>(sys.dim()), -R), Vec(static_cast<std::size_t>(sys.dim()), R)};
}

inline CellSet initial_cells(const IFSystem& sys, int base, int depth) {
  const Box b = initial_box(sys);
  return from_box(b.lo, b.hi, base, depth, CellMode::outer);
}

// Bounding box of the attractor: per coordinate [min b / (1-r), max b / (1-r)].
inline Box hull_box(const IFSystem& sys) {
  Box box{sys.maps().front().b, sys.maps().front().b};
  for (const auto& s : sys.maps())
    for (std::size_t i = 0; i < s.b.size(); ++i) {
      box.lo[i] = std::min(box.lo[i], s.b[i]);
      box.hi[i] = std::max(box.hi[i], s.b[i]);
    }
  const Rational denom = 1 - sys.ratio();
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    box.lo[i] /= denom;
    box.hi[i] /= denom;
  }
  return box;
}

// K_0 used by default: [0,1] for the Cantor families (so that K_m are the m-digit
// prefix intervals), the attractor's bounding box otherwise.
inline IntervalUnion natural_initial_set(const IFSystem& sys) {
  if (sys.dim() != 1) throw std::invalid_argument("natural_initial_set: d must be 1");
  if (std::holds_alternative<DigitCantor>(sys.label()) || std::holds_alternative<HomogeneousCantor>(sys.label()))
    return IntervalUnion::single(0, 1);
  const Box b = hull_box(sys);
  return IntervalUnion::single(b.lo[0], b.hi[0]);
}

inline IntervalUnion iterate(const IFSystem& sys, const IntervalUnion& f,
                             std::size_t cap = kDefaultIntervalCap) {
  if (sys.dim() != 1) throw std::invalid_argument("interval iteration needs d == 1");
  if (f.size() * sys.map_count() > cap)
    throw ResourceCapError("iterate: " + std::to_string(f.size() * sys.map_count()) + " intervals exceed cap " +
                           std::to_string(cap));
  std::vector<Interval> out;
  out.reserve(f.size() * sys.map_count());
  const Rational& r = sys.ratio();
  for (const auto& m : sys.maps())
    for (const auto& iv : f.intervals()) out.push_back({r * iv.lo + m.b[0], r * iv.hi + m.b[0]});
  return IntervalUnion(std::move(out));
}

inline BoxUnion iterate(const IFSystem& sys, const BoxUnion& f, std::size_t cap = kDefaultIntervalCap) {
  if (f.size() * sys.map_count() > cap)
    throw ResourceCapError("iterate: " + std::to_string(f.size() * sys.map_count()) + " boxes exceed cap " +
                           std::to_string(cap));
  std::vector<Box> out;
  const Rational& r = sys.ratio();
  for (const auto& m : sys.maps())
    for (const auto& b : f.boxes()) {
      Box nb{b.lo, b.hi};
      for (std::size_t i = 0; i < nb.lo.size(); ++i) {
        nb.lo[i] = r * b.lo[i] + m.b[i];
        nb.hi[i] = r * b.hi[i] + m.b[i];
      }
      out.push_back(std::move(nb));
    }
  return BoxUnion(f.dim(), std::move(out));
}

// Outer cover of T(set covered by f), on f's grid.
inline CellSet iterate(const IFSystem& sys, const CellSet& f) {
  if (f.mode() != CellMode::outer) throw std::invalid_argument("cell iteration needs an outer cell set");
  if (f.dim() != sys.dim()) throw std::invalid_argument("dimension mismatch");
  const Rational h = f.cell_width();
  const Rational& r = sys.ratio();
  std::vector<Cell> out;
  for (const auto& c : f.cells())
    for (const auto& m : sys.maps()) {
      Vec lo, hi;
      for (int i = 0; i < f.dim(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        lo.push_back(r * h * Rational(c[k]) + m.b[k]);
        hi.push_back(r * h * Rational(c[k] + 1) + m.b[k]);
      }
      auto part = from_box(lo, hi, f.base(), f.depth(), CellMode::outer).cells();
      out.insert(out.end(), part.begin(), part.end());
    }
  return CellSet::from_cells(f.dim(), f.base(), f.depth(), CellMode::outer, std::move(out));
}

// r K_0 + b_j ⊆ K_0 for every j.
inline bool is_invariant(const IFSystem& sys, const IntervalUnion& k0) {
  for (const auto& m : sys.maps())
    if (!k0.contains(k0.affine(sys.ratio(), m.b[0]))) return false;
  return true;
}

inline bool is_invariant(const IFSystem& sys, const Box& k0) {
  for (const auto& m : sys.maps())
    for (std::size_t i = 0; i < k0.lo.size(); ++i) {
      const Rational lo = sys.ratio() * k0.lo[i] + m.b[i], hi = sys.ratio() * k0.hi[i] + m.b[i];
      if (lo < k0.lo[i] || hi > k0.hi[i]) return false;
    }
  return true;
}

// K_m = T^m(K_0). A supplied K_0 must satisfy r K_0 + b_j ⊆ K_0.
inline IntervalUnion approximant(const IFSystem& sys, int m, const IntervalUnion& k0,
                                 std::size_t cap = kDefaultIntervalCap) {
  if (m < 0) throw std::invalid_argument("depth must be >= 0");
  if (!is_invariant(sys, k0)) throw HypothesisError("initial set K_0 is not mapped into itself by the system");
  IntervalUnion k = k0;
  for (int i = 0; i < m; ++i) k = iterate(sys, k, cap);
  return k;
}

inline IntervalUnion approximant(const IFSystem& sys, int m, std::size_t cap = kDefaultIntervalCap) {
  return approximant(sys, m, natural_initial_set(sys), cap);
}

inline BoxUnion box_approximant(const IFSystem& sys, int m, const Box& k0, std::size_t cap = kDefaultIntervalCap) {
  if (m < 0) throw std::invalid_argument("depth must be >= 0");
  if (!is_invariant(sys, k0)) throw HypothesisError("initial box K_0 is not mapped into itself by the system");
  BoxUnion k(sys.dim(), {k0});
  for (int i = 0; i < m; ++i) k = iterate(sys, k, cap);
  return k;
}

inline CellSet cell_approximant(const IFSystem& sys, int m, int base, int depth) {
  CellSet k = initial_cells(sys, base, depth);
  for (int i = 0; i < m; ++i) k = iterate(sys, k);
  return k;
}

}  // namespace fracsum::ifs
