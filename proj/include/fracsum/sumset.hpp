#pragma once

// Minkowski sums, k-fold and signed sums, and difference-vector sets
// D_k(K) = {(x_0 - x_1, ..., x_0 - x_k) : x_i in K}, exact on interval unions and
// on the integer lattice of a CellSet.

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fracsum/bitline.hpp"
#include "fracsum/cellgrid.hpp"
#include "fracsum/errors.hpp"
#include "fracsum/geometry.hpp"
#include "fracsum/parallel.hpp"
#include "fracsum/rational.hpp"

namespace fracsum::sumset {

inline constexpr std::size_t kDefaultPairCap = 50'000'000;

namespace detail {

// Endpoints of a and b on the common denominator, when every scaled numerator
// stays well inside int64.
struct Scaled {
  BigInt den;
  std::vector<std::pair<std::int64_t, std::int64_t>> a, b;
};

inline std::optional<Scaled> scale_common(const IntervalUnion& a, const IntervalUnion& b) {
  BigInt den = 1;
  for (const auto* u : {&a, &b})
    for (const auto& iv : u->intervals()) {
      den = lcm(den, iv.lo.get_den());
      den = lcm(den, iv.hi.get_den());
    }
  const BigInt limit = BigInt(1) << 60;
  Scaled s{den, {}, {}};
  auto convert = [&](const IntervalUnion& u, auto& out) {
    for (const auto& iv : u.intervals()) {
      const BigInt lo = iv.lo.get_num() * (den / iv.lo.get_den());
      const BigInt hi = iv.hi.get_num() * (den / iv.hi.get_den());
      if (abs(lo) >= limit || abs(hi) >= limit) return false;
      out.emplace_back(lo.get_si(), hi.get_si());
    }
    return true;
  };
  if (!convert(a, s.a) || !convert(b, s.b)) return std::nullopt;
  return s;
}

inline IntervalUnion from_scaled(std::vector<std::pair<std::int64_t, std::int64_t>>& raw, const BigInt& den) {
  std::sort(raw.begin(), raw.end());
  std::vector<Interval> out;
  std::int64_t cur_lo = 0, cur_hi = 0;
  bool open = false;
  auto flush = [&] {
    out.push_back({make_rational(BigInt(static_cast<long>(cur_lo)), den),
                   make_rational(BigInt(static_cast<long>(cur_hi)), den)});
  };
  for (const auto& [lo, hi] : raw) {
    if (open && lo <= cur_hi) {
      cur_hi = std::max(cur_hi, hi);
      continue;
    }
    if (open) flush();
    cur_lo = lo;
    cur_hi = hi;
    open = true;
  }
  if (open) flush();
  return IntervalUnion(std::move(out));
}

}  // namespace detail

// Exact {x + y : x in a, y in b}, normalized.
inline IntervalUnion minkowski_sum(const IntervalUnion& a, const IntervalUnion& b,
                                   std::size_t cap = kDefaultPairCap) {
  if (a.empty() || b.empty()) return {};
  if (a.size() * b.size() > cap)
    throw ResourceCapError("minkowski_sum: " + std::to_string(a.size() * b.size()) + " interval pairs exceed cap " +
                           std::to_string(cap));
  if (auto s = detail::scale_common(a, b)) {
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    raw.reserve(s->a.size() * s->b.size());
    for (const auto& [alo, ahi] : s->a)
      for (const auto& [blo, bhi] : s->b) raw.emplace_back(alo + blo, ahi + bhi);
    return detail::from_scaled(raw, s->den);
  }
  std::vector<Interval> raw;
  raw.reserve(a.size() * b.size());
  for (const auto& x : a.intervals())
    for (const auto& y : b.intervals()) raw.push_back({x.lo + y.lo, x.hi + y.hi});
  return IntervalUnion(std::move(raw));
}

inline IntervalUnion kfold_sum(const IntervalUnion& k_set, int k, std::size_t cap = kDefaultPairCap) {
  if (k < 1) throw std::invalid_argument("kfold_sum: k must be >= 1");
  IntervalUnion acc = k_set;
  for (int i = 1; i < k; ++i) acc = minkowski_sum(acc, k_set, cap);
  return acc;
}

// K ± K ± ... ± K; signs[0] must be +1.
inline IntervalUnion signed_sum(const IntervalUnion& k_set, const std::vector<int>& signs,
                                std::size_t cap = kDefaultPairCap) {
  if (signs.size() < 2) throw std::invalid_argument("signed_sum: need at least two signs");
  if (signs.front() != 1) throw std::invalid_argument("signed_sum: first sign must be +");
  const IntervalUnion neg = k_set.negated();
  IntervalUnion acc = k_set;
  for (std::size_t i = 1; i < signs.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw std::invalid_argument("signed_sum: signs must be +1 or -1");
    acc = minkowski_sum(acc, signs[i] == 1 ? k_set : neg, cap);
  }
  return acc;
}

// Exact sum of two box unions (pairwise box sums, duplicates removed).
inline BoxUnion minkowski_sum(const BoxUnion& a, const BoxUnion& b, std::size_t cap = kDefaultPairCap) {
  if (a.dim() != b.dim()) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  if (a.size() * b.size() > cap)
    throw ResourceCapError("minkowski_sum: " + std::to_string(a.size() * b.size()) + " box pairs exceed cap");
  std::vector<Box> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.boxes())
    for (const auto& y : b.boxes()) {
      Box s = x;
      for (std::size_t i = 0; i < s.lo.size(); ++i) {
        s.lo[i] += y.lo[i];
        s.hi[i] += y.hi[i];
      }
      out.push_back(std::move(s));
    }
  return BoxUnion(a.dim(), std::move(out));
}

inline BoxUnion kfold_sum(const BoxUnion& k_set, int k, std::size_t cap = kDefaultPairCap) {
  if (k < 1) throw std::invalid_argument("kfold_sum: k must be >= 1");
  BoxUnion acc = k_set;
  for (int i = 1; i < k; ++i) acc = minkowski_sum(acc, k_set, cap);
  return acc;
}

// --- lattice sums on CellSets ---
//
// A CellSet is read here as its lattice points {c}; sums are {p + q}. This is the
// discrete setting of the counting inequalities. outer_sum adds the unit corner
// offsets so that the result covers the sum of the represented boxes.

inline CellSet negated(const CellSet& e) {
  if (e.dim() == 1) {
    if (e.empty()) return e;
    const BitLine& src = e.line();
    BitLine out(-src.hi(), src.width());
    src.for_each([&](std::int64_t c) { out.set(-c); });
    return CellSet::from_line(e.base(), e.depth(), e.mode(), std::move(out));
  }
  auto cells = e.cells();
  for (auto& c : cells)
    for (auto& x : c) x = -x;
  return CellSet::from_cells(e.dim(), e.base(), e.depth(), e.mode(), std::move(cells));
}

inline BitLine line_sum(const BitLine& a, const BitLine& b) {
  if (a.count() == 0 || b.count() == 0) return BitLine(0, 0);
  const BitLine& few = a.count() <= b.count() ? a : b;
  const BitLine& many = a.count() <= b.count() ? b : a;
  BitLine out(a.lo() + b.lo(), a.width() + b.width() - 1);
  few.for_each([&](std::int64_t x) { bits::or_shifted(out.words(), many.words(), many.lo() + x - out.lo()); });
  out.mask_tail();
  return out;
}

inline CellSet minkowski_sum(const CellSet& a, const CellSet& b, std::size_t cap = kDefaultPairCap) {
  require_same_grid(a, b);
  if (a.empty() || b.empty()) return CellSet(a.dim(), a.base(), a.depth(), a.mode());
  if (a.dim() == 1) return CellSet::from_line(a.base(), a.depth(), a.mode(), line_sum(a.line(), b.line()));
  if (a.size() * b.size() > cap)
    throw ResourceCapError("minkowski_sum: " + std::to_string(a.size() * b.size()) + " cell pairs exceed cap");
  std::vector<Cell> out;
  out.reserve(a.size() * b.size());
  for (const auto& p : a.cells())
    for (const auto& q : b.cells()) out.push_back({p[0] + q[0], p[1] + q[1], p[2] + q[2]});
  return CellSet::from_cells(a.dim(), a.base(), a.depth(), a.mode(), std::move(out));
}

// Cells covering the sum of the boxes of a and b: {p + q + e : e in {0,1}^d}.
inline CellSet outer_sum(const CellSet& a, const CellSet& b, std::size_t cap = kDefaultPairCap) {
  CellSet s = minkowski_sum(a, b, cap);
  std::vector<Cell> corners;
  const int d = a.dim();
  for (int mask = 0; mask < (1 << d); ++mask) {
    Cell e{0, 0, 0};
    for (int i = 0; i < d; ++i) e[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    corners.push_back(e);
  }
  const CellSet unit = CellSet::from_cells(d, a.base(), a.depth(), a.mode(), corners);
  return minkowski_sum(s, unit, cap).with_mode(CellMode::outer);
}

inline CellSet kfold_sum(const CellSet& k_set, int k, std::size_t cap = kDefaultPairCap) {
  if (k < 1) throw std::invalid_argument("kfold_sum: k must be >= 1");
  CellSet acc = k_set;
  for (int i = 1; i < k; ++i) acc = minkowski_sum(acc, k_set, cap);
  return acc;
}

inline CellSet signed_sum(const CellSet& k_set, const std::vector<int>& signs, std::size_t cap = kDefaultPairCap) {
  if (signs.size() < 2) throw std::invalid_argument("signed_sum: need at least two signs");
  if (signs.front() != 1) throw std::invalid_argument("signed_sum: first sign must be +");
  const CellSet neg = negated(k_set);
  CellSet acc = k_set;
  for (std::size_t i = 1; i < signs.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw std::invalid_argument("signed_sum: signs must be +1 or -1");
    acc = minkowski_sum(acc, signs[i] == 1 ? k_set : neg, cap);
  }
  return acc;
}

// --- difference vectors ---

inline constexpr std::int64_t kMaxDiffSide = std::int64_t{1} << 14;
inline constexpr std::uint64_t kMaxDiffBits = std::uint64_t{1} << 31;

using Offset = std::array<std::int64_t, 3>;

// Occupied lattice offsets (i_1..i_k) with i_l = p - q_l for cells p, q_l of K,
// stored as a dense grid over [-span, span]^k, rows along the last axis.
class DiffVectorSet {
 public:
  DiffVectorSet() = default;
  DiffVectorSet(int k, int base, int depth, std::int64_t span, std::string provenance)
      : k_(k), base_(base), depth_(depth), span_(span), provenance_(std::move(provenance)) {
    row_words_ = static_cast<std::size_t>((side() + 63) / 64);
    bits_.assign(row_words_ * static_cast<std::size_t>(rows()), 0);
  }

  int k() const { return k_; }
  int base() const { return base_; }
  int depth() const { return depth_; }
  std::int64_t span() const { return span_; }
  std::int64_t side() const { return 2 * span_ + 1; }
  const std::string& provenance() const { return provenance_; }
  std::int64_t rows() const {
    std::int64_t r = 1;
    for (int i = 1; i < k_; ++i) r *= side();
    return r;
  }
  std::size_t row_words() const { return row_words_; }

  Rational cell_width() const {
    return Rational(BigInt(1), ipow(BigInt(base_), static_cast<unsigned long>(depth_)));
  }

  bool occupied(const Offset& o) const {
    for (int i = 0; i < k_; ++i)
      if (o[static_cast<std::size_t>(i)] < -span_ || o[static_cast<std::size_t>(i)] > span_) return false;
    const auto col = static_cast<std::size_t>(o[static_cast<std::size_t>(k_ - 1)] + span_);
    const auto& w = bits_[row_index(o) * row_words_ + (col >> 6)];
    return (w >> (col & 63)) & 1U;
  }

  std::size_t count() const { return bits::popcount(bits_); }

  // Cell c (box c*h + [0,h]^k) lies in the outer cover iff some occupied offset
  // equals c + e with e in {0,1}^k.
  bool outer_contains(const Offset& c) const {
    for (int mask = 0; mask < (1 << k_); ++mask) {
      Offset o = c;
      for (int i = 0; i < k_; ++i) o[static_cast<std::size_t>(i)] += (mask >> i) & 1;
      if (occupied(o)) return true;
    }
    return false;
  }

  // Number of cells of the outer cover.
  std::size_t outer_count() const {
    std::size_t n = 0;
    const std::int64_t lo = -span_ - 1;
    if (k_ == 1) {
      for (std::int64_t c = lo; c <= span_; ++c) n += outer_contains({c, 0, 0});
      return n;
    }
    // Expand along the last axis with word shifts, then OR neighbouring rows.
    const std::int64_t wide = side() + 1;
    const std::size_t ww = static_cast<std::size_t>((wide + 63) / 64);
    auto expand_row = [&](std::size_t r) {
      std::vector<std::uint64_t> src(bits_.begin() + static_cast<std::ptrdiff_t>(r * row_words_),
                                     bits_.begin() + static_cast<std::ptrdiff_t>((r + 1) * row_words_));
      std::vector<std::uint64_t> out(ww, 0);
      bits::or_shifted(out, src, 0);
      bits::or_shifted(out, src, 1);
      return out;
    };
    const std::int64_t outer_side = side();  // first coords: c in [-span-1, span] -> side + 1 values
    if (k_ == 2) {
      for (std::int64_t c1 = -span_ - 1; c1 <= span_; ++c1) {
        std::vector<std::uint64_t> acc(ww, 0);
        for (std::int64_t e = 0; e <= 1; ++e) {
          const std::int64_t o1 = c1 + e;
          if (o1 < -span_ || o1 > span_) continue;
          auto row = expand_row(static_cast<std::size_t>(o1 + span_));
          for (std::size_t i = 0; i < ww; ++i) acc[i] |= row[i];
        }
        n += bits::popcount(acc);
      }
      (void)outer_side;
      return n;
    }
    for (std::int64_t c1 = -span_ - 1; c1 <= span_; ++c1)
      for (std::int64_t c2 = -span_ - 1; c2 <= span_; ++c2) {
        std::vector<std::uint64_t> acc(ww, 0);
        for (std::int64_t e1 = 0; e1 <= 1; ++e1)
          for (std::int64_t e2 = 0; e2 <= 1; ++e2) {
            const std::int64_t o1 = c1 + e1, o2 = c2 + e2;
            if (o1 < -span_ || o1 > span_ || o2 < -span_ || o2 > span_) continue;
            auto row = expand_row(static_cast<std::size_t>((o1 + span_) * side() + (o2 + span_)));
            for (std::size_t i = 0; i < ww; ++i) acc[i] |= row[i];
          }
        n += bits::popcount(acc);
      }
    return n;
  }

  // Outer-cover measure |cover| * h^k.
  Rational outer_measure() const {
    Rational m(BigInt(static_cast<unsigned long>(outer_count())),
               ipow(ipow(BigInt(base_), static_cast<unsigned long>(depth_)), static_cast<unsigned long>(k_)));
    m.canonicalize();
    return m;
  }

  std::vector<Offset> offsets() const {
    std::vector<Offset> out;
    for (std::int64_t r = 0; r < rows(); ++r) {
      Offset prefix{0, 0, 0};
      std::int64_t rr = r;
      for (int i = k_ - 2; i >= 0; --i) {
        prefix[static_cast<std::size_t>(i)] = rr % side() - span_;
        rr /= side();
      }
      std::vector<std::uint64_t> row(bits_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(r) * row_words_),
                                     bits_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(r + 1) * row_words_));
      bits::for_each_set(row, [&](std::int64_t col) {
        Offset o = prefix;
        o[static_cast<std::size_t>(k_ - 1)] = col - span_;
        out.push_back(o);
      });
    }
    return out;
  }

  // Occupied offsets as a lattice CellSet (small instances).
  CellSet to_cells() const {
    std::vector<Cell> cells;
    for (const auto& o : offsets()) cells.push_back(o);
    return CellSet::from_cells(k_, base_, depth_, CellMode::outer, std::move(cells));
  }

  std::vector<std::uint64_t>& raw() { return bits_; }
  const std::vector<std::uint64_t>& raw() const { return bits_; }

  friend bool operator==(const DiffVectorSet& a, const DiffVectorSet& b) {
    return a.k_ == b.k_ && a.base_ == b.base_ && a.depth_ == b.depth_ && a.span_ == b.span_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t row_index(const Offset& o) const {
    std::size_t r = 0;
    for (int i = 0; i + 1 < k_; ++i)
      r = r * static_cast<std::size_t>(side()) + static_cast<std::size_t>(o[static_cast<std::size_t>(i)] + span_);
    return r;
  }

  int k_ = 1;
  int base_ = 2;
  int depth_ = 0;
  std::int64_t span_ = 0;
  std::string provenance_;
  std::size_t row_words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Shifted-bitset kernel. For each prefix (i_1..i_{k-1}) the candidates
// X = P ∩ (P + i_1) ∩ ... are intersected word-parallel; the last axis is X - P,
// built by OR-ing shifted copies of whichever of X or P is sparser.
inline DiffVectorSet diff_vectors(const CellSet& k_cells, int k, unsigned workers = 1,
                                  std::string provenance = {}) {
  if (k < 1 || k > 3) throw std::invalid_argument("diff_vectors: k must be 1, 2 or 3");
  if (k_cells.dim() != 1) throw std::invalid_argument("diff_vectors: base set must be one-dimensional");
  if (k_cells.empty()) throw std::invalid_argument("diff_vectors: empty set");
  const BitLine p = k_cells.line().trimmed();
  const std::int64_t n = p.width();
  const std::int64_t span = n - 1;
  const std::int64_t side = 2 * span + 1;
  if (side > kMaxDiffSide)
    throw ResourceCapError("diff_vectors: grid side " + std::to_string(side) + " exceeds " +
                           std::to_string(kMaxDiffSide));
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) total *= static_cast<std::uint64_t>(side);
  if (total > kMaxDiffBits)
    throw ResourceCapError("diff_vectors: " + std::to_string(total) + " grid bits exceed cap");

  DiffVectorSet out(k, k_cells.base(), k_cells.depth(), span, std::move(provenance));
  const std::vector<std::uint64_t>& pw = p.words();  // bit t <-> cell p.lo() + t
  const std::size_t pcount = p.count();

  // Reversed P: bit (n - 1 - t) set iff bit t of P is set.
  std::vector<std::uint64_t> prev(pw.size(), 0);
  bits::for_each_set(pw, [&](std::int64_t t) {
    const auto u = static_cast<std::size_t>(n - 1 - t);
    prev[u >> 6] |= std::uint64_t{1} << (u & 63);
  });

  // Row over i_k in [-span, span]: bit (x - q + span) for x in X, q in P.
  auto last_axis = [&](const std::vector<std::uint64_t>& x, std::uint64_t* row) {
    std::vector<std::uint64_t> acc(out.row_words(), 0);
    const std::size_t xcount = bits::popcount(x);
    if (xcount == 0) return;
    if (xcount <= pcount) {
      bits::for_each_set(x, [&](std::int64_t xi) { bits::or_shifted(acc, prev, xi); });
    } else {
      bits::for_each_set(prev, [&](std::int64_t t) { bits::or_shifted(acc, x, t); });
    }
    const auto rem = static_cast<unsigned>(side & 63);
    if (rem) acc.back() &= (std::uint64_t{1} << rem) - 1;
    std::copy(acc.begin(), acc.end(), row);
  };

  auto row_ptr = [&](std::size_t r) { return out.raw().data() + r * out.row_words(); };

  if (k == 1) {
    last_axis(pw, row_ptr(0));
    return out;
  }
  if (k == 2) {
    parallel_for(static_cast<std::size_t>(side), workers, [&](std::size_t r) {
      const std::int64_t i1 = static_cast<std::int64_t>(r) - span;
      std::vector<std::uint64_t> x = pw;
      bits::and_shifted(x, pw, i1);
      last_axis(x, row_ptr(r));
    });
    return out;
  }
  parallel_for(static_cast<std::size_t>(side), workers, [&](std::size_t r1) {
    const std::int64_t i1 = static_cast<std::int64_t>(r1) - span;
    std::vector<std::uint64_t> x1 = pw;
    bits::and_shifted(x1, pw, i1);
    if (!bits::any(x1)) return;
    for (std::int64_t r2 = 0; r2 < side; ++r2) {
      std::vector<std::uint64_t> x2 = x1;
      bits::and_shifted(x2, pw, r2 - span);
      last_axis(x2, row_ptr(r1 * static_cast<std::size_t>(side) + static_cast<std::size_t>(r2)));
    }
  });
  return out;
}

// --- polytope containment on grids ---

struct PolytopeCheck {
  bool holds = true;
  std::size_t cells_checked = 0;
  std::optional<Cell> missing;
};

namespace detail {

template <typename Covered>
PolytopeCheck check_polytope(int dim, const Rational& h, const std::vector<geom::Point2>& vertices,
                             Covered&& covered) {
  PolytopeCheck res;
  const BigInt scale = ceil_of(1 / h);
  if (dim == 1) {
    Rational lo = vertices.front().x, hi = vertices.front().x;
    for (const auto& v : vertices) {
      lo = std::min(lo, v.x);
      hi = std::max(hi, v.x);
    }
    auto [a, b] = cover_range(lo, hi, scale, CellMode::outer);
    for (std::int64_t c = to_int64(a); c <= to_int64(b); ++c) {
      ++res.cells_checked;
      if (!covered(Cell{c, 0, 0})) {
        res.holds = false;
        res.missing = Cell{c, 0, 0};
        return res;
      }
    }
    return res;
  }
  const auto poly = geom::ConvexPolygon::hull(vertices);
  if (poly.degenerate()) throw std::invalid_argument("contains_polytope: polygon has empty interior");
  const std::int64_t cx0 = to_int64(floor_of(poly.min_x() * scale));
  const std::int64_t cx1 = to_int64(ceil_of(poly.max_x() * scale)) - 1;
  for (std::int64_t cx = cx0; cx <= cx1; ++cx) {
    auto range = geom::strip_y_range(poly, Rational(cx) * h, Rational(cx + 1) * h);
    if (!range) continue;
    const std::int64_t cy0 = to_int64(floor_of(range->first * scale));
    const std::int64_t cy1 = to_int64(ceil_of(range->second * scale)) - 1;
    for (std::int64_t cy = cy0; cy <= cy1; ++cy) {
      ++res.cells_checked;
      if (!covered(Cell{cx, cy, 0})) {
        res.holds = false;
        res.missing = Cell{cx, cy, 0};
        return res;
      }
    }
  }
  return res;
}

}  // namespace detail

// Every grid cell whose interior meets conv(vertices) belongs to the outer cover of s.
inline PolytopeCheck contains_polytope(const DiffVectorSet& s, const std::vector<geom::Point2>& vertices) {
  if (s.k() != 1 && s.k() != 2) throw std::invalid_argument("contains_polytope: dimension must be 1 or 2");
  if (vertices.empty()) throw std::invalid_argument("contains_polytope: no vertices");
  return detail::check_polytope(s.k(), s.cell_width(), vertices, [&](const Cell& c) { return s.outer_contains(c); });
}

// Every grid cell whose interior meets conv(vertices) is a cell of s (inner mode).
inline PolytopeCheck contains_polytope(const CellSet& s, const std::vector<geom::Point2>& vertices) {
  if (s.dim() != 1 && s.dim() != 2) throw std::invalid_argument("contains_polytope: dimension must be 1 or 2");
  if (s.mode() != CellMode::inner) throw std::invalid_argument("contains_polytope: cell set must be inner mode");
  if (vertices.empty()) throw std::invalid_argument("contains_polytope: no vertices");
  return detail::check_polytope(s.dim(), s.cell_width(), vertices, [&](const Cell& c) { return s.contains(c); });
}

// --- export ---

// Run-length bit planes: header "fracsum-dvs 1 k base depth span", then one line per
// nonempty row: "row z1 o1 z2 o2 ..." (alternating zero/one run lengths).
inline void write_rle(std::ostream& os, const DiffVectorSet& s) {
  os << "fracsum-dvs 1 " << s.k() << ' ' << s.base() << ' ' << s.depth() << ' ' << s.span() << '\n';
  const std::int64_t side = s.side();
  for (std::int64_t r = 0; r < s.rows(); ++r) {
    const std::uint64_t* row = s.raw().data() + static_cast<std::size_t>(r) * s.row_words();
    bool any = false;
    for (std::size_t i = 0; i < s.row_words(); ++i) any = any || row[i];
    if (!any) continue;
    os << r;
    bool bit = false;
    std::int64_t run = 0;
    for (std::int64_t c = 0; c < side; ++c) {
      const bool b = (row[static_cast<std::size_t>(c) >> 6] >> (c & 63)) & 1U;
      if (b != bit) {
        os << ' ' << run;
        run = 0;
        bit = b;
      }
      ++run;
    }
    if (bit) os << ' ' << run;
    os << '\n';
  }
}

inline DiffVectorSet read_rle(std::istream& is) {
  std::string magic;
  int version = 0, k = 0, base = 0, depth = 0;
  std::int64_t span = 0;
  if (!(is >> magic >> version >> k >> base >> depth >> span) || magic != "fracsum-dvs" || version != 1)
    throw ParseError("difference-vector file: bad header");
  if (k < 1 || k > 3 || span < 0) throw ParseError("difference-vector file: header values out of range");
  DiffVectorSet s(k, base, depth, span, "rle");
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::int64_t r = 0;
    ls >> r;
    if (r < 0 || r >= s.rows()) throw ParseError("difference-vector file: row out of range");
    std::uint64_t* row = s.raw().data() + static_cast<std::size_t>(r) * s.row_words();
    std::int64_t pos = 0, run = 0;
    bool bit = false;
    while (ls >> run) {
      if (run < 0 || pos + run > s.side()) throw ParseError("difference-vector file: run overflows row");
      if (bit)
        for (std::int64_t c = pos; c < pos + run; ++c) row[static_cast<std::size_t>(c) >> 6] |= std::uint64_t{1} << (c & 63);
      pos += run;
      bit = !bit;
    }
  }
  return s;
}

// Plain list of occupied offsets, one per line.
inline void write_offsets(std::ostream& os, const DiffVectorSet& s, std::size_t limit = 1'000'000) {
  if (s.count() > limit) throw ResourceCapError("write_offsets: too many offsets for the plain listing");
  for (const auto& o : s.offsets()) {
    for (int i = 0; i < s.k(); ++i) os << (i ? " " : "") << o[static_cast<std::size_t>(i)];
    os << '\n';
  }
}

}  // namespace fracsum::sumset
