#pragma once

// Exact and lattice representations of compact subsets of R^d.
//
// IntervalUnion is the exact form in dimension one: a normalized list of closed
// intervals with rational endpoints. CellSet is the lattice form: integer cells c
// standing for the boxes c * base^-depth + [0, base^-depth]^d. BoxUnion holds
// exact finite unions of axis-aligned boxes for d >= 2 approximants.
//
// Cell covers use one rule throughout: the outer cover of a closed interval
// [a, b] with a < b is every cell whose open interior meets it (floor(a/h) up to
// ceil(b/h) - 1), and a single point p is covered by the cell floor(p/h). The
// closed union of the outer cells always contains the set. The inner cover of
// [a, b] is every cell whose closed box lies inside [a, b].

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fracsum/bitline.hpp"
#include "fracsum/errors.hpp"
#include "fracsum/rational.hpp"

namespace fracsum {

struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

class IntervalUnion {
 public:
  IntervalUnion() = default;

  // Sorts and merges; overlapping or abutting intervals become one.
  explicit IntervalUnion(std::vector<Interval> raw) : intervals_(std::move(raw)) {
    for (const auto& iv : intervals_)
      if (iv.lo > iv.hi) throw std::invalid_argument("interval with left > right");
    normalize_in_place();
  }

  static IntervalUnion single(const Rational& lo, const Rational& hi) { return IntervalUnion({{lo, hi}}); }
  static IntervalUnion point(const Rational& x) { return IntervalUnion({{x, x}}); }

  const std::vector<Interval>& intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }

  const Rational& min() const { return intervals_.front().lo; }
  const Rational& max() const { return intervals_.back().hi; }

  Rational measure() const {
    Rational m = 0;
    for (const auto& iv : intervals_) m += iv.hi - iv.lo;
    return m;
  }

  bool contains(const Rational& x) const {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                               [](const Rational& v, const Interval& iv) { return v < iv.lo; });
    if (it == intervals_.begin()) return false;
    --it;
    return x <= it->hi;
  }

  // other is a subset of *this; both normalized, so each piece of other must sit
  // inside a single piece of *this.
  bool contains(const IntervalUnion& other) const {
    for (const auto& iv : other.intervals_) {
      auto it = std::upper_bound(intervals_.begin(), intervals_.end(), iv.lo,
                                 [](const Rational& v, const Interval& piece) { return v < piece.lo; });
      if (it == intervals_.begin()) return false;
      --it;
      if (iv.hi > it->hi) return false;
    }
    return true;
  }

  // Image under x -> scale * x + shift (scale may be negative).
  IntervalUnion affine(const Rational& scale, const Rational& shift) const {
    std::vector<Interval> out;
    out.reserve(intervals_.size());
    for (const auto& iv : intervals_) {
      Rational a = scale * iv.lo + shift, b = scale * iv.hi + shift;
      if (a > b) std::swap(a, b);
      out.push_back({std::move(a), std::move(b)});
    }
    return IntervalUnion(std::move(out));
  }

  IntervalUnion negated() const { return affine(Rational(-1), Rational(0)); }

  friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) { return a.intervals_ == b.intervals_; }

 private:
  void normalize_in_place() {
    std::sort(intervals_.begin(), intervals_.end(), [](const Interval& a, const Interval& b) {
      return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<Interval> merged;
    merged.reserve(intervals_.size());
    for (auto& iv : intervals_) {
      if (!merged.empty() && iv.lo <= merged.back().hi) {
        if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
      } else {
        merged.push_back(std::move(iv));
      }
    }
    intervals_ = std::move(merged);
  }

  std::vector<Interval> intervals_;
};

// Union of normalized interval lists.
inline IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> all = a.intervals();
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return IntervalUnion(std::move(all));
}

// Exact containment iv_target ⊆ e.
inline bool covers_interval(const IntervalUnion& iv_target, const IntervalUnion& e) { return e.contains(iv_target); }

// --- text format: one interval per line, "p/q p'/q'" ---

inline void write_intervals(std::ostream& os, const IntervalUnion& u) {
  for (const auto& iv : u.intervals()) os << format_rational(iv.lo) << ' ' << format_rational(iv.hi) << '\n';
}

inline std::string to_text(const IntervalUnion& u) {
  std::ostringstream os;
  write_intervals(os, u);
  return os.str();
}

inline IntervalUnion read_intervals(std::istream& is) {
  std::vector<Interval> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a >> b) || (ls >> extra))
      throw ParseError("interval line " + std::to_string(lineno) + ": expected \"p/q p'/q'\"");
    Rational lo = parse_rational(a), hi = parse_rational(b);
    if (lo > hi) throw ParseError("interval line " + std::to_string(lineno) + ": left endpoint exceeds right");
    raw.push_back({std::move(lo), std::move(hi)});
  }
  return IntervalUnion(std::move(raw));
}

inline IntervalUnion intervals_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_intervals(is);
}

// --- lattice cells ---

enum class CellMode { outer, inner };

inline const char* to_string(CellMode m) { return m == CellMode::outer ? "outer" : "inner"; }

inline CellMode parse_cell_mode(const std::string& s) {
  if (s == "outer") return CellMode::outer;
  if (s == "inner") return CellMode::inner;
  throw ParseError("unknown cell mode '" + s + "'");
}

// Coordinates beyond the set's dimension are zero.
using Cell = std::array<std::int64_t, 3>;

inline constexpr int kMaxCellDim = 3;

// Integer cell range [first, last] for the cover of [lo, hi] at step 1/scale;
// first > last means empty.
inline std::pair<BigInt, BigInt> cover_range(const Rational& lo, const Rational& hi, const BigInt& scale,
                                            CellMode mode) {
  const Rational a = lo * scale, b = hi * scale;
  if (mode == CellMode::outer) {
    if (a == b) {
      BigInt c = floor_of(a);
      return {c, c};
    }
    return {floor_of(a), ceil_of(b) - 1};
  }
  return {ceil_of(a), floor_of(b) - 1};
}

class CellSet {
 public:
  CellSet() = default;

  CellSet(int dim, int base, int depth, CellMode mode) : dim_(dim), base_(base), depth_(depth), mode_(mode) {
    if (dim < 1 || dim > kMaxCellDim) throw std::invalid_argument("cell sets support 1 <= d <= 3");
    if (base < 2) throw std::invalid_argument("base must be >= 2");
    if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  }

  static CellSet from_cells(int dim, int base, int depth, CellMode mode, std::vector<Cell> cells) {
    CellSet s(dim, base, depth, mode);
    for (auto& c : cells)
      for (int i = dim; i < kMaxCellDim; ++i) c[static_cast<std::size_t>(i)] = 0;
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    if (dim == 1) {
      if (!cells.empty()) {
        s.line_ = BitLine(cells.front()[0], cells.back()[0] - cells.front()[0] + 1);
        for (const auto& c : cells) s.line_.set(c[0]);
      }
    } else {
      s.cells_ = std::move(cells);
    }
    return s;
  }

  static CellSet from_line(int base, int depth, CellMode mode, BitLine line) {
    CellSet s(1, base, depth, mode);
    s.line_ = line.trimmed();
    return s;
  }

  int dim() const { return dim_; }
  int base() const { return base_; }
  int depth() const { return depth_; }
  CellMode mode() const { return mode_; }

  std::size_t size() const { return dim_ == 1 ? line_.count() : cells_.size(); }
  bool empty() const { return size() == 0; }

  // Dense form; only for d == 1.
  const BitLine& line() const {
    if (dim_ != 1) throw std::logic_error("line() requires d == 1");
    return line_;
  }

  bool contains(const Cell& c) const {
    if (dim_ == 1) return line_.test(c[0]);
    Cell key = c;
    for (int i = dim_; i < kMaxCellDim; ++i) key[static_cast<std::size_t>(i)] = 0;
    return std::binary_search(cells_.begin(), cells_.end(), key);
  }

  std::vector<Cell> cells() const {
    if (dim_ != 1) return cells_;
    std::vector<Cell> out;
    out.reserve(line_.count());
    line_.for_each([&](std::int64_t x) { out.push_back({x, 0, 0}); });
    return out;
  }

  BigInt scale() const { return ipow(BigInt(base_), static_cast<unsigned long>(depth_)); }

  Rational cell_width() const { return Rational(BigInt(1), scale()); }

  // |cells| * base^(-depth * d), exact.
  Rational measure() const {
    Rational m(BigInt(static_cast<unsigned long>(size())), ipow(scale(), static_cast<unsigned long>(dim_)));
    m.canonicalize();
    return m;
  }

  CellSet with_mode(CellMode mode) const {
    CellSet s = *this;
    s.mode_ = mode;
    return s;
  }

  friend bool operator==(const CellSet& a, const CellSet& b) {
    return a.dim_ == b.dim_ && a.base_ == b.base_ && a.depth_ == b.depth_ && a.mode_ == b.mode_ &&
           (a.dim_ == 1 ? a.line_ == b.line_ : a.cells_ == b.cells_);
  }

 private:
  int dim_ = 1;
  int base_ = 2;
  int depth_ = 0;
  CellMode mode_ = CellMode::outer;
  BitLine line_;
  std::vector<Cell> cells_;
};

inline void require_same_grid(const CellSet& a, const CellSet& b) {
  if (a.dim() != b.dim() || a.base() != b.base() || a.depth() != b.depth())
    throw std::invalid_argument("cell sets on different grids");
}

inline CellSet from_intervals(const IntervalUnion& iv, int base, int depth, CellMode mode) {
  CellSet probe(1, base, depth, mode);
  if (iv.empty()) return probe;
  const BigInt scale = probe.scale();
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  ranges.reserve(iv.size());
  for (const auto& piece : iv.intervals()) {
    auto [first, last] = cover_range(piece.lo, piece.hi, scale, mode);
    if (first > last) continue;
    ranges.emplace_back(to_int64(first), to_int64(last));
  }
  if (ranges.empty()) return probe;
  std::int64_t lo = ranges.front().first, hi = ranges.front().second;
  for (const auto& [a, b] : ranges) {
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  BitLine line(lo, hi - lo + 1);
  for (const auto& [a, b] : ranges) line.set_range(a, b);
  return CellSet::from_line(base, depth, mode, std::move(line));
}

// Cover of the product box prod_i [lo_i, hi_i].
inline CellSet from_box(const std::vector<Rational>& lo, const std::vector<Rational>& hi, int base, int depth,
                        CellMode mode) {
  const int d = static_cast<int>(lo.size());
  if (d == 1) return from_intervals(IntervalUnion::single(lo[0], hi[0]), base, depth, mode);
  CellSet probe(d, base, depth, mode);
  const BigInt scale = probe.scale();
  std::vector<std::pair<std::int64_t, std::int64_t>> r;
  for (int i = 0; i < d; ++i) {
    auto [a, b] = cover_range(lo[static_cast<std::size_t>(i)], hi[static_cast<std::size_t>(i)], scale, mode);
    if (a > b) return probe;
    r.emplace_back(to_int64(a), to_int64(b));
  }
  std::vector<Cell> cells;
  Cell c{0, 0, 0};
  for (c[0] = r[0].first; c[0] <= r[0].second; ++c[0])
    for (c[1] = r[1].first; c[1] <= r[1].second; ++c[1]) {
      if (d == 2) {
        cells.push_back({c[0], c[1], 0});
        continue;
      }
      for (c[2] = r[2].first; c[2] <= r[2].second; ++c[2]) cells.push_back(c);
    }
  return CellSet::from_cells(d, base, depth, mode, std::move(cells));
}

// Sup-norm dilation by radius_cells.
inline CellSet dilate(const CellSet& e, std::int64_t radius_cells) {
  if (radius_cells < 0) throw std::invalid_argument("negative dilation radius");
  if (e.mode() != CellMode::outer) throw std::invalid_argument("dilate expects an outer cell set");
  if (e.empty() || radius_cells == 0) return e;
  if (e.dim() == 1) {
    const BitLine& src = e.line();
    const std::int64_t width = src.width() + 2 * radius_cells;
    BitLine out(src.lo() - radius_cells, width);
    out.words() = bits::run_dilate(src.words(), 2 * radius_cells + 1, out.words().size());
    out.mask_tail();
    return CellSet::from_line(e.base(), e.depth(), e.mode(), std::move(out));
  }
  std::vector<Cell> cur = e.cells();
  for (int axis = 0; axis < e.dim(); ++axis) {
    std::vector<Cell> next;
    next.reserve(cur.size() * static_cast<std::size_t>(2 * radius_cells + 1));
    for (const auto& c : cur)
      for (std::int64_t v = -radius_cells; v <= radius_cells; ++v) {
        Cell n = c;
        n[static_cast<std::size_t>(axis)] += v;
        next.push_back(n);
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = std::move(next);
  }
  return CellSet::from_cells(e.dim(), e.base(), e.depth(), e.mode(), std::move(cur));
}

inline CellSet measure_preserving_refine_1d(const CellSet& e, int new_depth, std::int64_t factor) {
  if (e.empty()) return CellSet(1, e.base(), new_depth, e.mode());
  const BitLine& src = e.line();
  BitLine out(src.lo() * factor, src.width() * factor);
  src.for_each([&](std::int64_t c) { out.set_range(c * factor, c * factor + factor - 1); });
  return CellSet::from_line(e.base(), new_depth, e.mode(), std::move(out));
}

// Splits every cell into its base^((new_depth - depth) * d) children.
inline CellSet refine(const CellSet& e, int new_depth) {
  if (new_depth < e.depth()) throw std::invalid_argument("refine: new depth below current depth");
  const std::int64_t factor =
      to_int64(ipow(BigInt(e.base()), static_cast<unsigned long>(new_depth - e.depth())));
  if (e.dim() == 1) return measure_preserving_refine_1d(e, new_depth, factor);
  std::vector<Cell> out;
  for (const auto& c : e.cells()) {
    Cell child{0, 0, 0};
    for (child[0] = c[0] * factor; child[0] < (c[0] + 1) * factor; ++child[0])
      for (child[1] = c[1] * factor; child[1] < (c[1] + 1) * factor; ++child[1]) {
        if (e.dim() == 2) {
          out.push_back({child[0], child[1], 0});
          continue;
        }
        for (child[2] = c[2] * factor; child[2] < (c[2] + 1) * factor; ++child[2]) out.push_back(child);
      }
  }
  return CellSet::from_cells(e.dim(), e.base(), new_depth, e.mode(), std::move(out));
}

inline Rational measure(const CellSet& e) { return e.measure(); }
inline Rational measure(const IntervalUnion& e) { return e.measure(); }

// --- CellSet text format: header "d base depth mode", then one cell per line ---

inline void write_cells(std::ostream& os, const CellSet& s) {
  os << s.dim() << ' ' << s.base() << ' ' << s.depth() << ' ' << to_string(s.mode()) << '\n';
  for (const auto& c : s.cells()) {
    for (int i = 0; i < s.dim(); ++i) os << (i ? " " : "") << c[static_cast<std::size_t>(i)];
    os << '\n';
  }
}

inline std::string to_text(const CellSet& s) {
  std::ostringstream os;
  write_cells(os, s);
  return os.str();
}

inline CellSet read_cells(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw ParseError("cell set: missing header");
  std::istringstream hs(header);
  int d = 0, base = 0, depth = 0;
  std::string mode;
  if (!(hs >> d >> base >> depth >> mode)) throw ParseError("cell set: header must be \"d base depth mode\"");
  if (d < 1 || d > kMaxCellDim || base < 2 || depth < 0) throw ParseError("cell set: header values out of range");
  std::vector<Cell> cells;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    Cell c{0, 0, 0};
    for (int i = 0; i < d; ++i)
      if (!(ls >> c[static_cast<std::size_t>(i)])) throw ParseError("cell set: short coordinate line");
    std::string extra;
    if (ls >> extra) throw ParseError("cell set: too many coordinates");
    cells.push_back(c);
  }
  return CellSet::from_cells(d, base, depth, parse_cell_mode(mode), std::move(cells));
}

inline CellSet cells_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_cells(is);
}

// --- exact finite unions of axis-aligned boxes (d >= 2 approximants) ---

struct Box {
  std::vector<Rational> lo;
  std::vector<Rational> hi;

  friend bool operator==(const Box& a, const Box& b) { return a.lo == b.lo && a.hi == b.hi; }
  friend bool operator<(const Box& a, const Box& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  }
};

class BoxUnion {
 public:
  BoxUnion() = default;
  BoxUnion(int dim, std::vector<Box> boxes) : dim_(dim), boxes_(std::move(boxes)) {
    std::sort(boxes_.begin(), boxes_.end());
    boxes_.erase(std::unique(boxes_.begin(), boxes_.end()), boxes_.end());
  }

  int dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  std::size_t size() const { return boxes_.size(); }
  bool empty() const { return boxes_.empty(); }

  bool contains_point(const std::vector<Rational>& x) const {
    return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) {
      for (int i = 0; i < dim_; ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (x[k] < b.lo[k] || x[k] > b.hi[k]) return false;
      }
      return true;
    });
  }

  friend bool operator==(const BoxUnion& a, const BoxUnion& b) { return a.dim_ == b.dim_ && a.boxes_ == b.boxes_; }

 private:
  int dim_ = 2;
  std::vector<Box> boxes_;
};

// Cell cover of a box union; inner mode keeps only cells inside a single box.
inline CellSet rasterize(const BoxUnion& u, int base, int depth, CellMode mode) {
  std::vector<Cell> cells;
  for (const auto& b : u.boxes()) {
    auto part = from_box(b.lo, b.hi, base, depth, mode).cells();
    cells.insert(cells.end(), part.begin(), part.end());
  }
  return CellSet::from_cells(u.dim(), base, depth, mode, std::move(cells));
}

}  // namespace fracsum
