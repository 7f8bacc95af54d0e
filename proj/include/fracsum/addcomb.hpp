#pragma once

// Sumset inequalities in finite abelian groups, checked on exact cardinalities
// after raising both sides to a common integer power.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fracsum/errors.hpp"
#include "fracsum/parallel.hpp"
#include "fracsum/rational.hpp"

namespace fracsum::addcomb {

inline constexpr std::uint64_t kEnumerationCap = 100'000'000;

using Element = std::vector<std::int64_t>;

// Subset of (Z_n)^rank, or of Z^rank when n == 0.
class GroupSubset {
 public:
  GroupSubset() = default;
  GroupSubset(std::int64_t n, int rank, std::vector<Element> elements) : n_(n), rank_(rank), elems_(std::move(elements)) {
    if (n < 0 || n == 1) throw std::invalid_argument("group modulus must be 0 or >= 2");
    if (rank < 1) throw std::invalid_argument("group rank must be >= 1");
    for (auto& e : elems_) {
      if (static_cast<int>(e.size()) != rank) throw std::invalid_argument("element has wrong rank");
      if (n > 0)
        for (auto& x : e) x = ((x % n) + n) % n;
    }
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  static GroupSubset cyclic(std::int64_t n, const std::vector<std::int64_t>& xs) {
    std::vector<Element> e;
    for (auto x : xs) e.push_back({x});
    return GroupSubset(n, 1, std::move(e));
  }
  static GroupSubset full(std::int64_t n) {
    std::vector<std::int64_t> xs(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = i;
    return cyclic(n, xs);
  }

  std::int64_t modulus() const { return n_; }
  int rank() const { return rank_; }
  const std::vector<Element>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  bool contains(const Element& e) const { return std::binary_search(elems_.begin(), elems_.end(), e); }

  // Values of a rank-1 subset.
  std::vector<std::int64_t> values() const {
    if (rank_ != 1) throw std::invalid_argument("values: rank must be 1");
    std::vector<std::int64_t> out;
    for (const auto& e : elems_) out.push_back(e[0]);
    return out;
  }

  friend bool operator==(const GroupSubset& a, const GroupSubset& b) {
    return a.n_ == b.n_ && a.rank_ == b.rank_ && a.elems_ == b.elems_;
  }

 private:
  std::int64_t n_ = 2;
  int rank_ = 1;
  std::vector<Element> elems_;
};

namespace detail {

inline void require_same_group(const GroupSubset& a, const GroupSubset& b) {
  if (a.modulus() != b.modulus() || a.rank() != b.rank())
    throw std::invalid_argument("subsets live in different groups");
}

inline Element add(const Element& a, const Element& b, std::int64_t n, int sign = 1) {
  Element out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t v = a[i] + sign * b[i];
    if (n > 0) v = ((v % n) + n) % n;
    out[i] = v;
  }
  return out;
}

// --- single-word cyclic masks for n <= 64 ---

using Mask = std::uint64_t;

inline Mask full_mask(std::int64_t n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

// {x + s mod n : x in m}
inline Mask rotate(Mask m, std::int64_t s, std::int64_t n) {
  s = ((s % n) + n) % n;
  if (s == 0) return m;
  return ((m << s) | (m >> (n - s))) & full_mask(n);
}

inline Mask to_mask(const GroupSubset& g) {
  Mask m = 0;
  for (const auto& e : g.elements()) m |= Mask{1} << e[0];
  return m;
}

inline GroupSubset from_mask(Mask m, std::int64_t n) {
  std::vector<std::int64_t> xs;
  for (std::int64_t i = 0; i < n; ++i)
    if ((m >> i) & 1U) xs.push_back(i);
  return GroupSubset::cyclic(n, xs);
}

inline Mask negate(Mask m, std::int64_t n) {
  Mask out = 0;
  for (std::int64_t i = 0; i < n; ++i)
    if ((m >> i) & 1U) out |= Mask{1} << ((n - i) % n);
  return out;
}

inline Mask sum(Mask a, Mask b, std::int64_t n) {
  Mask out = 0;
  for (Mask x = a; x; x &= x - 1) out |= rotate(b, std::countr_zero(x), n);
  return out;
}

inline bool small_cyclic(const GroupSubset& g) { return g.rank() == 1 && g.modulus() >= 2 && g.modulus() <= 64; }

// Number of k-tuples (i_1..i_k) with K ∩ (K+i_1) ∩ ... ∩ (K+i_k) nonempty.
// Tuples are enumerated in nondecreasing order and weighted by their number of
// distinct permutations.
inline std::uint64_t count_diff_tuples(Mask k_mask, int k, std::int64_t n) {
  std::vector<Mask> rot(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) rot[static_cast<std::size_t>(i)] = rotate(k_mask, i, n);
  static constexpr std::uint64_t fact[] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};
  std::uint64_t total = 0;
  std::vector<std::int64_t> idx(static_cast<std::size_t>(k));
  auto weight = [&] {
    std::uint64_t w = fact[k];
    std::size_t run = 1;
    for (std::size_t i = 1; i <= idx.size(); ++i) {
      if (i < idx.size() && idx[i] == idx[i - 1]) {
        ++run;
      } else {
        w /= fact[run];
        run = 1;
      }
    }
    return w;
  };
  auto dfs = [&](auto&& self, int level, std::int64_t start, Mask m) -> void {
    for (std::int64_t i = start; i < n; ++i) {
      const Mask next = m & rot[static_cast<std::size_t>(i)];
      if (!next) continue;
      idx[static_cast<std::size_t>(level)] = i;
      if (level + 1 == k)
        total += weight();
      else
        self(self, level + 1, i, next);
    }
  };
  dfs(dfs, 0, 0, k_mask);
  return total;
}

}  // namespace detail

inline GroupSubset sum_sets(const GroupSubset& k_set, const GroupSubset& s) {
  detail::require_same_group(k_set, s);
  if (detail::small_cyclic(k_set))
    return detail::from_mask(detail::sum(detail::to_mask(k_set), detail::to_mask(s), k_set.modulus()),
                             k_set.modulus());
  if (k_set.size() * s.size() > kEnumerationCap) throw ResourceCapError("sum_sets: too many pairs");
  std::vector<Element> out;
  for (const auto& a : k_set.elements())
    for (const auto& b : s.elements()) out.push_back(detail::add(a, b, k_set.modulus()));
  return GroupSubset(k_set.modulus(), k_set.rank(), std::move(out));
}

inline GroupSubset negated(const GroupSubset& g) {
  std::vector<Element> out;
  for (const auto& e : g.elements()) {
    Element x = e;
    for (auto& v : x) v = -v;
    out.push_back(std::move(x));
  }
  return GroupSubset(g.modulus(), g.rank(), std::move(out));
}

// K ± K ± ... ± K; signs[0] must be +1.
inline GroupSubset signed_sum(const GroupSubset& k_set, const std::vector<int>& signs) {
  if (signs.size() < 2) throw std::invalid_argument("signed_sum: need at least two signs");
  if (signs.front() != 1) throw std::invalid_argument("signed_sum: first sign must be +");
  const GroupSubset neg = negated(k_set);
  GroupSubset acc = k_set;
  for (std::size_t i = 1; i < signs.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw std::invalid_argument("signed_sum: signs must be +1 or -1");
    acc = sum_sets(acc, signs[i] == 1 ? k_set : neg);
  }
  return acc;
}

namespace detail {

inline std::uint64_t power_count(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > kEnumerationCap * 100 / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

}  // namespace detail

// {(a_0 - a_1, ..., a_0 - a_k) : a_j in A} as a subset of the k-fold product group.
inline GroupSubset diff_tuples(const GroupSubset& a, int k) {
  if (k < 1) throw std::invalid_argument("diff_tuples: k must be >= 1");
  if (a.rank() != 1 && k > 1 && a.modulus() != 0)
    throw std::invalid_argument("diff_tuples: rank-1 input required for cyclic groups");
  const std::uint64_t work = detail::power_count(a.size(), k + 1);
  if (work > kEnumerationCap)
    throw ResourceCapError("diff_tuples: |A|^(k+1) = " + (work == UINT64_MAX ? std::string("overflow") : std::to_string(work)) +
                           " exceeds cap " + std::to_string(kEnumerationCap));
  const std::int64_t n = a.modulus();
  const int r = a.rank();
  std::set<Element> out;
  const auto& el = a.elements();
  std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
  for (const auto& x0 : el) {
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      Element t;
      t.reserve(static_cast<std::size_t>(k * r));
      for (int l = 0; l < k; ++l) {
        const Element d = detail::add(x0, el[pick[static_cast<std::size_t>(l)]], n, -1);
        t.insert(t.end(), d.begin(), d.end());
      }
      out.insert(std::move(t));
      int pos = k - 1;
      while (pos >= 0 && ++pick[static_cast<std::size_t>(pos)] == el.size()) pick[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
    }
  }
  return GroupSubset(n, r * k, std::vector<Element>(out.begin(), out.end()));
}

// |D_k(K)| with the word-parallel path when possible.
inline std::uint64_t count_diff_tuples(const GroupSubset& k_set, int k) {
  if (k < 1) throw std::invalid_argument("count_diff_tuples: k must be >= 1");
  if (k_set.empty()) return 0;
  if (detail::small_cyclic(k_set) && k <= 8)
    return detail::count_diff_tuples(detail::to_mask(k_set), k, k_set.modulus());
  return diff_tuples(k_set, k).size();
}

struct Eq42Result {
  bool holds = false;
  bool counting_bound = false;  // |A|^{k+1} >= n^k
  std::optional<Element> witness;
};

// Do the difference tuples of A fill (Z_n)^k? On failure the witness is the
// lexicographically smallest missing tuple.
inline Eq42Result eq42_holds(std::int64_t n, const std::vector<std::int64_t>& a_digits, int k) {
  if (n < 2) throw std::invalid_argument("eq42: n must be >= 2");
  if (k < 1) throw std::invalid_argument("eq42: k must be >= 1");
  const GroupSubset a = GroupSubset::cyclic(n, a_digits);
  if (a.empty()) throw std::invalid_argument("eq42: A must be nonempty");
  Eq42Result res;
  const BigInt lhs = ipow(BigInt(static_cast<unsigned long>(a.size())), static_cast<unsigned long>(k + 1));
  const BigInt rhs = ipow(BigInt(static_cast<long>(n)), static_cast<unsigned long>(k));
  res.counting_bound = lhs >= rhs;
  if (detail::power_count(static_cast<std::uint64_t>(n), k) > kEnumerationCap)
    throw ResourceCapError("eq42: n^k exceeds enumeration cap");

  auto first_missing_in = [&](auto&& reachable) -> std::optional<Element> {
    Element t(static_cast<std::size_t>(k), 0);
    while (true) {
      if (!reachable(t)) return t;
      int pos = k - 1;
      while (pos >= 0 && ++t[static_cast<std::size_t>(pos)] == n) t[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) return std::nullopt;
    }
  };

  if (n <= 64) {
    const detail::Mask m = detail::to_mask(a);
    std::vector<detail::Mask> rot(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) rot[static_cast<std::size_t>(i)] = detail::rotate(m, i, n);
    res.witness = first_missing_in([&](const Element& t) {
      detail::Mask acc = m;
      for (auto i : t) acc &= rot[static_cast<std::size_t>(i)];
      return acc != 0;
    });
  } else {
    const GroupSubset d = diff_tuples(a, k);
    res.witness = first_missing_in([&](const Element& t) { return d.contains(t); });
  }
  res.holds = !res.witness.has_value();
  return res;
}

// --- inequality checks ---

struct InequalityReport {
  std::string statement;
  std::uint64_t lhs_count = 0;  // |D_k(K)|, |K ± ... ± K| or the conjecture's pair count
  std::uint64_t s_count = 0;
  std::uint64_t sum_count = 0;  // |K + S|
  BigInt lhs;                   // both sides raised to the common power
  BigInt rhs;
  bool holds = false;
  Rational ratio() const { return rhs == 0 ? Rational(0) : make_rational(lhs, rhs); }
};

// |D_k(K)|^{1/(k+1)} |S|^{1/(k+1)} <= |K+S|, compared as |D_k(K)| |S| <= |K+S|^{k+1}.
inline InequalityReport check_tuple_inequality(const GroupSubset& k_set, const GroupSubset& s, int k) {
  if (k_set.empty() || s.empty()) throw std::invalid_argument("check_tuple_inequality: sets must be nonempty");
  InequalityReport r;
  r.statement = "|D_k(K)| * |S| <= |K+S|^(k+1)";
  r.lhs_count = count_diff_tuples(k_set, k);
  r.s_count = s.size();
  r.sum_count = sum_sets(k_set, s).size();
  r.lhs = BigInt(static_cast<unsigned long>(r.lhs_count)) * BigInt(static_cast<unsigned long>(r.s_count));
  r.rhs = ipow(BigInt(static_cast<unsigned long>(r.sum_count)), static_cast<unsigned long>(k + 1));
  r.holds = r.lhs <= r.rhs;
  return r;
}

// |K ± ... ± K|^{1/k} |S|^{1-1/k} <= |K+S| with k = |signs|, compared as
// |K ± ... ± K| |S|^{k-1} <= |K+S|^k.
inline InequalityReport check_plunnecke(const GroupSubset& k_set, const GroupSubset& s, const std::vector<int>& signs) {
  if (k_set.empty() || s.empty()) throw std::invalid_argument("check_plunnecke: sets must be nonempty");
  const auto k = static_cast<unsigned long>(signs.size());
  InequalityReport r;
  r.statement = "|K+-...+-K| * |S|^(k-1) <= |K+S|^k";
  r.lhs_count = signed_sum(k_set, signs).size();
  r.s_count = s.size();
  r.sum_count = sum_sets(k_set, s).size();
  r.lhs = BigInt(static_cast<unsigned long>(r.lhs_count)) * ipow(BigInt(static_cast<unsigned long>(r.s_count)), k - 1);
  r.rhs = ipow(BigInt(static_cast<unsigned long>(r.sum_count)), k);
  r.holds = r.lhs <= r.rhs;
  return r;
}

// |{(x1+x2+x3, x1+x4+x5) : x_i in K}|.
inline std::uint64_t count_conj5_pairs(const GroupSubset& k_set) {
  if (k_set.rank() != 1) throw std::invalid_argument("conjecture pairs: rank-1 set required");
  if (k_set.empty()) return 0;
  const std::int64_t n = k_set.modulus();
  if (detail::small_cyclic(k_set)) {
    // First coordinate u, second coordinate in the union of x1 + 2K over x1 with u - x1 in 2K.
    const detail::Mask m = detail::to_mask(k_set);
    const detail::Mask two = detail::sum(m, m, n);
    std::uint64_t total = 0;
    for (std::int64_t u = 0; u < n; ++u) {
      detail::Mask acc = 0;
      for (detail::Mask x = m; x; x &= x - 1) {
        const std::int64_t x1 = std::countr_zero(x);
        if ((two >> (((u - x1) % n + n) % n)) & 1U) acc |= detail::rotate(two, x1, n);
      }
      total += static_cast<std::uint64_t>(std::popcount(acc));
    }
    return total;
  }
  const GroupSubset two = sum_sets(k_set, k_set);
  if (k_set.size() * two.size() * two.size() > kEnumerationCap) throw ResourceCapError("conjecture pairs: cap");
  std::set<std::pair<std::int64_t, std::int64_t>> pairs;
  auto red = [n](std::int64_t v) { return n > 0 ? ((v % n) + n) % n : v; };
  for (const auto& x1 : k_set.elements())
    for (const auto& a : two.elements())
      for (const auto& b : two.elements()) pairs.insert({red(x1[0] + a[0]), red(x1[0] + b[0])});
  return pairs.size();
}

// Conjectured |Q|^{1/5} |S|^{3/5} <= |K+S|, compared as |Q| |S|^3 <= |K+S|^5.
inline InequalityReport check_conjecture5(const GroupSubset& k_set, const GroupSubset& s) {
  if (k_set.empty() || s.empty()) throw std::invalid_argument("conjecture check: sets must be nonempty");
  InequalityReport r;
  r.statement = "|Q| * |S|^3 <= |K+S|^5 (conjectural)";
  r.lhs_count = count_conj5_pairs(k_set);
  r.s_count = s.size();
  r.sum_count = sum_sets(k_set, s).size();
  r.lhs = BigInt(static_cast<unsigned long>(r.lhs_count)) * ipow(BigInt(static_cast<unsigned long>(r.s_count)), 3);
  r.rhs = ipow(BigInt(static_cast<unsigned long>(r.sum_count)), 5);
  r.holds = r.lhs <= r.rhs;
  return r;
}

// --- instances ---

struct Instance {
  std::int64_t n = 2;
  std::vector<std::int64_t> k_set;
  std::vector<std::int64_t> s_set;
  int k = 1;
  std::vector<int> signs;  // empty unless the instance targets a signed sum

  GroupSubset K() const { return GroupSubset::cyclic(n, k_set); }
  GroupSubset S() const { return GroupSubset::cyclic(n, s_set); }
  friend bool operator==(const Instance&, const Instance&) = default;
};

// "n;K=a,b,..;S=..;k=..[;signs=+-..]"
inline std::string serialize(const Instance& inst) {
  auto join = [](const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  std::string out = std::to_string(inst.n) + ";K=" + join(inst.k_set) + ";S=" + join(inst.s_set) +
                    ";k=" + std::to_string(inst.k);
  if (!inst.signs.empty()) {
    out += ";signs=";
    for (int s : inst.signs) out += s > 0 ? '+' : '-';
  }
  return out;
}

inline std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw ParseError("not an integer: '" + item + "'");
    }
    if (used != item.size()) throw ParseError("not an integer: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

inline Instance parse_instance(const std::string& text) {
  std::stringstream ss(text);
  std::string field;
  Instance inst;
  bool first = true;
  while (std::getline(ss, field, ';')) {
    if (first) {
      auto v = parse_int_list(field);
      if (v.size() != 1) throw ParseError("instance: bad modulus");
      inst.n = v[0];
      first = false;
      continue;
    }
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("instance: field without '=': " + field);
    const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
    if (key == "K") {
      inst.k_set = parse_int_list(val);
    } else if (key == "S") {
      inst.s_set = parse_int_list(val);
    } else if (key == "k") {
      auto v = parse_int_list(val);
      if (v.size() != 1) throw ParseError("instance: bad k");
      inst.k = static_cast<int>(v[0]);
    } else if (key == "signs") {
      for (char c : val) {
        if (c != '+' && c != '-') throw ParseError("instance: signs must be + or -");
        inst.signs.push_back(c == '+' ? 1 : -1);
      }
    } else {
      throw ParseError("instance: unknown field " + key);
    }
  }
  if (first) throw ParseError("instance: empty text");
  return inst;
}

// --- deterministic randomness ---

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Engine seeded per trial so results do not depend on how trials are split.
inline std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(trial)));
}

// Uniform integer in [0, bound), identical on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = g();
    if (r >= threshold) return r % bound;
  }
}

inline std::vector<std::int64_t> random_subset(std::mt19937_64& g, std::int64_t n) {
  std::vector<std::int64_t> pool(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  const auto size = 1 + uniform_below(g, static_cast<std::uint64_t>(n));
  for (std::uint64_t i = 0; i < size; ++i) {
    const auto j = i + uniform_below(g, static_cast<std::uint64_t>(n) - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline Instance random_instance(std::uint64_t seed, std::uint64_t trial, std::int64_t nmin, std::int64_t nmax,
                                int kmin, int kmax, bool with_signs) {
  auto g = trial_engine(seed, trial);
  Instance inst;
  inst.n = nmin + static_cast<std::int64_t>(uniform_below(g, static_cast<std::uint64_t>(nmax - nmin + 1)));
  inst.k = kmin + static_cast<int>(uniform_below(g, static_cast<std::uint64_t>(kmax - kmin + 1)));
  inst.k_set = random_subset(g, inst.n);
  inst.s_set = random_subset(g, inst.n);
  if (with_signs) {
    inst.signs.push_back(1);
    for (int i = 1; i < inst.k; ++i) inst.signs.push_back(uniform_below(g, 2) ? 1 : -1);
  }
  return inst;
}

// --- sweeps ---

struct SweepReport {
  std::uint64_t instances = 0;
  std::vector<Instance> violations;
};

// Random instances for the tuple inequality (k in [1,kmax]) or the signed-sum
// inequality (k in [2,kmax]).
inline SweepReport sweep_random(bool plunnecke, std::uint64_t trials, std::int64_t nmax, int kmax, std::uint64_t seed,
                                unsigned workers = 1) {
  if (nmax < 2 || nmax > 64) throw std::invalid_argument("sweep: nmax must lie in [2, 64]");
  std::vector<char> bad(trials, 0);
  std::vector<Instance> insts(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    Instance inst = random_instance(seed, t, 2, nmax, plunnecke ? 2 : 1, kmax, plunnecke);
    const bool ok = plunnecke ? check_plunnecke(inst.K(), inst.S(), inst.signs).holds
                              : check_tuple_inequality(inst.K(), inst.S(), inst.k).holds;
    if (!ok) {
      bad[t] = 1;
      insts[t] = std::move(inst);
    }
  });
  SweepReport rep;
  rep.instances = trials;
  for (std::uint64_t t = 0; t < trials; ++t)
    if (bad[t]) rep.violations.push_back(insts[t]);
  return rep;
}

// Every pair of nonempty K, S in Z_n: the tuple inequality at k and every signed
// sum with k terms.
inline SweepReport sweep_exhaustive(std::int64_t n, int k) {
  if (n < 2 || n > 16) throw std::invalid_argument("exhaustive sweep: n must lie in [2, 16]");
  if (k < 2) throw std::invalid_argument("exhaustive sweep: k must be >= 2");
  const detail::Mask all = detail::full_mask(n);
  std::vector<std::vector<int>> sign_choices;
  for (int mask = 0; mask < (1 << (k - 1)); ++mask) {
    std::vector<int> s{1};
    for (int i = 0; i < k - 1; ++i) s.push_back((mask >> i) & 1 ? -1 : 1);
    sign_choices.push_back(s);
  }
  SweepReport rep;
  for (detail::Mask km = 1; km <= all; ++km) {
    const auto kg = detail::from_mask(km, n);
    const auto dk = detail::count_diff_tuples(km, k, n);
    std::vector<std::uint64_t> signed_counts;
    for (const auto& s : sign_choices) signed_counts.push_back(signed_sum(kg, s).size());
    for (detail::Mask sm = 1; sm <= all; ++sm) {
      const auto s = static_cast<unsigned long>(std::popcount(sm));
      const auto t = static_cast<unsigned long>(std::popcount(detail::sum(km, sm, n)));
      auto record = [&](std::vector<int> signs) {
        Instance inst{n, kg.values(), detail::from_mask(sm, n).values(), k, std::move(signs)};
        rep.violations.push_back(std::move(inst));
      };
      ++rep.instances;
      if (BigInt(static_cast<unsigned long>(dk)) * s > ipow(BigInt(t), static_cast<unsigned long>(k + 1))) record({});
      for (std::size_t i = 0; i < sign_choices.size(); ++i) {
        ++rep.instances;
        if (BigInt(static_cast<unsigned long>(signed_counts[i])) * ipow(BigInt(s), static_cast<unsigned long>(k - 1)) >
            ipow(BigInt(t), static_cast<unsigned long>(k)))
          record(sign_choices[i]);
      }
    }
  }
  return rep;
}

struct Conj5Record {
  std::uint64_t trial = 0;
  Instance instance;
  InequalityReport check;
};

struct Conj5Report {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::int64_t nmin = 2;
  std::int64_t nmax = 2;
  std::optional<Conj5Record> max;  // largest lhs/rhs; earliest trial on ties
  std::vector<Conj5Record> violations;
};

// Report-only random search for counterexamples to the five-variable conjecture.
inline Conj5Report search_conjecture5(std::int64_t nmin, std::int64_t nmax, std::uint64_t trials, std::uint64_t seed,
                                      unsigned workers = 1) {
  if (nmin < 2 || nmax < nmin || nmax > 64) throw std::invalid_argument("conj5 search: need 2 <= nmin <= nmax <= 64");
  if (trials < 1) throw std::invalid_argument("conj5 search: trials must be >= 1");
  std::vector<Conj5Record> recs(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    Instance inst = random_instance(seed, t, nmin, nmax, 2, 2, false);
    recs[t] = {t, inst, check_conjecture5(inst.K(), inst.S())};
  });
  Conj5Report rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.nmin = nmin;
  rep.nmax = nmax;
  for (auto& r : recs) {
    if (!rep.max || r.check.ratio() > rep.max->check.ratio()) rep.max = r;
    if (!r.check.holds) rep.violations.push_back(r);
  }
  return rep;
}

}  // namespace fracsum::addcomb
