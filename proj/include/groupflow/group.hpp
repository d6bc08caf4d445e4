#pragma once

// Finite Abelian group arithmetic on invariant-factor representations:
// parsing/formatting of group specs, enumeration of isomorphism classes,
// dense Cayley-table arithmetic, sumsets and simple sums, and the
// inverse-closed basis search used by the flow solvers.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace groupflow {

// A finite Abelian group in invariant-factor form: factors n1 | n2 | ... | nr,
// each >= 2. The trivial group has an empty factor list. Two groups are
// isomorphic iff their factor lists are equal.
struct FiniteAbelianGroup {
  std::vector<long long> invariant_factors;

  long long order() const {
    long long o = 1;
    for (long long f : invariant_factors) o *= f;
    return o;
  }
  int rank() const { return static_cast<int>(invariant_factors.size()); }

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
  friend auto operator<=>(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
};

// An element as a residue vector, residues[i] in [0, n_i).
using GroupElement = std::vector<long long>;

namespace detail {

inline std::vector<std::pair<long long, int>> factorize(long long n) {
  std::vector<std::pair<long long, int>> out;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// All partitions of e as weakly decreasing vectors, lexicographically
// descending (so [e] first, [1,1,...,1] last).
inline void partitions_of(int e, int max_part, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out) {
  if (e == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(e, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_of(e - part, part, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> partitions_of(int e) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_of(e, e, cur, out);
  return out;
}

}  // namespace detail

// Canonicalizes a direct product of cyclic groups Z_{m1} x ... x Z_{ms}
// into invariant-factor form. Factors of 1 are dropped.
inline FiniteAbelianGroup canonical_group_from_cyclic(const std::vector<long long>& moduli) {
  // Collect prime-power exponents per prime, sorted descending.
  std::map<long long, std::vector<int>> exps;
  for (long long m : moduli) {
    if (m < 1) throw std::invalid_argument("cyclic modulus must be >= 1");
    for (auto [p, e] : detail::factorize(m)) exps[p].push_back(e);
  }
  std::size_t rows = 0;
  for (auto& [p, es] : exps) {
    std::sort(es.rbegin(), es.rend());
    rows = std::max(rows, es.size());
  }
  // Row i collects the i-th largest exponent of every prime; row products
  // form the divisibility chain from the top.
  std::vector<long long> factors;
  for (std::size_t i = 0; i < rows; ++i) {
    long long f = 1;
    for (auto& [p, es] : exps) {
      if (i < es.size()) {
        long long pe = 1;
        for (int j = 0; j < es[i]; ++j) pe *= p;
        f *= pe;
      }
    }
    if (f > 1) factors.push_back(f);
  }
  std::reverse(factors.begin(), factors.end());
  return FiniteAbelianGroup{std::move(factors)};
}

// Parses specs like "Z5", "Z4xZ2", "Z2^3", "Z2^2xZ9". The result is always
// in canonical invariant-factor form, so isomorphic specs compare equal.
inline FiniteAbelianGroup parse_group_spec(const std::string& spec) {
  if (spec == "Z1") return FiniteAbelianGroup{};  // trivial group, standalone only
  std::vector<long long> moduli;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad group spec \"" + spec + "\": " + why);
  };
  if (spec.empty()) fail("empty");
  while (i < spec.size()) {
    if (spec[i] != 'Z') fail("expected 'Z'");
    ++i;
    std::size_t start = i;
    while (i < spec.size() && std::isdigit(static_cast<unsigned char>(spec[i]))) ++i;
    if (i == start) fail("expected digits after 'Z'");
    long long n = std::stoll(spec.substr(start, i - start));
    long long reps = 1;
    if (i < spec.size() && spec[i] == '^') {
      ++i;
      std::size_t estart = i;
      while (i < spec.size() && std::isdigit(static_cast<unsigned char>(spec[i]))) ++i;
      if (i == estart) fail("expected digits after '^'");
      reps = std::stoll(spec.substr(estart, i - estart));
      if (reps < 1) fail("exponent must be >= 1");
    }
    if (n < 2) fail("factor must be >= 2");
    for (long long r = 0; r < reps; ++r) moduli.push_back(n);
    if (i < spec.size()) {
      if (spec[i] != 'x') fail("expected 'x' between atoms");
      ++i;
      if (i == spec.size()) fail("trailing 'x'");
    }
  }
  return canonical_group_from_cyclic(moduli);
}

// Formats in invariant-factor order; the trivial group prints as "Z1",
// which only parses standalone.
inline std::string format_group_spec(const FiniteAbelianGroup& g) {
  if (g.invariant_factors.empty()) return "Z1";
  std::string out;
  for (std::size_t i = 0; i < g.invariant_factors.size(); ++i) {
    if (i) out += 'x';
    out += 'Z';
    out += std::to_string(g.invariant_factors[i]);
  }
  return out;
}

// One representative per isomorphism class of Abelian groups of order n,
// sorted by invariant-factor list.
inline std::vector<FiniteAbelianGroup> enumerate_groups_of_order(long long n) {
  if (n <= 0) throw std::invalid_argument("group order must be positive");
  if (n == 1) return {FiniteAbelianGroup{}};
  auto primes = detail::factorize(n);
  std::vector<std::vector<std::vector<int>>> per_prime;
  for (auto [p, e] : primes) per_prime.push_back(detail::partitions_of(e));

  std::vector<FiniteAbelianGroup> out;
  std::vector<std::size_t> pick(per_prime.size(), 0);
  while (true) {
    std::vector<long long> moduli;
    for (std::size_t i = 0; i < per_prime.size(); ++i) {
      long long p = primes[i].first;
      for (int e : per_prime[i][pick[i]]) {
        long long pe = 1;
        for (int j = 0; j < e; ++j) pe *= p;
        moduli.push_back(pe);
      }
    }
    out.push_back(canonical_group_from_cyclic(moduli));
    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < per_prime[i].size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Dense element arithmetic.
//
// Elements are indexed 0..order-1 in lexicographic residue order (index 0 is
// the zero element). A Cayley table is precomputed for small orders; larger
// groups fall back to mixed-radix arithmetic per call.
// ---------------------------------------------------------------------------

class GroupTable {
 public:
  static constexpr long long kMaxOrder = 1 << 20;
  static constexpr long long kTableOrderCap = 2048;

  explicit GroupTable(FiniteAbelianGroup g) : group_(std::move(g)) {
    long long o = group_.order();
    if (o > kMaxOrder) throw std::invalid_argument("group order too large for dense arithmetic");
    n_ = static_cast<int>(o);
    strides_.resize(group_.rank());
    long long s = 1;
    for (int i = group_.rank() - 1; i >= 0; --i) {
      strides_[i] = s;
      s *= group_.invariant_factors[i];
    }
    neg_.resize(n_);
    for (int a = 0; a < n_; ++a) neg_[a] = compute_neg(a);
    if (n_ <= kTableOrderCap) {
      add_.resize(static_cast<std::size_t>(n_) * n_);
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
          add_[static_cast<std::size_t>(a) * n_ + b] = compute_add(a, b);
    }
  }

  const FiniteAbelianGroup& group() const { return group_; }
  int order() const { return n_; }
  static constexpr int zero() { return 0; }

  int add(int a, int b) const {
    if (!add_.empty()) return add_[static_cast<std::size_t>(a) * n_ + b];
    return compute_add(a, b);
  }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg_[b]); }

  GroupElement element(int idx) const {
    GroupElement e(group_.rank());
    for (int i = 0; i < group_.rank(); ++i) {
      e[i] = (idx / strides_[i]) % group_.invariant_factors[i];
    }
    return e;
  }

  // Throws if the residue vector does not belong to this group.
  int index(const GroupElement& e) const {
    if (static_cast<int>(e.size()) != group_.rank())
      throw std::invalid_argument("element rank does not match group");
    long long idx = 0;
    for (int i = 0; i < group_.rank(); ++i) {
      if (e[i] < 0 || e[i] >= group_.invariant_factors[i])
        throw std::invalid_argument("element residue out of range");
      idx += e[i] * strides_[i];
    }
    return static_cast<int>(idx);
  }

  int order_of(int a) const {
    int k = 1, x = a;
    while (x != 0) { x = add(x, a); ++k; }
    return k;
  }

 private:
  int compute_add(int a, int b) const {
    long long idx = 0;
    for (int i = 0; i < group_.rank(); ++i) {
      long long f = group_.invariant_factors[i];
      long long ra = (a / strides_[i]) % f;
      long long rb = (b / strides_[i]) % f;
      idx += ((ra + rb) % f) * strides_[i];
    }
    return static_cast<int>(idx);
  }
  int compute_neg(int a) const {
    long long idx = 0;
    for (int i = 0; i < group_.rank(); ++i) {
      long long f = group_.invariant_factors[i];
      long long ra = (a / strides_[i]) % f;
      idx += ((f - ra) % f) * strides_[i];
    }
    return static_cast<int>(idx);
  }

  FiniteAbelianGroup group_;
  int n_ = 1;
  std::vector<long long> strides_;
  std::vector<int> neg_;
  std::vector<int> add_;
};

// Bitset over element indices of one group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int order) : order_(order), words_((order + 63) / 64, 0) {}

  int order() const { return order_; }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : words_) if (w) return false;
    return true;
  }
  ElementSet& operator|=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  bool intersects(const ElementSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < order_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }
  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  int order_ = 0;
  std::vector<std::uint64_t> words_;
};

inline ElementSet make_element_set(const GroupTable& t, const std::vector<int>& idxs) {
  ElementSet s(t.order());
  for (int i : idxs) s.set(i);
  return s;
}

// {s + t : s in S, t in T}.
inline ElementSet sumset(const GroupTable& t, const ElementSet& s, const ElementSet& u) {
  ElementSet out(t.order());
  for (int a = 0; a < t.order(); ++a) {
    if (!s.test(a)) continue;
    for (int b = 0; b < t.order(); ++b)
      if (u.test(b)) out.set(t.add(a, b));
  }
  return out;
}

// Element-vector front end matching the serialized form.
inline std::vector<GroupElement> sumset(const std::vector<GroupElement>& s,
                                        const std::vector<GroupElement>& u,
                                        const FiniteAbelianGroup& g) {
  GroupTable t(g);
  ElementSet sa(t.order()), ub(t.order());
  for (const auto& e : s) sa.set(t.index(e));
  for (const auto& e : u) ub.set(t.index(e));
  auto r = sumset(t, sa, ub);
  std::vector<GroupElement> out;
  for (int i : r.members()) out.push_back(t.element(i));
  return out;
}

// The simple sum Pi' of Pi: all combinations sum alpha_i a_i with
// alpha_i in {0, +1, -1}. Always contains 0.
inline ElementSet simple_sum_closure(const GroupTable& t, const std::vector<int>& pi) {
  ElementSet s(t.order());
  s.set(t.zero());
  for (int a : pi) {
    ElementSet next = s;
    for (int x = 0; x < t.order(); ++x) {
      if (!s.test(x)) continue;
      next.set(t.add(x, a));
      next.set(t.add(x, t.neg(a)));
    }
    s = next;
  }
  return s;
}

inline std::vector<GroupElement> simple_sum_closure(const std::vector<GroupElement>& pi,
                                                    const FiniteAbelianGroup& g) {
  GroupTable t(g);
  std::vector<int> idxs;
  for (const auto& e : pi) idxs.push_back(t.index(e));
  auto s = simple_sum_closure(t, idxs);
  std::vector<GroupElement> out;
  for (int i : s.members()) out.push_back(t.element(i));
  return out;
}

// An inverse-closed subset Pi of size k together with its simple sum Pi'.
// bound_met reports whether |Pi'| <= k^2; the search returns the true
// minimum it found either way, because the k^2 bound is not attainable in
// every group (Z7 with k=2 bottoms out at 5).
struct SimpleSumBasis {
  std::vector<GroupElement> pi;
  std::vector<GroupElement> pi_prime;
  int parameter_k = 0;
  int pi_prime_size = 0;
  bool bound_met = false;
  bool exhaustive = false;  // exact minimum vs. constructive recipe
};

struct BasisOptions {
  // Exhaustive search caps; beyond them the constructive recipe is used.
  int exhaustive_order_cap = 256;
  int exhaustive_k_cap = 6;
  // Tie-break toward bases avoiding 0 (same minimal |Pi'|).
  bool prefer_zero_free = false;
};

namespace detail {

// Inverse orbits {x, -x} listed canonically: self-inverse singletons and
// two-element pairs, each keyed by its least member.
struct InverseOrbits {
  std::vector<int> self_inverse;          // x == -x, ascending
  std::vector<std::pair<int, int>> pairs;  // (x, -x) with x < -x, ascending
};

inline InverseOrbits inverse_orbits(const GroupTable& t) {
  InverseOrbits o;
  for (int x = 0; x < t.order(); ++x) {
    int nx = t.neg(x);
    if (nx == x) o.self_inverse.push_back(x);
    else if (x < nx) o.pairs.emplace_back(x, nx);
  }
  return o;
}

struct BasisSearchState {
  const GroupTable& t;
  const InverseOrbits& orbits;
  int k;
  bool prefer_zero_free;
  std::vector<int> current;
  std::vector<int> best;
  int best_size = -1;
  bool best_zero_free = false;

  void consider() {
    auto closure = simple_sum_closure(t, current);
    int size = closure.count();
    bool zero_free = std::find(current.begin(), current.end(), 0) == current.end();
    bool better = best_size < 0 || size < best_size ||
                  (size == best_size && prefer_zero_free && zero_free && !best_zero_free);
    if (better) {
      best = current;
      std::sort(best.begin(), best.end());
      best_size = size;
      best_zero_free = zero_free;
    }
  }

  // Orbit-by-orbit inclusion, self-inverse orbits first, then pairs.
  void search(std::size_t si, std::size_t pi_idx, int need) {
    if (need == 0) {
      consider();
      return;
    }
    int avail = static_cast<int>(orbits.self_inverse.size() - si) +
                2 * static_cast<int>(orbits.pairs.size() - pi_idx);
    if (avail < need) return;
    if (si < orbits.self_inverse.size()) {
      current.push_back(orbits.self_inverse[si]);
      search(si + 1, pi_idx, need - 1);
      current.pop_back();
      search(si + 1, pi_idx, need);
    } else if (pi_idx < orbits.pairs.size()) {
      if (need >= 2) {
        current.push_back(orbits.pairs[pi_idx].first);
        current.push_back(orbits.pairs[pi_idx].second);
        search(si, pi_idx + 1, need - 2);
        current.pop_back();
        current.pop_back();
      }
      search(si, pi_idx + 1, need);
    }
  }
};

// Deterministic inverse-closed k-subset of the given candidate pool
// (which must itself be inverse-closed).
inline std::vector<int> greedy_inverse_closed_subset(const GroupTable& t,
                                                     const std::vector<int>& pool, int k) {
  std::vector<int> selfs, pair_lo;
  std::set<int> in_pool(pool.begin(), pool.end());
  for (int x : pool) {
    int nx = t.neg(x);
    if (nx == x) selfs.push_back(x);
    else if (x < nx && in_pool.count(nx)) pair_lo.push_back(x);
  }
  int p = std::min(static_cast<int>(pair_lo.size()), k / 2);
  int s = k - 2 * p;
  if (s > static_cast<int>(selfs.size())) return {};  // pool too small
  std::vector<int> out;
  for (int i = 0; i < s; ++i) out.push_back(selfs[i]);
  for (int i = 0; i < p; ++i) {
    out.push_back(pair_lo[i]);
    out.push_back(t.neg(pair_lo[i]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Subgroup generated by a set of elements, as a sorted index list.
inline std::vector<int> generated_subgroup(const GroupTable& t, std::vector<int> gens) {
  ElementSet seen(t.order());
  seen.set(0);
  std::vector<int> frontier = {0};
  for (int g : gens)
    if (!seen.test(g)) { seen.set(g); frontier.push_back(g); }
  bool grew = true;
  while (grew) {
    grew = false;
    auto members = seen.members();
    for (int a : members)
      for (int g : gens) {
        int s = t.add(a, g);
        if (!seen.test(s)) { seen.set(s); grew = true; }
      }
  }
  return seen.members();
}

}  // namespace detail

// Chooses an inverse-closed Pi with |Pi| = k minimizing |Pi'|. Small groups
// get an exhaustive scan over inverse-closed k-subsets; beyond the caps the
// constructive recipe is used (multiples of a high-order element, or the
// subgroup extension when all element orders are < k).
inline SimpleSumBasis choose_simple_sum_basis(const GroupTable& t, int k,
                                              const BasisOptions& opts = {}) {
  if (k < 1) throw std::invalid_argument("basis size k must be >= 1");
  if (t.order() <= k) throw std::invalid_argument("need |G| > k");

  auto orbits = detail::inverse_orbits(t);
  std::vector<int> pi;
  bool exhaustive = false;

  if (t.order() <= opts.exhaustive_order_cap && k <= opts.exhaustive_k_cap) {
    detail::BasisSearchState st{t, orbits, k, opts.prefer_zero_free, {}, {}, -1, false};
    st.search(0, 0, k);
    if (st.best_size < 0) throw std::runtime_error("no inverse-closed subset of requested size");
    pi = st.best;
    exhaustive = true;
  } else {
    // Constructive recipe: prefer multiples of a high-order element.
    int best_a = -1, best_ord = 0;
    for (int a = 1; a < t.order(); ++a) {
      int o = t.order_of(a);
      if (o > best_ord) { best_ord = o; best_a = a; }
      if (best_ord >= k) break;  // first element of order >= k, canonical order
    }
    if (best_ord >= k) {
      std::set<int> chosen;
      if (k % 2 == 1) chosen.insert(0);
      int x = 0;
      for (int j = 1; static_cast<int>(chosen.size()) < k && j <= k; ++j) {
        x = t.add(x, best_a);
        chosen.insert(x);
        chosen.insert(t.neg(x));
      }
      if (static_cast<int>(chosen.size()) < k) chosen.insert(0);
      pi.assign(chosen.begin(), chosen.end());
      if (static_cast<int>(pi.size()) > k) {
        // Drop the largest multiples (keeping inverse closure) down to k.
        while (static_cast<int>(pi.size()) > k) {
          int hi = pi.back();
          pi.pop_back();
          auto it = std::find(pi.begin(), pi.end(), t.neg(hi));
          if (it != pi.end() && static_cast<int>(pi.size()) > k) pi.erase(it);
        }
      }
    } else {
      // All element orders < k: grow the largest subgroup of order < k,
      // then extend by one outside element and pick any k-subset.
      std::vector<int> best_sub = {0};
      for (int a = 1; a < t.order(); ++a) {
        auto sub = detail::generated_subgroup(t, {a});
        if (static_cast<int>(sub.size()) < k && sub.size() > best_sub.size()) best_sub = sub;
      }
      // Joins of cyclic subgroups, still capped below k.
      bool grew = true;
      while (grew) {
        grew = false;
        for (int a = 1; a < t.order(); ++a) {
          if (std::binary_search(best_sub.begin(), best_sub.end(), a)) continue;
          auto gens = best_sub;
          gens.push_back(a);
          auto sub = detail::generated_subgroup(t, gens);
          if (static_cast<int>(sub.size()) < k && sub.size() > best_sub.size()) {
            best_sub = sub;
            grew = true;
            break;
          }
        }
      }
      int outside = -1;
      for (int a = 0; a < t.order(); ++a)
        if (!std::binary_search(best_sub.begin(), best_sub.end(), a)) { outside = a; break; }
      auto gens = best_sub;
      gens.push_back(outside);
      auto pool = detail::generated_subgroup(t, gens);
      while (static_cast<int>(pool.size()) < k) {
        // Guard: extend further if the generated subgroup is still short.
        int extra = -1;
        for (int a = 0; a < t.order(); ++a)
          if (!std::binary_search(pool.begin(), pool.end(), a)) { extra = a; break; }
        if (extra < 0) break;
        pool.push_back(extra);
        std::sort(pool.begin(), pool.end());
        pool = detail::generated_subgroup(t, pool);
      }
      pi = detail::greedy_inverse_closed_subset(t, pool, k);
      if (pi.empty()) throw std::runtime_error("basis construction failed to fill k slots");
    }
  }

  auto closure = simple_sum_closure(t, pi);
  SimpleSumBasis basis;
  basis.parameter_k = k;
  basis.pi_prime_size = closure.count();
  basis.bound_met = basis.pi_prime_size <= k * k;
  basis.exhaustive = exhaustive;
  for (int i : pi) basis.pi.push_back(t.element(i));
  for (int i : closure.members()) basis.pi_prime.push_back(t.element(i));
  return basis;
}

inline SimpleSumBasis choose_simple_sum_basis(const FiniteAbelianGroup& g, int k,
                                              const BasisOptions& opts = {}) {
  GroupTable t(g);
  return choose_simple_sum_basis(t, k, opts);
}

}  // namespace groupflow
