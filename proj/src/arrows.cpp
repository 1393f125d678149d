#include "esnkit/arrows.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include "esnkit/esn.hpp"

namespace esnkit {

Checked<EsnPair> make_esn_pair(std::string name, RestrictionStructure r) {
  auto c = c_of(r);
  if (!c) {
    return c.failure();
  }
  return EsnPair{std::move(name), std::move(r), std::move(c).value()};
}

std::optional<bool> SemigroupFlags::vee_i() const {
  if (!inverse_preserving) {
    return std::nullopt;
  }
  return vee1;
}

std::optional<bool> SemigroupFlags::wedge_i() const {
  if (!inverse_preserving) {
    return std::nullopt;
  }
  return wedge1 && *inverse_preserving;
}

std::optional<bool> SemigroupFlags::ordered_wedge_i() const {
  auto const w = wedge_i();
  if (!w) {
    return std::nullopt;
  }
  return *w && order_preserving;
}

std::optional<bool> FunctorFlags::ordered_groupoid_premorphism() const {
  if (!igp) {
    return std::nullopt;
  }
  return icp1 && *igp && icp3;
}

void check_map_shape(std::size_t source_size, std::size_t target_size,
                     std::span<Index const> values) {
  if (values.size() != source_size) {
    throw Error("map has " + std::to_string(values.size()) +
                " values but the source has " + std::to_string(source_size) +
                " elements");
  }
  for (Index v : values) {
    if (v >= target_size) {
      throw Error("map value " + std::to_string(v) + " out of range");
    }
  }
}

SemigroupFlags classify_semigroup_map(RestrictionStructure const& source,
                                      RestrictionStructure const& target,
                                      std::span<Index const> v) {
  auto const n = source.size();
  auto const& s = source;
  auto const& t = target;
  SemigroupFlags f;

  f.vee1 = true;
  for (Index a = 0; a < n && f.vee1; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (!t.leq(v[s.mul(a, b)], t.mul(v[a], v[b]))) {
        f.vee1 = false;
        break;
      }
    }
  }
  f.vee2 = true;
  for (Index a = 0; a < n; ++a) {
    if (!t.leq(v[s.plus(a)], t.plus(v[a])) ||
        !t.leq(v[s.star(a)], t.star(v[a]))) {
      f.vee2 = false;
      break;
    }
  }
  f.wedge1 = true;
  for (Index a = 0; a < n && f.wedge1; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (!t.leq(t.mul(v[a], v[b]), v[s.mul(a, b)])) {
        f.wedge1 = false;
        break;
      }
    }
  }
  f.wedge2 = true;
  for (Index a = 0; a < n; ++a) {
    if (!t.leq(t.plus(v[a]), v[s.plus(a)]) ||
        !t.leq(t.star(v[a]), v[s.star(a)])) {
      f.wedge2 = false;
      break;
    }
  }
  f.wedge1_strong = true;
  for (Index a = 0; a < n && f.wedge1_strong; ++a) {
    for (Index b = 0; b < n; ++b) {
      Index const lhs = t.mul(v[a], v[b]);
      Index const ab = v[s.mul(a, b)];
      if (lhs != t.mul(t.plus(v[a]), ab) || lhs != t.mul(ab, t.star(v[b]))) {
        f.wedge1_strong = false;
        break;
      }
    }
  }
  f.order_preserving = true;
  for (Index a = 0; a < n && f.order_preserving; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (s.leq(a, b) && !t.leq(v[a], v[b])) {
        f.order_preserving = false;
        break;
      }
    }
  }
  f.morphism211 = true;
  for (Index a = 0; a < n && f.morphism211; ++a) {
    if (v[s.plus(a)] != t.plus(v[a]) || v[s.star(a)] != t.star(v[a])) {
      f.morphism211 = false;
      break;
    }
    for (Index b = 0; b < n; ++b) {
      if (v[s.mul(a, b)] != t.mul(v[a], v[b])) {
        f.morphism211 = false;
        break;
      }
    }
  }
  if (s.inverse() && t.inverse()) {
    auto const& sinv = s.inverse()->inv;
    auto const& tinv = t.inverse()->inv;
    bool preserved = true;
    for (Index a = 0; a < n; ++a) {
      if (tinv[v[a]] != v[sinv[a]]) {
        preserved = false;
        break;
      }
    }
    f.inverse_preserving = preserved;
  }
  return f;
}

FunctorFlags classify_functor_map(InductiveCategory const& source,
                                  InductiveCategory const& target,
                                  std::span<Index const> v) {
  auto const n = source.size();
  auto const& c = source;
  auto const& d = target;
  FunctorFlags f;

  f.functor = true;
  for (Index a = 0; a < n && f.functor; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (c.defined(a, b) &&
          (!d.defined(v[a], v[b]) || d.prod(v[a], v[b]) != v[c.prod(a, b)])) {
        f.functor = false;
        break;
      }
    }
  }
  f.icp1 = true;
  for (Index a = 0; a < n && f.icp1; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (c.defined(a, b) &&
          !d.leq(d.pseudoproduct(v[a], v[b]), v[c.prod(a, b)])) {
        f.icp1 = false;
        break;
      }
    }
  }
  f.icp2 = true;
  for (Index a = 0; a < n; ++a) {
    if (!d.leq(d.dom(v[a]), v[c.dom(a)]) || !d.leq(d.ran(v[a]), v[c.ran(a)])) {
      f.icp2 = false;
      break;
    }
  }
  f.icp3 = true;
  for (Index a = 0; a < n && f.icp3; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (c.leq(a, b) && !d.leq(v[a], v[b])) {
        f.icp3 = false;
        break;
      }
    }
  }
  // (ICP4) in its restriction form; an object whose image is not an
  // object leaves the left-hand side undefined, which fails the condition.
  f.icp4 = true;
  for (Index a = 0; a < n && f.icp4; ++a) {
    Index const x = v[a];
    for (Index e : c.objects()) {
      Index const y = v[e];
      if (!d.is_object(y)) {
        f.icp4 = false;
        break;
      }
      Index const lhs_a = d.corestrict(x, d.meet(d.ran(x), y));
      Index const rhs_a = v[c.corestrict(a, c.meet(c.ran(a), e))];
      Index const lhs_b = d.restrict(d.meet(y, d.dom(x)), x);
      Index const rhs_b = v[c.restrict(c.meet(e, c.dom(a)), a)];
      if (!d.leq(lhs_a, rhs_a) || !d.leq(lhs_b, rhs_b)) {
        f.icp4 = false;
        break;
      }
    }
  }
  f.icp5 = true;
  for (Index a = 0; a < n && f.icp5; ++a) {
    for (Index b = 0; b < n; ++b) {
      Index const p = d.pseudoproduct(v[a], v[b]);
      Index const image = v[c.pseudoproduct(a, b)];
      if (d.dom(p) != d.meet(d.dom(v[a]), d.dom(image)) ||
          d.ran(p) != d.meet(d.ran(image), d.ran(v[b]))) {
        f.icp5 = false;
        break;
      }
    }
  }
  f.meets_preserved = true;
  for (Index e : c.objects()) {
    if (!d.is_object(v[e])) {
      f.meets_preserved = false;
      break;
    }
  }
  for (Index e : c.objects()) {
    if (!f.meets_preserved) {
      break;
    }
    for (Index g : c.objects()) {
      if (v[c.meet(e, g)] != d.meet(v[e], v[g])) {
        f.meets_preserved = false;
        break;
      }
    }
  }
  if (c.is_groupoid() && d.is_groupoid()) {
    bool preserved = true;
    for (Index a = 0; a < n; ++a) {
      if (d.inverse(v[a]) != v[c.inverse(a)]) {
        preserved = false;
        break;
      }
    }
    f.igp = preserved;
  }
  return f;
}

ArrowClassification classify(EsnPair const& source, EsnPair const& target,
                             std::span<Index const> values) {
  check_map_shape(source.size(), target.size(), values);
  return {classify_semigroup_map(source.semigroup, target.semigroup, values),
          classify_functor_map(source.category, target.category, values)};
}

namespace {

// Flag slots; -1 undecided, 0 false, 1 true.
enum FlagSlot : std::size_t {
  kMorphism211,
  kVee1,
  kVee2,
  kVeeR,
  kWedge1,
  kWedge2,
  kWedgeR,
  kOrderPreserving,
  kOrderedWedgeR,
  kWedge1Strong,
  kStrongWedgeR,
  kInversePreserving,
  kVeeI,
  kWedgeI,
  kOrderedWedgeI,
  kFunctor,
  kOrderedFunctor,
  kIcp1,
  kIcp2,
  kIcp3,
  kIcp4,
  kIcp5,
  kPrefunctor,
  kStrongPrefunctor,
  kIgp,
  kOgp,
  kMeetsPreserved,
  kInductiveFunctor,
  kFlagCount
};

using FlagArray = std::array<std::int8_t, kFlagCount>;

std::int8_t tri(bool b) { return b ? 1 : 0; }
std::int8_t tri(std::optional<bool> b) { return b ? tri(*b) : -1; }

FlagArray collect_flags(ArrowClassification const& c) {
  FlagArray a;
  a.fill(-1);
  if (c.semigroup) {
    auto const& s = *c.semigroup;
    a[kMorphism211] = tri(s.morphism211);
    a[kVee1] = tri(s.vee1);
    a[kVee2] = tri(s.vee2);
    a[kVeeR] = tri(s.vee_r());
    a[kWedge1] = tri(s.wedge1);
    a[kWedge2] = tri(s.wedge2);
    a[kWedgeR] = tri(s.wedge_r());
    a[kOrderPreserving] = tri(s.order_preserving);
    a[kOrderedWedgeR] = tri(s.ordered_wedge_r());
    a[kWedge1Strong] = tri(s.wedge1_strong);
    a[kStrongWedgeR] = tri(s.strong_wedge_r());
    a[kInversePreserving] = tri(s.inverse_preserving);
    a[kVeeI] = tri(s.vee_i());
    a[kWedgeI] = tri(s.wedge_i());
    a[kOrderedWedgeI] = tri(s.ordered_wedge_i());
  }
  if (c.functor) {
    auto const& f = *c.functor;
    a[kFunctor] = tri(f.functor);
    a[kOrderedFunctor] = tri(f.ordered_functor());
    a[kIcp1] = tri(f.icp1);
    a[kIcp2] = tri(f.icp2);
    a[kIcp3] = tri(f.icp3);
    a[kIcp4] = tri(f.icp4);
    a[kIcp5] = tri(f.icp5);
    a[kPrefunctor] = tri(f.prefunctor());
    a[kStrongPrefunctor] = tri(f.strong_prefunctor());
    a[kIgp] = tri(f.igp);
    a[kOgp] = tri(f.ordered_groupoid_premorphism());
    a[kMeetsPreserved] = tri(f.meets_preserved);
    a[kInductiveFunctor] = tri(f.inductive_functor());
  }
  return a;
}

std::optional<std::size_t> flag_slot(std::string const& name) {
  auto const& names = flag_names();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

std::vector<std::string> const& flag_names() {
  static std::vector<std::string> const names = {
      "morphism211",      "vee1",           "vee2",
      "veeR",             "wedge1",         "wedge2",
      "wedgeR",           "orderPreserving", "orderedWedgeR",
      "wedge1Strong",     "strongWedgeR",   "inversePreserving",
      "veeI",             "wedgeI",         "orderedWedgeI",
      "functor",          "orderedFunctor", "icp1",
      "icp2",             "icp3",           "icp4",
      "icp5",             "prefunctor",     "strongPrefunctor",
      "igp",              "ogp",            "meetsPreserved",
      "inductiveFunctor"};
  return names;
}

std::map<std::string, bool> flag_values(ArrowClassification const& c) {
  auto const flags = collect_flags(c);
  std::map<std::string, bool> result;
  for (std::size_t i = 0; i < kFlagCount; ++i) {
    if (flags[i] >= 0) {
      result.emplace(flag_names()[i], flags[i] == 1);
    }
  }
  return result;
}

std::optional<bool> flag_value(ArrowClassification const& c,
                               std::string const& name) {
  auto slot = flag_slot(name);
  if (!slot) {
    throw Error("unknown flag '" + name + "'");
  }
  auto const value = collect_flags(c)[*slot];
  if (value < 0) {
    return std::nullopt;
  }
  return value == 1;
}

Verdict check_vee_properties(RestrictionStructure const& source,
                             RestrictionStructure const& target,
                             std::span<Index const> v) {
  auto const& s = source;
  auto const& t = target;
  for (Index a : s.base().idempotents()) {
    if (!t.base().is_idempotent(v[a])) {
      return make_failure(FailureCode::LemmaViolation, {a},
                          "(a) idempotent image not idempotent");
    }
  }
  for (Index e : s.semilattice().members()) {
    if (!t.semilattice().contains(v[e])) {
      return make_failure(FailureCode::LemmaViolation, {e},
                          "(b) image of E not in F");
    }
  }
  for (Index a = 0; a < s.size(); ++a) {
    if (t.plus(v[a]) != v[s.plus(a)] || t.star(v[a]) != v[s.star(a)]) {
      return make_failure(FailureCode::LemmaViolation, {a},
                          "(c) (s theta)^+ != s^+ theta");
    }
    for (Index b = 0; b < s.size(); ++b) {
      if (s.leq(a, b) && !t.leq(v[a], v[b])) {
        return make_failure(FailureCode::LemmaViolation, {a, b},
                            "(d) not order-preserving");
      }
    }
  }
  return std::nullopt;
}

namespace {

enum AssertionSlot : std::size_t {
  kVeeRIffOrderedFunctor,
  kOrderedWedgeRIffPrefunctor,
  kStrongIffStrongPrefunctor,
  kOrderedWedgeIIffStrong,
  kVeeIIffVeeR,
  kMorphismIffInductiveFunctor,
  kStrongPrefunctorImpliesOgp,
  kVeeRImpliesOrder,
  kVeeRImpliesProperties,
  kStrongImpliesOrdered,
  kMorphismImpliesVeeAndStrong,
  kIcp5ImpliesIcp4,
  kOgpImpliesIcp5,
  kOgpImpliesIcp2,
  kAssertionCount
};

// -1 not applicable, 0 violated, 1 holds.
using AssertionArray = std::array<std::int8_t, kAssertionCount>;

std::int8_t iff(std::int8_t lhs, std::int8_t rhs) {
  if (lhs < 0 || rhs < 0) {
    return -1;
  }
  return tri(lhs == rhs);
}

std::int8_t implies(std::int8_t lhs, std::int8_t rhs) {
  if (lhs < 0 || rhs < 0) {
    return -1;
  }
  return tri(lhs == 0 || rhs == 1);
}

AssertionArray evaluate_assertions(EsnPair const& source, EsnPair const& target,
                                   std::span<Index const> values,
                                   FlagArray const& f) {
  AssertionArray a;
  a[kVeeRIffOrderedFunctor] = iff(f[kVeeR], f[kOrderedFunctor]);
  a[kOrderedWedgeRIffPrefunctor] = iff(f[kOrderedWedgeR], f[kPrefunctor]);
  a[kStrongIffStrongPrefunctor] = iff(f[kStrongWedgeR], f[kStrongPrefunctor]);
  a[kOrderedWedgeIIffStrong] = iff(f[kOrderedWedgeI], f[kStrongWedgeR]);
  a[kVeeIIffVeeR] = iff(f[kVeeI], f[kVeeR]);
  a[kMorphismIffInductiveFunctor] = iff(f[kMorphism211], f[kInductiveFunctor]);
  std::int8_t const groupoid_strong =
      f[kOgp] < 0 ? -1 : f[kStrongPrefunctor];
  a[kStrongPrefunctorImpliesOgp] = implies(groupoid_strong, f[kOgp]);
  a[kVeeRImpliesOrder] = implies(f[kVeeR], f[kOrderPreserving]);
  a[kVeeRImpliesProperties] = -1;
  if (f[kVeeR] == 1) {
    a[kVeeRImpliesProperties] = tri(!check_vee_properties(
        source.semigroup, target.semigroup, values));
  } else if (f[kVeeR] == 0) {
    a[kVeeRImpliesProperties] = 1;
  }
  std::int8_t const strong_ordered =
      f[kStrongWedgeR] < 0
          ? -1
          : tri(f[kWedgeR] == 1 && f[kOrderPreserving] == 1);
  a[kStrongImpliesOrdered] = implies(f[kStrongWedgeR], strong_ordered);
  a[kMorphismImpliesVeeAndStrong] = implies(
      f[kMorphism211], tri(f[kVeeR] == 1 && f[kStrongWedgeR] == 1));
  // The lemma's hypotheses are (ICP1)–(ICP3) together with (ICP5).
  std::int8_t const icp5_hyp =
      f[kIcp5] < 0 ? -1
                   : tri(f[kIcp1] == 1 && f[kIcp2] == 1 && f[kIcp3] == 1 &&
                         f[kIcp5] == 1);
  a[kIcp5ImpliesIcp4] = implies(icp5_hyp, f[kIcp4]);
  a[kOgpImpliesIcp5] = implies(f[kOgp], f[kIcp5]);
  a[kOgpImpliesIcp2] = implies(f[kOgp], f[kIcp2]);
  return a;
}

}  // namespace

std::vector<std::string> const& transfer_assertion_names() {
  static std::vector<std::string> const names = {
      "veeR <=> orderedFunctor",
      "orderedWedgeR <=> prefunctor (ICP1-4)",
      "strongWedgeR <=> strongPrefunctor (ICP1-5)",
      "orderedWedgeI <=> strongWedgeR",
      "veeI <=> veeR",
      "morphism211 <=> inductiveFunctor",
      "strongPrefunctor => ogp",
      "veeR => orderPreserving",
      "veeR => properties (a)-(d)",
      "strongWedgeR => orderedWedgeR",
      "morphism211 => veeR & strongWedgeR",
      "ICP1-3 & icp5 => icp4",
      "ogp => icp5",
      "ogp => icp2",
  };
  return names;
}

std::vector<AssertionOutcome> transfer_assertions(
    EsnPair const& source, EsnPair const& target,
    std::span<Index const> values, ArrowClassification const& c) {
  auto const a = evaluate_assertions(source, target, values, collect_flags(c));
  std::vector<AssertionOutcome> result;
  for (std::size_t i = 0; i < kAssertionCount; ++i) {
    result.push_back({transfer_assertion_names()[i], a[i] >= 0, a[i] != 0});
  }
  return result;
}

std::uint64_t default_budget() {
  if (char const* env = std::getenv("ESNKIT_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (std::exception const&) {
      throw Error(std::string("ESNKIT_BUDGET is not a number: ") + env);
    }
  }
  return kDefaultBudget;
}

std::uint64_t map_count(std::size_t n, std::size_t m) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (m != 0 && total > UINT64_MAX / m) {
      return UINT64_MAX;
    }
    total *= m;
  }
  return total;
}

MapValues map_at(std::uint64_t k, std::size_t n, std::size_t m) {
  MapValues values(n, 0);
  for (std::size_t i = n; i > 0; --i) {
    values[i - 1] = static_cast<Index>(k % m);
    k /= m;
  }
  return values;
}

std::uint64_t SweepReport::total_violations() const {
  std::uint64_t total = 0;
  for (auto const& [name, count] : violations) {
    total += count;
  }
  return total;
}

std::uint64_t ClosureReport::total_violations() const {
  std::uint64_t total = 0;
  for (auto const& [name, counts] : classes) {
    total += counts.second;
  }
  return total;
}

namespace {

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) {
    return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(lo, hi, worker) over [0,total) split into one contiguous range
// per worker.
template <typename Body>
void parallel_ranges(std::uint64_t total, unsigned threads, Body body) {
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(total, 1)));
  if (threads <= 1) {
    body(std::uint64_t{0}, total, 0u);
    return;
  }
  std::vector<std::thread> pool;
  std::uint64_t const chunk = (total + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    std::uint64_t const lo = std::min(total, w * chunk);
    std::uint64_t const hi = std::min(total, lo + chunk);
    pool.emplace_back([=, &body] { body(lo, hi, w); });
  }
  for (auto& t : pool) {
    t.join();
  }
}

void advance(MapValues& values, std::size_t m) {
  for (std::size_t i = values.size(); i > 0; --i) {
    if (++values[i - 1] < m) {
      return;
    }
    values[i - 1] = 0;
  }
}

// Sampling draws block b from a generator seeded with (seed, b), so the
// sample does not depend on the thread count.
inline constexpr std::uint64_t kSampleBlock = 4096;

struct MapSource {
  std::size_t n;
  std::size_t m;
  bool exhaustive;
  std::uint64_t total;
  std::uint64_t seed;

  // Calls visit(values) for positions [lo, hi).
  template <typename Visit>
  void visit_range(std::uint64_t lo, std::uint64_t hi, Visit visit) const {
    if (lo >= hi) {
      return;
    }
    if (exhaustive) {
      MapValues values = map_at(lo, n, m);
      for (std::uint64_t k = lo; k < hi; ++k) {
        visit(values);
        advance(values, m);
      }
      return;
    }
    MapValues values(n);
    std::uniform_int_distribution<Index> pick(0, static_cast<Index>(m - 1));
    std::uint64_t k = lo;
    while (k < hi) {
      std::uint64_t const block = k / kSampleBlock;
      std::seed_seq seq{static_cast<std::uint32_t>(seed),
                        static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(block),
                        static_cast<std::uint32_t>(block >> 32)};
      std::mt19937_64 gen(seq);
      std::uint64_t const block_end = std::min(hi, (block + 1) * kSampleBlock);
      // Skip draws belonging to positions before k in this block.
      for (std::uint64_t skip = block * kSampleBlock; skip < k; ++skip) {
        for (auto& x : values) {
          x = pick(gen);
        }
      }
      for (; k < block_end; ++k) {
        for (auto& x : values) {
          x = pick(gen);
        }
        visit(values);
      }
    }
  }
};

Checked<MapSource> make_source(std::size_t n, std::size_t m,
                               SweepConfig const& config) {
  std::uint64_t const total = map_count(n, m);
  if (n > 0 && m == 0) {
    return MapSource{n, m, true, 0, 0};
  }
  if (total <= config.budget) {
    return MapSource{n, m, true, total, 0};
  }
  if (!config.seed) {
    return make_failure(FailureCode::BudgetExceeded, {},
                        std::to_string(m) + "^" + std::to_string(n) +
                            " maps exceed the budget of " +
                            std::to_string(config.budget) +
                            "; supply a sampling seed");
  }
  std::uint64_t const samples = config.samples.value_or(config.budget);
  return MapSource{n, m, false, std::min(samples, config.budget),
                   *config.seed};
}

struct LocalSweep {
  std::array<std::uint64_t, kFlagCount> flags{};
  std::array<std::uint64_t, kAssertionCount> violations{};
  std::array<std::uint64_t, kAssertionCount> applicable{};
  std::vector<ViolationRecord> counterexamples;
  std::uint64_t maps = 0;
};

}  // namespace

Checked<SweepReport> transfer_sweep(EsnPair const& source,
                                    EsnPair const& target,
                                    SweepConfig const& config) {
  auto src = make_source(source.size(), target.size(), config);
  if (!src) {
    return src.failure();
  }
  unsigned const threads = resolve_threads(config.threads);
  std::vector<LocalSweep> locals(threads);
  parallel_ranges(src->total, threads,
                  [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
    auto& local = locals[w];
    src->visit_range(lo, hi, [&](MapValues const& values) {
      auto const c = classify(source, target, values);
      auto const flags = collect_flags(c);
      auto const outcome = evaluate_assertions(source, target, values, flags);
      ++local.maps;
      for (std::size_t i = 0; i < kFlagCount; ++i) {
        local.flags[i] += flags[i] == 1;
      }
      for (std::size_t i = 0; i < kAssertionCount; ++i) {
        local.applicable[i] += outcome[i] >= 0;
        if (outcome[i] == 0) {
          ++local.violations[i];
          if (local.counterexamples.size() < kMaxCounterexamples) {
            local.counterexamples.push_back(
                {transfer_assertion_names()[i], values});
          }
        }
      }
    });
  });

  SweepReport report;
  report.source = source.name;
  report.target = target.name;
  report.budget = config.budget;
  report.exhaustive = src->exhaustive;
  if (!src->exhaustive) {
    report.seed = config.seed;
  }
  std::array<std::uint64_t, kAssertionCount> applicable{};
  std::array<std::uint64_t, kFlagCount> flags{};
  std::array<std::uint64_t, kAssertionCount> violations{};
  for (auto const& local : locals) {
    report.maps += local.maps;
    for (std::size_t i = 0; i < kFlagCount; ++i) {
      flags[i] += local.flags[i];
    }
    for (std::size_t i = 0; i < kAssertionCount; ++i) {
      violations[i] += local.violations[i];
      applicable[i] += local.applicable[i];
    }
    for (auto const& record : local.counterexamples) {
      if (report.counterexamples.size() < kMaxCounterexamples) {
        report.counterexamples.push_back(record);
      }
    }
  }
  for (std::size_t i = 0; i < kFlagCount; ++i) {
    report.flag_counts[flag_names()[i]] = flags[i];
  }
  for (std::size_t i = 0; i < kAssertionCount; ++i) {
    if (applicable[i] != 0) {
      report.violations[transfer_assertion_names()[i]] = violations[i];
    }
  }
  return report;
}

Checked<EnumerationResult> enumerate_maps(EsnPair const& source,
                                          EsnPair const& target,
                                          std::string const& filter,
                                          std::uint64_t cap,
                                          SweepConfig const& config) {
  std::optional<std::size_t> slot;
  if (!filter.empty()) {
    slot = flag_slot(filter);
    if (!slot) {
      throw Error("unknown filter flag '" + filter + "'");
    }
  }
  auto src = make_source(source.size(), target.size(), config);
  if (!src) {
    return src.failure();
  }
  unsigned const threads = resolve_threads(config.threads);
  struct Local {
    std::array<std::uint64_t, kFlagCount> flags{};
    std::uint64_t maps = 0;
    std::vector<std::pair<MapValues, ArrowClassification>> matches;
  };
  std::vector<Local> locals(threads);
  parallel_ranges(src->total, threads,
                  [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
    auto& local = locals[w];
    src->visit_range(lo, hi, [&](MapValues const& values) {
      auto c = classify(source, target, values);
      auto const flags = collect_flags(c);
      ++local.maps;
      for (std::size_t i = 0; i < kFlagCount; ++i) {
        local.flags[i] += flags[i] == 1;
      }
      bool const match = !slot || flags[*slot] == 1;
      if (match && local.matches.size() < cap) {
        local.matches.emplace_back(values, std::move(c));
      }
    });
  });
  EnumerationResult result;
  auto& summary = result.summary;
  summary.source = source.name;
  summary.target = target.name;
  summary.budget = config.budget;
  summary.exhaustive = src->exhaustive;
  if (!src->exhaustive) {
    summary.seed = config.seed;
  }
  std::array<std::uint64_t, kFlagCount> flags{};
  for (auto& local : locals) {
    summary.maps += local.maps;
    for (std::size_t i = 0; i < kFlagCount; ++i) {
      flags[i] += local.flags[i];
    }
    for (auto& match : local.matches) {
      if (result.matches.size() < cap) {
        result.matches.push_back(std::move(match));
      }
    }
  }
  for (std::size_t i = 0; i < kFlagCount; ++i) {
    summary.flag_counts[flag_names()[i]] = flags[i];
  }
  return result;
}

MapValues compose_maps(std::span<Index const> first,
                       std::span<Index const> second) {
  MapValues result(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    result[i] = second[first[i]];
  }
  return result;
}

namespace {

// Classes whose closure under composition is asserted.
constexpr std::array<std::size_t, 10> kClosedClasses = {
    kVeeR,          kOrderedWedgeR, kStrongWedgeR,    kMorphism211,
    kOrderedWedgeI, kOrderedFunctor, kPrefunctor,     kStrongPrefunctor,
    kOgp,           kInductiveFunctor};

struct ClassifiedMap {
  MapValues values;
  FlagArray flags;
};

struct LocalClosure {
  std::uint64_t pairs = 0;
  std::array<std::uint64_t, kFlagCount> in_class{};
  std::array<std::uint64_t, kFlagCount> violated{};
  std::vector<ViolationRecord> counterexamples;
};

void check_pair(EsnPair const& a, EsnPair const& c, ClassifiedMap const& first,
                ClassifiedMap const& second, LocalClosure& local) {
  auto const composite = compose_maps(first.values, second.values);
  auto const flags = collect_flags(classify(a, c, composite));
  ++local.pairs;
  for (std::size_t slot : kClosedClasses) {
    if (first.flags[slot] == 1 && second.flags[slot] == 1) {
      ++local.in_class[slot];
      if (flags[slot] != 1) {
        ++local.violated[slot];
        if (local.counterexamples.size() < kMaxCounterexamples) {
          local.counterexamples.push_back({flag_names()[slot], composite});
        }
      }
    }
  }
}

std::vector<ClassifiedMap> classify_all(EsnPair const& s, EsnPair const& t,
                                        MapSource const& src,
                                        unsigned threads) {
  std::vector<ClassifiedMap> all(src.total);
  parallel_ranges(src.total, threads,
                  [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
    std::uint64_t k = lo;
    src.visit_range(lo, hi, [&](MapValues const& values) {
      all[k++] = {values, collect_flags(classify(s, t, values))};
    });
  });
  return all;
}

// First pair of (∧,r)- and of (∧,i)-premorphisms whose composite fails
// (∧1), visiting at most `limit` pairs in lexicographic order.
void search_non_closure(EsnPair const& a, EsnPair const& c,
                        std::vector<ClassifiedMap const*> const& firsts,
                        std::vector<ClassifiedMap const*> const& seconds,
                        std::uint64_t limit, ClosureReport& report) {
  bool const inverse = a.is_inverse() && c.is_inverse();
  bool found_r = false;
  bool found_i = !inverse;
  for (auto const* first : firsts) {
    for (auto const* second : seconds) {
      if (found_r && found_i) {
        return;
      }
      if (report.wedge_pairs_searched >= limit) {
        report.wedge_search_complete = false;
        return;
      }
      bool const pair_r =
          first->flags[kWedgeR] == 1 && second->flags[kWedgeR] == 1;
      bool const pair_i =
          first->flags[kWedgeI] == 1 && second->flags[kWedgeI] == 1;
      if (!(pair_r && !found_r) && !(pair_i && !found_i)) {
        continue;
      }
      ++report.wedge_pairs_searched;
      auto const composite = compose_maps(first->values, second->values);
      auto const flags =
          classify_semigroup_map(a.semigroup, c.semigroup, composite);
      if (flags.wedge1) {
        continue;
      }
      if (pair_r && !found_r) {
        report.witnesses.push_back(
            {"wedgeR", first->values, second->values, composite});
        found_r = true;
      }
      if (pair_i && !found_i) {
        report.witnesses.push_back(
            {"wedgeI", first->values, second->values, composite});
        found_i = true;
      }
    }
  }
}

void merge_closure(std::vector<LocalClosure> const& locals,
                   ClosureReport& report) {
  std::array<std::uint64_t, kFlagCount> in_class{};
  std::array<std::uint64_t, kFlagCount> violated{};
  for (auto const& local : locals) {
    report.pairs += local.pairs;
    for (std::size_t i = 0; i < kFlagCount; ++i) {
      in_class[i] += local.in_class[i];
      violated[i] += local.violated[i];
    }
    for (auto const& record : local.counterexamples) {
      if (report.counterexamples.size() < kMaxCounterexamples) {
        report.counterexamples.push_back(record);
      }
    }
  }
  for (std::size_t slot : kClosedClasses) {
    report.classes[flag_names()[slot]] = {in_class[slot], violated[slot]};
  }
}

std::vector<ClassifiedMap const*> wedge_maps(
    std::vector<ClassifiedMap> const& maps) {
  std::vector<ClassifiedMap const*> result;
  for (auto const& m : maps) {
    if (m.flags[kWedgeR] == 1 || m.flags[kWedgeI] == 1) {
      result.push_back(&m);
    }
  }
  return result;
}

}  // namespace

Checked<ClosureReport> verify_composition_closure(EsnPair const& a,
                                                  EsnPair const& b,
                                                  EsnPair const& c,
                                                  SweepConfig const& config) {
  auto first_src = make_source(a.size(), b.size(), config);
  auto second_src = make_source(b.size(), c.size(), config);
  if (!first_src) {
    return first_src.failure();
  }
  if (!second_src) {
    return second_src.failure();
  }
  if (!first_src->exhaustive || !second_src->exhaustive) {
    return make_failure(FailureCode::BudgetExceeded, {},
                        "composition closure requires exhaustive enumeration");
  }
  unsigned const threads = resolve_threads(config.threads);
  auto const firsts = classify_all(a, b, *first_src, threads);
  auto const seconds = classify_all(b, c, *second_src, threads);
  if (firsts.size() * seconds.size() > config.budget) {
    return make_failure(FailureCode::BudgetExceeded, {},
                        "pair count exceeds the budget");
  }

  ClosureReport report;
  report.description = a.name + " -> " + b.name + " -> " + c.name;
  std::vector<LocalClosure> locals(threads);
  parallel_ranges(firsts.size(), threads,
                  [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      for (auto const& second : seconds) {
        check_pair(a, c, firsts[i], second, locals[w]);
      }
    }
  });
  merge_closure(locals, report);
  search_non_closure(a, c, wedge_maps(firsts), wedge_maps(seconds),
                     config.budget, report);
  return report;
}

Checked<ClosureReport> verify_filtered_closure(EsnPair const& s,
                                               std::string const& flag,
                                               SweepConfig const& config) {
  auto slot = flag_slot(flag);
  if (!slot) {
    throw Error("unknown flag '" + flag + "'");
  }
  auto src = make_source(s.size(), s.size(), config);
  if (!src) {
    return src.failure();
  }
  if (!src->exhaustive) {
    return make_failure(FailureCode::BudgetExceeded, {},
                        "filtered closure requires exhaustive enumeration");
  }
  unsigned const threads = resolve_threads(config.threads);
  auto const all = classify_all(s, s, *src, threads);
  std::vector<ClassifiedMap const*> kept;
  for (auto const& m : all) {
    if (m.flags[*slot] == 1) {
      kept.push_back(&m);
    }
  }
  ClosureReport report;
  report.description = flag + " self-maps of " + s.name + " (" +
                       std::to_string(kept.size()) + " maps)";
  std::vector<LocalClosure> locals(threads);
  parallel_ranges(kept.size(), threads,
                  [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      for (auto const* second : kept) {
        check_pair(s, s, *kept[i], *second, locals[w]);
      }
    }
  });
  merge_closure(locals, report);
  auto const wedges = wedge_maps(all);
  search_non_closure(s, s, wedges, wedges, config.budget, report);
  return report;
}

HasseMembership hasse_membership(EsnPair const& source, EsnPair const& target,
                                 ArrowClassification const& c) {
  auto const f = collect_flags(c);
  bool const inverse = source.is_inverse() && target.is_inverse();
  bool const groupoid =
      source.category.is_groupoid() && target.category.is_groupoid();
  auto on = [&](std::size_t slot) { return f[slot] == 1; };

  HasseMembership m;
  m.semigroup_nodes = {
      {"REST_vee", on(kVeeR)},
      {"REST_wedge", on(kOrderedWedgeR)},
      {"REST_strong", on(kStrongWedgeR)},
      {"REST_mor", on(kMorphism211)},
      {"INV_vee", inverse && on(kVeeI)},
      {"INV_wedge", inverse && on(kOrderedWedgeI)},
      {"INV_mor", inverse && on(kMorphism211)},
  };
  m.category_nodes = {
      {"IC_ord", on(kOrderedFunctor)},
      {"IC_pre", on(kPrefunctor)},
      {"IC_strong", on(kStrongPrefunctor)},
      {"IC_ind", on(kInductiveFunctor)},
      {"IG_ord", groupoid && on(kOrderedFunctor)},
      {"IG_ogp", groupoid && on(kOgp)},
      {"IG_ind", groupoid && on(kInductiveFunctor)},
  };
  // Edges (lower, upper) by node position; identical for both diagrams.
  static constexpr std::array<std::pair<int, int>, 8> kEdges = {{
      {3, 0}, {3, 2}, {2, 1}, {4, 0}, {5, 2}, {6, 3}, {6, 4}, {6, 5}}};
  for (auto const* nodes : {&m.semigroup_nodes, &m.category_nodes}) {
    for (auto [lower, upper] : kEdges) {
      if ((*nodes)[lower].second && !(*nodes)[upper].second) {
        m.inclusion_violations.push_back((*nodes)[lower].first + " <= " +
                                         (*nodes)[upper].first);
      }
    }
  }
  for (std::size_t i = 0; i < m.semigroup_nodes.size(); ++i) {
    if (m.semigroup_nodes[i].second != m.category_nodes[i].second) {
      m.correspondence_violations.push_back(m.semigroup_nodes[i].first +
                                            " ~ " + m.category_nodes[i].first);
    }
  }
  return m;
}

std::string hasse_report(HasseMembership const& membership) {
  std::ostringstream out;
  auto render = [&out](char const* title, auto const& nodes) {
    out << title << ":";
    bool any = false;
    for (auto const& [name, member] : nodes) {
      if (member) {
        out << ' ' << name;
        any = true;
      }
    }
    if (!any) {
      out << " (none)";
    }
    out << '\n';
  };
  render("semigroup side", membership.semigroup_nodes);
  render("category side", membership.category_nodes);
  for (auto const& v : membership.inclusion_violations) {
    out << "inclusion violated: " << v << '\n';
  }
  for (auto const& v : membership.correspondence_violations) {
    out << "correspondence violated: " << v << '\n';
  }
  return out.str();
}

}  // namespace esnkit
