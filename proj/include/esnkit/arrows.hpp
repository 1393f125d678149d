#pragma once

// Classification of total functions between finite restriction semigroups
// (and, through the ESN correspondence, between their inductive
// categories) against every premorphism / prefunctor notion, plus
// exhaustive sweeps that test the transfer theorems and composition laws.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esnkit/category.hpp"
#include "esnkit/semigroup.hpp"

namespace esnkit {

// A restriction semigroup paired with its inductive category C(S). Maps are
// classified on both sides as the same function of the shared index set.
struct EsnPair {
  std::string name;
  RestrictionStructure semigroup;
  InductiveCategory category;

  std::size_t size() const noexcept { return semigroup.size(); }
  bool is_inverse() const noexcept { return semigroup.is_inverse(); }
};

Checked<EsnPair> make_esn_pair(std::string name, RestrictionStructure r);

using MapValues = std::vector<Index>;

// Flags on the semigroup side. Every flag is decided by direct
// quantification; none is derived from another.
struct SemigroupFlags {
  bool morphism211 = false;       // (st)θ=(sθ)(tθ), s^+θ=(sθ)^+, s^*θ=(sθ)^*
  bool vee1 = false;              // (st)θ ≤ (sθ)(tθ)
  bool vee2 = false;              // s^+θ ≤ (sθ)^+, s^*θ ≤ (sθ)^*
  bool wedge1 = false;            // (sθ)(tθ) ≤ (st)θ
  bool wedge2 = false;            // (sθ)^+ ≤ s^+θ, (sθ)^* ≤ s^*θ
  bool wedge1_strong = false;     // (sθ)(tθ) = (sθ)^+(st)θ = (st)θ(tθ)^*
  bool order_preserving = false;
  // Decided only when both ends are inverse semigroups.
  std::optional<bool> inverse_preserving;  // (sθ)^{-1} = s^{-1}θ

  bool vee_r() const { return vee1 && vee2; }
  bool wedge_r() const { return wedge1 && wedge2; }
  bool ordered_wedge_r() const { return wedge_r() && order_preserving; }
  bool strong_wedge_r() const { return wedge_r() && wedge1_strong; }
  std::optional<bool> vee_i() const;
  std::optional<bool> wedge_i() const;
  std::optional<bool> ordered_wedge_i() const;
};

struct FunctorFlags {
  bool functor = false;           // defined products preserved
  bool icp1 = false;              // ∃s·t ⇒ sψ⊗tψ ≤ (s·t)ψ
  bool icp2 = false;              // d(sψ) ≤ d(s)ψ, r(sψ) ≤ r(s)ψ
  bool icp3 = false;              // order-preserving
  bool icp4 = false;              // restriction/corestriction form (a), (b)
  bool icp5 = false;              // domain/range meet conditions (a), (b)
  bool meets_preserved = false;   // objects to objects, (e∧f)ψ = eψ∧fψ
  // Decided only when both ends are groupoids.
  std::optional<bool> igp;        // (gψ)^{-1} = g^{-1}ψ

  bool ordered_functor() const { return functor && icp3; }
  bool inductive_functor() const { return ordered_functor() && meets_preserved; }
  bool prefunctor() const { return icp1 && icp2 && icp3 && icp4; }
  bool strong_prefunctor() const { return prefunctor() && icp5; }
  std::optional<bool> ordered_groupoid_premorphism() const;
};

struct ArrowClassification {
  std::optional<SemigroupFlags> semigroup;
  std::optional<FunctorFlags> functor;
};

SemigroupFlags classify_semigroup_map(RestrictionStructure const& source,
                                      RestrictionStructure const& target,
                                      std::span<Index const> values);

FunctorFlags classify_functor_map(InductiveCategory const& source,
                                  InductiveCategory const& target,
                                  std::span<Index const> values);

// Both sides: θ on S→T and the same function on C(S)→C(T).
ArrowClassification classify(EsnPair const& source, EsnPair const& target,
                             std::span<Index const> values);

// Throws Error if values has the wrong length or an out-of-range entry.
void check_map_shape(std::size_t source_size, std::size_t target_size,
                     std::span<Index const> values);

// Named flags in report order. Composite names ("orderedWedgeR",
// "prefunctor", "strongPrefunctor", "ogp") are included; undecided flags
// are absent from the map.
std::vector<std::string> const& flag_names();
std::map<std::string, bool> flag_values(ArrowClassification const& c);
std::optional<bool> flag_value(ArrowClassification const& c,
                               std::string const& name);

// Items (a)–(d) of the properties of (∨,r)-premorphisms, asserted
// independently: E(S)θ ⊆ E(T), Eθ ⊆ F, (sθ)^+ = s^+θ and (sθ)^* = s^*θ,
// order-preserving.
Verdict check_vee_properties(RestrictionStructure const& source,
                             RestrictionStructure const& target,
                             std::span<Index const> values);

// One named assertion over a single classified map.
struct AssertionOutcome {
  std::string name;
  bool applicable = true;
  bool holds = true;
};

// The transfer biconditionals between the two sides, and the implication
// invariants, for one classified map.
std::vector<AssertionOutcome> transfer_assertions(
    EsnPair const& source, EsnPair const& target,
    std::span<Index const> values, ArrowClassification const& c);

std::vector<std::string> const& transfer_assertion_names();

// ---------------------------------------------------------------------------
// Sweeps

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Default classification budget; ESNKIT_BUDGET overrides it.
std::uint64_t default_budget();

struct SweepConfig {
  std::uint64_t budget = kDefaultBudget;
  // Sampling mode: draw `samples` maps (default: budget) from a generator
  // seeded with this value instead of enumerating.
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  unsigned threads = 1;  // 0 = hardware concurrency
};

// m^n, saturating at UINT64_MAX.
std::uint64_t map_count(std::size_t n, std::size_t m);

// Lexicographic position k -> values (values[0] most significant).
MapValues map_at(std::uint64_t k, std::size_t n, std::size_t m);

struct ViolationRecord {
  std::string assertion;
  MapValues values;
};

struct SweepReport {
  std::string source;
  std::string target;
  std::uint64_t budget = 0;
  std::optional<std::uint64_t> seed;
  bool exhaustive = true;
  std::uint64_t maps = 0;
  std::map<std::string, std::uint64_t> flag_counts;
  std::map<std::string, std::uint64_t> violations;  // per assertion name
  std::vector<ViolationRecord> counterexamples;      // first few, in order

  std::uint64_t total_violations() const;
};

inline constexpr std::size_t kMaxCounterexamples = 16;

// Classifies every map source→target (or a seeded sample), runs the
// transfer assertions on each and aggregates. Fails with BUDGET_EXCEEDED
// when the space exceeds the budget and no seed is given.
Checked<SweepReport> transfer_sweep(EsnPair const& source,
                                    EsnPair const& target,
                                    SweepConfig const& config);

struct EnumerationResult {
  SweepReport summary;  // counts only; no assertions
  std::vector<std::pair<MapValues, ArrowClassification>> matches;
};

// Deterministic enumeration filtered by a flag name (empty = all), keeping
// at most `cap` matches.
Checked<EnumerationResult> enumerate_maps(EsnPair const& source,
                                          EsnPair const& target,
                                          std::string const& filter,
                                          std::uint64_t cap,
                                          SweepConfig const& config);

// Composite θ1θ2 (left to right): s ↦ (sθ1)θ2.
MapValues compose_maps(std::span<Index const> first,
                       std::span<Index const> second);

// A pair of (∧,r)- (kind "wedgeR") or (∧,i)-premorphisms (kind "wedgeI")
// whose composite fails (∧1).
struct NonClosureWitness {
  std::string kind;
  MapValues first;
  MapValues second;
  MapValues composite;
};

struct ClosureReport {
  std::string description;
  std::uint64_t pairs = 0;
  // class name -> (pairs with both factors in class, closure violations)
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> classes;
  std::vector<ViolationRecord> counterexamples;  // composite values
  // Unordered (∧,·) non-closure search: first witness of each kind.
  std::uint64_t wedge_pairs_searched = 0;
  bool wedge_search_complete = true;
  std::vector<NonClosureWitness> witnesses;

  std::uint64_t total_violations() const;
};

// Exhaustive over all pairs A→B, B→C.
Checked<ClosureReport> verify_composition_closure(EsnPair const& a,
                                                  EsnPair const& b,
                                                  EsnPair const& c,
                                                  SweepConfig const& config);

// Closure of one class on self-maps of S: enumerates S→S, keeps the maps in
// `flag`, and checks every composite of two kept maps. The non-closure
// search visits at most `config.budget` pairs of (∧,r)-premorphisms.
Checked<ClosureReport> verify_filtered_closure(EsnPair const& s,
                                               std::string const& flag,
                                               SweepConfig const& config);

// Membership of one arrow in the nodes of the two Hasse diagrams of arrow
// classes, with the inclusion order checked.
struct HasseMembership {
  std::vector<std::pair<std::string, bool>> semigroup_nodes;
  std::vector<std::pair<std::string, bool>> category_nodes;
  // Inclusion edges (lower ⊆ upper) that the membership violates.
  std::vector<std::string> inclusion_violations;
  // Nodes whose counterparts on the other diagram disagree.
  std::vector<std::string> correspondence_violations;
};

HasseMembership hasse_membership(EsnPair const& source, EsnPair const& target,
                                 ArrowClassification const& c);
std::string hasse_report(HasseMembership const& membership);

}  // namespace esnkit
