#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace esnkit {

// Elements of every finite structure are 0-based indices into its tables.
using Index = std::uint32_t;

// Reserved sentinel for "undefined" (partial products, partial maps).
inline constexpr Index kUndefined = std::numeric_limits<Index>::max();

// Thrown for precondition violations and usage errors. Mathematical
// failures (an axiom does not hold) are reported as values, never thrown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FailureCode {
  MalformedTable,
  NotAssociative,
  IndexOutOfRange,
  EmptySemilattice,
  NonIdempotentMember,
  NotClosed,
  NotCommutative,
  NoIdempotentInClass,
  MultipleIdempotentsInClass,
  NotLeftCongruence,
  NotRightCongruence,
  AmpleConditionFails,
  InternalInconsistency,
  PlusStarIdentityFails,
  NotRegular,
  IdempotentsDontCommute,
  NotClosedUnderProjection,
  ObjectsMismatch,
  Ca1,
  Ca2,
  Ca3,
  Composability,
  NotPartialOrder,
  Or1,
  Or2,
  MissingCorestriction,
  NonuniqueCorestriction,
  MissingRestriction,
  NonuniqueRestriction,
  NoMeet,
  NoInverse,
  EsnMismatch,
  RoundtripMismatch,
  LemmaViolation,
  FormulaMismatch,
  LiftNotUnique,
  BudgetExceeded,
};

std::string_view code_name(FailureCode code);

// A failed check: a code, the lexicographically first witness tuple and a
// short human-readable detail.
struct Failure {
  FailureCode code;
  std::vector<Index> witness;
  std::string detail;

  bool operator==(Failure const&) const = default;
};

std::string to_string(Failure const& failure);

// Outcome of a check with no payload: std::nullopt means the check passed.
using Verdict = std::optional<Failure>;

// Either a value or the Failure explaining why it could not be produced.
template <typename T>
class Checked {
 public:
  Checked(T value) : state_(std::move(value)) {}  // NOLINT
  Checked(Failure failure) : state_(std::move(failure)) {}  // NOLINT

  bool ok() const noexcept { return state_.index() == 0; }
  explicit operator bool() const noexcept { return ok(); }

  T const& value() const& {
    if (!ok()) {
      throw Error("Checked::value on failure: " + to_string(failure()));
    }
    return std::get<0>(state_);
  }
  T&& value() && {
    if (!ok()) {
      throw Error("Checked::value on failure: " + to_string(failure()));
    }
    return std::get<0>(std::move(state_));
  }
  Failure const& failure() const { return std::get<1>(state_); }

  T const& operator*() const& { return value(); }
  T const* operator->() const { return &value(); }

 private:
  std::variant<T, Failure> state_;
};

inline Failure make_failure(FailureCode code, std::vector<Index> witness,
                            std::string detail = {}) {
  return Failure{code, std::move(witness), std::move(detail)};
}

// Dense n×n boolean relation on [0,n).
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  bool holds(Index a, Index b) const { return bits_[a * n_ + b] != 0; }
  void set(Index a, Index b, bool value = true) { bits_[a * n_ + b] = value; }

  // Pairs (a,b) with a R b, in lexicographic order.
  std::vector<std::pair<Index, Index>> pairs() const;

  // First failing witness of reflexivity / antisymmetry / transitivity.
  Verdict check_partial_order() const;

  bool operator==(Relation const&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace esnkit
