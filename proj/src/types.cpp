#include "esnkit/types.hpp"

#include <sstream>

namespace esnkit {

std::string_view code_name(FailureCode code) {
  switch (code) {
    case FailureCode::MalformedTable: return "MALFORMED_TABLE";
    case FailureCode::NotAssociative: return "NOT_ASSOCIATIVE";
    case FailureCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case FailureCode::EmptySemilattice: return "EMPTY_SEMILATTICE";
    case FailureCode::NonIdempotentMember: return "NON_IDEMPOTENT_MEMBER";
    case FailureCode::NotClosed: return "NOT_CLOSED";
    case FailureCode::NotCommutative: return "NOT_COMMUTATIVE";
    case FailureCode::NoIdempotentInClass: return "NO_IDEMPOTENT_IN_CLASS";
    case FailureCode::MultipleIdempotentsInClass:
      return "MULTIPLE_IDEMPOTENTS_IN_CLASS";
    case FailureCode::NotLeftCongruence: return "NOT_LEFT_CONGRUENCE";
    case FailureCode::NotRightCongruence: return "NOT_RIGHT_CONGRUENCE";
    case FailureCode::AmpleConditionFails: return "AMPLE_CONDITION_FAILS";
    case FailureCode::InternalInconsistency: return "INTERNAL_INCONSISTENCY";
    case FailureCode::PlusStarIdentityFails:
      return "PLUS_STAR_IDENTITY_FAILS";
    case FailureCode::NotRegular: return "NOT_REGULAR";
    case FailureCode::IdempotentsDontCommute:
      return "IDEMPOTENTS_DONT_COMMUTE";
    case FailureCode::NotClosedUnderProjection:
      return "NOT_CLOSED_UNDER_PROJECTION";
    case FailureCode::ObjectsMismatch: return "OBJECTS_MISMATCH";
    case FailureCode::Ca1: return "CA1";
    case FailureCode::Ca2: return "CA2";
    case FailureCode::Ca3: return "CA3";
    case FailureCode::Composability: return "COMPOSABILITY";
    case FailureCode::NotPartialOrder: return "NOT_PARTIAL_ORDER";
    case FailureCode::Or1: return "OR1";
    case FailureCode::Or2: return "OR2";
    case FailureCode::MissingCorestriction: return "MISSING_CORESTRICTION";
    case FailureCode::NonuniqueCorestriction:
      return "NONUNIQUE_CORESTRICTION";
    case FailureCode::MissingRestriction: return "MISSING_RESTRICTION";
    case FailureCode::NonuniqueRestriction: return "NONUNIQUE_RESTRICTION";
    case FailureCode::NoMeet: return "NO_MEET";
    case FailureCode::NoInverse: return "NO_INVERSE";
    case FailureCode::EsnMismatch: return "ESN_MISMATCH";
    case FailureCode::RoundtripMismatch: return "ROUNDTRIP_MISMATCH";
    case FailureCode::LemmaViolation: return "LEMMA_VIOLATION";
    case FailureCode::FormulaMismatch: return "FORMULA_MISMATCH";
    case FailureCode::LiftNotUnique: return "LIFT_NOT_UNIQUE";
    case FailureCode::BudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "UNKNOWN";
}

std::string to_string(Failure const& failure) {
  std::ostringstream out;
  out << code_name(failure.code) << " witness=(";
  for (std::size_t i = 0; i < failure.witness.size(); ++i) {
    if (i != 0) {
      out << ',';
    }
    out << failure.witness[i];
  }
  out << ')';
  if (!failure.detail.empty()) {
    out << ": " << failure.detail;
  }
  return out.str();
}

std::vector<std::pair<Index, Index>> Relation::pairs() const {
  std::vector<std::pair<Index, Index>> result;
  for (Index a = 0; a < n_; ++a) {
    for (Index b = 0; b < n_; ++b) {
      if (holds(a, b)) {
        result.emplace_back(a, b);
      }
    }
  }
  return result;
}

Verdict Relation::check_partial_order() const {
  for (Index a = 0; a < n_; ++a) {
    if (!holds(a, a)) {
      return make_failure(FailureCode::NotPartialOrder, {a}, "not reflexive");
    }
  }
  for (Index a = 0; a < n_; ++a) {
    for (Index b = 0; b < n_; ++b) {
      if (a != b && holds(a, b) && holds(b, a)) {
        return make_failure(FailureCode::NotPartialOrder, {a, b},
                            "not antisymmetric");
      }
    }
  }
  for (Index a = 0; a < n_; ++a) {
    for (Index b = 0; b < n_; ++b) {
      if (!holds(a, b)) {
        continue;
      }
      for (Index c = 0; c < n_; ++c) {
        if (holds(b, c) && !holds(a, c)) {
          return make_failure(FailureCode::NotPartialOrder, {a, b, c},
                              "not transitive");
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace esnkit
