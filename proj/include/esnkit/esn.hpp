#pragma once

// The object-level correspondence between restriction semigroups and
// inductive categories. Both constructions keep the underlying index set;
// only the operation tables change.

#include "esnkit/category.hpp"
#include "esnkit/semigroup.hpp"

namespace esnkit {

// Restricted product (ab when a^* = b^+), natural order, objects E,
// d = ^+, r = ^*. Validated as an inductive category, and as a groupoid
// when R is inverse.
Checked<InductiveCategory> c_of(RestrictionStructure const& r);

// Pseudoproduct semigroup with E = objects. The restriction structure is
// re-derived from scratch and required to reproduce ^+ = d, ^* = r and the
// category's order.
Checked<RestrictionStructure> s_of(InductiveCategory const& c);

// s_of(c_of(R)) = R bit-exactly (table, E, plus, star, order).
Verdict roundtrip_semigroup(RestrictionStructure const& r);

// c_of(s_of(C)) = C bit-exactly (objects, dom, ran, product table including
// undefined cells, order).
Verdict roundtrip_category(InductiveCategory const& c);

// Cell-level identities in C(S): f|a = fa, a|f = af, e∧f = ef, a⊗b = ab.
Verdict check_esn_cells(RestrictionStructure const& r,
                        InductiveCategory const& c);

// For inverse R: C(R) is a groupoid with inverses from R; S of any
// validated inductive groupoid is inverse.
Verdict inverse_specialization(RestrictionStructure const& r);
Verdict groupoid_gives_inverse(InductiveCategory const& g);

}  // namespace esnkit
