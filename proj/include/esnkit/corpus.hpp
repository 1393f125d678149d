#pragma once

// The default corpus: small named semigroups (with their distinguished
// semilattice) and the categories derived from them.

#include <string>
#include <vector>

#include "esnkit/arrows.hpp"
#include "esnkit/category.hpp"
#include "esnkit/semigroup.hpp"

namespace esnkit {

struct CorpusSemigroup {
  std::string name;
  FiniteSemigroup semigroup;
  std::vector<Index> e;
  // False for members that are expected to fail derive_restriction.
  bool restriction = true;
};

// sl2, chain3, z2, z3, i1, i2, i3, pt2, ptstar2, lz2, trivial.
std::vector<CorpusSemigroup> const& semigroup_corpus();
CorpusSemigroup const& corpus_semigroup(std::string const& name);

// Restriction members only; throws Error on unknown or failing names.
RestrictionStructure corpus_restriction(std::string const& name);
std::vector<std::string> restriction_names();

EsnPair corpus_pair(std::string const& name);

// Category corpus: c_i2, c_sl2, z2g, trivialg, chain3d, sz_z2, sz_c_i2.
std::vector<std::string> category_names();
InductiveCategory corpus_category(std::string const& name);

FiniteSemigroup cyclic_group(std::size_t n);
FiniteSemigroup chain_semilattice(std::size_t n);
FiniteSemigroup left_zero(std::size_t n);

}  // namespace esnkit
