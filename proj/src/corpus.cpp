#include "esnkit/corpus.hpp"

#include <algorithm>

#include "esnkit/esn.hpp"
#include "esnkit/partial_map.hpp"
#include "esnkit/szendrei.hpp"

namespace esnkit {

FiniteSemigroup cyclic_group(std::size_t n) {
  std::vector<Index> table(n * n);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      table[a * n + b] = static_cast<Index>((a + b) % n);
    }
    labels.push_back(a == 0 ? "1" : a == 1 ? "g" : "g" + std::to_string(a));
  }
  return FiniteSemigroup(n, std::move(table), std::move(labels));
}

// 0 < 1 < ... < n-1 under min.
FiniteSemigroup chain_semilattice(std::size_t n) {
  std::vector<Index> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      table[a * n + b] = static_cast<Index>(std::min(a, b));
    }
  }
  return FiniteSemigroup(n, std::move(table), {});
}

FiniteSemigroup left_zero(std::size_t n) {
  std::vector<Index> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      table[a * n + b] = static_cast<Index>(a);
    }
  }
  return FiniteSemigroup(n, std::move(table), {});
}

namespace {

std::vector<Index> all_of(std::size_t n) {
  std::vector<Index> e(n);
  for (Index i = 0; i < n; ++i) {
    e[i] = i;
  }
  return e;
}

CorpusSemigroup from_monoid(std::string name, MonoidKind kind, std::size_t n,
                            bool restriction) {
  auto m = build_monoid(kind, n);
  return {std::move(name), m.semigroup, m.partial_identities, restriction};
}

std::vector<CorpusSemigroup> build_corpus() {
  std::vector<CorpusSemigroup> c;
  c.push_back({"sl2", chain_semilattice(2), {0, 1}});
  c.push_back({"chain3", chain_semilattice(3), {0, 1, 2}});
  c.push_back({"z2", cyclic_group(2), {0}});
  c.push_back({"z3", cyclic_group(3), {0}});
  c.push_back({"trivial", cyclic_group(1), {0}});
  c.push_back(from_monoid("i1", MonoidKind::I, 1, true));
  c.push_back(from_monoid("i2", MonoidKind::I, 2, true));
  c.push_back(from_monoid("i3", MonoidKind::I, 3, true));
  c.push_back(from_monoid("pt2", MonoidKind::PT, 2, false));
  c.push_back(from_monoid("ptstar2", MonoidKind::PTstar, 2, false));
  c.push_back({"lz2", left_zero(2), all_of(2), false});
  return c;
}

}  // namespace

std::vector<CorpusSemigroup> const& semigroup_corpus() {
  static std::vector<CorpusSemigroup> const corpus = build_corpus();
  return corpus;
}

CorpusSemigroup const& corpus_semigroup(std::string const& name) {
  for (auto const& entry : semigroup_corpus()) {
    if (entry.name == name) {
      return entry;
    }
  }
  throw Error("unknown corpus semigroup '" + name + "'");
}

RestrictionStructure corpus_restriction(std::string const& name) {
  auto const& entry = corpus_semigroup(name);
  auto r = make_restriction(entry.semigroup, entry.e);
  if (!r) {
    throw Error(name + " is not a restriction semigroup: " +
                to_string(r.failure()));
  }
  return std::move(r).value();
}

std::vector<std::string> restriction_names() {
  std::vector<std::string> names;
  for (auto const& entry : semigroup_corpus()) {
    if (entry.restriction) {
      names.push_back(entry.name);
    }
  }
  return names;
}

EsnPair corpus_pair(std::string const& name) {
  return make_esn_pair(name, corpus_restriction(name)).value();
}

std::vector<std::string> category_names() {
  return {"c_i2", "c_sl2", "z2g", "trivialg", "chain3d", "sz_z2", "sz_c_i2"};
}

InductiveCategory corpus_category(std::string const& name) {
  if (name == "c_i2") {
    return c_of(corpus_restriction("i2")).value();
  }
  if (name == "c_sl2") {
    return c_of(corpus_restriction("sl2")).value();
  }
  if (name == "z2g") {
    return c_of(corpus_restriction("z2")).value();
  }
  if (name == "trivialg") {
    return c_of(corpus_restriction("trivial")).value();
  }
  if (name == "chain3d") {
    return c_of(corpus_restriction("chain3")).value();
  }
  if (name == "sz_z2") {
    return build_sz(corpus_category("z2g")).value().category;
  }
  if (name == "sz_c_i2") {
    return build_sz(corpus_category("c_i2")).value().category;
  }
  throw Error("unknown corpus category '" + name + "'");
}

}  // namespace esnkit
