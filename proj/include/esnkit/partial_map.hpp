#pragma once

// Partial maps on {0..n-1} and the monoids PT_n, PT*_n and I_n built from
// them.

#include <string>
#include <vector>

#include "esnkit/semigroup.hpp"

namespace esnkit {

class PartialMap {
 public:
  PartialMap() = default;
  // img[x] is the image of x or kUndefined. Throws Error on out-of-range
  // entries.
  explicit PartialMap(std::vector<Index> img);

  static PartialMap identity(std::size_t ground);
  static PartialMap empty(std::size_t ground);

  std::size_t ground() const noexcept { return img_.size(); }
  Index operator()(Index x) const { return img_[x]; }
  bool defined_at(Index x) const { return img_[x] != kUndefined; }
  std::vector<Index> const& img() const noexcept { return img_; }

  std::vector<Index> domain() const;
  std::vector<Index> image() const;
  bool injective() const;

  // "01", "1-": one character per point, '-' for undefined (base 36 digits
  // for larger grounds).
  std::string label() const;

  bool operator==(PartialMap const&) const = default;
  // Lexicographic on img with kUndefined sorting last.
  auto operator<=>(PartialMap const&) const = default;

 private:
  std::vector<Index> img_;
};

enum class Direction { LeftToRight, RightToLeft };

// LeftToRight: x ↦ β(α(x)); RightToLeft: x ↦ α(β(x)).
PartialMap compose(PartialMap const& alpha, PartialMap const& beta,
                   Direction direction);

// Partial identity on dom(α).
PartialMap domain_projection(PartialMap const& alpha);

enum class MonoidKind { PT, PTstar, I };

MonoidKind parse_monoid_kind(std::string const& name);
std::string monoid_kind_name(MonoidKind kind);

inline constexpr std::size_t kDefaultMonoidCap = 10'000;

struct TransformationMonoid {
  MonoidKind kind;
  std::size_t ground;
  std::vector<PartialMap> maps;  // element i is maps[i]
  FiniteSemigroup semigroup;     // labels are PartialMap::label()
  std::vector<Index> partial_identities;

  Index index_of(PartialMap const& map) const;
};

// All partial maps (injective only for I), sorted lexicographically, with
// the Cayley table of the kind's composition direction. Throws Error when
// the element count would exceed `cap`.
TransformationMonoid build_monoid(MonoidKind kind, std::size_t n,
                                  std::size_t cap = kDefaultMonoidCap);

// Closure of `subset` under multiplication and domain projection (the
// projection plays the role of ^+ in PT and ^* in PT*).
Verdict check_unary_closure(TransformationMonoid const& monoid,
                            std::vector<Index> const& subset);

}  // namespace esnkit
