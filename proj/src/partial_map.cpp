#include "esnkit/partial_map.hpp"

#include <algorithm>

namespace esnkit {

PartialMap::PartialMap(std::vector<Index> img) : img_(std::move(img)) {
  for (Index y : img_) {
    if (y != kUndefined && y >= img_.size()) {
      throw Error("partial map image out of range");
    }
  }
}

PartialMap PartialMap::identity(std::size_t ground) {
  std::vector<Index> img(ground);
  for (Index x = 0; x < ground; ++x) {
    img[x] = x;
  }
  return PartialMap(std::move(img));
}

PartialMap PartialMap::empty(std::size_t ground) {
  return PartialMap(std::vector<Index>(ground, kUndefined));
}

std::vector<Index> PartialMap::domain() const {
  std::vector<Index> result;
  for (Index x = 0; x < img_.size(); ++x) {
    if (defined_at(x)) {
      result.push_back(x);
    }
  }
  return result;
}

std::vector<Index> PartialMap::image() const {
  std::vector<Index> result;
  for (Index y : img_) {
    if (y != kUndefined) {
      result.push_back(y);
    }
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

bool PartialMap::injective() const {
  auto const defined = static_cast<std::size_t>(std::count_if(
      img_.begin(), img_.end(), [](Index y) { return y != kUndefined; }));
  return image().size() == defined;
}

std::string PartialMap::label() const {
  static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string result;
  for (Index y : img_) {
    result += y == kUndefined ? '-' : kDigits[y % 36];
  }
  return result;
}

PartialMap compose(PartialMap const& alpha, PartialMap const& beta,
                   Direction direction) {
  if (alpha.ground() != beta.ground()) {
    throw Error("compose: ground sets differ");
  }
  auto const& first = direction == Direction::LeftToRight ? alpha : beta;
  auto const& second = direction == Direction::LeftToRight ? beta : alpha;
  std::vector<Index> img(alpha.ground(), kUndefined);
  for (Index x = 0; x < img.size(); ++x) {
    if (first.defined_at(x)) {
      img[x] = second(first(x));
    }
  }
  return PartialMap(std::move(img));
}

PartialMap domain_projection(PartialMap const& alpha) {
  std::vector<Index> img(alpha.ground(), kUndefined);
  for (Index x : alpha.domain()) {
    img[x] = x;
  }
  return PartialMap(std::move(img));
}

MonoidKind parse_monoid_kind(std::string const& name) {
  if (name == "PT") {
    return MonoidKind::PT;
  }
  if (name == "PTstar" || name == "PT*") {
    return MonoidKind::PTstar;
  }
  if (name == "I") {
    return MonoidKind::I;
  }
  throw Error("unknown monoid kind '" + name + "' (expected PT, PTstar, I)");
}

std::string monoid_kind_name(MonoidKind kind) {
  switch (kind) {
    case MonoidKind::PT: return "PT";
    case MonoidKind::PTstar: return "PTstar";
    case MonoidKind::I: return "I";
  }
  return "?";
}

Index TransformationMonoid::index_of(PartialMap const& map) const {
  auto it = std::lower_bound(maps.begin(), maps.end(), map);
  if (it == maps.end() || *it != map) {
    return kUndefined;
  }
  return static_cast<Index>(it - maps.begin());
}

namespace {

std::size_t count_maps(MonoidKind kind, std::size_t n) {
  std::size_t total = 0;
  if (kind == MonoidKind::I) {
    // Σ_k C(n,k)^2 k!
    for (std::size_t k = 0; k <= n; ++k) {
      std::size_t choose = 1;
      for (std::size_t i = 0; i < k; ++i) {
        choose = choose * (n - i) / (i + 1);
      }
      std::size_t fact = 1;
      for (std::size_t i = 2; i <= k; ++i) {
        fact *= i;
      }
      total += choose * choose * fact;
    }
    return total;
  }
  total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= n + 1;
    if (total > (std::size_t{1} << 40)) {
      break;
    }
  }
  return total;
}

}  // namespace

TransformationMonoid build_monoid(MonoidKind kind, std::size_t n,
                                  std::size_t cap) {
  if (n > 12 || count_maps(kind, n) > cap) {
    throw Error("build_monoid: " + monoid_kind_name(kind) + "_" +
                std::to_string(n) + " exceeds the size cap of " +
                std::to_string(cap));
  }
  TransformationMonoid monoid{kind, n, {}, {}, {}};

  // Odometer over {0..n-1, undefined}^n, digit n standing for undefined.
  std::vector<Index> digits(n, 0);
  while (true) {
    std::vector<Index> img(n);
    for (std::size_t x = 0; x < n; ++x) {
      img[x] = digits[x] == n ? kUndefined : digits[x];
    }
    PartialMap map(std::move(img));
    if (kind != MonoidKind::I || map.injective()) {
      monoid.maps.push_back(std::move(map));
    }
    std::size_t pos = n;
    while (pos > 0 && digits[pos - 1] == n) {
      digits[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) {
      break;
    }
    ++digits[pos - 1];
  }
  std::sort(monoid.maps.begin(), monoid.maps.end());

  auto const size = monoid.maps.size();
  auto const direction =
      kind == MonoidKind::PTstar ? Direction::RightToLeft : Direction::LeftToRight;
  std::vector<Index> table(size * size);
  std::vector<std::string> labels;
  labels.reserve(size);
  for (Index a = 0; a < size; ++a) {
    labels.push_back(monoid.maps[a].label());
    for (Index b = 0; b < size; ++b) {
      table[a * size + b] = monoid.index_of(
          compose(monoid.maps[a], monoid.maps[b], direction));
    }
  }
  monoid.semigroup = FiniteSemigroup(size, std::move(table), std::move(labels));
  for (Index a = 0; a < size; ++a) {
    if (domain_projection(monoid.maps[a]) == monoid.maps[a]) {
      monoid.partial_identities.push_back(a);
    }
  }
  return monoid;
}

Verdict check_unary_closure(TransformationMonoid const& monoid,
                            std::vector<Index> const& subset) {
  std::vector<std::uint8_t> in(monoid.maps.size(), 0);
  for (Index a : subset) {
    if (a >= monoid.maps.size()) {
      return make_failure(FailureCode::IndexOutOfRange, {a});
    }
    in[a] = 1;
  }
  for (Index a : subset) {
    for (Index b : subset) {
      if (in[monoid.semigroup.mul(a, b)] == 0) {
        return make_failure(FailureCode::NotClosed, {a, b});
      }
    }
  }
  for (Index a : subset) {
    if (in[monoid.index_of(domain_projection(monoid.maps[a]))] == 0) {
      return make_failure(FailureCode::NotClosedUnderProjection, {a});
    }
  }
  return std::nullopt;
}

}  // namespace esnkit
