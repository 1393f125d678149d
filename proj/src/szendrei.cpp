#include "esnkit/szendrei.hpp"

#include <algorithm>

#include "esnkit/esn.hpp"

namespace esnkit {

namespace {

std::vector<Index> canonical(std::vector<Index> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// u·V (every product defined since d(w) = r(u) for w in V).
std::vector<Index> left_translate(Category const& g, Index u,
                                  std::vector<Index> const& v) {
  std::vector<Index> out;
  out.reserve(v.size());
  for (Index w : v) {
    out.push_back(g.prod(u, w));
  }
  return canonical(std::move(out));
}

std::vector<Index> restrict_all(OrderedCategory const& g, Index e,
                                std::vector<Index> const& v) {
  std::vector<Index> out;
  out.reserve(v.size());
  for (Index w : v) {
    out.push_back(g.restrict(e, w));
  }
  return canonical(std::move(out));
}

bool subset(std::vector<Index> const& a, std::vector<Index> const& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::vector<Index> star_of(Category const& g, Index e) {
  if (e >= g.size() || !g.is_object(e)) {
    throw Error("star_of: " + std::to_string(e) + " is not an object");
  }
  std::vector<Index> star;
  for (Index x = 0; x < g.size(); ++x) {
    if (g.dom(x) == e) {
      star.push_back(x);
    }
  }
  return star;
}

Index SzExpansion::index_of(SzElement const& x) const {
  auto it = positions.find(x);
  if (it == positions.end()) {
    throw Error("not an element of the expansion");
  }
  return it->second;
}

std::string sz_label(Category const& g, SzElement const& x) {
  std::string out = "{";
  for (std::size_t i = 0; i < x.set.size(); ++i) {
    if (i) {
      out += ',';
    }
    out += g.label(x.set[i]);
  }
  return out + "}:" + g.label(x.elem);
}

Checked<SzExpansion> build_sz(InductiveCategory const& g) {
  if (!g.is_groupoid()) {
    throw Error("build_sz needs a groupoid");
  }
  SzExpansion sz;
  auto objects = g.objects();
  std::sort(objects.begin(), objects.end());
  for (Index e : objects) {
    auto const star = star_of(g, e);
    std::vector<Index> rest;
    for (Index x : star) {
      if (x != e) {
        rest.push_back(x);
      }
    }
    if (rest.size() >= 24) {
      throw Error("star too large to expand");
    }
    std::vector<std::vector<Index>> sets;
    for (std::uint32_t mask = 0; mask < (1u << rest.size()); ++mask) {
      std::vector<Index> u{e};
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (mask & (1u << i)) {
          u.push_back(rest[i]);
        }
      }
      sets.push_back(canonical(std::move(u)));
    }
    std::sort(sets.begin(), sets.end());
    for (auto const& u : sets) {
      for (Index x : u) {
        sz.elements.push_back({u, x});
      }
    }
  }

  auto const n = sz.elements.size();
  for (Index i = 0; i < n; ++i) {
    sz.positions.emplace(sz.elements[i], i);
  }
  auto lookup = [&](SzElement const& x) {
    auto it = sz.positions.find(x);
    if (it == sz.positions.end()) {
      throw Error("expansion formula left the element set: " + sz_label(g, x));
    }
    return it->second;
  };

  CategoryData data;
  data.n = n;
  data.dom.resize(n);
  data.ran.resize(n);
  data.prod.assign(n * n, kUndefined);
  data.inv = std::vector<Index>(n);
  Relation order(n);
  for (Index i = 0; i < n; ++i) {
    auto const& [u_set, u] = sz.elements[i];
    Index const ui = g.inverse(u);
    auto const shifted = left_translate(g, ui, u_set);
    data.dom[i] = lookup({u_set, g.dom(u)});
    data.ran[i] = lookup({shifted, g.ran(u)});
    (*data.inv)[i] = lookup({shifted, ui});
    if (g.is_object(u)) {
      data.objects.push_back(i);
    }
    data.labels.push_back(sz_label(g, sz.elements[i]));
    for (Index j = 0; j < n; ++j) {
      auto const& [v_set, v] = sz.elements[j];
      if (g.ran(u) == g.dom(v) && left_translate(g, u, v_set) == u_set) {
        data.prod[i * n + j] = lookup({u_set, g.prod(u, v)});
      }
      if (g.leq(u, v) && subset(restrict_all(g, g.dom(u), v_set), u_set)) {
        order.set(i, j);
      }
    }
  }
  data.order = std::move(order);

  auto c = validate_inductive_data(std::move(data));
  if (!c) {
    return c.failure();
  }
  sz.category = std::move(c).value();
  return sz;
}

SzElement sz_pseudoproduct(InductiveCategory const& g, SzElement const& a,
                           SzElement const& b) {
  Index const u = a.elem;
  Index const v = b.elem;
  Index const m = g.meet(g.ran(u), g.dom(v));
  Index const delta = g.dom(g.corestrict(u, m));
  auto set = restrict_all(g, delta, a.set);
  for (Index w : b.set) {
    set.push_back(g.pseudoproduct(u, w));
  }
  return {canonical(std::move(set)), g.pseudoproduct(u, v)};
}

Verdict check_sz_formulas(InductiveCategory const& g, SzExpansion const& sz) {
  auto const& c = sz.category;
  auto const n = sz.size();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      auto const formula =
          sz_pseudoproduct(g, sz.elements[i], sz.elements[j]);
      if (sz.index_of(formula) != c.pseudoproduct(i, j)) {
        return make_failure(FailureCode::FormulaMismatch, {i, j},
                            "pseudoproduct formula");
      }
    }
  }

  auto semigroup = s_of(c);
  if (!semigroup) {
    return semigroup.failure();
  }
  if (semigroup->order() != c.order()) {
    return make_failure(FailureCode::FormulaMismatch, {},
                        "order formula vs natural order");
  }

  for (Index i = 0; i < n; ++i) {
    auto const& [u_set, u] = sz.elements[i];
    Index const ui = g.inverse(u);
    auto const shifted = left_translate(g, ui, u_set);
    if (c.dom(i) != sz.index_of({u_set, g.dom(u)})) {
      return make_failure(FailureCode::FormulaMismatch, {i}, "dom formula");
    }
    if (c.ran(i) != sz.index_of({shifted, g.ran(u)})) {
      return make_failure(FailureCode::FormulaMismatch, {i}, "ran formula");
    }
    if (c.inverse(i) != sz.index_of({shifted, ui})) {
      return make_failure(FailureCode::FormulaMismatch, {i},
                          "inverse formula");
    }
    if (c.is_object(i) != g.is_object(u)) {
      return make_failure(FailureCode::FormulaMismatch, {i}, "objects");
    }
  }

  for (Index x : c.objects()) {
    auto const& [e_set, e] = sz.elements[x];
    for (Index a = 0; a < n; ++a) {
      if (!c.leq(x, c.dom(a))) {
        continue;
      }
      Index const formula =
          sz.index_of({e_set, g.restrict(e, sz.elements[a].elem)});
      if (formula != c.restrict(x, a)) {
        return make_failure(FailureCode::FormulaMismatch, {x, a},
                            "restriction formula");
      }
    }
    for (Index y : c.objects()) {
      auto const& [f_set, f] = sz.elements[y];
      Index const m = g.meet(e, f);
      std::vector<Index> joined = e_set;
      joined.insert(joined.end(), f_set.begin(), f_set.end());
      joined = canonical(std::move(joined));
      Index const formula = sz.index_of({restrict_all(g, m, joined), m});
      if (formula != c.meet(x, y)) {
        return make_failure(FailureCode::FormulaMismatch, {x, y},
                            "meet formula");
      }
    }
  }
  return std::nullopt;
}

MapValues iota(InductiveCategory const& g, SzExpansion const& sz) {
  MapValues values(g.size());
  for (Index x = 0; x < g.size(); ++x) {
    values[x] = sz.index_of({canonical({g.dom(x), x}), x});
  }
  return values;
}

Checked<LiftResult> find_unique_lift(InductiveCategory const& g,
                                     SzExpansion const& sz,
                                     InductiveCategory const& h,
                                     std::span<Index const> psi,
                                     std::uint64_t budget, LiftTarget kind) {
  check_map_shape(g.size(), h.size(), psi);
  auto const flags = classify_functor_map(g, h, psi);
  if (flags.ordered_groupoid_premorphism() != true) {
    throw Error("find_unique_lift needs an ordered groupoid premorphism");
  }
  auto const embed = iota(g, sz);
  auto const n = sz.size();
  MapValues lift(n, kUndefined);
  for (Index x = 0; x < g.size(); ++x) {
    lift[embed[x]] = psi[x];
  }

  // Free elements and their candidate values; objects of Sz(G) can only go
  // to objects of H (either kind of functor preserves identities).
  std::vector<Index> free;
  std::vector<std::vector<Index>> choices;
  for (Index i = 0; i < n; ++i) {
    if (lift[i] != kUndefined) {
      continue;
    }
    free.push_back(i);
    std::vector<Index> options;
    for (Index y = 0; y < h.size(); ++y) {
      if (!sz.category.is_object(i) || h.is_object(y)) {
        options.push_back(y);
      }
    }
    choices.push_back(std::move(options));
  }

  std::uint64_t space = 1;
  for (auto const& options : choices) {
    if (options.empty()) {
      space = 0;
      break;
    }
    if (space > budget / options.size() + 1) {
      return make_failure(FailureCode::BudgetExceeded, {},
                          "lift search space exceeds the budget");
    }
    space *= options.size();
  }
  if (space > budget) {
    return make_failure(FailureCode::BudgetExceeded, {},
                        "lift search space exceeds the budget");
  }

  LiftResult result;
  result.free_elements = free.size();
  std::uint64_t survivors = 0;
  std::vector<std::size_t> digit(free.size(), 0);
  for (std::uint64_t k = 0; k < space; ++k) {
    for (std::size_t i = 0; i < free.size(); ++i) {
      lift[free[i]] = choices[i][digit[i]];
    }
    ++result.candidates;
    auto const f = classify_functor_map(sz.category, h, lift);
    bool const ok = kind == LiftTarget::InductiveFunctor
                        ? f.inductive_functor()
                        : f.ordered_functor();
    if (ok) {
      if (survivors == 0) {
        result.lift = lift;
      }
      ++survivors;
    }
    for (std::size_t i = free.size(); i > 0; --i) {
      if (++digit[i - 1] < choices[i - 1].size()) {
        break;
      }
      digit[i - 1] = 0;
    }
  }
  result.survivors = survivors;
  if (survivors != 1) {
    return make_failure(FailureCode::LiftNotUnique, {},
                        std::to_string(survivors) + " lifts among " +
                            std::to_string(result.candidates) + " extensions");
  }
  return result;
}

}  // namespace esnkit
