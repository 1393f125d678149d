#include "esnkit/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace esnkit::io {

using Json = nlohmann::ordered_json;

namespace {

// Field access with the path of the value in the message on failure.
class Reader {
 public:
  Reader(Json const& root, std::string source)
      : root_(root), source_(std::move(source)) {}

  [[noreturn]] void fail(std::string const& path,
                         std::string const& what) const {
    throw ParseError(source_ + ": field '" + path + "': " + what);
  }

  Json const& field(Json const& obj, std::string const& path,
                    char const* key) const {
    if (!obj.is_object()) {
      fail(path, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      throw ParseError(source_ + ": missing field '" + join(path, key) + "'");
    }
    return *it;
  }

  Json const* optional_field(Json const& obj, char const* key) const {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  Index index(Json const& v, std::string const& path) const {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      fail(path, "expected a non-negative integer");
    }
    auto const x = v.get<std::uint64_t>();
    if (x >= kUndefined) {
      fail(path, "index too large");
    }
    return static_cast<Index>(x);
  }

  std::vector<Index> indices(Json const& v, std::string const& path) const {
    if (!v.is_array()) {
      fail(path, "expected an array");
    }
    std::vector<Index> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(index(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  std::string string(Json const& v, std::string const& path) const {
    if (!v.is_string()) {
      fail(path, "expected a string");
    }
    return v.get<std::string>();
  }

  std::vector<std::string> strings(Json const& v,
                                   std::string const& path) const {
    if (!v.is_array()) {
      fail(path, "expected an array");
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(string(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  Json const& root() const { return root_; }

  static std::string join(std::string const& path, char const* key) {
    return path.empty() ? std::string(key) : path + "." + key;
  }

 private:
  Json const& root_;
  std::string source_;
};

Json parse_json(std::string_view text, std::string const& source) {
  try {
    return Json::parse(text);
  } catch (Json::parse_error const& e) {
    // Convert the byte offset into line and column.
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t const end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source + ": line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": malformed JSON");
  }
}

void expect_kind(Reader const& r, char const* kind) {
  auto const k = r.string(r.field(r.root(), "", "kind"), "kind");
  if (k != kind) {
    r.fail("kind", std::string("expected \"") + kind + "\", got \"" + k + "\"");
  }
}

std::size_t read_size(Reader const& r) {
  return r.index(r.field(r.root(), "", "n"), "n");
}

void check_length(Reader const& r, std::vector<Index> const& v, std::size_t n,
                  std::string const& path) {
  if (v.size() != n) {
    r.fail(path, "expected " + std::to_string(n) + " entries, got " +
                     std::to_string(v.size()));
  }
}

void check_range(Reader const& r, std::vector<Index> const& v, std::size_t n,
                 std::string const& path) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= n) {
      r.fail(path + "[" + std::to_string(i) + "]",
             "index " + std::to_string(v[i]) + " out of range");
    }
  }
}

std::string dump(Json const& j) {
  // One row per line for tables keeps fixtures diffable.
  std::ostringstream out;
  out << "{\n";
  bool first = true;
  for (auto const& [key, value] : j.items()) {
    if (!first) {
      out << ",\n";
    }
    first = false;
    out << "  " << Json(key).dump() << ": ";
    bool const nested = value.is_array() && !value.empty() &&
                        value.front().is_array();
    if (nested) {
      out << "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        out << "    " << value[i].dump() << (i + 1 < value.size() ? ",\n" : "\n");
      }
      out << "  ]";
    } else {
      out << value.dump();
    }
  }
  out << "\n}\n";
  return out.str();
}

}  // namespace

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot read " + path);
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(std::string const& path, std::string const& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << bytes;
  if (!out) {
    throw Error("write failed: " + path);
  }
}

FileKind peek_kind(std::string_view text, std::string const& source) {
  auto const j = parse_json(text, source);
  Reader r(j, source);
  auto const k = r.string(r.field(j, "", "kind"), "kind");
  if (k == "semigroup") {
    return FileKind::Semigroup;
  }
  if (k == "category") {
    return FileKind::Category;
  }
  if (k == "map") {
    return FileKind::Map;
  }
  r.fail("kind", "unknown kind \"" + k + "\"");
}

SemigroupFile parse_semigroup(std::string_view text, std::string const& source) {
  auto const j = parse_json(text, source);
  Reader r(j, source);
  expect_kind(r, "semigroup");
  SemigroupFile file;
  if (auto const* name = r.optional_field(j, "name")) {
    file.name = r.string(*name, "name");
  }
  auto const n = read_size(r);
  auto const& table = r.field(j, "", "table");
  if (!table.is_array()) {
    r.fail("table", "expected an array of rows");
  }
  if (table.size() != n) {
    r.fail("table", "expected " + std::to_string(n) + " rows, got " +
                        std::to_string(table.size()));
  }
  std::vector<Index> flat;
  for (std::size_t a = 0; a < n; ++a) {
    auto const path = "table[" + std::to_string(a) + "]";
    auto row = r.indices(table[a], path);
    check_length(r, row, n, path);
    check_range(r, row, n, path);
    flat.insert(flat.end(), row.begin(), row.end());
  }
  std::vector<std::string> labels;
  if (auto const* l = r.optional_field(j, "labels")) {
    labels = r.strings(*l, "labels");
    if (labels.size() != n) {
      r.fail("labels", "expected " + std::to_string(n) + " labels");
    }
  }
  file.e = r.indices(r.field(j, "", "E"), "E");
  check_range(r, file.e, n, "E");
  file.semigroup = FiniteSemigroup(n, std::move(flat), std::move(labels));
  return file;
}

CategoryFile parse_category(std::string_view text, std::string const& source) {
  auto const j = parse_json(text, source);
  Reader r(j, source);
  expect_kind(r, "category");
  CategoryFile file;
  if (auto const* name = r.optional_field(j, "name")) {
    file.name = r.string(*name, "name");
  }
  auto& d = file.data;
  d.n = read_size(r);
  auto const n = d.n;
  d.objects = r.indices(r.field(j, "", "objects"), "objects");
  check_range(r, d.objects, n, "objects");
  d.dom = r.indices(r.field(j, "", "dom"), "dom");
  check_length(r, d.dom, n, "dom");
  check_range(r, d.dom, n, "dom");
  d.ran = r.indices(r.field(j, "", "ran"), "ran");
  check_length(r, d.ran, n, "ran");
  check_range(r, d.ran, n, "ran");

  auto const& prod = r.field(j, "", "prod");
  if (!prod.is_array() || prod.size() != n) {
    r.fail("prod", "expected " + std::to_string(n) + " rows");
  }
  d.prod.assign(n * n, kUndefined);
  for (std::size_t a = 0; a < n; ++a) {
    auto const path = "prod[" + std::to_string(a) + "]";
    if (!prod[a].is_array() || prod[a].size() != n) {
      r.fail(path, "expected " + std::to_string(n) + " entries");
    }
    for (std::size_t b = 0; b < n; ++b) {
      auto const cell = path + "[" + std::to_string(b) + "]";
      if (prod[a][b].is_null()) {
        continue;
      }
      Index const x = r.index(prod[a][b], cell);
      if (x >= n) {
        r.fail(cell, "index " + std::to_string(x) + " out of range");
      }
      d.prod[a * n + b] = x;
    }
  }

  if (auto const* order = r.optional_field(j, "order")) {
    if (!order->is_array()) {
      r.fail("order", "expected an array of pairs");
    }
    Relation rel(n);
    for (std::size_t i = 0; i < order->size(); ++i) {
      auto const path = "order[" + std::to_string(i) + "]";
      auto pair = r.indices((*order)[i], path);
      check_length(r, pair, 2, path);
      check_range(r, pair, n, path);
      rel.set(pair[0], pair[1]);
    }
    d.order = std::move(rel);
  }
  if (auto const* inv = r.optional_field(j, "inv")) {
    auto v = r.indices(*inv, "inv");
    check_length(r, v, n, "inv");
    check_range(r, v, n, "inv");
    d.inv = std::move(v);
  }
  if (auto const* l = r.optional_field(j, "labels")) {
    d.labels = r.strings(*l, "labels");
    if (d.labels.size() != n) {
      r.fail("labels", "expected " + std::to_string(n) + " labels");
    }
  }
  return file;
}

MapFile parse_map(std::string_view text, std::string const& source) {
  auto const j = parse_json(text, source);
  Reader r(j, source);
  expect_kind(r, "map");
  MapFile file;
  file.from = r.string(r.field(j, "", "from"), "from");
  file.to = r.string(r.field(j, "", "to"), "to");
  file.values = r.indices(r.field(j, "", "values"), "values");
  return file;
}

std::string emit_semigroup(SemigroupFile const& file) {
  Json j;
  j["kind"] = "semigroup";
  if (!file.name.empty()) {
    j["name"] = file.name;
  }
  auto const& s = file.semigroup;
  j["n"] = s.size();
  Json table = Json::array();
  for (auto const& row : s.rows()) {
    table.push_back(row);
  }
  j["table"] = std::move(table);
  j["E"] = file.e;
  if (!s.labels().empty()) {
    j["labels"] = s.labels();
  }
  return dump(j);
}

std::string emit_category(CategoryFile const& file) {
  auto const& d = file.data;
  Json j;
  j["kind"] = "category";
  if (!file.name.empty()) {
    j["name"] = file.name;
  }
  j["n"] = d.n;
  j["objects"] = d.objects;
  j["dom"] = d.dom;
  j["ran"] = d.ran;
  Json prod = Json::array();
  for (std::size_t a = 0; a < d.n; ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < d.n; ++b) {
      Index const x = d.prod[a * d.n + b];
      if (x == kUndefined) {
        row.push_back(nullptr);
      } else {
        row.push_back(x);
      }
    }
    prod.push_back(std::move(row));
  }
  j["prod"] = std::move(prod);
  if (d.order) {
    Json pairs = Json::array();
    for (auto const& [a, b] : d.order->pairs()) {
      pairs.push_back({a, b});
    }
    j["order"] = std::move(pairs);
  }
  if (d.inv) {
    j["inv"] = *d.inv;
  }
  if (!d.labels.empty()) {
    j["labels"] = d.labels;
  }
  return dump(j);
}

std::string emit_map(MapFile const& file) {
  Json j;
  j["kind"] = "map";
  j["from"] = file.from;
  j["to"] = file.to;
  j["values"] = file.values;
  return dump(j);
}

bool VerificationReport::ok() const {
  for (auto const& o : outcomes) {
    if (!o.holds) {
      return false;
    }
  }
  return true;
}

Format parse_format(std::string const& name) {
  if (name == "text") {
    return Format::Text;
  }
  if (name == "json") {
    return Format::Json;
  }
  throw Error("unknown format '" + name + "'");
}

namespace {

std::string values_text(MapValues const& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? "," : "") + std::to_string(v[i]);
  }
  return out + "]";
}

std::string emit_text(VerificationReport const& r) {
  std::ostringstream out;
  out << "suite: " << r.suite << '\n';
  if (!r.structures.empty()) {
    out << "structures:";
    for (auto const& s : r.structures) {
      out << ' ' << s;
    }
    out << '\n';
  }
  if (r.budget) {
    out << "budget: " << *r.budget << '\n';
  }
  if (r.seed) {
    out << "seed: " << *r.seed << '\n';
  }
  if (!r.counts.empty()) {
    out << "counts:\n";
    for (auto const& [name, count] : r.counts) {
      out << "  " << name << ": " << count << '\n';
    }
  }
  if (!r.outcomes.empty()) {
    out << "assertions:\n";
    for (auto const& o : r.outcomes) {
      out << "  [" << (o.holds ? "ok" : "FAIL") << "] " << o.name;
      if (!o.detail.empty()) {
        out << " (" << o.detail << ')';
      }
      out << '\n';
    }
  }
  if (!r.counterexamples.empty()) {
    out << "counterexamples:\n";
    for (auto const& c : r.counterexamples) {
      out << "  " << c.assertion << ": " << values_text(c.values);
      if (!c.detail.empty()) {
        out << " (" << c.detail << ')';
      }
      out << '\n';
    }
  }
  if (r.wall_seconds) {
    std::ostringstream t;
    t << std::fixed << std::setprecision(3) << *r.wall_seconds;
    out << "wall-time: " << t.str() << "s\n";
  }
  out << "result: " << (r.ok() ? "ok" : "FAIL") << '\n';
  return out.str();
}

Json to_json(VerificationReport const& r) {
  Json j;
  j["suite"] = r.suite;
  j["structures"] = r.structures;
  j["budget"] = r.budget ? Json(*r.budget) : Json(nullptr);
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  Json counts = Json::array();
  for (auto const& [name, count] : r.counts) {
    counts.push_back({{"name", name}, {"count", count}});
  }
  j["counts"] = std::move(counts);
  Json outcomes = Json::array();
  for (auto const& o : r.outcomes) {
    outcomes.push_back({{"name", o.name}, {"holds", o.holds}, {"detail", o.detail}});
  }
  j["assertions"] = std::move(outcomes);
  Json ce = Json::array();
  for (auto const& c : r.counterexamples) {
    ce.push_back({{"assertion", c.assertion}, {"values", c.values}, {"detail", c.detail}});
  }
  j["counterexamples"] = std::move(ce);
  if (r.wall_seconds) {
    j["wall_seconds"] = *r.wall_seconds;
  }
  j["ok"] = r.ok();
  return j;
}

}  // namespace

std::string emit_report(VerificationReport const& report, Format format) {
  if (format == Format::Text) {
    return emit_text(report);
  }
  return to_json(report).dump(2) + "\n";
}

VerificationReport parse_report(std::string_view text) {
  auto const j = parse_json(text, "report");
  Reader rd(j, "report");
  VerificationReport r;
  r.suite = rd.string(rd.field(j, "", "suite"), "suite");
  r.structures = rd.strings(rd.field(j, "", "structures"), "structures");
  auto optional_u64 = [&](char const* key) -> std::optional<std::uint64_t> {
    auto const& v = rd.field(j, "", key);
    if (v.is_null()) {
      return std::nullopt;
    }
    if (!v.is_number_unsigned()) {
      rd.fail(key, "expected an unsigned integer or null");
    }
    return v.get<std::uint64_t>();
  };
  r.budget = optional_u64("budget");
  r.seed = optional_u64("seed");
  for (auto const& c : rd.field(j, "", "counts")) {
    r.counts.emplace_back(rd.string(rd.field(c, "counts", "name"), "counts.name"),
                          rd.field(c, "counts", "count").get<std::uint64_t>());
  }
  for (auto const& o : rd.field(j, "", "assertions")) {
    r.outcomes.push_back(
        {rd.string(rd.field(o, "assertions", "name"), "assertions.name"),
         rd.field(o, "assertions", "holds").get<bool>(),
         rd.string(rd.field(o, "assertions", "detail"), "assertions.detail")});
  }
  for (auto const& c : rd.field(j, "", "counterexamples")) {
    r.counterexamples.push_back(
        {rd.string(rd.field(c, "counterexamples", "assertion"),
                   "counterexamples.assertion"),
         rd.indices(rd.field(c, "counterexamples", "values"),
                    "counterexamples.values"),
         rd.string(rd.field(c, "counterexamples", "detail"),
                   "counterexamples.detail")});
  }
  if (auto const* w = rd.optional_field(j, "wall_seconds")) {
    r.wall_seconds = w->get<double>();
  }
  return r;
}

void append_sweep(VerificationReport& report, SweepReport const& sweep,
                  std::string const& prefix) {
  report.counts.emplace_back(prefix + "maps", sweep.maps);
  for (auto const& name : flag_names()) {
    auto it = sweep.flag_counts.find(name);
    if (it != sweep.flag_counts.end()) {
      report.counts.emplace_back(prefix + name, it->second);
    }
  }
  std::string const mode =
      sweep.exhaustive ? "exhaustive"
                       : "sampled, seed " + std::to_string(*sweep.seed);
  for (auto const& name : transfer_assertion_names()) {
    auto it = sweep.violations.find(name);
    if (it == sweep.violations.end()) {
      continue;
    }
    report.outcomes.push_back(
        {prefix + name, it->second == 0,
         std::to_string(it->second) + " violations over " +
             std::to_string(sweep.maps) + " maps, " + mode});
  }
  for (auto const& c : sweep.counterexamples) {
    report.counterexamples.push_back({prefix + c.assertion, c.values, ""});
  }
}

void append_closure(VerificationReport& report, ClosureReport const& closure,
                    std::string const& prefix) {
  report.counts.emplace_back(prefix + "pairs", closure.pairs);
  for (auto const& [name, counts] : closure.classes) {
    report.counts.emplace_back(prefix + name + " pairs", counts.first);
    report.outcomes.push_back(
        {prefix + name + " closed under composition", counts.second == 0,
         std::to_string(counts.second) + " violations over " +
             std::to_string(counts.first) + " pairs"});
  }
  for (auto const& c : closure.counterexamples) {
    report.counterexamples.push_back({prefix + c.assertion, c.values,
                                      "composite leaves the class"});
  }
  report.counts.emplace_back(prefix + "non-closure pairs searched",
                             closure.wedge_pairs_searched);
  for (auto const& w : closure.witnesses) {
    report.counterexamples.push_back(
        {prefix + "non-closure witness (" + w.kind + ")", w.first,
         "then " + values_text(w.second) + ", composite " +
             values_text(w.composite) + " fails (wedge1)"});
  }
}

}  // namespace esnkit::io
