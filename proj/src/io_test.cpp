#include "doctest.h"
#include "esnkit/corpus.hpp"
#include "esnkit/io.hpp"

using namespace esnkit;
using namespace esnkit::io;

namespace {

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (ParseError const& e) {
    return e.what();
  }
  return "<no error>";
}

VerificationReport sample_report() {
  VerificationReport r;
  r.suite = "sample";
  r.structures = {"i2", "sl2"};
  r.budget = 1000;
  r.outcomes = {{"first", true, ""}, {"second", false, "3 violations"}};
  r.counts = {{"maps", 49}, {"veeR", 20}};
  r.counterexamples = {{"second", {0, 1, 6}, "d(x) != y"}};
  return r;
}

}  // namespace

TEST_CASE("semigroup files round trip") {
  for (auto const& entry : semigroup_corpus()) {
    CAPTURE(entry.name);
    SemigroupFile f{entry.name, entry.semigroup, entry.e};
    auto const text = emit_semigroup(f);
    CHECK(peek_kind(text, "x") == FileKind::Semigroup);
    auto const back = parse_semigroup(text, "x");
    CHECK(back == f);
    CHECK(emit_semigroup(back) == text);
  }
}

TEST_CASE("category files round trip, undefined cells included") {
  for (auto const& name : category_names()) {
    CAPTURE(name);
    CategoryFile f{name, corpus_category(name).data()};
    auto const text = emit_category(f);
    CHECK(peek_kind(text, "x") == FileKind::Category);
    auto const back = parse_category(text, "x");
    CHECK(back == f);
    CHECK(emit_category(back) == text);
    CHECK(validate_inductive_data(back.data).ok());
  }
  auto const text = emit_category({"c_i2", corpus_category("c_i2").data()});
  CHECK(text.find("null") != std::string::npos);
}

TEST_CASE("map files round trip") {
  MapFile f{"i2", "sl2", {0, 1, 1, 0, 0, 1, 0}};
  auto const text = emit_map(f);
  CHECK(peek_kind(text, "m") == FileKind::Map);
  CHECK(parse_map(text, "m") == f);
}

TEST_CASE("parse errors name the location") {
  SemigroupFile f{"sl2", corpus_semigroup("sl2").semigroup, {0, 1}};
  auto const text = emit_semigroup(f);

  auto const truncated = text.substr(0, text.size() / 2);
  auto const m1 = message_of([&] { parse_semigroup(truncated, "cut.json"); });
  CHECK(m1.find("cut.json") != std::string::npos);
  CHECK(m1.find("line") != std::string::npos);
  CHECK(m1.find("column") != std::string::npos);

  auto const m2 = message_of(
      [&] { parse_semigroup(R"({"kind":"semigroup","n":1,"E":[0]})", "s.json"); });
  CHECK(m2.find("missing field 'table'") != std::string::npos);

  auto const m3 = message_of([&] {
    parse_semigroup(R"({"kind":"semigroup","n":2,"table":[[0,1],[1,5]],"E":[0]})",
                    "s.json");
  });
  CHECK(m3.find("table[1]") != std::string::npos);

  auto const m4 = message_of([&] { parse_category(text, "s.json"); });
  CHECK(m4.find("kind") != std::string::npos);

  auto const m5 = message_of([&] { peek_kind(R"({"kind":"ring"})", "r.json"); });
  CHECK(m5.find("ring") != std::string::npos);

  CHECK_THROWS_AS(read_file("/nonexistent/file.json"), Error);
}

TEST_CASE("reports") {
  auto r = sample_report();
  CHECK_FALSE(r.ok());
  auto const json = emit_report(r, Format::Json);
  CHECK(parse_report(json) == r);
  CHECK(emit_report(r, Format::Json) == json);
  CHECK(json.find("wall_seconds") == std::string::npos);

  auto const text = emit_report(r, Format::Text);
  CHECK(text.find("suite: sample\n") == 0);
  CHECK(text.find("  [FAIL] second (3 violations)\n") != std::string::npos);
  CHECK(text.find("  second: [0,1,6] (d(x) != y)\n") != std::string::npos);
  CHECK(text.substr(text.size() - 13) == "result: FAIL\n");

  r.wall_seconds = 0.25;
  CHECK(parse_report(emit_report(r, Format::Json)) == r);
  CHECK(emit_report(r, Format::Text).find("wall-time: 0.250s") !=
        std::string::npos);

  CHECK(parse_format("json") == Format::Json);
  CHECK_THROWS_AS(parse_format("yaml"), Error);
}

TEST_CASE("sweep reports feed the verification report") {
  auto sl2 = corpus_pair("sl2");
  auto sweep = transfer_sweep(sl2, sl2, SweepConfig{}).value();
  VerificationReport r;
  r.suite = "t";
  append_sweep(r, sweep, "sl2.");
  CHECK(r.ok());
  CHECK_FALSE(r.counts.empty());
  CHECK(r.counts.front().first.rfind("sl2.", 0) == 0);
  CHECK_FALSE(r.outcomes.empty());
}
