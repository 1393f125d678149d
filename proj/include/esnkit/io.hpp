#pragma once

// JSON structure files and verification reports.
//
//   semigroup: {"kind":"semigroup","name":?, "n", "table":[[..]], "E":[..], "labels":?}
//   category:  {"kind":"category","name":?, "n", "objects", "dom", "ran",
//               "prod":[[..|null]], "order":[[a,b],..], "inv":?, "labels":?}
//   map:       {"kind":"map","from","to","values":[..]}

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esnkit/arrows.hpp"
#include "esnkit/category.hpp"
#include "esnkit/semigroup.hpp"

namespace esnkit::io {

// Malformed file: bad JSON, missing or mistyped field. The message names
// the source and the location (line/column or field path).
class ParseError : public Error {
 public:
  using Error::Error;
};

enum class FileKind { Semigroup, Category, Map };

struct SemigroupFile {
  std::string name;
  FiniteSemigroup semigroup;
  std::vector<Index> e;

  bool operator==(SemigroupFile const&) const = default;
};

struct CategoryFile {
  std::string name;
  CategoryData data;

  bool operator==(CategoryFile const&) const = default;
};

struct MapFile {
  std::string from;
  std::string to;
  MapValues values;

  bool operator==(MapFile const&) const = default;
};

std::string read_file(std::string const& path);
void write_file(std::string const& path, std::string const& bytes);

FileKind peek_kind(std::string_view text, std::string const& source);

SemigroupFile parse_semigroup(std::string_view text, std::string const& source);
CategoryFile parse_category(std::string_view text, std::string const& source);
MapFile parse_map(std::string_view text, std::string const& source);

std::string emit_semigroup(SemigroupFile const& file);
std::string emit_category(CategoryFile const& file);
std::string emit_map(MapFile const& file);

struct Outcome {
  std::string name;
  bool holds = true;
  std::string detail;

  bool operator==(Outcome const&) const = default;
};

struct Counterexample {
  std::string assertion;
  MapValues values;
  std::string detail;

  bool operator==(Counterexample const&) const = default;
};

struct VerificationReport {
  std::string suite;
  std::vector<std::string> structures;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> seed;
  std::vector<Outcome> outcomes;
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::vector<Counterexample> counterexamples;
  // Left out of the emitted bytes unless set.
  std::optional<double> wall_seconds;

  bool ok() const;
  bool operator==(VerificationReport const&) const = default;
};

enum class Format { Text, Json };
Format parse_format(std::string const& name);

std::string emit_report(VerificationReport const& report, Format format);
VerificationReport parse_report(std::string_view json);

// Appends a sweep's flag counts, per-assertion outcomes and counterexamples,
// prefixing count names with `prefix`.
void append_sweep(VerificationReport& report, SweepReport const& sweep,
                  std::string const& prefix);
void append_closure(VerificationReport& report, ClosureReport const& closure,
                    std::string const& prefix);

}  // namespace esnkit::io
