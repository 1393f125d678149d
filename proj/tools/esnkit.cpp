// esnkit command-line driver. Exit status: 0 all assertions hold, 1 a
// counterexample or failed check, 2 usage or IO error.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "esnkit/arrows.hpp"
#include "esnkit/corpus.hpp"
#include "esnkit/esn.hpp"
#include "esnkit/io.hpp"
#include "esnkit/partial_map.hpp"
#include "esnkit/szendrei.hpp"

namespace fs = std::filesystem;
using namespace esnkit;

namespace {

struct Common {
  std::string format = "text";
  std::string out;
  std::uint64_t budget = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  unsigned threads = 0;
  bool timing = false;

  SweepConfig sweep() const {
    SweepConfig c;
    c.budget = budget;
    c.seed = seed;
    c.samples = samples;
    c.threads = threads;
    return c;
  }
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", common.out, "write the report (or structure) here");
}

void add_sweep_options(CLI::App* cmd, Common& common) {
  cmd->add_option("--budget", common.budget, "classification budget");
  cmd->add_option("--seed", common.seed, "sample instead of enumerating");
  cmd->add_option("--samples", common.samples, "sample size (default: budget)");
  cmd->add_option("--threads", common.threads, "worker threads (0 = all cores)");
  cmd->add_flag("--timing", common.timing, "include wall time in the report");
}

int finish(io::VerificationReport& report, Common const& common,
           std::chrono::steady_clock::time_point start) {
  if (common.timing) {
    report.wall_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  }
  auto const bytes = io::emit_report(report, io::parse_format(common.format));
  if (common.out.empty()) {
    std::cout << bytes;
  } else {
    io::write_file(common.out, bytes);
  }
  return report.ok() ? 0 : 1;
}

void add_verdict(io::VerificationReport& report, std::string name,
                 Verdict const& v) {
  report.outcomes.push_back(
      {std::move(name), !v.has_value(), v ? to_string(*v) : ""});
}

bool is_file(std::string const& where) {
  std::error_code ec;
  return fs::is_regular_file(where, ec);
}

// A corpus name or a structure file. Category files go through S(C).
EsnPair resolve_pair(std::string const& where) {
  if (!is_file(where)) {
    return corpus_pair(where);
  }
  auto const text = io::read_file(where);
  if (io::peek_kind(text, where) == io::FileKind::Category) {
    auto file = io::parse_category(text, where);
    auto c = validate_inductive_data(file.data);
    if (!c) {
      throw Error(where + ": " + to_string(c.failure()));
    }
    auto s = s_of(*c);
    if (!s) {
      throw Error(where + ": " + to_string(s.failure()));
    }
    auto name = file.name.empty() ? where : file.name;
    return make_esn_pair(name, std::move(s).value()).value();
  }
  auto file = io::parse_semigroup(text, where);
  if (auto f = check_associativity(file.semigroup.rows())) {
    throw Error(where + ": " + to_string(*f));
  }
  auto r = make_restriction(file.semigroup, file.e);
  if (!r) {
    throw Error(where + ": " + to_string(r.failure()));
  }
  auto name = file.name.empty() ? where : file.name;
  return make_esn_pair(name, std::move(r).value()).value();
}

InductiveCategory resolve_category(std::string const& where) {
  if (!is_file(where)) {
    for (auto const& name : category_names()) {
      if (name == where) {
        return corpus_category(where);
      }
    }
    return corpus_pair(where).category;
  }
  auto const text = io::read_file(where);
  if (io::peek_kind(text, where) == io::FileKind::Semigroup) {
    return resolve_pair(where).category;
  }
  auto c = validate_inductive_data(io::parse_category(text, where).data);
  if (!c) {
    throw Error(where + ": " + to_string(c.failure()));
  }
  return std::move(c).value();
}

std::string base_dir(std::string const& path) {
  return fs::path(path).parent_path().string();
}

// Map file endpoints are corpus names or paths relative to the map file.
std::string endpoint(std::string const& map_path, std::string const& name) {
  if (is_file(name)) {
    return name;
  }
  auto const relative = (fs::path(base_dir(map_path)) / name).string();
  return is_file(relative) ? relative : name;
}

// ---------------------------------------------------------------------------

int run_check(std::string const& in, Common const& common) {
  auto const start = std::chrono::steady_clock::now();
  auto const text = io::read_file(in);
  io::VerificationReport report;
  report.suite = "check";
  report.structures = {in};
  if (io::peek_kind(text, in) == io::FileKind::Semigroup) {
    auto file = io::parse_semigroup(text, in);
    auto const& s = file.semigroup;
    auto assoc = check_associativity(s.rows());
    add_verdict(report, "associative", assoc);
    if (assoc) {
      return finish(report, common, start);
    }
    report.counts.emplace_back("elements", s.size());
    report.counts.emplace_back("idempotents", s.idempotents().size());
    auto r = make_restriction(s, file.e);
    add_verdict(report, "restriction semigroup",
                r ? Verdict{} : Verdict{r.failure()});
    if (!r) {
      return finish(report, common, start);
    }
    add_verdict(report, "restriction invariants",
                check_restriction_invariants(*r));
    add_verdict(report, "(st)^+ = (st^+)^+, (st)^* = (s^*t)^*",
                check_plus_star_identities(*r));
    auto inv = check_inverse(s);
    report.counts.emplace_back("inverse", r->is_inverse() ? 1 : 0);
    if (!inv) {
      report.outcomes.push_back(
          {"inverse semigroup (informational)", true, to_string(inv.failure())});
    }
    auto c = c_of(*r);
    add_verdict(report, "C(S) inductive category",
                c ? Verdict{} : Verdict{c.failure()});
    if (c) {
      add_verdict(report, "category lemmas", check_category_lemmas(*c));
    }
  } else if (io::peek_kind(text, in) == io::FileKind::Category) {
    auto file = io::parse_category(text, in);
    report.counts.emplace_back("elements", file.data.n);
    auto c = validate_inductive_data(file.data);
    add_verdict(report, "inductive category",
                c ? Verdict{} : Verdict{c.failure()});
    if (c) {
      report.counts.emplace_back("objects", c->objects().size());
      report.counts.emplace_back("groupoid", c->is_groupoid() ? 1 : 0);
      add_verdict(report, "category lemmas", check_category_lemmas(*c));
    }
  } else {
    throw Error(in + ": check expects a semigroup or category file");
  }
  return finish(report, common, start);
}

int run_esn(std::string const& in, bool roundtrip, Common const& common) {
  auto const start = std::chrono::steady_clock::now();
  auto const text = io::read_file(in);
  io::VerificationReport report;
  report.suite = "esn";
  report.structures = {in};
  std::optional<std::string> structure;
  if (io::peek_kind(text, in) == io::FileKind::Semigroup) {
    auto pair = resolve_pair(in);
    report.counts.emplace_back("elements", pair.size());
    report.counts.emplace_back("objects", pair.category.objects().size());
    add_verdict(report, "cell identities",
                check_esn_cells(pair.semigroup, pair.category));
    if (roundtrip) {
      add_verdict(report, "S(C(S)) = S", roundtrip_semigroup(pair.semigroup));
    }
    if (pair.is_inverse()) {
      add_verdict(report, "C(S) groupoid, S(C(S)) inverse",
                  inverse_specialization(pair.semigroup));
    }
    structure = io::emit_category({pair.name, pair.category.data()});
  } else {
    auto c = resolve_category(in);
    auto s = s_of(c);
    add_verdict(report, "S(C) restriction semigroup",
                s ? Verdict{} : Verdict{s.failure()});
    if (s) {
      report.counts.emplace_back("elements", s->size());
      add_verdict(report, "cell identities", check_esn_cells(*s, c));
      if (roundtrip) {
        add_verdict(report, "C(S(C)) = C", roundtrip_category(c));
      }
      if (c.is_groupoid()) {
        add_verdict(report, "S(G) inverse", groupoid_gives_inverse(c));
      }
      structure = io::emit_semigroup(
          {"", s->base(), s->semilattice().members()});
    }
  }
  // --out receives the partner structure; the report goes to stdout.
  if (!common.out.empty() && structure) {
    io::write_file(common.out, *structure);
  }
  Common to_stdout = common;
  to_stdout.out.clear();
  return finish(report, to_stdout, start);
}

void szendrei_suite(io::VerificationReport& report, std::string const& label,
                    InductiveCategory const& g,
                    std::vector<std::pair<std::string, InductiveCategory>> const&
                        lifts_to,
                    bool formulas) {
  auto sz = build_sz(g);
  add_verdict(report, label + ": Sz(G) inductive groupoid",
              sz ? Verdict{} : Verdict{sz.failure()});
  if (!sz) {
    return;
  }
  report.counts.emplace_back(label + ": |Sz(G)|", sz->size());
  add_verdict(report, label + ": C(S(Sz)) = Sz", roundtrip_category(sz->category));
  add_verdict(report, label + ": lemma suites",
              check_category_lemmas(sz->category));
  if (formulas) {
    add_verdict(report, label + ": expansion formulas",
                check_sz_formulas(g, *sz));
  }
  auto const embed = iota(g, *sz);
  auto const iota_flags = classify_functor_map(g, sz->category, embed);
  report.outcomes.push_back(
      {label + ": iota is an ordered groupoid premorphism",
       iota_flags.ordered_groupoid_premorphism() == true, ""});
  for (auto const& [name, h] : lifts_to) {
    // Identity when H = G, otherwise the constant map onto H's first object.
    MapValues psi(g.size());
    bool const same = h.size() == g.size() && h.data() == g.data();
    for (Index x = 0; x < g.size(); ++x) {
      psi[x] = same ? x : h.objects().front();
    }
    auto lift = find_unique_lift(g, *sz, h, psi);
    add_verdict(report, label + ": unique lift of " + (same ? "identity" : "collapse to " + name),
                lift ? Verdict{} : Verdict{lift.failure()});
    if (lift) {
      report.counts.emplace_back(label + ": lift candidates to " + name,
                                 lift->candidates);
    }
  }
}

int run_szendrei(std::string const& in, bool formulas, std::string const& target,
                 Common const& common) {
  auto const start = std::chrono::steady_clock::now();
  auto g = resolve_category(in);
  if (!g.is_groupoid()) {
    throw Error(in + " is not an inductive groupoid");
  }
  io::VerificationReport report;
  report.suite = "szendrei";
  report.structures = {in};
  std::vector<std::pair<std::string, InductiveCategory>> lifts = {{in, g}};
  if (!target.empty()) {
    lifts.emplace_back(target, resolve_category(target));
    report.structures.push_back(target);
  }
  szendrei_suite(report, "G", g, lifts, formulas);
  return finish(report, common, start);
}

struct MapInput {
  EsnPair source;
  EsnPair target;
  MapValues values;
};

MapInput resolve_map(std::string const& in, std::string const& from,
                     std::string const& to, std::vector<Index> const& values) {
  if (!in.empty()) {
    auto file = io::parse_map(io::read_file(in), in);
    auto source = resolve_pair(endpoint(in, file.from));
    auto target = resolve_pair(endpoint(in, file.to));
    check_map_shape(source.size(), target.size(), file.values);
    return {std::move(source), std::move(target), std::move(file.values)};
  }
  if (from.empty() || to.empty()) {
    throw Error("give --in MAP or --from, --to and --values");
  }
  auto source = resolve_pair(from);
  auto target = resolve_pair(to);
  check_map_shape(source.size(), target.size(), values);
  return {std::move(source), std::move(target), values};
}

int run_classify(MapInput const& m, Common const& common) {
  auto const start = std::chrono::steady_clock::now();
  auto const c = classify(m.source, m.target, m.values);
  io::VerificationReport report;
  report.suite = "classify";
  report.structures = {m.source.name, m.target.name};
  auto const values = flag_values(c);
  for (auto const& name : flag_names()) {
    auto it = values.find(name);
    if (it != values.end()) {
      report.counts.emplace_back(name, it->second ? 1 : 0);
    }
  }
  for (auto const& a : transfer_assertions(m.source, m.target, m.values, c)) {
    if (a.applicable) {
      report.outcomes.push_back({a.name, a.holds, ""});
      if (!a.holds) {
        report.counterexamples.push_back({a.name, m.values, ""});
      }
    }
  }
  return finish(report, common, start);
}

int run_hasse(MapInput const& m, Common const& common) {
  auto const c = classify(m.source, m.target, m.values);
  auto const membership = hasse_membership(m.source, m.target, c);
  if (io::parse_format(common.format) == io::Format::Text) {
    auto const bytes = hasse_report(membership);
    if (common.out.empty()) {
      std::cout << bytes;
    } else {
      io::write_file(common.out, bytes);
    }
    return membership.inclusion_violations.empty() &&
                   membership.correspondence_violations.empty()
               ? 0
               : 1;
  }
  io::VerificationReport report;
  report.suite = "hasse";
  report.structures = {m.source.name, m.target.name};
  for (auto const* nodes :
       {&membership.semigroup_nodes, &membership.category_nodes}) {
    for (auto const& [name, member] : *nodes) {
      report.counts.emplace_back(name, member ? 1 : 0);
    }
  }
  for (auto const& v : membership.inclusion_violations) {
    report.outcomes.push_back({"inclusion " + v, false, ""});
  }
  for (auto const& v : membership.correspondence_violations) {
    report.outcomes.push_back({"correspondence " + v, false, ""});
  }
  return finish(report, common, std::chrono::steady_clock::now());
}

int run_enumerate(std::string const& from, std::string const& to,
                  std::string const& filter, std::uint64_t cap,
                  Common const& common) {
  auto const start = std::chrono::steady_clock::now();
  auto source = resolve_pair(from);
  auto target = resolve_pair(to);
  auto result = enumerate_maps(source, target, filter, cap, common.sweep());
  io::VerificationReport report;
  report.suite = "enumerate";
  report.structures = {source.name, target.name};
  report.budget = common.budget;
  report.seed = common.seed;
  if (!result) {
    add_verdict(report, "enumeration", result.failure());
    return finish(report, common, start);
  }
  report.counts.emplace_back("maps", result->summary.maps);
  for (auto const& name : flag_names()) {
    report.counts.emplace_back(name, result->summary.flag_counts.at(name));
  }
  for (auto const& [values, c] : result->matches) {
    (void)c;
    report.counterexamples.push_back(
        {filter.empty() ? "map" : filter, values, ""});
  }
  return finish(report, common, start);
}

int run_verify(std::string const& corpus, Common const& common) {
  auto const start = std::chrono::steady_clock::now();
  if (corpus != "default") {
    throw Error("unknown corpus '" + corpus + "'");
  }
  io::VerificationReport report;
  report.suite = "verify-theorems";
  report.budget = common.budget;
  report.seed = common.seed;
  auto const config = common.sweep();

  std::vector<std::pair<std::string, std::string>> sweeps = {
      {"i2", "i2"}, {"sl2", "sl2"}, {"i1", "i1"},   {"sl2", "i1"},
      {"i1", "sl2"}, {"z2", "z2"},  {"chain3", "sl2"}, {"i1", "i2"}};
  for (auto const& [from, to] : sweeps) {
    auto source = corpus_pair(from);
    auto target = corpus_pair(to);
    report.structures.push_back(from + "->" + to);
    auto sweep = transfer_sweep(source, target, config);
    if (!sweep) {
      add_verdict(report, from + "->" + to + " sweep", sweep.failure());
      continue;
    }
    io::append_sweep(report, *sweep, from + "->" + to + ": ");
  }

  std::vector<std::string> const ends = {"sl2", "i1"};
  for (auto const& a : ends) {
    for (auto const& b : ends) {
      for (auto const& c : ends) {
        auto closure = verify_composition_closure(
            corpus_pair(a), corpus_pair(b), corpus_pair(c), config);
        auto const prefix = a + "->" + b + "->" + c + ": ";
        if (!closure) {
          add_verdict(report, prefix + "closure", closure.failure());
          continue;
        }
        io::append_closure(report, *closure, prefix);
      }
    }
  }
  auto i2 = corpus_pair("i2");
  for (auto const* flag : {"strongWedgeR", "orderedWedgeR", "veeR"}) {
    auto closure = verify_filtered_closure(i2, flag, config);
    auto const prefix = std::string("i2 ") + flag + ": ";
    if (!closure) {
      add_verdict(report, prefix + "closure", closure.failure());
      continue;
    }
    io::append_closure(report, *closure, prefix);
  }

  auto const trivial = corpus_category("trivialg");
  szendrei_suite(report, "Z2", corpus_category("z2g"),
                 {{"z2g", corpus_category("z2g")}, {"trivialg", trivial}},
                 true);
  szendrei_suite(report, "C(I2)", corpus_category("c_i2"),
                 {{"c_i2", corpus_category("c_i2")}}, true);
  return finish(report, common, start);
}

int run_gen(std::string const& kind, std::size_t n, std::string const& corpus,
            Common const& common) {
  if (!corpus.empty()) {
    if (corpus != "default") {
      throw Error("unknown corpus '" + corpus + "'");
    }
    if (common.out.empty()) {
      throw Error("gen --corpus needs --out DIR");
    }
    fs::create_directories(common.out);
    for (auto const& entry : semigroup_corpus()) {
      io::write_file((fs::path(common.out) / (entry.name + ".semigroup.json")).string(),
                     io::emit_semigroup({entry.name, entry.semigroup, entry.e}));
    }
    for (auto const& name : category_names()) {
      io::write_file((fs::path(common.out) / (name + ".category.json")).string(),
                     io::emit_category({name, corpus_category(name).data()}));
    }
    return 0;
  }
  if (kind.empty() || n == 0) {
    throw Error("gen needs --kind and --n, or --corpus");
  }
  auto const monoid_kind = parse_monoid_kind(kind);
  auto m = build_monoid(monoid_kind, n);
  auto const name = monoid_kind_name(monoid_kind) + std::to_string(n);
  auto bytes = io::emit_semigroup({name, m.semigroup, m.partial_identities});
  if (common.out.empty()) {
    std::cout << bytes;
  } else {
    io::write_file(common.out, bytes);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restriction semigroups, inductive categories and premorphisms"};
  app.require_subcommand(1);

  Common common;
  common.budget = 0;
  std::string in;
  std::string from;
  std::string to;
  std::vector<Index> values;
  std::string filter;
  std::string corpus = "default";
  std::string target;
  std::string kind;
  std::size_t n = 0;
  std::uint64_t cap = 64;
  bool roundtrip = false;
  bool formulas = false;

  auto* check = app.add_subcommand("check", "validate a structure file");
  check->add_option("--in", in, "structure file")->required();
  add_common(check, common);

  auto* esn = app.add_subcommand("esn", "C(S) / S(C) and round trips");
  esn->add_option("--in", in, "structure file")->required();
  esn->add_flag("--roundtrip", roundtrip, "check both round trips");
  add_common(esn, common);

  auto* sz = app.add_subcommand("szendrei", "Szendrei expansion checks");
  sz->add_option("--in", in, "inductive groupoid (file or corpus name)")
      ->required();
  sz->add_flag("--check-formulas", formulas, "cross-check closed forms");
  sz->add_option("--target", target, "also lift the collapse onto this groupoid");
  add_common(sz, common);

  auto add_map_options = [&](CLI::App* cmd) {
    cmd->add_option("--in", in, "map file");
    cmd->add_option("--from", from, "source (file or corpus name)");
    cmd->add_option("--to", to, "target (file or corpus name)");
    cmd->add_option("--values", values, "map values");
    add_common(cmd, common);
  };
  auto* classify_cmd = app.add_subcommand("classify", "classify one map");
  add_map_options(classify_cmd);
  auto* hasse = app.add_subcommand("hasse", "arrow class membership");
  add_map_options(hasse);

  auto* enumerate = app.add_subcommand("enumerate", "enumerate and filter maps");
  enumerate->add_option("--from", from)->required();
  enumerate->add_option("--to", to)->required();
  enumerate->add_option("--filter", filter, "keep maps with this flag");
  enumerate->add_option("--cap", cap, "maximum maps listed");
  add_common(enumerate, common);
  add_sweep_options(enumerate, common);

  auto* verify = app.add_subcommand("verify-theorems", "full theorem suite");
  verify->add_option("--corpus", corpus, "corpus name");
  add_common(verify, common);
  add_sweep_options(verify, common);

  auto* gen = app.add_subcommand("gen", "emit fixture structures");
  gen->add_option("--kind", kind, "PT, PTstar or I");
  gen->add_option("--n", n, "ground set size");
  gen->add_option("--corpus", corpus, "write the whole corpus to --out DIR")
      ->default_str("");
  add_common(gen, common);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (common.budget == 0) {
      common.budget = default_budget();
    }
    if (*check) {
      return run_check(in, common);
    }
    if (*esn) {
      return run_esn(in, roundtrip, common);
    }
    if (*sz) {
      return run_szendrei(in, formulas, target, common);
    }
    if (*classify_cmd) {
      return run_classify(resolve_map(in, from, to, values), common);
    }
    if (*hasse) {
      return run_hasse(resolve_map(in, from, to, values), common);
    }
    if (*enumerate) {
      return run_enumerate(from, to, filter, cap, common);
    }
    if (*verify) {
      return run_verify(corpus, common);
    }
    if (*gen) {
      return run_gen(kind, n, gen->count("--corpus") ? corpus : "", common);
    }
  } catch (std::exception const& e) {
    std::cerr << "esnkit: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
