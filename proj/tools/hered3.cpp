// Command-line front end. Exit codes: 0 colorable / ok, 1 not colorable (or
// fuzz failures), 2 class violation, 3 usage or parse error, 4 internal error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <random>

#include "hered3/io.hpp"
#include "hered3/patterns.hpp"
#include "hered3/pipeline.hpp"
#include "hered3/solver.hpp"
#include "hered3/testkit.hpp"
#include "hered3/twosat.hpp"

using json = nlohmann::ordered_json;
using namespace hered3;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotColorable = 1;
constexpr int kExitClassViolation = 2;
constexpr int kExitUsage = 3;
constexpr int kExitInternal = 4;

struct Common {
  std::string input = "-";
  std::string format = "auto";
  bool json = false;
  unsigned threads = 0;
};

json pattern_json(const PatternWitness& w, const std::vector<std::string>& labels) {
  json vs = json::array();
  for (VertexId v : w.vertices) vs.push_back(labels[index(v)]);
  return {{"kind", to_string(w.kind)}, {"vertices", vs}};
}

std::string pattern_text(const PatternWitness& w, const std::vector<std::string>& labels) {
  std::string s = to_string(w.kind) + ":";
  for (VertexId v : w.vertices) s += " " + labels[index(v)];
  return s;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json base_report(const std::string& command, const std::string& input) {
  return {{"command", command}, {"input", input}};
}

void print_warnings(const GraphDocument& doc) {
  for (const auto& w : doc.warnings) std::cerr << "warning: " << w << "\n";
}

// Random relabeling of g: vertex v of g becomes perm[v] of the result.
Graph relabel(const Graph& g, std::uint64_t seed) {
  std::vector<std::uint32_t> perm(g.id_bound());
  std::iota(perm.begin(), perm.end(), 0U);
  std::mt19937_64 rng(testkit::splitmix64(seed));
  std::shuffle(perm.begin(), perm.end(), rng);
  Graph h(g.id_bound());
  for (auto [a, b] : g.edges()) h.add_edge(vid(perm[index(a)]), vid(perm[index(b)]));
  return h;
}

int run_solve(const Common& c, bool witness, bool assume_class, std::optional<std::uint64_t> seed_irrelevant,
              bool exhaustive, bool paranoid) {
  const GraphDocument doc = read_graph_file(c.input, parse_format_name(c.format));
  print_warnings(doc);
  if (doc.has_palettes) throw InputError("solve takes plain graphs; palette annotations are only read by count-colorings");
  json report = base_report("solve", c.input);
  SolveOptions opts;
  opts.witness = witness;
  opts.assume_class = assume_class;
  opts.exhaustive = exhaustive;
  opts.paranoid = paranoid;
  opts.threads = c.threads;
  SolveReport r;
  try {
    r = solve(doc.graph, opts);
  } catch (const ClassViolation& e) {
    if (c.json) {
      report["decision"] = "class_violation";
      report["class_witness"] = pattern_json(e.witness(), doc.labels);
      emit(report);
    } else {
      std::cout << "s class_violation\nc witness " << pattern_text(e.witness(), doc.labels) << "\n";
    }
    return kExitClassViolation;
  }
  if (seed_irrelevant) {
    // Same input under a seeded relabeling must get the same decision.
    const SolveReport again = solve(relabel(doc.graph, *seed_irrelevant), [&] {
      SolveOptions o = opts;
      o.witness = false;
      return o;
    }());
    if (again.colorable != r.colorable) {
      throw std::logic_error("decision changed under relabeling with seed " + std::to_string(*seed_irrelevant));
    }
  }
  const std::string decision = r.colorable ? "colorable" : "not_colorable";
  if (c.json) {
    report["decision"] = decision;
    if (witness && r.witness) {
      json w = json::array();
      for (VertexId v : doc.graph.vertices()) w.push_back({{"vertex", doc.labels[index(v)]}, {"color", (*r.witness)[index(v)]}});
      report["witness"] = w;
    }
    if (r.obstruction) report["obstruction"] = pattern_json(*r.obstruction, doc.labels);
    report["stats"] = {{"branches", r.stats.branches},
                       {"reductions", r.stats.reductions},
                       {"millis", r.stats.millis},
                       {"components", r.stats.components},
                       {"n0_colorings", r.stats.n0_colorings},
                       {"rejected", r.stats.rejected},
                       {"telemetry", r.stats.telemetry.counters}};
    if (seed_irrelevant) report["relabel_seed"] = *seed_irrelevant;
    emit(report);
  } else {
    std::cout << "s " << decision << "\n";
    if (r.obstruction) std::cout << "c obstruction " << pattern_text(*r.obstruction, doc.labels) << "\n";
    std::cout << "c branches " << r.stats.branches << " reductions " << r.stats.reductions << " millis "
              << r.stats.millis << "\n";
    if (witness && r.colorable && !r.witness) std::cout << "c witness unavailable (exact colorer budget exceeded)\n";
    if (witness && r.witness) {
      for (VertexId v : doc.graph.vertices()) std::cout << "v " << doc.labels[index(v)] << " " << (*r.witness)[index(v)] << "\n";
    }
  }
  return r.colorable ? kExitOk : kExitNotColorable;
}

int run_check_class(const Common& c) {
  const GraphDocument doc = read_graph_file(c.input, parse_format_name(c.format));
  print_warnings(doc);
  const auto w = check_class(doc.graph);
  if (c.json) {
    json report = base_report("check-class", c.input);
    report["decision"] = w ? "class_violation" : "in_class";
    if (w) report["class_witness"] = pattern_json(*w, doc.labels);
    emit(report);
  } else if (w) {
    std::cout << "s class_violation\nc witness " << pattern_text(*w, doc.labels) << "\n";
  } else {
    std::cout << "s in_class\n";
  }
  return w ? kExitClassViolation : kExitOk;
}

int run_count(const Common& c) {
  const GraphDocument doc = read_graph_file(c.input, parse_format_name(c.format));
  print_warnings(doc);
  const std::uint64_t n = testkit::count_list_3colorings(doc.graph, doc.palettes);
  if (c.json) {
    json report = base_report("count-colorings", c.input);
    report["decision"] = n > 0 ? "colorable" : "not_colorable";
    report["count"] = n;
    emit(report);
  } else {
    std::cout << n << "\n";
  }
  return n > 0 ? kExitOk : kExitNotColorable;
}

int run_two_sat(const Common& c, const std::string& cnf_path) {
  const GraphDocument doc = read_graph_file(c.input, parse_format_name(c.format));
  print_warnings(doc);
  VertexSet all = doc.graph.vertices();
  for (VertexId v : all) {
    if (doc.palettes[index(v)].size() != 2) {
      throw InputError("two-sat needs a two-color palette on every vertex; " + doc.labels[index(v)] + " has " +
                       doc.palettes[index(v)].to_string());
    }
  }
  auto [formula, vars] = encode_two_palette_subgraph(doc.graph, doc.palettes, all);
  if (!cnf_path.empty()) {
    std::ofstream out(cnf_path);
    if (!out) throw InputError("cannot write '" + cnf_path + "'");
    out << to_dimacs(formula);
  }
  const auto model = solve(formula);
  if (c.json) {
    json report = base_report("two-sat", c.input);
    report["decision"] = model ? "colorable" : "not_colorable";
    emit(report);
  } else {
    std::cout << "s " << (model ? "colorable" : "not_colorable") << "\n";
  }
  return model ? kExitOk : kExitNotColorable;
}

struct GenerateArgs {
  std::string kind = "er";
  std::size_t n = 10;
  double p = 0.25;
  std::string name;
  std::uint64_t seed = 1;
  std::string out_format = "dimacs";
};

int run_generate(const GenerateArgs& a) {
  testkit::GeneratorSpec spec;
  spec.kind = testkit::parse_generator_kind(a.kind);
  spec.n = a.n;
  spec.p = a.p;
  spec.name = a.name;
  spec.seed = a.seed;
  const Graph g = testkit::generate(spec);
  const GraphFormat f = parse_format_name(a.out_format);
  std::cout << (f == GraphFormat::kEdgeList ? write_edge_list(g) : write_dimacs(g));
  return kExitOk;
}

struct FuzzArgs {
  std::uint64_t budget = 1000;
  std::uint64_t seed = 1;
  std::string sizes = "8..16";
  std::string kind = "er";
  std::vector<double> probabilities{0.15, 0.25, 0.4};
  std::string save_dir;
  bool exhaustive = false;
};

std::pair<std::size_t, std::size_t> parse_sizes(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const std::size_t n = std::stoul(s);
      return {n, n};
    }
    return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw InputError("--sizes expects N or MIN..MAX, got '" + s + "'");
  }
}

int run_fuzz(const Common& c, const FuzzArgs& a) {
  testkit::FuzzOptions o;
  o.budget = a.budget;
  o.seed = a.seed;
  std::tie(o.min_n, o.max_n) = parse_sizes(a.sizes);
  o.kind = testkit::parse_generator_kind(a.kind);
  o.probabilities = a.probabilities;
  o.threads = c.threads;
  o.solve.exhaustive = a.exhaustive;
  const testkit::FuzzReport r = testkit::differential_fuzz(o);
  if (!a.save_dir.empty()) {
    for (const auto& m : r.mismatches) {
      std::ofstream out(a.save_dir + "/mismatch-" + std::to_string(m.index) + ".edges");
      out << "# seed " << m.seed << " oracle " << m.expected << " solver " << m.got << ": " << m.detail << "\n";
      out << write_edge_list(m.graph);
    }
  }
  const bool ok = r.mismatches.empty();
  if (c.json) {
    json report = base_report("fuzz", a.kind);
    report["decision"] = ok ? "ok" : "mismatch";
    report["stats"] = {{"generated", r.generated},
                       {"in_class", r.in_class},
                       {"colorable", r.colorable},
                       {"witness_checks", r.witness_checks},
                       {"witness_failures", r.witness_failures},
                       {"errors", r.errors},
                       {"mismatches", r.mismatches.size()},
                       {"telemetry", r.telemetry.counters}};
    json mm = json::array();
    for (const auto& m : r.mismatches) mm.push_back({{"index", m.index}, {"seed", m.seed}, {"detail", m.detail}});
    report["mismatches"] = mm;
    emit(report);
  } else {
    std::cout << "generated " << r.generated << " in_class " << r.in_class << " colorable " << r.colorable
              << " witness_checks " << r.witness_checks << " mismatches " << r.mismatches.size() << "\n";
    for (const auto& m : r.mismatches) {
      std::cout << "mismatch " << m.index << " seed " << m.seed << ": " << m.detail << "\n";
    }
  }
  return ok ? kExitOk : kExitNotColorable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3-coloring for (2P4, C5)-free graphs"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool with_input) {
    if (with_input) {
      sub->add_option("input", common.input, "Graph file, '-' for stdin")->capture_default_str();
      sub->add_option("--format", common.format, "auto, dimacs or edges")->capture_default_str();
    }
    sub->add_flag("--json", common.json, "JSON report on stdout");
    sub->add_option("--threads", common.threads, "Worker threads (default: HERED3_THREADS or 1)");
  };

  bool witness = false;
  bool assume_class = false;
  bool exhaustive = false;
  bool paranoid = false;
  std::optional<std::uint64_t> seed_irrelevant;
  auto* solve_cmd = app.add_subcommand("solve", "Decide 3-colorability");
  add_common(solve_cmd, true);
  solve_cmd->add_flag("--witness", witness, "Print a coloring when colorable");
  solve_cmd->add_flag("--assume-class", assume_class, "Skip the (2P4, C5)-freeness check");
  solve_cmd->add_option("--seed-irrelevant", seed_irrelevant,
                        "Also solve a relabeling drawn from this seed and require the same decision");
  solve_cmd->add_flag("--exhaustive", exhaustive, "Explore every branch");
  solve_cmd->add_flag("--paranoid", paranoid, "Extra structural self-checks");

  auto* check_cmd = app.add_subcommand("check-class", "Check (2P4, C5)-freeness");
  add_common(check_cmd, true);

  auto* count_cmd = app.add_subcommand("count-colorings", "Count proper (list) 3-colorings by brute force");
  add_common(count_cmd, true);

  std::string cnf_path;
  auto* twosat_cmd = app.add_subcommand("two-sat", "List coloring with two-color palettes via 2-SAT");
  add_common(twosat_cmd, true);
  twosat_cmd->add_option("--export-cnf", cnf_path, "Write the formula in DIMACS CNF");

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a graph");
  gen_cmd->add_option("--kind", gen.kind, "er, c7, c9, composite or named")->capture_default_str();
  gen_cmd->add_option("-n,--vertices", gen.n, "Vertex count")->capture_default_str();
  gen_cmd->add_option("-p,--probability", gen.p, "Edge probability (er)")->capture_default_str();
  gen_cmd->add_option("--name", gen.name, "Catalog name (named)");
  gen_cmd->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  gen_cmd->add_option("--out-format", gen.out_format, "dimacs or edges")->capture_default_str();

  FuzzArgs fz;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Differential test against the brute-force oracle");
  add_common(fuzz_cmd, false);
  fuzz_cmd->add_option("--budget", fz.budget, "Cases to generate")->capture_default_str();
  fuzz_cmd->add_option("--seed", fz.seed, "Seed")->capture_default_str();
  fuzz_cmd->add_option("--sizes", fz.sizes, "N or MIN..MAX")->capture_default_str();
  fuzz_cmd->add_option("--kind", fz.kind, "er, c7, c9 or composite")->capture_default_str();
  fuzz_cmd->add_option("--probabilities", fz.probabilities, "Edge probabilities (er)");
  fuzz_cmd->add_option("--save-mismatches", fz.save_dir, "Directory for failing graphs as edge lists");
  fuzz_cmd->add_flag("--exhaustive", fz.exhaustive, "Explore every branch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(common, witness, assume_class, seed_irrelevant, exhaustive, paranoid);
    if (*check_cmd) return run_check_class(common);
    if (*count_cmd) return run_count(common);
    if (*twosat_cmd) return run_two_sat(common, cnf_path);
    if (*gen_cmd) return run_generate(gen);
    if (*fuzz_cmd) return run_fuzz(common, fz);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
