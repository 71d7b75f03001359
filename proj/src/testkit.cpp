#include "hered3/testkit.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "hered3/patterns.hpp"

namespace hered3::testkit {

namespace {

struct Backtrack {
  const Graph& g;
  std::vector<VertexId> order;
  std::vector<std::uint8_t> left;  // by id, color bits
  Coloring col;

  bool run(std::size_t i) {
    if (i == order.size()) return true;
    const VertexId v = order[i];
    for (Color c = 1; c <= 3; ++c) {
      const std::uint8_t b = static_cast<std::uint8_t>(1U << (c - 1));
      if ((left[index(v)] & b) == 0) continue;
      std::vector<VertexId> touched;
      bool dead = false;
      for (VertexId w : g.neighbors(v)) {
        if (col[index(w)] != kNoColor || (left[index(w)] & b) == 0) continue;
        left[index(w)] = static_cast<std::uint8_t>(left[index(w)] & ~b);
        touched.push_back(w);
        dead = dead || left[index(w)] == 0;
      }
      col[index(v)] = c;
      if (!dead && run(i + 1)) return true;
      col[index(v)] = kNoColor;
      for (VertexId w : touched) left[index(w)] = static_cast<std::uint8_t>(left[index(w)] | b);
    }
    return false;
  }
};

void count_rec(const Graph& g, const PaletteMap& pal, const std::vector<VertexId>& order, std::size_t i, Coloring& col,
               std::uint64_t& total) {
  if (i == order.size()) {
    ++total;
    return;
  }
  const VertexId v = order[i];
  for (Color c = 1; c <= 3; ++c) {
    bool ok = index(v) >= pal.size() || pal[index(v)].contains(c);
    for (VertexId w : g.neighbors(v)) ok = ok && col[index(w)] != c;
    if (!ok) continue;
    col[index(v)] = c;
    count_rec(g, pal, order, i + 1, col, total);
    col[index(v)] = kNoColor;
  }
}

double uniform(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

bool gadget_ok(const Graph& g, bool c7_free) {
  if (check_class(g)) return false;
  if (find_k4_or_odd_neighborhood(g)) return false;
  return !c7_free || !find_induced_cycle(g, 7);
}

// Masks relative to a pair {v0, v2} that keep a vertex adjacent to an
// {v0, v2}-vertex free of induced C5.
const std::vector<std::vector<std::uint32_t>> kDirectedMasks{{1}, {3}, {6}, {1, 3}, {6, 1}, {5, 0}, {2, 4}, {0, 2}};

// Small C7-anchored graphs found by search, each reaching one stage under
// exhaustive solving: Ri branching, Si branching, a cut on a single-vertex
// N2(x), the pendant, collapse and forced cases of an edge N2(x).
const char* const kTemplates[] = {
    "0-1 0-6 0-11 0-15 1-2 1-7 2-3 2-15 3-4 4-5 5-6 5-11 7-8 7-9 7-10 7-11 7-13 7-15 8-11 8-15 11-12 11-13 11-14 "
    "12-14",
    "0-1 0-6 1-2 1-7 1-8 1-12 1-15 2-3 3-4 3-12 3-15 4-5 5-6 6-8 7-8 7-10 8-9 8-10 8-11 8-13 8-14 9-12 9-14 11-13 "
    "12-14",
    "0-1 0-6 0-14 1-2 1-7 1-10 2-3 3-4 4-5 5-6 5-14 6-7 7-8 7-9 7-13 7-15 8-12 8-13 9-12 9-13 10-11 10-14 12-13 "
    "12-14 12-15",
    "0-1 0-6 0-7 0-8 1-2 1-10 2-3 2-7 3-4 3-10 4-5 5-6 5-8 7-9 7-10 7-11 7-13 7-14 9-11 9-12 9-13 9-14 9-15 9-16 "
    "10-11 10-12 10-13 10-14 10-15 10-16 12-15",
    "0-1 0-6 0-7 0-8 0-10 0-11 0-14 0-15 0-16 0-17 1-2 2-3 2-7 2-8 2-11 2-14 2-17 3-4 4-5 5-6 5-10 5-15 5-16 7-9 "
    "7-12 7-16 8-9 8-12 8-15 9-12 10-11 11-15 11-16 12-13 14-15 14-16 14-17",
    "0-1 0-6 0-7 0-12 1-2 1-14 2-3 2-7 2-8 2-12 2-15 3-4 4-5 4-8 4-15 5-6 6-14 7-9 7-10 7-13 7-14 8-12 9-10 9-11 "
    "9-12 10-11 10-13 10-14 11-13 11-14 12-13",
};

Graph parse_template(const char* text) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> es;
  std::uint32_t n = 0;
  for (const char* p = text; *p != 0;) {
    char* end = nullptr;
    const auto a = static_cast<std::uint32_t>(std::strtoul(p, &end, 10));
    const auto b = static_cast<std::uint32_t>(std::strtoul(end + 1, &end, 10));
    es.emplace_back(a, b);
    n = std::max({n, a + 1, b + 1});
    p = end;
    while (*p == ' ') ++p;
  }
  Graph g(n);
  for (auto [a, b] : es) g.add_edge(vid(a), vid(b));
  return g;
}

bool try_add(Graph& g, const VertexSet& nbrs, bool c7_free) {
  if (nbrs.empty()) return false;
  Graph h = g;
  const VertexId v = h.add_vertex();
  for (VertexId w : nbrs) h.add_edge(v, w);
  if (!gadget_ok(h, c7_free)) return false;
  g = std::move(h);
  return true;
}

Graph grow_gadget(std::size_t k, std::size_t n, std::mt19937_64& rng) {
  Graph g = make_cycle(k);
  const double q = 0.2 + 0.4 * uniform(rng);
  std::size_t attempts = 0;
  while (g.vertex_count() < n && attempts < 40 * n) {
    ++attempts;
    VertexSet nbrs;
    const std::size_t i = pick(rng, k);
    switch (pick(rng, k == 7 ? 3 : 4)) {
      case 0:
        nbrs.push_back(vid(static_cast<std::uint32_t>(i)));
        break;
      case 1:
        nbrs.push_back(vid(static_cast<std::uint32_t>(i)));
        nbrs.push_back(vid(static_cast<std::uint32_t>((i + 2) % k)));
        break;
      case 3:
        for (std::size_t j = 0; j < k; ++j) {
          if (uniform(rng) < 0.3) nbrs.push_back(vid(static_cast<std::uint32_t>(j)));
        }
        break;
      default:
        break;
    }
    for (std::uint32_t w = static_cast<std::uint32_t>(k); w < g.id_bound(); ++w) {
      if (uniform(rng) < q) nbrs.push_back(vid(w));
    }
    try_add(g, nbrs, k == 9);
  }
  return g;
}

// Growth around vertices seeing v0 and v2, the shape that survives Ri and Si
// elimination, plus top-component vertices and C5-safe helpers.
Graph grow_directed(std::size_t n, std::mt19937_64& rng) {
  Graph g = make_cycle(7);
  const double q = 0.4 + 0.3 * uniform(rng);
  std::size_t attempts = 0;
  while (g.vertex_count() < n && attempts < 40 * n) {
    ++attempts;
    VertexSet nbrs;
    const double t = uniform(rng);
    if (t < 0.25) {
      nbrs = {vid(0), vid(2)};
    } else if (t >= 0.7) {
      for (std::uint32_t j : kDirectedMasks[pick(rng, kDirectedMasks.size())]) nbrs.push_back(vid(j));
    }
    for (std::uint32_t w = 7; w < g.id_bound(); ++w) {
      if (uniform(rng) < q) nbrs.push_back(vid(w));
    }
    try_add(g, make_set(nbrs), false);
  }
  return g;
}

Graph c7_gadget(std::size_t n, std::mt19937_64& rng) {
  const double mode = uniform(rng);
  if (mode < 0.1) {
    const std::size_t t = pick(rng, std::size(kTemplates));
    Graph g = parse_template(kTemplates[t]);
    if (g.vertex_count() <= std::max<std::size_t>(n, 20)) return g;
  }
  if (mode < 0.55) return grow_directed(n, rng);
  return grow_gadget(7, n, rng);
}

// Disjoint union of complete bipartite pieces on `ids`.
void bipartite_cograph(Graph& g, const std::vector<VertexId>& ids, std::mt19937_64& rng) {
  std::size_t i = 0;
  while (i < ids.size()) {
    const std::size_t len = std::min(ids.size() - i, 1 + pick(rng, 6));
    const std::size_t split = len == 1 ? 1 : 1 + pick(rng, len - 1);
    for (std::size_t a = i; a < i + split; ++a) {
      for (std::size_t b = i + split; b < i + len; ++b) g.add_edge(ids[a], ids[b]);
    }
    i += len;
  }
}

Graph composite(std::size_t n, std::mt19937_64& rng) {
  if (n < 7) throw InputError("cograph composite needs at least 7 vertices");
  Graph g(n);
  std::vector<std::vector<VertexId>> modules(7);
  for (std::uint32_t i = 0; i < 7; ++i) modules[i].push_back(vid(i));
  for (std::uint32_t v = 7; v < n; ++v) modules[pick(rng, 7)].push_back(vid(v));
  bipartite_cograph(g, modules[0], rng);
  bipartite_cograph(g, modules[2], rng);
  for (std::size_t i = 0; i < 7; ++i) {
    for (VertexId a : modules[i]) {
      for (VertexId b : modules[(i + 1) % 7]) g.add_edge(a, b);
    }
  }
  return g;
}

}  // namespace

std::optional<Coloring> oracle_list3color(const Graph& g, const PaletteMap& palettes) {
  Backtrack bt{g, g.vertices(), std::vector<std::uint8_t>(g.id_bound(), 0), Coloring(g.id_bound(), kNoColor)};
  for (VertexId v : bt.order) {
    bt.left[index(v)] = static_cast<std::uint8_t>(index(v) < palettes.size() ? palettes[index(v)].bits() : 0b111U);
    if (bt.left[index(v)] == 0) return std::nullopt;
  }
  if (!bt.run(0)) return std::nullopt;
  return bt.col;
}

std::optional<Coloring> oracle_3color(const Graph& g) { return oracle_list3color(g, PaletteMap(g.id_bound(), Palette::full())); }

std::uint64_t count_proper_3colorings(const Graph& g) { return count_list_3colorings(g, {}); }

std::uint64_t count_list_3colorings(const Graph& g, const PaletteMap& palettes) {
  Coloring col(g.id_bound(), kNoColor);
  std::uint64_t total = 0;
  count_rec(g, palettes, g.vertices(), 0, col, total);
  return total;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) { return splitmix64(splitmix64(base) ^ index); }

std::size_t c7_template_count() { return std::size(kTemplates); }

Graph c7_template(std::size_t i) {
  if (i >= std::size(kTemplates)) throw InputError("no C7 template " + std::to_string(i));
  return parse_template(kTemplates[i]);
}

Graph named_graph(const std::string& name) {
  if (name == "k4") return make_complete(4);
  if (name == "k3") return make_complete(3);
  if (name == "c5") return make_cycle(5);
  if (name == "c7") return make_cycle(7);
  if (name == "c9") return make_cycle(9);
  if (name == "co-c7") return make_complement(make_cycle(7));
  if (name == "petersen") return make_petersen();
  if (name == "p4") return make_path(4);
  if (name == "2p4") return disjoint_union(make_path(4), make_path(4));
  if (name == "empty") return Graph();
  throw InputError("unknown named graph '" + name + "'");
}

Graph generate(const GeneratorSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  switch (spec.kind) {
    case GeneratorKind::kErdosRenyi: {
      Graph g(spec.n);
      for (std::uint32_t a = 0; a < spec.n; ++a) {
        for (std::uint32_t b = a + 1; b < spec.n; ++b) {
          if (uniform(rng) < spec.p) g.add_edge(vid(a), vid(b));
        }
      }
      return g;
    }
    case GeneratorKind::kC7Gadget:
      return c7_gadget(std::max<std::size_t>(spec.n, 7), rng);
    case GeneratorKind::kC9Gadget:
      return grow_gadget(9, std::max<std::size_t>(spec.n, 9), rng);
    case GeneratorKind::kCographComposite:
      return composite(spec.n, rng);
    case GeneratorKind::kNamed:
      return named_graph(spec.name);
  }
  throw InputError("unknown generator");
}

GeneratorKind parse_generator_kind(const std::string& s) {
  if (s == "er") return GeneratorKind::kErdosRenyi;
  if (s == "c7") return GeneratorKind::kC7Gadget;
  if (s == "c9") return GeneratorKind::kC9Gadget;
  if (s == "composite") return GeneratorKind::kCographComposite;
  if (s == "named") return GeneratorKind::kNamed;
  throw InputError("unknown generator kind '" + s + "' (expected er, c7, c9, composite or named)");
}

std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::kErdosRenyi: return "er";
    case GeneratorKind::kC7Gadget: return "c7";
    case GeneratorKind::kC9Gadget: return "c9";
    case GeneratorKind::kCographComposite: return "composite";
    case GeneratorKind::kNamed: return "named";
  }
  return "?";
}

namespace {

struct CaseResult {
  bool in_class = false;
  bool colorable = false;
  bool witness_checked = false;
  bool witness_failed = false;
  bool error = false;
  std::optional<Mismatch> mismatch;
  Telemetry telemetry;
};

CaseResult run_case(const FuzzOptions& opts, std::uint64_t i) {
  CaseResult r;
  const std::uint64_t seed = derive_seed(opts.seed, i);
  std::mt19937_64 rng(seed);
  GeneratorSpec spec;
  spec.kind = opts.kind;
  spec.n = opts.min_n + pick(rng, opts.max_n - opts.min_n + 1);
  spec.p = opts.probabilities.empty() ? 0.25 : opts.probabilities[pick(rng, opts.probabilities.size())];
  spec.seed = splitmix64(seed);
  const Graph g = generate(spec);
  if (check_class(g)) return r;
  r.in_class = true;
  const bool expected = oracle_3color(g).has_value();
  r.colorable = expected;
  auto fail = [&](bool got, std::string detail) {
    r.mismatch = Mismatch{i, seed, g, expected, got, std::move(detail)};
  };
  try {
    SolveOptions so = opts.solve;
    so.assume_class = true;
    so.threads = 1;
    const SolveReport rep = solve(g, so);
    r.telemetry = rep.stats.telemetry;
    if (rep.colorable != expected) {
      fail(rep.colorable, "decision differs from the oracle");
    } else if (rep.colorable && so.witness && rep.witness) {
      r.witness_checked = true;
      if (!is_proper_coloring(g, *rep.witness)) {
        r.witness_failed = true;
        fail(rep.colorable, "witness is not a proper coloring");
      }
    } else if (!rep.colorable && rep.obstruction && !verify_witness(g, *rep.obstruction)) {
      fail(rep.colorable, "obstruction does not verify");
    }
  } catch (const std::exception& e) {
    r.error = true;
    fail(!expected, std::string("solver threw: ") + e.what());
  }
  return r;
}

}  // namespace

FuzzReport differential_fuzz(const FuzzOptions& opts) {
  if (opts.min_n > opts.max_n) throw InputError("fuzz: min size above max size");
  std::vector<CaseResult> results(opts.budget);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= opts.budget) break;
      results[i] = run_case(opts, i);
    }
  };
  const unsigned threads = std::max(1U, resolve_threads(opts.threads));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  FuzzReport rep;
  rep.generated = opts.budget;
  for (CaseResult& r : results) {
    rep.in_class += r.in_class;
    rep.colorable += r.colorable;
    rep.witness_checks += r.witness_checked;
    rep.witness_failures += r.witness_failed;
    rep.errors += r.error;
    rep.telemetry.merge(r.telemetry);
    if (r.mismatch) rep.mismatches.push_back(std::move(*r.mismatch));
  }
  return rep;
}

}  // namespace hered3::testkit
