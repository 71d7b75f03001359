#include "hered3/solver.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "hered3/pipeline.hpp"
#include "hered3/reductions.hpp"

namespace hered3 {

namespace {

// All proper 3-colorings of the cycle of length k, lexicographic.
std::vector<std::vector<Color>> cycle_colorings(std::size_t k) {
  std::vector<std::vector<Color>> out;
  std::vector<Color> cur(k, kNoColor);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      if (cur[k - 1] != cur[0]) out.push_back(cur);
      return;
    }
    for (Color c = 1; c <= 3; ++c) {
      if (i > 0 && cur[i - 1] == c) continue;
      cur[i] = c;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

ColorInstance anchored_root(const Graph& comp, const VertexSet& cycle, const std::vector<Color>& colors) {
  ColorInstance inst = ColorInstance::from_graph(comp);
  inst.n0 = cycle;
  for (VertexId v : cycle) inst.n0_mask.set(index(v));
  for (std::size_t i = 0; i < cycle.size(); ++i) color_vertex(inst, cycle[i], colors[i]);
  return inst;
}

struct Counters {
  Telemetry telemetry;
  std::uint64_t branches = 0;
  std::uint64_t rejected = 0;
  std::uint64_t solved = 0;

  void merge(const Counters& o) {
    telemetry.merge(o.telemetry);
    branches += o.branches;
    rejected += o.rejected;
    solved += o.solved;
  }
};

struct NodeResult {
  std::vector<Branch> children;
  std::optional<Coloring> coloring;
};

constexpr std::size_t kMaxIterations = 1'000'000;

// Runs one search node until it is rejected, solved, or splits into children.
NodeResult process_node(Branch b, const std::vector<VertexId>& original_n0, const StageContext& ctx) {
  const ReductionOptions ropts{ctx.telemetry, ctx.paranoid};
  auto finish = [&](const StructureView& view, const std::vector<WForm>& wforms) {
    NodeResult r;
    if (auto live = final_assembly(b.inst, view, wforms, ctx)) r.coloring = replay_coloring(b.inst, std::move(*live));
    return r;
  };
  for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
    const Verdict v = basic_fixpoint(b.inst, ropts);
    if (v.status == Status::kRejected) return {};
    if (v.status == Status::kSolved) return {{}, replay_coloring(b.inst, {})};

    StructureView view = stage_structure_check(b.inst, ctx);
    verify_pending(view, b.checks);
    b.checks.clear();
    if (view.relevant_vertices.empty()) return finish(view, {});

    if (auto kids = stage_eliminate_Ri(b, view, original_n0, ctx)) return {std::move(*kids), std::nullopt};
    if (auto kids = stage_eliminate_Si_pairs(b, view, original_n0, ctx)) return {std::move(*kids), std::nullopt};

    normalize_rotation(b.inst, view);
    view = stage_structure_check(b.inst, ctx);

    StageOutcome out = stage_relevant_edges(b.inst, view, ctx);
    if (out == StageOutcome::kRejected) return {};
    if (out == StageOutcome::kChanged) continue;
    out = stage_equivalence_cuts(b.inst, view, ctx);
    if (out == StageOutcome::kRejected) return {};
    if (out == StageOutcome::kChanged) continue;
    std::vector<WForm> wforms;
    out = stage_n2x_cases(b.inst, view, ctx, wforms);
    if (out == StageOutcome::kRejected) return {};
    if (out == StageOutcome::kChanged) continue;
    return finish(view, wforms);
  }
  throw StageError("pipeline", "search node made no progress");
}

// Depth-first search below one root; returns the first coloring found.
std::optional<Coloring> search_root(ColorInstance root, const std::vector<VertexId>& original_n0, bool exhaustive,
                                    bool paranoid, Counters& c) {
  const StageContext ctx{&c.telemetry, paranoid};
  std::vector<Branch> stack;
  stack.push_back(Branch{std::move(root), {}, 0, 0});
  std::optional<Coloring> found;
  while (!stack.empty()) {
    Branch b = std::move(stack.back());
    stack.pop_back();
    ++c.branches;
    NodeResult r = process_node(std::move(b), original_n0, ctx);
    if (r.coloring) {
      ++c.solved;
      if (!found) found = std::move(r.coloring);
      if (!exhaustive) return found;
    } else if (r.children.empty()) {
      ++c.rejected;
    }
    for (auto it = r.children.rbegin(); it != r.children.rend(); ++it) stack.push_back(std::move(*it));
  }
  return found;
}

// Root colorings of an induced C9 in a C7-free component. Each one is settled
// by the basic rules alone.
std::optional<Coloring> search_c9_root(ColorInstance root, bool paranoid, Counters& c) {
  ++c.branches;
  const Verdict v = basic_fixpoint(root, ReductionOptions{&c.telemetry, paranoid});
  if (v.status == Status::kContinue) throw StageError("c9", "fixpoint did not fully resolve a C9 branch");
  if (v.status == Status::kRejected) {
    ++c.rejected;
    return std::nullopt;
  }
  ++c.solved;
  return replay_coloring(root, {});
}

// Tries the roots in order, possibly on several threads. The returned coloring
// always comes from the lowest-index successful root, so results do not
// depend on scheduling.
template <typename Search>
std::optional<Coloring> drain_roots(std::size_t roots, unsigned threads, bool exhaustive, Counters& total,
                                    Search&& search) {
  std::vector<std::optional<Coloring>> results(roots);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::mutex mu;
  std::exception_ptr error;
  auto worker = [&]() {
    Counters local;
    try {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= roots) break;
        if (!exhaustive && i > best.load()) break;
        results[i] = search(i, local);
        if (results[i]) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      best.store(0);
      next.store(roots);
    }
    std::lock_guard lock(mu);
    total.merge(local);
  };
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(roots)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  for (auto& r : results) {
    if (r) return std::move(r);
  }
  return std::nullopt;
}

struct ComponentResult {
  bool colorable = false;
  std::optional<Coloring> coloring;
};

ComponentResult solve_component(const Graph& g, const VertexSet& comp, const SolveOptions& opts, unsigned threads,
                                SolveStats& stats, Counters& counters) {
  const Graph sub = induced_subgraph(g, comp);
  if (auto c7 = find_induced_cycle(sub, 7)) {
    counters.telemetry.bump("path.c7");
    const auto colorings = cycle_colorings(7);
    stats.n0_colorings += colorings.size();
    auto found = drain_roots(colorings.size(), threads, opts.exhaustive, counters, [&](std::size_t i, Counters& c) {
      return search_root(anchored_root(sub, c7->vertices, colorings[i]), c7->vertices, opts.exhaustive, opts.paranoid,
                         c);
    });
    return {found.has_value(), std::move(found)};
  }
  if (auto c9 = find_induced_cycle(sub, 9)) {
    counters.telemetry.bump("path.c9");
    const auto colorings = cycle_colorings(9);
    stats.n0_colorings += colorings.size();
    auto found = drain_roots(colorings.size(), threads, opts.exhaustive, counters, [&](std::size_t i, Counters& c) {
      return search_c9_root(anchored_root(sub, c9->vertices, colorings[i]), opts.paranoid, c);
    });
    return {found.has_value(), std::move(found)};
  }
  // No odd hole and no odd antihole: perfect with clique number at most 3.
  counters.telemetry.bump("path.perfect");
  if (!opts.witness) return {true, std::nullopt};
  bool exhausted = false;
  auto col = exact_list_coloring(sub, comp, {}, opts.exact_budget, &exhausted);
  if (!col && !exhausted) throw StageError("perfect", "exact colorer found no coloring of a perfect K4-free graph");
  if (!col) counters.telemetry.bump("path.perfect.no_witness");
  return {true, std::move(col)};
}

}  // namespace

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HERED3_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return 1;
}

SolveReport solve(const Graph& g, const SolveOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  Counters counters;
  auto finish = [&]() {
    report.stats.branches = counters.branches;
    report.stats.rejected = counters.rejected;
    report.stats.solved = counters.solved;
    report.stats.telemetry = counters.telemetry;
    for (const auto& [k, v] : counters.telemetry.counters) {
      if (k.rfind("rule.", 0) == 0) report.stats.reductions += v;
    }
    report.stats.millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
  };

  if (!opts.assume_class) {
    if (auto w = check_class(g)) throw ClassViolation(*w);
  }
  if (auto w = find_k4_or_odd_neighborhood(g)) {
    report.obstruction = std::move(w);
    return finish();
  }
  if (auto w = find_co_c7(g)) {
    report.obstruction = std::move(w);
    return finish();
  }

  const unsigned threads = resolve_threads(opts.threads);
  const auto comps = connected_components(g);
  report.stats.components = comps.size();
  Coloring merged(g.id_bound(), kNoColor);
  bool complete = opts.witness;
  for (const VertexSet& comp : comps) {
    ComponentResult r = solve_component(g, comp, opts, threads, report.stats, counters);
    if (!r.colorable) {
      report.colorable = false;
      return finish();
    }
    if (r.coloring) {
      for (VertexId v : comp) merged[index(v)] = color_of(*r.coloring, v);
    } else {
      complete = false;
    }
  }
  report.colorable = true;
  if (complete) {
    if (!is_proper_coloring(g, merged)) throw std::logic_error("solve: witness failed verification");
    report.witness = std::move(merged);
  }
  return finish();
}

}  // namespace hered3
