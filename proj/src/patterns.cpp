#include "hered3/patterns.hpp"

#include <algorithm>
#include <array>
#include <deque>

#include "hered3/cograph.hpp"

namespace hered3 {

std::string to_string(PatternKind k) {
  switch (k) {
    case PatternKind::kP4: return "P4";
    case PatternKind::kTwoP4: return "2P4";
    case PatternKind::kC5: return "C5";
    case PatternKind::kC7: return "C7";
    case PatternKind::kC9: return "C9";
    case PatternKind::kK4: return "K4";
    case PatternKind::kCoC7: return "coC7";
    case PatternKind::kOddWheel: return "odd_wheel";
  }
  return "unknown";
}

namespace {

using Words = std::vector<std::uint64_t>;

// Adjacency matrix of a small pattern, in the order vertices are searched.
struct Template {
  int k = 0;
  std::array<std::array<bool, 9>, 9> adj{};
  // Symmetry breaking: every later vertex has a larger id than vertex 0.
  bool min_first = false;
  // When both are set, vertex rev_hi must have a larger id than vertex rev_lo.
  int rev_lo = -1;
  int rev_hi = -1;
};

Template path_template(int k) {
  Template t;
  t.k = k;
  for (int i = 0; i + 1 < k; ++i) t.adj[i][i + 1] = t.adj[i + 1][i] = true;
  t.rev_lo = 0;
  t.rev_hi = k - 1;
  return t;
}

Template cycle_template(int k) {
  Template t;
  t.k = k;
  for (int i = 0; i < k; ++i) {
    const int j = (i + 1) % k;
    t.adj[i][j] = t.adj[j][i] = true;
  }
  t.min_first = true;
  t.rev_lo = 1;
  t.rev_hi = k - 1;
  return t;
}

bool co_c7_adjacent(int i, int j) {
  const int d = ((j - i) % 7 + 7) % 7;
  return d >= 2 && d <= 5;
}

// Search order for the complement of C7: each vertex is adjacent to the
// previous one, which keeps candidate sets small.
constexpr std::array<int, 7> kCoC7Order{0, 2, 4, 6, 1, 3, 5};

Template co_c7_template() {
  Template t;
  t.k = 7;
  for (int p = 0; p < 7; ++p) {
    for (int q = 0; q < 7; ++q) {
      if (p != q) t.adj[p][q] = co_c7_adjacent(kCoC7Order[p], kCoC7Order[q]);
    }
  }
  t.min_first = true;
  return t;
}

class TemplateSearch {
 public:
  TemplateSearch(const Graph& g, const IdBitset& mask, const Template& t)
      : g_(g), t_(t), words_((g.id_bound() + 63) / 64) {
    mask_.assign(words_, 0);
    const auto mw = mask.words();
    for (std::size_t i = 0; i < words_ && i < mw.size(); ++i) mask_[i] = mw[i];
    levels_.assign(static_cast<std::size_t>(t.k), Words(words_, 0));
    chosen_.assign(static_cast<std::size_t>(t.k), VertexId{});
  }

  std::optional<std::vector<VertexId>> run() {
    if (t_.k == 0) return std::vector<VertexId>{};
    if (dfs(0)) return chosen_;
    return std::nullopt;
  }

 private:
  void candidates(int level) {
    Words& c = levels_[static_cast<std::size_t>(level)];
    c = mask_;
    for (int j = 0; j < level; ++j) {
      const VertexId u = chosen_[static_cast<std::size_t>(j)];
      const auto row = g_.neighbor_bits(u).words();
      const bool want = t_.adj[j][level];
      for (std::size_t w = 0; w < words_; ++w) {
        const std::uint64_t r = w < row.size() ? row[w] : 0;
        c[w] &= want ? r : ~r;
      }
      c[index(u) / 64] &= ~(std::uint64_t{1} << (index(u) % 64));
    }
    std::uint32_t floor = 0;
    bool has_floor = false;
    if (t_.min_first && level > 0) {
      floor = index(chosen_[0]);
      has_floor = true;
    }
    if (level == t_.rev_hi && t_.rev_lo >= 0) {
      const std::uint32_t f = index(chosen_[static_cast<std::size_t>(t_.rev_lo)]);
      if (!has_floor || f > floor) floor = f;
      has_floor = true;
    }
    if (has_floor) {
      // Clear ids <= floor.
      const std::size_t fw = floor / 64;
      for (std::size_t w = 0; w < fw && w < words_; ++w) c[w] = 0;
      if (fw < words_) {
        const unsigned b = floor % 64;
        const std::uint64_t keep = b == 63 ? 0 : (~std::uint64_t{0} << (b + 1));
        c[fw] &= keep;
      }
    }
  }

  bool dfs(int level) {
    if (level == t_.k) return true;
    candidates(level);
    const Words& c = levels_[static_cast<std::size_t>(level)];
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = c[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        bits &= bits - 1;
        chosen_[static_cast<std::size_t>(level)] = vid(static_cast<std::uint32_t>(w * 64 + b));
        if (dfs(level + 1)) return true;
      }
    }
    return false;
  }

  const Graph& g_;
  const Template& t_;
  std::size_t words_;
  Words mask_;
  std::vector<Words> levels_;
  std::vector<VertexId> chosen_;
};

std::optional<std::vector<VertexId>> search(const Graph& g, const IdBitset& mask, const Template& t) {
  return TemplateSearch(g, mask, t).run();
}

IdBitset mask_of(const Graph& g, std::span<const VertexId> within) {
  IdBitset m(g.id_bound());
  for (VertexId v : within) {
    if (!g.has_vertex(v)) throw InputError("pattern search: unknown vertex id " + to_string(v));
    m.set(index(v));
  }
  return m;
}

std::optional<PatternWitness> find_cycle_in(const Graph& g, const IdBitset& mask, int length, PatternKind kind) {
  auto r = search(g, mask, cycle_template(length));
  if (!r) return std::nullopt;
  return PatternWitness{kind, std::move(*r)};
}

// Repeatedly splits the cycle along a chord, keeping the odd part, until the
// cycle is induced.
std::vector<VertexId> shortcut_odd_cycle(const Graph& g, std::vector<VertexId> cyc) {
  bool changed = true;
  while (changed && cyc.size() > 3) {
    changed = false;
    const std::size_t n = cyc.size();
    for (std::size_t i = 0; i < n && !changed; ++i) {
      for (std::size_t j = i + 2; j < n && !changed; ++j) {
        if (i == 0 && j == n - 1) continue;
        if (!g.adjacent(cyc[i], cyc[j])) continue;
        // Two cycles: cyc[i..j] and cyc[j..n) + cyc[0..i].
        std::vector<VertexId> a(cyc.begin() + static_cast<std::ptrdiff_t>(i),
                                cyc.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        if (a.size() % 2 == 1) {
          cyc = std::move(a);
        } else {
          std::vector<VertexId> b(cyc.begin() + static_cast<std::ptrdiff_t>(j), cyc.end());
          b.insert(b.end(), cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(i) + 1);
          cyc = std::move(b);
        }
        changed = true;
      }
    }
  }
  return cyc;
}

// An induced odd cycle inside G[s], or empty when G[s] is bipartite.
std::vector<VertexId> odd_cycle_within(const Graph& g, const VertexSet& s) {
  IdBitset mask(g.id_bound());
  for (VertexId v : s) mask.set(index(v));
  std::vector<int> dist(g.id_bound(), -1);
  std::vector<VertexId> parent(g.id_bound());
  for (VertexId root : s) {
    if (dist[index(root)] >= 0) continue;
    std::deque<VertexId> queue{root};
    dist[index(root)] = 0;
    parent[index(root)] = root;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (VertexId w : g.neighbors(v)) {
        if (!mask.test(index(w))) continue;
        if (dist[index(w)] < 0) {
          dist[index(w)] = dist[index(v)] + 1;
          parent[index(w)] = v;
          queue.push_back(w);
        } else if (dist[index(w)] == dist[index(v)]) {
          // Climb both chains to their meeting point.
          std::vector<VertexId> left{v};
          std::vector<VertexId> right{w};
          VertexId a = v;
          VertexId b = w;
          while (a != b) {
            a = parent[index(a)];
            b = parent[index(b)];
            left.push_back(a);
            right.push_back(b);
          }
          right.pop_back();
          std::vector<VertexId> cyc(left.rbegin(), left.rend());
          // cyc runs lca .. v; continue with w .. just below lca.
          for (VertexId x : right) cyc.push_back(x);
          return shortcut_odd_cycle(g, std::move(cyc));
        }
      }
    }
  }
  return {};
}

}  // namespace

bool verify_witness(const Graph& g, const PatternWitness& w) {
  const auto& vs = w.vertices;
  {
    VertexSet sorted = vs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  }
  for (VertexId v : vs) {
    if (!g.has_vertex(v)) return false;
  }
  auto expect = [&](auto&& adj) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        if (g.adjacent(vs[i], vs[j]) != adj(i, j)) return false;
      }
    }
    return true;
  };
  auto cyc = [&](std::size_t n) {
    return [n](std::size_t i, std::size_t j) { return (j - i) == 1 || (j - i) == n - 1; };
  };
  switch (w.kind) {
    case PatternKind::kP4:
      return vs.size() == 4 && expect([](std::size_t i, std::size_t j) { return j - i == 1; });
    case PatternKind::kTwoP4:
      return vs.size() == 8 && expect([](std::size_t i, std::size_t j) {
               return j - i == 1 && i != 3;
             });
    case PatternKind::kC5:
      return vs.size() == 5 && expect(cyc(5));
    case PatternKind::kC7:
      return vs.size() == 7 && expect(cyc(7));
    case PatternKind::kC9:
      return vs.size() == 9 && expect(cyc(9));
    case PatternKind::kK4:
      return vs.size() == 4 && expect([](std::size_t, std::size_t) { return true; });
    case PatternKind::kCoC7:
      return vs.size() == 7 && expect([](std::size_t i, std::size_t j) {
               return co_c7_adjacent(static_cast<int>(i), static_cast<int>(j));
             });
    case PatternKind::kOddWheel: {
      const std::size_t n = vs.size();
      if (n < 6 || (n - 1) % 2 == 0) return false;
      return expect([n](std::size_t i, std::size_t j) {
        if (i == 0) return true;
        const std::size_t d = j - i;
        return d == 1 || d == n - 2;
      });
    }
  }
  return false;
}

std::optional<PatternWitness> find_induced_p4(const Graph& g, std::span<const VertexId> within) {
  auto r = search(g, mask_of(g, within), path_template(4));
  if (!r) return std::nullopt;
  return PatternWitness{PatternKind::kP4, std::move(*r)};
}

std::optional<PatternWitness> find_induced_p4(const Graph& g) {
  auto r = search(g, g.vertex_bits(), path_template(4));
  if (!r) return std::nullopt;
  return PatternWitness{PatternKind::kP4, std::move(*r)};
}

std::optional<PatternWitness> find_induced_2p4(const Graph& g) {
  // Walk the induced P4s in lexicographic order; for each, look for a second
  // P4 among the vertices with no neighbor on the first one.
  std::optional<PatternWitness> found;
  const Template t = path_template(4);
  const std::size_t words = (g.id_bound() + 63) / 64;
  const VertexSet all = g.vertices();
  for (VertexId a : all) {
    for (VertexId b : g.neighbors(a)) {
      for (VertexId c : g.neighbors(b)) {
        if (c == a || g.adjacent(a, c)) continue;
        for (VertexId d : g.neighbors(c)) {
          if (d <= a || d == b || g.adjacent(b, d) || g.adjacent(a, d)) continue;
          // Vertices outside N[P].
          IdBitset rest(g.id_bound());
          auto rw = rest.words();
          const auto lw = g.vertex_bits().words();
          for (std::size_t w = 0; w < words && w < lw.size(); ++w) rw[w] = lw[w];
          for (VertexId p : {a, b, c, d}) {
            rest.reset(index(p));
            const auto nw = g.neighbor_bits(p).words();
            for (std::size_t w = 0; w < words && w < nw.size(); ++w) rw[w] &= ~nw[w];
          }
          VertexSet rs;
          rest.for_each([&](VertexId v) { rs.push_back(v); });
          if (rs.size() < 4 || is_cograph(g, rs)) continue;
          auto q = search(g, rest, t);
          if (!q) continue;
          std::vector<VertexId> vs{a, b, c, d};
          vs.insert(vs.end(), q->begin(), q->end());
          return PatternWitness{PatternKind::kTwoP4, std::move(vs)};
        }
      }
    }
  }
  return found;
}

std::optional<PatternWitness> find_induced_cycle(const Graph& g, int length) {
  PatternKind kind;
  switch (length) {
    case 5: kind = PatternKind::kC5; break;
    case 7: kind = PatternKind::kC7; break;
    case 9: kind = PatternKind::kC9; break;
    default: throw InputError("find_induced_cycle: length must be 5, 7 or 9, got " + std::to_string(length));
  }
  return find_cycle_in(g, g.vertex_bits(), length, kind);
}

std::optional<PatternWitness> find_induced_cycle_any_length(const Graph& g, int length) {
  if (length < 4 || length > 9) throw InputError("find_induced_cycle_any_length: length must be in 4..9");
  auto r = search(g, g.vertex_bits(), cycle_template(length));
  if (!r) return std::nullopt;
  PatternKind kind = PatternKind::kC5;
  if (length == 7) kind = PatternKind::kC7;
  if (length == 9) kind = PatternKind::kC9;
  return PatternWitness{kind, std::move(*r)};
}

std::optional<PatternWitness> find_k4_or_odd_neighborhood(const Graph& input) {
  // K4 and odd wheels have no false twins.
  const Graph g = twin_reduced(input, false);
  for (VertexId v : g.vertices()) {
    const auto& nb = g.neighbors(v);
    if (nb.size() < 3) continue;
    if (bipartition(g, nb)) continue;
    auto cyc = odd_cycle_within(g, nb);
    if (cyc.empty()) continue;
    std::vector<VertexId> vs{v};
    vs.insert(vs.end(), cyc.begin(), cyc.end());
    return PatternWitness{cyc.size() == 3 ? PatternKind::kK4 : PatternKind::kOddWheel, std::move(vs)};
  }
  return std::nullopt;
}

std::optional<PatternWitness> find_co_c7(const Graph& input) {
  if (input.vertex_count() < 7) return std::nullopt;
  // The complement of C7 is prime, so it survives twin reduction.
  const Graph g = twin_reduced(input, true);
  auto r = search(g, g.vertex_bits(), co_c7_template());
  if (!r) return std::nullopt;
  std::vector<VertexId> labeled(7);
  for (int p = 0; p < 7; ++p) labeled[static_cast<std::size_t>(kCoC7Order[p])] = (*r)[static_cast<std::size_t>(p)];
  return PatternWitness{PatternKind::kCoC7, std::move(labeled)};
}

std::optional<PatternWitness> check_class(const Graph& g) {
  if (auto c5 = find_induced_cycle(g, 5)) return c5;
  return find_induced_2p4(g);
}

}  // namespace hered3
