#pragma once

// Action categories of transducers and the bounded tabulator of one-state
// data.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tdx/error.hpp"
#include "tdx/fincat.hpp"
#include "tdx/transducer.hpp"

namespace tdx {

struct GraphEdge {
  std::size_t from = 0, to = 0;
  std::size_t letter = 0;
  RegularLanguage label;
};

/// Labeled graph with one edge p → q for each letter a with t(a)_{pq} ≠ 0.
struct DynamicsGraph {
  StateSet nodes;
  Alphabet letters, outputs;
  std::vector<GraphEdge> edges;
};

/// Edges ordered by source, then target, then letter.
inline DynamicsGraph action_graph(const Transducer& t) {
  DynamicsGraph g{t.states(), t.input(), t.output(), {}};
  const std::size_t n = t.states().size();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t a = 0; a < t.input().size(); ++a)
        if (!t.entry(a, p, q).is_empty()) g.edges.push_back({p, q, a, t.entry(a, p, q)});
  return g;
}

/// Edge multiplicities over ℕ.
inline std::vector<std::vector<std::size_t>> adjacency(const DynamicsGraph& g) {
  const std::size_t n = g.nodes.size();
  std::vector<std::vector<std::size_t>> m(n, std::vector<std::size_t>(n, 0));
  for (const auto& e : g.edges) ++m[e.from][e.to];
  return m;
}

inline std::vector<std::vector<std::size_t>> nat_mul(const std::vector<std::vector<std::size_t>>& x,
                                                     const std::vector<std::vector<std::size_t>>& y) {
  const std::size_t n = x.size();
  std::vector<std::vector<std::size_t>> out(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (x[i][k])
        for (std::size_t j = 0; j < n; ++j) out[i][j] += x[i][k] * y[k][j];
  return out;
}

/// Truncation of the free category on a dynamics graph: paths of length at
/// most `bound`, with one absorbing morphism per hom-set standing for every
/// longer path.
struct ActionCategory {
  DynamicsGraph graph;
  std::size_t bound = 0;
  FiniteCategory category;
  /// Path length of each morphism; kOverflow for the absorbing ones.
  std::vector<std::size_t> length;
  /// Input word and output language of each path.
  std::vector<Word> word;
  std::vector<RegularLanguage> label;

  static constexpr std::size_t kOverflow = static_cast<std::size_t>(-1);
};

inline ActionCategory action_category(const DynamicsGraph& g, std::size_t bound) {
  const std::size_t n = g.nodes.size();
  struct Path {
    std::size_t from, to;
    std::vector<std::size_t> edges;
  };
  std::vector<Path> paths;
  std::vector<std::vector<std::size_t>> by_length(1);
  for (std::size_t q = 0; q < n; ++q) {
    by_length[0].push_back(paths.size());
    paths.push_back({q, q, {}});
  }
  for (std::size_t len = 1; len <= bound; ++len) {
    by_length.emplace_back();
    for (auto i : by_length[len - 1])
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].from != paths[i].to) continue;
        auto edges = paths[i].edges;
        edges.push_back(e);
        by_length[len].push_back(paths.size());
        paths.push_back({paths[i].from, g.edges[e].to, std::move(edges)});
      }
  }
  // A path longer than the bound runs p → q iff some path of length
  // bound + 1 from p reaches q.
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t q = 0; q < n; ++q) reach[q][q] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& e : g.edges)
      for (std::size_t p = 0; p < n; ++p)
        if (reach[p][e.from] && !reach[p][e.to]) reach[p][e.to] = grew = true;
  }
  std::vector<std::vector<char>> overflow(n, std::vector<char>(n, 0));
  for (auto i : by_length[bound])
    for (const auto& e : g.edges)
      if (e.from == paths[i].to)
        for (std::size_t q = 0; q < n; ++q)
          if (reach[e.to][q]) overflow[paths[i].from][q] = 1;

  ActionCategory out{g, bound, FiniteCategory::discrete(ObjectSet{}), {}, {}, {}};
  std::vector<std::string> names;
  IndexMap src, tgt, ids;
  std::map<std::pair<std::vector<std::size_t>, std::size_t>, std::size_t> index;  // (edges, from)
  for (const auto& p : paths) {
    std::string name;
    if (p.edges.empty()) {
      name = "id_" + g.nodes[p.from];
      ids.push_back(names.size());
    }
    Word w;
    auto lang = RegularLanguage::epsilon(g.outputs);
    for (auto e : p.edges) {
      const auto& edge = g.edges[e];
      if (!name.empty()) name += ";";
      name += g.letters[edge.letter] + "[" + g.nodes[edge.from] + "," + g.nodes[edge.to] + "]";
      w.push_back(edge.letter);
      lang = concat(lang, edge.label);
    }
    index[{p.edges, p.from}] = names.size();
    names.push_back(std::move(name));
    src.push_back(p.from);
    tgt.push_back(p.to);
    out.length.push_back(p.edges.size());
    out.word.push_back(std::move(w));
    out.label.push_back(std::move(lang));
  }
  std::vector<std::vector<std::size_t>> sink(n, std::vector<std::size_t>(n, 0));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (overflow[p][q]) {
        sink[p][q] = names.size();
        names.push_back("over[" + g.nodes[p] + "," + g.nodes[q] + "]");
        src.push_back(p);
        tgt.push_back(q);
        out.length.push_back(ActionCategory::kOverflow);
        out.word.emplace_back();
        out.label.push_back(RegularLanguage::empty(g.outputs));
      }
  const std::size_t nm = names.size();
  std::vector<std::optional<std::size_t>> table(nm * nm);
  for (std::size_t gm = 0; gm < nm; ++gm)
    for (std::size_t f = 0; f < nm; ++f) {
      if (src[gm] != tgt[f]) continue;
      const bool over = out.length[gm] == ActionCategory::kOverflow || out.length[f] == ActionCategory::kOverflow ||
                        out.length[gm] + out.length[f] > bound;
      if (over) {
        table[gm * nm + f] = sink[src[f]][tgt[gm]];
        continue;
      }
      auto edges = f < paths.size() ? paths[f].edges : std::vector<std::size_t>{};
      edges.insert(edges.end(), paths[gm].edges.begin(), paths[gm].edges.end());
      table[gm * nm + f] = index.at({edges, src[f]});
    }
  out.category = FiniteCategory(ObjectSet(g.nodes.names()), MorphismSet(std::move(names)), src, tgt, ids,
                                std::move(table));
  return out;
}

/// Morphism counts per (length, source, target), reached by closing the
/// identities and edges under composition in the truncated category.
inline std::vector<std::vector<std::vector<std::size_t>>> generated_counts(const ActionCategory& c) {
  const auto& cat = c.category;
  const std::size_t n = cat.object_count();
  std::vector<char> seen(cat.morphism_count(), 0);
  std::vector<std::size_t> todo;
  for (std::size_t m = 0; m < cat.morphism_count(); ++m)
    if (c.length[m] <= 1) {
      seen[m] = 1;
      todo.push_back(m);
    }
  std::vector<std::size_t> edges = todo;
  while (!todo.empty()) {
    auto m = todo.back();
    todo.pop_back();
    for (auto e : edges)
      if (auto r = cat.try_compose(e, m); r && !seen[*r]) {
        seen[*r] = 1;
        todo.push_back(*r);
      }
  }
  std::vector<std::vector<std::vector<std::size_t>>> counts(
      c.bound + 1, std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(n, 0)));
  for (std::size_t m = 0; m < cat.morphism_count(); ++m)
    if (seen[m] && c.length[m] != ActionCategory::kOverflow) ++counts[c.length[m]][cat.src(m)][cat.tgt(m)];
  return counts;
}

/// Freeness on the graph: the generated morphisms of each length k number
/// exactly (A^k)_{pq} between p and q, A the ℕ-adjacency matrix.
inline bool is_free_on_graph(const ActionCategory& c) {
  auto counts = generated_counts(c);
  auto a = adjacency(c.graph);
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> power(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) power[i][i] = 1;
  for (std::size_t k = 0; k <= c.bound; ++k) {
    if (counts[k] != power) return false;
    power = nat_mul(power, a);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Tabulators

inline bool has_tabulator(const Transducer& t) { return t.states().size() == 1; }

struct TabulatorTruncation {
  FiniteCategory category;
  /// Letter and output word of each object.
  std::vector<std::pair<std::size_t, Word>> objects;
};

/// Objects (a, b̄) with b̄ ∈ t(a) of length at most maxlen; morphisms the
/// endomorphisms (m, n) ∈ M × M of each object, composed componentwise.
inline TabulatorTruncation tabulator_truncation(const Transducer& t, std::size_t maxlen,
                                                const FiniteMonoid& monoid = FiniteMonoid::trivial()) {
  if (!has_tabulator(t))
    throw NoTabulator("tabulator: state data has " + std::to_string(t.states().size()) + " objects");
  if (auto why = monoid_defect(monoid)) throw InputError("monoid: " + *why);
  TabulatorTruncation out{FiniteCategory::discrete(ObjectSet{}), {}};
  std::vector<std::string> objects;
  for (std::size_t a = 0; a < t.input().size(); ++a)
    for (auto& w : enumerate(t.entry(a, 0, 0), maxlen)) {
      objects.push_back(pair_name(t.input()[a], "[" + format_word(w, t.output()) + "]"));
      out.objects.emplace_back(a, std::move(w));
    }
  const std::size_t k = monoid.size(), per = k * k, no = objects.size(), nm = no * per;
  std::vector<std::string> names;
  IndexMap src, tgt, ids;
  for (std::size_t o = 0; o < no; ++o) {
    for (std::size_t m = 0; m < k; ++m)
      for (std::size_t n = 0; n < k; ++n) {
        names.push_back(pair_name(objects[o], pair_name(monoid.elements[m], monoid.elements[n])));
        src.push_back(o);
        tgt.push_back(o);
      }
    ids.push_back(o * per + monoid.unit * k + monoid.unit);
  }
  std::vector<std::optional<std::size_t>> table(nm * nm);
  for (std::size_t o = 0; o < no; ++o)
    for (std::size_t g = 0; g < per; ++g)
      for (std::size_t f = 0; f < per; ++f)
        table[(o * per + g) * nm + o * per + f] =
            o * per + monoid.mul(g / k, f / k) * k + monoid.mul(g % k, f % k);
  out.category = FiniteCategory(ObjectSet(std::move(objects)), MorphismSet(std::move(names)), src, tgt, ids,
                                std::move(table));
  return out;
}

}  // namespace tdx
