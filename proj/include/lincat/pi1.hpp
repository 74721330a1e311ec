#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lincat/presentation.hpp"
#include "lincat/smith.hpp"

namespace lincat {

// Letters are signed 1-based generator indices: +k is generator k-1, -k its
// inverse. Words are read left to right.
using Word = std::vector<int>;

struct FPGroup {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  std::string render(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += " ";
      s += generators.at(static_cast<std::size_t>(std::abs(w[i]) - 1));
      if (w[i] < 0) s += "^-1";
    }
    return s;
  }

  void check() const {
    for (const auto& r : relators) {
      for (int l : r) {
        if (l == 0 || static_cast<std::size_t>(std::abs(l)) > generators.size()) {
          throw InputError("relator uses an undeclared generator");
        }
      }
    }
  }

  friend bool operator==(const FPGroup&, const FPGroup&) = default;
};

inline Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

inline Word free_reduce(const Word& w) {
  Word out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

// Free and cyclic reduction.
inline Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t i = 0, j = r.size();
  while (j - i >= 2 && r[i] == -r[j - 1]) {
    ++i;
    --j;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(i), r.begin() + static_cast<std::ptrdiff_t>(j));
}

struct Pi1Presentation {
  FPGroup group;
  std::vector<std::size_t> tree;  // arrow indices
  std::vector<std::string> warnings;
};

// Spanning tree by BFS from b0 in declaration order.
inline std::vector<std::size_t> spanning_tree(const QuiverPresentation& p, std::size_t b0) {
  const std::size_t n = p.vertices.size();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> tree, queue{b0};
  seen.at(b0) = true;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t v = queue[q];
    for (std::size_t a = 0; a < p.arrows.size(); ++a) {
      const auto& ar = p.arrows[a];
      std::size_t other;
      if (ar.source == v) {
        other = ar.target;
      } else if (ar.target == v) {
        other = ar.source;
      } else {
        continue;
      }
      if (seen[other]) continue;
      seen[other] = true;
      tree.push_back(a);
      queue.push_back(other);
    }
  }
  if (queue.size() != n) throw PreconditionError("the underlying graph of the quiver is not connected");
  return tree;
}

inline bool is_spanning_tree(const QuiverPresentation& p, const std::vector<std::size_t>& tree) {
  const std::size_t n = p.vertices.size();
  if (n == 0 || tree.size() + 1 != n) return false;
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto a : tree) {
    if (a >= p.arrows.size()) return false;
    std::size_t u = find(p.arrows[a].source), v = find(p.arrows[a].target);
    if (u == v) return false;
    parent[u] = v;
  }
  return true;
}

// Generators are the arrows. Relators: every tree arrow, and for each
// relation sum l_i w_i with at least two terms the words w_1 w_j^-1.
// Paths are written in composition order, so {a, g} (g o a) is the word g a.
inline Pi1Presentation pi1_presentation(const QuiverPresentation& p, std::size_t b0,
                                        std::optional<std::vector<std::size_t>> tree = std::nullopt) {
  if (b0 >= p.vertices.size()) throw InputError("base vertex out of range");
  Pi1Presentation out;
  out.tree = tree ? *tree : spanning_tree(p, b0);
  if (tree && !is_spanning_tree(p, *tree)) throw InputError("the given arrows do not form a spanning tree");
  for (const auto& a : p.arrows) out.group.generators.push_back(a.name);
  for (auto a : out.tree) out.group.relators.push_back({static_cast<int>(a) + 1});
  auto word = [](const Path& path) {
    Word w;
    for (auto it = path.rbegin(); it != path.rend(); ++it) w.push_back(static_cast<int>(*it) + 1);
    return w;
  };
  for (const auto& rel : p.relations) {
    if (rel.terms.size() < 2) continue;
    const Word w1 = word(rel.terms.front().path);
    for (std::size_t j = 1; j < rel.terms.size(); ++j) {
      Word r = w1;
      Word wj = inverse_word(word(rel.terms[j].path));
      r.insert(r.end(), wj.begin(), wj.end());
      out.group.relators.push_back(std::move(r));
    }
  }
  // k-linear independence of the relations as vectors over paths.
  std::map<Path, std::size_t> column;
  for (const auto& rel : p.relations) {
    for (const auto& t : rel.terms) column.emplace(t.path, column.size());
  }
  const FieldSpec field = p.characteristic ? FieldSpec::prime(*p.characteristic) : FieldSpec::rationals();
  std::vector<Vector> rows;
  for (const auto& rel : p.relations) {
    Vector v = zero_vector(field, column.size());
    for (const auto& t : rel.terms) v[column[t.path]] = Scalar(field, t.coefficient);
    rows.push_back(std::move(v));
  }
  if (span_dimension(field, column.size(), rows) != rows.size()) {
    out.warnings.push_back("the relations are linearly dependent; the generating set is not minimal");
  }
  return out;
}

// Invariant factors of the abelianization with unit factors dropped; the
// trivial group is reported as [1].
inline std::vector<BigInt> abelianization(const FPGroup& g) {
  g.check();
  IntMatrix m;
  for (const auto& r : g.relators) {
    std::vector<BigInt> row(g.generators.size(), 0);
    for (int l : r) row[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
    m.push_back(std::move(row));
  }
  std::vector<BigInt> out;
  for (auto& d : smith_normal_form(m, g.generators.size())) {
    if (d != 1) out.push_back(d);
  }
  if (out.empty()) out.push_back(1);
  return out;
}

// Tietze reduction: drops trivial and duplicate relators and eliminates any
// generator occurring exactly once in some relator.
inline FPGroup simplify(FPGroup g) {
  g.check();
  for (;;) {
    std::vector<Word> rels;
    for (const auto& r : g.relators) {
      Word c = cyclic_reduce(r);
      if (c.empty()) continue;
      if (std::find(rels.begin(), rels.end(), c) == rels.end()) rels.push_back(std::move(c));
    }
    g.relators = std::move(rels);
    bool changed = false;
    for (std::size_t ri = 0; ri < g.relators.size() && !changed; ++ri) {
      const Word& r = g.relators[ri];
      for (std::size_t gen = 1; gen <= g.generators.size() && !changed; ++gen) {
        std::size_t count = 0, at = 0;
        for (std::size_t k = 0; k < r.size(); ++k) {
          if (static_cast<std::size_t>(std::abs(r[k])) == gen) {
            ++count;
            at = k;
          }
        }
        if (count != 1) continue;
        // r = u x^e v, so x^e = u^-1 v^-1 and x = (u^-1 v^-1)^e.
        Word u(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(at));
        Word v(r.begin() + static_cast<std::ptrdiff_t>(at) + 1, r.end());
        Word value = inverse_word(u);
        Word vi = inverse_word(v);
        value.insert(value.end(), vi.begin(), vi.end());
        if (r[at] < 0) value = inverse_word(value);
        const Word value_inv = inverse_word(value);
        FPGroup h;
        for (std::size_t k = 1; k <= g.generators.size(); ++k) {
          if (k != gen) h.generators.push_back(g.generators[k - 1]);
        }
        auto renumber = [gen](int l) {
          int a = std::abs(l);
          int b = static_cast<std::size_t>(a) > gen ? a - 1 : a;
          return l < 0 ? -b : b;
        };
        for (std::size_t rj = 0; rj < g.relators.size(); ++rj) {
          if (rj == ri) continue;
          Word w;
          for (int l : g.relators[rj]) {
            if (static_cast<std::size_t>(std::abs(l)) == gen) {
              const Word& s = l > 0 ? value : value_inv;
              w.insert(w.end(), s.begin(), s.end());
            } else {
              w.push_back(l);
            }
          }
          for (auto& l : w) l = renumber(l);
          h.relators.push_back(std::move(w));
        }
        g = std::move(h);
        changed = true;
      }
    }
    if (!changed) return g;
  }
}

// Todd-Coxeter enumeration of the cosets of the trivial subgroup (HLT
// strategy). Returns the group order, or nullopt when more than max_cosets
// cosets are defined.
inline std::optional<std::size_t> bounded_order(const FPGroup& g, std::size_t max_cosets) {
  g.check();
  if (max_cosets < 1) throw InputError("the coset bound must be at least 1");
  const std::size_t cols = 2 * g.generators.size();
  auto col = [](int l) { return static_cast<std::size_t>(2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0)); };
  auto inv = [](std::size_t c) { return c ^ 1U; };
  std::vector<Word> rels;
  for (const auto& r : g.relators) {
    Word c = cyclic_reduce(r);
    if (!c.empty()) rels.push_back(std::move(c));
  }
  constexpr long none = -1;
  std::vector<std::vector<long>> table{std::vector<long>(cols, none)};
  std::vector<long> parent{0};
  bool overflow = false;

  auto rep = [&](long k) {
    long r = k;
    while (parent[static_cast<std::size_t>(r)] != r) r = parent[static_cast<std::size_t>(r)];
    while (parent[static_cast<std::size_t>(k)] != r) {
      long next = parent[static_cast<std::size_t>(k)];
      parent[static_cast<std::size_t>(k)] = r;
      k = next;
    }
    return r;
  };
  auto at = [&](long c, std::size_t x) -> long& { return table[static_cast<std::size_t>(c)][x]; };
  auto define = [&](long c, std::size_t x) {
    if (table.size() >= max_cosets) {
      overflow = true;
      return;
    }
    const long d = static_cast<long>(table.size());
    table.emplace_back(cols, none);
    parent.push_back(d);
    at(c, x) = d;
    at(d, inv(x)) = c;
  };
  auto merge = [&](long k, long l, std::vector<long>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent[static_cast<std::size_t>(l)] = k;
    queue.push_back(l);
  };
  auto coincidence = [&](long a, long b) {
    std::vector<long> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const long e = queue[i];
      for (std::size_t x = 0; x < cols; ++x) {
        const long f = at(e, x);
        if (f == none) continue;
        if (at(f, inv(x)) == e) at(f, inv(x)) = none;
        const long e1 = rep(e), f1 = rep(f);
        if (at(e1, x) != none) {
          merge(f1, at(e1, x), queue);
        } else if (at(f1, inv(x)) != none) {
          merge(e1, at(f1, inv(x)), queue);
        } else {
          at(e1, x) = f1;
          at(f1, inv(x)) = e1;
        }
      }
    }
  };
  auto alive = [&](long c) { return parent[static_cast<std::size_t>(c)] == c; };
  auto scan_and_fill = [&](long c, const Word& w) {
    long f = c, b = c;
    long i = 0, j = static_cast<long>(w.size()) - 1;
    for (;;) {
      while (i <= j && at(f, col(w[static_cast<std::size_t>(i)])) != none) {
        f = at(f, col(w[static_cast<std::size_t>(i)]));
        ++i;
      }
      if (i > j) {
        if (f != c) coincidence(f, c);
        return;
      }
      while (j >= i && at(b, inv(col(w[static_cast<std::size_t>(j)]))) != none) {
        b = at(b, inv(col(w[static_cast<std::size_t>(j)])));
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        const std::size_t x = col(w[static_cast<std::size_t>(i)]);
        at(f, x) = b;
        at(b, inv(x)) = f;
        return;
      }
      define(f, col(w[static_cast<std::size_t>(i)]));
      if (overflow) return;
    }
  };

  for (long c = 0; c < static_cast<long>(table.size()); ++c) {
    for (const auto& r : rels) {
      if (!alive(c)) break;
      scan_and_fill(c, r);
      if (overflow) return std::nullopt;
    }
    for (std::size_t x = 0; x < cols && alive(c); ++x) {
      if (at(c, x) == none) define(c, x);
      if (overflow) return std::nullopt;
    }
  }
  std::size_t live = 0;
  for (long c = 0; c < static_cast<long>(table.size()); ++c) live += alive(c) ? 1 : 0;
  return live;
}

}  // namespace lincat
