#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lincat/category.hpp"
#include "lincat/functor.hpp"
#include "lincat/matrix.hpp"

namespace lincat {

// Arrow indices in traversal order: {a, g} is the path "g*a" = g o a.
using Path = std::vector<std::size_t>;

struct Arrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;
};

struct RelationTerm {
  Rational coefficient;
  Path path;
};

struct Relation {
  std::vector<RelationTerm> terms;
  std::string text;
};

// A quiver with relations and a length bound N. Hom spaces of the presented
// category are spanned by paths of length <= N.
class QuiverPresentation {
 public:
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
  std::size_t length_bound = 1;
  std::optional<std::uint64_t> characteristic;

  std::size_t add_vertex(const std::string& name) {
    if (auto v = find_vertex(name)) return *v;
    if (!is_identifier(name)) throw InputError("bad vertex name '" + name + "'");
    vertices.push_back(name);
    return vertices.size() - 1;
  }

  std::optional<std::size_t> find_vertex(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (vertices[i] == name) return i;
    }
    return std::nullopt;
  }

  std::size_t vertex_index(const std::string& name) const {
    auto v = find_vertex(name);
    if (!v) throw InputError("unknown vertex '" + name + "'");
    return *v;
  }

  std::size_t arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      if (arrows[i].name == name) return i;
    }
    throw InputError("unknown arrow '" + name + "'");
  }

  void add_arrow(const std::string& name, const std::string& source, const std::string& target) {
    if (!is_identifier(name)) throw InputError("bad arrow name '" + name + "'");
    for (const auto& a : arrows) {
      if (a.name == name) throw InputError("duplicate arrow '" + name + "'");
    }
    arrows.push_back({name, vertex_index(source), vertex_index(target)});
  }

  // Parses e.g. "g*a - d*b" or "2 g*a + 1/2 d*b"; `g*a` means g o a.
  void add_relation(const std::string& text) {
    Relation rel;
    rel.text = text;
    std::map<Path, Rational> collected;
    std::vector<Path> order;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos >= text.size()) break;
      int sign = 1;
      if (text[pos] == '+' || text[pos] == '-') {
        sign = text[pos] == '-' ? -1 : 1;
        ++pos;
      } else if (!first) {
        throw InputError("expected '+' or '-' in relation '" + text + "'");
      }
      std::size_t end = text.find_first_of("+-", pos);
      std::string term = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
      pos = end == std::string::npos ? text.size() : end;
      auto [coef, path] = parse_term(term, text);
      if (path.empty()) throw InputError("empty path in relation '" + text + "'");
      if (!collected.count(path)) order.push_back(path);
      collected[path] += sign * coef;
      first = false;
    }
    std::optional<std::pair<std::size_t, std::size_t>> ends;
    for (const auto& p : order) {
      if (collected[p] == 0) continue;
      auto e = std::make_pair(path_source(p), path_target(p));
      if (ends && *ends != e) throw InputError("relation '" + text + "' mixes non-parallel paths");
      ends = e;
      rel.terms.push_back({collected[p], p});
    }
    if (rel.terms.empty()) throw InputError("relation '" + text + "' is zero");
    relations.push_back(std::move(rel));
  }

  std::size_t path_source(const Path& p) const { return arrows.at(p.front()).source; }
  std::size_t path_target(const Path& p) const { return arrows.at(p.back()).target; }

  // "g*a" for traversal {a, g}; empty paths render as id_<vertex>.
  std::string path_name(const Path& p, std::size_t vertex) const {
    if (p.empty()) return "id_" + vertices.at(vertex);
    std::string s;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      if (!s.empty()) s += "*";
      s += arrows[*it].name;
    }
    return s;
  }

  // Compact text form, one directive per line:
  //   field 2 | vertex x y | arrow a: x -> y | rel g*a - d*b | bound 2
  // '#' starts a comment. Relations may appear before their arrows.
  static QuiverPresentation parse_text(const std::string& text) {
    QuiverPresentation p;
    std::vector<std::string> rels;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      std::istringstream ls(line);
      std::string kw;
      if (!(ls >> kw)) continue;
      std::string rest;
      std::getline(ls, rest);
      auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
      try {
        if (kw == "vertex" || kw == "vertices") {
          std::istringstream vs(rest);
          std::string v;
          while (vs >> v) p.add_vertex(v);
        } else if (kw == "arrow") {
          auto colon = rest.find(':');
          auto arrow = rest.find("->");
          if (colon == std::string::npos || arrow == std::string::npos || arrow < colon) {
            throw InputError("expected 'arrow name: source -> target'");
          }
          std::string name = trimmed(rest.substr(0, colon));
          std::string src = trimmed(rest.substr(colon + 1, arrow - colon - 1));
          std::string tgt = trimmed(rest.substr(arrow + 2));
          p.add_vertex(src);
          p.add_vertex(tgt);
          p.add_arrow(name, src, tgt);
        } else if (kw == "rel" || kw == "relation") {
          rels.push_back(trimmed(rest));
        } else if (kw == "bound") {
          p.length_bound = std::stoul(trimmed(rest));
        } else if (kw == "field" || kw == "characteristic") {
          p.characteristic = std::stoull(trimmed(rest));
        } else {
          throw InputError("unknown directive '" + kw + "'");
        }
      } catch (const InputError& e) {
        throw InputError(e.what() + where());
      } catch (const std::exception&) {
        throw InputError("malformed number" + where());
      }
    }
    for (const auto& r : rels) p.add_relation(r);
    if (p.length_bound == 0) throw InputError("length bound must be positive");
    return p;
  }

  static bool is_identifier(const std::string& s) {
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
    });
  }

 private:
  static std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  static bool is_number(const std::string& s) {
    if (s.empty()) return false;
    std::size_t slash = 0;
    for (char c : s) {
      if (c == '/') {
        ++slash;
      } else if (!std::isdigit(static_cast<unsigned char>(c))) {
        return false;
      }
    }
    return slash <= 1 && s.front() != '/' && s.back() != '/';
  }

  std::pair<Rational, Path> parse_term(const std::string& raw, const std::string& whole) const {
    std::string term = trimmed(raw);
    Rational coef = 1;
    // leading coefficient: "3 g*a", "3*g*a", "1/2 g*a"
    std::size_t i = 0;
    while (i < term.size() && (std::isdigit(static_cast<unsigned char>(term[i])) || term[i] == '/')) ++i;
    if (i > 0) {
      std::string num = term.substr(0, i);
      if (!is_number(num)) throw InputError("bad coefficient in relation '" + whole + "'");
      auto slash = num.find('/');
      coef = slash == std::string::npos
                 ? Rational(BigInt(num))
                 : Rational(BigInt(num.substr(0, slash)), BigInt(num.substr(slash + 1)));
      term = trimmed(term.substr(i));
      if (!term.empty() && term[0] == '*') term = trimmed(term.substr(1));
    }
    std::vector<std::string> names;
    std::size_t start = 0;
    while (true) {
      auto star = term.find('*', start);
      names.push_back(trimmed(term.substr(start, star == std::string::npos ? std::string::npos : star - start)));
      if (star == std::string::npos) break;
      start = star + 1;
    }
    Path path;
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      if (it->empty()) throw InputError("empty factor in relation '" + whole + "'");
      path.push_back(arrow_index(*it));
    }
    for (std::size_t k = 1; k < path.size(); ++k) {
      if (arrows[path[k - 1]].target != arrows[path[k]].source) {
        throw InputError("non-composable path '" + raw + "' in relation '" + whole + "'");
      }
    }
    return {coef, path};
  }
};

class TruncationUnsound : public InputError {
 public:
  TruncationUnsound(std::string witness, std::size_t bound)
      : InputError("truncation at length " + std::to_string(bound) + " is unsound: path '" +
                   witness + "' is not in the ideal"),
        witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

// The presented category with the path-monomial basis chosen for each hom.
struct PresentedCategory {
  std::shared_ptr<LinCat> category;
  QuiverPresentation presentation;
  // basis_paths[x * n + y][i] is the path named category->basis(x, y)[i].
  std::vector<std::vector<Path>> basis_paths;
};

// Hom spaces are paths of length <= N modulo the span of all u*r*v. The
// ideal is computed modulo paths longer than 2N; soundness requires every
// path of length in (N, 2N] to lie in it, which makes longer paths vanish too.
inline PresentedCategory present(const QuiverPresentation& p, FieldSpec field,
                                 std::size_t max_paths = 200000) {
  const std::size_t n = p.vertices.size();
  const std::size_t N = p.length_bound;
  if (N == 0) throw InputError("length bound must be positive");
  auto pair = [n](std::size_t x, std::size_t y) { return x * n + y; };

  // paths[x*n+y]: all paths x -> y of length <= 2N, enumerated by length.
  std::vector<std::vector<Path>> paths(n * n);
  std::map<std::pair<std::size_t, Path>, std::size_t> index;
  std::vector<std::pair<std::size_t, Path>> frontier;
  std::size_t total = 0;
  for (std::size_t x = 0; x < n; ++x) {
    index[{pair(x, x), Path{}}] = paths[pair(x, x)].size();
    paths[pair(x, x)].push_back({});
    frontier.push_back({x, Path{}});
    ++total;
  }
  for (std::size_t len = 1; len <= 2 * N; ++len) {
    std::vector<std::pair<std::size_t, Path>> next;
    for (const auto& [x, path] : frontier) {
      std::size_t end = path.empty() ? x : p.arrows[path.back()].target;
      for (std::size_t a = 0; a < p.arrows.size(); ++a) {
        if (p.arrows[a].source != end) continue;
        Path q = path;
        q.push_back(a);
        std::size_t pr = pair(x, p.arrows[a].target);
        index[{pr, q}] = paths[pr].size();
        paths[pr].push_back(q);
        next.push_back({x, std::move(q)});
        if (++total > max_paths) throw InputError("too many paths up to length 2N; lower the bound");
      }
    }
    frontier = std::move(next);
  }

  // Generators of the ideal, bucketed by hom pair.
  std::vector<std::vector<Vector>> ideal(n * n);
  for (const auto& rel : p.relations) {
    const std::size_t s = p.path_source(rel.terms.front().path);
    const std::size_t t = p.path_target(rel.terms.front().path);
    std::size_t min_len = rel.terms.front().path.size();
    for (const auto& term : rel.terms) min_len = std::min(min_len, term.path.size());
    for (std::size_t x = 0; x < n; ++x) {
      for (const auto& v : paths[pair(x, s)]) {
        for (std::size_t y = 0; y < n; ++y) {
          for (const auto& u : paths[pair(t, y)]) {
            if (v.size() + u.size() + min_len > 2 * N) continue;
            Vector g = zero_vector(field, paths[pair(x, y)].size());
            for (const auto& term : rel.terms) {
              if (v.size() + term.path.size() + u.size() > 2 * N) continue;
              Path w = v;
              w.insert(w.end(), term.path.begin(), term.path.end());
              w.insert(w.end(), u.begin(), u.end());
              g[index.at({pair(x, y), w})] += Scalar(field, term.coefficient);
            }
            if (!is_zero(g)) ideal[pair(x, y)].push_back(std::move(g));
          }
        }
      }
    }
  }

  PresentedCategory out;
  out.presentation = p;
  out.basis_paths.assign(n * n, {});
  // coords[pair][k]: coordinates of paths[pair][k] over the chosen basis.
  std::vector<std::vector<Vector>> coords(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto& ps = paths[pair(x, y)];
      const std::size_t m = ps.size();
      // Longest paths first, so pivots land on long paths and the surviving
      // basis consists of the shortest, earliest-declared ones.
      std::vector<std::size_t> perm(m);
      for (std::size_t k = 0; k < m; ++k) perm[k] = m - 1 - k;
      std::stable_sort(perm.begin(), perm.end(),
                       [&](std::size_t a, std::size_t b) { return ps[a].size() > ps[b].size(); });
      std::vector<Vector> gens;
      for (const auto& g : ideal[pair(x, y)]) {
        Vector h = zero_vector(field, m);
        for (std::size_t k = 0; k < m; ++k) h[k] = g[perm[k]];
        gens.push_back(std::move(h));
      }
      QuotientBasis q = quotient_basis(field, m, gens);
      // Representative k of q corresponds to permuted column free[k].
      std::vector<std::size_t> free_orig;
      for (const auto& r : q.representatives) {
        for (std::size_t k = 0; k < m; ++k) {
          if (!r[k].is_zero()) free_orig.push_back(perm[k]);
        }
      }
      std::vector<std::size_t> order(free_orig.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return free_orig[a] < free_orig[b]; });

      std::vector<std::size_t> inv_perm(m);
      for (std::size_t k = 0; k < m; ++k) inv_perm[perm[k]] = k;
      coords[pair(x, y)].resize(m);
      for (std::size_t orig = 0; orig < m; ++orig) {
        Vector c = zero_vector(field, order.size());
        for (std::size_t r = 0; r < order.size(); ++r) c[r] = q.project(order[r], inv_perm[orig]);
        if (ps[orig].size() > N && !is_zero(c)) throw TruncationUnsound(p.path_name(ps[orig], x), N);
        coords[pair(x, y)][orig] = std::move(c);
      }
      for (auto r : order) out.basis_paths[pair(x, y)].push_back(ps[free_orig[r]]);
    }
  }

  auto cat = std::make_shared<LinCat>(field, p.vertices);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      std::vector<std::string> names;
      for (const auto& path : out.basis_paths[pair(x, y)]) names.push_back(p.path_name(path, x));
      cat->set_hom(x, y, names);
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    cat->set_identity(x, coords[pair(x, x)][index.at({pair(x, x), Path{}})]);
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        const auto& fs = out.basis_paths[pair(x, y)];
        const auto& gs = out.basis_paths[pair(y, z)];
        for (std::size_t j = 0; j < gs.size(); ++j) {
          for (std::size_t i = 0; i < fs.size(); ++i) {
            Path w = fs[i];
            w.insert(w.end(), gs[j].begin(), gs[j].end());
            const Vector& c = coords[pair(x, z)][index.at({pair(x, z), w})];
            if (!is_zero(c)) cat->set_composition(x, y, z, j, i, c);
          }
        }
      }
    }
  }
  out.category = std::move(cat);
  return out;
}

// Extends arrow images multiplicatively to the path basis of a presented
// category. The result still has to pass validate_functor, which fails when
// the images do not satisfy the relations.
inline LinFunctor functor_from_arrows(const PresentedCategory& source, const CatPtr& target,
                                      const std::vector<std::size_t>& object_map,
                                      const std::map<std::string, HomElement>& arrow_images) {
  const auto& p = source.presentation;
  const LinCat& c = *source.category;
  LinFunctor f(source.category, target, object_map);
  std::vector<HomElement> images;
  for (const auto& a : p.arrows) {
    auto it = arrow_images.find(a.name);
    if (it == arrow_images.end()) throw InputError("no image for arrow '" + a.name + "'");
    if (it->second.source != object_map.at(a.source) || it->second.target != object_map.at(a.target)) {
      throw InputError("image of arrow '" + a.name + "' lies in the wrong hom space");
    }
    images.push_back(it->second);
  }
  const std::size_t n = c.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto& bps = source.basis_paths[x * n + y];
      for (std::size_t i = 0; i < bps.size(); ++i) {
        HomElement img = target->identity(object_map[x]);
        for (auto a : bps[i]) img = target->compose(images[a], img);
        f.set_image({x, y, i}, img.coords);
      }
    }
  }
  return f;
}

}  // namespace lincat
