#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lincat/error.hpp"
#include "lincat/matrix.hpp"
#include "lincat/scalar.hpp"

namespace lincat {

// Position of a basis morphism: hom(source, target), slot `index`.
struct BasisRef {
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t index = 0;

  friend bool operator==(const BasisRef&, const BasisRef&) = default;
};

// A linear combination of basis morphisms of a single hom space.
struct HomElement {
  std::size_t source = 0;
  std::size_t target = 0;
  Vector coords;

  bool is_zero() const { return lincat::is_zero(coords); }
  friend bool operator==(const HomElement&, const HomElement&) = default;
};

// A finite k-linear category given by structure constants. Every hom space
// has a named basis (possibly empty); composition of basis morphisms is a
// vector in the basis of the composite hom space. Basis names are unique
// across the whole category.
class LinCat {
 public:
  LinCat() = default;

  LinCat(FieldSpec field, std::vector<std::string> objects)
      : field_(field), objects_(std::move(objects)) {
    const std::size_t n = objects_.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (objects_[i] == objects_[j]) throw InputError("duplicate object '" + objects_[i] + "'");
      }
    }
    homs_.assign(n * n, {});
    comp_.assign(n * n * n, {});
    identities_.assign(n, Vector{});
  }

  FieldSpec field() const noexcept { return field_; }
  std::size_t size() const noexcept { return objects_.size(); }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::string& object_name(std::size_t x) const { return objects_.at(x); }

  std::size_t object_index(const std::string& name) const {
    for (std::size_t i = 0; i < objects_.size(); ++i) {
      if (objects_[i] == name) return i;
    }
    throw InputError("unknown object '" + name + "'");
  }

  bool has_object(const std::string& name) const {
    for (const auto& o : objects_) {
      if (o == name) return true;
    }
    return false;
  }

  const std::vector<std::string>& basis(std::size_t x, std::size_t y) const {
    return homs_.at(pair(x, y));
  }
  std::size_t dim(std::size_t x, std::size_t y) const { return basis(x, y).size(); }

  // Declares the basis of hom(x, y). Clears composition data touching it.
  void set_hom(std::size_t x, std::size_t y, std::vector<std::string> names) {
    for (const auto& old : homs_.at(pair(x, y))) names_.erase(old);
    for (const auto& nm : names) {
      if (names_.count(nm)) throw InputError("duplicate basis name '" + nm + "'");
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!names_.emplace(names[i], BasisRef{x, y, i}).second) {
        throw InputError("duplicate basis name '" + names[i] + "'");
      }
    }
    homs_[pair(x, y)] = std::move(names);
    const std::size_t n = size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (pair(a, b) == pair(x, y) || pair(b, c) == pair(x, y) || pair(a, c) == pair(x, y)) {
            comp_[triple(a, b, c)].clear();
          }
        }
      }
    }
    if (x == y) identities_[x] = zero_vector(field_, dim(x, x));
  }

  std::optional<BasisRef> find_basis(const std::string& name) const {
    auto it = names_.find(name);
    if (it == names_.end()) return std::nullopt;
    return it->second;
  }

  BasisRef basis_ref(const std::string& name) const {
    auto r = find_basis(name);
    if (!r) throw InputError("unknown basis morphism '" + name + "'");
    return *r;
  }

  const std::string& basis_name(const BasisRef& r) const { return basis(r.source, r.target).at(r.index); }

  // g o f for basis morphisms f: x -> y (index i) and g: y -> z (index j).
  void set_composition(std::size_t x, std::size_t y, std::size_t z, std::size_t j, std::size_t i,
                       Vector result) {
    if (result.size() != dim(x, z)) throw InputError("composition result has wrong length");
    if (j >= dim(y, z) || i >= dim(x, y)) throw InputError("composition index out of range");
    auto& t = comp_[triple(x, y, z)];
    if (t.empty()) t.assign(dim(y, z) * dim(x, y), zero_vector(field_, dim(x, z)));
    t[j * dim(x, y) + i] = std::move(result);
  }

  // Coordinates (in hom(x, z)) of basis(y,z)[j] o basis(x,y)[i].
  Vector composition(std::size_t x, std::size_t y, std::size_t z, std::size_t j,
                     std::size_t i) const {
    const auto& t = comp_[triple(x, y, z)];
    if (t.empty()) return zero_vector(field_, dim(x, z));
    return t.at(j * dim(x, y) + i);
  }

  bool has_composition_table(std::size_t x, std::size_t y, std::size_t z) const {
    return !comp_[triple(x, y, z)].empty();
  }

  void set_identity(std::size_t x, Vector coords) {
    if (coords.size() != dim(x, x)) throw InputError("identity vector has wrong length");
    identities_.at(x) = std::move(coords);
  }

  const Vector& identity_coords(std::size_t x) const { return identities_.at(x); }

  HomElement identity(std::size_t x) const { return {x, x, identities_.at(x)}; }

  HomElement zero(std::size_t x, std::size_t y) const { return {x, y, zero_vector(field_, dim(x, y))}; }

  HomElement basis_element(const BasisRef& r) const {
    return {r.source, r.target, unit_vector(field_, dim(r.source, r.target), r.index)};
  }

  HomElement element(const std::string& basis_name) const { return basis_element(basis_ref(basis_name)); }

  // Bilinear extension of the structure constants.
  HomElement compose(const HomElement& g, const HomElement& f) const {
    if (f.target != g.source) {
      throw PreconditionError("cannot compose " + object_name(g.source) + "->" +
                              object_name(g.target) + " after " + object_name(f.source) + "->" +
                              object_name(f.target));
    }
    const std::size_t x = f.source, y = f.target, z = g.target;
    HomElement out = zero(x, z);
    for (std::size_t j = 0; j < g.coords.size(); ++j) {
      if (g.coords[j].is_zero()) continue;
      for (std::size_t i = 0; i < f.coords.size(); ++i) {
        if (f.coords[i].is_zero()) continue;
        axpy(out.coords, g.coords[j] * f.coords[i], composition(x, y, z, j, i));
      }
    }
    return out;
  }

  // "2 a - b" style rendering in the declared basis.
  std::string render(const HomElement& h) const {
    std::string s;
    for (std::size_t i = 0; i < h.coords.size(); ++i) {
      const Scalar& c = h.coords[i];
      if (c.is_zero()) continue;
      std::string coef = c.field().is_rational() ? c.to_string() : std::to_string(c.residue());
      bool neg = !coef.empty() && coef[0] == '-';
      if (neg) coef.erase(0, 1);
      if (s.empty()) {
        if (neg) s += "-";
      } else {
        s += neg ? " - " : " + ";
      }
      if (coef != "1") s += coef + " ";
      s += basis(h.source, h.target)[i];
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const LinCat& a, const LinCat& b) {
    if (a.field_ != b.field_ || a.objects_ != b.objects_ || a.homs_ != b.homs_ ||
        a.identities_ != b.identities_) {
      return false;
    }
    const std::size_t n = a.size();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          for (std::size_t j = 0; j < a.dim(y, z); ++j) {
            for (std::size_t i = 0; i < a.dim(x, y); ++i) {
              if (a.composition(x, y, z, j, i) != b.composition(x, y, z, j, i)) return false;
            }
          }
        }
      }
    }
    return true;
  }

 private:
  std::size_t pair(std::size_t x, std::size_t y) const {
    if (x >= size() || y >= size()) throw InputError("object index out of range");
    return x * size() + y;
  }
  std::size_t triple(std::size_t x, std::size_t y, std::size_t z) const {
    if (z >= size()) throw InputError("object index out of range");
    return pair(x, y) * size() + z;
  }

  FieldSpec field_;
  std::vector<std::string> objects_;
  std::vector<std::vector<std::string>> homs_;
  std::vector<std::vector<Vector>> comp_;
  std::vector<Vector> identities_;
  std::map<std::string, BasisRef> names_;
};

using CatPtr = std::shared_ptr<const LinCat>;

struct Violation {
  std::string axiom;
  std::string detail;
};

using ValidationReport = std::vector<Violation>;

// Unit and associativity axioms on all basis morphisms. Bilinearity and
// centrality of scalar multiples of identities hold by construction.
inline ValidationReport validate_category(const LinCat& c) {
  ValidationReport report;
  const std::size_t n = c.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (c.identity_coords(x).size() != c.dim(x, x)) {
      report.push_back({"identity", "identity of " + c.object_name(x) + " has the wrong length"});
      return report;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t i = 0; i < c.dim(x, y); ++i) {
        HomElement f = c.basis_element({x, y, i});
        if (c.compose(c.identity(y), f) != f) {
          report.push_back({"left unit", "id_" + c.object_name(y) + " o " + c.basis(x, y)[i] +
                                             " = " + c.render(c.compose(c.identity(y), f))});
        }
        if (c.compose(f, c.identity(x)) != f) {
          report.push_back({"right unit", c.basis(x, y)[i] + " o id_" + c.object_name(x) +
                                              " = " + c.render(c.compose(f, c.identity(x)))});
        }
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (c.dim(x, y) == 0) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (c.dim(y, z) == 0) continue;
        for (std::size_t w = 0; w < n; ++w) {
          if (c.dim(z, w) == 0) continue;
          for (std::size_t i = 0; i < c.dim(x, y); ++i) {
            HomElement f = c.basis_element({x, y, i});
            for (std::size_t j = 0; j < c.dim(y, z); ++j) {
              HomElement g = c.basis_element({y, z, j});
              HomElement gf = c.compose(g, f);
              for (std::size_t k = 0; k < c.dim(z, w); ++k) {
                HomElement h = c.basis_element({z, w, k});
                if (c.compose(h, gf) != c.compose(c.compose(h, g), f)) {
                  report.push_back({"associativity", "(" + c.basis(z, w)[k] + ", " +
                                                         c.basis(y, z)[j] + ", " +
                                                         c.basis(x, y)[i] + ")"});
                }
              }
            }
          }
        }
      }
    }
  }
  return report;
}

// One step of a walk: a nonzero morphism traversed forwards (+1, from its
// source to its target) or backwards (-1).
struct WalkStep {
  HomElement morphism;
  int sign = 1;
};

struct Walk {
  std::size_t start = 0;
  std::vector<WalkStep> steps;

  std::size_t end() const {
    std::size_t at = start;
    for (const auto& s : steps) at = s.sign > 0 ? s.morphism.target : s.morphism.source;
    return at;
  }

  // Consecutive steps chain and every morphism is nonzero.
  bool is_valid() const {
    std::size_t at = start;
    for (const auto& s : steps) {
      if (s.morphism.is_zero()) return false;
      if (s.sign > 0) {
        if (s.morphism.source != at) return false;
        at = s.morphism.target;
      } else {
        if (s.morphism.target != at) return false;
        at = s.morphism.source;
      }
    }
    return true;
  }

  Walk reversed() const {
    Walk w{end(), {}};
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) w.steps.push_back({it->morphism, -it->sign});
    return w;
  }

  // This walk followed by `next`.
  Walk then(const Walk& next) const {
    Walk w = *this;
    w.steps.insert(w.steps.end(), next.steps.begin(), next.steps.end());
    return w;
  }
};

// BFS spanning forest of the graph whose edges are nonzero hom spaces.
struct Connectivity {
  bool connected = true;
  // parent[x] is the object x was reached from; roots are their own parent.
  std::vector<std::size_t> parent;
  // Step leading from parent[x] to x (unset for roots).
  std::vector<std::optional<WalkStep>> via;
  std::vector<std::size_t> component;

  // Walk from the root of x's tree to x.
  Walk walk_from_root(std::size_t x) const {
    std::vector<WalkStep> rev;
    std::size_t at = x;
    while (parent[at] != at) {
      rev.push_back(*via[at]);
      at = parent[at];
    }
    Walk w{at, {}};
    w.steps.assign(rev.rbegin(), rev.rend());
    return w;
  }

  std::optional<Walk> walk_between(std::size_t a, std::size_t b) const {
    if (component[a] != component[b]) return std::nullopt;
    return walk_from_root(a).reversed().then(walk_from_root(b));
  }
};

inline Connectivity is_connected(const LinCat& c) {
  const std::size_t n = c.size();
  Connectivity out;
  out.parent.assign(n, n);
  out.via.assign(n, std::nullopt);
  out.component.assign(n, n);
  std::size_t comps = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (out.parent[root] != n) continue;
    out.parent[root] = root;
    out.component[root] = comps;
    std::vector<std::size_t> queue{root};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      std::size_t x = queue[q];
      for (std::size_t y = 0; y < n; ++y) {
        if (out.parent[y] != n) continue;
        if (c.dim(x, y) > 0) {
          out.via[y] = WalkStep{c.basis_element({x, y, 0}), +1};
        } else if (c.dim(y, x) > 0) {
          out.via[y] = WalkStep{c.basis_element({y, x, 0}), -1};
        } else {
          continue;
        }
        out.parent[y] = x;
        out.component[y] = comps;
        queue.push_back(y);
      }
    }
    ++comps;
  }
  out.connected = comps <= 1;
  return out;
}

// Disjoint union; object and basis names of the second copy get `suffix`.
inline LinCat disjoint_union(const LinCat& a, const LinCat& b, const std::string& suffix) {
  if (a.field() != b.field()) throw FieldMismatch("disjoint union across fields");
  std::vector<std::string> objs = a.objects();
  for (const auto& o : b.objects()) objs.push_back(o + suffix);
  LinCat u(a.field(), objs);
  const std::size_t na = a.size(), nb = b.size();
  for (std::size_t x = 0; x < na; ++x) {
    for (std::size_t y = 0; y < na; ++y) u.set_hom(x, y, a.basis(x, y));
  }
  for (std::size_t x = 0; x < nb; ++x) {
    for (std::size_t y = 0; y < nb; ++y) {
      std::vector<std::string> names;
      for (const auto& nm : b.basis(x, y)) names.push_back(nm + suffix);
      u.set_hom(na + x, na + y, names);
    }
  }
  auto copy = [&](const LinCat& src, std::size_t off) {
    const std::size_t n = src.size();
    for (std::size_t x = 0; x < n; ++x) {
      u.set_identity(off + x, src.identity_coords(x));
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          for (std::size_t j = 0; j < src.dim(y, z); ++j) {
            for (std::size_t i = 0; i < src.dim(x, y); ++i) {
              Vector v = src.composition(x, y, z, j, i);
              if (!is_zero(v)) u.set_composition(off + x, off + y, off + z, j, i, v);
            }
          }
        }
      }
    }
  };
  copy(a, 0);
  copy(b, na);
  return u;
}

}  // namespace lincat
