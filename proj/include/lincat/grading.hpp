#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lincat/galois.hpp"

namespace lincat {

// Homogeneous basis of one hom space: columns of `change` are the
// homogeneous elements written in the declared basis.
struct HomGrading {
  Matrix change;
  std::vector<std::size_t> degrees;
  std::vector<std::string> names;

  friend bool operator==(const HomGrading&, const HomGrading&) = default;
};

// A G-grading: every hom space splits into homogeneous components, and
// Z_t(hom(c, d)) o Z_s(hom(b, c)) lies in Z_{ts}(hom(b, d)).
class Grading {
 public:
  Grading() = default;

  // The trivial grading: declared bases, everything of degree e.
  Grading(FiniteGroup group, CatPtr category) : group_(std::move(group)), cat_(std::move(category)) {
    const std::size_t n = cat_->size();
    homs_.reserve(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const std::size_t d = cat_->dim(x, y);
        homs_.push_back({Matrix::identity(cat_->field(), d), std::vector<std::size_t>(d, group_.identity()),
                         cat_->basis(x, y)});
      }
    }
  }

  const FiniteGroup& group() const noexcept { return group_; }
  const CatPtr& category_ptr() const noexcept { return cat_; }
  const LinCat& category() const { return *cat_; }

  const HomGrading& hom(std::size_t x, std::size_t y) const { return homs_.at(x * cat_->size() + y); }

  void set_hom(std::size_t x, std::size_t y, HomGrading h) {
    const std::size_t d = cat_->dim(x, y);
    if (h.change.rows() != d || h.change.cols() != d || h.degrees.size() != d || h.names.size() != d) {
      throw InputError("grading of hom(" + cat_->object_name(x) + ", " + cat_->object_name(y) +
                       ") has the wrong size");
    }
    for (auto s : h.degrees) {
      if (s >= group_.size()) throw InputError("degree out of range");
    }
    homs_.at(x * cat_->size() + y) = std::move(h);
  }

  // Coordinates of v (declared basis of hom(x, y)) over the homogeneous basis.
  std::optional<Vector> homogeneous_coords(std::size_t x, std::size_t y, const Vector& v) const {
    return solve(hom(x, y).change, v);
  }

  HomElement homogeneous_element(std::size_t x, std::size_t y, std::size_t k) const {
    return {x, y, hom(x, y).change.column(k)};
  }

  // Locates a homogeneous element by name.
  std::optional<BasisRef> find(const std::string& name) const {
    const std::size_t n = cat_->size();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const auto& nm = hom(x, y).names;
        for (std::size_t k = 0; k < nm.size(); ++k) {
          if (nm[k] == name) return BasisRef{x, y, k};
        }
      }
    }
    return std::nullopt;
  }

  friend bool operator==(const Grading& a, const Grading& b) {
    return a.group_ == b.group_ && same_category(a.cat_, b.cat_) && a.homs_ == b.homs_;
  }

 private:
  FiniteGroup group_;
  CatPtr cat_;
  std::vector<HomGrading> homs_;
};

inline ValidationReport validate_grading(const Grading& z) {
  ValidationReport report;
  const LinCat& c = z.category();
  const std::size_t n = c.size();
  const FiniteGroup& g = z.group();
  std::vector<std::optional<Matrix>> inv(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      inv[x * n + y] = inverse(z.hom(x, y).change);
      if (!inv[x * n + y]) {
        report.push_back({"basis", "homogeneous elements of hom(" + c.object_name(x) + ", " + c.object_name(y) +
                                       ") are not a basis"});
      }
    }
  }
  if (!report.empty()) return report;
  {
    std::vector<std::string> seen;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (const auto& nm : z.hom(x, y).names) {
          for (const auto& s : seen) {
            if (s == nm) report.push_back({"names", "duplicate homogeneous element '" + nm + "'"});
          }
          seen.push_back(nm);
        }
      }
    }
  }
  // v must be supported on homogeneous elements of degree `deg`.
  auto pure = [&](std::size_t x, std::size_t y, const Vector& v, std::size_t deg) {
    Vector h = inv[x * n + y]->apply(v);
    const auto& degs = z.hom(x, y).degrees;
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (!h[k].is_zero() && degs[k] != deg) return false;
    }
    return true;
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (!pure(x, x, c.identity(x).coords, g.identity())) {
      report.push_back({"identity", "identity of " + c.object_name(x) + " is not homogeneous of degree e"});
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t cc = 0; cc < n; ++cc) {
      const auto& zf = z.hom(b, cc);
      for (std::size_t d = 0; d < n; ++d) {
        const auto& zg = z.hom(cc, d);
        for (std::size_t i = 0; i < zf.degrees.size(); ++i) {
          HomElement f = z.homogeneous_element(b, cc, i);
          for (std::size_t j = 0; j < zg.degrees.size(); ++j) {
            HomElement h = z.homogeneous_element(cc, d, j);
            std::size_t deg = g.mul(zg.degrees[j], zf.degrees[i]);
            if (!pure(b, d, c.compose(h, f).coords, deg)) {
              report.push_back({"multiplicativity", zg.names[j] + " o " + zf.names[i] + " is not of degree " + g.name(deg)});
            }
          }
        }
      }
    }
  }
  return report;
}

// Z_s(hom(b, c)) = F(hom(x_b, s x_c)). The grading group carries the
// opposite of the composition table of Aut_1 F, which is what makes the
// degree of g o f equal deg(g) deg(f) for non-abelian deck groups.
inline Grading induced_grading(const LinFunctor& f, const CoveringGroup& deck,
                               const std::vector<std::size_t>& fibre_choice) {
  const LinCat& b = f.target();
  const LinCat& c = f.source();
  const std::size_t n = b.size();
  if (fibre_choice.size() != n) throw InputError("fibre choice needs one object per base object");
  for (std::size_t o = 0; o < n; ++o) {
    if (fibre_choice[o] >= c.size() || f(fibre_choice[o]) != o) {
      throw InputError("fibre choice for " + b.object_name(o) + " is not in its fibre");
    }
  }
  Grading z(deck.group.opposite(), f.target_ptr());
  for (std::size_t bo = 0; bo < n; ++bo) {
    const std::size_t xb = fibre_choice[bo];
    for (std::size_t co = 0; co < n; ++co) {
      const std::size_t xc = fibre_choice[co];
      HomGrading h;
      std::vector<Vector> cols;
      for (std::size_t s = 0; s < deck.elements.size(); ++s) {
        const std::size_t y = deck.elements[s](xc);
        for (std::size_t i = 0; i < c.dim(xb, y); ++i) {
          cols.push_back(f.matrix(xb, y).column(i));
          h.degrees.push_back(s);
          h.names.push_back(c.basis(xb, y)[i]);
        }
      }
      if (cols.size() != b.dim(bo, co)) throw PreconditionError("deck group is not transitive on fibres");
      h.change = Matrix::from_columns(b.field(), b.dim(bo, co), cols);
      // keep the base order of the declared basis where possible
      z.set_hom(bo, co, std::move(h));
    }
  }
  return z;
}

inline Grading induced_grading(const LinFunctor& f, const std::vector<std::size_t>& fibre_choice) {
  GaloisResult g = is_galois(f);
  if (!g.galois) throw PreconditionError("covering is not Galois: " + g.reason);
  return induced_grading(f, g.group, fibre_choice);
}

// Relabels a degree s on hom(b, c) as t_c s t_b^-1.
inline Grading regrade(const Grading& z, const std::vector<std::size_t>& t) {
  const LinCat& c = z.category();
  const FiniteGroup& g = z.group();
  if (t.size() != c.size()) throw InputError("regrading family needs one element per object");
  Grading y = z;
  for (std::size_t b = 0; b < c.size(); ++b) {
    for (std::size_t d = 0; d < c.size(); ++d) {
      HomGrading h = z.hom(b, d);
      for (auto& s : h.degrees) s = g.mul(g.mul(t.at(d), s), g.inv(t.at(b)));
      y.set_hom(b, d, std::move(h));
    }
  }
  return y;
}

struct HomogeneousStep {
  BasisRef element;  // homogeneous element `index` of hom(source, target)
  int sign = 1;
};

struct HomogeneousWalk {
  std::size_t start = 0;
  std::vector<HomogeneousStep> steps;

  std::size_t end() const {
    std::size_t at = start;
    for (const auto& s : steps) at = s.sign > 0 ? s.element.target : s.element.source;
    return at;
  }
};

// deg w = deg(phi_n)^eps_n ... deg(phi_1)^eps_1.
inline std::size_t walk_degree(const Grading& z, const HomogeneousWalk& w) {
  const FiniteGroup& g = z.group();
  const std::size_t n = z.category().size();
  std::size_t deg = g.identity();
  std::size_t at = w.start;
  for (const auto& s : w.steps) {
    const auto& e = s.element;
    if (e.source >= n || e.target >= n || e.index >= z.hom(e.source, e.target).degrees.size()) {
      throw PreconditionError("walk step is not a homogeneous element of the grading");
    }
    if (s.sign != 1 && s.sign != -1) throw PreconditionError("walk sign must be +1 or -1");
    const std::size_t from = s.sign > 0 ? e.source : e.target;
    if (from != at) throw PreconditionError("walk steps do not chain");
    at = s.sign > 0 ? e.target : e.source;
    std::size_t d = z.hom(e.source, e.target).degrees[e.index];
    deg = g.mul(s.sign > 0 ? d : g.inv(d), deg);
  }
  return deg;
}

struct GradingConnectivity {
  bool connected = true;
  // Minimal walks from (first object, e) to every reachable (c, s);
  // witnesses[c * |G| + s].
  std::vector<std::optional<HomogeneousWalk>> witnesses;
  // First unreachable (from, to, degree) when not connected.
  std::optional<std::size_t> missing_from, missing_to, missing_degree;
};

// BFS over (object, group element). A homogeneous element of degree d from b
// to c moves (b, g) to (c, d g); traversed backwards it moves (c, g) to
// (b, d^-1 g).
inline GradingConnectivity is_connected_grading(const Grading& z) {
  const LinCat& c = z.category();
  const FiniteGroup& g = z.group();
  const std::size_t n = c.size(), m = g.size();
  GradingConnectivity out;
  out.witnesses.assign(n * m, std::nullopt);
  for (std::size_t root = 0; root < n; ++root) {
    std::vector<std::optional<std::pair<std::size_t, HomogeneousStep>>> parent(n * m);
    std::vector<bool> seen(n * m, false);
    const std::size_t start = root * m + g.identity();
    seen[start] = true;
    std::vector<std::size_t> queue{start};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const std::size_t b = queue[q] / m, s = queue[q] % m;
      auto visit = [&](std::size_t state, HomogeneousStep step) {
        if (seen[state]) return;
        seen[state] = true;
        parent[state] = std::make_pair(queue[q], step);
        queue.push_back(state);
      };
      for (std::size_t d = 0; d < n; ++d) {
        const auto& fw = z.hom(b, d);
        for (std::size_t k = 0; k < fw.degrees.size(); ++k) {
          visit(d * m + g.mul(fw.degrees[k], s), {BasisRef{b, d, k}, +1});
        }
        const auto& bw = z.hom(d, b);
        for (std::size_t k = 0; k < bw.degrees.size(); ++k) {
          visit(d * m + g.mul(g.inv(bw.degrees[k]), s), {BasisRef{d, b, k}, -1});
        }
      }
    }
    for (std::size_t st = 0; st < n * m; ++st) {
      if (!seen[st]) {
        if (out.connected) {
          out.connected = false;
          out.missing_from = root;
          out.missing_to = st / m;
          out.missing_degree = st % m;
        }
        continue;
      }
      if (root != 0) continue;
      HomogeneousWalk w{root, {}};
      std::vector<HomogeneousStep> rev;
      for (std::size_t at = st; parent[at]; at = parent[at]->first) rev.push_back(parent[at]->second);
      w.steps.assign(rev.rbegin(), rev.rend());
      out.witnesses[st] = std::move(w);
    }
  }
  return out;
}

// The smash covering of a G-grading: objects (b, g), and
// hom((b, g), (c, h)) = Z_{h g^-1}(hom(b, c)).
struct SmashResult {
  std::shared_ptr<LinCat> category;
  LinFunctor projection;
  // Deck transformations R_u: (b, g) -> (b, g u). R_u o R_v = R_{v u}, so
  // the action is by the opposite group (same element names).
  GroupAction deck;
  std::size_t object(std::size_t b, std::size_t g, std::size_t group_order) const { return b * group_order + g; }
};

inline SmashResult smash(const Grading& z) {
  if (auto r = validate_grading(z); !r.empty()) throw PreconditionError("invalid grading: " + r.front().detail);
  const LinCat& b = z.category();
  const FiniteGroup& g = z.group();
  const FieldSpec field = b.field();
  const std::size_t n = b.size(), m = g.size();
  auto obj = [m](std::size_t o, std::size_t s) { return o * m + s; };

  std::vector<std::string> names;
  for (std::size_t o = 0; o < n; ++o) {
    for (std::size_t s = 0; s < m; ++s) names.push_back("(" + b.object_name(o) + "," + g.name(s) + ")");
  }
  auto cat = std::make_shared<LinCat>(field, names);
  // slots[(x, y)]: indices of homogeneous elements of hom(b, c) of degree h g^-1
  std::vector<std::vector<std::size_t>> slots(n * m * n * m);
  auto slot_key = [&](std::size_t x, std::size_t y) { return x * n * m + y; };
  for (std::size_t bo = 0; bo < n; ++bo) {
    for (std::size_t s = 0; s < m; ++s) {
      for (std::size_t co = 0; co < n; ++co) {
        for (std::size_t t = 0; t < m; ++t) {
          const std::size_t deg = g.mul(t, g.inv(s));
          const auto& hg = z.hom(bo, co);
          std::vector<std::string> basis;
          auto& sl = slots[slot_key(obj(bo, s), obj(co, t))];
          for (std::size_t k = 0; k < hg.degrees.size(); ++k) {
            if (hg.degrees[k] != deg) continue;
            sl.push_back(k);
            basis.push_back("(" + hg.names[k] + "," + g.name(s) + ")");
          }
          cat->set_hom(obj(bo, s), obj(co, t), basis);
        }
      }
    }
  }
  // Coordinates of v in hom(bo, co) restricted to the slots of (x, y).
  auto restrict = [&](std::size_t bo, std::size_t co, std::size_t x, std::size_t y, const Vector& v) {
    Vector h = *z.homogeneous_coords(bo, co, v);
    const auto& sl = slots[slot_key(x, y)];
    Vector out = zero_vector(field, sl.size());
    for (std::size_t k = 0; k < sl.size(); ++k) out[k] = h[sl[k]];
    return out;
  };
  for (std::size_t bo = 0; bo < n; ++bo) {
    for (std::size_t s = 0; s < m; ++s) {
      const std::size_t x = obj(bo, s);
      cat->set_identity(x, restrict(bo, bo, x, x, b.identity(bo).coords));
      for (std::size_t co = 0; co < n; ++co) {
        for (std::size_t t = 0; t < m; ++t) {
          const std::size_t y = obj(co, t);
          const auto& sf = slots[slot_key(x, y)];
          if (sf.empty()) continue;
          for (std::size_t dobj = 0; dobj < n; ++dobj) {
            for (std::size_t u = 0; u < m; ++u) {
              const std::size_t w = obj(dobj, u);
              const auto& sg = slots[slot_key(y, w)];
              for (std::size_t j = 0; j < sg.size(); ++j) {
                HomElement gel = z.homogeneous_element(co, dobj, sg[j]);
                for (std::size_t i = 0; i < sf.size(); ++i) {
                  HomElement fel = z.homogeneous_element(bo, co, sf[i]);
                  Vector v = restrict(bo, dobj, x, w, b.compose(gel, fel).coords);
                  if (!is_zero(v)) cat->set_composition(x, y, w, j, i, v);
                }
              }
            }
          }
        }
      }
    }
  }

  std::vector<std::size_t> objmap(n * m);
  for (std::size_t o = 0; o < n; ++o) {
    for (std::size_t s = 0; s < m; ++s) objmap[obj(o, s)] = o;
  }
  LinFunctor proj(cat, z.category_ptr(), objmap);
  for (std::size_t x = 0; x < n * m; ++x) {
    for (std::size_t y = 0; y < n * m; ++y) {
      const auto& sl = slots[slot_key(x, y)];
      for (std::size_t k = 0; k < sl.size(); ++k) {
        proj.set_image({x, y, k}, z.hom(x / m, y / m).change.column(sl[k]));
      }
    }
  }

  GroupAction deck{g.opposite(), cat, {}};
  for (std::size_t u = 0; u < m; ++u) {
    std::vector<std::size_t> shift(n * m);
    for (std::size_t o = 0; o < n; ++o) {
      for (std::size_t s = 0; s < m; ++s) shift[obj(o, s)] = obj(o, g.mul(s, u));
    }
    LinFunctor r(cat, cat, shift);
    for (std::size_t x = 0; x < n * m; ++x) {
      for (std::size_t y = 0; y < n * m; ++y) {
        r.set_matrix(x, y, Matrix::identity(field, cat->dim(x, y)));
      }
    }
    deck.functors.push_back(std::move(r));
  }
  return SmashResult{cat, std::move(proj), std::move(deck)};
}

// Z_s(a) = Z_{phi(s)}(b) on every hom space, for a bijection phi of labels.
inline bool same_homogeneous_components(const Grading& a, const Grading& b, const std::vector<std::size_t>& phi) {
  if (!same_category(a.category_ptr(), b.category_ptr()) || a.group().size() != b.group().size() ||
      phi.size() != a.group().size()) {
    return false;
  }
  const LinCat& c = a.category();
  const std::size_t n = c.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto& ha = a.hom(x, y);
      const auto& hb = b.hom(x, y);
      for (std::size_t s = 0; s < a.group().size(); ++s) {
        std::vector<Vector> ca, cb;
        for (std::size_t k = 0; k < ha.degrees.size(); ++k) {
          if (ha.degrees[k] == s) ca.push_back(ha.change.column(k));
        }
        for (std::size_t k = 0; k < hb.degrees.size(); ++k) {
          if (hb.degrees[k] == phi[s]) cb.push_back(hb.change.column(k));
        }
        const std::size_t d = c.dim(x, y);
        const std::size_t ra = span_dimension(c.field(), d, ca);
        if (ra != span_dimension(c.field(), d, cb)) return false;
        auto both = ca;
        both.insert(both.end(), cb.begin(), cb.end());
        if (span_dimension(c.field(), d, both) != ra) return false;
      }
    }
  }
  return true;
}

// Labels matched by element name.
inline bool same_homogeneous_components(const Grading& a, const Grading& b) {
  if (a.group().size() != b.group().size()) return false;
  std::vector<std::size_t> phi(a.group().size());
  for (std::size_t s = 0; s < phi.size(); ++s) {
    const auto& nm = b.group().names();
    auto it = std::find(nm.begin(), nm.end(), a.group().name(s));
    if (it == nm.end()) return false;
    phi[s] = static_cast<std::size_t>(it - nm.begin());
  }
  return same_homogeneous_components(a, b, phi);
}

// Some isomorphism of coverings H with G H = F and H an isomorphism.
inline std::optional<LinFunctor> find_covering_isomorphism(const LinFunctor& f, const LinFunctor& g) {
  if (!same_category(f.target_ptr(), g.target_ptr())) return std::nullopt;
  if (f.source().size() != g.source().size() || f.target().size() == 0) return std::nullopt;
  Covering cf(f), cg(g);
  LinFunctor id = LinFunctor::identity(f.target_ptr());
  const std::size_t x0 = cf.fibre(0).front();
  for (auto d0 : cg.fibre(0)) {
    auto h = extend_morphism(cf, cg, id, x0, d0);
    if (h && is_isomorphism(*h)) return h;
  }
  return std::nullopt;
}

}  // namespace lincat
