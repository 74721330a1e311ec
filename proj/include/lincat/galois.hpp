#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "lincat/covering.hpp"

namespace lincat {

// A finite group acting on a category by automorphisms:
// functors[s] o functors[t] = functors[s * t].
struct GroupAction {
  FiniteGroup group;
  CatPtr category;
  std::vector<LinFunctor> functors;

  std::size_t act(std::size_t s, std::size_t x) const { return functors.at(s)(x); }
};

inline ValidationReport check_action(const GroupAction& a) {
  ValidationReport report;
  const LinCat& c = *a.category;
  if (a.functors.size() != a.group.size()) {
    report.push_back({"shape", "one functor per group element is required"});
    return report;
  }
  for (std::size_t s = 0; s < a.group.size(); ++s) {
    const auto& f = a.functors[s];
    if (!same_category(f.source_ptr(), a.category) || !same_category(f.target_ptr(), a.category)) {
      report.push_back({"endofunctor", a.group.name(s) + " does not act on the category"});
      return report;
    }
    for (const auto& v : validate_functor(f)) report.push_back({"functor " + a.group.name(s), v.axiom + ": " + v.detail});
    if (!is_isomorphism(f)) report.push_back({"isomorphism", a.group.name(s) + " is not an isomorphism"});
  }
  if (!(a.functors[a.group.identity()] == LinFunctor::identity(a.category))) {
    report.push_back({"identity", "the identity element does not act trivially"});
  }
  for (std::size_t s = 0; s < a.group.size(); ++s) {
    for (std::size_t t = 0; t < a.group.size(); ++t) {
      if (!(compose(a.functors[s], a.functors[t]) == a.functors[a.group.mul(s, t)])) {
        report.push_back({"compatibility", a.group.name(s) + " o " + a.group.name(t) + " != " +
                                               a.group.name(a.group.mul(s, t))});
      }
    }
  }
  for (std::size_t s = 0; s < a.group.size(); ++s) {
    if (s == a.group.identity()) continue;
    for (std::size_t x = 0; x < c.size(); ++x) {
      if (a.act(s, x) == x) {
        report.push_back({"freeness", a.group.name(s) + " fixes " + c.object_name(x)});
      }
    }
  }
  return report;
}

// C/G in the representative model: hom(alpha, beta) is (+)_{y in beta}
// hom(x_alpha, y) for the chosen representative x_alpha.
struct QuotientResult {
  std::shared_ptr<LinCat> quotient;
  LinFunctor projection;
  std::vector<std::size_t> representatives;  // per orbit, an object of C
  std::vector<std::size_t> orbit_of;         // per object of C
  // element_to[y]: the unique s with s . x_{orbit(y)} = y
  std::vector<std::size_t> element_to;
};

namespace detail {

struct OrbitData {
  std::vector<std::size_t> reps;
  std::vector<std::size_t> orbit_of;
  std::vector<std::size_t> element_to;
  std::vector<std::vector<std::size_t>> members;  // declaration order
};

inline OrbitData orbits(const GroupAction& a) {
  const LinCat& c = *a.category;
  const std::size_t n = c.size();
  OrbitData d;
  d.orbit_of.assign(n, n);
  d.element_to.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (d.orbit_of[x] != n) continue;
    std::size_t rep = x;
    for (std::size_t s = 0; s < a.group.size(); ++s) {
      if (c.object_name(a.act(s, x)) < c.object_name(rep)) rep = a.act(s, x);
    }
    const std::size_t id = d.reps.size();
    d.reps.push_back(rep);
    for (std::size_t s = 0; s < a.group.size(); ++s) {
      d.orbit_of[a.act(s, rep)] = id;
      d.element_to[a.act(s, rep)] = s;
    }
  }
  // order orbits by the declaration position of their representative
  std::vector<std::size_t> order(d.reps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return d.reps[p] < d.reps[q]; });
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  OrbitData sorted;
  sorted.element_to = d.element_to;
  sorted.orbit_of.resize(n);
  for (std::size_t x = 0; x < n; ++x) sorted.orbit_of[x] = rank[d.orbit_of[x]];
  for (auto o : order) sorted.reps.push_back(d.reps[o]);
  sorted.members.assign(sorted.reps.size(), {});
  for (std::size_t x = 0; x < n; ++x) sorted.members[sorted.orbit_of[x]].push_back(x);
  return sorted;
}

}  // namespace detail

inline QuotientResult quotient(const GroupAction& a) {
  auto report = check_action(a);
  if (!report.empty()) throw PreconditionError("invalid action: " + report.front().axiom + ": " + report.front().detail);
  const LinCat& c = *a.category;
  if (!is_connected(c).connected) throw PreconditionError("category is not connected");
  const FieldSpec field = c.field();
  const std::size_t n = c.size();
  detail::OrbitData orb = detail::orbits(a);
  const std::size_t m = orb.reps.size();

  // offset[alpha*m+beta][y]: position of the hom(x_alpha, y) block.
  std::vector<std::vector<std::size_t>> offset(m * m, std::vector<std::size_t>(n, 0));
  std::vector<std::string> names;
  for (auto r : orb.reps) names.push_back("[" + c.object_name(r) + "]");
  auto q = std::make_shared<LinCat>(field, names);
  for (std::size_t al = 0; al < m; ++al) {
    for (std::size_t be = 0; be < m; ++be) {
      std::vector<std::string> basis;
      for (auto y : orb.members[be]) {
        offset[al * m + be][y] = basis.size();
        for (const auto& nm : c.basis(orb.reps[al], y)) basis.push_back("[" + nm + "]");
      }
      q->set_hom(al, be, basis);
    }
  }
  // Embeds h in hom(x_alpha, y) into hom(alpha, orbit(y)).
  auto embed = [&](std::size_t al, const HomElement& h) {
    const std::size_t be = orb.orbit_of[h.target];
    Vector v = zero_vector(field, q->dim(al, be));
    const std::size_t off = offset[al * m + be][h.target];
    for (std::size_t i = 0; i < h.coords.size(); ++i) v[off + i] = h.coords[i];
    return v;
  };
  for (std::size_t al = 0; al < m; ++al) {
    const std::size_t xa = orb.reps[al];
    q->set_identity(al, embed(al, c.identity(xa)));
    for (std::size_t be = 0; be < m; ++be) {
      const std::size_t xb = orb.reps[be];
      for (std::size_t ga = 0; ga < m; ++ga) {
        for (auto y : orb.members[be]) {
          const std::size_t s = orb.element_to[y];  // s . x_beta = y
          for (std::size_t i = 0; i < c.dim(xa, y); ++i) {
            HomElement phi = c.basis_element({xa, y, i});
            for (auto z : orb.members[ga]) {
              for (std::size_t j = 0; j < c.dim(xb, z); ++j) {
                HomElement psi = a.functors[s].apply(c.basis_element({xb, z, j}));
                Vector v = embed(al, c.compose(psi, phi));
                if (!is_zero(v)) {
                  q->set_composition(al, be, ga, offset[be * m + ga][z] + j, offset[al * m + be][y] + i, v);
                }
              }
            }
          }
        }
      }
    }
  }

  std::vector<std::size_t> objmap(n);
  for (std::size_t x = 0; x < n; ++x) objmap[x] = orb.orbit_of[x];
  LinFunctor p(a.category, q, objmap);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t al = orb.orbit_of[x];
    const std::size_t sinv = a.group.inv(orb.element_to[x]);
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t i = 0; i < c.dim(x, y); ++i) {
        HomElement moved = a.functors[sinv].apply(c.basis_element({x, y, i}));
        p.set_image({x, y, i}, embed(al, moved));
      }
    }
  }
  QuotientResult out{q, std::move(p), orb.reps, orb.orbit_of, orb.element_to};
  if (!validate_category(*out.quotient).empty()) throw Error("quotient category fails the axioms");
  if (!validate_functor(out.projection).empty()) throw Error("projection is not a functor");
  if (auto chk = check_covering(out.projection); !chk.ok) throw Error("projection is not a covering: " + chk.diagnostic);
  return out;
}

// Literal coinvariants ((+)_{x in alpha, y in beta} hom(x, y)) / G for every
// orbit pair, compared with the representative model: the composite
// representative block -> direct sum -> coinvariants must be bijective.
inline bool check_coinvariant_model(const GroupAction& a, const QuotientResult& r) {
  const LinCat& c = *a.category;
  const FieldSpec field = c.field();
  const std::size_t m = r.representatives.size();
  std::vector<std::vector<std::size_t>> members(m);
  for (std::size_t x = 0; x < c.size(); ++x) members[r.orbit_of[x]].push_back(x);
  for (std::size_t al = 0; al < m; ++al) {
    for (std::size_t be = 0; be < m; ++be) {
      // block offsets in the full direct sum
      std::vector<std::pair<std::size_t, std::size_t>> blocks;
      std::vector<std::size_t> offs;
      std::size_t dim = 0;
      for (auto x : members[al]) {
        for (auto y : members[be]) {
          blocks.push_back({x, y});
          offs.push_back(dim);
          dim += c.dim(x, y);
        }
      }
      auto place = [&](const HomElement& h) {
        Vector v = zero_vector(field, dim);
        for (std::size_t k = 0; k < blocks.size(); ++k) {
          if (blocks[k] == std::make_pair(h.source, h.target)) {
            for (std::size_t i = 0; i < h.coords.size(); ++i) v[offs[k] + i] = h.coords[i];
          }
        }
        return v;
      };
      std::vector<Vector> aug;
      for (const auto& [x, y] : blocks) {
        for (std::size_t i = 0; i < c.dim(x, y); ++i) {
          HomElement e = c.basis_element({x, y, i});
          for (std::size_t s = 0; s < a.group.size(); ++s) {
            Vector d = place(a.functors[s].apply(e)) - place(e);
            if (!is_zero(d)) aug.push_back(std::move(d));
          }
        }
      }
      QuotientBasis qb = quotient_basis(field, dim, aug);
      if (qb.representatives.size() != r.quotient->dim(al, be)) return false;
      std::vector<Vector> images;
      for (auto y : members[be]) {
        for (std::size_t i = 0; i < c.dim(r.representatives[al], y); ++i) {
          images.push_back(qb.project.apply(place(c.basis_element({r.representatives[al], y, i}))));
        }
      }
      if (span_dimension(field, qb.representatives.size(), images) != qb.representatives.size()) return false;
    }
  }
  return true;
}

struct GaloisResult {
  bool galois = false;
  bool connected = false;
  std::size_t fibre_size = 0;
  std::size_t orbit_size = 0;
  CoveringGroup group;
  std::string reason;
};

// Galois iff the source is connected and Aut_1 F is transitive on the first
// fibre (transitivity on one fibre implies it on all of them).
inline GaloisResult is_galois(const Covering& f) {
  GaloisResult out;
  out.connected = is_connected(f.source()).connected;
  if (!out.connected) {
    out.reason = "source is not connected";
    return out;
  }
  out.group = aut1(f);
  if (f.target().size() == 0) {
    out.galois = true;
    return out;
  }
  const auto& fib = f.fibre(0);
  out.fibre_size = fib.size();
  std::vector<std::size_t> orbit;
  for (const auto& h : out.group.elements) orbit.push_back(h(fib.front()));
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  out.orbit_size = orbit.size();
  out.galois = orbit.size() == fib.size();
  if (!out.galois) {
    out.reason = "Aut_1 has order " + std::to_string(out.group.elements.size()) + " but the fibre has " +
                 std::to_string(fib.size()) + " objects; the action is not transitive";
  }
  return out;
}

inline GaloisResult is_galois(const LinFunctor& f) { return is_galois(Covering(f)); }

// The deck group of a Galois covering as a group action on its source.
inline GroupAction deck_action(const LinFunctor& f, const CoveringGroup& g) {
  return GroupAction{g.group, f.source_ptr(), g.elements};
}

struct StructureResult {
  QuotientResult quotient;
  LinFunctor induced;  // F': C / Aut_1 F -> B
  bool is_isomorphism = false;
  bool factors = false;  // F' P = F
};

inline StructureResult structure_iso(const LinFunctor& f) {
  GaloisResult g = is_galois(f);
  if (!g.galois) throw PreconditionError("covering is not Galois: " + g.reason);
  GroupAction act = deck_action(f, g.group);
  StructureResult out{quotient(act), {}, false, false};
  const auto& qr = out.quotient;
  const LinCat& c = f.source();
  const std::size_t m = qr.representatives.size();
  std::vector<std::size_t> objmap(m);
  for (std::size_t al = 0; al < m; ++al) objmap[al] = f(qr.representatives[al]);
  LinFunctor fp(qr.quotient, f.target_ptr(), objmap);
  for (std::size_t al = 0; al < m; ++al) {
    const std::size_t xa = qr.representatives[al];
    for (std::size_t be = 0; be < m; ++be) {
      std::vector<Vector> cols;
      for (std::size_t y = 0; y < c.size(); ++y) {
        if (qr.orbit_of[y] != be) continue;
        for (std::size_t i = 0; i < c.dim(xa, y); ++i) cols.push_back(f.matrix(xa, y).column(i));
      }
      fp.set_matrix(al, be, Matrix::from_columns(c.field(), f.target().dim(objmap[al], objmap[be]), cols));
    }
  }
  out.is_isomorphism = validate_functor(fp).empty() && is_isomorphism(fp);
  out.factors = compose(fp, qr.projection) == f;
  out.induced = std::move(fp);
  return out;
}

// All H with (H, 1): U -> F, by seeding over the F-fibre of the first base
// object.
inline std::vector<LinFunctor> hom_coverings(const Covering& u, const Covering& f) {
  if (!same_category(u.functor().target_ptr(), f.functor().target_ptr())) {
    throw PreconditionError("coverings have different bases");
  }
  std::vector<LinFunctor> out;
  if (u.target().size() == 0) return out;
  LinFunctor id = LinFunctor::identity(u.functor().target_ptr());
  const std::size_t u0 = u.fibre(0).front();
  for (auto c0 : f.fibre(0)) {
    if (auto h = extend_morphism(u, f, id, u0, c0)) out.push_back(std::move(*h));
  }
  return out;
}

struct GSetReport {
  std::size_t hom_count = 0;
  bool transitive = false;
  std::vector<std::size_t> isotropy;  // indices into the Aut_1 U group
  bool normal = false;
  std::size_t group_order = 0;
  bool orbit_stabilizer = false;  // |Hom| * |isotropy| == |Aut_1 U|
  FiniteGroup group;
};

// Right action of Aut_1 U on Hom(U, F) by precomposition.
inline GSetReport gset_analysis(const LinFunctor& u, const LinFunctor& f) {
  Covering cu(u), cf(f);
  GaloisResult gu = is_galois(cu);
  if (!gu.galois) throw PreconditionError("U is not Galois");
  if (!is_galois(cf).galois) throw PreconditionError("F is not Galois");
  auto homs = hom_coverings(cu, cf);
  if (homs.empty()) throw PreconditionError("Hom(U, F) is empty");
  GSetReport r;
  r.hom_count = homs.size();
  r.group = gu.group.group;
  r.group_order = gu.group.elements.size();
  auto find = [&](const LinFunctor& x) {
    for (std::size_t k = 0; k < homs.size(); ++k) {
      if (homs[k] == x) return k;
    }
    throw Error("Hom(U, F) is not closed under the Aut_1 U action");
  };
  std::vector<bool> reached(homs.size(), false);
  for (std::size_t g = 0; g < r.group_order; ++g) {
    std::size_t k = find(compose(homs[0], gu.group.elements[g]));
    reached[k] = true;
    if (k == 0) r.isotropy.push_back(g);
  }
  r.transitive = std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
  r.normal = r.group.is_normal_subgroup(r.isotropy);
  r.orbit_stabilizer = r.hom_count * r.isotropy.size() == r.group_order;
  return r;
}

struct UniversalReport {
  bool passed = true;
  std::string first_violation;
  std::size_t pairs_checked = 0;
};

// Relative universality: for each F in the family and each u0, c0 over the
// same base object there is exactly one (H, 1): U -> F with H(u0) = c0.
inline UniversalReport check_universal(const LinFunctor& u, const std::vector<LinFunctor>& family) {
  UniversalReport r;
  Covering cu(u);
  if (!is_galois(cu).galois) {
    r.passed = false;
    r.first_violation = "U is not Galois";
    return r;
  }
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& f = family[k];
    if (!same_category(u.target_ptr(), f.target_ptr())) {
      r.passed = false;
      r.first_violation = "family member " + std::to_string(k) + " has a different base";
      return r;
    }
    Covering cf(f);
    if (!is_galois(cf).galois) {
      r.passed = false;
      r.first_violation = "family member " + std::to_string(k) + " is not Galois";
      return r;
    }
    auto homs = hom_coverings(cu, cf);
    for (std::size_t u0 = 0; u0 < u.source().size(); ++u0) {
      for (std::size_t c0 = 0; c0 < f.source().size(); ++c0) {
        if (u(u0) != f(c0)) continue;
        ++r.pairs_checked;
        std::size_t count = 0;
        for (const auto& h : homs) count += h(u0) == c0 ? 1 : 0;
        if (count != 1) {
          r.passed = false;
          r.first_violation = "family member " + std::to_string(k) + ": " + std::to_string(count) +
                              " morphisms send " + u.source().object_name(u0) + " to " +
                              f.source().object_name(c0);
          return r;
        }
      }
    }
  }
  return r;
}

// Lambda: Aut_1 F -> Aut_1 G for a morphism (H, J): F -> G of Galois
// coverings, defined by Lambda(f) H = H f.
struct LambdaResult {
  FiniteGroup source_group;
  FiniteGroup target_group;
  std::vector<std::size_t> map;
  std::vector<std::size_t> kernel;
  bool homomorphism = false;
  bool surjective = false;
  bool h_surjective_on_objects = false;
  bool h_is_covering = false;
  bool h_is_galois = false;
  bool kernel_is_aut1_h = false;
};

inline LambdaResult lambda_map(const CoveringMorphism& m, const LinFunctor& f, const LinFunctor& g) {
  if (auto chk = check_morphism(m, f, g); !chk.ok) throw PreconditionError("not a morphism of coverings: " + chk.diagnostic);
  GaloisResult gf = is_galois(f);
  GaloisResult gg = is_galois(g);
  if (!gf.galois || !gg.galois) throw PreconditionError("both coverings must be Galois");
  const auto& af = gf.group;
  const auto& ag = gg.group;
  LambdaResult r;
  r.source_group = af.group;
  r.target_group = ag.group;
  const std::size_t x0 = 0;
  for (const auto& fe : af.elements) {
    LinFunctor hf = compose(m.h, fe);
    std::size_t found = ag.elements.size();
    for (std::size_t k = 0; k < ag.elements.size(); ++k) {
      if (ag.elements[k](m.h(x0)) == hf(x0)) {
        found = k;
        break;
      }
    }
    if (found == ag.elements.size() || !(compose(ag.elements[found], m.h) == hf)) {
      throw Error("no element of Aut_1 G intertwines H");
    }
    r.map.push_back(found);
  }
  r.homomorphism = is_homomorphism(af.group, ag.group, r.map);
  std::vector<bool> hit(ag.elements.size(), false);
  for (auto k : r.map) hit[k] = true;
  r.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  for (std::size_t k = 0; k < r.map.size(); ++k) {
    if (r.map[k] == ag.group.identity()) r.kernel.push_back(k);
  }
  std::vector<bool> img(g.source().size(), false);
  for (std::size_t x = 0; x < f.source().size(); ++x) img[m.h(x)] = true;
  r.h_surjective_on_objects = std::all_of(img.begin(), img.end(), [](bool b) { return b; });
  r.h_is_covering = check_covering(m.h).ok;
  if (r.h_is_covering) {
    GaloisResult gh = is_galois(m.h);
    r.h_is_galois = gh.galois;
    bool same = gh.group.elements.size() == r.kernel.size();
    for (auto k : r.kernel) same = same && gh.group.index_of(af.elements[k]) < gh.group.elements.size();
    r.kernel_is_aut1_h = same;
  }
  return r;
}

}  // namespace lincat
