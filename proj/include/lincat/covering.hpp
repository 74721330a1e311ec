#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lincat/category.hpp"
#include "lincat/functor.hpp"
#include "lincat/group.hpp"
#include "lincat/matrix.hpp"

namespace lincat {

// st_x(C): every morphism into or out of x. The endomorphism space shows up
// once as incoming and once as outgoing.
struct StarDecomposition {
  struct Summand {
    std::size_t other = 0;
    std::vector<std::string> incoming;  // hom(other, x)
    std::vector<std::string> outgoing;  // hom(x, other)
  };
  std::size_t base = 0;
  std::vector<Summand> summands;
  std::size_t total_dimension = 0;
};

inline StarDecomposition star(const LinCat& c, std::size_t x) {
  if (x >= c.size()) throw InputError("unknown object index");
  StarDecomposition s;
  s.base = x;
  for (std::size_t y = 0; y < c.size(); ++y) {
    StarDecomposition::Summand part{y, c.basis(y, x), c.basis(x, y)};
    s.total_dimension += part.incoming.size() + part.outgoing.size();
    s.summands.push_back(std::move(part));
  }
  return s;
}

inline std::vector<std::size_t> fibre(const LinFunctor& f, std::size_t b) {
  if (b >= f.target().size()) throw InputError("unknown base object index");
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < f.source().size(); ++x) {
    if (f(x) == b) out.push_back(x);
  }
  return out;
}

struct CoveringCheck {
  bool ok = true;
  std::string diagnostic;
  // First failing (x, b1) and side, when !ok and the failure is a star map.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  bool outgoing = true;
};

namespace detail {

// Block matrix  (+)_{y in fibre} hom(x, y) -> hom(Fx, b1)  (outgoing) or
// (+)_{y in fibre} hom(y, x) -> hom(b1, Fx)  (incoming).
inline Matrix star_map(const LinFunctor& f, const std::vector<std::size_t>& fib, std::size_t x,
                       std::size_t b1, bool outgoing) {
  const LinCat& c = f.source();
  const LinCat& b = f.target();
  std::size_t rows = outgoing ? b.dim(f(x), b1) : b.dim(b1, f(x));
  std::vector<Vector> cols;
  for (auto y : fib) {
    const Matrix& m = outgoing ? f.matrix(x, y) : f.matrix(y, x);
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  }
  return Matrix::from_columns(c.field(), rows, cols);
}

}  // namespace detail

// F is a covering when it is onto on objects and every restricted star map
// (+)_{y in F^-1(b1)} hom(x, y) -> hom(Fx, b1), and its incoming twin, is
// bijective.
inline CoveringCheck check_covering(const LinFunctor& f) {
  CoveringCheck out;
  const LinCat& c = f.source();
  const LinCat& b = f.target();
  std::vector<std::vector<std::size_t>> fibres(b.size());
  for (std::size_t x = 0; x < c.size(); ++x) fibres[f(x)].push_back(x);
  for (std::size_t bo = 0; bo < b.size(); ++bo) {
    if (fibres[bo].empty()) {
      out.ok = false;
      out.diagnostic = "not surjective on objects: empty fibre over " + b.object_name(bo);
      return out;
    }
  }
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t b1 = 0; b1 < b.size(); ++b1) {
      for (bool outgoing : {true, false}) {
        Matrix m = detail::star_map(f, fibres[b1], x, b1, outgoing);
        if (!is_invertible(m)) {
          out.ok = false;
          out.witness = {x, b1};
          out.outgoing = outgoing;
          std::size_t r = rank(m);
          std::string what = r < m.cols() ? "not injective" : "not surjective";
          out.diagnostic = std::string(outgoing ? "outgoing" : "incoming") + " star map at " +
                           c.object_name(x) + " over " + b.object_name(b1) + " is " + what +
                           " (source dim " + std::to_string(m.cols()) + ", target dim " +
                           std::to_string(m.rows()) + ", rank " + std::to_string(r) + ")";
          return out;
        }
      }
    }
  }
  return out;
}

// A functor known to be a covering, with fibres and inverted star maps cached.
class Covering {
 public:
  explicit Covering(LinFunctor f) : f_(std::move(f)) {
    CoveringCheck chk = check_covering(f_);
    if (!chk.ok) throw PreconditionError("not a covering: " + chk.diagnostic);
    const LinCat& c = f_.source();
    const LinCat& b = f_.target();
    fibres_.assign(b.size(), {});
    for (std::size_t x = 0; x < c.size(); ++x) fibres_[f_(x)].push_back(x);
    out_inv_.reserve(c.size() * b.size());
    in_inv_.reserve(c.size() * b.size());
    for (std::size_t x = 0; x < c.size(); ++x) {
      for (std::size_t b1 = 0; b1 < b.size(); ++b1) {
        out_inv_.push_back(*inverse(detail::star_map(f_, fibres_[b1], x, b1, true)));
        in_inv_.push_back(*inverse(detail::star_map(f_, fibres_[b1], x, b1, false)));
      }
    }
  }

  const LinFunctor& functor() const noexcept { return f_; }
  const LinCat& source() const { return f_.source(); }
  const LinCat& target() const { return f_.target(); }
  const std::vector<std::size_t>& fibre(std::size_t b) const { return fibres_.at(b); }

  // Preimage of v under the star map at x over b1, split by fibre object.
  // Only nonzero blocks are returned.
  std::vector<std::pair<std::size_t, Vector>> lift(std::size_t x, std::size_t b1, const Vector& v,
                                                   bool outgoing) const {
    const Matrix& inv = (outgoing ? out_inv_ : in_inv_).at(x * target().size() + b1);
    Vector u = inv.apply(v);
    std::vector<std::pair<std::size_t, Vector>> blocks;
    std::size_t off = 0;
    for (auto y : fibres_[b1]) {
      std::size_t d = outgoing ? source().dim(x, y) : source().dim(y, x);
      Vector part(u.begin() + static_cast<std::ptrdiff_t>(off), u.begin() + static_cast<std::ptrdiff_t>(off + d));
      if (!is_zero(part)) blocks.emplace_back(y, std::move(part));
      off += d;
    }
    return blocks;
  }

 private:
  LinFunctor f_;
  std::vector<std::vector<std::size_t>> fibres_;
  std::vector<Matrix> out_inv_;
  std::vector<Matrix> in_inv_;
};

// The unique H with G H = J F and H(x0) = d0, if it exists. H is seeded on
// the star of x0 by transporting F-images through J and lifting along G's
// star isomorphism, then propagated breadth-first; the candidate is finally
// checked for functoriality and G H = J F globally.
inline std::optional<LinFunctor> extend_morphism(const Covering& f, const Covering& g, const LinFunctor& j,
                                                 std::size_t x0, std::size_t d0) {
  const LinCat& c = f.source();
  const LinCat& d = g.source();
  if (!same_category(f.functor().target_ptr(), g.functor().target_ptr())) {
    throw PreconditionError("coverings have different bases");
  }
  if (!same_category(j.source_ptr(), f.functor().target_ptr()) ||
      !same_category(j.target_ptr(), f.functor().target_ptr()) || !is_identity_on_objects(j)) {
    throw PreconditionError("J must be an endofunctor of the base fixing objects");
  }
  if (x0 >= c.size() || d0 >= d.size()) throw PreconditionError("seed object out of range");
  if (g.functor()(d0) != f.functor()(x0)) {
    throw PreconditionError("seed mismatch: G(" + d.object_name(d0) + ") != F(" + c.object_name(x0) + ")");
  }

  const std::size_t n = c.size();
  const LinFunctor& F = f.functor();
  std::vector<std::optional<std::size_t>> obj(n);
  std::vector<std::optional<Matrix>> mats(n * n);
  obj[x0] = d0;
  std::vector<std::size_t> queue{x0};

  // Lifts hom(x, y) (outgoing) or hom(y, x) (incoming) at the already placed
  // object x; returns false on inconsistency.
  auto place = [&](std::size_t x, std::size_t y, bool outgoing) -> bool {
    const std::size_t dim = outgoing ? c.dim(x, y) : c.dim(y, x);
    if (dim == 0) return true;
    const std::size_t hx = *obj[x];
    std::optional<std::size_t> hy = obj[y];
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < dim; ++i) {
      HomElement e = outgoing ? c.basis_element({x, y, i}) : c.basis_element({y, x, i});
      Vector v = j.apply(F.apply(e)).coords;
      auto blocks = g.lift(hx, F(y), v, outgoing);
      if (blocks.size() != 1) return false;
      if (hy && *hy != blocks[0].first) return false;
      hy = blocks[0].first;
      cols.push_back(std::move(blocks[0].second));
    }
    if (obj[y] && *obj[y] != *hy) return false;
    if (!obj[y]) {
      obj[y] = hy;
      queue.push_back(y);
    }
    std::size_t rows = outgoing ? d.dim(hx, *hy) : d.dim(*hy, hx);
    Matrix m = Matrix::from_columns(c.field(), rows, cols);
    std::size_t key = outgoing ? x * n + y : y * n + x;
    if (mats[key] && !(*mats[key] == m)) return false;
    mats[key] = std::move(m);
    return true;
  };

  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t x = queue[q];
    for (std::size_t y = 0; y < n; ++y) {
      if (!place(x, y, true) || !place(x, y, false)) return std::nullopt;
    }
  }
  std::vector<std::size_t> objmap(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (!obj[x]) throw PreconditionError("source category is not connected");
    objmap[x] = *obj[x];
  }
  LinFunctor h(F.source_ptr(), g.functor().source_ptr(), objmap);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (mats[x * n + y]) h.set_matrix(x, y, *mats[x * n + y]);
    }
  }
  if (!validate_functor(h).empty()) return std::nullopt;
  if (!(compose(g.functor(), h) == compose(j, F))) return std::nullopt;
  return h;
}

inline std::optional<LinFunctor> extend_morphism(const LinFunctor& f, const LinFunctor& g, const LinFunctor& j,
                                                 std::size_t x0, std::size_t d0) {
  return extend_morphism(Covering(f), Covering(g), j, x0, d0);
}

// Aut_1 F as explicit functors with their composition table:
// table[a][b] = index of elements[a] o elements[b].
struct CoveringGroup {
  std::vector<LinFunctor> elements;
  FiniteGroup group;

  std::size_t index_of(const LinFunctor& h) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i] == h) return i;
    }
    return elements.size();
  }
};

inline FiniteGroup composition_table(const std::vector<LinFunctor>& elems, const std::vector<std::string>& names,
                                     std::size_t identity) {
  std::vector<std::vector<std::size_t>> table(elems.size(), std::vector<std::size_t>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a) {
    for (std::size_t b = 0; b < elems.size(); ++b) {
      LinFunctor ab = compose(elems[a], elems[b]);
      std::size_t k = 0;
      while (k < elems.size() && !(elems[k] == ab)) ++k;
      if (k == elems.size()) throw Error("automorphism set is not closed under composition");
      table[a][b] = k;
    }
  }
  return FiniteGroup(names, std::move(table), identity);
}

// Seeds run over the fibre of the first base object; by rigidity an element
// of Aut_1 F is determined by where it sends one object.
inline CoveringGroup aut1(const Covering& f) {
  if (!is_connected(f.source()).connected) throw PreconditionError("source category is not connected");
  if (f.target().size() == 0) return {};
  const auto& fib = f.fibre(0);
  const std::size_t x0 = fib.front();
  LinFunctor id_base = LinFunctor::identity(f.functor().target_ptr());
  CoveringGroup out;
  std::vector<std::string> names;
  std::size_t identity = 0;
  for (auto d0 : fib) {
    auto h = extend_morphism(f, f, id_base, x0, d0);
    if (!h || !is_isomorphism(*h)) continue;
    if (d0 == x0) {
      identity = out.elements.size();
      names.push_back("1");
    } else {
      names.push_back(f.source().object_name(x0) + "->" + f.source().object_name(d0));
    }
    out.elements.push_back(std::move(*h));
  }
  out.group = composition_table(out.elements, names, identity);
  return out;
}

inline CoveringGroup aut1(const LinFunctor& f) { return aut1(Covering(f)); }

// (H, J): F -> G with J an automorphism of the base fixing objects.
struct CoveringMorphism {
  LinFunctor h;
  LinFunctor j;
};

struct MorphismCheck {
  bool ok = true;
  std::string diagnostic;
};

inline MorphismCheck check_morphism(const CoveringMorphism& m, const LinFunctor& f, const LinFunctor& g) {
  auto fail = [](std::string why) { return MorphismCheck{false, std::move(why)}; };
  if (!same_category(f.target_ptr(), g.target_ptr())) return fail("F and G have different bases");
  if (!same_category(m.j.source_ptr(), f.target_ptr()) || !same_category(m.j.target_ptr(), f.target_ptr())) {
    return fail("J is not an endofunctor of the base");
  }
  if (!is_identity_on_objects(m.j)) return fail("J moves objects");
  if (!validate_functor(m.j).empty()) return fail("J is not a functor");
  if (!is_isomorphism(m.j)) return fail("J is not an isomorphism");
  if (!same_category(m.h.source_ptr(), f.source_ptr()) || !same_category(m.h.target_ptr(), g.source_ptr())) {
    return fail("H does not go from the source of F to the source of G");
  }
  if (!validate_functor(m.h).empty()) return fail("H is not a functor");
  if (!(compose(g, m.h) == compose(m.j, f))) return fail("G H != J F");
  return {};
}

}  // namespace lincat
