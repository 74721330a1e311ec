#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lincat/grading.hpp"

namespace lincat {

// A family of endomorphisms D_{x,y} of every hom space, stored in the
// declared bases.
struct Derivation {
  std::size_t objects = 0;
  std::vector<Matrix> maps;

  const Matrix& at(std::size_t x, std::size_t y) const { return maps.at(x * objects + y); }

  HomElement apply(const HomElement& h) const { return {h.source, h.target, at(h.source, h.target).apply(h.coords)}; }

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

namespace detail {

// Offsets of the D_{x,y} blocks in the flattened unknown vector; entry (r, c)
// of D_{x,y} sits at offset + c * dim + r.
inline std::vector<std::size_t> derivation_offsets(const LinCat& b, std::size_t& total) {
  const std::size_t n = b.size();
  std::vector<std::size_t> off(n * n);
  total = 0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      off[x * n + y] = total;
      total += b.dim(x, y) * b.dim(x, y);
    }
  }
  return off;
}

}  // namespace detail

inline Vector flatten(const LinCat& b, const Derivation& d) {
  std::size_t total = 0;
  auto off = detail::derivation_offsets(b, total);
  Vector v = zero_vector(b.field(), total);
  const std::size_t n = b.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t m = b.dim(x, y);
      for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t r = 0; r < m; ++r) v[off[x * n + y] + c * m + r] = d.at(x, y)(r, c);
      }
    }
  }
  return v;
}

inline Derivation unflatten(const LinCat& b, const Vector& v) {
  std::size_t total = 0;
  auto off = detail::derivation_offsets(b, total);
  if (v.size() != total) throw InputError("derivation vector has the wrong length");
  const std::size_t n = b.size();
  Derivation d{n, {}};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t m = b.dim(x, y);
      Matrix a(b.field(), m, m);
      for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t r = 0; r < m; ++r) a(r, c) = v[off[x * n + y] + c * m + r];
      }
      d.maps.push_back(std::move(a));
    }
  }
  return d;
}

inline Derivation zero_derivation(const LinCat& b) {
  Derivation d{b.size(), {}};
  for (std::size_t x = 0; x < b.size(); ++x) {
    for (std::size_t y = 0; y < b.size(); ++y) d.maps.emplace_back(b.field(), b.dim(x, y), b.dim(x, y));
  }
  return d;
}

inline bool shape_matches(const LinCat& b, const Derivation& d) {
  if (d.objects != b.size() || d.maps.size() != b.size() * b.size()) return false;
  for (std::size_t x = 0; x < b.size(); ++x) {
    for (std::size_t y = 0; y < b.size(); ++y) {
      const Matrix& m = d.at(x, y);
      if (m.rows() != b.dim(x, y) || m.cols() != b.dim(x, y) || m.field() != b.field()) return false;
    }
  }
  return true;
}

// The Leibniz system: one row per (composable basis pair, output coordinate).
inline Matrix leibniz_system(const LinCat& b) {
  std::size_t total = 0;
  auto off = detail::derivation_offsets(b, total);
  const std::size_t n = b.size();
  const FieldSpec f = b.field();
  std::vector<Vector> rows;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        const std::size_t dxy = b.dim(x, y), dyz = b.dim(y, z), dxz = b.dim(x, z);
        if (dxy == 0 || dyz == 0 || dxz == 0) continue;
        const std::size_t oxz = off[x * n + z], oyz = off[y * n + z], oxy = off[x * n + y];
        for (std::size_t j = 0; j < dyz; ++j) {
          for (std::size_t i = 0; i < dxy; ++i) {
            const Vector gf = b.composition(x, y, z, j, i);
            for (std::size_t r = 0; r < dxz; ++r) {
              Vector row = zero_vector(f, total);
              // D(g f)_r
              for (std::size_t k = 0; k < dxz; ++k) row[oxz + k * dxz + r] += gf[k];
              // - (D(g) f)_r
              for (std::size_t l = 0; l < dyz; ++l) row[oyz + j * dyz + l] -= b.composition(x, y, z, l, i)[r];
              // - (g D(f))_r
              for (std::size_t m = 0; m < dxy; ++m) row[oxy + i * dxy + m] -= b.composition(x, y, z, j, m)[r];
              if (!is_zero(row)) rows.push_back(std::move(row));
            }
          }
        }
      }
    }
  }
  return Matrix::from_rows(f, total, rows);
}

inline bool is_derivation(const LinCat& b, const Derivation& d) {
  if (!shape_matches(b, d)) return false;
  const Matrix sys = leibniz_system(b);
  return is_zero(sys.apply(flatten(b, d)));
}

inline std::vector<Derivation> derivation_space(const LinCat& b) {
  std::vector<Derivation> out;
  for (const auto& v : kernel_basis(leibniz_system(b))) {
    Derivation d = unflatten(b, v);
    for (std::size_t x = 0; x < b.size(); ++x) {
      if (!is_zero(d.apply(b.identity(x)).coords)) throw Error("derivation does not vanish on an identity");
    }
    out.push_back(std::move(d));
  }
  return out;
}

// D_alpha(f) = alpha_c f - f alpha_b for a family alpha_b in End(b).
inline Derivation inner_derivation(const LinCat& b, const std::vector<HomElement>& alpha) {
  const std::size_t n = b.size();
  if (alpha.size() != n) throw InputError("inner derivation needs one endomorphism per object");
  Derivation d{n, {}};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t m = b.dim(x, y);
      std::vector<Vector> cols;
      for (std::size_t k = 0; k < m; ++k) {
        HomElement f = b.basis_element({x, y, k});
        HomElement v = b.compose(alpha[y], f);
        axpy(v.coords, Scalar(b.field(), -1), b.compose(f, alpha[x]).coords);
        cols.push_back(v.coords);
      }
      d.maps.push_back(Matrix::from_columns(b.field(), m, cols));
    }
  }
  return d;
}

// D_alpha over a basis of (+)_b End(b); the result spans the inner
// derivations but need not be linearly independent.
inline std::vector<Derivation> inner_generators(const LinCat& b) {
  std::vector<Derivation> out;
  for (std::size_t x = 0; x < b.size(); ++x) {
    for (std::size_t k = 0; k < b.dim(x, x); ++k) {
      std::vector<HomElement> alpha;
      for (std::size_t y = 0; y < b.size(); ++y) alpha.push_back(b.zero(y, y));
      alpha[x] = b.basis_element({x, x, k});
      out.push_back(inner_derivation(b, alpha));
    }
  }
  return out;
}

inline std::size_t derivation_ambient(const LinCat& b) {
  std::size_t total = 0;
  detail::derivation_offsets(b, total);
  return total;
}

// A basis of the inner derivations.
inline std::vector<Derivation> inner_derivations(const LinCat& b) {
  std::vector<Vector> vs;
  for (const auto& d : inner_generators(b)) vs.push_back(flatten(b, d));
  std::vector<Derivation> out;
  for (const auto& v : span_basis(b.field(), derivation_ambient(b), vs)) out.push_back(unflatten(b, v));
  return out;
}

inline bool is_inner(const LinCat& b, const Derivation& d) {
  std::vector<Vector> vs;
  for (const auto& g : inner_generators(b)) vs.push_back(flatten(b, g));
  return in_span(b.field(), derivation_ambient(b), vs, flatten(b, d));
}

inline bool cohomologous(const LinCat& b, const Derivation& d1, const Derivation& d2) {
  return is_inner(b, unflatten(b, flatten(b, d1) - flatten(b, d2)));
}

struct H1Result {
  std::size_t dimension = 0;
  std::size_t derivations = 0;
  std::size_t inner = 0;
  std::vector<Derivation> representatives;
};

inline H1Result h1(const LinCat& b) {
  H1Result out;
  const auto der = derivation_space(b);
  const auto inn = inner_derivations(b);
  out.derivations = der.size();
  out.inner = inn.size();
  out.dimension = out.derivations - out.inner;
  // Inner derivations in coordinates over the derivation basis.
  const std::size_t total = derivation_ambient(b);
  std::vector<Vector> dcols;
  for (const auto& d : der) dcols.push_back(flatten(b, d));
  const Matrix basis = Matrix::from_columns(b.field(), total, dcols);
  std::vector<Vector> sub;
  for (const auto& d : inn) {
    auto c = solve(basis, flatten(b, d));
    if (!c) throw Error("inner derivation outside the derivation space");
    sub.push_back(*c);
  }
  for (const auto& rep : quotient_basis(b.field(), der.size(), sub).representatives) {
    out.representatives.push_back(unflatten(b, basis.apply(rep)));
  }
  return out;
}

// A homomorphism from a finite group into the additive group of the field.
struct Character {
  FiniteGroup group;
  std::vector<Scalar> values;

  friend bool operator==(const Character&, const Character&) = default;
};

inline ValidationReport validate_character(const Character& chi) {
  ValidationReport report;
  const FiniteGroup& g = chi.group;
  if (chi.values.size() != g.size()) {
    report.push_back({"shape", "one value per group element is required"});
    return report;
  }
  for (std::size_t s = 0; s < g.size(); ++s) {
    for (std::size_t t = 0; t < g.size(); ++t) {
      if (chi.values[g.mul(s, t)] != chi.values[s] + chi.values[t]) {
        report.push_back({"additivity", "chi(" + g.name(s) + " " + g.name(t) + ") != chi(" + g.name(s) +
                                            ") + chi(" + g.name(t) + ")"});
      }
    }
  }
  return report;
}

// A basis of Hom(G, k+). Over Q it is empty: a finite group has no nonzero
// map into a torsion-free group.
inline std::vector<Character> characters(const FiniteGroup& g, FieldSpec field) {
  std::vector<Character> out;
  if (field.is_rational()) return out;
  const std::size_t m = g.size();
  std::vector<Vector> rows;
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = 0; t < m; ++t) {
      Vector row = zero_vector(field, m);
      row[g.mul(s, t)] += Scalar::one(field);
      row[s] -= Scalar::one(field);
      row[t] -= Scalar::one(field);
      if (!is_zero(row)) rows.push_back(std::move(row));
    }
  }
  for (auto& v : kernel_basis(Matrix::from_rows(field, m, rows))) out.push_back({g, std::move(v)});
  return out;
}

inline Character zero_character(const FiniteGroup& g, FieldSpec field) {
  return {g, zero_vector(field, g.size())};
}

// The Euler derivation: a homogeneous f of degree s goes to chi(s) f.
inline Derivation delta(const LinCat& b, const Grading& z, const Character& chi) {
  for (std::size_t x = 0; x < b.size(); ++x) {
    if (b.dim(x, x) != 1) {
      throw PreconditionError("End(" + b.object_name(x) + ") has dimension " + std::to_string(b.dim(x, x)) +
                              "; every endomorphism ring must be k");
    }
  }
  if (!(b == z.category())) throw PreconditionError("grading is on a different category");
  if (!(chi.group == z.group())) throw PreconditionError("character is on a different group than the grading");
  if (auto r = validate_grading(z); !r.empty()) throw PreconditionError("invalid grading: " + r.front().detail);
  if (auto r = validate_character(chi); !r.empty()) throw PreconditionError("invalid character: " + r.front().detail);
  for (const auto& v : chi.values) {
    if (v.field() != b.field()) throw FieldMismatch("character values are over a different field");
  }
  const std::size_t n = b.size();
  Derivation d{n, {}};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const HomGrading& h = z.hom(x, y);
      const std::size_t m = h.degrees.size();
      Matrix diag(b.field(), m, m);
      for (std::size_t k = 0; k < m; ++k) diag(k, k) = chi.values[h.degrees[k]];
      d.maps.push_back(h.change * diag * *inverse(h.change));
    }
  }
  if (!is_derivation(b, d)) throw Error("Euler derivation fails the Leibniz rule");
  return d;
}

struct DeltaInjectivity {
  bool injective = false;
  std::size_t characters = 0;
  std::size_t inner_rank = 0;
  std::size_t joint_rank = 0;
  // per basis character: is its image non-inner
  std::vector<bool> non_inner;
  std::vector<Derivation> images;
};

// The classes of delta(chi) over a basis of characters are linearly
// independent modulo inner derivations. Refuses disconnected gradings.
inline DeltaInjectivity delta_injectivity_check(const LinCat& b, const Grading& z) {
  if (!is_connected_grading(z).connected) {
    throw PreconditionError("grading is not connected; injectivity is only claimed for connected gradings");
  }
  DeltaInjectivity out;
  const auto chars = characters(z.group(), b.field());
  out.characters = chars.size();
  std::vector<Vector> vs;
  for (const auto& g : inner_generators(b)) vs.push_back(flatten(b, g));
  const std::size_t total = derivation_ambient(b);
  out.inner_rank = span_dimension(b.field(), total, vs);
  for (const auto& chi : chars) {
    Derivation d = delta(b, z, chi);
    out.non_inner.push_back(!is_inner(b, d));
    vs.push_back(flatten(b, d));
    out.images.push_back(std::move(d));
  }
  out.joint_rank = span_dimension(b.field(), total, vs);
  out.injective = out.joint_rank == out.inner_rank + out.characters;
  for (bool ok : out.non_inner) out.injective = out.injective && ok;
  return out;
}

}  // namespace lincat
