#pragma once

// Independent reference computations for the tests. None of these call the
// library's linear algebra; they work on plain rationals or small residues
// and use brute force where the search space is tiny.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "lincat.hpp"

namespace oracle {

using lincat::BigInt;
using lincat::Rational;

// Rank by textbook elimination over Q.
inline std::size_t rank_q(std::vector<std::vector<Rational>> a) {
  std::size_t r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

// Rank over F_p by elimination on residues.
inline std::size_t rank_p(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  auto md = [p](std::int64_t x) { return ((x % p) + p) % p; };
  auto inv = [&](std::int64_t x) {
    std::int64_t r = 1, b = md(x), e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && md(a[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const std::int64_t iv = inv(a[r][c]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || md(a[i][c]) == 0) continue;
      const std::int64_t f = md(a[i][c]) * iv % p;
      for (std::size_t k = c; k < cols; ++k) a[i][k] = md(a[i][k] - f * md(a[r][k]));
    }
    ++r;
  }
  return r;
}

// Determinant over Z by cofactor expansion (small matrices only).
inline BigInt det_z(const std::vector<std::vector<BigInt>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  BigInt d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<BigInt>> m;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<BigInt> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) row.push_back(a[i][k]);
      }
      m.push_back(row);
    }
    BigInt term = a[0][j] * det_z(m);
    d += (j % 2 == 0) ? term : BigInt(-term);
  }
  return d;
}

inline std::vector<std::vector<lincat::Scalar>> all_vectors(lincat::FieldSpec f, std::size_t dim) {
  const std::uint64_t p = f.characteristic();
  std::vector<std::vector<lincat::Scalar>> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= p;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<lincat::Scalar> v;
    std::uint64_t c = code;
    for (std::size_t i = 0; i < dim; ++i) {
      v.emplace_back(f, static_cast<long long>(c % p));
      c /= p;
    }
    out.push_back(v);
  }
  return out;
}

// All matrices of the given shape over a small prime field.
inline std::vector<lincat::Matrix> all_matrices(lincat::FieldSpec f, std::size_t rows, std::size_t cols) {
  std::vector<lincat::Matrix> out;
  for (const auto& v : all_vectors(f, rows * cols)) {
    lincat::Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
    }
    out.push_back(m);
  }
  return out;
}

// Direct functor check by composing images in the target.
inline bool is_functor(const lincat::LinFunctor& h) {
  const auto& c = h.source();
  const auto& d = h.target();
  for (std::size_t x = 0; x < c.size(); ++x) {
    if (!(h.apply(c.identity(x)) == d.identity(h(x)))) return false;
  }
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      for (std::size_t z = 0; z < c.size(); ++z) {
        for (std::size_t j = 0; j < c.dim(y, z); ++j) {
          for (std::size_t i = 0; i < c.dim(x, y); ++i) {
            auto g = c.basis_element({y, z, j});
            auto f = c.basis_element({x, y, i});
            if (!(h.apply(c.compose(g, f)) == d.compose(h.apply(g), h.apply(f)))) return false;
          }
        }
      }
    }
  }
  return true;
}

// Brute force over a small prime field: all automorphisms H of the source
// of F with F H = F.
inline std::size_t count_aut1(const lincat::LinFunctor& F) {
  const auto& c = F.source();
  const auto f = c.field();
  const std::size_t n = c.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::size_t count = 0;
  do {
    bool fibres = true;
    for (std::size_t x = 0; x < n; ++x) fibres = fibres && F(perm[x]) == F(x);
    if (!fibres) continue;
    // Candidates per pair: M with F(px,py) M = F(x,y) and M invertible.
    std::vector<std::vector<lincat::Matrix>> cand(n * n);
    bool empty = false;
    for (std::size_t x = 0; x < n && !empty; ++x) {
      for (std::size_t y = 0; y < n && !empty; ++y) {
        for (auto& m : all_matrices(f, c.dim(perm[x], perm[y]), c.dim(x, y))) {
          if (F.matrix(perm[x], perm[y]) * m == F.matrix(x, y) && lincat::is_invertible(m)) cand[x * n + y].push_back(m);
        }
        empty = cand[x * n + y].empty();
      }
    }
    if (empty) continue;
    lincat::LinFunctor h(F.source_ptr(), F.source_ptr(), perm);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == n * n) {
        if (is_functor(h)) ++count;
        return;
      }
      for (const auto& m : cand[k]) {
        h.set_matrix(k / n, k % n, m);
        rec(k + 1);
      }
    };
    rec(0);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Count of derivation families over a small prime field, by enumerating
// every family of endomorphisms and testing the Leibniz rule directly.
inline std::size_t count_derivations(const lincat::LinCat& c) {
  const auto f = c.field();
  const std::size_t n = c.size();
  std::vector<std::vector<lincat::Matrix>> all(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) all[x * n + y] = all_matrices(f, c.dim(x, y), c.dim(x, y));
  }
  std::vector<const lincat::Matrix*> pick(n * n);
  std::size_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n * n) {
      auto D = [&](const lincat::HomElement& h) {
        return lincat::HomElement{h.source, h.target, pick[h.source * n + h.target]->apply(h.coords)};
      };
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          for (std::size_t z = 0; z < n; ++z) {
            for (std::size_t j = 0; j < c.dim(y, z); ++j) {
              for (std::size_t i = 0; i < c.dim(x, y); ++i) {
                auto g = c.basis_element({y, z, j});
                auto fa = c.basis_element({x, y, i});
                auto lhs = D(c.compose(g, fa));
                auto a = c.compose(g, D(fa));
                auto b = c.compose(D(g), fa);
                for (std::size_t r = 0; r < a.coords.size(); ++r) a.coords[r] += b.coords[r];
                if (!(lhs == a)) return;
              }
            }
          }
        }
      }
      ++count;
      return;
    }
    for (const auto& m : all[k]) {
      pick[k] = &m;
      rec(k + 1);
    }
  };
  rec(0);
  return count;
}

// Number of distinct inner derivations over a small prime field.
inline std::size_t count_inner(const lincat::LinCat& c) {
  const auto f = c.field();
  const std::size_t n = c.size();
  std::vector<std::vector<lincat::Vector>> ends(n);
  for (std::size_t x = 0; x < n; ++x) ends[x] = all_vectors(f, c.dim(x, x));
  std::vector<std::vector<lincat::Vector>> seen;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::vector<lincat::Vector> image;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t k = 0; k < c.dim(x, y); ++k) {
          auto fk = c.basis_element({x, y, k});
          auto a = c.compose({y, y, ends[y][idx[y]]}, fk);
          auto b = c.compose(fk, {x, x, ends[x][idx[x]]});
          for (std::size_t r = 0; r < a.coords.size(); ++r) a.coords[r] -= b.coords[r];
          image.push_back(a.coords);
        }
      }
    }
    if (std::find(seen.begin(), seen.end(), image) == seen.end()) seen.push_back(image);
    std::size_t k = 0;
    while (k < n && ++idx[k] == ends[k].size()) idx[k++] = 0;
    if (k == n) break;
  }
  return seen.size();
}

// S3 from its permutation action on {0, 1, 2}; (ab)(k) = a(b(k)).
inline lincat::FiniteGroup s3() {
  const std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> ab{};
      for (int k = 0; k < 3; ++k) ab[k] = perms[a][perms[b][k]];
      table[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), ab) - perms.begin());
    }
  }
  return lincat::FiniteGroup({"e", "t01", "t12", "t02", "r", "r2"}, table, 0);
}

inline std::size_t log_p(std::size_t count, std::uint64_t p) {
  std::size_t d = 0;
  while (count > 1) {
    count /= p;
    ++d;
  }
  return d;
}

// Derivations and inner derivations over Q, by writing the Leibniz rule out
// entry by entry as rational equations and ranking with the oracle.
struct RationalH1 {
  std::size_t derivations = 0;
  std::size_t inner = 0;
};

inline RationalH1 rational_h1(const lincat::LinCat& c) {
  using namespace lincat;
  const std::size_t n = c.size();
  // unknown (x, y, r, col): entry r of D(basis(x,y)[col])
  std::vector<std::size_t> off(n * n + 1, 0);
  for (std::size_t p = 0; p < n * n; ++p) {
    const std::size_t d = c.dim(p / n, p % n);
    off[p + 1] = off[p] + d * d;
  }
  const std::size_t unknowns = off[n * n];
  auto var = [&](std::size_t x, std::size_t y, std::size_t r, std::size_t col) {
    return off[x * n + y] + r * c.dim(x, y) + col;
  };
  auto q = [](const Scalar& s) { return s.rational(); };
  std::vector<std::vector<Rational>> rows;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        for (std::size_t j = 0; j < c.dim(y, z); ++j) {
          for (std::size_t i = 0; i < c.dim(x, y); ++i) {
            const Vector gf = c.composition(x, y, z, j, i);
            for (std::size_t r = 0; r < c.dim(x, z); ++r) {
              std::vector<Rational> row(unknowns, 0);
              // D(g f)_r = sum_k gf_k D(e_k)_r
              for (std::size_t k = 0; k < gf.size(); ++k) row[var(x, z, r, k)] += q(gf[k]);
              // - (g D(f))_r = - sum_l D(f)_l (g o e_l)_r
              for (std::size_t l = 0; l < c.dim(x, y); ++l) row[var(x, y, l, i)] -= q(c.composition(x, y, z, j, l)[r]);
              // - (D(g) f)_r = - sum_l D(g)_l (e_l o f)_r
              for (std::size_t l = 0; l < c.dim(y, z); ++l) row[var(y, z, l, j)] -= q(c.composition(x, y, z, l, i)[r]);
              rows.push_back(row);
            }
          }
        }
      }
    }
  }
  RationalH1 out;
  out.derivations = unknowns - (rows.empty() ? 0 : rank_q(rows));
  std::vector<std::vector<Rational>> inner;
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t e = 0; e < c.dim(b, b); ++e) {
      std::vector<Rational> v(unknowns, 0);
      HomElement a = c.basis_element({b, b, e});
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          if (x != b && y != b) continue;
          for (std::size_t col = 0; col < c.dim(x, y); ++col) {
            HomElement f = c.basis_element({x, y, col});
            HomElement d = c.zero(x, y);
            if (y == b) d.coords = d.coords + c.compose(a, f).coords;
            if (x == b) d.coords = d.coords - c.compose(f, a).coords;
            for (std::size_t r = 0; r < d.coords.size(); ++r) v[var(x, y, r, col)] = q(d.coords[r]);
          }
        }
      }
      inner.push_back(v);
    }
  }
  out.inner = inner.empty() ? 0 : rank_q(inner);
  return out;
}

}  // namespace oracle
