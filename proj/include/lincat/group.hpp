#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lincat/error.hpp"

namespace lincat {

// A finite group given by its multiplication table. table[a][b] = a * b.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup({"e"}, {{0}}, 0) {}

  FiniteGroup(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table,
              std::size_t identity)
      : names_(std::move(names)), table_(std::move(table)), identity_(identity) {
    validate();
    inverses_.resize(size());
    for (std::size_t a = 0; a < size(); ++a) {
      for (std::size_t b = 0; b < size(); ++b) {
        if (table_[a][b] == identity_) inverses_[a] = b;
      }
    }
  }

  static FiniteGroup trivial() { return FiniteGroup(); }

  // Elements e, g, g^2, ..., g^(n-1).
  static FiniteGroup cyclic(std::size_t n, const std::string& gen = "g") {
    if (n == 0) throw InputError("cyclic group of order 0");
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(i == 0 ? std::string("e") : i == 1 ? gen : gen + "^" + std::to_string(i));
      for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
    }
    return FiniteGroup(std::move(names), std::move(table), 0);
  }

  std::size_t size() const noexcept { return names_.size(); }
  std::size_t identity() const noexcept { return identity_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t a) const { return names_.at(a); }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }

  std::size_t mul(std::size_t a, std::size_t b) const { return table_.at(a).at(b); }
  std::size_t inv(std::size_t a) const { return inverses_.at(a); }

  std::size_t index_of(const std::string& n) const {
    auto it = std::find(names_.begin(), names_.end(), n);
    if (it == names_.end()) throw InputError("unknown group element '" + n + "'");
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t order_of(std::size_t a) const {
    std::size_t k = 1;
    for (std::size_t x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (std::size_t a = 0; a < size(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        if (mul(a, b) != mul(b, a)) return false;
      }
    }
    return true;
  }

  // Same elements, product reversed.
  FiniteGroup opposite() const {
    auto t = table_;
    for (std::size_t a = 0; a < size(); ++a) {
      for (std::size_t b = 0; b < size(); ++b) t[a][b] = table_[b][a];
    }
    return FiniteGroup(names_, std::move(t), identity_);
  }

  bool is_subgroup(const std::vector<std::size_t>& h) const {
    std::vector<bool> in(size(), false);
    for (auto x : h) in.at(x) = true;
    if (!in[identity_]) return false;
    for (auto a : h) {
      for (auto b : h) {
        if (!in[mul(a, inv(b))]) return false;
      }
    }
    return true;
  }

  bool is_normal_subgroup(const std::vector<std::size_t>& h) const {
    if (!is_subgroup(h)) return false;
    std::vector<bool> in(size(), false);
    for (auto x : h) in[x] = true;
    for (std::size_t g = 0; g < size(); ++g) {
      for (auto x : h) {
        if (!in[mul(mul(g, x), inv(g))]) return false;
      }
    }
    return true;
  }

  // Best-effort name from order statistics; the table is what counts.
  std::string label() const {
    const std::size_t n = size();
    if (n == 1) return "1";
    std::map<std::size_t, std::size_t> orders;
    for (std::size_t a = 0; a < n; ++a) ++orders[order_of(a)];
    if (orders.count(n)) return "C" + std::to_string(n);
    if (is_abelian()) {
      if (orders.rbegin()->first == 2) {
        std::size_t k = 0;
        for (std::size_t m = n; m > 1; m /= 2) ++k;
        return "C2^" + std::to_string(k);
      }
      return "abelian of order " + std::to_string(n);
    }
    if (n % 2 == 0 && orders.count(n / 2) && orders[2] >= n / 2) {
      return "D" + std::to_string(n / 2);
    }
    return "group of order " + std::to_string(n);
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.names_ == b.names_ && a.table_ == b.table_ && a.identity_ == b.identity_;
  }

 private:
  void validate() const {
    const std::size_t n = names_.size();
    if (n == 0) throw InputError("group with no elements");
    if (table_.size() != n) throw InputError("group table has wrong number of rows");
    for (const auto& row : table_) {
      if (row.size() != n) throw InputError("group table row has wrong length");
      std::vector<bool> seen(n, false);
      for (auto x : row) {
        if (x >= n) throw InputError("group table entry out of range");
        if (seen[x]) throw InputError("group table is not a Latin square");
        seen[x] = true;
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<bool> seen(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        if (seen[table_[i][j]]) throw InputError("group table is not a Latin square");
        seen[table_[i][j]] = true;
      }
    }
    if (identity_ >= n) throw InputError("group identity out of range");
    for (std::size_t a = 0; a < n; ++a) {
      if (table_[identity_][a] != a || table_[a][identity_] != a) {
        throw InputError("declared identity is not neutral");
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
            throw InputError("group table is not associative at (" + names_[a] + ", " +
                             names_[b] + ", " + names_[c] + ")");
          }
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (names_[a] == names_[b]) throw InputError("duplicate group element '" + names_[a] + "'");
      }
    }
  }

  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverses_;
};

// Group homomorphism check for an element map phi: G -> H.
inline bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h,
                            const std::vector<std::size_t>& phi) {
  if (phi.size() != g.size()) return false;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (phi[g.mul(a, b)] != h.mul(phi[a], phi[b])) return false;
    }
  }
  return true;
}

// Exhaustive search for an isomorphism G -> H, extending images of a greedy
// generating set. Adequate for the small orders handled here.
inline std::optional<std::vector<std::size_t>> find_isomorphism(const FiniteGroup& g,
                                                                const FiniteGroup& h) {
  if (g.size() != h.size()) return std::nullopt;
  const std::size_t n = g.size();

  std::vector<std::size_t> gens;
  {
    std::vector<bool> reached(n, false);
    reached[g.identity()] = true;
    std::vector<std::size_t> span{g.identity()};
    for (std::size_t a = 0; a < n; ++a) {
      if (reached[a]) continue;
      gens.push_back(a);
      // close span under right multiplication by all generators
      span.assign(1, g.identity());
      std::fill(reached.begin(), reached.end(), false);
      reached[g.identity()] = true;
      for (std::size_t i = 0; i < span.size(); ++i) {
        for (auto s : gens) {
          auto x = g.mul(span[i], s);
          if (!reached[x]) {
            reached[x] = true;
            span.push_back(x);
          }
        }
      }
    }
  }

  std::vector<std::size_t> images(gens.size());
  auto try_extend = [&]() -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> phi(n, n);
    phi[g.identity()] = h.identity();
    std::vector<std::size_t> queue{g.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        auto x = g.mul(queue[i], gens[k]);
        auto y = h.mul(phi[queue[i]], images[k]);
        if (phi[x] == n) {
          phi[x] = y;
          queue.push_back(x);
        } else if (phi[x] != y) {
          return std::nullopt;
        }
      }
    }
    std::vector<bool> hit(n, false);
    for (auto y : phi) {
      if (y == n || hit[y]) return std::nullopt;
      hit[y] = true;
    }
    if (!is_homomorphism(g, h, phi)) return std::nullopt;
    return phi;
  };

  std::optional<std::vector<std::size_t>> found;
  auto search = [&](auto& self, std::size_t k) -> void {
    if (found) return;
    if (k == gens.size()) {
      found = try_extend();
      return;
    }
    for (std::size_t y = 0; y < n && !found; ++y) {
      if (h.order_of(y) != g.order_of(gens[k])) continue;
      images[k] = y;
      self(self, k + 1);
    }
  };
  search(search, 0);
  return found;
}

inline bool isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  return find_isomorphism(g, h).has_value();
}

}  // namespace lincat
