#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "lincat/category.hpp"

namespace lincat {

// A k-linear functor between finite categories: an object map together with,
// for every source pair (x, y), the matrix of hom(x, y) -> hom(Fx, Fy) in the
// declared bases.
class LinFunctor {
 public:
  LinFunctor() = default;

  LinFunctor(CatPtr source, CatPtr target, std::vector<std::size_t> object_map)
      : source_(std::move(source)), target_(std::move(target)), objects_(std::move(object_map)) {
    if (!source_ || !target_) throw InputError("functor needs a source and a target");
    if (source_->field() != target_->field()) throw FieldMismatch("functor between categories over different fields");
    if (objects_.size() != source_->size()) throw InputError("object map has the wrong size");
    for (auto o : objects_) {
      if (o >= target_->size()) throw InputError("object map hits an undeclared object");
    }
    const std::size_t n = source_->size();
    matrices_.reserve(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        matrices_.emplace_back(source_->field(), target_->dim(objects_[x], objects_[y]),
                               source_->dim(x, y));
      }
    }
  }

  static LinFunctor identity(const CatPtr& c) {
    std::vector<std::size_t> objs(c->size());
    for (std::size_t i = 0; i < objs.size(); ++i) objs[i] = i;
    LinFunctor f(c, c, objs);
    for (std::size_t x = 0; x < c->size(); ++x) {
      for (std::size_t y = 0; y < c->size(); ++y) {
        f.set_matrix(x, y, Matrix::identity(c->field(), c->dim(x, y)));
      }
    }
    return f;
  }

  const CatPtr& source_ptr() const noexcept { return source_; }
  const CatPtr& target_ptr() const noexcept { return target_; }
  const LinCat& source() const { return *source_; }
  const LinCat& target() const { return *target_; }

  std::size_t operator()(std::size_t x) const { return objects_.at(x); }
  const std::vector<std::size_t>& object_map() const noexcept { return objects_; }

  const Matrix& matrix(std::size_t x, std::size_t y) const { return matrices_.at(x * source_->size() + y); }

  void set_matrix(std::size_t x, std::size_t y, Matrix m) {
    const Matrix& cur = matrix(x, y);
    if (m.rows() != cur.rows() || m.cols() != cur.cols()) {
      throw InputError("functor matrix for (" + source_->object_name(x) + ", " +
                       source_->object_name(y) + ") has the wrong shape");
    }
    matrices_[x * source_->size() + y] = std::move(m);
  }

  // Image of one source basis morphism.
  void set_image(const BasisRef& r, const Vector& image) {
    Matrix m = matrix(r.source, r.target);
    m.set_column(r.index, image);
    set_matrix(r.source, r.target, std::move(m));
  }

  HomElement apply(const HomElement& h) const {
    return {objects_.at(h.source), objects_.at(h.target), matrix(h.source, h.target).apply(h.coords)};
  }

  friend bool operator==(const LinFunctor& a, const LinFunctor& b) {
    auto same = [](const CatPtr& p, const CatPtr& q) { return p == q || (p && q && *p == *q); };
    return a.objects_ == b.objects_ && a.matrices_ == b.matrices_ && same(a.source_, b.source_) &&
           same(a.target_, b.target_);
  }

 private:
  CatPtr source_;
  CatPtr target_;
  std::vector<std::size_t> objects_;
  std::vector<Matrix> matrices_;
};

inline bool same_category(const CatPtr& a, const CatPtr& b) { return a == b || (a && b && *a == *b); }

// g o f.
inline LinFunctor compose(const LinFunctor& g, const LinFunctor& f) {
  if (!same_category(f.target_ptr(), g.source_ptr())) {
    throw PreconditionError("functors are not composable");
  }
  std::vector<std::size_t> objs(f.source().size());
  for (std::size_t x = 0; x < objs.size(); ++x) objs[x] = g(f(x));
  LinFunctor h(f.source_ptr(), g.target_ptr(), objs);
  for (std::size_t x = 0; x < objs.size(); ++x) {
    for (std::size_t y = 0; y < objs.size(); ++y) {
      h.set_matrix(x, y, g.matrix(f(x), f(y)) * f.matrix(x, y));
    }
  }
  return h;
}

// Unit preservation and multiplicativity on all composable basis pairs.
inline ValidationReport validate_functor(const LinFunctor& f) {
  ValidationReport report;
  const LinCat& c = f.source();
  const LinCat& b = f.target();
  const std::size_t n = c.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (f.apply(c.identity(x)) != b.identity(f(x))) {
      report.push_back({"unit", "F(id_" + c.object_name(x) + ") = " + b.render(f.apply(c.identity(x)))});
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        for (std::size_t j = 0; j < c.dim(y, z); ++j) {
          HomElement g = c.basis_element({y, z, j});
          for (std::size_t i = 0; i < c.dim(x, y); ++i) {
            HomElement h = c.basis_element({x, y, i});
            if (f.apply(c.compose(g, h)) != b.compose(f.apply(g), f.apply(h))) {
              report.push_back({"multiplicativity", "F(" + c.basis(y, z)[j] + " o " + c.basis(x, y)[i] + ")"});
            }
          }
        }
      }
    }
  }
  return report;
}

// Bijective on objects with every hom matrix invertible.
inline bool is_isomorphism(const LinFunctor& f) {
  const std::size_t n = f.source().size();
  if (f.target().size() != n) return false;
  std::vector<bool> hit(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    if (hit[f(x)]) return false;
    hit[f(x)] = true;
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!is_invertible(f.matrix(x, y))) return false;
    }
  }
  return true;
}

inline bool is_identity_on_objects(const LinFunctor& f) {
  for (std::size_t x = 0; x < f.source().size(); ++x) {
    if (f(x) != x) return false;
  }
  return true;
}

}  // namespace lincat
