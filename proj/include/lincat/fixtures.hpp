#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lincat/io.hpp"

namespace lincat::fixtures {

inline PresentedCategory from_text(const std::string& text, FieldSpec f) {
  return present(QuiverPresentation::parse_text(text), f);
}

// The Kronecker category: two objects, two parallel arrows alpha, beta.
inline CatPtr kronecker(FieldSpec f = FieldSpec::rationals()) {
  return from_text("vertex s\nvertex t\narrow alpha: s -> t\narrow beta: s -> t\n", f).category;
}

// One object with End = k[x]/(x^2).
inline CatPtr dual_numbers(FieldSpec f = FieldSpec::rationals()) {
  return from_text("vertex o\narrow x: o -> o\nrel x*x\nbound 1\n", f).category;
}

// Objects with identities only.
inline CatPtr discrete(std::size_t n = 2, FieldSpec f = FieldSpec::rationals()) {
  std::string text;
  for (std::size_t i = 0; i < n; ++i) text += "vertex o" + std::to_string(i) + "\n";
  return from_text(text, f).category;
}

inline HomElement elem(const LinCat& c, const std::map<std::string, long long>& terms) {
  if (terms.empty()) throw InputError("empty combination");
  BasisRef r0 = c.basis_ref(terms.begin()->first);
  HomElement h = c.zero(r0.source, r0.target);
  for (const auto& [name, coef] : terms) {
    BasisRef r = c.basis_ref(name);
    if (r.source != r0.source || r.target != r0.target) throw InputError("combination mixes hom spaces");
    h.coords[r.index] += Scalar(c.field(), coef);
  }
  return h;
}

// C_n: objects s_i, t_i; alpha_i: s_i -> t_i and beta_i: s_i -> t_{i+1 mod n}.
inline PresentedCategory cyclic_cover_category(std::size_t n, FieldSpec f = FieldSpec::rationals()) {
  if (n == 0) throw InputError("cyclic cover needs n >= 1");
  std::string text;
  for (std::size_t i = 0; i < n; ++i) text += "vertex s" + std::to_string(i) + "\n";
  for (std::size_t i = 0; i < n; ++i) text += "vertex t" + std::to_string(i) + "\n";
  for (std::size_t i = 0; i < n; ++i) {
    const std::string si = std::to_string(i);
    text += "arrow alpha" + si + ": s" + si + " -> t" + si + "\n";
    text += "arrow beta" + si + ": s" + si + " -> t" + std::to_string((i + 1) % n) + "\n";
  }
  return from_text(text, f);
}

// The covering C_n -> K forgetting the index.
inline LinFunctor cyclic_cover(std::size_t n, const CatPtr& k) {
  auto c = cyclic_cover_category(n, k->field());
  std::vector<std::size_t> objs;
  for (std::size_t i = 0; i < n; ++i) objs.push_back(k->object_index("s"));
  for (std::size_t i = 0; i < n; ++i) objs.push_back(k->object_index("t"));
  std::map<std::string, HomElement> images;
  for (std::size_t i = 0; i < n; ++i) {
    images["alpha" + std::to_string(i)] = k->element("alpha");
    images["beta" + std::to_string(i)] = k->element("beta");
  }
  return functor_from_arrows(c, k, objs, images);
}

// The morphism C_n -> C_m (m divides n) reducing indices mod m.
inline LinFunctor reduce_index(const LinFunctor& from, const LinFunctor& to, std::size_t n, std::size_t m) {
  if (m == 0 || n % m != 0) throw InputError("index reduction needs m dividing n");
  const LinCat& c = from.source();
  const CatPtr& d = to.source_ptr();
  std::vector<std::size_t> objs(c.size());
  for (std::size_t i = 0; i < n; ++i) {
    objs[c.object_index("s" + std::to_string(i))] = d->object_index("s" + std::to_string(i % m));
    objs[c.object_index("t" + std::to_string(i))] = d->object_index("t" + std::to_string(i % m));
  }
  LinFunctor h(from.source_ptr(), d, objs);
  for (std::size_t i = 0; i < n; ++i) {
    for (const char* a : {"alpha", "beta"}) {
      const std::string src = std::string(a) + std::to_string(i);
      h.set_image(c.basis_ref(src), d->element(std::string(a) + std::to_string(i % m)).coords);
    }
  }
  for (std::size_t x = 0; x < c.size(); ++x) h.set_image(c.basis_ref("id_" + c.object_name(x)), d->identity(objs[x]).coords);
  return h;
}

inline LinFunctor double_cover_variant(const CatPtr& k, const std::map<std::string, std::map<std::string, long long>>& alpha) {
  auto c = cyclic_cover_category(2, k->field());
  std::vector<std::size_t> objs{0, 0, 1, 1};
  std::map<std::string, HomElement> images;
  for (const auto& [a, terms] : alpha) images[a] = elem(*k, terms);
  images["beta0"] = k->element("beta");
  images["beta1"] = k->element("beta");
  return functor_from_arrows(c, k, objs, images);
}

// The three coverings of K by the double cover.
inline LinFunctor F0(const CatPtr& k) { return double_cover_variant(k, {{"alpha0", {{"alpha", 1}}}, {"alpha1", {{"alpha", 1}}}}); }
inline LinFunctor F1(const CatPtr& k) {
  return double_cover_variant(k, {{"alpha0", {{"alpha", 1}, {"beta", 1}}}, {"alpha1", {{"alpha", 1}, {"beta", 1}}}});
}
inline LinFunctor F2(const CatPtr& k) {
  return double_cover_variant(k, {{"alpha0", {{"alpha", 1}, {"beta", 1}}}, {"alpha1", {{"alpha", 1}}}});
}
// Sends every arrow to beta; a functor but not a covering.
inline LinFunctor collapsed(const CatPtr& k) {
  auto c = cyclic_cover_category(2, k->field());
  std::map<std::string, HomElement> images;
  for (const char* a : {"alpha0", "alpha1", "beta0", "beta1"}) images[a] = k->element("beta");
  return functor_from_arrows(c, k, {0, 0, 1, 1}, images);
}

// The index shift action of C_2 on the double cover.
inline GroupAction double_cover_action(const CatPtr& c) {
  FiniteGroup g = FiniteGroup::cyclic(2, "sigma");
  GroupAction a{g, c, {LinFunctor::identity(c)}};
  std::vector<std::size_t> objs(c->size());
  for (const char* o : {"s", "t"}) {
    for (int i = 0; i < 2; ++i) {
      objs[c->object_index(o + std::to_string(i))] = c->object_index(o + std::to_string(1 - i));
    }
  }
  LinFunctor sw(c, c, objs);
  for (std::size_t x = 0; x < c->size(); ++x) {
    sw.set_image(c->basis_ref("id_" + c->object_name(x)), c->identity(objs[x]).coords);
  }
  for (const char* a : {"alpha", "beta"}) {
    for (int i = 0; i < 2; ++i) {
      sw.set_image(c->basis_ref(a + std::to_string(i)), c->element(a + std::to_string(1 - i)).coords);
    }
  }
  a.functors.push_back(std::move(sw));
  return a;
}

inline const char* gdlp_text =
    "field 2\n"
    "vertex x\nvertex y\nvertex z\n"
    "arrow alpha: x -> y\narrow beta: x -> y\n"
    "arrow gamma: y -> z\narrow delta: y -> z\n"
    "rel gamma*alpha - delta*beta\n"
    "rel gamma*beta - delta*alpha\n"
    "bound 2\n";

// The same quiver with arrows a, b: x -> y, c, d: y -> z and R' = {ca, cb - da}.
inline const char* gdlp_alt_text =
    "field 2\n"
    "vertex x\nvertex y\nvertex z\n"
    "arrow a: x -> y\narrow b: x -> y\n"
    "arrow c: y -> z\narrow d: y -> z\n"
    "rel c*a\n"
    "rel c*b - d*a\n"
    "bound 2\n";

inline QuiverPresentation gdlp_presentation() { return QuiverPresentation::parse_text(gdlp_text); }
inline QuiverPresentation gdlp_alt_presentation() { return QuiverPresentation::parse_text(gdlp_alt_text); }

inline PresentedCategory gdlp_base() { return present(gdlp_presentation(), FieldSpec::prime(2)); }

inline const char* gdlp_c1_text =
    "field 2\n"
    "vertex x0\nvertex x1\nvertex y0\nvertex y1\nvertex z0\nvertex z1\n"
    "arrow alpha0: x0 -> y0\narrow beta0: x0 -> y1\n"
    "arrow alpha1: x1 -> y1\narrow beta1: x1 -> y0\n"
    "arrow gamma0: y0 -> z0\narrow delta0: y0 -> z1\n"
    "arrow gamma1: y1 -> z1\narrow delta1: y1 -> z0\n"
    "rel gamma0*alpha0 - delta1*beta0\n"
    "rel delta0*alpha0 - gamma1*beta0\n"
    "rel gamma1*alpha1 - delta0*beta1\n"
    "rel delta1*alpha1 - gamma0*beta1\n"
    "bound 2\n";

// The double cover C_1 -> B of the char-2 example.
inline LinFunctor gdlp_cover(const CatPtr& base) {
  auto c = present(QuiverPresentation::parse_text(gdlp_c1_text), FieldSpec::prime(2));
  std::vector<std::size_t> objs;
  for (const char* o : {"x", "x", "y", "y", "z", "z"}) objs.push_back(base->object_index(o));
  std::map<std::string, HomElement> images;
  for (const char* a : {"alpha", "beta", "gamma", "delta"}) {
    for (int i = 0; i < 2; ++i) images[a + std::to_string(i)] = base->element(a);
  }
  return functor_from_arrows(c, base, objs, images);
}

// K with deg alpha = e, deg beta = sigma.
inline Grading kronecker_grading(const CatPtr& k) {
  Grading z(FiniteGroup::cyclic(2, "sigma"), k);
  const std::size_t s = k->object_index("s"), t = k->object_index("t");
  HomGrading h = z.hom(s, t);
  h.degrees = {0, 1};
  z.set_hom(s, t, h);
  return z;
}

struct File {
  std::string name;
  json doc;
};

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> all{"kronecker", "kronecker-double", "F0",        "F1",
                                            "F2",        "gdlp-base",        "gdlp-C1",   "cyclic-cover-n",
                                            "smash-demo"};
  return all;
}

// The file set of a named fixture. Functor files refer to category files by
// name, so a fixture directory is self-contained.
inline std::vector<File> files(const std::string& name, FieldSpec field = FieldSpec::rationals(), std::size_t n = 2) {
  std::vector<File> out;
  auto k = kronecker(field);
  auto kfile = [&] { out.push_back({"kronecker.json", category_to_json(*k)}); };
  if (name == "kronecker") {
    kfile();
  } else if (name == "kronecker-double") {
    auto c = cyclic_cover_category(2, field).category;
    out.push_back({"kronecker-double.json", category_to_json(*c)});
    out.push_back({"kronecker-double-action.json", action_to_json(double_cover_action(c), "kronecker-double.json")});
  } else if (name == "F0" || name == "F1" || name == "F2") {
    LinFunctor f = name == "F0" ? F0(k) : name == "F1" ? F1(k) : F2(k);
    kfile();
    out.push_back({"kronecker-double.json", category_to_json(f.source())});
    out.push_back({name + ".json", functor_to_json(f, "kronecker-double.json", "kronecker.json")});
  } else if (name == "gdlp-base") {
    auto b = gdlp_base();
    out.push_back({"gdlp-base.json", category_to_json(*b.category)});
    out.push_back({"gdlp-base-presentation.json", presentation_to_json(gdlp_presentation())});
    out.push_back({"gdlp-alt-presentation.json", presentation_to_json(gdlp_alt_presentation())});
  } else if (name == "gdlp-C1") {
    auto b = gdlp_base();
    LinFunctor f = gdlp_cover(b.category);
    out.push_back({"gdlp-base.json", category_to_json(*b.category)});
    out.push_back({"gdlp-C1.json", category_to_json(f.source())});
    out.push_back({"gdlp-C1-cover.json", functor_to_json(f, "gdlp-C1.json", "gdlp-base.json")});
  } else if (name == "cyclic-cover-n") {
    const std::string cn = "cover-C" + std::to_string(n);
    LinFunctor f = cyclic_cover(n, k);
    kfile();
    out.push_back({cn + ".json", category_to_json(f.source())});
    out.push_back({cn + "-to-K.json", functor_to_json(f, cn + ".json", "kronecker.json")});
    if (n % 2 == 0 && n != 2) {
      LinFunctor g = cyclic_cover(2, k);
      out.push_back({"cover-C2.json", category_to_json(g.source())});
      out.push_back({"cover-C2-to-K.json", functor_to_json(g, "cover-C2.json", "kronecker.json")});
      out.push_back({"H-" + cn + "-to-C2.json", functor_to_json(reduce_index(f, g, n, 2), cn + ".json", "cover-C2.json")});
    }
  } else if (name == "smash-demo") {
    Grading z = kronecker_grading(k);
    SmashResult s = smash(z);
    kfile();
    out.push_back({"kronecker-grading.json", grading_to_json(z, "kronecker.json")});
    out.push_back({"smash-demo.json", category_to_json(*s.category)});
    out.push_back({"smash-demo-projection.json", functor_to_json(s.projection, "smash-demo.json", "kronecker.json")});
  } else {
    std::string known;
    for (const auto& nm : names()) known += (known.empty() ? "" : ", ") + nm;
    throw InputError("unknown fixture '" + name + "' (known: " + known + ")");
  }
  return out;
}

}  // namespace lincat::fixtures
