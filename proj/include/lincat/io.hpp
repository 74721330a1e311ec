#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lincat/cohomology.hpp"
#include "lincat/pi1.hpp"

namespace lincat {

using json = nlohmann::json;

inline constexpr int format_version = 1;

namespace io {

inline json header(const std::string& kind) {
  return json{{"kind", kind}, {"format_version", format_version}};
}

inline const json& member(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

inline std::string string_of(const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

inline void expect_kind(const json& j, const std::string& kind, const std::string& where) {
  const std::string k = string_of(member(j, "kind", where), where + ".kind");
  if (k != kind) throw InputError(where + ": expected kind '" + kind + "', found '" + k + "'");
  const json& v = member(j, "format_version", where);
  if (!v.is_number_integer() || v.get<int>() != format_version) {
    throw InputError(where + ": unsupported format_version");
  }
}

inline std::string field_to_json(FieldSpec f) { return f.name(); }

inline FieldSpec field_from_json(const json& j, const std::string& where) {
  const std::string s = string_of(j, where);
  if (s == "Q") return FieldSpec::rationals();
  if (s.rfind("F_", 0) == 0) {
    try {
      return FieldSpec::prime(std::stoull(s.substr(2)));
    } catch (const InputError&) {
      throw;
    } catch (const std::exception&) {
    }
  }
  throw InputError(where + ": unknown field '" + s + "' (use \"Q\" or \"F_p\")");
}

inline Scalar scalar_from_json(const json& j, FieldSpec f, const std::string& where) {
  try {
    if (j.is_number_integer()) return Scalar(f, j.get<long long>());
    return Scalar::parse(string_of(j, where), f);
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

// Sparse linear combination {basis name: scalar} over hom(x, y).
inline json combination_to_json(const LinCat& c, std::size_t x, std::size_t y, const Vector& v) {
  json out = json::object();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_zero()) out[c.basis(x, y)[k]] = v[k].to_string();
  }
  return out;
}

inline Vector combination_from_json(const LinCat& c, std::size_t x, std::size_t y, const json& j,
                                    const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected a map from basis names to scalars");
  Vector v = zero_vector(c.field(), c.dim(x, y));
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto r = c.find_basis(it.key());
    if (!r) throw InputError(where + ": unknown basis morphism '" + it.key() + "'");
    if (r->source != x || r->target != y) {
      throw InputError(where + ": '" + it.key() + "' is not in hom(" + c.object_name(x) + ", " + c.object_name(y) + ")");
    }
    v[r->index] = scalar_from_json(it.value(), c.field(), where + "." + it.key());
  }
  return v;
}

inline json group_to_json(const FiniteGroup& g) {
  json table = json::array();
  for (std::size_t a = 0; a < g.size(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < g.size(); ++b) row.push_back(g.name(g.mul(a, b)));
    table.push_back(row);
  }
  return json{{"elements", g.names()}, {"identity", g.name(g.identity())}, {"table", table}};
}

inline FiniteGroup group_from_json(const json& j, const std::string& where) {
  std::vector<std::string> names;
  const json& el = member(j, "elements", where);
  if (!el.is_array()) throw InputError(where + ".elements: expected an array");
  for (const auto& e : el) names.push_back(string_of(e, where + ".elements"));
  auto index = [&](const json& e, const std::string& w) {
    const std::string s = string_of(e, w);
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == s) return i;
    }
    throw InputError(w + ": unknown group element '" + s + "'");
  };
  const json& t = member(j, "table", where);
  if (!t.is_array() || t.size() != names.size()) throw InputError(where + ".table: expected one row per element");
  std::vector<std::vector<std::size_t>> table;
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (!t[a].is_array() || t[a].size() != names.size()) {
      throw InputError(where + ".table[" + std::to_string(a) + "]: wrong length");
    }
    std::vector<std::size_t> row;
    for (const auto& e : t[a]) row.push_back(index(e, where + ".table"));
    table.push_back(std::move(row));
  }
  try {
    return FiniteGroup(names, table, index(member(j, "identity", where), where + ".identity"));
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

}  // namespace io

inline json category_to_json(const LinCat& c) {
  json j = io::header("category");
  j["field"] = io::field_to_json(c.field());
  j["objects"] = c.objects();
  json homs = json::array();
  json ids = json::object();
  json comps = json::array();
  const std::size_t n = c.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      homs.push_back({{"source", c.object_name(x)}, {"target", c.object_name(y)}, {"basis", c.basis(x, y)}});
    }
    ids[c.object_name(x)] = io::combination_to_json(c, x, x, c.identity(x).coords);
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        for (std::size_t j2 = 0; j2 < c.dim(y, z); ++j2) {
          for (std::size_t i = 0; i < c.dim(x, y); ++i) {
            const Vector v = c.composition(x, y, z, j2, i);
            if (is_zero(v)) continue;
            comps.push_back({{"first", c.basis(x, y)[i]},
                             {"then", c.basis(y, z)[j2]},
                             {"result", io::combination_to_json(c, x, z, v)}});
          }
        }
      }
    }
  }
  j["homs"] = homs;
  j["identities"] = ids;
  j["compositions"] = comps;
  return j;
}

inline std::shared_ptr<LinCat> category_from_json(const json& j, const std::string& where = "category") {
  io::expect_kind(j, "category", where);
  const FieldSpec f = io::field_from_json(io::member(j, "field", where), where + ".field");
  std::vector<std::string> objs;
  const json& oj = io::member(j, "objects", where);
  if (!oj.is_array()) throw InputError(where + ".objects: expected an array");
  for (const auto& o : oj) objs.push_back(io::string_of(o, where + ".objects"));
  std::shared_ptr<LinCat> c;
  try {
    c = std::make_shared<LinCat>(f, objs);
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  const std::size_t n = c->size();
  std::vector<bool> seen(n * n, false);
  const json& hj = io::member(j, "homs", where);
  if (!hj.is_array()) throw InputError(where + ".homs: expected an array");
  for (std::size_t k = 0; k < hj.size(); ++k) {
    const std::string w = where + ".homs[" + std::to_string(k) + "]";
    try {
      const std::size_t x = c->object_index(io::string_of(io::member(hj[k], "source", w), w));
      const std::size_t y = c->object_index(io::string_of(io::member(hj[k], "target", w), w));
      if (seen[x * n + y]) throw InputError("hom pair listed twice");
      seen[x * n + y] = true;
      std::vector<std::string> names;
      const json& b = io::member(hj[k], "basis", w);
      if (!b.is_array()) throw InputError("basis must be an array");
      for (const auto& nm : b) names.push_back(io::string_of(nm, w + ".basis"));
      c->set_hom(x, y, names);
    } catch (const InputError& e) {
      throw InputError(std::string(e.what()).rfind(w, 0) == 0 ? e.what() : w + ": " + e.what());
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!seen[x * n + y]) {
        throw InputError(where + ".homs: hom(" + c->object_name(x) + ", " + c->object_name(y) + ") is not listed");
      }
    }
  }
  const json& ij = io::member(j, "identities", where);
  for (std::size_t x = 0; x < n; ++x) {
    const std::string w = where + ".identities." + c->object_name(x);
    c->set_identity(x, io::combination_from_json(*c, x, x, io::member(ij, c->object_name(x), where + ".identities"), w));
  }
  const json& cj = io::member(j, "compositions", where);
  if (!cj.is_array()) throw InputError(where + ".compositions: expected an array");
  for (std::size_t k = 0; k < cj.size(); ++k) {
    const std::string w = where + ".compositions[" + std::to_string(k) + "]";
    auto ref = [&](const char* key) {
      const std::string nm = io::string_of(io::member(cj[k], key, w), w + "." + key);
      auto r = c->find_basis(nm);
      if (!r) throw InputError(w + ": unknown basis morphism '" + nm + "'");
      return *r;
    };
    const BasisRef f1 = ref("first"), g1 = ref("then");
    if (f1.target != g1.source) throw InputError(w + ": '" + c->basis_name(g1) + "' does not follow '" + c->basis_name(f1) + "'");
    c->set_composition(f1.source, f1.target, g1.target, g1.index, f1.index,
                       io::combination_from_json(*c, f1.source, g1.target, io::member(cj[k], "result", w), w + ".result"));
  }
  return c;
}

inline json group_to_json(const FiniteGroup& g) { return io::group_to_json(g); }

// Reads referenced documents relative to a base directory. A reference is a
// file name (string) or an inline document (object). Categories read from
// the same file are shared.
class Loader {
 public:
  explicit Loader(std::filesystem::path base = std::filesystem::current_path()) : base_(std::move(base)) {}

  json read_file(const std::filesystem::path& file) const {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open '" + file.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      return json::parse(ss.str());
    } catch (const json::parse_error& e) {
      throw InputError(file.string() + ": " + e.what());
    }
  }

  // Returns the document and the directory further references resolve against.
  std::pair<json, std::filesystem::path> resolve(const json& ref, const std::filesystem::path& dir,
                                                 const std::string& where) const {
    if (ref.is_object()) return {ref, dir};
    if (!ref.is_string()) throw InputError(where + ": expected a file name or an inline document");
    std::filesystem::path p = ref.get<std::string>();
    if (p.is_relative()) p = dir / p;
    return {read_file(p), p.parent_path()};
  }

  CatPtr category(const json& ref, const std::filesystem::path& dir, const std::string& where) {
    if (ref.is_string()) {
      std::filesystem::path p = ref.get<std::string>();
      if (p.is_relative()) p = dir / p;
      std::error_code ec;
      auto key = std::filesystem::weakly_canonical(p, ec).string();
      if (auto it = cats_.find(key); it != cats_.end()) return it->second;
      CatPtr c = category_from_json(read_file(p), p.string());
      cats_[key] = c;
      return c;
    }
    return category_from_json(ref, where);
  }

  CatPtr category_file(const std::string& file) { return category(json(file), base_, file); }

  LinFunctor functor(const json& ref, const std::filesystem::path& dir, const std::string& where);
  LinFunctor functor_file(const std::string& file) { return functor(json(file), base_, file); }
  GroupAction action(const json& ref, const std::filesystem::path& dir, const std::string& where);
  GroupAction action_file(const std::string& file) { return action(json(file), base_, file); }
  Grading grading(const json& ref, const std::filesystem::path& dir, const std::string& where);
  Grading grading_file(const std::string& file) { return grading(json(file), base_, file); }

  const std::filesystem::path& base() const noexcept { return base_; }

 private:
  std::filesystem::path base_;
  std::map<std::string, CatPtr> cats_;
};

// Source and target are written inline unless file names are given.
inline json functor_to_json(const LinFunctor& f, const json& source_ref = nullptr, const json& target_ref = nullptr) {
  json j = io::header("functor");
  const LinCat& c = f.source();
  const LinCat& b = f.target();
  j["source"] = source_ref.is_null() ? category_to_json(c) : source_ref;
  j["target"] = target_ref.is_null() ? category_to_json(b) : target_ref;
  json objs = json::object();
  for (std::size_t x = 0; x < c.size(); ++x) objs[c.object_name(x)] = b.object_name(f(x));
  j["objects"] = objs;
  json images = json::object();
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      for (std::size_t k = 0; k < c.dim(x, y); ++k) {
        images[c.basis(x, y)[k]] = io::combination_to_json(b, f(x), f(y), f.matrix(x, y).column(k));
      }
    }
  }
  j["images"] = images;
  return j;
}

inline LinFunctor functor_from_json(const json& j, CatPtr source, CatPtr target, const std::string& where) {
  io::expect_kind(j, "functor", where);
  const LinCat& c = *source;
  const LinCat& b = *target;
  const json& oj = io::member(j, "objects", where);
  std::vector<std::size_t> objmap(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    const std::string w = where + ".objects";
    const std::string img = io::string_of(io::member(oj, c.object_name(x), w), w + "." + c.object_name(x));
    if (!b.has_object(img)) throw InputError(w + "." + c.object_name(x) + ": unknown target object '" + img + "'");
    objmap[x] = b.object_index(img);
  }
  if (oj.size() != c.size()) throw InputError(where + ".objects: names an object outside the source");
  LinFunctor f(source, target, objmap);
  const json& ij = io::member(j, "images", where);
  std::size_t count = 0;
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      for (std::size_t k = 0; k < c.dim(x, y); ++k) {
        const std::string& nm = c.basis(x, y)[k];
        const std::string w = where + ".images." + nm;
        f.set_image({x, y, k}, io::combination_from_json(b, objmap[x], objmap[y], io::member(ij, nm, where + ".images"), w));
        ++count;
      }
    }
  }
  if (ij.size() != count) throw InputError(where + ".images: names a morphism outside the source basis");
  return f;
}

inline LinFunctor Loader::functor(const json& ref, const std::filesystem::path& dir, const std::string& where) {
  auto [doc, d] = resolve(ref, dir, where);
  io::expect_kind(doc, "functor", where);
  CatPtr s = category(io::member(doc, "source", where), d, where + ".source");
  CatPtr t = category(io::member(doc, "target", where), d, where + ".target");
  return functor_from_json(doc, s, t, where);
}

inline json action_to_json(const GroupAction& a, const json& category_ref = nullptr) {
  json j = io::header("action");
  j["category"] = category_ref.is_null() ? category_to_json(*a.category) : category_ref;
  j["group"] = group_to_json(a.group);
  json els = json::object();
  for (std::size_t s = 0; s < a.group.size(); ++s) {
    json f = functor_to_json(a.functors[s], "@category", "@category");
    els[a.group.name(s)] = f;
  }
  j["elements"] = els;
  return j;
}

inline GroupAction Loader::action(const json& ref, const std::filesystem::path& dir, const std::string& where) {
  auto [doc, d] = resolve(ref, dir, where);
  io::expect_kind(doc, "action", where);
  CatPtr c = category(io::member(doc, "category", where), d, where + ".category");
  FiniteGroup g = io::group_from_json(io::member(doc, "group", where), where + ".group");
  const json& el = io::member(doc, "elements", where);
  GroupAction a{g, c, {}};
  for (std::size_t s = 0; s < g.size(); ++s) {
    const std::string w = where + ".elements." + g.name(s);
    auto [fdoc, fd] = resolve(io::member(el, g.name(s), where + ".elements"), d, w);
    io::expect_kind(fdoc, "functor", w);
    // "@category" refers to the acting category.
    auto side = [&, &fdoc = fdoc, &fd = fd](const char* key) {
      const json& r = io::member(fdoc, key, w);
      return r.is_string() && r.get<std::string>() == "@category" ? c : category(r, fd, w + "." + key);
    };
    a.functors.push_back(functor_from_json(fdoc, side("source"), side("target"), w));
  }
  return a;
}

inline json grading_to_json(const Grading& z, const json& category_ref = nullptr) {
  json j = io::header("grading");
  const LinCat& c = z.category();
  j["category"] = category_ref.is_null() ? category_to_json(c) : category_ref;
  j["group"] = group_to_json(z.group());
  json homs = json::array();
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      const HomGrading& h = z.hom(x, y);
      json els = json::array();
      for (std::size_t k = 0; k < h.degrees.size(); ++k) {
        els.push_back({{"name", h.names[k]},
                       {"degree", z.group().name(h.degrees[k])},
                       {"vector", io::combination_to_json(c, x, y, h.change.column(k))}});
      }
      homs.push_back({{"source", c.object_name(x)}, {"target", c.object_name(y)}, {"homogeneous", els}});
    }
  }
  j["homs"] = homs;
  return j;
}

inline Grading grading_from_json(const json& doc, CatPtr c, const std::string& where) {
  io::expect_kind(doc, "grading", where);
  FiniteGroup g = io::group_from_json(io::member(doc, "group", where), where + ".group");
  Grading z(g, c);
  const std::size_t n = c->size();
  std::vector<bool> seen(n * n, false);
  const json& hj = io::member(doc, "homs", where);
  if (!hj.is_array()) throw InputError(where + ".homs: expected an array");
  for (std::size_t k = 0; k < hj.size(); ++k) {
    const std::string w = where + ".homs[" + std::to_string(k) + "]";
    const std::size_t x = c->object_index(io::string_of(io::member(hj[k], "source", w), w + ".source"));
    const std::size_t y = c->object_index(io::string_of(io::member(hj[k], "target", w), w + ".target"));
    if (seen[x * n + y]) throw InputError(w + ": hom pair listed twice");
    seen[x * n + y] = true;
    const json& els = io::member(hj[k], "homogeneous", w);
    if (!els.is_array()) throw InputError(w + ".homogeneous: expected an array");
    HomGrading h;
    std::vector<Vector> cols;
    for (std::size_t e = 0; e < els.size(); ++e) {
      const std::string we = w + ".homogeneous[" + std::to_string(e) + "]";
      h.names.push_back(io::string_of(io::member(els[e], "name", we), we + ".name"));
      const std::string deg = io::string_of(io::member(els[e], "degree", we), we + ".degree");
      const auto& nm = g.names();
      auto it = std::find(nm.begin(), nm.end(), deg);
      if (it == nm.end()) throw InputError(we + ".degree: unknown group element '" + deg + "'");
      h.degrees.push_back(static_cast<std::size_t>(it - nm.begin()));
      cols.push_back(io::combination_from_json(*c, x, y, io::member(els[e], "vector", we), we + ".vector"));
    }
    h.change = Matrix::from_columns(c->field(), c->dim(x, y), cols);
    try {
      z.set_hom(x, y, std::move(h));
    } catch (const InputError& e) {
      throw InputError(w + ": " + e.what());
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!seen[x * n + y]) {
        throw InputError(where + ".homs: hom(" + c->object_name(x) + ", " + c->object_name(y) + ") is not listed");
      }
    }
  }
  return z;
}

inline Grading Loader::grading(const json& ref, const std::filesystem::path& dir, const std::string& where) {
  auto [doc, d] = resolve(ref, dir, where);
  io::expect_kind(doc, "grading", where);
  CatPtr c = category(io::member(doc, "category", where), d, where + ".category");
  return grading_from_json(doc, c, where);
}

inline json character_to_json(const Character& chi, FieldSpec f) {
  json j = io::header("character");
  j["field"] = io::field_to_json(f);
  j["group"] = group_to_json(chi.group);
  json vals = json::object();
  for (std::size_t s = 0; s < chi.group.size(); ++s) vals[chi.group.name(s)] = chi.values[s].to_string();
  j["values"] = vals;
  return j;
}

inline Character character_from_json(const json& j, const std::string& where = "character") {
  io::expect_kind(j, "character", where);
  const FieldSpec f = io::field_from_json(io::member(j, "field", where), where + ".field");
  Character chi{io::group_from_json(io::member(j, "group", where), where + ".group"), {}};
  const json& vals = io::member(j, "values", where);
  for (std::size_t s = 0; s < chi.group.size(); ++s) {
    chi.values.push_back(io::scalar_from_json(io::member(vals, chi.group.name(s), where + ".values"), f,
                                              where + ".values." + chi.group.name(s)));
  }
  if (vals.size() != chi.group.size()) throw InputError(where + ".values: names an element outside the group");
  return chi;
}

inline json presentation_to_json(const QuiverPresentation& p) {
  json j = io::header("presentation");
  if (p.characteristic) {
    j["field"] = io::field_to_json(FieldSpec::prime(*p.characteristic));
  } else {
    j["field"] = "Q";
  }
  j["vertices"] = p.vertices;
  json arrows = json::array();
  for (const auto& a : p.arrows) {
    arrows.push_back({{"name", a.name}, {"source", p.vertices[a.source]}, {"target", p.vertices[a.target]}});
  }
  j["arrows"] = arrows;
  json rels = json::array();
  for (const auto& r : p.relations) rels.push_back(r.text);
  j["relations"] = rels;
  j["bound"] = p.length_bound;
  return j;
}

inline QuiverPresentation presentation_from_json(const json& j, const std::string& where = "presentation") {
  io::expect_kind(j, "presentation", where);
  QuiverPresentation p;
  if (auto it = j.find("field"); it != j.end()) {
    FieldSpec f = io::field_from_json(*it, where + ".field");
    if (!f.is_rational()) p.characteristic = f.characteristic();
  }
  try {
    for (const auto& v : io::member(j, "vertices", where)) p.add_vertex(io::string_of(v, where + ".vertices"));
    const json& arrows = io::member(j, "arrows", where);
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      const std::string w = where + ".arrows[" + std::to_string(k) + "]";
      p.add_arrow(io::string_of(io::member(arrows[k], "name", w), w), io::string_of(io::member(arrows[k], "source", w), w),
                  io::string_of(io::member(arrows[k], "target", w), w));
    }
    if (auto it = j.find("relations"); it != j.end()) {
      for (const auto& r : *it) p.add_relation(io::string_of(r, where + ".relations"));
    }
    if (auto it = j.find("bound"); it != j.end()) {
      if (!it->is_number_unsigned() || it->get<std::size_t>() == 0) throw InputError("bound must be a positive integer");
      p.length_bound = it->get<std::size_t>();
    }
  } catch (const InputError& e) {
    const std::string m = e.what();
    throw InputError(m.rfind(where, 0) == 0 ? m : where + ": " + m);
  }
  return p;
}

// JSON documents, or the text form (`vertex`, `arrow a: x -> y`, `rel ...`).
inline QuiverPresentation read_presentation(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open '" + file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return presentation_from_json(json::parse(text), file);
    } catch (const json::parse_error& e) {
      throw InputError(file + ": " + e.what());
    }
  }
  try {
    return QuiverPresentation::parse_text(text);
  } catch (const InputError& e) {
    throw InputError(file + ": " + e.what());
  }
}

inline json walk_to_json(const Grading& z, const HomogeneousWalk& w) {
  json j = io::header("walk");
  j["start"] = z.category().object_name(w.start);
  json steps = json::array();
  for (const auto& s : w.steps) {
    steps.push_back({{"element", z.hom(s.element.source, s.element.target).names.at(s.element.index)}, {"sign", s.sign}});
  }
  j["steps"] = steps;
  return j;
}

inline HomogeneousWalk walk_from_json(const json& j, const Grading& z, const std::string& where = "walk") {
  io::expect_kind(j, "walk", where);
  HomogeneousWalk w;
  w.start = z.category().object_index(io::string_of(io::member(j, "start", where), where + ".start"));
  const json& steps = io::member(j, "steps", where);
  if (!steps.is_array()) throw InputError(where + ".steps: expected an array");
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const std::string ws = where + ".steps[" + std::to_string(k) + "]";
    const std::string nm = io::string_of(io::member(steps[k], "element", ws), ws + ".element");
    auto r = z.find(nm);
    if (!r) throw InputError(ws + ": '" + nm + "' is not a homogeneous element of the grading");
    const json& sg = io::member(steps[k], "sign", ws);
    if (!sg.is_number_integer() || (sg.get<int>() != 1 && sg.get<int>() != -1)) {
      throw InputError(ws + ".sign: must be 1 or -1");
    }
    w.steps.push_back({*r, sg.get<int>()});
  }
  return w;
}

inline json derivation_to_json(const LinCat& c, const Derivation& d) {
  json out = json::object();
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      for (std::size_t k = 0; k < c.dim(x, y); ++k) {
        json v = io::combination_to_json(c, x, y, d.at(x, y).column(k));
        if (!v.empty()) out[c.basis(x, y)[k]] = v;
      }
    }
  }
  return out;
}

inline json fpgroup_to_json(const FPGroup& g) {
  json rels = json::array();
  for (const auto& r : g.relators) rels.push_back(g.render(r));
  return json{{"generators", g.generators}, {"relators", rels}};
}

}  // namespace lincat
