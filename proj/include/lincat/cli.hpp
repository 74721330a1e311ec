#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "lincat/fixtures.hpp"

namespace lincat::cli {

enum ExitCode : int { ok = 0, verdict_false = 1, input_error = 2 };

// One command's outcome. The human and JSON renderings are produced from the
// same fields, so their verdicts agree.
struct Report {
  std::string command;
  std::string anchor;
  std::optional<bool> verdict;
  std::vector<std::string> lines;
  json result = json::object();

  int exit_code() const { return verdict && !*verdict ? verdict_false : ok; }
};

inline bool use_color(std::ostream& out) {
  const char* env = std::getenv("LINCAT_COLOR");
  const std::string mode = env ? env : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return &out == &std::cout && isatty(STDOUT_FILENO);
}

inline void render(const Report& r, bool as_json, double elapsed_ms, std::ostream& out) {
  if (as_json) {
    json j{{"command", r.command}, {"result", r.result}, {"messages", r.lines}};
    j["verdict"] = r.verdict ? json(*r.verdict) : json(nullptr);
    if (!r.anchor.empty()) j["anchor"] = r.anchor;
    j["timing"] = {{"elapsed_ms", elapsed_ms}};
    out << j.dump(2) << "\n";
    return;
  }
  if (r.verdict) {
    const bool color = use_color(out);
    const std::string word = *r.verdict ? "OK" : "FAILED";
    const std::string painted = color ? (*r.verdict ? "\033[32m" : "\033[31m") + word + "\033[0m" : word;
    out << (r.anchor.empty() ? r.command : r.anchor) << ": " << painted << "\n";
  }
  for (const auto& l : r.lines) out << l << "\n";
}

namespace detail {

inline void write_json(const std::string& file, const json& j) {
  std::ofstream o(file);
  if (!o) throw InputError("cannot write '" + file + "'");
  o << j.dump(2) << "\n";
}

inline std::size_t object_named(const LinCat& c, const std::string& name, const std::string& what) {
  if (!c.has_object(name)) throw InputError("unknown " + what + " object '" + name + "'");
  return c.object_index(name);
}

// "b=x" pairs.
inline std::vector<std::pair<std::string, std::string>> pairs(const std::vector<std::string>& items) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : items) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) throw InputError("expected name=value, got '" + s + "'");
    out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  return out;
}

inline json table_json(const CoveringGroup& g) {
  json j = group_to_json(g.group);
  j["label"] = g.group.label();
  return j;
}

inline std::string table_line(const FiniteGroup& g) {
  std::string s;
  for (std::size_t a = 0; a < g.size(); ++a) {
    s += "  ";
    for (std::size_t b = 0; b < g.size(); ++b) s += (b ? " " : "") + g.name(g.mul(a, b));
    s += a + 1 < g.size() ? "\n" : "";
  }
  return s;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

inline std::string render_walk(const Grading& z, const HomogeneousWalk& w) {
  const LinCat& c = z.category();
  std::string s = c.object_name(w.start);
  for (const auto& st : w.steps) {
    s += " --" + z.hom(st.element.source, st.element.target).names[st.element.index] + (st.sign > 0 ? "--> " : "^-1--> ");
    s += c.object_name(st.sign > 0 ? st.element.target : st.element.source);
  }
  return s;
}

inline std::vector<std::size_t> fibre_choice(const LinFunctor& f, const std::vector<std::string>& items) {
  const LinCat& b = f.target();
  const LinCat& c = f.source();
  std::vector<std::size_t> choice(b.size(), c.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    if (choice[f(x)] == c.size()) choice[f(x)] = x;
  }
  for (const auto& [bn, xn] : pairs(items)) {
    choice[object_named(b, bn, "base")] = object_named(c, xn, "source");
  }
  for (std::size_t o = 0; o < b.size(); ++o) {
    if (choice[o] == c.size()) throw InputError("empty fibre over " + b.object_name(o));
  }
  return choice;
}

}  // namespace detail

struct Options {
  bool as_json = false;
  std::string cat, functor, action, grading, character, presentation, walk, out;
  std::string f, g, h, j, u, x0, d0, base;
  std::vector<std::string> family, fibre, t;
  std::string field;
  std::size_t max_cosets = 10000;
  std::size_t n = 2;
  std::string fixture, dir = ".";
  bool list = false;
};

inline Report cmd_validate(const Options& o) {
  Loader ld;
  Report r{"validate", "validation", true, {}, {}};
  auto add = [&](const std::string& what, const ValidationReport& rep) {
    json v = json::array();
    for (const auto& x : rep) {
      v.push_back({{"axiom", x.axiom}, {"detail", x.detail}});
      r.lines.push_back(what + ": " + x.axiom + ": " + x.detail);
    }
    r.result[what] = v;
    if (!rep.empty()) r.verdict = false;
  };
  int given = 0;
  if (!o.cat.empty()) {
    ++given;
    auto c = ld.category_file(o.cat);
    add("category", validate_category(*c));
    if (r.verdict.value()) r.lines.push_back("category with " + std::to_string(c->size()) + " objects is valid");
  }
  if (!o.functor.empty()) {
    ++given;
    auto fn = ld.functor_file(o.functor);
    add("source", validate_category(fn.source()));
    add("target", validate_category(fn.target()));
    add("functor", validate_functor(fn));
  }
  if (!o.action.empty()) {
    ++given;
    auto a = ld.action_file(o.action);
    add("category", validate_category(*a.category));
    add("action", check_action(a));
  }
  if (!o.grading.empty()) {
    ++given;
    auto z = ld.grading_file(o.grading);
    add("category", validate_category(z.category()));
    add("grading", validate_grading(z));
  }
  if (!o.character.empty()) {
    ++given;
    add("character", validate_character(character_from_json(ld.read_file(o.character), o.character)));
  }
  if (given == 0) throw InputError("validate needs --cat, --functor, --action, --grading or --character");
  if (r.verdict.value() && r.lines.empty()) r.lines.push_back("valid");
  return r;
}

inline Report cmd_present(const Options& o) {
  if (o.presentation.empty()) throw InputError("present needs --presentation");
  QuiverPresentation p = read_presentation(o.presentation);
  FieldSpec f = p.characteristic ? FieldSpec::prime(*p.characteristic) : FieldSpec::rationals();
  if (!o.field.empty()) f = io::field_from_json(o.field, "--field");
  Report r{"present", "", std::nullopt, {}, {}};
  PresentedCategory pc = present(p, f);
  json cj = category_to_json(*pc.category);
  if (!o.out.empty()) {
    detail::write_json(o.out, cj);
    r.lines.push_back("wrote " + o.out);
  } else {
    r.lines.push_back(cj.dump(2));
  }
  r.result["category"] = cj;
  return r;
}

inline Report cmd_cover_check(const Options& o) {
  Loader ld;
  auto fn = ld.functor_file(o.functor);
  if (auto v = validate_functor(fn); !v.empty()) throw InputError("not a functor: " + v.front().axiom + ": " + v.front().detail);
  CoveringCheck c = check_covering(fn);
  Report r{"cover check", "covering", c.ok, {}, {}};
  r.result["covering"] = c.ok;
  if (!c.ok) {
    r.lines.push_back(c.diagnostic);
    r.result["diagnostic"] = c.diagnostic;
  }
  return r;
}

inline Report cmd_cover_aut1(const Options& o) {
  Loader ld;
  auto fn = ld.functor_file(o.functor);
  CoveringGroup g = aut1(fn);
  Report r{"cover aut1", "", std::nullopt, {}, {}};
  r.lines.push_back("|Aut_1| = " + std::to_string(g.elements.size()) + " (" + g.group.label() + ")");
  r.lines.push_back(detail::table_line(g.group));
  r.result["group"] = detail::table_json(g);
  json els = json::object();
  for (std::size_t k = 0; k < g.elements.size(); ++k) {
    json objs = json::object();
    for (std::size_t x = 0; x < fn.source().size(); ++x) {
      objs[fn.source().object_name(x)] = fn.source().object_name(g.elements[k](x));
    }
    els[g.group.name(k)] = objs;
  }
  r.result["object_maps"] = els;
  return r;
}

inline LinFunctor base_automorphism(Loader& ld, const std::string& file, const LinFunctor& f) {
  if (file.empty()) return LinFunctor::identity(f.target_ptr());
  return ld.functor_file(file);
}

inline Report cmd_cover_lambda(const Options& o) {
  Loader ld;
  auto f = ld.functor_file(o.f);
  auto g = ld.functor_file(o.g);
  auto h = ld.functor_file(o.h);
  LambdaResult l = lambda_map({h, base_automorphism(ld, o.j, f)}, f, g);
  const bool v = l.homomorphism && l.surjective && l.h_is_galois && l.kernel_is_aut1_h;
  Report r{"cover lambda", "surjective group morphism", v, {}, {}};
  std::vector<std::string> m, ker;
  for (std::size_t k = 0; k < l.map.size(); ++k) m.push_back(l.source_group.name(k) + " -> " + l.target_group.name(l.map[k]));
  for (auto k : l.kernel) ker.push_back(l.source_group.name(k));
  r.lines.push_back("Lambda: " + detail::join(m));
  r.lines.push_back("kernel: {" + detail::join(ker) + "}");
  r.lines.push_back(std::string("homomorphism: ") + (l.homomorphism ? "yes" : "no") + ", surjective: " +
                    (l.surjective ? "yes" : "no") + ", H Galois: " + (l.h_is_galois ? "yes" : "no") +
                    ", kernel = Aut_1 H: " + (l.kernel_is_aut1_h ? "yes" : "no"));
  json mj = json::object();
  for (std::size_t k = 0; k < l.map.size(); ++k) mj[l.source_group.name(k)] = l.target_group.name(l.map[k]);
  r.result = {{"map", mj},
              {"kernel", ker},
              {"homomorphism", l.homomorphism},
              {"surjective", l.surjective},
              {"h_surjective_on_objects", l.h_surjective_on_objects},
              {"h_is_covering", l.h_is_covering},
              {"h_is_galois", l.h_is_galois},
              {"kernel_is_aut1_h", l.kernel_is_aut1_h},
              {"source_group", group_to_json(l.source_group)},
              {"target_group", group_to_json(l.target_group)}};
  return r;
}

inline Report cmd_cover_extend(const Options& o) {
  Loader ld;
  auto f = ld.functor_file(o.f);
  auto g = ld.functor_file(o.g);
  LinFunctor j = base_automorphism(ld, o.j, f);
  const std::size_t x0 = detail::object_named(f.source(), o.x0, "source");
  const std::size_t d0 = detail::object_named(g.source(), o.d0, "target");
  auto h = extend_morphism(f, g, j, x0, d0);
  Report r{"cover extend", "extension", h.has_value(), {}, {}};
  if (h) {
    json fj = functor_to_json(*h);
    r.result["functor"] = fj;
    if (!o.out.empty()) {
      detail::write_json(o.out, fj);
      r.lines.push_back("wrote " + o.out);
    } else {
      std::vector<std::string> m;
      for (std::size_t x = 0; x < f.source().size(); ++x) {
        m.push_back(f.source().object_name(x) + " -> " + g.source().object_name((*h)(x)));
      }
      r.lines.push_back("H on objects: " + detail::join(m));
    }
  } else {
    r.lines.push_back("no morphism extends the seed " + o.x0 + " -> " + o.d0);
  }
  return r;
}

inline Report cmd_galois_check(const Options& o) {
  Loader ld;
  auto fn = ld.functor_file(o.functor);
  GaloisResult g = is_galois(fn);
  Report r{"galois check", "Galois covering", g.galois, {}, {}};
  const std::size_t order = g.group.elements.size();
  if (g.galois) {
    r.lines.push_back("Galois with group of order " + std::to_string(order) + " (" + g.group.group.label() + ")");
  } else if (!g.connected) {
    r.lines.push_back("not Galois: source not connected");
  } else if (order == 1) {
    r.lines.push_back("not Galois: Aut₁ trivial, fibre size " + std::to_string(g.fibre_size));
  } else {
    r.lines.push_back("not Galois: Aut₁ of order " + std::to_string(order) + " has an orbit of size " +
                      std::to_string(g.orbit_size) + ", fibre size " + std::to_string(g.fibre_size));
  }
  r.result = {{"galois", g.galois},
              {"connected", g.connected},
              {"fibre_size", g.fibre_size},
              {"orbit_size", g.orbit_size},
              {"group_order", order}};
  if (g.connected) r.result["group"] = detail::table_json(g.group);
  return r;
}

inline Report cmd_galois_quotient(const Options& o) {
  Loader ld;
  GroupAction a = ld.action_file(o.action);
  if (auto rep = check_action(a); !rep.empty()) throw InputError("invalid action: " + rep.front().axiom + ": " + rep.front().detail);
  QuotientResult q = quotient(a);
  const bool agree = check_coinvariant_model(a, q);
  Report r{"galois quotient", "categorical quotient", agree, {}, {}};
  json cj = category_to_json(*q.quotient);
  r.result["quotient"] = cj;
  r.result["coinvariant_model_agrees"] = agree;
  r.lines.push_back("quotient with " + std::to_string(q.quotient->size()) + " objects; coinvariant model " +
                    (agree ? "agrees" : "disagrees"));
  if (!o.out.empty()) {
    detail::write_json(o.out, cj);
    r.lines.push_back("wrote " + o.out);
  }
  return r;
}

inline Report cmd_galois_structure(const Options& o) {
  Loader ld;
  auto fn = ld.functor_file(o.functor);
  StructureResult s = structure_iso(fn);
  const bool v = s.is_isomorphism && s.factors;
  Report r{"galois structure", "structure isomorphism", v, {}, {}};
  r.lines.push_back(std::string("F' isomorphism: ") + (s.is_isomorphism ? "yes" : "no") + ", F' P = F: " + (s.factors ? "yes" : "no"));
  r.result = {{"is_isomorphism", s.is_isomorphism}, {"factors", s.factors}, {"quotient", category_to_json(*s.quotient.quotient)}};
  return r;
}

inline Report cmd_galois_homs(const Options& o) {
  Loader ld;
  auto u = ld.functor_file(o.u);
  auto f = ld.functor_file(o.f);
  auto hs = hom_coverings(Covering(u), Covering(f));
  Report r{"galois homs", "", std::nullopt, {}, {}};
  r.lines.push_back("|Hom(U, F)| = " + std::to_string(hs.size()));
  json list = json::array();
  for (const auto& h : hs) {
    json objs = json::object();
    for (std::size_t x = 0; x < u.source().size(); ++x) objs[u.source().object_name(x)] = f.source().object_name(h(x));
    list.push_back(objs);
  }
  r.result = {{"count", hs.size()}, {"object_maps", list}};
  return r;
}

inline Report cmd_galois_universal(const Options& o) {
  Loader ld;
  auto u = ld.functor_file(o.u);
  std::vector<LinFunctor> fam;
  for (const auto& file : o.family) fam.push_back(ld.functor_file(file));
  UniversalReport ur = check_universal(u, fam);
  Report r{"galois universal", "universal relative to the family", ur.passed, {}, {}};
  r.lines.push_back(std::to_string(ur.pairs_checked) + " coverings checked");
  if (!ur.passed) r.lines.push_back(ur.first_violation);
  r.result = {{"passed", ur.passed}, {"pairs_checked", ur.pairs_checked}, {"first_violation", ur.first_violation}};
  return r;
}

inline Report cmd_galois_gset(const Options& o) {
  Loader ld;
  auto u = ld.functor_file(o.u);
  auto f = ld.functor_file(o.f);
  GSetReport g = gset_analysis(u, f);
  const bool v = g.transitive && g.normal && g.orbit_stabilizer;
  Report r{"galois gset", "Hom-set G-set", v, {}, {}};
  std::vector<std::string> iso;
  for (auto k : g.isotropy) iso.push_back(g.group.name(k));
  r.lines.push_back("|Hom| = " + std::to_string(g.hom_count) + ", |Aut_1 U| = " + std::to_string(g.group_order) +
                    ", isotropy {" + detail::join(iso) + "}");
  r.lines.push_back(std::string("transitive: ") + (g.transitive ? "yes" : "no") + ", normal isotropy: " +
                    (g.normal ? "yes" : "no") + ", orbit-stabilizer: " + (g.orbit_stabilizer ? "yes" : "no"));
  r.result = {{"hom_count", g.hom_count},     {"group_order", g.group_order}, {"isotropy", iso},
              {"transitive", g.transitive},   {"normal", g.normal},           {"orbit_stabilizer", g.orbit_stabilizer},
              {"group", group_to_json(g.group)}};
  return r;
}

inline Report emit_grading(const std::string& command, const Grading& z, const std::string& out, Report r) {
  json zj = grading_to_json(z);
  r.command = command;
  r.result["grading"] = zj;
  if (!out.empty()) {
    detail::write_json(out, zj);
    r.lines.push_back("wrote " + out);
  }
  const LinCat& c = z.category();
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      const HomGrading& h = z.hom(x, y);
      for (std::size_t k = 0; k < h.degrees.size(); ++k) {
        if (x == y && h.degrees[k] == z.group().identity() && c.dim(x, y) == 1) continue;
        r.lines.push_back("deg " + h.names[k] + " = " + z.group().name(h.degrees[k]) + "   [" +
                          c.render({x, y, h.change.column(k)}) + "]");
      }
    }
  }
  return r;
}

inline Report cmd_grade_induce(const Options& o) {
  Loader ld;
  auto fn = ld.functor_file(o.functor);
  Grading z = induced_grading(fn, detail::fibre_choice(fn, o.fibre));
  const bool valid = validate_grading(z).empty();
  return emit_grading("grade induce", z, o.out, Report{"", "induced grading", valid, {}, {}});
}

inline Report cmd_grade_validate(const Options& o) {
  Loader ld;
  Grading z = ld.grading_file(o.grading);
  auto rep = validate_grading(z);
  Report r{"grade validate", "grading", rep.empty(), {}, {}};
  json v = json::array();
  for (const auto& x : rep) {
    r.lines.push_back(x.axiom + ": " + x.detail);
    v.push_back({{"axiom", x.axiom}, {"detail", x.detail}});
  }
  r.result["violations"] = v;
  return r;
}

inline Report cmd_grade_regrade(const Options& o) {
  Loader ld;
  Grading z = ld.grading_file(o.grading);
  const LinCat& c = z.category();
  std::vector<std::size_t> t(c.size(), z.group().identity());
  for (const auto& [b, s] : detail::pairs(o.t)) {
    const auto& nm = z.group().names();
    auto it = std::find(nm.begin(), nm.end(), s);
    if (it == nm.end()) throw InputError("unknown group element '" + s + "'");
    t[detail::object_named(c, b, "")] = static_cast<std::size_t>(it - nm.begin());
  }
  Grading y = regrade(z, t);
  return emit_grading("grade regrade", y, o.out, Report{"", "regraded grading", validate_grading(y).empty(), {}, {}});
}

inline Report cmd_grade_connected(const Options& o) {
  Loader ld;
  Grading z = ld.grading_file(o.grading);
  GradingConnectivity g = is_connected_grading(z);
  Report r{"grade connected", "connected grading", g.connected, {}, {}};
  const std::size_t m = z.group().size();
  const LinCat& c = z.category();
  json wit = json::object();
  if (c.size() > 0) {
    for (std::size_t st = 0; st < g.witnesses.size(); ++st) {
      if (!g.witnesses[st]) continue;
      const std::string key = c.object_name(st / m) + "," + z.group().name(st % m);
      wit[key] = walk_to_json(z, *g.witnesses[st]);
      r.lines.push_back("(" + key + "): " + detail::render_walk(z, *g.witnesses[st]));
    }
  }
  r.result["connected"] = g.connected;
  r.result["witnesses"] = wit;
  if (!g.connected) {
    const std::string miss = "no homogeneous walk from " + c.object_name(*g.missing_from) + " to " +
                             c.object_name(*g.missing_to) + " of degree " + z.group().name(*g.missing_degree);
    r.lines.push_back(miss);
    r.result["missing"] = miss;
  }
  return r;
}

inline Report cmd_grade_smash(const Options& o) {
  Loader ld;
  Grading z = ld.grading_file(o.grading);
  SmashResult s = smash(z);
  GaloisResult g = is_galois(s.projection);
  Report r{"grade smash", "smash covering is Galois", g.galois, {}, {}};
  json cj = category_to_json(*s.category);
  json pj = functor_to_json(s.projection);
  r.result = {{"category", cj}, {"projection", pj}, {"galois", g.galois}};
  r.lines.push_back("smash category with " + std::to_string(s.category->size()) + " objects");
  if (!g.galois) r.lines.push_back(g.connected ? "deck group is not transitive" : "smash category is not connected");
  if (!o.out.empty()) {
    std::filesystem::path dir(o.out);
    std::filesystem::create_directories(dir);
    detail::write_json((dir / "smash.json").string(), cj);
    detail::write_json((dir / "smash-projection.json").string(),
                       functor_to_json(s.projection, "smash.json", category_to_json(z.category())));
    r.lines.push_back("wrote " + (dir / "smash.json").string() + " and " + (dir / "smash-projection.json").string());
  }
  return r;
}

inline Report cmd_grade_walkdeg(const Options& o) {
  Loader ld;
  Grading z = ld.grading_file(o.grading);
  if (o.walk.empty()) throw InputError("walkdeg needs --walk");
  HomogeneousWalk w = walk_from_json(ld.read_file(o.walk), z, o.walk);
  std::size_t d = 0;
  try {
    d = walk_degree(z, w);
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  }
  Report r{"grade walkdeg", "", std::nullopt, {}, {}};
  r.lines.push_back("deg w = " + z.group().name(d));
  r.result = {{"degree", z.group().name(d)}, {"end", z.category().object_name(w.end())}};
  return r;
}

inline Report cmd_h1(const Options& o) {
  Loader ld;
  auto c = ld.category_file(o.cat);
  if (auto v = validate_category(*c); !v.empty()) throw InputError("invalid category: " + v.front().axiom + ": " + v.front().detail);
  H1Result h = h1(*c);
  Report r{"h1", "", std::nullopt, {}, {}};
  r.lines.push_back("dim H1 = " + std::to_string(h.dimension));
  r.lines.push_back("dim Der = " + std::to_string(h.derivations) + ", dim Inn = " + std::to_string(h.inner));
  json reps = json::array();
  for (const auto& d : h.representatives) reps.push_back(derivation_to_json(*c, d));
  r.result = {{"dimension", h.dimension}, {"derivations", h.derivations}, {"inner", h.inner}, {"representatives", reps}};
  return r;
}

inline Report cmd_delta(const Options& o) {
  Loader ld;
  Grading z = ld.grading_file(o.grading);
  if (o.character.empty()) throw InputError("delta needs --char");
  Character chi = character_from_json(ld.read_file(o.character), o.character);
  const LinCat& c = z.category();
  Derivation d = delta(c, z, chi);
  const bool inner = is_inner(c, d);
  Report r{"delta", "Euler derivation", is_derivation(c, d), {}, {}};
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      for (std::size_t k = 0; k < c.dim(x, y); ++k) {
        r.lines.push_back("D(" + c.basis(x, y)[k] + ") = " + c.render(d.apply(c.basis_element({x, y, k}))));
      }
    }
  }
  r.lines.push_back(std::string("inner: ") + (inner ? "yes" : "no"));
  r.result = {{"derivation", derivation_to_json(c, d)}, {"inner", inner}};
  return r;
}

inline Report cmd_delta_inj(const Options& o) {
  Loader ld;
  Grading z = ld.grading_file(o.grading);
  const LinCat& c = z.category();
  DeltaInjectivity d = delta_injectivity_check(c, z);
  Report r{"delta-inj", "canonical injective morphism", d.injective, {}, {}};
  r.lines.push_back("characters: " + std::to_string(d.characters) + ", inner rank " + std::to_string(d.inner_rank) +
                    ", joint rank " + std::to_string(d.joint_rank));
  json imgs = json::array();
  for (const auto& x : d.images) imgs.push_back(derivation_to_json(c, x));
  r.result = {{"injective", d.injective},   {"characters", d.characters}, {"inner_rank", d.inner_rank},
              {"joint_rank", d.joint_rank}, {"non_inner", d.non_inner},   {"images", imgs}};
  return r;
}

inline Report cmd_pi1(const Options& o) {
  if (o.presentation.empty()) throw InputError("pi1 needs --presentation");
  QuiverPresentation p = read_presentation(o.presentation);
  std::size_t b0 = 0;
  if (!o.base.empty()) {
    auto v = p.find_vertex(o.base);
    if (!v) throw InputError("unknown vertex '" + o.base + "'");
    b0 = *v;
  }
  Pi1Presentation pr = pi1_presentation(p, b0);
  auto ab = abelianization(pr.group);
  auto order = bounded_order(pr.group, o.max_cosets);
  FPGroup simple = simplify(pr.group);
  Report r{"pi1", "", std::nullopt, {}, {}};
  std::vector<std::string> rels, factors, tree;
  for (const auto& w : pr.group.relators) rels.push_back(pr.group.render(w));
  for (const auto& d : ab) factors.push_back(d.str());
  for (auto a : pr.tree) tree.push_back(p.arrows[a].name);
  std::vector<std::string> srels;
  for (const auto& w : simple.relators) srels.push_back(simple.render(w));
  r.lines.push_back("generators: " + detail::join(pr.group.generators));
  r.lines.push_back("spanning tree: " + detail::join(tree));
  r.lines.push_back("relators: " + detail::join(rels));
  r.lines.push_back("simplified: < " + detail::join(simple.generators) + (srels.empty() ? " >" : " | " + detail::join(srels) + " >"));
  r.lines.push_back("invariant factors: [" + detail::join(factors) + "]");
  r.lines.push_back("order: " + (order ? std::to_string(*order) : std::string("exceeded")));
  for (const auto& w : pr.warnings) r.lines.push_back("warning: " + w);
  r.result = {{"generators", pr.group.generators},
              {"relators", rels},
              {"tree", tree},
              {"invariant_factors", factors},
              {"order", order ? json(std::to_string(*order)) : json("exceeded")},
              {"simplified", fpgroup_to_json(simple)},
              {"warnings", pr.warnings}};
  return r;
}

inline Report cmd_fixtures(const Options& o) {
  Report r{"fixtures", "", std::nullopt, {}, {}};
  if (o.list || o.fixture.empty()) {
    for (const auto& n : fixtures::names()) r.lines.push_back(n);
    r.result["names"] = fixtures::names();
    return r;
  }
  FieldSpec f = o.field.empty() ? FieldSpec::rationals() : io::field_from_json(o.field, "--field");
  auto files = fixtures::files(o.fixture, f, o.n);
  std::filesystem::create_directories(o.dir);
  json written = json::array();
  for (const auto& file : files) {
    const auto path = (std::filesystem::path(o.dir) / file.name).string();
    detail::write_json(path, file.doc);
    r.lines.push_back("wrote " + path);
    written.push_back(file.name);
  }
  r.result["files"] = written;
  return r;
}

inline std::string help_footer() {
  return "Input files are JSON documents with \"kind\" and \"format_version\": 1 (see docs/formats.md).\n"
         "Presentations may also use the text form:\n"
         "  field 2 | vertex x | arrow a: x -> y | rel g*a - d*b | bound 2\n"
         "where g*a means g o a (read right to left: first a, then g).\n"
         "Exit codes: 0 verdict true or success, 1 verdict false, 2 input error.";
}

// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite k-linear categories: coverings, Galois coverings, gradings, cohomology", "lincat"};
  app.footer(help_footer());
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.as_json, "Render the report as JSON");

  auto req_functor = [&](CLI::App* s) { s->add_option("--functor", o.functor, "Functor file")->required(); };
  auto add = [](CLI::App* parent, const std::string& name, const std::string& desc) {
    auto* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  auto* validate = add(&app, "validate", "Check the axioms of a category, functor, action, grading or character");
  validate->add_option("--cat", o.cat, "Category file");
  validate->add_option("--functor", o.functor, "Functor file");
  validate->add_option("--action", o.action, "Action file");
  validate->add_option("--grading", o.grading, "Grading file");
  validate->add_option("--char", o.character, "Character file");

  auto* pres = add(&app, "present", "Build the category of a quiver with relations");
  pres->add_option("--presentation", o.presentation, "Presentation file (JSON or text)")->required();
  pres->add_option("--field", o.field, "Field: Q or F_p (default: from the presentation)");
  pres->add_option("-o,--out", o.out, "Write the category here");

  auto* cover = add(&app, "cover", "Coverings");
  cover->require_subcommand(1);
  auto* c_check = add(cover, "check", "Is the functor a covering?");
  req_functor(c_check);
  auto* c_aut1 = add(cover, "aut1", "The group Aut_1 F");
  req_functor(c_aut1);
  auto* c_lambda = add(cover, "lambda", "The group morphism Aut_1 F -> Aut_1 G induced by (H, J)");
  c_lambda->add_option("--F", o.f, "Covering F")->required();
  c_lambda->add_option("--G", o.g, "Covering G")->required();
  c_lambda->add_option("--H", o.h, "Functor H with G H = J F")->required();
  c_lambda->add_option("--J", o.j, "Base automorphism J (default: identity)");
  auto* c_extend = add(cover, "extend", "Extend a seed x0 -> d0 to a morphism of coverings");
  c_extend->add_option("--F", o.f, "Covering F")->required();
  c_extend->add_option("--G", o.g, "Covering G")->required();
  c_extend->add_option("--J", o.j, "Base automorphism J (default: identity)");
  c_extend->add_option("--x0", o.x0, "Object of the source of F")->required();
  c_extend->add_option("--d0", o.d0, "Object of the source of G")->required();
  c_extend->add_option("-o,--out", o.out, "Write the functor here");

  auto* galois = add(&app, "galois", "Galois coverings and quotients");
  galois->require_subcommand(1);
  auto* g_check = add(galois, "check", "Is the covering Galois?");
  req_functor(g_check);
  auto* g_quot = add(galois, "quotient", "The quotient category of a free action");
  g_quot->add_option("--action", o.action, "Action file")->required();
  g_quot->add_option("-o,--out", o.out, "Write the quotient category here");
  auto* g_struct = add(galois, "structure", "Compare the quotient by Aut_1 F with the base");
  req_functor(g_struct);
  auto* g_homs = add(galois, "homs", "Morphisms of coverings (H, 1): U -> F");
  g_homs->add_option("--U", o.u, "Covering U")->required();
  g_homs->add_option("--F", o.f, "Covering F")->required();
  auto* g_univ = add(galois, "universal", "Check the universal property against a family");
  g_univ->add_option("--U", o.u, "Covering U")->required();
  g_univ->add_option("--family", o.family, "Coverings to test against")->required();
  auto* g_gset = add(galois, "gset", "Aut_1 U acting on Hom(U, F)");
  g_gset->add_option("--U", o.u, "Covering U")->required();
  g_gset->add_option("--F", o.f, "Covering F")->required();

  auto* grade = add(&app, "grade", "Gradings");
  grade->require_subcommand(1);
  auto* gr_ind = add(grade, "induce", "The grading induced by a Galois covering");
  req_functor(gr_ind);
  gr_ind->add_option("--fibre", o.fibre, "Fibre choice base=object (default: first in each fibre)");
  gr_ind->add_option("-o,--out", o.out, "Write the grading here");
  auto* gr_val = add(grade, "validate", "Check the grading axioms");
  gr_val->add_option("--grading", o.grading, "Grading file")->required();
  auto* gr_reg = add(grade, "regrade", "Relabel degrees s -> t_c s t_b^-1");
  gr_reg->add_option("--grading", o.grading, "Grading file")->required();
  gr_reg->add_option("--t", o.t, "Family object=element (default e)");
  gr_reg->add_option("-o,--out", o.out, "Write the grading here");
  auto* gr_con = add(grade, "connected", "Is the grading connected?");
  gr_con->add_option("--grading", o.grading, "Grading file")->required();
  auto* gr_sm = add(grade, "smash", "The smash product covering");
  gr_sm->add_option("--grading", o.grading, "Grading file")->required();
  gr_sm->add_option("-o,--out", o.out, "Directory for smash.json and smash-projection.json");
  auto* gr_wd = add(grade, "walkdeg", "Degree of a homogeneous walk");
  gr_wd->add_option("--grading", o.grading, "Grading file")->required();
  gr_wd->add_option("--walk", o.walk, "Walk file")->required();

  auto* h1c = add(&app, "h1", "First Hochschild-Mitchell cohomology");
  h1c->add_option("--cat", o.cat, "Category file")->required();
  auto* dl = add(&app, "delta", "The Euler derivation of a character");
  dl->add_option("--grading", o.grading, "Grading file")->required();
  dl->add_option("--char", o.character, "Character file")->required();
  auto* di = add(&app, "delta-inj", "Injectivity of characters into H1");
  di->add_option("--grading", o.grading, "Grading file (connected)")->required();

  auto* pi = add(&app, "pi1", "Fundamental group of a presentation");
  pi->add_option("--presentation", o.presentation, "Presentation file (JSON or text)")->required();
  pi->add_option("--base", o.base, "Base vertex (default: first)");
  pi->add_option("--max-cosets", o.max_cosets, "Coset enumeration bound")->check(CLI::PositiveNumber);

  auto* fx = add(&app, "fixtures", "Write a named example file set");
  fx->add_option("name", o.fixture, "Fixture name");
  fx->add_option("--dir", o.dir, "Output directory");
  fx->add_option("--field", o.field, "Field for the Kronecker fixtures: Q or F_p");
  fx->add_option("--n", o.n, "Cover index for cyclic-cover-n")->check(CLI::PositiveNumber);
  fx->add_flag("--list", o.list, "List fixture names");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }

  auto chosen = [](CLI::App* s) { return s->parsed(); };
  const auto start = std::chrono::steady_clock::now();
  try {
    Report r;
    if (chosen(validate)) r = cmd_validate(o);
    else if (chosen(pres)) r = cmd_present(o);
    else if (chosen(c_check)) r = cmd_cover_check(o);
    else if (chosen(c_aut1)) r = cmd_cover_aut1(o);
    else if (chosen(c_lambda)) r = cmd_cover_lambda(o);
    else if (chosen(c_extend)) r = cmd_cover_extend(o);
    else if (chosen(g_check)) r = cmd_galois_check(o);
    else if (chosen(g_quot)) r = cmd_galois_quotient(o);
    else if (chosen(g_struct)) r = cmd_galois_structure(o);
    else if (chosen(g_homs)) r = cmd_galois_homs(o);
    else if (chosen(g_univ)) r = cmd_galois_universal(o);
    else if (chosen(g_gset)) r = cmd_galois_gset(o);
    else if (chosen(gr_ind)) r = cmd_grade_induce(o);
    else if (chosen(gr_val)) r = cmd_grade_validate(o);
    else if (chosen(gr_reg)) r = cmd_grade_regrade(o);
    else if (chosen(gr_con)) r = cmd_grade_connected(o);
    else if (chosen(gr_sm)) r = cmd_grade_smash(o);
    else if (chosen(gr_wd)) r = cmd_grade_walkdeg(o);
    else if (chosen(h1c)) r = cmd_h1(o);
    else if (chosen(dl)) r = cmd_delta(o);
    else if (chosen(di)) r = cmd_delta_inj(o);
    else if (chosen(pi)) r = cmd_pi1(o);
    else if (chosen(fx)) r = cmd_fixtures(o);
    else throw InputError("no command given");
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    render(r, o.as_json, ms, out);
    return r.exit_code();
  } catch (const TruncationUnsound& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const PreconditionError& e) {
    err << "error: precondition: " << e.what() << "\n";
    return input_error;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
}

}  // namespace lincat::cli
