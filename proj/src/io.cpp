#include "koszul/io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace koszul {

namespace {

std::string escape(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

std::string at(const std::string& ptr, const std::string& key) { return ptr + "/" + escape(key); }
std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const json& member(const json& j, const std::string& ptr, const std::string& key) {
  if (!j.is_object()) throw ParseError(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(at(ptr, key), "missing member");
  return *it;
}

const json* optional_member(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string as_string(const json& j, const std::string& ptr) {
  if (!j.is_string()) throw ParseError(ptr, "expected a string");
  return j.get<std::string>();
}

int as_int(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw ParseError(ptr, "expected an integer");
  return j.get<int>();
}

const json& as_array(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw ParseError(ptr, "expected an array");
  return j;
}

const json& as_object(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw ParseError(ptr, "expected an object");
  return j;
}

Scalar as_scalar(const json& j, Field f, const std::string& ptr) {
  try {
    if (j.is_number_integer()) return Scalar(f, j.get<std::int64_t>());
    if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(ptr, e.what());
  }
  throw ParseError(ptr, "expected a scalar");
}

std::vector<std::string> string_list(const json& j, const std::string& ptr) {
  std::vector<std::string> out;
  const json& a = as_array(j, ptr);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(as_string(a[i], at(ptr, i)));
  return out;
}

template <class Lookup>
Vec as_vec(const json& j, Field f, const std::string& ptr, Lookup lookup) {
  Vec v(f);
  for (auto& [k, c] : as_object(j, ptr).items()) {
    auto i = lookup(k);
    if (!i) throw ParseError(at(ptr, k), "unknown label '" + k + "'");
    v.add(*i, as_scalar(c, f, at(ptr, k)));
  }
  return v;
}

std::optional<u32> position(const std::vector<std::string>& v, const std::string& s) {
  auto it = std::find(v.begin(), v.end(), s);
  if (it == v.end()) return std::nullopt;
  return static_cast<u32>(it - v.begin());
}

void expect_kind(const Document& doc, const std::string& kind) {
  if (doc.kind != kind) throw ParseError("/kind", "expected a " + kind + " document, got " + doc.kind);
}

json header(const std::string& kind, std::optional<Field> f) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  if (f) j["field"] = f->name();
  return j;
}

std::vector<u32> order_by_label(const std::vector<std::string>& labels) {
  std::vector<u32> o(labels.size());
  std::iota(o.begin(), o.end(), 0u);
  std::sort(o.begin(), o.end(), [&](u32 a, u32 b) { return labels[a] < labels[b]; });
  return o;
}

}  // namespace

json vec_json(const std::vector<std::string>& labels, const Vec& v) {
  json j = json::object();
  for (auto& [i, c] : v) j[labels.at(i)] = c.str();
  return j;
}

json report_json(const Report& r) {
  json j;
  j["subject"] = r.subject;
  j["ok"] = r.ok();
  j["failures"] = json::array();
  for (auto& f : r.failures) j["failures"].push_back({{"check", f.check}, {"witness", f.witness}});
  if (r.dropped) j["more_failures"] = r.dropped;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

std::string canonical(const json& j) { return j.dump(2) + "\n"; }

Document read_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  as_object(j, "");
  const json& s = member(j, "", "schema");
  if (!s.is_number_integer() || s.get<int>() != kSchema) throw ParseError("/schema", "unsupported schema version");
  Document doc;
  doc.kind = as_string(member(j, "", "kind"), "/kind");
  static const std::vector<std::string> kinds = {"dgcat", "coalgebra", "sset", "comodule", "module", "mc", "morphism"};
  if (!position(kinds, doc.kind)) throw ParseError("/kind", "unknown document kind '" + doc.kind + "'");
  if (auto* f = optional_member(j, "field")) {
    try {
      doc.field = Field::parse(as_string(*f, "/field"));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError("/field", e.what());
    }
  }
  doc.body = std::move(j);
  return doc;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return read_document(ss.str());
}

Field document_field(const Document& doc, std::optional<Field> flag, Field fallback) {
  if (flag) return *flag;
  if (doc.field) return *doc.field;
  return fallback;
}

// ---- dgcat ----

DgCategory to_dgcat(const Document& doc, Field f) {
  expect_kind(doc, "dgcat");
  const json& j = doc.body;
  auto objects = string_list(member(j, "", "objects"), "/objects");
  std::sort(objects.begin(), objects.end());
  std::map<std::string, std::string> ids;
  if (auto* idj = optional_member(j, "identities")) {
    for (auto& [o, l] : as_object(*idj, "/identities").items()) {
      if (!position(objects, o)) throw ParseError(at("/identities", o), "unknown object");
      ids[o] = as_string(l, at("/identities", o));
    }
  } else {
    for (auto& o : objects) ids[o] = "id_" + o;
  }
  struct Raw {
    Cell c;
    std::size_t pos;
  };
  std::vector<Raw> raw;
  const json& cells = as_array(member(j, "", "cells"), "/cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string p = at("/cells", i);
    Cell c;
    c.label = as_string(member(cells[i], p, "label"), at(p, "label"));
    auto s = position(objects, as_string(member(cells[i], p, "source"), at(p, "source")));
    auto t = position(objects, as_string(member(cells[i], p, "target"), at(p, "target")));
    if (!s) throw ParseError(at(p, "source"), "unknown object");
    if (!t) throw ParseError(at(p, "target"), "unknown object");
    c.source = *s;
    c.target = *t;
    c.degree = as_int(member(cells[i], p, "degree"), at(p, "degree"));
    raw.push_back({c, i});
  }
  for (auto& [o, l] : ids) {
    u32 k = *position(objects, o);
    raw.push_back({Cell{l, k, k, 0}, static_cast<std::size_t>(-1)});
  }
  std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.c.label < b.c.label; });
  DgCategory D;
  D.field = f;
  D.objects = objects;
  for (auto& r : raw) D.basis.push_back(r.c);
  try {
    D.reindex();
  } catch (const InvalidInput& e) {
    throw ParseError("/cells", e.what());
  }
  D.identity.assign(objects.size(), std::nullopt);
  for (auto& [o, l] : ids) D.identity[*position(objects, o)] = D.index(l);
  auto lookup = [&](const std::string& l) { return D.find(l); };
  for (u32 i = 0; i < D.basis.size(); ++i) {
    auto& c = D.basis[i];
    if (D.identity[c.source]) D.product[{*D.identity[c.source], i}] = D.e(i);
    if (D.identity[c.target]) D.product[{i, *D.identity[c.target]}] = D.e(i);
  }
  if (auto* pj = optional_member(j, "products")) {
    const json& ps = as_array(*pj, "/products");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::string p = at("/products", i);
      std::string l = as_string(member(ps[i], p, "left"), at(p, "left"));
      std::string r = as_string(member(ps[i], p, "right"), at(p, "right"));
      auto a = D.find(l), b = D.find(r);
      if (!a) throw ParseError(at(p, "left"), "unknown label '" + l + "'");
      if (!b) throw ParseError(at(p, "right"), "unknown label '" + r + "'");
      if (D.basis[*a].target != D.basis[*b].source) throw ParseError(p, "product of non-composable cells");
      bool is_id = false;
      for (auto& id : D.identity) is_id |= (id == *a || id == *b);
      if (is_id) throw ParseError(p, "identity products are implicit");
      Vec v = as_vec(member(ps[i], p, "value"), f, at(p, "value"), lookup);
      if (!v.empty()) D.product[{*a, *b}] = v;
    }
  }
  if (auto* dj = optional_member(j, "differential"))
    for (auto& [l, v] : as_object(*dj, "/differential").items()) {
      auto a = D.find(l);
      if (!a) throw ParseError(at("/differential", l), "unknown label");
      D.d[*a] = as_vec(v, f, at("/differential", l), lookup);
    }
  if (auto* tj = optional_member(j, "truncation")) {
    const json& t = as_object(*tj, "/truncation");
    if (auto* lj = optional_member(t, "lowers_length")) {
      if (!lj->is_boolean()) throw ParseError("/truncation/lowers_length", "expected a boolean");
      D.length_lowering = lj->get<bool>();
    }
    if (auto* cj = optional_member(t, "cut")) {
      const json& cs = as_array(*cj, "/truncation/cut");
      for (std::size_t i = 0; i < cs.size(); ++i) {
        std::string p = at("/truncation/cut", i);
        auto s = position(objects, as_string(member(cs[i], p, "source"), at(p, "source")));
        auto t2 = position(objects, as_string(member(cs[i], p, "target"), at(p, "target")));
        if (!s) throw ParseError(at(p, "source"), "unknown object");
        if (!t2) throw ParseError(at(p, "target"), "unknown object");
        const json& ds = as_array(member(cs[i], p, "degrees"), at(p, "degrees"));
        for (std::size_t k = 0; k < ds.size(); ++k) D.cut[{*s, *t2}].insert(as_int(ds[k], at(at(p, "degrees"), k)));
      }
    }
  }
  D.set_unit_from_identities();
  return D;
}

json serialize(const DgCategory& D) {
  json j = header("dgcat", D.field);
  std::vector<std::string> labels;
  for (auto& c : D.basis) labels.push_back(c.label);
  std::vector<std::string> objs = D.objects;
  std::sort(objs.begin(), objs.end());
  j["objects"] = objs;
  std::set<u32> idset;
  json ids = json::object();
  for (u32 s = 0; s < D.objects.size(); ++s)
    if (D.identity[s]) {
      idset.insert(*D.identity[s]);
      ids[D.objects[s]] = labels[*D.identity[s]];
    }
  j["identities"] = ids;
  j["cells"] = json::array();
  for (u32 i : order_by_label(labels)) {
    if (idset.count(i)) continue;
    auto& c = D.basis[i];
    j["cells"].push_back(
        {{"label", c.label}, {"source", D.objects[c.source]}, {"target", D.objects[c.target]}, {"degree", c.degree}});
  }
  std::vector<std::pair<std::pair<std::string, std::string>, json>> prods;
  for (auto& [ab, v] : D.product) {
    if (idset.count(ab.first) || idset.count(ab.second) || v.empty()) continue;
    prods.push_back({{labels[ab.first], labels[ab.second]}, vec_json(labels, v)});
  }
  std::sort(prods.begin(), prods.end(), [](auto& a, auto& b) { return a.first < b.first; });
  j["products"] = json::array();
  for (auto& [lr, v] : prods) j["products"].push_back({{"left", lr.first}, {"right", lr.second}, {"value", v}});
  json d = json::object();
  for (u32 i = 0; i < D.basis.size(); ++i)
    if (!D.d[i].empty()) d[labels[i]] = vec_json(labels, D.d[i]);
  j["differential"] = d;
  if (!D.cut.empty() || D.length_lowering) {
    std::vector<std::pair<std::pair<std::string, std::string>, std::set<int>>> cuts;
    for (auto& [st, degs] : D.cut) cuts.push_back({{D.objects[st.first], D.objects[st.second]}, degs});
    std::sort(cuts.begin(), cuts.end());
    json cj = json::array();
    for (auto& [st, degs] : cuts)
      cj.push_back({{"source", st.first}, {"target", st.second}, {"degrees", std::vector<int>(degs.begin(), degs.end())}});
    j["truncation"] = {{"lowers_length", D.length_lowering}, {"cut", cj}};
  }
  return j;
}

// ---- coalgebra ----

PointedCoalgebra to_coalgebra(const Document& doc, Field f) {
  expect_kind(doc, "coalgebra");
  const json& j = doc.body;
  PointedCoalgebra C;
  C.field = f;
  C.objects = string_list(member(j, "", "objects"), "/objects");
  std::sort(C.objects.begin(), C.objects.end());
  const json& cells = as_array(member(j, "", "cells"), "/cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string p = at("/cells", i);
    Cell c;
    c.label = as_string(member(cells[i], p, "label"), at(p, "label"));
    auto s = position(C.objects, as_string(member(cells[i], p, "source"), at(p, "source")));
    auto t = position(C.objects, as_string(member(cells[i], p, "target"), at(p, "target")));
    if (!s) throw ParseError(at(p, "source"), "unknown object");
    if (!t) throw ParseError(at(p, "target"), "unknown object");
    c.source = *s;
    c.target = *t;
    c.degree = as_int(member(cells[i], p, "degree"), at(p, "degree"));
    C.cells.push_back(c);
  }
  std::sort(C.cells.begin(), C.cells.end(), [](const Cell& a, const Cell& b) { return a.label < b.label; });
  try {
    C.reindex();
  } catch (const InvalidInput& e) {
    throw ParseError("/cells", e.what());
  }
  auto cell = [&](const std::string& l, const std::string& p) {
    auto i = C.find(l);
    if (!i) throw ParseError(p, "unknown cell '" + l + "'");
    return *i;
  };
  if (auto* cj = optional_member(j, "coproduct"))
    for (auto& [l, terms] : as_object(*cj, "/coproduct").items()) {
      std::string p = at("/coproduct", l);
      u32 c = cell(l, p);
      const json& ts = as_array(terms, p);
      std::map<std::pair<u32, u32>, Scalar> acc;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        std::string q = at(p, i);
        if (!ts[i].is_array() || ts[i].size() != 3) throw ParseError(q, "expected [left, right, coefficient]");
        u32 a = cell(as_string(ts[i][0], at(q, 0)), at(q, 0));
        u32 b = cell(as_string(ts[i][1], at(q, 1)), at(q, 1));
        Scalar k = as_scalar(ts[i][2], f, at(q, 2));
        auto [it, fresh] = acc.try_emplace({a, b}, Scalar::zero(f));
        it->second += k;
      }
      for (auto& [ab, k] : acc)
        if (!k.is_zero()) C.coproduct[c].push_back({ab.first, ab.second, k});
    }
  if (auto* dj = optional_member(j, "differential"))
    for (auto& [l, v] : as_object(*dj, "/differential").items()) {
      std::string p = at("/differential", l);
      u32 c = cell(l, p);
      for (auto& [x, k] : as_object(v, p).items()) {
        Scalar s = as_scalar(k, f, at(p, x));
        if (auto o = C.find_object(x))
          C.d_coradical[c].add(*o, s);
        else
          C.d[c].add(cell(x, at(p, x)), s);
      }
    }
  if (auto* hj = optional_member(j, "curvature"))
    for (auto& [l, v] : as_object(*hj, "/curvature").items())
      C.curvature[cell(l, at("/curvature", l))] = as_scalar(v, f, at("/curvature", l));
  return C;
}

json serialize(const PointedCoalgebra& C) {
  json j = header("coalgebra", C.field);
  std::vector<std::string> labels;
  for (auto& c : C.cells) labels.push_back(c.label);
  std::vector<std::string> objs = C.objects;
  std::sort(objs.begin(), objs.end());
  j["objects"] = objs;
  j["cells"] = json::array();
  for (u32 i : order_by_label(labels)) {
    auto& c = C.cells[i];
    j["cells"].push_back(
        {{"label", c.label}, {"source", C.objects[c.source]}, {"target", C.objects[c.target]}, {"degree", c.degree}});
  }
  json cop = json::object(), d = json::object(), h = json::object();
  for (u32 i = 0; i < C.cells.size(); ++i) {
    if (!C.coproduct[i].empty()) {
      std::vector<std::tuple<std::string, std::string, std::string>> ts;
      for (auto& t : C.coproduct[i]) ts.emplace_back(labels[t.left], labels[t.right], t.coeff.str());
      std::sort(ts.begin(), ts.end());
      json a = json::array();
      for (auto& [l, r, k] : ts) a.push_back({l, r, k});
      cop[labels[i]] = a;
    }
    if (!C.d[i].empty() || !C.d_coradical[i].empty()) {
      json v = vec_json(labels, C.d[i]);
      for (auto& [o, k] : C.d_coradical[i]) v[C.objects[o]] = k.str();
      d[labels[i]] = v;
    }
    if (!C.curvature[i].is_zero()) h[labels[i]] = C.curvature[i].str();
  }
  j["coproduct"] = cop;
  j["differential"] = d;
  j["curvature"] = h;
  return j;
}

// ---- simplicial sets ----

FiniteSimplicialSet to_sset(const Document& doc) {
  expect_kind(doc, "sset");
  const json& j = doc.body;
  const json& ss = as_array(member(j, "", "simplices"), "/simplices");
  struct Raw {
    std::string label;
    int dim;
    std::vector<std::pair<std::string, std::vector<int>>> faces;
    std::string ptr;
  };
  std::vector<Raw> raw;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    std::string p = at("/simplices", i);
    Raw r;
    r.ptr = p;
    r.label = as_string(member(ss[i], p, "label"), at(p, "label"));
    r.dim = as_int(member(ss[i], p, "dim"), at(p, "dim"));
    if (r.dim < 0) throw ParseError(at(p, "dim"), "negative dimension");
    const json* fj = optional_member(ss[i], "faces");
    std::size_t nf = fj ? as_array(*fj, at(p, "faces")).size() : 0;
    if (r.dim == 0 ? nf != 0 : nf != static_cast<std::size_t>(r.dim + 1))
      throw ParseError(at(p, "faces"), "expected dim+1 faces");
    for (std::size_t k = 0; k < nf; ++k) {
      std::string q = at(at(p, "faces"), k);
      const json& fk = (*fj)[k];
      std::string base = as_string(member(fk, q, "base"), at(q, "base"));
      std::vector<int> word;
      if (auto* w = optional_member(fk, "degeneracies")) {
        const json& wa = as_array(*w, at(q, "degeneracies"));
        for (std::size_t t = 0; t < wa.size(); ++t) word.push_back(as_int(wa[t], at(at(q, "degeneracies"), t)));
      }
      for (std::size_t t = 1; t < word.size(); ++t)
        if (word[t - 1] <= word[t]) throw ParseError(at(q, "degeneracies"), "degeneracy word must be strictly decreasing");
      r.faces.emplace_back(base, word);
    }
    raw.push_back(std::move(r));
  }
  std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.label < b.label; });
  FiniteSimplicialSet K;
  for (auto& r : raw) K.simplices.push_back({r.label, r.dim, {}});
  try {
    K.reindex();
  } catch (const InvalidInput& e) {
    throw ParseError("/simplices", e.what());
  }
  for (u32 i = 0; i < raw.size(); ++i)
    for (std::size_t k = 0; k < raw[i].faces.size(); ++k) {
      auto& [base, word] = raw[i].faces[k];
      std::string q = at(at(raw[i].ptr, "faces"), k);
      auto b = K.find(base);
      if (!b) throw ParseError(at(q, "base"), "unknown simplex '" + base + "'");
      DegenerateForm x{*b, word};
      if (K.dim(x) != raw[i].dim - 1) throw ParseError(q, "face has the wrong dimension");
      for (int w : word)
        if (w < 0 || w > K.simplices[*b].dim + static_cast<int>(word.size()) - 1)
          throw ParseError(at(q, "degeneracies"), "degeneracy index out of range");
      K.simplices[i].faces.push_back(x);
    }
  return K;
}

json serialize(const FiniteSimplicialSet& K) {
  json j = header("sset", std::nullopt);
  std::vector<std::string> labels;
  for (auto& s : K.simplices) labels.push_back(s.label);
  j["simplices"] = json::array();
  for (u32 i : order_by_label(labels)) {
    auto& s = K.simplices[i];
    json e = {{"label", s.label}, {"dim", s.dim}};
    if (!s.faces.empty()) {
      json fs = json::array();
      for (auto& x : s.faces) fs.push_back({{"base", labels[x.base]}, {"degeneracies", x.word}});
      e["faces"] = fs;
    }
    j["simplices"].push_back(e);
  }
  return j;
}

// ---- comodules and modules ----

namespace {

std::vector<Elem> read_elements(const json& j, const std::vector<std::string>& objects) {
  const json& es = as_array(member(j, "", "elements"), "/elements");
  std::vector<Elem> out;
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string p = at("/elements", i);
    Elem e;
    e.label = as_string(member(es[i], p, "label"), at(p, "label"));
    auto o = position(objects, as_string(member(es[i], p, "object"), at(p, "object")));
    if (!o) throw ParseError(at(p, "object"), "unknown object");
    e.object = *o;
    e.degree = as_int(member(es[i], p, "degree"), at(p, "degree"));
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const Elem& a, const Elem& b) { return a.label < b.label; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].label == out[i - 1].label) throw ParseError("/elements", "duplicate element '" + out[i].label + "'");
  return out;
}

json write_elements(const std::vector<Elem>& basis, const std::vector<std::string>& objects) {
  std::vector<std::string> labels;
  for (auto& e : basis) labels.push_back(e.label);
  json a = json::array();
  for (u32 i : order_by_label(labels))
    a.push_back({{"label", basis[i].label}, {"object", objects[basis[i].object]}, {"degree", basis[i].degree}});
  return a;
}

}  // namespace

Comodule to_comodule(const Document& doc, Field f, const PointedCoalgebra& C) {
  expect_kind(doc, "comodule");
  const json& j = doc.body;
  Comodule M;
  M.field = f;
  M.basis = read_elements(j, C.objects);
  M.resize();
  auto lookup = [&](const std::string& l) { return M.find(l); };
  auto elem = [&](const std::string& l, const std::string& p) {
    auto i = M.find(l);
    if (!i) throw ParseError(p, "unknown element '" + l + "'");
    return *i;
  };
  if (auto* dj = optional_member(j, "differential"))
    for (auto& [l, v] : as_object(*dj, "/differential").items())
      M.d[elem(l, at("/differential", l))] = as_vec(v, f, at("/differential", l), lookup);
  if (auto* cj = optional_member(j, "coaction"))
    for (auto& [l, terms] : as_object(*cj, "/coaction").items()) {
      std::string p = at("/coaction", l);
      u32 m = elem(l, p);
      const json& ts = as_array(terms, p);
      std::map<std::pair<u32, u32>, Scalar> acc;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        std::string q = at(p, i);
        if (!ts[i].is_array() || ts[i].size() != 3) throw ParseError(q, "expected [cell, element, coefficient]");
        std::string cl = as_string(ts[i][0], at(q, 0));
        auto c = C.find(cl);
        if (!c) throw ParseError(at(q, 0), "unknown cell '" + cl + "'");
        u32 n = elem(as_string(ts[i][1], at(q, 1)), at(q, 1));
        auto [it, fresh] = acc.try_emplace({*c, n}, Scalar::zero(f));
        it->second += as_scalar(ts[i][2], f, at(q, 2));
      }
      for (auto& [cn, k] : acc)
        if (!k.is_zero()) M.coaction[m].push_back({cn.first, cn.second, k});
    }
  return M;
}

json serialize(const Comodule& M, const PointedCoalgebra& C) {
  json j = header("comodule", M.field);
  std::vector<std::string> labels;
  for (auto& e : M.basis) labels.push_back(e.label);
  j["elements"] = write_elements(M.basis, C.objects);
  json d = json::object(), co = json::object();
  for (u32 i = 0; i < M.basis.size(); ++i) {
    if (!M.d[i].empty()) d[labels[i]] = vec_json(labels, M.d[i]);
    if (!M.coaction[i].empty()) {
      std::map<std::pair<std::string, std::string>, Scalar> ts;
      for (auto& t : M.coaction[i]) {
        auto [it, fresh] = ts.try_emplace({C.cells[t.cell].label, labels[t.elem]}, Scalar::zero(M.field));
        it->second += t.coeff;
      }
      json a = json::array();
      for (auto& [k, c] : ts)
        if (!c.is_zero()) a.push_back({k.first, k.second, c.str()});
      if (!a.empty()) co[labels[i]] = a;
    }
  }
  j["differential"] = d;
  j["coaction"] = co;
  return j;
}

Module to_module(const Document& doc, Field f, const DgCategory& D) {
  expect_kind(doc, "module");
  const json& j = doc.body;
  Module M;
  M.field = f;
  M.basis = read_elements(j, D.objects);
  M.d.assign(M.basis.size(), Vec(f));
  auto lookup = [&](const std::string& l) { return M.find(l); };
  auto elem = [&](const std::string& l, const std::string& p) {
    auto i = M.find(l);
    if (!i) throw ParseError(p, "unknown element '" + l + "'");
    return *i;
  };
  if (auto* dj = optional_member(j, "differential"))
    for (auto& [l, v] : as_object(*dj, "/differential").items())
      M.d[elem(l, at("/differential", l))] = as_vec(v, f, at("/differential", l), lookup);
  for (u32 m = 0; m < M.basis.size(); ++m) {
    auto& id = D.identity[M.basis[m].object];
    if (id) M.action[{*id, m}] = Vec(f, m, Scalar::one(f));
  }
  if (auto* aj = optional_member(j, "action")) {
    const json& as = as_array(*aj, "/action");
    for (std::size_t i = 0; i < as.size(); ++i) {
      std::string p = at("/action", i);
      std::string al = as_string(member(as[i], p, "arrow"), at(p, "arrow"));
      auto a = D.find(al);
      if (!a) throw ParseError(at(p, "arrow"), "unknown arrow '" + al + "'");
      u32 m = elem(as_string(member(as[i], p, "element"), at(p, "element")), at(p, "element"));
      Vec v = as_vec(member(as[i], p, "value"), f, at(p, "value"), lookup);
      if (v.empty())
        M.action.erase({*a, m});
      else
        M.action[{*a, m}] = v;
    }
  }
  return M;
}

json serialize(const Module& M, const DgCategory& D) {
  json j = header("module", M.field);
  std::vector<std::string> labels;
  for (auto& e : M.basis) labels.push_back(e.label);
  j["elements"] = write_elements(M.basis, D.objects);
  json d = json::object();
  for (u32 i = 0; i < M.basis.size(); ++i)
    if (!M.d[i].empty()) d[labels[i]] = vec_json(labels, M.d[i]);
  j["differential"] = d;
  std::vector<std::pair<std::pair<std::string, std::string>, json>> acts;
  for (auto& [am, v] : M.action) {
    auto& id = D.identity[M.basis[am.second].object];
    if (id && *id == am.first && v == Vec(M.field, am.second, Scalar::one(M.field))) continue;
    acts.push_back({{D.basis[am.first].label, labels[am.second]}, vec_json(labels, v)});
  }
  std::sort(acts.begin(), acts.end(), [](auto& a, auto& b) { return a.first < b.first; });
  j["action"] = json::array();
  for (auto& [k, v] : acts) j["action"].push_back({{"arrow", k.first}, {"element", k.second}, {"value", v}});
  return j;
}

// ---- MC elements and morphisms ----

namespace {

std::vector<u32> read_object_map(const json& j, const std::vector<std::string>& from, const std::vector<std::string>& to) {
  const json& om = as_object(member(j, "", "object_map"), "/object_map");
  std::vector<u32> out(from.size(), 0);
  std::vector<bool> seen(from.size(), false);
  for (auto& [k, v] : om.items()) {
    auto s = position(from, k);
    if (!s) throw ParseError(at("/object_map", k), "unknown source object");
    auto t = position(to, as_string(v, at("/object_map", k)));
    if (!t) throw ParseError(at("/object_map", k), "unknown target object");
    out[*s] = *t;
    seen[*s] = true;
  }
  for (u32 s = 0; s < from.size(); ++s)
    if (!seen[s]) throw ParseError(at("/object_map", from[s]), "object not mapped");
  return out;
}

json write_object_map(const std::vector<u32>& m, const std::vector<std::string>& from, const std::vector<std::string>& to) {
  json j = json::object();
  for (u32 s = 0; s < m.size(); ++s) j[from[s]] = to[m[s]];
  return j;
}

}  // namespace

MCElement to_mc(const Document& doc, Field f, const PointedCoalgebra& C, const DgCategory& D) {
  expect_kind(doc, "mc");
  const json& j = doc.body;
  MCElement x;
  x.object_map = read_object_map(j, C.objects, D.objects);
  x.xi.assign(C.cells.size(), Vec(f));
  auto lookup = [&](const std::string& l) { return D.find(l); };
  if (auto* xj = optional_member(j, "xi"))
    for (auto& [l, v] : as_object(*xj, "/xi").items()) {
      auto c = C.find(l);
      if (!c) throw ParseError(at("/xi", l), "unknown cell");
      x.xi[*c] = as_vec(v, f, at("/xi", l), lookup);
    }
  return x;
}

json serialize(const MCElement& x, const PointedCoalgebra& C, const DgCategory& D) {
  json j = header("mc", C.field);
  std::vector<std::string> labels;
  for (auto& c : D.basis) labels.push_back(c.label);
  j["object_map"] = write_object_map(x.object_map, C.objects, D.objects);
  json xi = json::object();
  for (u32 c = 0; c < C.cells.size(); ++c)
    if (!x.xi[c].empty()) xi[C.cells[c].label] = vec_json(labels, x.xi[c]);
  j["xi"] = xi;
  return j;
}

CoalgebraMorphism to_morphism(const Document& doc, Field f, const PointedCoalgebra& C, const PointedCoalgebra& D) {
  expect_kind(doc, "morphism");
  const json& j = doc.body;
  CoalgebraMorphism m;
  m.object_map = read_object_map(j, C.objects, D.objects);
  m.f.assign(C.cells.size(), Vec(f));
  m.a.assign(C.cells.size(), Scalar::zero(f));
  auto lookup = [&](const std::string& l) { return D.find(l); };
  if (auto* fj = optional_member(j, "f"))
    for (auto& [l, v] : as_object(*fj, "/f").items()) {
      auto c = C.find(l);
      if (!c) throw ParseError(at("/f", l), "unknown cell");
      m.f[*c] = as_vec(v, f, at("/f", l), lookup);
    }
  if (auto* aj = optional_member(j, "a"))
    for (auto& [l, v] : as_object(*aj, "/a").items()) {
      auto c = C.find(l);
      if (!c) throw ParseError(at("/a", l), "unknown cell");
      m.a[*c] = as_scalar(v, f, at("/a", l));
    }
  return m;
}

json serialize(const CoalgebraMorphism& m, const PointedCoalgebra& C, const PointedCoalgebra& D) {
  json j = header("morphism", C.field);
  std::vector<std::string> labels;
  for (auto& c : D.cells) labels.push_back(c.label);
  j["object_map"] = write_object_map(m.object_map, C.objects, D.objects);
  json fj = json::object(), aj = json::object();
  for (u32 c = 0; c < C.cells.size(); ++c) {
    if (c < m.f.size() && !m.f[c].empty()) fj[C.cells[c].label] = vec_json(labels, m.f[c]);
    if (c < m.a.size() && !m.a[c].is_zero()) aj[C.cells[c].label] = m.a[c].str();
  }
  j["f"] = fj;
  j["a"] = aj;
  return j;
}

}  // namespace koszul
