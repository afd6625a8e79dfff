#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "koszul/acceptance.hpp"

using namespace koszul;

namespace {

struct Options {
  std::string field;
  int word_bound = -1;
  std::string window;
  std::size_t budget = 1000000;
  std::uint64_t seed = 42;
  std::string format = "text";
  int level = 2;
  bool nonreduced = false;
  std::vector<std::string> files;
};

struct Loaded {
  std::string path;
  Document doc;
};

// what a command hands back: json payload, text lines, success
struct Output {
  json j = json::object();
  std::string text;
  bool ok = true;
};

struct Context {
  Options opt;
  std::vector<Loaded> docs;
  Field field;
  bool json_out() const { return opt.format == "json"; }
};

Field resolve_field(const Options& o, const std::vector<Loaded>& docs) {
  if (!o.field.empty()) return Field::parse(o.field);
  std::optional<Field> f;
  for (auto& d : docs)
    if (d.doc.field) {
      if (f && *f != *d.doc.field)
        throw FieldMismatch("documents over " + f->name() + " and " + d.doc.field->name() + " (pass --field)");
      f = d.doc.field;
    }
  if (f) return *f;
  if (const char* env = std::getenv("KOSZUL_FIELD"); env && *env) return Field::parse(env);
  return Field::rationals();
}

std::pair<int, int> parse_window(const std::string& s, std::pair<int, int> fallback) {
  if (s.empty()) return fallback;
  auto colon = s.find(':');
  if (colon == std::string::npos) throw InvalidInput("degree window must look like a:b, got '" + s + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    int a = std::stoi(s.substr(0, colon), &p1);
    int b = std::stoi(s.substr(colon + 1), &p2);
    if (p1 != colon || p2 != s.size() - colon - 1 || a > b) throw std::invalid_argument("");
    return {a, b};
  } catch (const std::exception&) {
    throw InvalidInput("bad degree window '" + s + "'");
  }
}

int bound(const Context& c, int fallback) {
  int w = c.opt.word_bound < 0 ? fallback : c.opt.word_bound;
  if (w < 1) throw InvalidInput("word bound must be at least 1");
  return w;
}

void need(const Context& c, std::size_t lo, std::size_t hi, const std::string& usage) {
  if (c.docs.size() < lo || c.docs.size() > hi) throw InvalidInput("usage: " + usage);
}

// wraps typed readers so parse errors name the file
template <class F>
auto read(const Loaded& l, F&& f) {
  try {
    return f(l.doc);
  } catch (const ParseError& e) {
    throw ParseError(e.pointer, l.path + ": " + e.detail);
  }
}

DgCategory dgcat_at(const Context& c, std::size_t i) {
  return read(c.docs.at(i), [&](const Document& d) { return to_dgcat(d, c.field); });
}
PointedCoalgebra coalgebra_at(const Context& c, std::size_t i) {
  return read(c.docs.at(i), [&](const Document& d) { return to_coalgebra(d, c.field); });
}
FiniteSimplicialSet sset_at(const Context& c, std::size_t i) {
  return read(c.docs.at(i), [&](const Document& d) { return to_sset(d); });
}

void put_report(Output& out, const Report& r) {
  out.ok = out.ok && r.ok();
  out.j["report"] = report_json(r);
  out.text += r.text();
}

Output document_output(const json& doc) {
  Output out;
  out.j["document"] = doc;
  out.text = canonical(doc);
  return out;
}

std::string st_name(const Algebra& D, u32 s, u32 t) { return "hom(" + D.objects[s] + ", " + D.objects[t] + ")"; }

// homology of every hom complex of a truncated cobar inside the window;
// degree n is reliable when neither n nor n+1 lost words to the truncation
Output cobar_homology(const Cobar& O, std::pair<int, int> window) {
  Output out;
  const auto& D = O.category;
  json rows = json::array();
  for (u32 s = 0; s < D.objects.size(); ++s)
    for (u32 t = 0; t < D.objects.size(); ++t) {
      auto H = homology_dims(hom_complex(D, s, t));
      for (int n = window.second; n >= window.first; --n) {
        bool exact = O.exact(s, t, n) && O.exact(s, t, n + 1);
        std::size_t dim = H.count(n) ? H[n] : 0;
        rows.push_back({{"source", D.objects[s]}, {"target", D.objects[t]}, {"degree", n}, {"dim", dim}, {"exact", exact}});
        out.text += st_name(D, s, t) + " degree " + std::to_string(n) + ": " + std::to_string(dim) +
                    (exact ? "" : " (truncated)") + "\n";
      }
    }
  out.j["homology"] = rows;
  out.j["word_bound"] = O.word_bound;
  out.j["curved"] = O.curved;
  return out;
}

json simplex_json(const DgCategory& D, const NerveSimplex& x) {
  std::vector<std::string> labels;
  for (auto& c : D.basis) labels.push_back(c.label);
  json objs = json::array();
  for (u32 o : x.objects) objs.push_back(D.objects[o]);
  json f = json::object();
  for (auto& [I, v] : x.f) {
    std::string key;
    for (int i : I) key += (key.empty() ? "" : ",") + std::to_string(i);
    f[key] = vec_json(labels, v);
  }
  return {{"n", x.n}, {"objects", objs}, {"f", f}};
}

// ---- commands ----

Output cmd_validate(const Context& c) {
  need(c, 1, 3, "validate DOC [CONTEXT...]");
  const std::string& kind = c.docs[0].doc.kind;
  Report r;
  if (kind == "dgcat") {
    r = validate_dg_category(dgcat_at(c, 0));
  } else if (kind == "coalgebra") {
    r = validate_pointed_curved_coalgebra(coalgebra_at(c, 0));
  } else if (kind == "sset") {
    r = validate_sset(sset_at(c, 0));
  } else if (kind == "comodule") {
    need(c, 2, 2, "validate COMODULE COALGEBRA");
    auto C = coalgebra_at(c, 1);
    r = validate_comodule(C, read(c.docs[0], [&](const Document& d) { return to_comodule(d, c.field, C); }));
  } else if (kind == "module") {
    need(c, 2, 2, "validate MODULE DGCAT");
    auto D = dgcat_at(c, 1);
    r = validate_module(D, read(c.docs[0], [&](const Document& d) { return to_module(d, c.field, D); }));
  } else if (kind == "mc") {
    need(c, 3, 3, "validate MC COALGEBRA DGCAT");
    auto C = coalgebra_at(c, 1);
    auto D = dgcat_at(c, 2);
    r = mc_check(C, D, read(c.docs[0], [&](const Document& d) { return to_mc(d, c.field, C, D); }));
  } else {
    need(c, 3, 3, "validate MORPHISM SOURCE TARGET");
    auto C = coalgebra_at(c, 1);
    auto D = coalgebra_at(c, 2);
    r = validate_morphism(C, D, read(c.docs[0], [&](const Document& d) { return to_morphism(d, c.field, C, D); }));
  }
  Output out;
  out.j["kind"] = kind;
  put_report(out, r);
  return out;
}

Output cmd_bar(const Context& c) {
  need(c, 1, 1, "bar DGCAT");
  auto D = dgcat_at(c, 0);
  auto dr = validate_dg_category(D);
  if (!dr.ok()) {
    Output out;
    put_report(out, dr);
    return out;
  }
  int W = bound(c, 3);
  auto B = c.opt.nonreduced ? bar_nonreduced(D, W) : bar_reduced(D, W);
  auto r = validate_pointed_curved_coalgebra(B.coalgebra);
  if (!r.ok()) {
    Output out;
    put_report(out, r);
    return out;
  }
  return document_output(serialize(B.coalgebra));
}

Output cobar_like(const Context& c, const Cobar& O) {
  if (c.opt.window.empty()) {
    Output out = document_output(serialize(O.category));
    out.j["word_bound"] = O.word_bound;
    out.j["curved"] = O.curved;
    return out;
  }
  Output out = cobar_homology(O, parse_window(c.opt.window, {0, 0}));
  out.j["document"] = serialize(O.category);
  return out;
}

Output cmd_cobar(const Context& c) {
  need(c, 1, 1, "cobar COALGEBRA");
  auto C = coalgebra_at(c, 0);
  auto r = validate_pointed_curved_coalgebra(C);
  if (!r.ok()) {
    Output out;
    put_report(out, r);
    return out;
  }
  return cobar_like(c, cobar(C, bound(c, 3)));
}

Output cmd_uncurve(const Context& c) {
  need(c, 1, 1, "uncurve COALGEBRA");
  auto C = coalgebra_at(c, 0);
  auto A = dualize(C);
  Uncurved H(A, bound(c, 2));
  Output out;
  std::map<int, std::size_t> dims;
  for (auto& t : H.basis()) ++dims[H.degree(t)];
  json dj = json::object();
  for (auto& [n, k] : dims) {
    dj[std::to_string(n)] = k;
    out.text += "degree " + std::to_string(n) + ": " + std::to_string(k) + " tuples\n";
  }
  out.j["dims"] = dj;
  out.j["eta_bound"] = H.bound();
  bool gens = H.generators_square_zero();
  out.j["generators_square_zero"] = gens;
  out.text += std::string("generators square zero: ") + (gens ? "true" : "false") + "\n";
  auto r = H.check_square_zero();
  if (!gens) r.fail("d_H^2 != 0 on a generator", "");
  put_report(out, r);
  return out;
}

Output cmd_chains(const Context& c, bool twisted) {
  need(c, 1, 1, twisted ? "twisted-chains SSET" : "chains SSET");
  auto K = sset_at(c, 0);
  auto r = validate_sset(K);
  if (!r.ok()) {
    Output out;
    put_report(out, r);
    return out;
  }
  return document_output(serialize(twisted ? twisted_chains(K, c.field) : normalized_chains(K, c.field)));
}

Output cmd_L(const Context& c) {
  need(c, 1, 1, "L SSET");
  auto K = sset_at(c, 0);
  auto r = validate_sset(K);
  if (!r.ok()) {
    Output out;
    put_report(out, r);
    return out;
  }
  return cobar_like(c, L_functor(K, bound(c, 3), c.field));
}

std::vector<std::vector<int>> faces_and_degeneracies(int n) {
  std::vector<std::vector<int>> out;
  for (auto& a : monotone_maps(n - 1, n)) out.push_back(a);
  for (auto& a : monotone_maps(n + 1, n)) {
    std::set<int> img(a.begin(), a.end());
    if (static_cast<int>(img.size()) == n + 1) out.push_back(a);
  }
  return out;
}

Output cmd_nerve_check(const Context& c) {
  need(c, 1, 1, "nerve-check DGCAT --level n");
  auto D = dgcat_at(c, 0);
  int n = c.opt.level;
  if (n < 0) throw InvalidInput("level must be >= 0");
  Report r;
  r.subject = "nerve";
  std::size_t candidates = 0, simplices = 0, maps = 0;
  for_each_nerve_candidate(D, n, c.opt.budget, [&](const NerveSimplex& x) {
    ++candidates;
    bool lurie = nerve_check_lurie(D, x).ok(), mc = nerve_check_mc(D, x).ok();
    if (lurie != mc) r.fail("Lurie and MC checks disagree", show(D, x));
    if (!lurie || !mc) return;
    ++simplices;
    if (n == 0) return;
    for (auto& a : faces_and_degeneracies(n)) {
      ++maps;
      try {
        nerve_structure_map(D, a, x);
      } catch (const ComparisonFailure& e) {
        r.fail("structure maps disagree", show(D, x) + " along " + json(a).dump() + ": " + e.what());
      }
    }
  });
  Output out;
  out.j["level"] = n;
  out.j["candidates"] = candidates;
  out.j["simplices"] = simplices;
  out.j["structure_maps"] = maps;
  out.text = "level " + std::to_string(n) + ": " + std::to_string(candidates) + " candidates, " +
             std::to_string(simplices) + " simplices, " + std::to_string(maps) + " structure maps compared\n";
  put_report(out, r);
  return out;
}

Output cmd_nerve_enum(const Context& c) {
  need(c, 1, 1, "nerve-enum DGCAT --level n");
  auto D = dgcat_at(c, 0);
  auto xs = nerve_enumerate_mc(D, c.opt.level, c.opt.budget);
  Output out;
  json arr = json::array();
  for (auto& x : xs) {
    arr.push_back(simplex_json(D, x));
    out.text += show(D, x) + "\n";
  }
  out.j["level"] = c.opt.level;
  out.j["count"] = xs.size();
  out.j["simplices"] = arr;
  out.text = "level " + std::to_string(c.opt.level) + ": " + std::to_string(xs.size()) + " simplices\n" + out.text;
  return out;
}

Output cmd_F_level(const Context& c) {
  need(c, 1, 1, "F-level COALGEBRA --level n");
  auto C = coalgebra_at(c, 0);
  int n = c.opt.level;
  auto S = twisted_chains(standard_simplex(n), c.field);
  auto ms = F_level_enumerate(C, n, c.opt.budget);
  Output out;
  Report r;
  r.subject = "F level";
  json arr = json::array();
  for (std::size_t k = 0; k < ms.size(); ++k) {
    auto rep = F_level_check(C, n, ms[k]);
    if (!rep.ok()) r.fail("enumerated morphism fails the check", "#" + std::to_string(k));
    arr.push_back(serialize(ms[k], S, C));
  }
  out.j["level"] = n;
  out.j["count"] = ms.size();
  out.j["morphisms"] = arr;
  out.text = "level " + std::to_string(n) + ": " + std::to_string(ms.size()) + " morphisms\n";
  for (auto& m : arr) out.text += m.dump() + "\n";
  put_report(out, r);
  return out;
}

struct McInput {
  PointedCoalgebra C;
  DgCategory D;
};

McInput cd_at(const Context& c) { return {coalgebra_at(c, 0), dgcat_at(c, 1)}; }

Output cmd_mc_check(const Context& c) {
  need(c, 3, 3, "mc-check COALGEBRA DGCAT MC");
  auto [C, D] = cd_at(c);
  auto x = read(c.docs[2], [&](const Document& d) { return to_mc(d, c.field, C, D); });
  auto r = mc_check(C, D, x);
  auto fr = functor_check(C, D, phi_inv(x));
  Output out;
  out.j["mc"] = r.ok();
  out.j["functor"] = fr.ok();
  out.text = std::string("MC equation: ") + (r.ok() ? "true" : "false") + "\nfunctor on the cobar: " +
             (fr.ok() ? "true" : "false") + "\n";
  if (r.ok() != fr.ok()) r.fail("MC and functor readings disagree", "");
  put_report(out, r);
  return out;
}

Output cmd_mc_enum(const Context& c) {
  need(c, 2, 2, "mc-enum COALGEBRA DGCAT");
  auto [C, D] = cd_at(c);
  auto xs = mc_enumerate(C, D, c.opt.budget);
  Output out;
  json arr = json::array();
  for (auto& x : xs) arr.push_back(serialize(x, C, D));
  out.j["count"] = xs.size();
  out.j["elements"] = arr;
  out.text = std::to_string(xs.size()) + " MC elements\n";
  for (auto& x : arr) out.text += x.dump() + "\n";
  return out;
}

Output cmd_roundtrip(const Context& c) {
  need(c, 2, 2, "adjunction-roundtrip COALGEBRA DGCAT");
  auto [C, D] = cd_at(c);
  auto rt = adjunction_roundtrip(C, D, c.opt.budget);
  Output out;
  out.j["mc"] = rt.mc;
  out.j["functors"] = rt.functors;
  out.j["morphisms"] = rt.morphisms;
  out.j["bar_word_bound"] = rt.word_bound;
  out.text = "MC(C, D): " + std::to_string(rt.mc) + "\nFun(Omega C, D): " + std::to_string(rt.functors) +
             "\nHom(C, B D): " + std::to_string(rt.morphisms) + "\n";
  put_report(out, rt.report);
  return out;
}

Output cmd_counit(const Context& c) {
  need(c, 1, 1, "counit-check DGCAT");
  auto D = dgcat_at(c, 0);
  auto w = parse_window(c.opt.window, {-3, 0});
  auto res = counit_check(D, bound(c, 4), w.first, w.second);
  Output out;
  json rows = json::array();
  for (auto& [st, byn] : res.table)
    for (auto it = byn.rbegin(); it != byn.rend(); ++it) {
      auto [n, dims] = *it;
      rows.push_back({{"source", D.objects[st.first]}, {"target", D.objects[st.second]}, {"degree", n},
                      {"omega_b", dims.first}, {"original", dims.second}});
      out.text += st_name(D, st.first, st.second) + " degree " + std::to_string(n) + ": " +
                  std::to_string(dims.first) + " vs " + std::to_string(dims.second) + "\n";
    }
  auto tf = [](bool b) { return b ? std::string("true") : std::string("false"); };
  out.text += "equal: " + tf(res.equal) + "\nstabilized: " + tf(res.stabilized) + "\nquasi-iso: " + tf(res.quasi_iso) + "\n";
  for (auto& s : res.inexact) out.text += "truncated: " + s + "\n";
  out.j["table"] = rows;
  out.j["equal"] = res.equal;
  out.j["stabilized"] = res.stabilized;
  out.j["quasi_iso"] = res.quasi_iso;
  out.j["inexact"] = res.inexact;
  put_report(out, res.report);
  return out;
}

Output cmd_twist(const Context& c) {
  need(c, 4, 4, "twist COALGEBRA DGCAT MC (COMODULE | MODULE)");
  auto [C, D] = cd_at(c);
  auto tau = read(c.docs[2], [&](const Document& d) { return to_mc(d, c.field, C, D); });
  auto mr = mc_check(C, D, tau);
  if (!mr.ok()) {
    Output out;
    put_report(out, mr);
    return out;
  }
  const Loaded& l = c.docs[3];
  if (l.doc.kind == "comodule") {
    auto N = read(l, [&](const Document& d) { return to_comodule(d, c.field, C); });
    auto r = validate_comodule(C, N);
    if (!r.ok()) {
      Output out;
      put_report(out, r);
      return out;
    }
    return document_output(serialize(twist_module(D, C, tau, N), D));
  }
  auto M = read(l, [&](const Document& d) { return to_module(d, c.field, D); });
  auto r = validate_module(D, M);
  if (!r.ok()) {
    Output out;
    put_report(out, r);
    return out;
  }
  return document_output(serialize(twist_comodule(C, D, tau, M), C));
}

Output cmd_fg(const Context& c) {
  need(c, 5, 5, "fg-adjoint COALGEBRA DGCAT MC COMODULE MODULE");
  auto [C, D] = cd_at(c);
  auto tau = read(c.docs[2], [&](const Document& d) { return to_mc(d, c.field, C, D); });
  auto N = read(c.docs[3], [&](const Document& d) { return to_comodule(d, c.field, C); });
  auto M = read(c.docs[4], [&](const Document& d) { return to_module(d, c.field, D); });
  Report pre;
  pre.merge(mc_check(C, D, tau), "tau: ");
  pre.merge(validate_comodule(C, N), "comodule: ");
  pre.merge(validate_module(D, M), "module: ");
  if (!pre.ok()) {
    Output out;
    put_report(out, pre);
    return out;
  }
  auto cert = fg_adjunction_check(C, D, tau, N, M);
  Output out;
  json rows = json::array();
  for (auto& [n, lr] : cert.dims) {
    auto h = cert.homology.count(n) ? cert.homology.at(n) : std::pair<std::size_t, std::size_t>{0, 0};
    rows.push_back({{"degree", n}, {"dim_left", lr.first}, {"dim_right", lr.second}, {"homology_left", h.first},
                    {"homology_right", h.second}});
    out.text += "degree " + std::to_string(n) + ": maps " + std::to_string(lr.first) + " vs " +
                std::to_string(lr.second) + ", homology " + std::to_string(h.first) + " vs " +
                std::to_string(h.second) + "\n";
  }
  out.j["degrees"] = rows;
  put_report(out, cert.report);
  return out;
}

Output cmd_acceptance(const Context& c) {
  need(c, 0, 0, "acceptance --seed N");
  bool stream = !c.json_out();
  auto results = run_acceptance(c.opt.seed, [&](const CriterionResult& r) {
    if (stream) std::cout << criterion_line(r) << std::endl;
  });
  Output out;
  out.j = acceptance_json(results, c.opt.seed);
  for (auto& r : results) out.ok = out.ok && r.pass;
  return out;
}

int emit_error(const Options& opt, const std::string& command, const std::string& kind, const std::string& msg,
               const std::string& pointer, int code) {
  if (opt.format == "json") {
    json j = {{"command", command}, {"ok", false}, {"error", {{"kind", kind}, {"message", msg}}}};
    if (!pointer.empty()) j["error"]["pointer"] = pointer;
    std::cout << canonical(j);
  }
  std::cerr << "error: " << kind << ": " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"koszul: exact bar/cobar, twisting and nerve computations"};
  app.require_subcommand(1);
  app.footer(
      "Conventions: products are diagrammatic, (a, b) means a then b. Degrees are cohomological.\n"
      "A nerve simplex stores f_I for I = {i- < ... < i+} in hom(X_i-, X_i+).\n"
      "Exit codes: 0 ok, 1 failed check (witness printed), 2 input error.");
  app.fallthrough();
  Options opt;
  app.add_option("--field", opt.field, "Q or Fp (default: the documents' field, then KOSZUL_FIELD, then Q)");
  app.add_option("--word-bound,-W", opt.word_bound, "word length bound W");
  app.add_option("--degree-window", opt.window, "degree window a:b");
  app.add_option("--budget", opt.budget, "enumeration budget");
  app.add_option("--seed", opt.seed, "seed for randomized suites");
  app.add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--level,-n", opt.level, "simplicial level n");
  app.add_flag("--nonreduced", opt.nonreduced, "bar: use the non-reduced construction");

  using Handler = std::function<Output(const Context&)>;
  std::vector<std::pair<std::string, Handler>> commands = {
      {"validate", cmd_validate},
      {"bar", cmd_bar},
      {"cobar", cmd_cobar},
      {"uncurve", cmd_uncurve},
      {"twisted-chains", [](const Context& c) { return cmd_chains(c, true); }},
      {"chains", [](const Context& c) { return cmd_chains(c, false); }},
      {"nerve-check", cmd_nerve_check},
      {"nerve-enum", cmd_nerve_enum},
      {"F-level", cmd_F_level},
      {"L", cmd_L},
      {"mc-check", cmd_mc_check},
      {"mc-enum", cmd_mc_enum},
      {"adjunction-roundtrip", cmd_roundtrip},
      {"counit-check", cmd_counit},
      {"twist", cmd_twist},
      {"fg-adjoint", cmd_fg},
      {"acceptance", cmd_acceptance},
  };
  static const std::map<std::string, std::string> help = {
      {"validate", "validate a document (comodules, modules, MC elements and morphisms take context files)"},
      {"bar", "bar construction of a dg category"},
      {"cobar", "truncated cobar category of a pointed curved coalgebra"},
      {"uncurve", "uncurving of the dual algebra of a coalgebra"},
      {"twisted-chains", "twisted chain coalgebra of a simplicial set"},
      {"chains", "normalized chain coalgebra of a simplicial set"},
      {"nerve-check", "compare both dg nerve descriptions at one level"},
      {"nerve-enum", "list dg nerve simplices at one level"},
      {"F-level", "list curved morphisms from the twisted chains of a simplex"},
      {"L", "cobar of the twisted chains of a simplicial set"},
      {"mc-check", "check an MC element and the functor it defines"},
      {"mc-enum", "list MC elements over a finite field"},
      {"adjunction-roundtrip", "compare MC elements, functors and bar morphisms"},
      {"counit-check", "compare hom homology of the bar-cobar resolution"},
      {"twist", "twist a comodule into a module or a module into a comodule"},
      {"fg-adjoint", "certificate for the twisting adjunction on a pair"},
      {"acceptance", "run the acceptance suite"},
  };
  std::map<std::string, Handler> handlers;
  for (auto& [name, h] : commands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("files", opt.files, "input documents");
    handlers[name] = h;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  std::string command = app.get_subcommands().front()->get_name();

  try {
    Context c;
    c.opt = opt;
    for (auto& p : opt.files) {
      try {
        c.docs.push_back({p, load_document(p)});
      } catch (const ParseError& e) {
        throw ParseError(e.pointer, p + ": " + e.detail);
      }
    }
    c.field = resolve_field(opt, c.docs);
    Output out = handlers.at(command)(c);
    if (c.json_out()) {
      json j = out.j;
      if (command != "acceptance") {
        j["command"] = command;
        j["field"] = c.field.name();
        j["ok"] = out.ok;
      }
      std::cout << canonical(j);
    } else {
      std::cout << out.text;
    }
    return out.ok ? 0 : 1;
  } catch (const ParseError& e) {
    return emit_error(opt, command, e.kind(), e.what(), e.pointer.empty() ? "/" : e.pointer, 2);
  } catch (const ComparisonFailure& e) {
    return emit_error(opt, command, e.kind(), e.what(), "", 1);
  } catch (const Error& e) {
    return emit_error(opt, command, e.kind(), e.what(), "", 2);
  } catch (const std::exception& e) {
    return emit_error(opt, command, "Error", e.what(), "", 2);
  }
}
