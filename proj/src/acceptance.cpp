#include "koszul/acceptance.hpp"

#include <set>

#include "koszul/random.hpp"

namespace koszul {

namespace {

constexpr std::size_t kBudget = 5000000;

Field F2() { return Field::prime(2); }
Field F5() { return Field::prime(5); }

CriterionResult result(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.data = json::object();
  return r;
}

void finish(CriterionResult& r, bool pass, std::string detail) {
  r.pass = pass;
  r.detail = std::move(detail);
}

std::string first_failure(const Report& r) {
  if (r.failures.empty()) return r.subject;
  return r.subject + ": " + r.failures[0].check + " [" + r.failures[0].witness + "]";
}

// 1
CriterionResult cobar_square_zero(std::uint64_t seed) {
  auto r = result(1, "cobar squares to zero on random pointed curved coalgebras");
  Rng rng(seed);
  std::size_t curved = 0, n = 0, bad = 0;
  std::string witness;
  Field fields[] = {F2(), F5(), Field::rationals()};
  for (int i = 0; i < 200; ++i) {
    auto C = random_coalgebra(fields[i % 3], rng);
    auto v = validate_pointed_curved_coalgebra(C);
    auto rep = check_cobar_square_zero(cobar(C, 4));
    ++n;
    curved += C.curved();
    if (!v.ok() || !rep.ok()) {
      ++bad;
      if (witness.empty()) witness = first_failure(v.ok() ? rep : v);
    }
  }
  r.data = {{"instances", n}, {"curved", curved}, {"failures", bad}};
  finish(r, bad == 0 && curved > 0,
         std::to_string(n) + " coalgebras (" + std::to_string(curved) + " curved), W=4" +
             (bad ? ", first failure: " + witness : ""));
  return r;
}

// 2
CriterionResult bar_validity(std::uint64_t seed) {
  auto r = result(2, "bar validity and reduced/non-reduced cross-check");
  Rng rng(seed);
  std::size_t bad = 0, checks = 0;
  std::string witness;
  Field fields[] = {F2(), F5(), Field::rationals()};
  for (int i = 0; i < 100; ++i) {
    auto D = random_dg_category(fields[i % 3], rng, 3, 3);
    for (int W = 1; W <= 3; ++W) {
      auto B = bar_reduced(D, W);
      auto v = validate_pointed_curved_coalgebra(B.coalgebra);
      auto x = reduced_unreduced_check(D, default_retract(D), W);
      ++checks;
      if (!v.ok() || !x.ok()) {
        ++bad;
        if (witness.empty()) witness = "instance " + std::to_string(i) + " W=" + std::to_string(W) + ": " + first_failure(v.ok() ? x : v);
      }
    }
  }
  r.data = {{"instances", 100}, {"checks", checks}, {"failures", bad}};
  finish(r, bad == 0, "100 dg categories, each at W = 1, 2, 3" + (bad ? ", first failure: " + witness : ""));
  return r;
}

// 3
CriterionResult triple_bijection(std::uint64_t) {
  auto r = result(3, "adjunction triple bijection");
  Field f = F2();
  std::vector<std::pair<std::string, PointedCoalgebra>> Cs;
  {
    PointedCoalgebra one;
    one.field = f;
    one.objects = {"a"};
    one.reindex();
    Cs.push_back({"k[a]", one});
    PointedCoalgebra two = one;
    two.objects = {"a", "b"};
    two.reindex();
    Cs.push_back({"k[a,b]", two});
  }
  Cs.push_back({"B S(1)", bar_reduced(fixture_S(f, 1), 2).coalgebra});
  Cs.push_back({"B A2", bar_reduced(fixture_A2(f), 2).coalgebra});
  Cs.push_back({"B S(-1)", bar_reduced(fixture_S(f, -1), 2).coalgebra});
  Cs.push_back({"B dual numbers W=2", bar_reduced(fixture_dual_numbers(f), 2).coalgebra});
  {
    auto D = fixture_square_zero(f, 0);
    Retract w = default_retract(D);
    w.v[0].add(D.index("x"), Scalar::one(f));
    Cs.push_back({"B(k+x) W=2, curved retract", bar_reduced(D, w, 2).coalgebra});
    auto E = fixture_dual_numbers(f);
    Retract we = default_retract(E);
    we.v[0].add(E.index("e"), Scalar::one(f));
    Cs.push_back({"B dual numbers W=2, curved retract", bar_reduced(E, we, 2).coalgebra});
  }
  Cs.push_back({"twisted chains of an edge", twisted_chains(standard_simplex(1), f)});
  std::vector<std::pair<std::string, DgCategory>> Ds = {
      {"k", fixture_k(f)}, {"S(1)", fixture_S(f, 1)}, {"A2", fixture_A2(f)}, {"dual numbers", fixture_dual_numbers(f)}};
  std::size_t pairs = 0, curved = 0, total = 0, bad = 0;
  std::string witness;
  json table = json::array();
  for (auto& [cn, C] : Cs) {
    if (C.cells.size() > 2) throw ComparisonFailure("criterion 3 coalgebra too large");
    curved += C.curved();
    for (auto& [dn, D] : Ds) {
      ++pairs;
      auto rt = adjunction_roundtrip(C, D, kBudget);
      bool ok = rt.report.ok();
      total += rt.mc;
      table.push_back({{"C", cn}, {"D", dn}, {"mc", rt.mc}, {"functors", rt.functors}, {"morphisms", rt.morphisms}});
      if (!ok) {
        ++bad;
        if (witness.empty())
          witness = cn + " -> " + dn + " (" + rt.report.failures.front().check + " " + rt.report.failures.front().witness + ")";
      }
    }
  }
  r.data = {{"pairs", pairs}, {"table", table}, {"failures", bad}};
  finish(r, bad == 0 && curved > 0,
         std::to_string(pairs) + " (C, D) pairs over F2, " + std::to_string(curved) + " curved C, " +
             std::to_string(total) + " MC elements" + (bad ? ", first failure: " + witness : ""));
  return r;
}

// 4
CriterionResult omega_b_s(std::uint64_t) {
  auto r = result(4, "Omega B S(n) = S(n)");
  bool ok = true;
  std::string witness;
  Field Q = Field::rationals();
  for (int n : {0, 1, 2}) {
    auto S = fixture_S(Q, n);
    auto O = cobar(bar_reduced(S, 3).coalgebra, 3);
    const auto& C = O.category;
    // same presentation: two objects, identities and one generator of degree n, no differential
    bool same = C.objects.size() == 2 && C.basis.size() == 3 && O.inexact.empty();
    auto g = C.find("<[f]>");
    same = same && g && C.basis[*g].degree == n && C.d[*g].empty() && C.basis[*g].source == 0 &&
           C.basis[*g].target == 1;
    for (u32 i = 0; i < C.basis.size() && same; ++i)
      for (u32 j = 0; j < C.basis.size(); ++j) {
        auto p = C.mul_basis(i, j);
        bool id = (C.identity[C.basis[i].source] == i) || (C.identity[C.basis[j].target] == j);
        if (p && !p->empty() && !id) same = false;
      }
    if (!same) {
      ok = false;
      witness = "n=" + std::to_string(n);
    }
  }
  finish(r, ok, ok ? "n = 0, 1, 2: generator <[f]> of degree n, d = 0, no other composites" : "mismatch at " + witness);
  return r;
}

// 5
CriterionResult counit(std::uint64_t) {
  auto r = result(5, "counit quasi-equivalence at desk scale");
  Field Q = Field::rationals();
  std::vector<std::pair<std::string, DgCategory>> Ds = {{"k", fixture_k(Q)},
                                                        {"A2", fixture_A2(Q)},
                                                        {"k+x, |x|=-1", fixture_square_zero(Q, -1)},
                                                        {"D(1)", fixture_D(Q, 1)}};
  bool ok = true;
  std::string witness;
  json rows = json::array();
  for (auto& [name, D] : Ds) {
    auto c = counit_check(D, 4, -3, 0);
    bool good = c.report.ok() && c.equal && c.stabilized && c.quasi_iso && c.inexact.empty();
    rows.push_back({{"D", name}, {"equal", c.equal}, {"stabilized", c.stabilized}, {"quasi_iso", c.quasi_iso}});
    if (!good) {
      ok = false;
      if (witness.empty()) witness = name + ": " + first_failure(c.report);
    }
  }
  r.data = {{"rows", rows}};
  finish(r, ok, ok ? "k, A2, k+x(-1), D(1): homology equal in [-3,0], stabilized W=4 vs W=3" : witness);
  return r;
}

std::set<std::string> simplex_keys(const DgCategory& D, const std::vector<NerveSimplex>& xs) {
  std::set<std::string> out;
  for (auto& x : xs) out.insert(show(D, x));
  return out;
}

std::vector<std::pair<std::string, DgCategory>> nerve_categories(Field f) {
  return {{"k", fixture_k(f)}, {"S(1)", fixture_S(f, 1)}, {"A2", fixture_A2(f)}, {"homotopy", fixture_homotopy(f)}};
}

// 6
CriterionResult nerve_equality(std::uint64_t) {
  auto r = result(6, "nerve equality: Lurie vs MC simplices and structure maps");
  Field f = F2();
  std::size_t candidates = 0, simplices = 0, maps = 0, bad = 0;
  std::string witness;
  for (auto& [name, D] : nerve_categories(f)) {
    for (int n = 0; n <= 3; ++n) {
      std::size_t valid = 0;
      for_each_nerve_candidate(D, n, kBudget, [&](const NerveSimplex& x) {
        ++candidates;
        bool a = nerve_check_lurie(D, x).ok(), b = nerve_check_mc(D, x).ok();
        if (a) ++valid;
        if (a != b) {
          ++bad;
          if (witness.empty()) witness = name + " " + show(D, x);
        }
      });
      auto L = nerve_enumerate_lurie(D, n, kBudget);
      auto M = nerve_enumerate_mc(D, n, kBudget);
      if (L.size() != valid || simplex_keys(D, L) != simplex_keys(D, M)) {
        ++bad;
        if (witness.empty()) witness = name + " level " + std::to_string(n) + " sets differ";
      }
      simplices += L.size();
      for (auto& x : L)
        for (int m = 0; m <= 3; ++m)
          for (auto& alpha : monotone_maps(m, n)) {
            ++maps;
            try {
              auto y = nerve_structure_map(D, alpha, x);
              if (!nerve_check_lurie(D, y).ok()) throw ComparisonFailure("image is not a simplex");
            } catch (const Error& e) {
              ++bad;
              if (witness.empty()) witness = name + " " + show(D, x) + ": " + e.what();
            }
          }
    }
  }
  r.data = {{"candidates", candidates}, {"simplices", simplices}, {"structure_maps", maps}, {"failures", bad}};
  finish(r, bad == 0,
         std::to_string(candidates) + " candidates, " + std::to_string(simplices) + " simplices, " +
             std::to_string(maps) + " structure maps, n,m <= 3 over F2" + (bad ? ", first failure: " + witness : ""));
  return r;
}

// 7
CriterionResult ordinary_nerve(std::uint64_t) {
  auto r = result(7, "ordinary nerve of A2 is functors [n] -> A2");
  auto D = fixture_A2(F2());
  bool ok = true;
  json counts = json::array();
  for (int n = 0; n <= 3; ++n) {
    auto L = nerve_enumerate_lurie(D, n, kBudget);
    auto P = poset_functors(D, n, kBudget);
    counts.push_back({{"n", n}, {"nerve", L.size()}, {"functors", P.size()}});
    ok = ok && simplex_keys(D, L) == simplex_keys(D, P);
  }
  r.data = {{"levels", counts}};
  finish(r, ok, "levels 0..3: " + counts.dump());
  return r;
}

// 8
CriterionResult loop_space(std::uint64_t) {
  auto r = result(8, "loop-space cobar of the 2-sphere");
  auto L = L_functor(sphere(2), 5, Field::rationals());
  auto H = homology_dims(hom_complex(L.category, 0, 0));
  bool ok = true;
  json dims = json::object();
  for (int n = 0; n >= -3; --n) {
    dims[std::to_string(n)] = H[n];
    ok = ok && H[n] == 1 && L.exact(0, 0, n) && L.exact(0, 0, n + 1);
  }
  r.data = {{"homology", dims}};
  finish(r, ok, "dim H^n End(p) at W=5 for n = 0..-3: " + dims.dump() + (ok ? ", all exact" : ""));
  return r;
}

std::vector<std::pair<std::string, FiniteSimplicialSet>> sset_fixtures() {
  std::vector<std::pair<std::string, FiniteSimplicialSet>> out;
  for (int n = 0; n <= 5; ++n) out.push_back({"Delta^" + std::to_string(n), standard_simplex(n)});
  for (int n = 1; n <= 4; ++n) out.push_back({"boundary Delta^" + std::to_string(n), simplex_boundary(n)});
  for (int n = 1; n <= 4; ++n) out.push_back({"S^" + std::to_string(n), sphere(n)});
  out.push_back({"long edge", long_edge()});
  out.push_back({"Delta^1/(0~1)", simplex_quotient(1, {{0, 1}})});
  out.push_back({"Delta^2/(0~1)", simplex_quotient(2, {{0, 1}})});
  out.push_back({"Delta^2/(0~2)", simplex_quotient(2, {{0, 2}})});
  out.push_back({"Delta^2/(0~1~2)", simplex_quotient(2, {{0, 1, 2}})});
  out.push_back({"Delta^3/(0~3)", simplex_quotient(3, {{0, 3}})});
  return out;
}

// 9
CriterionResult twisted(std::uint64_t) {
  auto r = result(9, "twisted chains: subset formula and (id, +-e)");
  Field Q = Field::rationals();
  bool ok = true;
  std::string witness;
  for (int n = 0; n <= 5; ++n) {
    auto rep = subset_formula_check(standard_simplex(n), Q);
    if (!rep.ok()) {
      ok = false;
      if (witness.empty()) witness = "Delta^" + std::to_string(n) + ": " + first_failure(rep);
    }
  }
  auto fx = sset_fixtures();
  std::size_t curved = 0;
  for (auto& [name, K] : fx) {
    auto rep = twisted_isomorphism_check(K, Q);
    if (!rep.ok()) {
      ok = false;
      if (witness.empty()) witness = name + ": " + first_failure(rep);
    }
    if (twisted_chains(K, Q).curved()) ++curved;
  }
  auto C = twisted_chains(long_edge(), Q);
  std::string h;
  for (u32 i = 0; i < C.cells.size(); ++i)
    if (!C.curvature[i].is_zero() && h.empty()) h = "h(" + C.cells[i].label + ") = " + C.curvature[i].str();
  ok = ok && !h.empty() && fx.size() == 20;
  r.data = {{"fixtures", fx.size()}, {"curved", curved}, {"long_edge_curvature", h}};
  finish(r, ok,
         ok ? "subset formula n <= 5; 20 fixtures validate; long edge " + h : "failure: " + (witness.empty() ? "no curvature witness" : witness));
  return r;
}

Vec random_in_degree(const Algebra& A, int deg, Rng& rng, bool diagonal) {
  Vec v(A.field);
  for (u32 i = 0; i < A.basis.size(); ++i)
    if (A.basis[i].degree == deg && (!diagonal || A.basis[i].source == A.basis[i].target))
      v.add(i, random_scalar(A.field, rng));
  return v;
}

// 10
CriterionResult uncurving(std::uint64_t seed) {
  auto r = result(10, "uncurving laws");
  Rng rng(seed);
  // MC equivalence, exhaustive over F2
  std::size_t algebras = 0, elements = 0, mcs = 0, bad = 0;
  std::string witness;
  for (int i = 0; algebras < 60 && i < 2000; ++i) {
    auto A = dualize(random_coalgebra(F2(), rng));
    std::vector<u32> deg1;
    for (u32 k = 0; k < A.basis.size(); ++k)
      if (A.basis[k].degree == 1) deg1.push_back(k);
    if (deg1.size() > 3) continue;
    ++algebras;
    for_each_vector(F2(), deg1, [&](const Vec& a) {
      ++elements;
      bool x = mc_curved_check(A, a), y = mc_transfer_check(A, a);
      mcs += x;
      if (x != y) {
        ++bad;
        if (witness.empty()) witness = "MC disagreement on " + show(A, a);
      }
    });
  }
  // curved maps vs f_b on random candidates
  std::size_t candidates = 0, valid = 0;
  Field fields[] = {F2(), F5(), Field::rationals()};
  for (int i = 0; candidates < 200; ++i) {
    Field f = fields[i % 3];
    auto A = dualize(random_coalgebra(f, rng));
    Vec b = random_in_degree(A, 1, rng, pick(rng, 4) != 0);
    AlgebraMorphism m = identity_morphism(A);
    CurvedAlgebra B = A;
    switch (pick(rng, 4)) {
      case 0:  // change of curvature, valid
        B = change_curvature(A, b);
        m.b = b;
        break;
      case 1:  // change of curvature with a perturbed b
        B = change_curvature(A, b);
        m.b = b + random_in_degree(A, 1, rng, false);
        break;
      case 2:  // perturb f on one basis element
        if (!A.basis.empty()) {
          u32 k = static_cast<u32>(pick(rng, A.basis.size()));
          Vec extra(f);
          for (u32 j = 0; j < A.basis.size(); ++j)
            if (A.basis[j].degree == A.basis[k].degree && A.basis[j].source == A.basis[k].source &&
                A.basis[j].target == A.basis[k].target)
              extra.add(j, random_scalar(f, rng));
          m.f[k] += extra;
        }
        m.b = b;
        B = change_curvature(A, b);
        break;
      default:  // identity with some b into A itself
        m.b = b;
    }
    ++candidates;
    bool x = validate_morphism(A, B, m).ok();
    Uncurved HA(A, 3), HB(B, 3);
    bool y = check_dg_algebra_map(HA, HB, m).ok();
    valid += x;
    if (x != y) {
      ++bad;
      if (witness.empty()) {
        witness = "curved map / f_b disagreement on candidate " + std::to_string(candidates);
      }
    }
  }
  r.data = {{"algebras", algebras},   {"elements", elements}, {"mc", mcs},
            {"candidates", candidates}, {"valid_maps", valid}, {"failures", bad}};
  finish(r, bad == 0 && valid > 0 && valid < candidates,
         std::to_string(algebras) + " algebras, " + std::to_string(elements) + " degree-1 elements (" +
             std::to_string(mcs) + " MC); " + std::to_string(candidates) + " map candidates (" + std::to_string(valid) +
             " valid)" + (bad ? ", first failure: " + witness : ""));
  return r;
}

// 11
CriterionResult fg_adjoint(std::uint64_t seed) {
  auto r = result(11, "module-comodule twists and the fg adjunction");
  Rng rng(seed);
  std::size_t bad = 0, curved = 0;
  std::string witness;
  for (int i = 0; i < 100; ++i) {
    auto I = random_fg_instance(F5(), rng);
    curved += I.B.coalgebra.curved();
    auto c = fg_adjunction_check(I.B.coalgebra, I.D, I.tau, I.N, I.M);
    if (!c.report.ok()) {
      ++bad;
      if (witness.empty()) witness = "instance " + std::to_string(i) + ": " + first_failure(c.report);
    }
  }
  // representables over A2: D box^tau k_X = Hom(-, X) valuewise
  auto D = fixture_A2(F5());
  auto B = bar_reduced(D, 3);
  auto tau = tautological(B, D);
  bool rep_ok = true;
  for (u32 x = 0; x < D.objects.size(); ++x) {
    auto P = twist_module(D, B.coalgebra, tau, point_comodule(B.coalgebra, x));
    auto R = representable(D, x);
    bool same = P.basis.size() == R.basis.size();
    for (u32 k = 0; same && k < P.basis.size(); ++k)
      same = P.basis[k].object == R.basis[k].object && P.basis[k].degree == R.basis[k].degree && P.d[k] == R.d[k];
    same = same && P.action == R.action;
    for (u32 y = 0; y < D.objects.size(); ++y)
      same = same && fg_adjunction_check(B.coalgebra, D, tau, point_comodule(B.coalgebra, x), representable(D, y)).report.ok();
    if (!same) {
      rep_ok = false;
      if (witness.empty()) witness = "representable at " + D.objects[x];
    }
  }
  r.data = {{"instances", 100}, {"curved", curved}, {"failures", bad}, {"representables", rep_ok}};
  finish(r, bad == 0 && rep_ok,
         "100 random F5 instances (" + std::to_string(curved) + " curved) and A2 representables" +
             (witness.empty() ? "" : ", first failure: " + witness));
  return r;
}

CriterionResult guarded(int id, const std::string& name, const std::function<CriterionResult()>& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    auto r = result(id, name);
    finish(r, false, std::string("exception: ") + e.what());
    return r;
  }
}

}  // namespace

std::vector<CriterionResult> run_criteria(std::uint64_t seed, const CriterionCallback& cb) {
  using Fn = CriterionResult (*)(std::uint64_t);
  static const std::vector<std::pair<std::string, Fn>> all = {
      {"cobar squares to zero", cobar_square_zero}, {"bar validity", bar_validity},
      {"triple bijection", triple_bijection},      {"Omega B S(n)", omega_b_s},
      {"counit", counit},                          {"nerve equality", nerve_equality},
      {"ordinary nerve", ordinary_nerve},          {"loop space", loop_space},
      {"twisted chains", twisted},                 {"uncurving", uncurving},
      {"fg adjunction", fg_adjoint}};
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    // each criterion draws from its own stream
    std::uint64_t s = seed * 1000003ULL + static_cast<std::uint64_t>(id);
    auto r = guarded(id, all[i].first, [&] { return all[i].second(s); });
    if (cb) cb(r);
    out.push_back(std::move(r));
  }
  return out;
}

json acceptance_json(const std::vector<CriterionResult>& results, std::uint64_t seed) {
  json j;
  j["seed"] = seed;
  j["criteria"] = json::array();
  bool all = true;
  for (auto& r : results) {
    j["criteria"].push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
    all = all && r.pass;
  }
  j["pass"] = all;
  return j;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const CriterionCallback& cb) {
  auto first = run_criteria(seed, cb);
  auto second = run_criteria(seed);
  std::string a = canonical(acceptance_json(first, seed)), b = canonical(acceptance_json(second, seed));
  auto r = result(12, "determinism");
  r.data = {{"bytes", a.size()}};
  finish(r, a == b,
         a == b ? "two runs with seed " + std::to_string(seed) + " gave identical output (" + std::to_string(a.size()) + " bytes)"
                : "two runs with the same seed differ");
  if (cb) cb(r);
  first.push_back(r);
  return first;
}

std::string criterion_line(const CriterionResult& r) {
  return std::string(r.pass ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + ": " + r.name + " (" +
         r.detail + ")";
}

}  // namespace koszul
