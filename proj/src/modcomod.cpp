#include "koszul/modcomod.hpp"

#include <algorithm>

namespace koszul {

namespace {

// sign in the a-twist of the corestriction differential, times (-1)^{|c1|}
constexpr int kCorestrictSign = -1;

using Key2 = std::pair<u32, u32>;
using Key3 = std::tuple<u32, u32, u32>;

template <class K>
std::map<K, Scalar> clean(std::map<K, Scalar> m) {
  std::erase_if(m, [](auto& kv) { return kv.second.is_zero(); });
  return m;
}

template <class K>
void bump(std::map<K, Scalar>& m, const K& k, const Scalar& c) {
  auto it = m.find(k);
  if (it == m.end())
    m.emplace(k, c);
  else
    it->second += c;
}

}  // namespace

void Comodule::resize() {
  d.resize(basis.size(), Vec(field));
  coaction.resize(basis.size());
}

std::optional<u32> Comodule::find(const std::string& label) const {
  for (u32 i = 0; i < basis.size(); ++i)
    if (basis[i].label == label) return i;
  return std::nullopt;
}

std::optional<u32> Module::find(const std::string& label) const {
  for (u32 i = 0; i < basis.size(); ++i)
    if (basis[i].label == label) return i;
  return std::nullopt;
}

Vec Module::act(const Algebra& A, const Vec& a, const Vec& m) const {
  (void)A;
  Vec r(field);
  for (auto& [i, c] : a)
    for (auto& [j, k] : m) {
      auto it = action.find({i, j});
      if (it != action.end()) r.add(it->second, c * k);
    }
  return r;
}

// ---- validation ----

Report validate_comodule(const PointedCoalgebra& C, const Comodule& M) {
  Report r;
  r.subject = "comodule";
  Field f = C.field;
  if (M.field != f) throw FieldMismatch("comodule and coalgebra over different fields");
  u32 no = static_cast<u32>(C.objects.size());
  for (u32 m = 0; m < M.basis.size(); ++m) {
    const Elem& e = M.basis[m];
    if (e.object >= no) {
      r.fail("element over unknown object", e.label);
      continue;
    }
    for (auto& [j, c] : M.d[m])
      if (M.basis[j].object != e.object || M.basis[j].degree != e.degree + 1) r.fail("d leaves component or degree", e.label);
    for (auto& t : M.coaction[m]) {
      const Cell& c = C.cells[t.cell];
      if (c.source != e.object || c.target != M.basis[t.elem].object || c.degree + M.basis[t.elem].degree != e.degree)
        r.fail("coaction term in wrong component", e.label + " -> " + c.label + "⊗" + M.basis[t.elem].label);
    }
  }
  if (!r.ok()) return r;
  // full coaction keyed by (coalgebra element, m), objects first
  auto full = [&](u32 m) {
    std::map<Key2, Scalar> out;
    bump(out, Key2{M.basis[m].object, m}, Scalar::one(f));
    for (auto& t : M.coaction[m]) bump(out, Key2{no + t.cell, t.elem}, t.coeff);
    return out;
  };
  for (u32 m = 0; m < M.basis.size(); ++m) {
    // coassociativity of the reduced parts
    std::map<Key3, Scalar> lhs, rhs;
    for (auto& t : M.coaction[m]) {
      for (auto& u : C.coproduct[t.cell]) bump(lhs, Key3{u.left, u.right, t.elem}, t.coeff * u.coeff);
      for (auto& u : M.coaction[t.elem]) bump(rhs, Key3{t.cell, u.cell, u.elem}, t.coeff * u.coeff);
    }
    if (clean(lhs) != clean(rhs)) r.fail("coassociativity", M.basis[m].label);
    // rho d = (d (x) 1 + 1 (x) d) rho
    std::map<Key2, Scalar> a, b;
    for (auto& [j, c] : M.d[m])
      for (auto& [k, v] : full(j)) bump(a, k, v * c);
    for (auto& [k, v] : full(m)) {
      auto [x, y] = k;
      int deg = x < no ? 0 : C.cells[x - no].degree;
      if (x >= no) {
        for (auto& [z, c] : C.d[x - no]) bump(b, Key2{no + z, y}, v * c);
        for (auto& [z, c] : C.d_coradical[x - no]) bump(b, Key2{z, y}, v * c);
      }
      for (auto& [z, c] : M.d[y]) bump(b, Key2{x, z}, v * c * Scalar::sign(f, deg));
    }
    if (clean(a) != clean(b)) r.fail("coaction does not commute with d", M.basis[m].label);
    // d^2 = h * m
    Vec dd(f);
    for (auto& [j, c] : M.d[m]) dd.add(M.d[j], c);
    Vec hm(f);
    for (auto& t : M.coaction[m]) hm.add(t.elem, C.curvature[t.cell] * t.coeff);
    if (dd != hm) r.fail("d^2 != h*m", M.basis[m].label);
  }
  return r;
}

Report validate_module(const DgCategory& A, const Module& M) {
  Report r;
  r.subject = "module";
  Field f = A.field;
  if (M.field != f) throw FieldMismatch("module and category over different fields");
  for (u32 m = 0; m < M.basis.size(); ++m) {
    const Elem& e = M.basis[m];
    if (e.object >= A.objects.size()) {
      r.fail("element over unknown object", e.label);
      continue;
    }
    for (auto& [j, c] : M.d[m])
      if (M.basis[j].object != e.object || M.basis[j].degree != e.degree + 1) r.fail("d leaves component or degree", e.label);
  }
  for (auto& [am, v] : M.action) {
    const Cell& a = A.basis[am.first];
    const Elem& e = M.basis[am.second];
    if (a.target != e.object) r.fail("action on wrong component", a.label + "." + e.label);
    for (auto& [j, c] : v)
      if (M.basis[j].object != a.source || M.basis[j].degree != a.degree + e.degree)
        r.fail("action lands in wrong component", a.label + "." + e.label);
  }
  if (!r.ok()) return r;
  auto em = [&](u32 m) { return Vec(f, m, Scalar::one(f)); };
  auto dM = [&](const Vec& x) {
    Vec y(f);
    for (auto& [i, c] : x) y.add(M.d[i], c);
    return y;
  };
  for (u32 m = 0; m < M.basis.size(); ++m) {
    u32 t = M.basis[m].object;
    if (A.identity.size() > t && A.identity[t] && M.act(A, A.e(*A.identity[t]), em(m)) != em(m))
      r.fail("id . m != m", M.basis[m].label);
    if (!dM(M.d[m]).empty()) r.fail("d^2 != 0", M.basis[m].label);
  }
  for (u32 a = 0; a < A.basis.size(); ++a)
    for (u32 m = 0; m < M.basis.size(); ++m) {
      if (A.basis[a].target != M.basis[m].object) continue;
      Vec lhs = dM(M.act(A, A.e(a), em(m)));
      Vec rhs = M.act(A, A.d[a], em(m));
      rhs.add(M.act(A, A.e(a), M.d[m]), Scalar::sign(f, A.basis[a].degree));
      if (lhs != rhs) r.fail("Leibniz", A.basis[a].label + "." + M.basis[m].label);
      for (u32 b = 0; b < A.basis.size(); ++b) {
        if (A.basis[b].target != A.basis[a].source) continue;
        Vec l2 = M.act(A, A.mul(A.e(b), A.e(a)), em(m));
        Vec r2 = M.act(A, A.e(b), M.act(A, A.e(a), em(m)));
        if (l2 != r2) r.fail("associativity", A.basis[b].label + "," + A.basis[a].label + "." + M.basis[m].label);
      }
    }
  return r;
}

Comodule point_comodule(const PointedCoalgebra& C, u32 object) {
  Comodule M;
  M.field = C.field;
  M.basis.push_back({C.objects.at(object), object, 0});
  M.resize();
  return M;
}

Module representable(const DgCategory& A, u32 object) {
  Module M;
  M.field = A.field;
  std::map<u32, u32> pos;
  for (u32 i = 0; i < A.basis.size(); ++i)
    if (A.basis[i].target == object) {
      pos[i] = static_cast<u32>(M.basis.size());
      M.basis.push_back({A.basis[i].label, A.basis[i].source, A.basis[i].degree});
    }
  M.d.assign(M.basis.size(), Vec(A.field));
  for (auto& [i, k] : pos)
    for (auto& [j, c] : A.d[i]) M.d[k].add(pos.at(j), c);
  for (u32 a = 0; a < A.basis.size(); ++a)
    for (auto& [i, k] : pos) {
      if (A.basis[a].target != A.basis[i].source) continue;
      Vec v(A.field);
      for (auto& [j, c] : A.mul(A.e(a), A.e(i))) v.add(pos.at(j), c);
      if (!v.empty()) M.action[{a, k}] = v;
    }
  return M;
}

// ---- twisting ----

Module twist_module(const DgCategory& A, const PointedCoalgebra& C, const MCElement& tau, const Comodule& N) {
  Field f = A.field;
  Module P;
  P.field = f;
  std::map<Key2, u32> pos;
  for (u32 n = 0; n < N.basis.size(); ++n) {
    u32 O = tau.object_map.at(N.basis[n].object);
    for (u32 x = 0; x < A.basis.size(); ++x)
      if (A.basis[x].target == O) {
        pos[{x, n}] = static_cast<u32>(P.basis.size());
        P.basis.push_back({A.basis[x].label + "□" + N.basis[n].label, A.basis[x].source,
                           A.basis[x].degree + N.basis[n].degree});
      }
  }
  P.d.assign(P.basis.size(), Vec(f));
  for (auto& [xn, k] : pos) {
    auto [x, n] = xn;
    Scalar sx = Scalar::sign(f, A.basis[x].degree);
    Vec& out = P.d[k];
    for (auto& [y, c] : A.d[x]) out.add(pos.at({y, n}), c);
    for (auto& [m, c] : N.d[n]) out.add(pos.at({x, m}), sx * c);
    for (auto& t : N.coaction[n])
      for (auto& [y, c] : A.mul(A.e(x), tau.xi[t.cell])) out.add(pos.at({y, t.elem}), -sx * t.coeff * c);
  }
  for (u32 a = 0; a < A.basis.size(); ++a)
    for (auto& [xn, k] : pos) {
      auto [x, n] = xn;
      if (A.basis[a].target != A.basis[x].source) continue;
      Vec v(f);
      for (auto& [y, c] : A.mul(A.e(a), A.e(x))) v.add(pos.at({y, n}), c);
      if (!v.empty()) P.action[{a, k}] = v;
    }
  (void)C;
  return P;
}

Comodule twist_comodule(const PointedCoalgebra& C, const DgCategory& A, const MCElement& tau, const Module& M) {
  Field f = C.field;
  u32 no = static_cast<u32>(C.objects.size());
  Comodule Q;
  Q.field = f;
  std::map<Key2, u32> pos;  // (coalgebra element, m)
  auto add = [&](u32 x, u32 m, const std::string& label, u32 obj, int deg) {
    pos[{x, m}] = static_cast<u32>(Q.basis.size());
    Q.basis.push_back({label + "□" + M.basis[m].label, obj, deg + M.basis[m].degree});
  };
  for (u32 u = 0; u < no; ++u)
    for (u32 m = 0; m < M.basis.size(); ++m)
      if (M.basis[m].object == tau.object_map[u]) add(u, m, C.objects[u], u, 0);
  for (u32 c = 0; c < C.cells.size(); ++c)
    for (u32 m = 0; m < M.basis.size(); ++m)
      if (M.basis[m].object == tau.object_map[C.cells[c].target]) add(no + c, m, C.cells[c].label, C.cells[c].source, C.cells[c].degree);
  Q.resize();
  auto em = [&](u32 m) { return Vec(f, m, Scalar::one(f)); };
  for (auto& [xm, k] : pos) {
    auto [x, m] = xm;
    Vec& out = Q.d[k];
    if (x < no) {
      for (auto& [n, c] : M.d[m]) out.add(pos.at({x, n}), c);
      continue;
    }
    u32 c = x - no;
    const Cell& cell = C.cells[c];
    for (auto& [y, v] : C.d[c]) out.add(pos.at({no + y, m}), v);
    for (auto& [u, v] : C.d_coradical[c]) {
      auto it = pos.find({u, m});
      if (it != pos.end()) out.add(it->second, v);
    }
    for (auto& [n, v] : M.d[m]) out.add(pos.at({x, n}), Scalar::sign(f, cell.degree) * v);
    // s (x) c term of the full coproduct
    for (auto& [n, v] : M.act(A, tau.xi[c], em(m))) out.add(pos.at({cell.source, n}), v);
    for (auto& t : C.coproduct[c])
      for (auto& [n, v] : M.act(A, tau.xi[t.right], em(m)))
        out.add(pos.at({no + t.left, n}), Scalar::sign(f, C.cells[t.left].degree) * t.coeff * v);
    Q.coaction[k].push_back({c, pos.at({cell.target, m}), Scalar::one(f)});
    for (auto& t : C.coproduct[c]) Q.coaction[k].push_back({t.left, pos.at({no + t.right, m}), t.coeff});
  }
  return Q;
}

// ---- hom complexes ----

namespace {

struct Graded {
  std::vector<Elem> basis;
  const std::vector<Vec>* d;
};

using Residual = std::function<std::map<Key2, Scalar>(int k, const std::vector<Vec>& F)>;

struct Unknowns {
  std::vector<Key2> pairs;
  std::map<Key2, u32> index;
};

Unknowns unknowns(const std::vector<Elem>& S, const std::vector<Elem>& T, int k) {
  Unknowns u;
  for (u32 i = 0; i < S.size(); ++i)
    for (u32 j = 0; j < T.size(); ++j)
      if (S[i].object == T[j].object && T[j].degree == S[i].degree + k) {
        u.index[{i, j}] = static_cast<u32>(u.pairs.size());
        u.pairs.push_back({i, j});
      }
  return u;
}

std::vector<Vec> as_map(Field f, std::size_t ns, const Unknowns& u, const Vec& coords) {
  std::vector<Vec> F(ns, Vec(f));
  for (auto& [p, c] : coords) F[u.pairs[p].first].add(u.pairs[p].second, c);
  return F;
}

std::optional<Vec> flatten(Field f, const Unknowns& u, const std::vector<Vec>& F) {
  Vec v(f);
  for (u32 i = 0; i < F.size(); ++i)
    for (auto& [j, c] : F[i]) {
      auto it = u.index.find({i, j});
      if (it == u.index.end()) return std::nullopt;
      v.add(it->second, c);
    }
  return v;
}

std::vector<Vec> hom_differential(Field f, const std::vector<Vec>& dS, const std::vector<Vec>& dT, int k,
                                  const std::vector<Vec>& F) {
  std::vector<Vec> out(F.size(), Vec(f));
  for (u32 i = 0; i < F.size(); ++i) {
    for (auto& [j, c] : F[i]) out[i].add(dT[j], c);
    for (auto& [j, c] : dS[i]) out[i].add(F[j], -Scalar::sign(f, k) * c);
  }
  return out;
}

struct BuiltHom {
  HomComplex hom;
  std::map<int, Unknowns> unk;
  std::map<int, std::vector<Vec>> coords;  // kernel basis over unknowns
};

BuiltHom build_hom(Field f, const std::vector<Elem>& S, const std::vector<Vec>& dS, const std::vector<Elem>& T,
                   const std::vector<Vec>& dT, const Residual& residual) {
  BuiltHom B;
  if (S.empty() || T.empty()) {
    auto sp = std::make_shared<const GradedSpace>();
    B.hom.complex = make_complex(sp, LinearMap(sp, sp, 1, f));
    return B;
  }
  int lo = 1 << 30, hi = -(1 << 30);
  for (auto& s : S)
    for (auto& t : T) {
      lo = std::min(lo, t.degree - s.degree);
      hi = std::max(hi, t.degree - s.degree);
    }
  for (int k = lo - 1; k <= hi + 1; ++k) {
    Unknowns u = unknowns(S, T, k);
    std::map<std::pair<Key2, Key2>, u32> rows;
    std::vector<Vec> cols;
    std::map<Key2, u32> row_index;
    for (u32 p = 0; p < u.pairs.size(); ++p) {
      std::vector<Vec> F(S.size(), Vec(f));
      F[u.pairs[p].first].add(u.pairs[p].second, Scalar::one(f));
      Vec col(f);
      for (auto& [key, c] : residual(k, F)) {
        auto it = row_index.try_emplace(key, static_cast<u32>(row_index.size())).first;
        col.add(it->second, c);
      }
      cols.push_back(std::move(col));
    }
    std::vector<u32> order(u.pairs.size());
    for (u32 p = 0; p < order.size(); ++p) order[p] = p;
    KernelRank kr = kernel_of_columns(f, cols, order);
    B.unk[k] = std::move(u);
    B.coords[k] = kr.kernel;
    if (!kr.kernel.empty()) B.hom.degrees.push_back(k);
    for (auto& v : kr.kernel) B.hom.maps[k].push_back(as_map(f, S.size(), B.unk[k], v));
  }
  std::vector<std::string> labels;
  std::vector<int> degs;
  std::map<std::pair<int, std::size_t>, u32> where;
  for (int k : B.hom.degrees)
    for (std::size_t r = 0; r < B.hom.maps[k].size(); ++r) {
      where[{k, r}] = static_cast<u32>(labels.size());
      labels.push_back(std::to_string(k) + ":" + std::to_string(r));
      degs.push_back(k);
    }
  auto sp = std::make_shared<const GradedSpace>(std::move(labels), std::move(degs));
  LinearMap D(sp, sp, 1, f);
  for (int k : B.hom.degrees)
    for (std::size_t r = 0; r < B.hom.maps[k].size(); ++r) {
      auto DF = hom_differential(f, dS, dT, k, B.hom.maps[k][r]);
      auto flat = flatten(f, B.unk[k + 1], DF);
      if (!flat) throw NotAComplex("hom differential leaves the degree");
      if (flat->empty()) continue;
      auto sol = solve_in_span(f, B.coords[k + 1], *flat);
      if (!sol) throw NotAComplex("differential of a map is not a map of the same kind");
      for (auto& [q, c] : *sol) D.columns[where.at({k, r})].add(where.at({k + 1, static_cast<std::size_t>(q)}), c);
    }
  B.hom.complex = make_complex(sp, std::move(D));
  return B;
}

BuiltHom build_module_homs(const DgCategory& A, const Module& P, const Module& M) {
  Field f = A.field;
  u32 np = static_cast<u32>(P.basis.size());
  Residual res = [&](int k, const std::vector<Vec>& F) {
    std::map<Key2, Scalar> out;
    auto applyF = [&](const Vec& x) {
      Vec y(f);
      for (auto& [i, c] : x) y.add(F[i], c);
      return y;
    };
    for (u32 a = 0; a < A.basis.size(); ++a)
      for (u32 p = 0; p < np; ++p) {
        if (A.basis[a].target != P.basis[p].object) continue;
        Vec lhs = applyF(P.act(A, A.e(a), Vec(f, p, Scalar::one(f))));
        lhs.add(M.act(A, A.e(a), F[p]), -Scalar::sign(f, static_cast<long long>(k) * A.basis[a].degree));
        for (auto& [j, c] : lhs) bump(out, Key2{a * np + p, j}, c);
      }
    return clean(out);
  };
  return build_hom(f, P.basis, P.d, M.basis, M.d, res);
}

BuiltHom build_comodule_homs(const PointedCoalgebra& C, const Comodule& N, const Comodule& M) {
  Field f = C.field;
  u32 nm = static_cast<u32>(M.basis.size());
  Residual res = [&](int k, const std::vector<Vec>& F) {
    std::map<Key2, Scalar> out;
    for (u32 n = 0; n < N.basis.size(); ++n) {
      for (auto& [j, c] : F[n])
        for (auto& t : M.coaction[j]) bump(out, Key2{n, t.cell * nm + t.elem}, c * t.coeff);
      for (auto& t : N.coaction[n])
        for (auto& [j, c] : F[t.elem])
          bump(out, Key2{n, t.cell * nm + j},
               -Scalar::sign(f, static_cast<long long>(k) * C.cells[t.cell].degree) * t.coeff * c);
    }
    return clean(out);
  };
  return build_hom(f, N.basis, N.d, M.basis, M.d, res);
}

// checks for a pair of mutually inverse maps between two built hom complexes
void certify(Field f, const BuiltHom& L, const std::vector<Vec>& dLS, const std::vector<Vec>& dLT, const BuiltHom& R,
             const std::vector<Vec>& dRS, const std::vector<Vec>& dRT,
             const std::function<std::vector<Vec>(int, const std::vector<Vec>&)>& theta,
             const std::function<std::vector<Vec>(int, const std::vector<Vec>&)>& theta_inv, AdjunctionCertificate& cert) {
  std::set<int> degs(L.hom.degrees.begin(), L.hom.degrees.end());
  degs.insert(R.hom.degrees.begin(), R.hom.degrees.end());
  for (int k : degs) {
    std::size_t dl = L.hom.maps.count(k) ? L.hom.maps.at(k).size() : 0;
    std::size_t dr = R.hom.maps.count(k) ? R.hom.maps.at(k).size() : 0;
    cert.dims[k] = {dl, dr};
    if (dl != dr) cert.report.fail("hom dimensions differ", "degree " + std::to_string(k));
  }
  auto same = [](const std::vector<Vec>& a, const std::vector<Vec>& b) { return a == b; };
  auto in_span = [&](const BuiltHom& H, int k, const std::vector<Vec>& F) {
    auto uit = H.unk.find(k);
    if (uit == H.unk.end()) {
      for (auto& v : F)
        if (!v.empty()) return false;
      return true;
    }
    auto flat = flatten(f, uit->second, F);
    if (!flat) return false;
    return flat->empty() || solve_in_span(f, H.coords.at(k), *flat).has_value();
  };
  for (auto& [k, maps] : L.hom.maps)
    for (std::size_t r = 0; r < maps.size(); ++r) {
      std::string w = "degree " + std::to_string(k) + " #" + std::to_string(r);
      auto G = theta(k, maps[r]);
      if (!in_span(R, k, G)) cert.report.fail("image is not a map of the right kind", w);
      if (!same(theta_inv(k, G), maps[r])) cert.report.fail("inverse after forward != id", w);
      auto lhs = theta(k + 1, hom_differential(f, dLS, dLT, k, maps[r]));
      auto rhs = hom_differential(f, dRS, dRT, k, G);
      if (!same(lhs, rhs)) cert.report.fail("forward map is not a chain map", w);
    }
  for (auto& [k, maps] : R.hom.maps)
    for (std::size_t r = 0; r < maps.size(); ++r) {
      std::string w = "degree " + std::to_string(k) + " #" + std::to_string(r);
      auto F = theta_inv(k, maps[r]);
      if (!in_span(L, k, F)) cert.report.fail("inverse image is not a map of the right kind", w);
      if (!same(theta(k, F), maps[r])) cert.report.fail("forward after inverse != id", w);
      auto lhs = theta_inv(k + 1, hom_differential(f, dRS, dRT, k, maps[r]));
      auto rhs = hom_differential(f, dLS, dLT, k, F);
      if (!same(lhs, rhs)) cert.report.fail("inverse map is not a chain map", w);
    }
  auto hl = homology_dims(L.hom.complex), hr = homology_dims(R.hom.complex);
  for (int k : degs) cert.homology[k] = {hl.count(k) ? hl[k] : 0, hr.count(k) ? hr[k] : 0};
}

}  // namespace

HomComplex module_homs(const DgCategory& A, const Module& P, const Module& M) {
  return build_module_homs(A, P, M).hom;
}

HomComplex comodule_homs(const PointedCoalgebra& C, const Comodule& N, const Comodule& M) {
  return build_comodule_homs(C, N, M).hom;
}

AdjunctionCertificate fg_adjunction_check(const PointedCoalgebra& C, const DgCategory& A, const MCElement& tau,
                                          const Comodule& N, const Module& M) {
  AdjunctionCertificate cert;
  cert.report.subject = "fg adjunction";
  Field f = A.field;
  u32 no = static_cast<u32>(C.objects.size());
  cert.report.merge(mc_check(C, A, tau), "tau: ");
  cert.report.merge(validate_comodule(C, N), "N: ");
  cert.report.merge(validate_module(A, M), "M: ");
  if (!cert.report.ok()) return cert;
  for (auto o : tau.object_map)
    if (!A.identity[o]) throw NotSplit("twisting needs identities in the target category");
  Module P = twist_module(A, C, tau, N);
  Comodule Q = twist_comodule(C, A, tau, M);
  cert.report.merge(validate_module(A, P), "A box N: ");
  cert.report.merge(validate_comodule(C, Q), "C box M: ");
  if (!cert.report.ok()) return cert;
  BuiltHom L = build_module_homs(A, P, M);
  BuiltHom R = build_comodule_homs(C, N, Q);
  // index tables of the twisted objects
  std::map<Key2, u32> ppos, qpos;
  {
    u32 k = 0;
    for (u32 n = 0; n < N.basis.size(); ++n)
      for (u32 x = 0; x < A.basis.size(); ++x)
        if (A.basis[x].target == tau.object_map[N.basis[n].object]) ppos[{x, n}] = k++;
    k = 0;
    for (u32 u = 0; u < no; ++u)
      for (u32 m = 0; m < M.basis.size(); ++m)
        if (M.basis[m].object == tau.object_map[u]) qpos[{u, m}] = k++;
    for (u32 c = 0; c < C.cells.size(); ++c)
      for (u32 m = 0; m < M.basis.size(); ++m)
        if (M.basis[m].object == tau.object_map[C.cells[c].target]) qpos[{no + c, m}] = k++;
  }
  // F : A box N -> M  |->  K : N -> C box M
  auto theta = [&](int k, const std::vector<Vec>& F) {
    std::vector<Vec> K(N.basis.size(), Vec(f));
    auto G = [&](u32 n) { return F[ppos.at({*A.identity[tau.object_map[N.basis[n].object]], n})]; };
    for (u32 n = 0; n < N.basis.size(); ++n) {
      for (auto& [m, c] : G(n)) K[n].add(qpos.at({N.basis[n].object, m}), c);
      for (auto& t : N.coaction[n])
        for (auto& [m, c] : G(t.elem))
          K[n].add(qpos.at({no + t.cell, m}),
                   Scalar::sign(f, static_cast<long long>(k) * C.cells[t.cell].degree) * t.coeff * c);
    }
    return K;
  };
  std::map<u32, Key2> qkey;
  for (auto& [key, i] : qpos) qkey[i] = key;
  std::map<u32, Key2> pkey;
  for (auto& [key, i] : ppos) pkey[i] = key;
  auto theta_inv = [&](int k, const std::vector<Vec>& K) {
    std::vector<Vec> G(N.basis.size(), Vec(f));
    for (u32 n = 0; n < N.basis.size(); ++n)
      for (auto& [q, c] : K[n]) {
        auto [x, m] = qkey.at(q);
        if (x < no) G[n].add(m, c);
      }
    std::vector<Vec> F(P.basis.size(), Vec(f));
    for (u32 p = 0; p < P.basis.size(); ++p) {
      auto [x, n] = pkey.at(p);
      F[p] = M.act(A, A.e(x), G[n]).scaled(Scalar::sign(f, static_cast<long long>(k) * A.basis[x].degree));
    }
    return F;
  };
  certify(f, L, P.d, M.d, R, N.d, Q.d, theta, theta_inv, cert);
  return cert;
}

// ---- cotensor, restriction, corestriction ----

Cotensor cotensor(const PointedCoalgebra& D, const RightCoaction& X, const Comodule& Y) {
  Field f = D.field;
  Cotensor T;
  std::map<Key2, u32> pos;
  for (u32 x = 0; x < X.basis.size(); ++x)
    for (u32 y = 0; y < Y.basis.size(); ++y)
      if (X.basis[x].object == Y.basis[y].object) {
        pos[{x, y}] = static_cast<u32>(T.pairs.size());
        T.pairs.push_back({x, y});
      }
  std::map<Key3, u32> rows;
  std::vector<Vec> cols;
  for (auto& [x, y] : T.pairs) {
    Vec col(f);
    auto row = [&](const Key3& k) { return rows.try_emplace(k, static_cast<u32>(rows.size())).first->second; };
    for (auto& [x2, cc] : X.coaction[x]) col.add(row(Key3{x2, cc.first, y}), cc.second);
    for (auto& t : Y.coaction[y]) col.add(row(Key3{x, t.cell, t.elem}), -t.coeff);
    cols.push_back(std::move(col));
  }
  std::vector<u32> order(T.pairs.size());
  for (u32 p = 0; p < order.size(); ++p) order[p] = p;
  T.basis = kernel_of_columns(f, cols, order).kernel;
  return T;
}

Comodule restrict_comodule(const PointedCoalgebra& C, const PointedCoalgebra& D, const CoalgebraMorphism& f,
                           const Comodule& M) {
  Field k = C.field;
  Comodule R = M;
  for (auto& e : R.basis) e.object = f.object_map.at(e.object);
  for (u32 m = 0; m < M.basis.size(); ++m) {
    R.coaction[m].clear();
    std::map<Key2, Scalar> acc;
    for (auto& t : M.coaction[m]) {
      for (auto& [dc, c] : f.f[t.cell]) bump(acc, Key2{dc, t.elem}, t.coeff * c);
      if (!f.a[t.cell].is_zero()) R.d[m].add(t.elem, f.a[t.cell] * t.coeff);
    }
    for (auto& [key, c] : clean(acc)) R.coaction[m].push_back({key.first, key.second, c});
  }
  (void)D;
  (void)k;
  return R;
}

namespace {

struct Corestricted {
  Comodule E;
  Cotensor T;
};

Corestricted corestrict_full(const PointedCoalgebra& C, const PointedCoalgebra& D, const CoalgebraMorphism& f,
                             const Comodule& N) {
  Field k = C.field;
  u32 no = static_cast<u32>(C.objects.size());
  RightCoaction X;
  for (u32 u = 0; u < no; ++u) X.basis.push_back({C.objects[u], f.object_map[u], 0});
  for (auto& c : C.cells) X.basis.push_back({c.label, f.object_map[c.target], c.degree});
  X.coaction.resize(X.basis.size());
  for (u32 c = 0; c < C.cells.size(); ++c) {
    auto& out = X.coaction[no + c];
    for (auto& [dc, v] : f.f[c]) out.push_back({C.cells[c].source, {dc, v}});
    for (auto& t : C.coproduct[c])
      for (auto& [dc, v] : f.f[t.right]) out.push_back({no + t.left, {dc, t.coeff * v}});
  }
  Corestricted out;
  out.T = cotensor(D, X, N);
  const auto& pairs = out.T.pairs;
  std::map<Key2, u32> pos;
  for (u32 p = 0; p < pairs.size(); ++p) pos[pairs[p]] = p;
  auto source_of = [&](u32 x) { return x < no ? x : C.cells[x - no].source; };
  auto degree_of = [&](u32 x) { return x < no ? 0 : C.cells[x - no].degree; };
  Comodule& E = out.E;
  E.field = k;
  for (auto& v : out.T.basis) {
    auto [x, y] = pairs[v.begin()->first];
    std::string label = X.basis[x].label + "□" + N.basis[y].label;
    if (v.size() > 1) label = "(" + label + "+" + std::to_string(v.size() - 1) + ")";
    E.basis.push_back({label, source_of(x), degree_of(x) + N.basis[y].degree});
  }
  E.resize();
  auto express = [&](const Vec& amb, const std::string& what) {
    if (amb.empty()) return Vec(k);
    auto sol = solve_in_span(k, out.T.basis, amb);
    if (!sol) throw ComparisonFailure("cotensor not closed under " + what);
    return *sol;
  };
  for (u32 r = 0; r < out.T.basis.size(); ++r) {
    Vec damb(k);
    std::map<u32, Vec> slices;  // cell -> ambient
    for (auto& [p, coef] : out.T.basis[r]) {
      auto [x, y] = pairs[p];
      for (auto& [y2, c] : N.d[y]) damb.add(pos.at({x, y2}), Scalar::sign(k, degree_of(x)) * coef * c);
      if (x < no) continue;
      u32 c = x - no;
      for (auto& [z, v] : C.d[c]) damb.add(pos.at({no + z, y}), coef * v);
      for (auto& [u, v] : C.d_coradical[c]) damb.add(pos.at({u, y}), coef * v);
      Scalar mu = Scalar::sign(k, kCorestrictSign == 1 ? 0 : 1);
      if (!f.a[c].is_zero()) damb.add(pos.at({C.cells[c].source, y}), mu * f.a[c] * coef);
      for (auto& t : C.coproduct[c])
        if (!f.a[t.right].is_zero())
          damb.add(pos.at({no + t.left, y}),
                   mu * Scalar::sign(k, C.cells[t.left].degree) * f.a[t.right] * t.coeff * coef);
      auto& sl = slices.try_emplace(c, Vec(k)).first->second;
      sl.add(pos.at({C.cells[c].target, y}), coef);
      for (auto& t : C.coproduct[c]) slices.try_emplace(t.left, Vec(k)).first->second.add(pos.at({no + t.right, y}), coef * t.coeff);
    }
    E.d[r] = express(damb, "d");
    for (auto& [c, amb] : slices)
      for (auto& [r2, v] : express(amb, "the coaction")) E.coaction[r].push_back({c, r2, v});
  }
  return out;
}

}  // namespace

Comodule corestrict_comodule(const PointedCoalgebra& C, const PointedCoalgebra& D, const CoalgebraMorphism& f,
                             const Comodule& N) {
  return corestrict_full(C, D, f, N).E;
}

AdjunctionCertificate restriction_adjunction_check(const PointedCoalgebra& C, const PointedCoalgebra& D,
                                                   const CoalgebraMorphism& f, const Comodule& M, const Comodule& N) {
  AdjunctionCertificate cert;
  cert.report.subject = "restriction / corestriction adjunction";
  Field k = C.field;
  u32 no = static_cast<u32>(C.objects.size());
  Comodule RM = restrict_comodule(C, D, f, M);
  Corestricted EN = corestrict_full(C, D, f, N);
  cert.report.merge(validate_comodule(D, RM), "R_f M: ");
  cert.report.merge(validate_comodule(C, EN.E), "E_f N: ");
  if (!cert.report.ok()) return cert;
  BuiltHom L = build_comodule_homs(D, RM, N);
  BuiltHom R = build_comodule_homs(C, M, EN.E);
  std::map<Key2, u32> pos;
  for (u32 p = 0; p < EN.T.pairs.size(); ++p) pos[EN.T.pairs[p]] = p;
  auto theta = [&](int deg, const std::vector<Vec>& G) {
    std::vector<Vec> K(M.basis.size(), Vec(k));
    for (u32 m = 0; m < M.basis.size(); ++m) {
      Vec amb(k);
      for (auto& [n, c] : G[m]) {
        auto it = pos.find({M.basis[m].object, n});
        if (it == pos.end()) return std::vector<Vec>(M.basis.size(), Vec(k));
        amb.add(it->second, c);
      }
      for (auto& t : M.coaction[m])
        for (auto& [n, c] : G[t.elem]) {
          auto it = pos.find({no + t.cell, n});
          if (it == pos.end()) continue;
          amb.add(it->second, Scalar::sign(k, static_cast<long long>(deg) * C.cells[t.cell].degree) * t.coeff * c);
        }
      if (amb.empty()) continue;
      auto sol = solve_in_span(k, EN.T.basis, amb);
      if (!sol) throw ComparisonFailure("adjunct map leaves the cotensor");
      K[m] = *sol;
    }
    return K;
  };
  auto theta_inv = [&](int, const std::vector<Vec>& K) {
    std::vector<Vec> G(M.basis.size(), Vec(k));
    for (u32 m = 0; m < M.basis.size(); ++m)
      for (auto& [r, c] : K[m])
        for (auto& [p, v] : EN.T.basis[r]) {
          auto [x, n] = EN.T.pairs[p];
          if (x < no) G[m].add(n, c * v);
        }
    return G;
  };
  certify(k, L, RM.d, N.d, R, M.d, EN.E.d, theta, theta_inv, cert);
  return cert;
}

}  // namespace koszul
