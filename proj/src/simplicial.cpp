#include "koszul/simplicial.hpp"

#include <algorithm>

namespace koszul {

void FiniteSimplicialSet::reindex() {
  index_.clear();
  for (u32 i = 0; i < simplices.size(); ++i)
    if (!index_.emplace(simplices[i].label, i).second)
      throw InvalidInput("duplicate simplex label '" + simplices[i].label + "'");
}

std::optional<u32> FiniteSimplicialSet::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

u32 FiniteSimplicialSet::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw InvalidInput("unknown simplex '" + label + "'");
  return it->second;
}

std::vector<u32> FiniteSimplicialSet::vertices() const {
  std::vector<u32> v;
  for (u32 i = 0; i < simplices.size(); ++i)
    if (simplices[i].dim == 0) v.push_back(i);
  return v;
}

int FiniteSimplicialSet::top_dimension() const {
  int n = -1;
  for (auto& s : simplices) n = std::max(n, s.dim);
  return n;
}

Form to_form(const FiniteSimplicialSet& K, const DegenerateForm& x) {
  if (x.base >= K.simplices.size()) throw InvalidInput("degenerate form with unknown base");
  int m = K.dim(x);
  for (std::size_t k = 0; k < x.word.size(); ++k) {
    if (x.word[k] < 0 || x.word[k] >= m) throw InvalidInput("degeneracy index out of range");
    if (k > 0 && x.word[k] >= x.word[k - 1]) throw InvalidInput("degeneracy word not strictly decreasing");
  }
  Form f{x.base, std::vector<int>(m + 1, 0)};
  for (int p = 0; p < m; ++p) {
    bool rep = std::find(x.word.begin(), x.word.end(), p) != x.word.end();
    f.surj[p + 1] = f.surj[p] + (rep ? 0 : 1);
  }
  return f;
}

DegenerateForm to_degenerate(const Form& x) {
  DegenerateForm d{x.base, {}};
  for (int p = static_cast<int>(x.surj.size()) - 2; p >= 0; --p)
    if (x.surj[p] == x.surj[p + 1]) d.word.push_back(p);
  return d;
}

bool is_degenerate(const Form& x) {
  for (std::size_t p = 0; p + 1 < x.surj.size(); ++p)
    if (x.surj[p] == x.surj[p + 1]) return true;
  return false;
}

Form nondegenerate(const FiniteSimplicialSet& K, u32 i) {
  Form f{i, {}};
  for (int k = 0; k <= K.simplices[i].dim; ++k) f.surj.push_back(k);
  return f;
}

namespace {

// x restricted along an injection delta: [k] -> [dim x], x nondegenerate
Form inject(const FiniteSimplicialSet& K, u32 x, const std::vector<int>& delta) {
  int n = K.simplices[x].dim;
  if (static_cast<int>(delta.size()) == n + 1) return nondegenerate(K, x);
  int v = n;
  for (int k = static_cast<int>(delta.size()) - 1; k >= 0 && delta[k] == v; --k) --v;
  // v is the largest value not hit
  std::vector<int> rest;
  for (int y : delta) rest.push_back(y > v ? y - 1 : y);
  const auto& fc = K.simplices[x].faces;
  if (v >= static_cast<int>(fc.size())) throw InvalidInput("missing face of '" + K.simplices[x].label + "'");
  return act(K, to_form(K, fc[v]), rest);
}

}  // namespace

Form act(const FiniteSimplicialSet& K, const Form& x, const std::vector<int>& alpha) {
  std::vector<int> c;
  for (int a : alpha) {
    if (a < 0 || a >= static_cast<int>(x.surj.size())) throw InvalidInput("simplicial operator out of range");
    c.push_back(x.surj[a]);
  }
  std::vector<int> image = c;
  image.erase(std::unique(image.begin(), image.end()), image.end());
  std::vector<int> eps;
  for (int v : c) eps.push_back(static_cast<int>(std::lower_bound(image.begin(), image.end(), v) - image.begin()));
  Form y = inject(K, x.base, image);
  Form out{y.base, {}};
  for (int e : eps) out.surj.push_back(y.surj[e]);
  return out;
}

Form face(const FiniteSimplicialSet& K, const Form& x, int i) {
  std::vector<int> d;
  int m = static_cast<int>(x.surj.size()) - 1;
  for (int k = 0; k <= m; ++k)
    if (k != i) d.push_back(k);
  return act(K, x, d);
}

u32 vertex(const FiniteSimplicialSet& K, const Form& x, int k) { return act(K, x, {k}).base; }

Report validate_sset(const FiniteSimplicialSet& K) {
  Report r;
  r.subject = "simplicial set";
  for (auto& s : K.simplices) {
    if (s.dim < 0) r.fail("negative dimension", s.label);
    if (s.dim == 0 && !s.faces.empty()) r.fail("vertex with faces", s.label);
    if (s.dim > 0 && static_cast<int>(s.faces.size()) != s.dim + 1) r.fail("wrong number of faces", s.label);
    for (std::size_t i = 0; i < s.faces.size(); ++i) {
      auto& f = s.faces[i];
      if (f.base >= K.simplices.size()) {
        r.fail("face with unknown base", s.label);
        continue;
      }
      if (K.dim(f) != s.dim - 1) r.fail("face of wrong dimension", s.label + " d" + std::to_string(i));
      for (std::size_t k = 0; k < f.word.size(); ++k)
        if (f.word[k] < 0 || f.word[k] >= K.dim(f) || (k > 0 && f.word[k] >= f.word[k - 1]))
          r.fail("degeneracy word not in normal form", s.label + " d" + std::to_string(i));
    }
  }
  if (!r.ok()) return r;
  for (u32 x = 0; x < K.simplices.size(); ++x) {
    int n = K.simplices[x].dim;
    if (n < 2) continue;
    Form fx = nondegenerate(K, x);
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i) {
        Form a = face(K, face(K, fx, j), i);
        Form b = face(K, face(K, fx, i), j - 1);
        if (a != b)
          r.fail("d_i d_j != d_{j-1} d_i", K.simplices[x].label + " i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
  }
  return r;
}

// ---- fixtures ----

namespace {

std::string subset_label(const std::vector<int>& s) {
  std::string l;
  bool wide = false;
  for (int v : s) wide |= v > 9;
  for (std::size_t k = 0; k < s.size(); ++k) l += (wide && k ? "." : "") + std::to_string(s[k]);
  return l;
}

FiniteSimplicialSet subsets(int n, bool include_top, const std::vector<int>& cls) {
  FiniteSimplicialSet K;
  std::vector<std::vector<int>> all;
  for (int mask = 1; mask < (1 << (n + 1)); ++mask) {
    std::vector<int> s;
    for (int v = 0; v <= n; ++v)
      if (mask >> v & 1) s.push_back(v);
    if (!include_top && static_cast<int>(s.size()) == n + 1) continue;
    all.push_back(s);
  }
  std::sort(all.begin(), all.end(), [](auto& a, auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::map<std::vector<int>, u32> where;
  for (auto& s : all) {
    if (s.size() == 1 && cls[s[0]] != s[0]) continue;
    NondegenerateSimplex x;
    x.label = subset_label(s);
    x.dim = static_cast<int>(s.size()) - 1;
    if (x.dim > 0)
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto t = s;
        t.erase(t.begin() + i);
        if (t.size() == 1) t[0] = cls[t[0]];
        x.faces.push_back({where.at(t), {}});
      }
    where[s] = static_cast<u32>(K.simplices.size());
    K.simplices.push_back(std::move(x));
  }
  K.reindex();
  return K;
}

std::vector<int> identity_classes(int n) {
  std::vector<int> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = i;
  return c;
}

}  // namespace

FiniteSimplicialSet standard_simplex(int n) { return subsets(n, true, identity_classes(n)); }

FiniteSimplicialSet simplex_boundary(int n) { return subsets(n, false, identity_classes(n)); }

FiniteSimplicialSet simplex_quotient(int n, const std::vector<std::vector<int>>& identify) {
  auto cls = identity_classes(n);
  for (auto& group : identify) {
    int rep = *std::min_element(group.begin(), group.end());
    for (int v : group) cls[v] = rep;
  }
  return subsets(n, true, cls);
}

FiniteSimplicialSet sphere(int n) {
  if (n < 1) throw InvalidInput("sphere dimension must be >= 1");
  FiniteSimplicialSet K;
  K.simplices.push_back({"p", 0, {}});
  NondegenerateSimplex s{"s", n, {}};
  std::vector<int> word;
  for (int j = n - 2; j >= 0; --j) word.push_back(j);
  for (int i = 0; i <= n; ++i) s.faces.push_back({0, word});
  K.simplices.push_back(std::move(s));
  K.reindex();
  return K;
}

FiniteSimplicialSet long_edge() {
  FiniteSimplicialSet K;
  K.simplices.push_back({"x", 0, {}});
  K.simplices.push_back({"y", 0, {}});
  K.simplices.push_back({"u", 1, {{1, {}}, {0, {}}}});
  K.simplices.push_back({"w", 1, {{0, {}}, {1, {}}}});
  K.simplices.push_back({"t", 2, {{3, {}}, {0, {0}}, {2, {}}}});
  K.reindex();
  return K;
}

// ---- chains ----

PointedCoalgebra normalized_chains(const FiniteSimplicialSet& K, Field f) {
  PointedCoalgebra C;
  C.field = f;
  std::map<u32, u32> obj, cell;
  for (u32 i = 0; i < K.simplices.size(); ++i)
    if (K.simplices[i].dim == 0) {
      obj[i] = static_cast<u32>(C.objects.size());
      C.objects.push_back(K.simplices[i].label);
    }
  for (u32 i = 0; i < K.simplices.size(); ++i) {
    const auto& s = K.simplices[i];
    if (s.dim == 0) continue;
    Form x = nondegenerate(K, i);
    cell[i] = static_cast<u32>(C.cells.size());
    C.cells.push_back({s.label, obj.at(vertex(K, x, 0)), obj.at(vertex(K, x, s.dim)), -s.dim});
  }
  C.resize();
  C.reindex();
  for (auto& [i, c] : cell) {
    int n = K.simplices[i].dim;
    Form x = nondegenerate(K, i);
    for (int k = 0; k <= n; ++k) {
      Form y = face(K, x, k);
      if (is_degenerate(y)) continue;
      Scalar sg = Scalar::sign(f, k);
      if (n == 1)
        C.d_coradical[c].add(obj.at(y.base), sg);
      else
        C.d[c].add(cell.at(y.base), sg);
    }
    for (int k = 1; k < n; ++k) {
      std::vector<int> front, back;
      for (int p = 0; p <= k; ++p) front.push_back(p);
      for (int p = k; p <= n; ++p) back.push_back(p);
      Form a = act(K, x, front), b = act(K, x, back);
      if (is_degenerate(a) || is_degenerate(b)) continue;
      C.coproduct[c].push_back({cell.at(a.base), cell.at(b.base), Scalar::one(f)});
    }
    std::sort(C.coproduct[c].begin(), C.coproduct[c].end(),
              [](const CoTerm& p, const CoTerm& q) { return std::tie(p.left, p.right) < std::tie(q.left, q.right); });
  }
  return C;
}

CurvedAlgebra cochain_algebra(const FiniteSimplicialSet& K, Field f) { return dualize(normalized_chains(K, f)); }

Vec constant_cochain(const FiniteSimplicialSet& K, const CurvedAlgebra& A) {
  (void)K;
  Vec e(A.field);
  for (u32 i = 0; i < A.basis.size(); ++i)
    if (A.basis[i].degree == 1) e.add(i, Scalar::one(A.field));
  return e;
}

CurvedAlgebra twisted_cochain_algebra(const FiniteSimplicialSet& K, Field f) {
  CurvedAlgebra A = cochain_algebra(K, f);
  Vec e = constant_cochain(K, A);
  CurvedAlgebra T = A;
  for (u32 i = 0; i < A.basis.size(); ++i) {
    Vec x = A.e(i);
    Vec d = A.diff(x) - A.mul(e, x);
    d.add(A.mul(x, e), Scalar::sign(f, A.basis[i].degree));
    T.d[i] = std::move(d);
  }
  T.curvature = A.mul(e, e) - A.diff(e);
  return T;
}

PointedCoalgebra twisted_chains(const FiniteSimplicialSet& K, Field f) {
  return codualize(twisted_cochain_algebra(K, f));
}

namespace {

// the plain cochains: d does not respect the splitting, so check the dg
// algebra laws on all pairs instead of by component
Report validate_plain_cochains(const CurvedAlgebra& A) {
  Report r;
  r.subject = "cochains";
  check_unit(A, r);
  check_associativity(A, r);
  for (u32 a = 0; a < A.basis.size(); ++a) {
    if (!A.diff(A.d[a]).empty()) r.fail("d^2 != 0", A.basis[a].label);
    for (u32 b = 0; b < A.basis.size(); ++b) {
      Vec lhs = A.diff(A.mul(A.e(a), A.e(b)));
      Vec rhs = A.mul(A.d[a], A.e(b));
      rhs.add(A.mul(A.e(a), A.d[b]), Scalar::sign(A.field, A.basis[a].degree));
      if (lhs != rhs) r.fail("Leibniz", A.basis[a].label + "," + A.basis[b].label);
    }
  }
  return r;
}

}  // namespace

Report twisted_isomorphism_check(const FiniteSimplicialSet& K, Field f) {
  Report r;
  r.subject = "twisted chains";
  CurvedAlgebra A = cochain_algebra(K, f);
  CurvedAlgebra T = twisted_cochain_algebra(K, f);
  r.merge(validate_plain_cochains(A), "cochains: ");
  r.merge(validate_curved_algebra(T), "twisted cochains: ");
  PointedCoalgebra C = codualize(T);
  r.merge(validate_pointed_curved_coalgebra(C), "twisted chains: ");
  if (!r.ok()) return r;
  Vec e = constant_cochain(K, A);
  AlgebraMorphism minus = identity_morphism(T), plus = identity_morphism(A);
  minus.b = e.scaled(-Scalar::one(f));
  plus.b = e;
  r.merge(validate_morphism(T, A, minus, false), "(id,-e): ");
  r.merge(validate_morphism(A, T, plus, false), "(id,e): ");
  if (!same_morphism(compose(A, minus, plus), identity_morphism(A))) r.fail("(id,-e)(id,e) != id", "");
  if (!same_morphism(compose(T, plus, minus), identity_morphism(T))) r.fail("(id,e)(id,-e) != id", "");
  return r;
}

Report subset_formula_check(const FiniteSimplicialSet& K, Field f) {
  Report r;
  r.subject = "twisted differential vs subset formula";
  PointedCoalgebra C = twisted_chains(K, f);
  for (u32 i = 0; i < K.simplices.size(); ++i) {
    int n = K.simplices[i].dim;
    if (n < 1) continue;
    Form x = nondegenerate(K, i);
    if (is_degenerate(act(K, x, {0, 1})) || is_degenerate(act(K, x, {n - 1, n}))) continue;
    Vec expect(f);
    for (int k = 1; k < n; ++k) {
      Form y = face(K, x, k);
      if (!is_degenerate(y)) expect.add(C.index(K.simplices[y.base].label), Scalar::sign(f, k));
    }
    u32 c = C.index(K.simplices[i].label);
    if (C.d[c] != expect || !C.d_coradical[c].empty()) r.fail("d~ differs from sum (-1)^i d_i", K.simplices[i].label);
  }
  return r;
}

// ---- maps ----

namespace {
Form apply_map(const FiniteSimplicialSet& L, const SimplicialMap& g, const Form& x) {
  return act(L, g.image[x.base], x.surj);
}
}  // namespace

Report validate_map(const FiniteSimplicialSet& K, const FiniteSimplicialSet& L, const SimplicialMap& g) {
  Report r;
  r.subject = "simplicial map";
  if (g.image.size() != K.simplices.size()) {
    r.fail("shape", "image size");
    return r;
  }
  for (u32 x = 0; x < K.simplices.size(); ++x) {
    const Form& y = g.image[x];
    if (y.base >= L.simplices.size() || y.surj.empty() || y.surj.back() != L.simplices[y.base].dim ||
        static_cast<int>(y.surj.size()) != K.simplices[x].dim + 1) {
      r.fail("image of wrong dimension", K.simplices[x].label);
      continue;
    }
  }
  if (!r.ok()) return r;
  for (u32 x = 0; x < K.simplices.size(); ++x) {
    const auto& s = K.simplices[x];
    for (int i = 0; i < static_cast<int>(s.faces.size()); ++i) {
      Form lhs = apply_map(L, g, to_form(K, s.faces[i]));
      Form rhs = face(L, g.image[x], i);
      if (lhs != rhs) r.fail("g d_i != d_i g", s.label + " d" + std::to_string(i));
    }
  }
  return r;
}

SimplicialMap compose(const FiniteSimplicialSet& K, const FiniteSimplicialSet& L, const FiniteSimplicialSet& M,
                      const SimplicialMap& g, const SimplicialMap& f) {
  (void)K;
  (void)L;
  SimplicialMap h;
  for (auto& y : f.image) h.image.push_back(apply_map(M, g, y));
  return h;
}

SimplicialMap simplex_map(int m, int n, const std::vector<int>& alpha) {
  FiniteSimplicialSet Km = standard_simplex(m), Kn = standard_simplex(n);
  if (static_cast<int>(alpha.size()) != m + 1) throw InvalidInput("alpha has wrong length");
  for (int k = 0; k <= m; ++k)
    if (alpha[k] < 0 || alpha[k] > n || (k && alpha[k] < alpha[k - 1])) throw InvalidInput("alpha not monotone");
  SimplicialMap g;
  for (auto& s : Km.simplices) {
    std::vector<int> verts;
    for (char ch : s.label) verts.push_back(alpha[ch - '0']);
    // the label digits are the vertex set for m <= 9
    std::vector<int> image = verts;
    image.erase(std::unique(image.begin(), image.end()), image.end());
    Form y{Kn.index(subset_label(image)), {}};
    for (int v : verts) y.surj.push_back(static_cast<int>(std::lower_bound(image.begin(), image.end(), v) - image.begin()));
    g.image.push_back(std::move(y));
  }
  return g;
}

CoalgebraMorphism chains_on_map(const FiniteSimplicialSet& K, const FiniteSimplicialSet& L, const SimplicialMap& g,
                                Field f) {
  Report v = validate_map(K, L, g);
  if (!v.ok()) throw NotSimplicial(v.failures.front().check + " [" + v.failures.front().witness + "]");
  PointedCoalgebra CK = twisted_chains(K, f), CL = twisted_chains(L, f);
  CoalgebraMorphism m;
  for (auto& o : CK.objects) m.object_map.push_back(CL.object(L.simplices[g.image[K.index(o)].base].label));
  for (auto& c : CK.cells) {
    const Form& y = g.image[K.index(c.label)];
    Vec v(f);
    Scalar a = Scalar::zero(f);
    if (!is_degenerate(y))
      v.add(CL.index(L.simplices[y.base].label), Scalar::one(f));
    else if (c.degree == -1)
      a = Scalar::one(f);
    m.f.push_back(std::move(v));
    m.a.push_back(a);
  }
  return m;
}

}  // namespace koszul
