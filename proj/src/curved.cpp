#include "koszul/curved.hpp"

#include <algorithm>

namespace koszul {

void PointedCoalgebra::resize() {
  std::size_t n = cells.size();
  coproduct.resize(n);
  d.resize(n, Vec(field));
  d_coradical.resize(n, Vec(field));
  curvature.resize(n, Scalar::zero(field));
}

void PointedCoalgebra::reindex() {
  resize();
  index_.clear();
  object_index_.clear();
  for (u32 i = 0; i < objects.size(); ++i)
    if (!object_index_.emplace(objects[i], i).second) throw InvalidInput("duplicate object '" + objects[i] + "'");
  for (u32 i = 0; i < cells.size(); ++i) {
    if (object_index_.count(cells[i].label)) throw InvalidInput("cell label clashes with object '" + cells[i].label + "'");
    if (!index_.emplace(cells[i].label, i).second) throw InvalidInput("duplicate cell label '" + cells[i].label + "'");
  }
}

std::optional<u32> PointedCoalgebra::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}
u32 PointedCoalgebra::index(const std::string& label) const {
  auto i = find(label);
  if (!i) throw InvalidInput("unknown cell '" + label + "'");
  return *i;
}
std::optional<u32> PointedCoalgebra::find_object(const std::string& label) const {
  auto it = object_index_.find(label);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}
u32 PointedCoalgebra::object(const std::string& label) const {
  auto i = find_object(label);
  if (!i) throw UnknownObject("unknown object '" + label + "'");
  return *i;
}

bool PointedCoalgebra::split() const {
  return std::all_of(d_coradical.begin(), d_coradical.end(), [](const Vec& v) { return v.empty(); });
}
bool PointedCoalgebra::curved() const {
  return std::any_of(curvature.begin(), curvature.end(), [](const Scalar& s) { return !s.is_zero(); });
}

std::map<std::vector<u32>, Scalar> PointedCoalgebra::iterated(u32 cell, int k) const {
  std::map<std::vector<u32>, Scalar> cur;
  cur[{cell}] = Scalar::one(field);
  for (int step = 1; step < k; ++step) {
    std::map<std::vector<u32>, Scalar> next;
    for (auto& [t, c] : cur)
      for (auto& term : coproduct[t.front()]) {
        std::vector<u32> n{term.left, term.right};
        n.insert(n.end(), t.begin() + 1, t.end());
        auto& slot = next.try_emplace(n, Scalar::zero(field)).first->second;
        slot += c * term.coeff;
      }
    cur.clear();
    for (auto& [t, c] : next)
      if (!c.is_zero()) cur.emplace(t, c);
    if (cur.empty()) break;
  }
  return cur;
}

int PointedCoalgebra::conilpotence_degree() const {
  int best = 0;
  for (u32 c = 0; c < cells.size(); ++c) {
    int k = 1;
    while (!iterated(c, k + 1).empty()) {
      ++k;
      if (k > static_cast<int>(cells.size()) + 2) break;
    }
    best = std::max(best, k);
  }
  return best;
}

Report validate_curved_algebra(const CurvedAlgebra& A) {
  Report r;
  r.subject = "curved algebra";
  check_components(A, r);
  for (auto& [i, c] : A.curvature) {
    const Cell& x = A.basis[i];
    if (x.degree != 2 || x.source != x.target) r.fail("curvature term outside End^2", x.label);
  }
  if (!r.ok()) return r;
  check_unit(A, r);
  check_associativity(A, r);
  check_leibniz(A, r);
  if (!r.ok()) return r;
  // curvature laws
  Report laws;
  if (!A.diff(A.curvature).empty()) laws.fail("d(h) != 0", show(A, A.diff(A.curvature)));
  for (u32 i = 0; i < A.basis.size(); ++i) {
    const Cell& c = A.basis[i];
    if (A.is_cut(c.source, c.target, c.degree + 1)) continue;
    Vec lhs = A.diff(A.d[i]);
    Vec rhs = A.mul(A.curvature, A.e(i)) - A.mul(A.e(i), A.curvature);
    if (lhs != rhs) laws.fail("d^2 != [h,-]", c.label);
  }
  bool via_h = Uncurved(A, 2).generators_square_zero();
  r.merge(laws);
  if (via_h != laws.ok()) r.fail("uncurving cross-check disagrees", via_h ? "H A is dg" : "H A not dg");
  return r;
}

Report validate_pointed_curved_coalgebra(const PointedCoalgebra& C, bool require_split) {
  Report r;
  r.subject = "pointed curved coalgebra";
  u32 n = static_cast<u32>(C.cells.size());
  if (C.coproduct.size() != n || C.d.size() != n || C.curvature.size() != n || C.d_coradical.size() != n) {
    r.fail("table sizes", std::to_string(n));
    return r;
  }
  for (u32 i = 0; i < n; ++i) {
    const Cell& c = C.cells[i];
    if (c.source >= C.objects.size() || c.target >= C.objects.size()) {
      r.fail("cell in unknown component", c.label);
      continue;
    }
    for (auto& t : C.coproduct[i]) {
      const Cell& a = C.cells[t.left];
      const Cell& b = C.cells[t.right];
      if (a.source != c.source || a.target != b.source || b.target != c.target || a.degree + b.degree != c.degree)
        r.fail("coproduct leaves component or degree", c.label + " -> " + a.label + "⊗" + b.label);
    }
    for (auto& [j, x] : C.d[i]) {
      const Cell& o = C.cells[j];
      if (o.source != c.source || o.target != c.target || o.degree != c.degree + 1)
        r.fail("d leaves component or degree", c.label + " -> " + o.label);
    }
    for (auto& [s, x] : C.d_coradical[i]) {
      if (require_split) r.fail("splitting not compatible with d", c.label + " -> " + C.objects[s]);
      if ((s != c.source && s != c.target) || c.degree != -1)
        r.fail("d into coradical outside endpoints", c.label + " -> " + C.objects[s]);
    }
    if (!C.curvature[i].is_zero() && (c.source != c.target || c.degree != -2))
      r.fail("curvature outside C̄(s,s) in degree -2", c.label);
  }
  if (!r.ok()) return r;
  // reduced coassociativity, directly
  for (u32 i = 0; i < n; ++i) {
    std::map<std::vector<u32>, Scalar> lhs, rhs;
    for (auto& t : C.coproduct[i]) {
      for (auto& u : C.coproduct[t.left]) {
        auto& s = lhs.try_emplace({u.left, u.right, t.right}, Scalar::zero(C.field)).first->second;
        s += t.coeff * u.coeff;
      }
      for (auto& u : C.coproduct[t.right]) {
        auto& s = rhs.try_emplace({t.left, u.left, u.right}, Scalar::zero(C.field)).first->second;
        s += t.coeff * u.coeff;
      }
    }
    std::erase_if(lhs, [](auto& kv) { return kv.second.is_zero(); });
    std::erase_if(rhs, [](auto& kv) { return kv.second.is_zero(); });
    if (lhs != rhs) r.fail("coassociativity", C.cells[i].label);
  }
  for (u32 i = 0; i < n; ++i)
    if (!C.iterated(i, static_cast<int>(n) + 2).empty()) r.fail("not conilpotent", C.cells[i].label);
  if (!r.ok()) return r;
  CurvedAlgebra A = dualize(C);
  r.merge(validate_curved_algebra(A), "dual: ");
  return r;
}

CurvedAlgebra dualize(const PointedCoalgebra& C) {
  CurvedAlgebra A;
  A.field = C.field;
  A.objects = C.objects;
  u32 no = static_cast<u32>(C.objects.size());
  for (u32 s = 0; s < no; ++s) A.basis.push_back({C.objects[s], s, s, 0});
  for (auto& c : C.cells) A.basis.push_back({c.label, c.source, c.target, -c.degree});
  A.reindex();
  Field f = C.field;
  Scalar one = Scalar::one(f);
  A.unit = Vec(f);
  for (u32 s = 0; s < no; ++s) {
    A.unit.add(s, one);
    A.product[{s, s}] = Vec(f, s, one);
  }
  for (u32 i = 0; i < C.cells.size(); ++i) {
    u32 k = no + i;
    A.product[{C.cells[i].source, k}] = Vec(f, k, one);
    A.product[{k, C.cells[i].target}] = Vec(f, k, one);
  }
  for (u32 i = 0; i < C.cells.size(); ++i)
    for (auto& t : C.coproduct[i]) {
      auto& slot = A.product.try_emplace({no + t.left, no + t.right}, Vec(f)).first->second;
      slot.add(no + i, t.coeff);
    }
  std::erase_if(A.product, [](auto& kv) { return kv.second.empty(); });
  A.d.assign(A.basis.size(), Vec(f));
  for (u32 i = 0; i < C.cells.size(); ++i) {
    for (auto& [j, c] : C.d[i]) A.d[no + j].add(no + i, c);
    for (auto& [s, c] : C.d_coradical[i]) A.d[s].add(no + i, c);
  }
  A.curvature = Vec(f);
  for (u32 i = 0; i < C.cells.size(); ++i) A.curvature.add(no + i, C.curvature[i]);
  return A;
}

PointedCoalgebra codualize(const CurvedAlgebra& A) {
  PointedCoalgebra C;
  C.field = A.field;
  C.objects = A.objects;
  Field f = A.field;
  std::vector<std::optional<u32>> idem(A.objects.size());
  for (auto& [i, c] : A.unit) {
    const Cell& x = A.basis[i];
    if (!c.is_one() || x.source != x.target || idem[x.source])
      throw InvalidInput("unit is not a sum of basis idempotents");
    idem[x.source] = i;
  }
  std::vector<std::optional<u32>> cell_of(A.basis.size());
  std::vector<bool> is_idem(A.basis.size(), false);
  for (u32 s = 0; s < idem.size(); ++s) {
    if (!idem[s]) throw InvalidInput("object '" + A.objects[s] + "' has no idempotent");
    is_idem[*idem[s]] = true;
    if (A.basis[*idem[s]].label != A.objects[s])
      throw InvalidInput("idempotent label must equal its object label");
  }
  for (u32 i = 0; i < A.basis.size(); ++i) {
    if (is_idem[i]) continue;
    cell_of[i] = static_cast<u32>(C.cells.size());
    const Cell& x = A.basis[i];
    C.cells.push_back({x.label, x.source, x.target, -x.degree});
  }
  C.reindex();
  for (auto& [ab, v] : A.product) {
    if (is_idem[ab.first] || is_idem[ab.second]) continue;
    for (auto& [c, coef] : v) {
      if (!cell_of[c]) throw InvalidInput("product of reduced elements hits an idempotent");
      C.coproduct[*cell_of[c]].push_back({*cell_of[ab.first], *cell_of[ab.second], coef});
    }
  }
  for (auto& terms : C.coproduct)
    std::sort(terms.begin(), terms.end(), [](const CoTerm& x, const CoTerm& y) {
      return std::tie(x.left, x.right) < std::tie(y.left, y.right);
    });
  for (u32 a = 0; a < A.basis.size(); ++a)
    for (auto& [c, coef] : A.d[a]) {
      if (!cell_of[c]) throw InvalidInput("differential hits an idempotent");
      if (is_idem[a])
        C.d_coradical[*cell_of[c]].add(A.basis[a].source, coef);
      else
        C.d[*cell_of[c]].add(*cell_of[a], coef);
    }
  for (auto& [c, coef] : A.curvature) {
    if (!cell_of[c]) throw InvalidInput("curvature on an idempotent");
    C.curvature[*cell_of[c]] = coef;
  }
  (void)f;
  return C;
}

// ---- morphisms, algebra side ----

Report validate_morphism(const CurvedAlgebra& A, const CurvedAlgebra& B, const AlgebraMorphism& m, bool split) {
  Report r;
  r.subject = "curved morphism";
  if (A.field != B.field) throw FieldMismatch("morphism between algebras over different fields");
  if (m.f.size() != A.basis.size()) {
    r.fail("f has wrong size", std::to_string(m.f.size()));
    return r;
  }
  for (u32 i = 0; i < A.basis.size(); ++i)
    for (auto& [j, c] : m.f[i])
      if (B.basis[j].degree != A.basis[i].degree) r.fail("f does not preserve degree", A.basis[i].label);
  for (auto& [j, c] : m.b) {
    if (B.basis[j].degree != 1) r.fail("b not of degree 1", B.basis[j].label);
  }
  if (!r.ok()) return r;
  auto F = [&](const Vec& x) {
    Vec y(B.field);
    for (auto& [i, c] : x) y.add(m.f[i], c);
    return y;
  };
  // b lives in the components the idempotents are sent to
  Vec diag(B.field);
  for (auto& [i, c] : A.unit) diag.add(B.mul(B.mul(m.f[i], m.b), m.f[i]), c);
  if (split && diag != m.b) r.fail("b does not commute with the image of the idempotents", show(B, m.b - diag));
  if (F(A.unit) != B.unit) r.fail("f(1) != 1", show(B, F(A.unit)));
  for (u32 a = 0; a < A.basis.size(); ++a)
    for (u32 b = 0; b < A.basis.size(); ++b) {
      if (A.basis[a].target != A.basis[b].source) continue;
      if (m.f[a].empty() || m.f[b].empty()) {
        auto p = A.mul_basis(a, b);
        if (!p || F(*p).empty()) continue;
      }
      Vec lhs = F(A.mul(A.e(a), A.e(b)));
      Vec rhs = B.mul(m.f[a], m.f[b]);
      if (lhs != rhs) r.fail("f not multiplicative", A.basis[a].label + "," + A.basis[b].label);
    }
  for (u32 i = 0; i < A.basis.size(); ++i) {
    Vec y = m.f[i];
    Vec lhs = F(A.d[i]);
    Vec rhs = B.diff(y) + B.mul(m.b, y);
    rhs.add(B.mul(y, m.b), -Scalar::sign(B.field, A.basis[i].degree));
    if (lhs != rhs) r.fail("condition (1): f(dx) != d f(x) + [b, f(x)]", A.basis[i].label);
  }
  Vec lhs = F(A.curvature);
  Vec rhs = B.curvature + B.diff(m.b) + B.mul(m.b, m.b);
  if (lhs != rhs) r.fail("condition (2): f(h) != h + db + b^2", show(B, lhs - rhs));
  return r;
}

AlgebraMorphism compose(const CurvedAlgebra& B, const AlgebraMorphism& g, const AlgebraMorphism& f) {
  AlgebraMorphism r;
  for (auto& x : f.f) {
    Vec y(B.field);
    for (auto& [i, c] : x) y.add(g.f[i], c);
    r.f.push_back(std::move(y));
  }
  r.b = g.b;
  for (auto& [i, c] : f.b) r.b.add(g.f[i], c);
  return r;
}

AlgebraMorphism identity_morphism(const Algebra& A) {
  AlgebraMorphism m;
  for (u32 i = 0; i < A.basis.size(); ++i) m.f.push_back(A.e(i));
  m.b = Vec(A.field);
  return m;
}

bool same_morphism(const AlgebraMorphism& x, const AlgebraMorphism& y) { return x.f == y.f && x.b == y.b; }

// ---- morphisms, coalgebra side ----

AlgebraMorphism dual_morphism(const PointedCoalgebra& C, const PointedCoalgebra& D, const CoalgebraMorphism& m) {
  Field f = C.field;
  u32 nC = static_cast<u32>(C.objects.size()), nD = static_cast<u32>(D.objects.size());
  AlgebraMorphism r;
  r.f.assign(nD + D.cells.size(), Vec(f));
  for (u32 s = 0; s < nC; ++s) r.f[m.object_map[s]].add(s, Scalar::one(f));
  for (u32 i = 0; i < C.cells.size(); ++i)
    for (auto& [j, c] : m.f[i]) r.f[nD + j].add(nC + i, c);
  r.b = Vec(f);
  for (u32 i = 0; i < C.cells.size(); ++i) r.b.add(nC + i, m.a[i]);
  return r;
}

Report validate_morphism(const PointedCoalgebra& C, const PointedCoalgebra& D, const CoalgebraMorphism& m) {
  return validate_morphism(C, D, dualize(C), dualize(D), m);
}

Report validate_morphism(const PointedCoalgebra& C, const PointedCoalgebra& D, const CurvedAlgebra& Cdual,
                         const CurvedAlgebra& Ddual, const CoalgebraMorphism& m) {
  Report r;
  r.subject = "curved coalgebra morphism";
  if (C.field != D.field) throw FieldMismatch("morphism between coalgebras over different fields");
  if (m.object_map.size() != C.objects.size() || m.f.size() != C.cells.size() || m.a.size() != C.cells.size()) {
    r.fail("shape", "object map / f / a sizes");
    return r;
  }
  for (auto o : m.object_map)
    if (o >= D.objects.size()) {
      r.fail("object map out of range", std::to_string(o));
      return r;
    }
  for (u32 i = 0; i < C.cells.size(); ++i) {
    const Cell& c = C.cells[i];
    u32 s = m.object_map[c.source], t = m.object_map[c.target];
    for (auto& [j, x] : m.f[i]) {
      const Cell& o = D.cells[j];
      if (o.source != s || o.target != t || o.degree != c.degree)
        r.fail("f leaves component or degree", c.label + " -> " + o.label);
    }
    if (!m.a[i].is_zero() && (s != t || c.degree != -1)) r.fail("a outside endomorphism components", c.label);
  }
  if (!r.ok()) return r;
  r.merge(validate_morphism(Ddual, Cdual, dual_morphism(C, D, m)), "dual: ");
  return r;
}

CoalgebraMorphism compose(const CoalgebraMorphism& g, const CoalgebraMorphism& f) {
  CoalgebraMorphism r;
  for (auto o : f.object_map) r.object_map.push_back(g.object_map[o]);
  for (u32 i = 0; i < f.f.size(); ++i) {
    Vec y(f.f[i].field());
    Scalar a = f.a[i];
    for (auto& [j, c] : f.f[i]) {
      y.add(g.f[j], c);
      a += c * g.a[j];
    }
    r.f.push_back(std::move(y));
    r.a.push_back(a);
  }
  return r;
}

CoalgebraMorphism identity_morphism(const PointedCoalgebra& C) {
  CoalgebraMorphism m;
  for (u32 s = 0; s < C.objects.size(); ++s) m.object_map.push_back(s);
  for (u32 i = 0; i < C.cells.size(); ++i) {
    m.f.push_back(Vec(C.field, i, Scalar::one(C.field)));
    m.a.push_back(Scalar::zero(C.field));
  }
  return m;
}

bool same_morphism(const CoalgebraMorphism& x, const CoalgebraMorphism& y) {
  return x.object_map == y.object_map && x.f == y.f && x.a == y.a;
}

// ---- finite field enumeration helpers ----

std::size_t count_span(Field f, std::size_t dim, std::size_t budget) {
  if (f.is_rational()) throw InvalidInput("enumeration needs a finite field");
  std::size_t n = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (n > budget / f.characteristic() + 1) return budget + 1;
    n *= f.characteristic();
  }
  return n;
}

void for_each_vector(Field f, const std::vector<u32>& basis, const std::function<void(const Vec&)>& fn) {
  if (f.is_rational()) throw InvalidInput("enumeration needs a finite field");
  std::uint32_t p = f.characteristic();
  std::vector<std::uint32_t> digits(basis.size(), 0);
  while (true) {
    Vec v(f);
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (digits[k]) v.add(basis[k], Scalar(f, digits[k]));
    fn(v);
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
    if (k == digits.size()) break;
  }
}

Vec mc_curved_defect(const CurvedAlgebra& A, const Vec& a) {
  return A.curvature + A.diff(a) + A.mul(a, a);
}

bool mc_curved_check(const CurvedAlgebra& A, const Vec& a) { return mc_curved_defect(A, a).empty(); }

bool mc_transfer_check(const CurvedAlgebra& A, const Vec& a) {
  Uncurved H(A, 2);
  HVec x = H.from(a) + H.eta();
  HVec defect = H.d(x) + H.mul(x, x);
  return H.truncate(defect).empty();
}

std::vector<Vec> mc_curved_enumerate(const CurvedAlgebra& A, std::size_t budget) {
  std::vector<u32> deg1;
  for (u32 i = 0; i < A.basis.size(); ++i)
    if (A.basis[i].degree == 1) deg1.push_back(i);
  std::size_t n = count_span(A.field, deg1.size(), budget);
  if (n > budget) throw EnumerationTooLarge("MC candidates exceed budget (" + std::to_string(n) + "+)");
  std::vector<Vec> out;
  for_each_vector(A.field, deg1, [&](const Vec& a) {
    if (mc_curved_check(A, a)) out.push_back(a);
  });
  return out;
}

CurvedAlgebra change_curvature(const CurvedAlgebra& A, const Vec& b) {
  CurvedAlgebra B = A;
  for (u32 i = 0; i < A.basis.size(); ++i) {
    Vec y = A.e(i);
    B.d[i] = A.diff(y) - A.mul(b, y);
    B.d[i].add(A.mul(y, b), Scalar::sign(A.field, A.basis[i].degree));
  }
  B.curvature = A.curvature - A.diff(b) + A.mul(b, b);
  return B;
}

}  // namespace koszul
