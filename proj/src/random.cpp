#include "koszul/random.hpp"

#include <algorithm>
#include <set>

namespace koszul {

std::size_t pick(Rng& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

Scalar random_scalar(Field f, Rng& rng, bool nonzero) {
  if (f.is_rational()) {
    static const int vals[] = {-2, -1, 0, 1, 2, 3};
    static const int nz[] = {-2, -1, 1, 2, 3};
    return nonzero ? Scalar(f, nz[pick(rng, 5)]) : Scalar(f, vals[pick(rng, 6)]);
  }
  std::int64_t p = f.characteristic();
  if (nonzero) return Scalar(f, 1 + static_cast<std::int64_t>(pick(rng, p - 1)));
  return Scalar(f, static_cast<std::int64_t>(pick(rng, p)));
}

Vec apply_change(const std::vector<Vec>& M, const Vec& v) {
  Vec r(v.field());
  for (auto& [i, c] : v) r.add(M.at(i), c);
  return r;
}

BasisChange random_basis_change(Field f, Rng& rng, const std::vector<std::string>& blocks,
                                const std::vector<bool>& frozen) {
  u32 n = static_cast<u32>(blocks.size());
  std::vector<std::vector<Scalar>> rows;
  BasisChange b;
  b.P.assign(n, Vec(f));
  std::map<std::string, std::vector<u32>> groups;
  for (u32 i = 0; i < n; ++i) {
    if (i < frozen.size() && frozen[i])
      b.P[i].add(i, Scalar::one(f));
    else
      groups[blocks[i]].push_back(i);
  }
  for (auto& [key, idx] : groups) {
    std::size_t m = idx.size();
    std::vector<std::vector<Scalar>> M(m, std::vector<Scalar>(m, Scalar::zero(f)));
    for (std::size_t i = 0; i < m; ++i) M[i][i] = Scalar::one(f);
    for (std::size_t step = 0; step < 2 * m; ++step) {
      std::size_t i = pick(rng, m);
      if (m > 1) {
        std::size_t j = pick(rng, m - 1);
        if (j >= i) ++j;
        Scalar c = random_scalar(f, rng);
        for (std::size_t k = 0; k < m; ++k) M[i][k] += c * M[j][k];
      }
      Scalar s = random_scalar(f, rng, true);
      for (std::size_t k = 0; k < m; ++k) M[i][k] *= s;
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) b.P[idx[i]].add(idx[k], M[i][k]);
  }
  b.Pinv.assign(n, Vec(f));
  for (u32 i = 0; i < n; ++i) {
    auto sol = solve_in_span(f, b.P, Vec(f, i, Scalar::one(f)));
    if (!sol) throw ComparisonFailure("random basis change is singular");
    b.Pinv[i] = *sol;
  }
  return b;
}

DgCategory change_basis(const DgCategory& D, const BasisChange& b) {
  DgCategory E = D;
  E.product.clear();
  u32 n = static_cast<u32>(D.basis.size());
  for (u32 i = 0; i < n; ++i) {
    E.d[i] = apply_change(b.Pinv, D.diff(b.P[i]));
    for (u32 j = 0; j < n; ++j) {
      if (D.basis[i].target != D.basis[j].source) continue;
      Vec v = apply_change(b.Pinv, D.mul(b.P[i], b.P[j]));
      if (!v.empty()) E.product[{i, j}] = v;
    }
  }
  E.unit = apply_change(b.Pinv, D.unit);
  return E;
}

PointedCoalgebra change_basis(const PointedCoalgebra& C, const BasisChange& b) {
  PointedCoalgebra E = C;
  Field f = C.field;
  for (u32 j = 0; j < C.cells.size(); ++j) {
    std::map<std::pair<u32, u32>, Scalar> cop;
    Vec d(f), dc(f);
    Scalar h = Scalar::zero(f);
    for (auto& [i, p] : b.P[j]) {
      for (auto& t : C.coproduct[i])
        for (auto& [x, cx] : b.Pinv[t.left])
          for (auto& [y, cy] : b.Pinv[t.right]) {
            auto [it, fresh] = cop.try_emplace({x, y}, Scalar::zero(f));
            it->second += p * t.coeff * cx * cy;
          }
      d.add(apply_change(b.Pinv, C.d[i]), p);
      dc.add(C.d_coradical[i], p);
      h += p * C.curvature[i];
    }
    E.coproduct[j].clear();
    for (auto& [xy, c] : cop)
      if (!c.is_zero()) E.coproduct[j].push_back({xy.first, xy.second, c});
    E.d[j] = d;
    E.d_coradical[j] = dc;
    E.curvature[j] = h;
  }
  E.reindex();
  return E;
}

Comodule change_basis(const Comodule& M, const BasisChange& b) {
  Comodule E = M;
  Field f = M.field;
  for (u32 j = 0; j < M.basis.size(); ++j) {
    Vec d(f);
    std::map<std::pair<u32, u32>, Scalar> co;
    for (auto& [i, p] : b.P[j]) {
      d.add(apply_change(b.Pinv, M.d[i]), p);
      for (auto& t : M.coaction[i])
        for (auto& [y, cy] : b.Pinv[t.elem]) {
          auto [it, fresh] = co.try_emplace({t.cell, y}, Scalar::zero(f));
          it->second += p * t.coeff * cy;
        }
    }
    E.d[j] = d;
    E.coaction[j].clear();
    for (auto& [k, c] : co)
      if (!c.is_zero()) E.coaction[j].push_back({k.first, k.second, c});
  }
  return E;
}

Module change_basis(const Module& M, const Algebra& A, const BasisChange& b) {
  Module E = M;
  Field f = M.field;
  E.action.clear();
  for (u32 j = 0; j < M.basis.size(); ++j) {
    Vec d(f);
    for (auto& [i, p] : b.P[j]) d.add(apply_change(b.Pinv, M.d[i]), p);
    E.d[j] = d;
    for (u32 a = 0; a < A.basis.size(); ++a) {
      if (A.basis[a].target != M.basis[j].object) continue;
      Vec v = apply_change(b.Pinv, M.act(A, A.e(a), b.P[j]));
      if (!v.empty()) E.action[{a, j}] = v;
    }
  }
  return E;
}

namespace {

std::string block(u32 s, u32 t, int deg) {
  return std::to_string(s) + "," + std::to_string(t) + "," + std::to_string(deg);
}

std::vector<std::string> elem_blocks(const std::vector<Elem>& basis) {
  std::vector<std::string> out;
  for (auto& e : basis) out.push_back(block(e.object, 0, e.degree));
  return out;
}

}  // namespace

DgCategory scramble(const DgCategory& D, Rng& rng) {
  std::vector<std::string> blocks;
  std::vector<bool> frozen(D.basis.size(), false);
  for (auto& c : D.basis) blocks.push_back(block(c.source, c.target, c.degree));
  for (auto& id : D.identity)
    if (id) frozen[*id] = true;
  return change_basis(D, random_basis_change(D.field, rng, blocks, frozen));
}

PointedCoalgebra scramble(const PointedCoalgebra& C, Rng& rng) {
  std::vector<std::string> blocks;
  for (auto& c : C.cells) blocks.push_back(block(c.source, c.target, c.degree));
  return change_basis(C, random_basis_change(C.field, rng, blocks));
}

namespace {

int rand_int(Rng& rng, int lo, int hi) { return lo + static_cast<int>(pick(rng, static_cast<std::size_t>(hi - lo + 1))); }

DgCategory random_square_zero(Field f, Rng& rng, int max_objects, int max_hom) {
  int n = 1 + static_cast<int>(pick(rng, max_objects));
  std::vector<std::string> objs;
  for (int i = 0; i < n; ++i) objs.push_back(std::string(1, static_cast<char>('a' + i)));
  CategoryBuilder b(f, objs);
  struct C {
    std::string label;
    int s, t, deg;
  };
  std::vector<C> cells;
  int k = 0;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      int room = s == t ? max_hom - 1 : max_hom;
      int dim = static_cast<int>(pick(rng, room + 1));
      if (pick(rng, 2)) dim = std::min(dim, 1);
      for (int i = 0; i < dim; ++i) {
        C c{"x" + std::to_string(k++), s, t, rand_int(rng, -2, 2)};
        b.cell(c.label, objs[s], objs[t], c.deg);
        cells.push_back(c);
      }
    }
  std::vector<bool> used(cells.size(), false);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (used[i] || pick(rng, 2)) continue;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j == i || used[j]) continue;
      if (cells[j].s != cells[i].s || cells[j].t != cells[i].t || cells[j].deg != cells[i].deg + 1) continue;
      used[i] = used[j] = true;
      b.differential(cells[i].label, {{cells[j].label, random_scalar(f, rng, true)}});
      break;
    }
  }
  return b.build();
}

DgCategory random_chain(Field f, Rng& rng, int max_objects) {
  int n = 2 + static_cast<int>(pick(rng, std::max(1, max_objects - 1)));
  std::vector<std::string> objs;
  for (int i = 0; i < n; ++i) objs.push_back(std::to_string(i));
  CategoryBuilder b(f, objs);
  std::vector<int> deg(n - 1);
  for (auto& d : deg) d = rand_int(rng, -1, 1);
  auto label = [](int i, int j) { return "p" + std::to_string(i) + std::to_string(j); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int d = 0;
      for (int k = i; k < j; ++k) d += deg[k];
      b.cell(label(i, j), objs[i], objs[j], d);
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) b.product(label(i, j), label(j, k), label(i, k));
  return b.build();
}

DgCategory random_fixture(Field f, Rng& rng, int max_objects) {
  std::vector<DgCategory> pool = {fixture_k(f), fixture_dual_numbers(f), fixture_square_zero(f, rand_int(rng, -2, 2))};
  if (max_objects >= 2) {
    pool.push_back(fixture_S(f, rand_int(rng, -2, 2)));
    pool.push_back(fixture_A2(f));
    pool.push_back(fixture_D(f, rand_int(rng, -1, 2)));
    pool.push_back(fixture_homotopy(f));
  }
  return pool[pick(rng, pool.size())];
}

}  // namespace

DgCategory random_dg_category(Field f, Rng& rng, int max_objects, int max_hom) {
  DgCategory D;
  switch (pick(rng, 4)) {
    case 0:
      D = random_fixture(f, rng, max_objects);
      break;
    case 1:
      D = random_chain(f, rng, max_objects);
      break;
    default:
      D = random_square_zero(f, rng, max_objects, max_hom);
  }
  D = scramble(D, rng);
  auto r = validate_dg_category(D);
  if (!r.ok()) throw ComparisonFailure("random dg category is invalid: " + r.text());
  return D;
}

namespace {

// small category, often with a degree-0 endomorphism so a retract can curve the bar
DgCategory curvable(Field f, Rng& rng) {
  if (pick(rng, 2)) return random_dg_category(f, rng, 2, 2);
  DgCategory D = pick(rng, 2) ? fixture_dual_numbers(f) : fixture_square_zero(f, 0);
  return scramble(D, rng);
}

Retract random_retract(const DgCategory& D, Rng& rng) {
  Retract w = default_retract(D);
  if (pick(rng, 4))
    for (u32 s = 0; s < D.objects.size(); ++s)
      for (u32 x : D.hom(s, s))
        if (x != *D.identity[s] && D.basis[x].degree == 0) w.v[s].add(x, random_scalar(D.field, rng));
  return w;
}

}  // namespace

PointedCoalgebra random_coalgebra(Field f, Rng& rng) {
  if (pick(rng, 10) == 0) {
    PointedCoalgebra C;
    C.field = f;
    C.objects = {"a"};
    if (pick(rng, 2)) C.objects.push_back("b");
    C.resize();
    C.reindex();
    return C;
  }
  for (;;) {
    DgCategory D = curvable(f, rng);
    Retract w = random_retract(D, rng);
    for (int W = 3; W >= 1; --W) {
      BarCoalgebra B = validate_retract(D, w).ok() ? bar_reduced(D, w, W) : bar_reduced(D, W);
      const auto& C = B.coalgebra;
      bool fits = C.cells.size() <= 4;
      for (auto& c : C.cells) fits = fits && c.degree >= -3 && c.degree <= 3;
      if (!fits) continue;
      if (C.cells.empty() && pick(rng, 2)) break;
      return scramble(C, rng);
    }
  }
}

Comodule shift(const Comodule& M, int k) {
  Comodule E = M;
  for (auto& e : E.basis) e.degree += k;
  return E;
}

Module shift(const Module& M, int k) {
  Module E = M;
  for (auto& e : E.basis) e.degree += k;
  return E;
}

namespace {

Vec offset(const Vec& v, u32 k) {
  Vec r(v.field());
  for (auto& [i, c] : v) r.add(i + k, c);
  return r;
}

}  // namespace

Comodule direct_sum(const Comodule& a, const Comodule& b) {
  Comodule E = a;
  u32 k = static_cast<u32>(a.basis.size());
  for (u32 i = 0; i < b.basis.size(); ++i) {
    E.basis.push_back(b.basis[i]);
    E.basis.back().label += "'";
    E.d.push_back(offset(b.d[i], k));
    E.coaction.push_back(b.coaction[i]);
    for (auto& t : E.coaction.back()) t.elem += k;
  }
  return E;
}

Module direct_sum(const Module& a, const Module& b) {
  Module E = a;
  u32 k = static_cast<u32>(a.basis.size());
  for (u32 i = 0; i < b.basis.size(); ++i) {
    E.basis.push_back(b.basis[i]);
    E.basis.back().label += "'";
    E.d.push_back(offset(b.d[i], k));
  }
  for (auto& [key, v] : b.action) E.action[{key.first, key.second + k}] = offset(v, k);
  return E;
}

namespace {

Comodule point(const PointedCoalgebra& C, Rng& rng) {
  return shift(point_comodule(C, static_cast<u32>(pick(rng, C.objects.size()))), rand_int(rng, -1, 1));
}

// cells ending at t closed under right factors and d, plus t itself
std::optional<Comodule> column(const PointedCoalgebra& C, Rng& rng) {
  Field f = C.field;
  u32 t = static_cast<u32>(pick(rng, C.objects.size()));
  std::set<u32> S;
  for (u32 c = 0; c < C.cells.size(); ++c)
    if (C.cells[c].target == t && pick(rng, 2)) S.insert(c);
  for (bool grew = true; grew;) {
    grew = false;
    for (u32 c : std::set<u32>(S)) {
      for (auto& u : C.coproduct[c]) grew |= S.insert(u.right).second;
      for (auto& [x, v] : C.d[c]) grew |= S.insert(x).second;
    }
  }
  if (S.empty()) return std::nullopt;
  Comodule M;
  M.field = f;
  M.basis.push_back({C.objects[t], t, 0});
  std::map<u32, u32> pos;
  for (u32 c : S) {
    pos[c] = static_cast<u32>(M.basis.size());
    M.basis.push_back({C.cells[c].label, C.cells[c].source, C.cells[c].degree});
  }
  M.resize();
  for (u32 c : S) {
    u32 k = pos[c];
    for (auto& [x, v] : C.d[c]) M.d[k].add(pos.at(x), v);
    for (auto& [o, v] : C.d_coradical[c]) {
      if (o != t) return std::nullopt;
      M.d[k].add(0, v);
    }
    M.coaction[k].push_back({c, 0, Scalar::one(f)});
    for (auto& u : C.coproduct[c]) M.coaction[k].push_back({u.left, pos.at(u.right), u.coeff});
  }
  return M;
}

Module simple(const DgCategory& D, u32 s) {
  Module M;
  M.field = D.field;
  M.basis.push_back({D.objects[s], s, 0});
  M.d.assign(1, Vec(D.field));
  if (D.identity[s]) M.action[{*D.identity[s], 0}] = Vec(D.field, 0, Scalar::one(D.field));
  return M;
}

}  // namespace

Comodule random_comodule(const PointedCoalgebra& C, Rng& rng, std::size_t max_dim) {
  Comodule M;
  switch (pick(rng, 3)) {
    case 0:
      M = point(C, rng);
      break;
    case 1:
      M = direct_sum(point(C, rng), point(C, rng));
      break;
    default: {
      auto col = column(C, rng);
      M = col ? shift(*col, rand_int(rng, -1, 1)) : point(C, rng);
    }
  }
  if (M.basis.size() > max_dim || !validate_comodule(C, M).ok()) M = point(C, rng);
  return change_basis(M, random_basis_change(C.field, rng, elem_blocks(M.basis)));
}

Module random_module(const DgCategory& D, Rng& rng, std::size_t max_dim) {
  u32 s = static_cast<u32>(pick(rng, D.objects.size()));
  Module M;
  switch (pick(rng, 3)) {
    case 0:
      M = representable(D, s);
      break;
    case 1:
      M = simple(D, s);
      break;
    default:
      M = direct_sum(simple(D, s), shift(representable(D, static_cast<u32>(pick(rng, D.objects.size()))), rand_int(rng, -1, 1)));
  }
  if (M.basis.size() > max_dim || !validate_module(D, M).ok()) {
    M = simple(D, s);
    if (!validate_module(D, M).ok()) M = representable(D, s);
  }
  return change_basis(M, D, random_basis_change(D.field, rng, elem_blocks(M.basis)));
}

FgInstance random_fg_instance(Field f, Rng& rng) {
  FgInstance I;
  I.D = curvable(f, rng);
  Retract w = random_retract(I.D, rng);
  I.B = validate_retract(I.D, w).ok() ? bar_reduced(I.D, w, 2) : bar_reduced(I.D, 2);
  I.tau = tautological(I.B, I.D);
  I.N = random_comodule(I.B.coalgebra, rng);
  I.M = random_module(I.D, rng);
  return I;
}

}  // namespace koszul
