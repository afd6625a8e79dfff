#include "koszul/barcobar.hpp"

#include <algorithm>

namespace koszul {

std::string word_label(const Algebra& D, const std::vector<u32>& w) {
  std::string s = "[";
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "|" : "") + D.basis[w[k]].label;
  return s + "]";
}

namespace {

bool is_identity(const DgCategory& D, u32 i) {
  const Cell& c = D.basis[i];
  return c.source == c.target && D.identity[c.source] && *D.identity[c.source] == i;
}

BarCoalgebra build_bar(const DgCategory& D, const std::vector<bool>& letter, int W, bool reduced) {
  if (W < 0) throw InvalidInput("word bound must be >= 0");
  BarCoalgebra B;
  B.base = D;
  B.word_bound = W;
  B.reduced = reduced;
  Field f = D.field;
  PointedCoalgebra& C = B.coalgebra;
  C.field = f;
  C.objects = D.objects;
  std::vector<std::vector<u32>> frontier;
  for (u32 i = 0; i < D.basis.size(); ++i)
    if (letter[i]) frontier.push_back({i});
  for (int len = 1; len <= W && !frontier.empty(); ++len) {
    std::vector<std::vector<u32>> next;
    for (auto& w : frontier) {
      int deg = 0;
      for (auto b : w) deg += D.basis[b].degree - 1;
      B.word_index[w] = static_cast<u32>(C.cells.size());
      C.cells.push_back({word_label(D, w), D.basis[w.front()].source, D.basis[w.back()].target, deg});
      B.words.push_back(w);
      if (len == W) continue;
      for (u32 i = 0; i < D.basis.size(); ++i)
        if (letter[i] && D.basis[i].source == D.basis[w.back()].target) {
          auto u = w;
          u.push_back(i);
          next.push_back(std::move(u));
        }
    }
    frontier = std::move(next);
  }
  C.reindex();
  auto cell_of = [&](const std::vector<u32>& w) -> std::optional<u32> {
    auto it = B.word_index.find(w);
    if (it == B.word_index.end()) return std::nullopt;
    return it->second;
  };
  for (u32 k = 0; k < C.cells.size(); ++k) {
    const auto& w = B.words[k];
    for (std::size_t i = 1; i < w.size(); ++i) {
      std::vector<u32> l(w.begin(), w.begin() + i), r(w.begin() + i, w.end());
      C.coproduct[k].push_back({*cell_of(l), *cell_of(r), Scalar::one(f)});
    }
    std::sort(C.coproduct[k].begin(), C.coproduct[k].end(),
              [](const CoTerm& x, const CoTerm& y) { return std::tie(x.left, x.right) < std::tie(y.left, y.right); });
    Vec dk(f);
    Scalar h = Scalar::zero(f);
    int eps = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Scalar sg = Scalar::sign(f, eps);
      // m1: s b -> -s d b
      for (auto& [x, c] : D.d[w[i]]) {
        if (letter[x]) {
          auto u = w;
          u[i] = x;
          if (auto j = cell_of(u)) dk.add(*j, -sg * c);
        } else if (reduced && w.size() == 1 && is_identity(D, x)) {
          h += -c;
        }
      }
      // m2: s b1 ⊗ s b2 -> (-1)^{|b1|+1} s(b1 b2)
      if (i + 1 < w.size()) {
        Scalar s2 = sg * Scalar::sign(f, D.basis[w[i]].degree + 1);
        if (auto p = D.mul_basis(w[i], w[i + 1]))
          for (auto& [x, c] : *p) {
            if (letter[x]) {
              std::vector<u32> u(w.begin(), w.begin() + i);
              u.push_back(x);
              u.insert(u.end(), w.begin() + i + 2, w.end());
              if (auto j = cell_of(u)) dk.add(*j, s2 * c);
            } else if (reduced && w.size() == 2 && is_identity(D, x)) {
              h += Scalar::sign(f, D.basis[w[0]].degree + 1) * c;
            }
          }
      }
      eps += D.basis[w[i]].degree - 1;
    }
    C.d[k] = std::move(dk);
    C.curvature[k] = h;
  }
  return B;
}

}  // namespace

BarCoalgebra bar_nonreduced(const DgCategory& D, int W) {
  std::vector<bool> letter(D.basis.size(), true);
  return build_bar(D, letter, W, false);
}

BarCoalgebra bar_reduced(const DgCategory& D, const Retract& v, int W) {
  for (u32 s = 0; s < D.objects.size(); ++s)
    if (s >= D.identity.size() || !D.identity[s]) throw NotSplit("object '" + D.objects[s] + "' has zero identity");
  Report rv = validate_retract(D, v);
  if (!rv.ok()) throw InvalidInput("invalid retract: " + rv.failures.front().check);
  DgCategory R = rebase(D, v);
  std::vector<bool> letter(R.basis.size(), true);
  for (u32 s = 0; s < R.objects.size(); ++s) letter[*R.identity[s]] = false;
  BarCoalgebra B = build_bar(R, letter, W, true);
  B.retract = v;
  return B;
}

BarCoalgebra bar_reduced(const DgCategory& D, int W) { return bar_reduced(D, default_retract(D), W); }

Vec to_bar_base(const BarCoalgebra& B, const DgCategory& D, const Vec& x) {
  if (!B.reduced) return x;
  Vec y(D.field);
  for (auto& [i, c] : x) {
    y.add(i, c);
    const Cell& cell = D.basis[i];
    if (cell.source == cell.target && D.identity[cell.source] && *D.identity[cell.source] != i)
      y.add(*D.identity[cell.source], B.retract.value(D, i) * c);
  }
  return y;
}

Vec from_bar_base(const BarCoalgebra& B, const DgCategory& D, const Vec& x) {
  if (!B.reduced) return x;
  Vec y(D.field);
  for (auto& [i, c] : x) {
    y.add(i, c);
    const Cell& cell = D.basis[i];
    if (cell.source == cell.target && D.identity[cell.source] && *D.identity[cell.source] != i)
      y.add(*D.identity[cell.source], -B.retract.value(D, i) * c);
  }
  return y;
}

// ---- cobar ----

std::string path_label(const PointedCoalgebra& C, const PathKey& p) {
  if (p.second.empty()) return "id_" + C.objects[p.first];
  std::string s = "<";
  for (std::size_t k = 0; k < p.second.size(); ++k) s += (k ? "|" : "") + C.cells[p.second[k]].label;
  return s + ">";
}

PVec path_mul(const PointedCoalgebra& C, const PVec& x, const PVec& y) {
  PVec r(C.field);
  for (auto& [p, cp] : x)
    for (auto& [q, cq] : y) {
      u32 pt = p.second.empty() ? p.first : C.cells[p.second.back()].target;
      if (pt != q.first) continue;
      PathKey u{p.first, p.second};
      u.second.insert(u.second.end(), q.second.begin(), q.second.end());
      r.add(u, cp * cq);
    }
  return r;
}

PVec cobar_d_generator(const PointedCoalgebra& C, u32 c) {
  Field f = C.field;
  const Cell& cell = C.cells[c];
  PVec r(f);
  // m0
  if (!C.curvature[c].is_zero()) r.add(PathKey{cell.source, {}}, C.curvature[c]);
  // m1
  for (auto& [x, k] : C.d[c]) r.add(PathKey{cell.source, {x}}, -k);
  // m2
  for (auto& t : C.coproduct[c])
    r.add(PathKey{cell.source, {t.left, t.right}}, -Scalar::sign(f, C.cells[t.left].degree) * t.coeff);
  return r;
}

PVec cobar_d(const PointedCoalgebra& C, const PVec& x) {
  Field f = C.field;
  PVec r(f);
  for (auto& [p, cp] : x) {
    const auto& w = p.second;
    int before = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      PathKey left{p.first, std::vector<u32>(w.begin(), w.begin() + i)};
      u32 mid = C.cells[w[i]].source;
      PathKey right{C.cells[w[i]].target, std::vector<u32>(w.begin() + i + 1, w.end())};
      PVec term = path_mul(C, PVec(f, left, Scalar::one(f)), cobar_d_generator(C, w[i]));
      term = path_mul(C, term, PVec(f, right, Scalar::one(f)));
      (void)mid;
      r.add(term, cp * Scalar::sign(f, before));
      before += C.cells[w[i]].degree + 1;
    }
  }
  return r;
}

bool Cobar::exact(u32 s, u32 t, int deg) const {
  auto it = inexact.find({s, t});
  return it == inexact.end() || !it->second.count(deg);
}

Vec Cobar::to_basis(const PVec& x) const {
  Vec r(category.field);
  for (auto& [p, c] : x) {
    auto it = path_index.find(p);
    if (it != path_index.end()) r.add(it->second, c);
  }
  return r;
}

Cobar cobar(const PointedCoalgebra& C, int W) {
  if (W < 0) throw InvalidInput("word bound must be >= 0");
  if (!C.split()) throw NotSplit("cobar needs a split coalgebra (d vanishing into the coradical)");
  Cobar O;
  O.word_bound = W;
  O.curved = C.curved();
  Field f = C.field;
  DgCategory& D = O.category;
  D.field = f;
  D.objects = C.objects;
  D.identity.resize(C.objects.size());
  auto add = [&](const PathKey& p) {
    u32 k = static_cast<u32>(D.basis.size());
    int deg = 0;
    for (auto c : p.second) deg += C.cells[c].degree + 1;
    u32 t = p.second.empty() ? p.first : C.cells[p.second.back()].target;
    D.basis.push_back({path_label(C, p), p.first, t, deg});
    O.paths.push_back(p);
    O.path_index[p] = k;
    return k;
  };
  for (u32 s = 0; s < C.objects.size(); ++s) D.identity[s] = add(PathKey{s, {}});
  std::vector<PathKey> frontier;
  for (u32 c = 0; c < C.cells.size(); ++c) frontier.push_back(PathKey{C.cells[c].source, {c}});
  for (int len = 1; len <= W && !frontier.empty(); ++len) {
    std::vector<PathKey> next;
    for (auto& p : frontier) {
      add(p);
      if (len == W) continue;
      u32 t = C.cells[p.second.back()].target;
      for (u32 c = 0; c < C.cells.size(); ++c)
        if (C.cells[c].source == t) {
          PathKey q = p;
          q.second.push_back(c);
          next.push_back(std::move(q));
        }
    }
    frontier = std::move(next);
  }
  // which degrees carry words of length exactly W+1: dynamic programme on
  // (start, end, degree)
  {
    std::set<std::tuple<u32, u32, int>> reach;
    for (u32 s = 0; s < C.objects.size(); ++s) reach.insert({s, s, 0});
    for (int len = 0; len < W + 1; ++len) {
      std::set<std::tuple<u32, u32, int>> next;
      for (auto& [s, t, deg] : reach)
        for (u32 c = 0; c < C.cells.size(); ++c)
          if (C.cells[c].source == t) next.insert({s, C.cells[c].target, deg + C.cells[c].degree + 1});
      reach = std::move(next);
      if (reach.empty()) break;
    }
    for (auto& [s, t, deg] : reach) O.inexact[{s, t}].insert(deg);
  }
  D.cut = O.inexact;
  D.length_lowering = O.curved;
  D.reindex();
  // products are concatenations; group by (source object, length)
  std::map<std::pair<u32, std::size_t>, std::vector<u32>> by_start;
  for (u32 a = 0; a < D.basis.size(); ++a) by_start[{D.basis[a].source, O.paths[a].second.size()}].push_back(a);
  for (u32 a = 0; a < D.basis.size(); ++a) {
    std::size_t la = O.paths[a].second.size();
    for (std::size_t lb = 0; la + lb <= static_cast<std::size_t>(W); ++lb) {
      auto it = by_start.find({D.basis[a].target, lb});
      if (it == by_start.end()) continue;
      for (u32 b : it->second) {
        PathKey u = O.paths[a];
        u.second.insert(u.second.end(), O.paths[b].second.begin(), O.paths[b].second.end());
        D.product[{a, b}] = Vec(f, O.path_index.at(u), Scalar::one(f));
      }
    }
  }
  for (u32 a = 0; a < D.basis.size(); ++a) D.d[a] = O.to_basis(cobar_d(C, PVec(f, O.paths[a], Scalar::one(f))));
  D.set_unit_from_identities();
  return O;
}

Report check_cobar_square_zero(const Cobar& O) {
  Report r;
  r.subject = "cobar d^2";
  const DgCategory& D = O.category;
  for (u32 i = 0; i < D.basis.size(); ++i) {
    const Cell& c = D.basis[i];
    if (!O.exact(c.source, c.target, c.degree + 1) && O.curved) continue;
    if (!D.diff(D.d[i]).empty()) r.fail("(m0+m1+m2)^2 != 0", c.label);
  }
  return r;
}

// ---- functoriality ----

CobarFunctor cobar_on_morphism(const PointedCoalgebra& C, const PointedCoalgebra& Cp, const CoalgebraMorphism& m) {
  CobarFunctor F;
  F.object_map = m.object_map;
  Field f = C.field;
  for (u32 c = 0; c < C.cells.size(); ++c) {
    PVec g(f);
    u32 s = m.object_map[C.cells[c].source];
    for (auto& [x, k] : m.f[c]) g.add(PathKey{s, {x}}, k);
    if (!m.a[c].is_zero()) g.add(PathKey{s, {}}, -m.a[c]);
    F.generator.push_back(std::move(g));
  }
  (void)Cp;
  return F;
}

PVec apply_functor(const PointedCoalgebra& Cp, const CobarFunctor& F, const PVec& x) {
  Field f = Cp.field;
  PVec r(f);
  for (auto& [p, c] : x) {
    PVec y(f, PathKey{F.object_map[p.first], {}}, Scalar::one(f));
    for (auto g : p.second) y = path_mul(Cp, y, F.generator[g]);
    r.add(y, c);
  }
  return r;
}

Report check_cobar_functor(const PointedCoalgebra& C, const PointedCoalgebra& Cp, const CobarFunctor& F) {
  Report r;
  r.subject = "cobar functor";
  Field f = C.field;
  for (u32 c = 0; c < C.cells.size(); ++c) {
    PVec lhs = cobar_d(Cp, F.generator[c]);
    PVec rhs = apply_functor(Cp, F, cobar_d_generator(C, c));
    if (lhs != rhs) r.fail("d F != F d on generator", C.cells[c].label);
  }
  (void)f;
  return r;
}

CobarFunctor compose(const PointedCoalgebra& Cpp, const CobarFunctor& G, const CobarFunctor& F) {
  CobarFunctor H;
  for (auto o : F.object_map) H.object_map.push_back(G.object_map[o]);
  for (auto& g : F.generator) H.generator.push_back(apply_functor(Cpp, G, g));
  return H;
}

// ---- reduced vs non-reduced ----

Report reduced_unreduced_check(const DgCategory& D, const Retract& v, int W) {
  Report r;
  r.subject = "reduced/non-reduced bar";
  BarCoalgebra Bv = bar_reduced(D, v, W);
  BarCoalgebra Bn = bar_nonreduced(Bv.base, W);  // same rebased basis
  CurvedAlgebra Av = dualize(Bv.coalgebra);
  CurvedAlgebra An = dualize(Bn.coalgebra);
  Field f = D.field;
  u32 no = static_cast<u32>(D.objects.size());
  const DgCategory& R = Bv.base;
  Uncurved H(Av, W);
  // Phi on a tuple: concatenate letters, an eta contributes s*id
  auto phi = [&](const Tuple& t) -> std::optional<std::pair<u32, int>> {
    std::vector<u32> word;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k > 0) {
        u32 s = Av.basis[t[k]].source;
        word.push_back(*R.identity[s]);
      }
      if (t[k] >= no) {
        auto& w = Bv.words[t[k] - no];
        word.insert(word.end(), w.begin(), w.end());
      }
    }
    if (word.empty()) return std::make_pair(t[0], 0);  // idempotent
    auto it = Bn.word_index.find(word);
    if (it == Bn.word_index.end()) return std::nullopt;
    return std::make_pair(no + it->second, static_cast<int>(word.size()));
  };
  auto total_len = [&](const Tuple& t) {
    int len = static_cast<int>(t.size()) - 1;
    for (auto x : t)
      if (x >= no) len += static_cast<int>(Bv.words[x - no].size());
    return len;
  };
  auto image = [&](const HVec& x) {
    Vec y(f);
    for (auto& [t, c] : x) {
      if (total_len(t) > W) continue;
      auto p = phi(t);
      if (p) y.add(p->first, c);
    }
    return y;
  };
  // tuples of total word length <= W, grown letter by letter
  std::vector<Tuple> short_tuples, frontier;
  for (u32 i = 0; i < Av.basis.size(); ++i)
    if (total_len({i}) <= W) frontier.push_back({i});
  while (!frontier.empty()) {
    std::vector<Tuple> next;
    for (auto& t : frontier) {
      short_tuples.push_back(t);
      for (u32 i = 0; i < Av.basis.size(); ++i) {
        if (Av.basis[t.back()].target != Av.basis[i].source) continue;
        Tuple u = t;
        u.push_back(i);
        if (total_len(u) <= W) next.push_back(std::move(u));
      }
    }
    frontier = std::move(next);
  }
  std::set<u32> hit;
  std::size_t tuples = 0;
  for (auto& t : short_tuples) {
    ++tuples;
    auto p = phi(t);
    if (!p) {
      r.fail("tuple has no non-reduced word", H.show(HVec(f, t, Scalar::one(f))));
      continue;
    }
    if (!hit.insert(p->first).second) r.fail("Phi not injective", H.show(HVec(f, t, Scalar::one(f))));
    HVec x(f, t, Scalar::one(f));
    Vec lhs = image(H.d(x));
    Vec rhs = An.diff(An.e(p->first));
    if (lhs != rhs) r.fail("Phi d_H != d Phi", H.show(x) + " : " + show(An, lhs) + " vs " + show(An, rhs));
  }
  if (hit.size() != An.basis.size())
    r.fail("Phi not surjective", std::to_string(hit.size()) + " of " + std::to_string(An.basis.size()));
  // multiplicativity on generators: letters and eta
  std::vector<Tuple> gens;
  for (u32 i = 0; i < Av.basis.size(); ++i)
    if (total_len({i}) <= W) gens.push_back({i});
  for (auto& a : gens)
    for (auto& b : gens) {
      HVec x(f, a, Scalar::one(f)), y(f, b, Scalar::one(f));
      Vec lhs = image(H.mul(x, y));
      Vec rhs = An.mul(image(x), image(y));
      if (lhs != rhs) r.fail("Phi not multiplicative", H.show(x) + "," + H.show(y));
      HVec e = H.eta();
      Vec l2 = image(H.mul(H.mul(x, e), y));
      Vec r2 = An.mul(An.mul(image(x), image(e)), image(y));
      if (l2 != r2) r.fail("Phi not multiplicative through eta", H.show(x) + "," + H.show(y));
    }
  r.note("tuples compared: " + std::to_string(tuples));
  return r;
}

RetractCertificate retract_independence(const DgCategory& D, const Retract& v, const Retract& w, int W) {
  RetractCertificate out;
  out.report.subject = "retract independence";
  BarCoalgebra Bv = bar_reduced(D, v, W);
  BarCoalgebra Bw = bar_reduced(D, w, W);
  CurvedAlgebra Av = dualize(Bv.coalgebra);
  CurvedAlgebra Aw = dualize(Bw.coalgebra);
  Field f = D.field;
  u32 no = static_cast<u32>(D.objects.size());
  AlgebraMorphism m;
  for (u32 i = 0; i < Av.basis.size(); ++i) m.f.push_back(Vec(f, Aw.index(Av.basis[i].label), Scalar::one(f)));
  m.b = Vec(f);
  for (u32 k = 0; k < Bv.words.size(); ++k) {
    if (Bv.words[k].size() != 1) continue;
    u32 b = Bv.words[k][0];
    Scalar diff = v.value(D, b) - w.value(D, b);
    if (!diff.is_zero()) m.b.add(Aw.index(Av.basis[no + k].label), diff);
  }
  AlgebraMorphism inv;
  for (u32 i = 0; i < Aw.basis.size(); ++i) inv.f.push_back(Vec(f, Av.index(Aw.basis[i].label), Scalar::one(f)));
  inv.b = Vec(f);
  for (auto& [j, c] : m.b) inv.b.add(Av.index(Aw.basis[j].label), -c);
  out.report.merge(validate_morphism(Av, Aw, m), "forward: ");
  out.report.merge(validate_morphism(Aw, Av, inv), "backward: ");
  if (!same_morphism(compose(Av, inv, m), identity_morphism(Av))) out.report.fail("backward∘forward != id", "");
  if (!same_morphism(compose(Aw, m, inv), identity_morphism(Aw))) out.report.fail("forward∘backward != id", "");
  out.forward = std::move(m);
  out.backward = std::move(inv);
  return out;
}

}  // namespace koszul
