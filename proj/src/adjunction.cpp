#include <algorithm>
#include <set>

#include "koszul/barcobar.hpp"

namespace koszul {

namespace {

Vec identity_vec(const DgCategory& D, u32 s) {
  Vec v(D.field);
  if (s < D.identity.size() && D.identity[s]) v.add(*D.identity[s], Scalar::one(D.field));
  return v;
}

Vec apply_xi(const MCElement& x, const Vec& c, Field f) {
  Vec y(f);
  for (auto& [i, k] : c) y.add(x.xi[i], k);
  return y;
}

void check_shape(const PointedCoalgebra& C, const DgCategory& D, const MCElement& x, Report& r) {
  if (C.field != D.field) throw FieldMismatch("coalgebra and category over different fields");
  if (x.object_map.size() != C.objects.size() || x.xi.size() != C.cells.size()) {
    r.fail("shape", "object map / xi sizes");
    return;
  }
  for (auto o : x.object_map)
    if (o >= D.objects.size()) {
      r.fail("object map out of range", std::to_string(o));
      return;
    }
  for (u32 c = 0; c < C.cells.size(); ++c) {
    const Cell& cell = C.cells[c];
    u32 s = x.object_map[cell.source], t = x.object_map[cell.target];
    for (auto& [j, k] : x.xi[c]) {
      const Cell& b = D.basis[j];
      if (b.source != s || b.target != t || b.degree != cell.degree + 1)
        r.fail("xi leaves component or degree", cell.label + " -> " + b.label);
    }
  }
}

}  // namespace

Vec mc_defect(const PointedCoalgebra& C, const DgCategory& D, const MCElement& x, u32 c) {
  Field f = D.field;
  Vec e = D.diff(x.xi[c]);
  e += apply_xi(x, C.d[c], f);
  for (auto& t : C.coproduct[c])
    e.add(D.mul(x.xi[t.left], x.xi[t.right]), Scalar::sign(f, C.cells[t.left].degree) * t.coeff);
  if (!C.curvature[c].is_zero()) e.add(identity_vec(D, x.object_map[C.cells[c].source]), -C.curvature[c]);
  return e;
}

Report mc_check(const PointedCoalgebra& C, const DgCategory& D, const MCElement& x) {
  Report r;
  r.subject = "MC element";
  check_shape(C, D, x, r);
  if (!r.ok()) return r;
  if (!C.split()) throw NotSplit("MC equation needs a split coalgebra");
  for (u32 c = 0; c < C.cells.size(); ++c) {
    Vec e = mc_defect(C, D, x, c);
    if (!e.empty()) r.fail("d xi + xi d + xi*xi - h != 0", C.cells[c].label + " : " + show(D, e));
  }
  return r;
}

Vec functor_value(const PointedCoalgebra& C, const DgCategory& D, const MCElement& F, const PVec& x) {
  Field f = D.field;
  Vec r(f);
  for (auto& [p, k] : x) {
    Vec y = identity_vec(D, F.object_map[p.first]);
    for (auto c : p.second) {
      if (y.empty()) break;
      y = D.mul(y, F.xi[c]);
    }
    // an object with zero identity: the empty path still maps to zero
    r.add(y, k);
  }
  (void)C;
  return r;
}

Report functor_check(const PointedCoalgebra& C, const DgCategory& D, const MCElement& F) {
  Report r;
  r.subject = "dg functor from cobar";
  check_shape(C, D, F, r);
  if (!r.ok()) return r;
  if (!C.split()) throw NotSplit("cobar needs a split coalgebra");
  for (u32 c = 0; c < C.cells.size(); ++c) {
    Vec lhs = D.diff(F.xi[c]);
    Vec rhs = functor_value(C, D, F, cobar_d_generator(C, c));
    if (lhs != rhs) r.fail("d F(s^-1 c) != F(d s^-1 c)", C.cells[c].label);
  }
  return r;
}

bool same_mc(const MCElement& a, const MCElement& b) { return a.object_map == b.object_map && a.xi == b.xi; }

// ---- enumeration ----

namespace {

bool next_object_map(std::vector<u32>& o, u32 n) {
  std::size_t k = 0;
  while (k < o.size() && ++o[k] == n) o[k++] = 0;
  return k < o.size();
}

std::vector<std::vector<u32>> slot_bases(const PointedCoalgebra& C, const DgCategory& D, const std::vector<u32>& O) {
  std::vector<std::vector<u32>> out;
  for (auto& cell : C.cells) {
    std::vector<u32> b;
    for (auto j : D.hom(O[cell.source], O[cell.target]))
      if (D.basis[j].degree == cell.degree + 1) b.push_back(j);
    out.push_back(std::move(b));
  }
  return out;
}

template <class Fn>
void for_each_object_map(std::size_t nc, std::size_t nd, Fn fn) {
  if (nd == 0 && nc > 0) return;
  std::vector<u32> O(nc, 0);
  do {
    fn(O);
  } while (next_object_map(O, static_cast<u32>(nd)));
}

}  // namespace

std::size_t candidate_count(const PointedCoalgebra& C, const DgCategory& D, std::size_t budget) {
  if (D.field.is_rational()) throw InvalidInput("enumeration needs a finite field");
  std::size_t total = 0;
  for_each_object_map(C.objects.size(), D.objects.size(), [&](const std::vector<u32>& O) {
    if (total > budget) return;
    std::size_t dim = 0;
    for (auto& b : slot_bases(C, D, O)) dim += b.size();
    total += count_span(D.field, dim, budget);
  });
  return total;
}

void for_each_candidate(const PointedCoalgebra& C, const DgCategory& D, std::size_t budget,
                        const std::function<void(const MCElement&)>& fn) {
  std::size_t n = candidate_count(C, D, budget);
  if (n > budget) throw EnumerationTooLarge("candidates exceed budget " + std::to_string(budget) + " (" + std::to_string(n) + "+)");
  Field f = D.field;
  for_each_object_map(C.objects.size(), D.objects.size(), [&](const std::vector<u32>& O) {
    auto bases = slot_bases(C, D, O);
    std::vector<u32> flat;
    for (auto& b : bases) flat.insert(flat.end(), b.begin(), b.end());
    MCElement x;
    x.object_map = O;
    std::vector<std::uint32_t> digits(flat.size(), 0);
    std::uint32_t p = f.characteristic();
    while (true) {
      x.xi.assign(C.cells.size(), Vec(f));
      std::size_t k = 0;
      for (u32 c = 0; c < bases.size(); ++c)
        for (auto j : bases[c]) {
          if (digits[k]) x.xi[c].add(j, Scalar(f, digits[k]));
          ++k;
        }
      fn(x);
      k = 0;
      while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
      if (k == digits.size()) break;
    }
  });
}

std::vector<MCElement> mc_enumerate(const PointedCoalgebra& C, const DgCategory& D, std::size_t budget) {
  std::size_t n = candidate_count(C, D, budget);
  if (n > budget) throw EnumerationTooLarge("candidates exceed budget " + std::to_string(budget) + " (" + std::to_string(n) + "+)");
  if (!C.split()) throw NotSplit("MC equation needs a split coalgebra");
  Field f = D.field;
  u32 nc = static_cast<u32>(C.cells.size());
  // order cells so each equation can be checked as soon as its inputs are set
  std::vector<std::set<u32>> deps(nc);
  for (u32 c = 0; c < nc; ++c) {
    deps[c].insert(c);
    for (auto& [x, k] : C.d[c]) deps[c].insert(x);
    for (auto& t : C.coproduct[c]) {
      deps[c].insert(t.left);
      deps[c].insert(t.right);
    }
  }
  std::vector<u32> order(nc);
  for (u32 c = 0; c < nc; ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(), [&](u32 a, u32 b) {
    return std::make_pair(C.cells[a].degree, a) < std::make_pair(C.cells[b].degree, b);
  });
  std::vector<u32> pos(nc);
  for (u32 k = 0; k < nc; ++k) pos[order[k]] = k;
  std::vector<std::vector<u32>> check_at(nc);
  for (u32 c = 0; c < nc; ++c) {
    u32 last = 0;
    for (auto x : deps[c]) last = std::max(last, pos[x]);
    check_at[last].push_back(c);
  }
  std::vector<MCElement> out;
  for_each_object_map(C.objects.size(), D.objects.size(), [&](const std::vector<u32>& O) {
    auto bases = slot_bases(C, D, O);
    MCElement x;
    x.object_map = O;
    x.xi.assign(nc, Vec(f));
    std::function<void(u32)> rec = [&](u32 k) {
      if (k == nc) {
        out.push_back(x);
        return;
      }
      u32 c = order[k];
      for_each_vector(f, bases[c], [&](const Vec& v) {
        x.xi[c] = v;
        for (auto e : check_at[k])
          if (!mc_defect(C, D, x, e).empty()) return;
        rec(k + 1);
      });
      x.xi[c] = Vec(f);
    };
    rec(0);
  });
  std::sort(out.begin(), out.end(), [](const MCElement& a, const MCElement& b) {
    if (a.object_map != b.object_map) return a.object_map < b.object_map;
    for (std::size_t i = 0; i < a.xi.size(); ++i) {
      if (a.xi[i] == b.xi[i]) continue;
      std::vector<std::pair<u32, std::int64_t>> ka, kb;
      for (auto& [j, s] : a.xi[i]) ka.push_back({j, s.residue()});
      for (auto& [j, s] : b.xi[i]) kb.push_back({j, s.residue()});
      return ka < kb;
    }
    return false;
  });
  return out;
}

std::vector<MCElement> functor_enumerate(const PointedCoalgebra& C, const DgCategory& D, std::size_t budget) {
  std::vector<MCElement> out;
  for_each_candidate(C, D, budget, [&](const MCElement& x) {
    if (functor_check(C, D, x).ok()) out.push_back(x);
  });
  return out;
}

// ---- adjunction maps ----

MCElement phi(const MCElement& functor) { return functor; }
MCElement phi_inv(const MCElement& xi) { return xi; }

CoalgebraMorphism psi(const PointedCoalgebra& C, const DgCategory& D, const BarCoalgebra& B, const MCElement& xi) {
  int need = C.conilpotence_degree();
  if (B.word_bound < need)
    throw TruncationTooSmall("word bound " + std::to_string(B.word_bound) + " below conilpotence degree " +
                             std::to_string(need));
  Field f = D.field;
  const DgCategory& R = B.base;
  CoalgebraMorphism m;
  m.object_map = xi.object_map;
  std::vector<Vec> bar(C.cells.size(), Vec(f));
  m.a.assign(C.cells.size(), Scalar::zero(f));
  for (u32 c = 0; c < C.cells.size(); ++c) {
    Vec y = to_bar_base(B, D, xi.xi[c]);
    if (B.reduced) {
      u32 s = xi.object_map[C.cells[c].source];
      u32 id = *R.identity[s];
      m.a[c] = -y.coeff(id);
      y.erase(id);
    }
    bar[c] = std::move(y);
  }
  for (u32 c = 0; c < C.cells.size(); ++c) {
    Vec out(f);
    for (int k = 1; k <= need; ++k) {
      auto it = C.iterated(c, k);
      if (it.empty()) break;
      Scalar sg = Scalar::sign(f, k);
      for (auto& [cs, coef] : it) {
        // expand [bar(c1)|...|bar(ck)] multilinearly
        std::vector<std::pair<std::vector<u32>, Scalar>> words{{{}, coef * sg}};
        for (auto ci : cs) {
          std::vector<std::pair<std::vector<u32>, Scalar>> next;
          for (auto& [w, s] : words)
            for (auto& [b, k2] : bar[ci]) {
              auto u = w;
              u.push_back(b);
              next.push_back({std::move(u), s * k2});
            }
          words = std::move(next);
        }
        for (auto& [w, s] : words) {
          auto wi = B.word_index.find(w);
          if (wi == B.word_index.end()) throw TruncationTooSmall("word outside the bar truncation: " + word_label(R, w));
          out.add(wi->second, s);
        }
      }
    }
    m.f.push_back(std::move(out));
  }
  return m;
}

MCElement psi_inv(const PointedCoalgebra& C, const DgCategory& D, const BarCoalgebra& B, const CoalgebraMorphism& m) {
  Field f = D.field;
  MCElement x;
  x.object_map = m.object_map;
  for (u32 c = 0; c < C.cells.size(); ++c) {
    Vec y(f);
    for (auto& [j, k] : m.f[c])
      if (B.words[j].size() == 1) y.add(B.words[j][0], -k);
    if (!m.a[c].is_zero()) y.add(identity_vec(B.base, m.object_map[C.cells[c].source]), -m.a[c]);
    x.xi.push_back(from_bar_base(B, D, y));
  }
  return x;
}

std::vector<CoalgebraMorphism> bar_morphism_enumerate(const PointedCoalgebra& C, const BarCoalgebra& B,
                                                      std::size_t budget) {
  return morphism_enumerate(C, B.coalgebra, budget);
}

std::vector<CoalgebraMorphism> morphism_enumerate(const PointedCoalgebra& C, const PointedCoalgebra& T,
                                                  std::size_t budget) {
  Field f = T.field;
  if (f.is_rational()) throw InvalidInput("enumeration needs a finite field");
  struct Slot {
    std::vector<u32> cells;
    bool a;
  };
  auto slots_for = [&](const std::vector<u32>& O) {
    std::vector<Slot> out;
    for (auto& cell : C.cells) {
      Slot s;
      u32 os = O[cell.source], ot = O[cell.target];
      for (u32 j = 0; j < T.cells.size(); ++j)
        if (T.cells[j].source == os && T.cells[j].target == ot && T.cells[j].degree == cell.degree) s.cells.push_back(j);
      s.a = cell.degree == -1 && os == ot;
      out.push_back(std::move(s));
    }
    return out;
  };
  std::size_t total = 0;
  for_each_object_map(C.objects.size(), T.objects.size(), [&](const std::vector<u32>& O) {
    if (total > budget) return;
    std::size_t dim = 0;
    for (auto& s : slots_for(O)) dim += s.cells.size() + (s.a ? 1 : 0);
    total += count_span(f, dim, budget);
  });
  if (total > budget)
    throw EnumerationTooLarge("candidates exceed budget " + std::to_string(budget) + " (" + std::to_string(total) + "+)");
  CurvedAlgebra Cd = dualize(C), Td = dualize(T);
  std::vector<CoalgebraMorphism> out;
  std::uint32_t p = f.characteristic();
  for_each_object_map(C.objects.size(), T.objects.size(), [&](const std::vector<u32>& O) {
    auto slots = slots_for(O);
    std::size_t dim = 0;
    for (auto& s : slots) dim += s.cells.size() + (s.a ? 1 : 0);
    std::vector<std::uint32_t> digits(dim, 0);
    while (true) {
      CoalgebraMorphism m;
      m.object_map = O;
      std::size_t k = 0;
      for (auto& s : slots) {
        Vec v(f);
        for (auto j : s.cells) {
          if (digits[k]) v.add(j, Scalar(f, digits[k]));
          ++k;
        }
        Scalar a = Scalar::zero(f);
        if (s.a) a = Scalar(f, digits[k++]);
        m.f.push_back(std::move(v));
        m.a.push_back(a);
      }
      if (validate_morphism(C, T, Cd, Td, m).ok()) out.push_back(std::move(m));
      k = 0;
      while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
      if (k == digits.size()) break;
    }
  });
  return out;
}

MCElement tautological(const BarCoalgebra& B, const DgCategory& D) {
  MCElement x;
  for (u32 s = 0; s < D.objects.size(); ++s) x.object_map.push_back(s);
  for (auto& w : B.words) {
    Vec y(D.field);
    if (w.size() == 1) y.add(w[0], -Scalar::one(D.field));
    x.xi.push_back(from_bar_base(B, D, y));
  }
  return x;
}

MCElement cobar_tautological(const PointedCoalgebra& C, const Cobar& O) {
  MCElement x;
  for (u32 s = 0; s < C.objects.size(); ++s) x.object_map.push_back(s);
  for (u32 c = 0; c < C.cells.size(); ++c)
    x.xi.push_back(O.to_basis(PVec(C.field, PathKey{C.cells[c].source, {c}}, Scalar::one(C.field))));
  return x;
}

// ---- counit ----

namespace {

// degrees of (s,t) reached by words longer than W; lengths are explored up
// to a margin past W+1 (generator degrees can cancel)
std::map<std::pair<u32, u32>, std::set<int>> long_word_degrees(const PointedCoalgebra& C, int W) {
  int maxdeg = 0;
  for (auto& c : C.cells) maxdeg = std::max(maxdeg, std::abs(c.degree + 1));
  int extra = 2 * static_cast<int>(C.objects.size()) * (2 * maxdeg + 1) + 2;
  std::map<std::pair<u32, u32>, std::set<int>> out;
  std::set<std::tuple<u32, u32, int>> reach;
  for (u32 s = 0; s < C.objects.size(); ++s) reach.insert({s, s, 0});
  for (int len = 1; len <= W + 1 + extra; ++len) {
    std::set<std::tuple<u32, u32, int>> next;
    for (auto& [s, t, deg] : reach)
      for (u32 c = 0; c < C.cells.size(); ++c)
        if (C.cells[c].source == t) next.insert({s, C.cells[c].target, deg + C.cells[c].degree + 1});
    reach = std::move(next);
    if (reach.empty()) break;
    if (len > W)
      for (auto& [s, t, deg] : reach) out[{s, t}].insert(deg);
  }
  return out;
}

struct Degreewise {
  std::map<int, std::size_t> dims;
  std::map<int, std::vector<Vec>> cycles;  // over hom-space positions
  std::vector<u32> idx;
};

// homology of a hom space degree by degree, using only d out of n-1 and n
Degreewise local_homology(const DgCategory& A, u32 s, u32 t, const std::set<int>& degrees) {
  Degreewise out;
  out.idx = A.hom(s, t);
  std::map<u32, u32> pos;
  for (u32 k = 0; k < out.idx.size(); ++k) pos[out.idx[k]] = k;
  auto cols_in = [&](int n, std::vector<u32>& order) {
    std::vector<Vec> cols(out.idx.size(), Vec(A.field));
    for (u32 k = 0; k < out.idx.size(); ++k)
      if (A.basis[out.idx[k]].degree == n) {
        order.push_back(k);
        for (auto& [j, c] : A.d[out.idx[k]]) cols[k].add(pos.at(j), c);
      }
    return cols;
  };
  for (int n : degrees) {
    std::vector<u32> on, om;
    auto cn = cols_in(n, on);
    auto cm = cols_in(n - 1, om);
    KernelRank kn = kernel_of_columns(A.field, cn, on);
    KernelRank km = kernel_of_columns(A.field, cm, om);
    out.dims[n] = kn.kernel.size() - km.rank;
    out.cycles[n] = kn.kernel;
  }
  return out;
}

}  // namespace

CounitResult counit_check(const DgCategory& D, int W, int lo, int hi) {
  CounitResult res;
  res.report.subject = "counit Omega B D -> D";
  if (W < 1) throw InvalidInput("counit check needs word bound >= 1");
  Report vd = validate_dg_category(D);
  if (!vd.ok()) throw InvalidInput("not a dg category: " + vd.failures.front().check);
  Field f = D.field;
  BarCoalgebra B = bar_reduced(D, W);
  Cobar O = cobar(B.coalgebra, W);
  auto longW = long_word_degrees(B.coalgebra, W);
  BarCoalgebra Bm = bar_reduced(D, W - 1);
  Cobar Om = cobar(Bm.coalgebra, W - 1);
  auto longWm = long_word_degrees(Bm.coalgebra, W - 1);
  // only cobar word length is flagged; bar words above W are guarded by
  // comparing against W-1
  MCElement eps = tautological(B, D);
  res.report.merge(functor_check(B.coalgebra, D, eps), "counit functor: ");
  auto exact_at = [](const std::map<std::pair<u32, u32>, std::set<int>>& L, u32 s, u32 t, int n) {
    auto it = L.find({s, t});
    if (it == L.end()) return true;
    return !it->second.count(n - 1) && !it->second.count(n) && !it->second.count(n + 1);
  };
  std::set<int> window;
  for (int n = lo; n <= hi; ++n) window.insert(n);
  for (u32 s = 0; s < D.objects.size(); ++s)
    for (u32 t = 0; t < D.objects.size(); ++t) {
      auto HD = homology_dims(hom_complex(D, s, t));
      auto HO = local_homology(O.category, s, t, window);
      auto HOm = local_homology(Om.category, s, t, window);
      // boundaries of D(s,t) by degree, for the induced map
      auto idxD = D.hom(s, t);
      std::map<u32, u32> posD;
      for (u32 k = 0; k < idxD.size(); ++k) posD[idxD[k]] = k;
      for (int n : window) {
        std::string where = "(" + D.objects[s] + "," + D.objects[t] + ") degree " + std::to_string(n);
        if (!exact_at(longW, s, t, n)) {
          res.inexact.push_back(where);
          continue;
        }
        std::size_t hd = HD.count(n) ? HD[n] : 0;
        std::size_t ho = HO.dims[n];
        res.table[{s, t}][n] = {ho, hd};
        if (ho != hd) {
          res.equal = false;
          res.report.fail("homology dimensions differ", where + ": " + std::to_string(ho) + " vs " + std::to_string(hd));
        }
        if (exact_at(longWm, s, t, n) && HOm.dims[n] != ho) {
          res.stabilized = false;
          res.report.fail("homology not stable in W", where);
        }
        // induced map: rank of eps(Z_n) modulo boundaries of D
        Echelon E(f);
        for (auto k : idxD)
          if (D.basis[k].degree == n - 1) E.insert(D.diff(D.e(k)));
        std::size_t base = E.rank();
        for (auto& z : HO.cycles[n]) {
          PVec path(f);
          for (auto& [k, c] : z) path.add(O.paths[HO.idx[k]], c);
          E.insert(functor_value(B.coalgebra, D, eps, path));
        }
        std::size_t image = E.rank() - base;
        if (image != hd || image != ho) {
          res.quasi_iso = false;
          res.report.fail("counit not an isomorphism on homology", where);
        }
      }
    }
  return res;
}

namespace {

std::string mc_key(const MCElement& x) {
  std::string s;
  for (u32 o : x.object_map) s += std::to_string(o) + ",";
  for (auto& v : x.xi) {
    s += "|";
    for (auto& [i, c] : v) s += std::to_string(i) + ":" + c.str() + ";";
  }
  return s;
}

}  // namespace

RoundTrip adjunction_roundtrip(const PointedCoalgebra& C, const DgCategory& D, std::size_t budget) {
  RoundTrip out;
  out.report.subject = "adjunction round trip";
  out.word_bound = std::max(2, C.conilpotence_degree());
  auto mc = mc_enumerate(C, D, budget);
  auto fun = functor_enumerate(C, D, budget);
  auto B = bar_reduced(D, out.word_bound);
  auto mor = bar_morphism_enumerate(C, B, budget);
  out.mc = mc.size();
  out.functors = fun.size();
  out.morphisms = mor.size();
  if (mc.size() != fun.size() || mc.size() != mor.size())
    out.report.fail("cardinalities differ", std::to_string(mc.size()) + " MC, " + std::to_string(fun.size()) +
                                                " functors, " + std::to_string(mor.size()) + " morphisms");
  std::set<std::string> keys, back;
  for (std::size_t k = 0; k < mc.size(); ++k) {
    auto& x = mc[k];
    keys.insert(mc_key(x));
    std::string w = "MC element #" + std::to_string(k);
    auto m = psi(C, D, B, x);
    if (!validate_morphism(C, B.coalgebra, m).ok()) out.report.fail("psi(x) not a curved morphism", w);
    if (!same_mc(psi_inv(C, D, B, m), x)) out.report.fail("psi^-1 psi != id", w);
    if (!same_mc(phi(phi_inv(x)), x)) out.report.fail("phi phi^-1 != id", w);
    if (!functor_check(C, D, phi_inv(x)).ok()) out.report.fail("phi^-1(x) not a functor", w);
  }
  for (std::size_t k = 0; k < mor.size(); ++k) {
    auto key = mc_key(psi_inv(C, D, B, mor[k]));
    if (!keys.count(key)) out.report.fail("psi^-1 of a morphism is not an enumerated MC element", "morphism #" + std::to_string(k));
    back.insert(key);
  }
  if (out.report.ok() && back != keys) out.report.fail("psi^-1 not onto the MC set", "");
  return out;
}

}  // namespace koszul
