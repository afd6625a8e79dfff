#include "koszul/nerve.hpp"

#include <algorithm>

namespace koszul {

namespace {

std::string subset_name(const std::vector<int>& I) {
  std::string s;
  for (int v : I) s += std::to_string(v);
  return s;
}

std::vector<int> parse_subset(const std::string& label) {
  std::vector<int> I;
  for (char ch : label) I.push_back(ch - '0');
  return I;
}

Scalar eps(Field f, int m) { return -Scalar::sign(f, m * (m + 1) / 2); }

Vec identity_of(const DgCategory& D, u32 s) {
  Vec v(D.field);
  if (D.identity[s]) v.add(*D.identity[s], Scalar::one(D.field));
  return v;
}

const Vec& get(const NerveSimplex& x, const std::vector<int>& I) {
  auto it = x.f.find(I);
  if (it == x.f.end()) throw IncompleteCandidate("missing f_" + subset_name(I));
  return it->second;
}

Vec lurie_defect(const DgCategory& D, const NerveSimplex& x, const std::vector<int>& I) {
  Field f = D.field;
  int m = static_cast<int>(I.size()) - 2;
  Vec rhs(f);
  for (int j = 1; j <= m; ++j) {
    int pos = m + 1 - j;  // i_1 is the largest interior element
    int ij = I[pos];
    std::vector<int> drop = I;
    drop.erase(drop.begin() + pos);
    std::vector<int> lower(I.begin(), I.begin() + pos + 1), upper(I.begin() + pos, I.end());
    int dl = -(static_cast<int>(lower.size()) - 2), du = -(static_cast<int>(upper.size()) - 2);
    Vec comp = D.mul(get(x, lower), get(x, upper)).scaled(Scalar::sign(f, dl * du));
    Scalar sj = Scalar::sign(f, j);
    rhs.add(get(x, drop), sj);
    rhs.add(comp, -sj);
    (void)ij;
  }
  return D.diff(get(x, I)) - rhs;
}

void check_slots(const DgCategory& D, const NerveSimplex& x, Report& r) {
  if (static_cast<int>(x.objects.size()) != x.n + 1) throw IncompleteCandidate("wrong number of vertex objects");
  for (auto o : x.objects)
    if (o >= D.objects.size()) throw IncompleteCandidate("vertex object out of range");
  for (auto& I : nerve_subsets(x.n)) {
    const Vec& v = get(x, I);
    for (auto& [j, c] : v) {
      const Cell& b = D.basis[j];
      if (b.source != x.objects[I.front()] || b.target != x.objects[I.back()] ||
          b.degree != -(static_cast<int>(I.size()) - 2))
        r.fail("f_I outside hom(X_min, X_max) in degree 2-|I|", "f_" + subset_name(I) + " -> " + b.label);
    }
  }
  if (x.f.size() != nerve_subsets(x.n).size()) throw IncompleteCandidate("extra entries in candidate");
}

}  // namespace

std::vector<std::vector<int>> nerve_subsets(int n) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << (n + 1)); ++mask) {
    std::vector<int> s;
    for (int v = 0; v <= n; ++v)
      if (mask >> v & 1) s.push_back(v);
    if (s.size() >= 2) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  return out;
}

Report nerve_check_lurie(const DgCategory& D, const NerveSimplex& x) {
  Report r;
  r.subject = "nerve simplex (Lurie)";
  check_slots(D, x, r);
  if (!r.ok()) return r;
  for (auto& I : nerve_subsets(x.n)) {
    Vec e = lurie_defect(D, x, I);
    if (!e.empty()) r.fail("df_I != sum (-1)^j (f_{I-i_j} - f_upper o f_lower)", "I=" + subset_name(I) + " : " + show(D, e));
  }
  return r;
}

MCElement nerve_to_mc(const DgCategory& D, const NerveSimplex& x, const PointedCoalgebra& C, bool sign_error) {
  Field f = D.field;
  MCElement xi;
  for (auto& o : C.objects) xi.object_map.push_back(x.objects.at(std::stoi(o)));
  for (auto& c : C.cells) {
    auto I = parse_subset(c.label);
    int m = static_cast<int>(I.size()) - 2;
    Scalar s = eps(f, m);
    if (sign_error && m == 1) s = -s;
    xi.xi.push_back(get(x, I).scaled(s));
  }
  return xi;
}

NerveSimplex nerve_from_mc(const DgCategory& D, int n, const MCElement& xi, const PointedCoalgebra& C) {
  Field f = D.field;
  NerveSimplex x;
  x.n = n;
  x.objects.assign(n + 1, 0);
  for (u32 k = 0; k < C.objects.size(); ++k) x.objects[std::stoi(C.objects[k])] = xi.object_map[k];
  for (u32 c = 0; c < C.cells.size(); ++c) {
    auto I = parse_subset(C.cells[c].label);
    x.f[I] = xi.xi[c].scaled(eps(f, static_cast<int>(I.size()) - 2));
  }
  return x;
}

Report nerve_check_mc(const DgCategory& D, const NerveSimplex& x, bool sign_error) {
  Report r;
  r.subject = "nerve simplex (MC)";
  check_slots(D, x, r);
  if (!r.ok()) return r;
  PointedCoalgebra C = twisted_chains(standard_simplex(x.n), D.field);
  r.merge(mc_check(C, D, nerve_to_mc(D, x, C, sign_error)));
  return r;
}

MCElement mc_pullback(const DgCategory& D, const PointedCoalgebra& source, const MCElement& xi,
                      const CoalgebraMorphism& m) {
  Field f = D.field;
  MCElement out;
  for (auto o : m.object_map) out.object_map.push_back(xi.object_map[o]);
  for (u32 c = 0; c < source.cells.size(); ++c) {
    Vec v(f);
    for (auto& [j, k] : m.f[c]) v.add(xi.xi[j], k);
    if (!m.a[c].is_zero()) v.add(identity_of(D, out.object_map[source.cells[c].source]), -m.a[c]);
    out.xi.push_back(std::move(v));
  }
  return out;
}

NerveSimplex nerve_act_lurie(const DgCategory& D, const std::vector<int>& alpha, const NerveSimplex& x) {
  int m = static_cast<int>(alpha.size()) - 1;
  NerveSimplex y;
  y.n = m;
  for (int a : alpha) y.objects.push_back(x.objects.at(a));
  for (auto& J : nerve_subsets(m)) {
    std::vector<int> img;
    for (int j : J) img.push_back(alpha[j]);
    std::vector<int> uniq = img;
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    if (uniq.size() == img.size())
      y.f[J] = get(x, img);
    else if (J.size() == 2)
      y.f[J] = identity_of(D, x.objects[img[0]]);
    else
      y.f[J] = Vec(D.field);
  }
  return y;
}

NerveSimplex nerve_act_mc(const DgCategory& D, const std::vector<int>& alpha, const NerveSimplex& x) {
  int m = static_cast<int>(alpha.size()) - 1;
  int n = x.n;
  Field f = D.field;
  auto Km = standard_simplex(m), Kn = standard_simplex(n);
  auto Cm = twisted_chains(Km, f), Cn = twisted_chains(Kn, f);
  auto g = chains_on_map(Km, Kn, simplex_map(m, n, alpha), f);
  MCElement xi = nerve_to_mc(D, x, Cn);
  return nerve_from_mc(D, m, mc_pullback(D, Cm, xi, g), Cm);
}

NerveSimplex nerve_structure_map(const DgCategory& D, const std::vector<int>& alpha, const NerveSimplex& x) {
  NerveSimplex a = nerve_act_lurie(D, alpha, x);
  NerveSimplex b = nerve_act_mc(D, alpha, x);
  if (a.objects != b.objects) throw ComparisonFailure("structure maps disagree on vertices");
  for (auto& [J, v] : a.f)
    if (b.f.at(J) != v)
      throw ComparisonFailure("structure maps disagree at J=" + subset_name(J) + ": " + show(D, v) + " vs " +
                              show(D, b.f.at(J)));
  return a;
}

// ---- enumeration ----

namespace {

template <class Fn>
void for_each_vertex_map(int n, std::size_t nd, Fn fn) {
  if (nd == 0) return;
  std::vector<u32> o(n + 1, 0);
  while (true) {
    fn(o);
    std::size_t k = 0;
    while (k < o.size() && ++o[k] == nd) o[k++] = 0;
    if (k == o.size()) break;
  }
}

std::vector<u32> slot(const DgCategory& D, const std::vector<u32>& X, const std::vector<int>& I) {
  std::vector<u32> b;
  for (auto j : D.hom(X[I.front()], X[I.back()]))
    if (D.basis[j].degree == -(static_cast<int>(I.size()) - 2)) b.push_back(j);
  return b;
}

void sort_simplices(std::vector<NerveSimplex>& v, const DgCategory& D) {
  std::vector<std::pair<std::string, NerveSimplex>> keyed;
  for (auto& x : v) keyed.push_back({show(D, x), x});
  std::sort(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first < b.first; });
  v.clear();
  for (auto& [k, x] : keyed) v.push_back(std::move(x));
}

}  // namespace

std::size_t nerve_candidate_count(const DgCategory& D, int n, std::size_t budget) {
  if (D.field.is_rational()) throw InvalidInput("enumeration needs a finite field");
  std::size_t total = 0;
  auto subsets = nerve_subsets(n);
  for_each_vertex_map(n, D.objects.size(), [&](const std::vector<u32>& X) {
    if (total > budget) return;
    std::size_t dim = 0;
    for (auto& I : subsets) dim += slot(D, X, I).size();
    total += count_span(D.field, dim, budget);
  });
  return total;
}

void for_each_nerve_candidate(const DgCategory& D, int n, std::size_t budget,
                              const std::function<void(const NerveSimplex&)>& fn) {
  std::size_t count = nerve_candidate_count(D, n, budget);
  if (count > budget)
    throw EnumerationTooLarge("candidates exceed budget " + std::to_string(budget) + " (" + std::to_string(count) + "+)");
  Field f = D.field;
  std::uint32_t p = f.characteristic();
  auto subsets = nerve_subsets(n);
  for_each_vertex_map(n, D.objects.size(), [&](const std::vector<u32>& X) {
    std::vector<std::vector<u32>> slots;
    std::size_t dim = 0;
    for (auto& I : subsets) {
      slots.push_back(slot(D, X, I));
      dim += slots.back().size();
    }
    std::vector<std::uint32_t> digits(dim, 0);
    while (true) {
      NerveSimplex x;
      x.n = n;
      x.objects = X;
      std::size_t k = 0;
      for (std::size_t s = 0; s < subsets.size(); ++s) {
        Vec v(f);
        for (auto j : slots[s]) {
          if (digits[k]) v.add(j, Scalar(f, digits[k]));
          ++k;
        }
        x.f[subsets[s]] = std::move(v);
      }
      fn(x);
      k = 0;
      while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
      if (k == digits.size()) break;
    }
  });
}

std::vector<NerveSimplex> nerve_enumerate_lurie(const DgCategory& D, int n, std::size_t budget) {
  std::size_t count = nerve_candidate_count(D, n, budget);
  if (count > budget)
    throw EnumerationTooLarge("candidates exceed budget " + std::to_string(budget) + " (" + std::to_string(count) + "+)");
  Field f = D.field;
  auto subsets = nerve_subsets(n);
  std::vector<NerveSimplex> out;
  if (n == 0) {
    for (u32 o = 0; o < D.objects.size(); ++o) out.push_back(NerveSimplex{0, {o}, {}});
    return out;
  }
  for_each_vertex_map(n, D.objects.size(), [&](const std::vector<u32>& X) {
    NerveSimplex x;
    x.n = n;
    x.objects = X;
    for (auto& I : subsets) x.f[I] = Vec(f);
    std::function<void(std::size_t)> rec = [&](std::size_t s) {
      if (s == subsets.size()) {
        out.push_back(x);
        return;
      }
      const auto& I = subsets[s];
      for_each_vector(f, slot(D, X, I), [&](const Vec& v) {
        x.f[I] = v;
        if (lurie_defect(D, x, I).empty()) rec(s + 1);
      });
      x.f[I] = Vec(f);
    };
    rec(0);
  });
  sort_simplices(out, D);
  return out;
}

std::vector<NerveSimplex> nerve_enumerate_mc(const DgCategory& D, int n, std::size_t budget) {
  PointedCoalgebra C = twisted_chains(standard_simplex(n), D.field);
  std::vector<NerveSimplex> out;
  for (auto& xi : mc_enumerate(C, D, budget)) out.push_back(nerve_from_mc(D, n, xi, C));
  sort_simplices(out, D);
  return out;
}

std::vector<NerveSimplex> poset_functors(const DgCategory& D, int n, std::size_t budget) {
  Field f = D.field;
  std::vector<std::vector<int>> edges;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) edges.push_back({i, j});
  std::vector<NerveSimplex> out;
  std::size_t total = 0;
  for_each_vertex_map(n, D.objects.size(), [&](const std::vector<u32>& X) {
    std::size_t dim = 0;
    for (auto& e : edges) dim += slot(D, X, e).size();
    total += count_span(f, dim, budget);
  });
  if (total > budget) throw EnumerationTooLarge("functor candidates exceed budget");
  for_each_vertex_map(n, D.objects.size(), [&](const std::vector<u32>& X) {
    std::vector<u32> flat;
    std::vector<std::size_t> owner;
    for (std::size_t e = 0; e < edges.size(); ++e)
      for (auto j : slot(D, X, edges[e])) {
        flat.push_back(j);
        owner.push_back(e);
      }
    std::vector<u32> positions(flat.size());
    for (u32 k = 0; k < flat.size(); ++k) positions[k] = k;
    for_each_vector(f, positions, [&](const Vec& coords) {
      std::map<std::pair<int, int>, Vec> F;
      for (auto& e : edges) F[{e[0], e[1]}] = Vec(f);
      for (auto& [k, c] : coords) F[{edges[owner[k]][0], edges[owner[k]][1]}].add(flat[k], c);
      for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          for (int k = j + 1; k <= n; ++k)
            if (D.mul(F[{i, j}], F[{j, k}]) != F[{i, k}]) return;
      NerveSimplex x;
      x.n = n;
      x.objects = X;
      for (auto& I : nerve_subsets(n)) x.f[I] = I.size() == 2 ? F[{I[0], I[1]}] : Vec(f);
      out.push_back(std::move(x));
    });
  });
  sort_simplices(out, D);
  return out;
}

std::vector<std::vector<int>> monotone_maps(int m, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(m + 1, 0);
  std::function<void(int, int)> rec = [&](int k, int lo) {
    if (k > m) {
      out.push_back(a);
      return;
    }
    for (int v = lo; v <= n; ++v) {
      a[k] = v;
      rec(k + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

Report F_level_check(const PointedCoalgebra& C, int n, const CoalgebraMorphism& m) {
  return validate_morphism(twisted_chains(standard_simplex(n), C.field), C, m);
}

std::vector<CoalgebraMorphism> F_level_enumerate(const PointedCoalgebra& C, int n, std::size_t budget) {
  return morphism_enumerate(twisted_chains(standard_simplex(n), C.field), C, budget);
}

Cobar L_functor(const FiniteSimplicialSet& K, int W, Field f) {
  Report r = validate_sset(K);
  if (!r.ok()) throw NotSimplicial(r.failures.front().check + " [" + r.failures.front().witness + "]");
  return cobar(twisted_chains(K, f), W);
}

std::string show(const DgCategory& D, const NerveSimplex& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.objects.size(); ++i) s += (i ? "," : "") + D.objects[x.objects[i]];
  s += ")";
  for (auto& [I, v] : x.f)
    if (!v.empty()) s += " f_" + subset_name(I) + "=" + show(D, v);
  return s;
}

}  // namespace koszul
