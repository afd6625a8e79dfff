#include "koszul/dgcat.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace koszul {

void Algebra::reindex() {
  index_.clear();
  object_index_.clear();
  for (u32 i = 0; i < basis.size(); ++i)
    if (!index_.emplace(basis[i].label, i).second) throw InvalidInput("duplicate basis label '" + basis[i].label + "'");
  for (u32 i = 0; i < objects.size(); ++i)
    if (!object_index_.emplace(objects[i], i).second) throw InvalidInput("duplicate object '" + objects[i] + "'");
  if (d.size() != basis.size()) d.resize(basis.size(), Vec(field));
}

std::optional<u32> Algebra::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

u32 Algebra::index(const std::string& label) const {
  auto i = find(label);
  if (!i) throw InvalidInput("unknown basis label '" + label + "'");
  return *i;
}

std::optional<u32> Algebra::find_object(const std::string& label) const {
  auto it = object_index_.find(label);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

u32 Algebra::object(const std::string& label) const {
  auto i = find_object(label);
  if (!i) throw UnknownObject("unknown object '" + label + "'");
  return *i;
}

const Vec* Algebra::mul_basis(u32 a, u32 b) const {
  auto it = product.find({a, b});
  return it == product.end() ? nullptr : &it->second;
}

Vec Algebra::mul(const Vec& x, const Vec& y) const {
  Vec r(field);
  for (auto& [a, ca] : x)
    for (auto& [b, cb] : y)
      if (auto p = mul_basis(a, b)) r.add(*p, ca * cb);
  return r;
}

Vec Algebra::diff(const Vec& x) const {
  Vec r(field);
  for (auto& [a, c] : x) r.add(d[a], c);
  return r;
}

std::vector<u32> Algebra::hom(u32 s, u32 t) const {
  std::vector<u32> r;
  for (u32 i = 0; i < basis.size(); ++i)
    if (basis[i].source == s && basis[i].target == t) r.push_back(i);
  std::sort(r.begin(), r.end(), [&](u32 a, u32 b) { return basis[a].label < basis[b].label; });
  return r;
}

bool Algebra::is_cut(u32 s, u32 t, int deg) const {
  if (!length_lowering) return false;
  auto it = cut.find({s, t});
  return it != cut.end() && it->second.count(deg);
}

GradedSpace Algebra::space() const {
  std::vector<std::string> l;
  std::vector<int> g;
  for (auto& c : basis) {
    l.push_back(c.label);
    g.push_back(c.degree);
  }
  return GradedSpace(std::move(l), std::move(g));
}

void DgCategory::set_unit_from_identities() {
  unit = Vec(field);
  for (auto& id : identity)
    if (id) unit.add(*id, Scalar::one(field));
}

std::string show(const Algebra& A, const Vec& v) {
  if (v.empty()) return "0";
  std::string s;
  for (auto& [i, c] : v) {
    if (!s.empty()) s += " + ";
    if (!c.is_one()) s += c.str() + "*";
    s += A.basis[i].label;
  }
  return s;
}

Scalar Retract::value(const DgCategory& D, u32 i) const {
  const Cell& c = D.basis[i];
  if (c.source != c.target || c.source >= v.size()) return Scalar::zero(D.field);
  return v[c.source].coeff(i);
}

void check_components(const Algebra& A, Report& r) {
  for (u32 i = 0; i < A.basis.size(); ++i) {
    const Cell& c = A.basis[i];
    if (c.source >= A.objects.size() || c.target >= A.objects.size())
      r.fail("basis element in unknown component", c.label);
    for (auto& [j, x] : A.d[i]) {
      const Cell& o = A.basis[j];
      if (o.source != c.source || o.target != c.target || o.degree != c.degree + 1)
        r.fail("d leaves component or degree", c.label + " -> " + o.label);
    }
  }
  for (auto& [ab, v] : A.product) {
    const Cell& a = A.basis[ab.first];
    const Cell& b = A.basis[ab.second];
    if (a.target != b.source) {
      r.fail("product of non-composable pair", a.label + "," + b.label);
      continue;
    }
    for (auto& [j, x] : v) {
      const Cell& o = A.basis[j];
      if (o.source != a.source || o.target != b.target || o.degree != a.degree + b.degree)
        r.fail("product leaves component or degree", a.label + "," + b.label + " -> " + o.label);
    }
  }
  for (auto& [j, x] : A.unit) {
    const Cell& o = A.basis[j];
    if (o.source != o.target || o.degree != 0) r.fail("unit not in degree-0 endomorphisms", o.label);
  }
}

namespace {

struct Adjacency {
  std::vector<std::vector<u32>> right;  // right[a] = b with (a,b) in table
  std::vector<std::vector<u32>> left;
  explicit Adjacency(const Algebra& A) : right(A.basis.size()), left(A.basis.size()) {
    for (auto& [ab, v] : A.product) {
      right[ab.first].push_back(ab.second);
      left[ab.second].push_back(ab.first);
    }
  }
};

}  // namespace

void check_associativity(const Algebra& A, Report& r) {
  Adjacency adj(A);
  std::set<std::tuple<u32, u32, u32>> triples;
  for (auto& [ab, v] : A.product)
    for (auto& [x, c] : v)
      for (u32 cc : adj.right[x]) triples.insert({ab.first, ab.second, cc});
  for (auto& [bc, v] : A.product)
    for (auto& [y, c] : v)
      for (u32 a : adj.left[y]) triples.insert({a, bc.first, bc.second});
  for (auto& [a, b, c] : triples) {
    if (A.basis[a].target != A.basis[b].source || A.basis[b].target != A.basis[c].source) continue;
    Vec lhs = A.mul(A.mul(A.e(a), A.e(b)), A.e(c));
    Vec rhs = A.mul(A.e(a), A.mul(A.e(b), A.e(c)));
    if (lhs != rhs)
      r.fail("associativity", A.basis[a].label + "," + A.basis[b].label + "," + A.basis[c].label);
  }
}

void check_unit(const Algebra& A, Report& r) {
  for (u32 i = 0; i < A.basis.size(); ++i) {
    Vec x = A.e(i);
    if (A.mul(A.unit, x) != x) r.fail("left unit", A.basis[i].label);
    if (A.mul(x, A.unit) != x) r.fail("right unit", A.basis[i].label);
  }
  if (!A.diff(A.unit).empty()) r.fail("d(unit) != 0", show(A, A.diff(A.unit)));
}

void check_leibniz(const Algebra& A, Report& r) {
  Adjacency adj(A);
  std::set<std::pair<u32, u32>> pairs;
  for (auto& [ab, v] : A.product) pairs.insert(ab);
  for (u32 a = 0; a < A.basis.size(); ++a)
    for (auto& [x, c] : A.d[a]) {
      for (u32 b : adj.right[x]) pairs.insert({a, b});
      for (u32 z : adj.left[x]) pairs.insert({z, a});
    }
  for (auto& [a, b] : pairs) {
    const Cell& ca = A.basis[a];
    const Cell& cb = A.basis[b];
    if (ca.target != cb.source) continue;
    if (A.is_cut(ca.source, cb.target, ca.degree + cb.degree)) continue;
    Vec lhs = A.diff(A.mul(A.e(a), A.e(b)));
    Vec rhs = A.mul(A.d[a], A.e(b));
    rhs.add(A.mul(A.e(a), A.d[b]), Scalar::sign(A.field, ca.degree));
    if (lhs != rhs) r.fail("Leibniz", ca.label + "," + cb.label);
  }
}

Report validate_dg_category(const DgCategory& D) {
  Report r;
  r.subject = "dg category";
  check_components(D, r);
  if (D.identity.size() != D.objects.size()) r.fail("identity table size", std::to_string(D.identity.size()));
  for (u32 s = 0; s < D.identity.size() && s < D.objects.size(); ++s) {
    if (!D.identity[s]) continue;
    const Cell& c = D.basis[*D.identity[s]];
    if (c.source != s || c.target != s || c.degree != 0) r.fail("identity not in degree-0 End", D.objects[s]);
    if (!D.d[*D.identity[s]].empty()) r.fail("d(identity) != 0", D.objects[s]);
  }
  if (!r.ok()) return r;
  check_unit(D, r);
  check_associativity(D, r);
  check_leibniz(D, r);
  for (u32 i = 0; i < D.basis.size(); ++i) {
    const Cell& c = D.basis[i];
    if (D.is_cut(c.source, c.target, c.degree + 1)) continue;
    if (!D.diff(D.d[i]).empty()) r.fail("d^2 != 0", c.label);
  }
  return r;
}

Retract default_retract(const DgCategory& D) {
  Retract v;
  for (u32 s = 0; s < D.objects.size(); ++s) {
    if (s >= D.identity.size() || !D.identity[s])
      throw NotSplit("object '" + D.objects[s] + "' has zero identity");
    v.v.push_back(Vec(D.field, *D.identity[s], Scalar::one(D.field)));
  }
  return v;
}

Report validate_retract(const DgCategory& D, const Retract& v) {
  Report r;
  r.subject = "retract";
  if (v.v.size() != D.objects.size()) {
    r.fail("one functional per object", std::to_string(v.v.size()));
    return r;
  }
  for (u32 s = 0; s < D.objects.size(); ++s) {
    if (!D.identity[s]) {
      r.fail("zero identity", D.objects[s]);
      continue;
    }
    for (auto& [i, c] : v.v[s]) {
      const Cell& x = D.basis[i];
      if (x.source != s || x.target != s || x.degree != 0) r.fail("retract outside End^0", x.label);
    }
    if (!v.v[s].coeff(*D.identity[s]).is_one()) r.fail("v(identity) != 1", D.objects[s]);
  }
  return r;
}

DgCategory free_category(Field f, const std::vector<std::string>& objects, const std::vector<ArrowSpec>& arrows,
                         std::optional<int> word_bound) {
  DgCategory D;
  D.field = f;
  D.objects = objects;
  std::map<std::string, u32> obj;
  for (u32 i = 0; i < objects.size(); ++i)
    if (!obj.emplace(objects[i], i).second) throw InvalidInput("duplicate object '" + objects[i] + "'");
  std::map<std::string, u32> arrow_index;
  struct A {
    u32 s, t;
    int deg;
  };
  std::vector<A> ar;
  for (u32 i = 0; i < arrows.size(); ++i) {
    auto& a = arrows[i];
    if (!obj.count(a.source) || !obj.count(a.target))
      throw UnknownObject("arrow '" + a.label + "' has an unknown endpoint");
    if (!arrow_index.emplace(a.label, i).second) throw InvalidInput("duplicate arrow '" + a.label + "'");
    ar.push_back({obj[a.source], obj[a.target], a.degree});
  }
  // enumerate paths by length
  using Path = std::vector<u32>;
  std::map<Path, u32> path_index;
  std::vector<Path> paths;
  D.identity.resize(objects.size());
  auto add_cell = [&](Cell c, Path p) {
    u32 k = static_cast<u32>(D.basis.size());
    D.basis.push_back(std::move(c));
    path_index.emplace(p, k);
    paths.push_back(std::move(p));
    return k;
  };
  for (u32 s = 0; s < objects.size(); ++s) D.identity[s] = add_cell({"id_" + objects[s], s, s, 0}, Path{});
  auto label_of = [&](const Path& p) {
    std::string l;
    for (auto a : p) l += (l.empty() ? "" : "·") + arrows[a].label;
    return l;
  };
  // identity paths are keyed by object to keep them distinct
  path_index.clear();
  std::map<std::pair<u32, Path>, u32> key;
  for (u32 s = 0; s < objects.size(); ++s) key[{s, Path{}}] = *D.identity[s];
  std::vector<Path> frontier;
  for (u32 a = 0; a < ar.size(); ++a) frontier.push_back({a});
  int len = 1;
  int limit = word_bound.value_or(-1);
  std::size_t guard = 0;
  while (!frontier.empty()) {
    if (limit >= 0 && len > limit) {
      for (auto& p : frontier) {
        int deg = 0;
        for (auto a : p) deg += ar[a].deg;
        D.cut[{ar[p.front()].s, ar[p.back()].t}].insert(deg);
      }
      break;
    }
    std::vector<Path> next;
    for (auto& p : frontier) {
      int deg = 0;
      for (auto a : p) deg += ar[a].deg;
      u32 k = add_cell({label_of(p), ar[p.front()].s, ar[p.back()].t, deg}, p);
      key[{ar[p.front()].s, p}] = k;
      for (u32 a = 0; a < ar.size(); ++a)
        if (ar[a].s == ar[p.back()].t) {
          Path q = p;
          q.push_back(a);
          next.push_back(std::move(q));
        }
    }
    frontier = std::move(next);
    ++len;
    if (++guard > 64 && limit < 0) throw InvalidInput("quiver has cycles; a word bound is required");
  }
  D.reindex();
  auto lookup = [&](u32 s, const Path& p) -> std::optional<u32> {
    auto it = key.find({s, p});
    if (it == key.end()) return std::nullopt;
    return it->second;
  };
  // products: concatenation
  for (u32 a = 0; a < D.basis.size(); ++a)
    for (u32 b = 0; b < D.basis.size(); ++b) {
      if (D.basis[a].target != D.basis[b].source) continue;
      Path p = paths[a];
      p.insert(p.end(), paths[b].begin(), paths[b].end());
      if (auto k = lookup(D.basis[a].source, p)) D.product[{a, b}] = Vec(f, *k, Scalar::one(f));
    }
  // arrow differentials
  std::vector<Vec> darrow(ar.size(), Vec(f));
  for (u32 i = 0; i < arrows.size(); ++i) {
    for (auto& [words, c] : arrows[i].differential) {
      if (c.field() != f) throw FieldMismatch("differential coefficient over another field");
      Path p;
      u32 s, t;
      int deg = 0;
      if (words.size() == 1 && words[0].rfind("id:", 0) == 0) {
        auto o = words[0].substr(3);
        if (!obj.count(o)) throw IllFormedDifferential("d(" + arrows[i].label + ") names unknown object " + o);
        s = t = obj[o];
        D.length_lowering = true;
      } else {
        if (words.empty()) throw IllFormedDifferential("empty path in d(" + arrows[i].label + ")");
        for (auto& w : words) {
          if (!arrow_index.count(w)) throw IllFormedDifferential("d(" + arrows[i].label + ") uses unknown arrow " + w);
          p.push_back(arrow_index[w]);
        }
        for (std::size_t j = 0; j + 1 < p.size(); ++j)
          if (ar[p[j]].t != ar[p[j + 1]].s)
            throw IllFormedDifferential("non-composable term in d(" + arrows[i].label + ")");
        s = ar[p.front()].s;
        t = ar[p.back()].t;
        for (auto a : p) deg += ar[a].deg;
      }
      if (s != ar[i].s || t != ar[i].t || deg != ar[i].deg + 1)
        throw IllFormedDifferential("term of d(" + arrows[i].label + ") has wrong endpoints or degree");
      if (auto k = lookup(s, p)) darrow[i].add(*k, c);
    }
  }
  // extend by Leibniz
  for (u32 k = 0; k < D.basis.size(); ++k) {
    const Path& p = paths[k];
    Vec out(f);
    int before = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      Vec left = D.e(*D.identity[D.basis[k].source]);
      for (std::size_t q = 0; q < j; ++q) left = D.mul(left, D.e(*lookup(ar[p[q]].s, Path{p[q]})));
      Vec right = D.e(*D.identity[ar[p[j]].t]);
      for (std::size_t q = j + 1; q < p.size(); ++q) right = D.mul(right, D.e(*lookup(ar[p[q]].s, Path{p[q]})));
      out.add(D.mul(D.mul(left, darrow[p[j]]), right), Scalar::sign(f, before));
      before += ar[p[j]].deg;
    }
    D.d[k] = out;
  }
  D.set_unit_from_identities();
  return D;
}

FiniteComplex hom_complex(const DgCategory& D, u32 s, u32 t) {
  auto idx = D.hom(s, t);
  std::vector<std::string> l;
  std::vector<int> g;
  std::map<u32, u32> pos;
  for (u32 k = 0; k < idx.size(); ++k) {
    l.push_back(D.basis[idx[k]].label);
    g.push_back(D.basis[idx[k]].degree);
    pos[idx[k]] = k;
  }
  auto sp = std::make_shared<const GradedSpace>(std::move(l), std::move(g));
  LinearMap d(sp, sp, 1, D.field);
  for (u32 k = 0; k < idx.size(); ++k)
    for (auto& [j, c] : D.d[idx[k]]) d.columns[k].add(pos.at(j), c);
  return make_complex(sp, std::move(d));
}

FiniteComplex hom_complex(const DgCategory& D, const std::string& s, const std::string& t) {
  return hom_complex(D, D.object(s), D.object(t));
}

DgCategory rebase(const DgCategory& D, const Retract& v) {
  // new basis b' = b - v(b) id for non-identity b; identity kept.
  // old b = b' + v(b) id, so expressing an old vector in the new basis adds
  // v(b) * coefficient to the identity.
  DgCategory R = D;
  auto to_new = [&](const Vec& x) {
    Vec y(D.field);
    for (auto& [i, c] : x) {
      y.add(i, c);
      const Cell& cell = D.basis[i];
      if (cell.source == cell.target && D.identity[cell.source] && *D.identity[cell.source] != i) {
        Scalar vb = v.value(D, i);
        if (!vb.is_zero()) y.add(*D.identity[cell.source], vb * c);
      }
    }
    return y;
  };
  auto from_new = [&](u32 i) {  // b' in old coordinates
    Vec y = D.e(i);
    const Cell& cell = D.basis[i];
    if (cell.source == cell.target && D.identity[cell.source] && *D.identity[cell.source] != i) {
      Scalar vb = v.value(D, i);
      if (!vb.is_zero()) y.add(*D.identity[cell.source], -vb);
    }
    return y;
  };
  for (u32 i = 0; i < D.basis.size(); ++i) R.d[i] = to_new(D.diff(from_new(i)));
  R.product.clear();
  for (u32 a = 0; a < D.basis.size(); ++a)
    for (u32 b = 0; b < D.basis.size(); ++b) {
      if (D.basis[a].target != D.basis[b].source) continue;
      Vec p = to_new(D.mul(from_new(a), from_new(b)));
      if (!p.empty()) R.product[{a, b}] = std::move(p);
    }
  return R;
}

}  // namespace koszul
