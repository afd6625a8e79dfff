#include "koszul/curved.hpp"

namespace koszul {

HVec Uncurved::from(const Vec& a) const {
  HVec r(A_.field);
  for (auto& [i, c] : a) r.add(Tuple{i}, c);
  return r;
}

HVec Uncurved::eta() const {
  HVec r(A_.field);
  for (auto& [i, ci] : A_.unit)
    for (auto& [j, cj] : A_.unit)
      if (A_.basis[i].target == A_.basis[j].source) r.add(Tuple{i, j}, ci * cj);
  return r;
}

HVec Uncurved::mul(const HVec& x, const HVec& y) const {
  HVec r(A_.field);
  for (auto& [s, cs] : x)
    for (auto& [t, ct] : y) {
      const Vec* p = A_.mul_basis(s.back(), t.front());
      if (!p) continue;
      for (auto& [k, ck] : *p) {
        Tuple u(s.begin(), s.end() - 1);
        u.push_back(k);
        u.insert(u.end(), t.begin() + 1, t.end());
        r.add(u, cs * ct * ck);
      }
    }
  return r;
}

int Uncurved::degree(const Tuple& t) const {
  int deg = static_cast<int>(t.size()) - 1;
  for (auto i : t) deg += A_.basis[i].degree;
  return deg;
}

HVec Uncurved::d_tuple(const Tuple& t) const {
  Field f = A_.field;
  HVec eta_ = eta();
  std::vector<HVec> factors;
  std::vector<HVec> dfactors;
  std::vector<int> degs;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k > 0) {
      factors.push_back(eta_);
      HVec de = from(A_.curvature);
      de.add(mul(eta_, eta_), Scalar(f, -1));
      dfactors.push_back(std::move(de));
      degs.push_back(1);
    }
    HVec a = from(A_.e(t[k]));
    int da = A_.basis[t[k]].degree;
    HVec dd = from(A_.d[t[k]]);
    dd.add(mul(eta_, a), Scalar(f, -1));
    dd.add(mul(a, eta_), Scalar::sign(f, da));
    factors.push_back(std::move(a));
    dfactors.push_back(std::move(dd));
    degs.push_back(da);
  }
  HVec out(f);
  int before = 0;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    HVec term = dfactors[j];
    if (j > 0) {
      HVec left = factors[0];
      for (std::size_t q = 1; q < j; ++q) left = mul(left, factors[q]);
      term = mul(left, term);
    }
    for (std::size_t q = j + 1; q < factors.size(); ++q) term = mul(term, factors[q]);
    out.add(term, Scalar::sign(f, before));
    before += degs[j];
  }
  return out;
}

HVec Uncurved::d(const HVec& x) const {
  HVec r(A_.field);
  for (auto& [t, c] : x) r.add(d_tuple(t), c);
  return r;
}

HVec Uncurved::truncate(HVec x) const {
  HVec r(A_.field);
  for (auto& [t, c] : x)
    if (static_cast<int>(t.size()) - 1 <= bound_) r.add(t, c);
  return r;
}

std::vector<Tuple> Uncurved::basis() const {
  std::vector<Tuple> out, frontier;
  for (u32 i = 0; i < A_.basis.size(); ++i) frontier.push_back({i});
  for (int k = 0; k <= bound_; ++k) {
    std::vector<Tuple> next;
    for (auto& t : frontier) {
      out.push_back(t);
      if (k == bound_) continue;
      for (u32 i = 0; i < A_.basis.size(); ++i)
        if (A_.basis[t.back()].target == A_.basis[i].source) {
          Tuple u = t;
          u.push_back(i);
          next.push_back(std::move(u));
        }
    }
    frontier = std::move(next);
  }
  return out;
}

Report Uncurved::check_square_zero() const {
  Report r;
  r.subject = "uncurved algebra";
  for (auto& t : basis()) {
    HVec x(A_.field, t, Scalar::one(A_.field));
    HVec dd = truncate(d(d(x)));
    if (!dd.empty()) r.fail("d_H^2 != 0", show(x));
  }
  return r;
}

bool Uncurved::generators_square_zero() const {
  for (u32 i = 0; i < A_.basis.size(); ++i)
    if (!d(d(from(A_.e(i)))).empty()) return false;
  return d(d(eta())).empty();
}

std::string Uncurved::show(const HVec& x) const {
  if (x.empty()) return "0";
  std::string s;
  for (auto& [t, c] : x) {
    if (!s.empty()) s += " + ";
    if (!c.is_one()) s += c.str() + "*";
    for (std::size_t k = 0; k < t.size(); ++k) s += (k ? " η " : "") + A_.basis[t[k]].label;
  }
  return s;
}

HVec apply_dg_map(const Uncurved& HA, const Uncurved& HB, const AlgebraMorphism& m, const HVec& x) {
  Field f = HA.algebra().field;
  HVec shift = HB.from(m.b) + HB.eta();
  HVec out(f);
  for (auto& [t, c] : x) {
    HVec y = HB.from(m.f[t[0]]);
    for (std::size_t k = 1; k < t.size(); ++k) y = HB.mul(HB.mul(y, shift), HB.from(m.f[t[k]]));
    out.add(y, c);
  }
  return out;
}

Report check_dg_map(const Uncurved& HA, const Uncurved& HB, const AlgebraMorphism& m) {
  Report r;
  r.subject = "f_b chain map";
  Field f = HA.algebra().field;
  Uncurved small(HA.algebra(), HA.bound() - 1);
  for (auto& t : small.basis()) {
    HVec x(f, t, Scalar::one(f));
    HVec lhs = HB.d(apply_dg_map(HA, HB, m, x));
    HVec rhs = apply_dg_map(HA, HB, m, HA.d(x));
    if (lhs != rhs) r.fail("d f_b != f_b d", HA.show(x));
  }
  return r;
}

Report check_dg_algebra_map(const Uncurved& HA, const Uncurved& HB, const AlgebraMorphism& m) {
  Report r = check_dg_map(HA, HB, m);
  const Algebra& A = HA.algebra();
  if (apply_dg_map(HA, HB, m, HA.from(A.unit)) != HB.from(HB.algebra().unit)) r.fail("f_b(1) != 1", "unit");
  // e eta and eta e are one tuple in H A, so their images must agree
  HVec shift = HB.from(m.b) + HB.eta();
  for (auto& [i, c] : A.unit) {
    HVec fe = HB.from(m.f[i]);
    if (HB.mul(fe, shift) != HB.mul(shift, fe)) r.fail("f_b not well defined on e eta", A.basis[i].label);
  }
  for (u32 i = 0; i < A.basis.size(); ++i)
    for (u32 j = 0; j < A.basis.size(); ++j) {
      if (A.basis[i].target != A.basis[j].source) continue;
      HVec lhs = apply_dg_map(HA, HB, m, HA.from(A.mul(A.e(i), A.e(j))));
      HVec rhs = HB.mul(apply_dg_map(HA, HB, m, HA.from(A.e(i))), apply_dg_map(HA, HB, m, HA.from(A.e(j))));
      if (lhs != rhs) r.fail("f_b not multiplicative", A.basis[i].label + " * " + A.basis[j].label);
    }
  return r;
}

}  // namespace koszul
