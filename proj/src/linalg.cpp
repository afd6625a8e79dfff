#include "koszul/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace koszul {

GradedSpace::GradedSpace(std::vector<std::string> labels, std::vector<int> degrees)
    : labels_(std::move(labels)), degrees_(std::move(degrees)) {
  if (labels_.size() != degrees_.size()) throw InvalidInput("labels/degrees size mismatch");
  for (std::uint32_t i = 0; i < labels_.size(); ++i)
    if (!index_.emplace(labels_[i], i).second) throw InvalidInput("duplicate basis label '" + labels_[i] + "'");
}

std::optional<std::uint32_t> GradedSpace::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t GradedSpace::index(const std::string& label) const {
  auto i = find(label);
  if (!i) throw InvalidInput("unknown basis label '" + label + "'");
  return *i;
}

std::vector<std::uint32_t> GradedSpace::in_degree(int n) const {
  std::vector<std::uint32_t> r;
  for (std::uint32_t i = 0; i < dim(); ++i)
    if (degrees_[i] == n) r.push_back(i);
  std::sort(r.begin(), r.end(), [&](auto a, auto b) { return labels_[a] < labels_[b]; });
  return r;
}

std::vector<int> GradedSpace::occurring_degrees() const {
  std::set<int> s(degrees_.begin(), degrees_.end());
  return {s.begin(), s.end()};
}

LinearMap::LinearMap(SpacePtr src, SpacePtr tgt, int deg, Field f)
    : source(std::move(src)), target(std::move(tgt)), degree(deg), field(f) {
  columns.assign(source->dim(), Vec(f));
}

Vec LinearMap::apply(const Vec& v) const {
  if (v.field() != field) throw FieldMismatch("vector and map over different fields");
  Vec r(field);
  for (auto& [i, c] : v) r.add(columns[i], c);
  return r;
}

bool LinearMap::is_zero() const {
  return std::all_of(columns.begin(), columns.end(), [](const Vec& v) { return v.empty(); });
}

void LinearMap::check_degrees() const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].field() != field) throw FieldMismatch("column over a different field");
    for (auto& [j, c] : columns[i])
      if (target->degree(j) != source->degree(i) + degree)
        throw InvalidInput("entry " + source->label(i) + " -> " + target->label(j) + " violates degree " +
                           std::to_string(degree));
  }
}

LinearMap compose(const LinearMap& g, const LinearMap& f) {
  if (g.field != f.field) throw FieldMismatch("composing maps over different fields");
  LinearMap r(f.source, g.target, f.degree + g.degree, f.field);
  for (std::size_t i = 0; i < f.columns.size(); ++i) r.columns[i] = g.apply(f.columns[i]);
  return r;
}

bool Echelon::insert(Vec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  auto piv = v.begin()->first;
  v = v.scaled(v.begin()->second.inverse());
  for (auto& [p, row] : rows_) {
    Scalar c = row.coeff(piv);
    if (!c.is_zero()) row.add(v, -c);
  }
  rows_.emplace(piv, std::move(v));
  return true;
}

Vec Echelon::reduce(Vec v) const {
  if (v.field() != field_ && !v.empty()) throw FieldMismatch("echelon over a different field");
  for (auto& [p, row] : rows_) {
    Scalar c = v.coeff(p);
    if (!c.is_zero()) v.add(row, -c);
  }
  return v;
}

KernelRank kernel_of_columns(Field f, const std::vector<Vec>& cols, const std::vector<std::uint32_t>& order) {
  // rows: reduced image vector + record of which source combination produced it
  struct Row {
    Vec image, combo;
  };
  std::map<std::uint32_t, Row> pivots;
  std::vector<Vec> kernel_raw;
  std::size_t rank = 0;
  for (std::uint32_t j : order) {
    Vec img = cols[j];
    Vec combo(f);
    combo.add(j, Scalar::one(f));
    for (auto& [p, row] : pivots) {
      Scalar c = img.coeff(p);
      if (!c.is_zero()) {
        img.add(row.image, -c);
        combo.add(row.combo, -c);
      }
    }
    if (img.empty()) {
      kernel_raw.push_back(std::move(combo));
      continue;
    }
    ++rank;
    auto p = img.begin()->first;
    Scalar inv = img.begin()->second.inverse();
    Row row{img.scaled(inv), combo.scaled(inv)};
    for (auto& [q, other] : pivots) {
      Scalar c = other.image.coeff(p);
      if (!c.is_zero()) {
        other.image.add(row.image, -c);
        other.combo.add(row.combo, -c);
      }
    }
    pivots.emplace(p, std::move(row));
  }
  // RREF of the kernel in the position order given by `order`
  std::vector<std::uint32_t> pos(cols.size(), 0);
  for (std::uint32_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  KernelRank out;
  out.rank = rank;
  {
    std::vector<Vec> ws;
    for (auto& v : kernel_raw) {
      Vec w(f);
      for (auto& [i, c] : v) w.add(pos[i], c);
      ws.push_back(std::move(w));
    }
    // full RREF by hand
    std::map<std::uint32_t, Vec> rr;
    for (auto& w0 : ws) {
      Vec w = w0;
      for (auto& [p, r] : rr) {
        Scalar c = w.coeff(p);
        if (!c.is_zero()) w.add(r, -c);
      }
      if (w.empty()) continue;
      auto p = w.begin()->first;
      w = w.scaled(w.begin()->second.inverse());
      for (auto& [q, r] : rr) {
        Scalar c = r.coeff(p);
        if (!c.is_zero()) r.add(w, -c);
      }
      rr.emplace(p, std::move(w));
    }
    for (auto& [p, r] : rr) {
      Vec v(f);
      for (auto& [k, c] : r) v.add(order[k], c);
      out.kernel.push_back(std::move(v));
    }
  }
  return out;
}

KernelRank kernel_and_rank(const LinearMap& m, int degree) {
  auto idx = m.source->in_degree(degree);
  for (auto i : idx)
    if (m.columns[i].field() != m.field) throw FieldMismatch("map entries over mixed fields");
  return kernel_of_columns(m.field, m.columns, idx);
}

FiniteComplex make_complex(SpacePtr space, LinearMap d) {
  if (d.degree != 1) throw InvalidInput("differential must have degree +1");
  FiniteComplex c{std::move(space), std::move(d)};
  c.d.check_degrees();
  return c;
}

std::map<int, std::size_t> homology_dims(const FiniteComplex& c) {
  for (std::size_t i = 0; i < c.d.columns.size(); ++i) {
    Vec dd = c.d.apply(c.d.columns[i]);
    if (!dd.empty()) throw NotAComplex("d^2 != 0 on basis element " + c.space->label(i));
  }
  std::map<int, std::size_t> out;
  std::map<int, std::size_t> rank;
  for (int n : c.space->occurring_degrees()) rank[n] = kernel_and_rank(c.d, n).rank;
  for (int n : c.space->occurring_degrees()) {
    std::size_t dim = c.space->in_degree(n).size();
    std::size_t ker = dim - rank[n];
    std::size_t im = rank.count(n - 1) ? rank[n - 1] : 0;
    out[n] = ker - im;
  }
  return out;
}

SpacePtr tensor_space(const GradedSpace& a, const GradedSpace& b) {
  std::vector<std::string> labels;
  std::vector<int> degs;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      labels.push_back(a.label(i) + "⊗" + b.label(j));
      degs.push_back(a.degree(i) + b.degree(j));
    }
  return std::make_shared<const GradedSpace>(std::move(labels), std::move(degs));
}

LinearMap koszul_tensor(const LinearMap& f, const LinearMap& g) {
  if (f.field != g.field) throw FieldMismatch("tensoring maps over different fields");
  auto src = tensor_space(*f.source, *g.source);
  auto tgt = tensor_space(*f.target, *g.target);
  LinearMap r(src, tgt, f.degree + g.degree, f.field);
  std::size_t nb = g.source->dim(), nt = g.target->dim();
  for (std::size_t i = 0; i < f.source->dim(); ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      Scalar sgn = Scalar::sign(f.field, static_cast<long long>(g.degree) * f.source->degree(i));
      Vec& col = r.columns[i * nb + j];
      for (auto& [x, cx] : f.columns[i])
        for (auto& [y, cy] : g.columns[j]) col.add(static_cast<std::uint32_t>(x * nt + y), sgn * cx * cy);
    }
  return r;
}

std::optional<Vec> solve_in_span(Field f, const std::vector<Vec>& cols, const Vec& target) {
  struct Row {
    Vec image, combo;
  };
  std::map<std::uint32_t, Row> pivots;
  for (std::uint32_t j = 0; j < cols.size(); ++j) {
    Vec img = cols[j];
    Vec combo(f);
    combo.add(j, Scalar::one(f));
    for (auto& [p, row] : pivots) {
      Scalar c = img.coeff(p);
      if (!c.is_zero()) {
        img.add(row.image, -c);
        combo.add(row.combo, -c);
      }
    }
    if (img.empty()) continue;
    auto p = img.begin()->first;
    Scalar inv = img.begin()->second.inverse();
    pivots.emplace(p, Row{img.scaled(inv), combo.scaled(inv)});
  }
  Vec t = target;
  Vec x(f);
  bool changed = true;
  while (changed && !t.empty()) {
    changed = false;
    for (auto& [p, row] : pivots) {
      Scalar c = t.coeff(p);
      if (!c.is_zero()) {
        t.add(row.image, -c);
        x.add(row.combo, c);
        changed = true;
      }
    }
  }
  if (!t.empty()) return std::nullopt;
  return x;
}

}  // namespace koszul
