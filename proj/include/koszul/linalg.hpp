#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "koszul/scalar.hpp"

namespace koszul {

// finite linear combination keyed by K
template <class K>
class Combo {
 public:
  using Terms = std::map<K, Scalar>;
  Combo() = default;
  explicit Combo(Field f) : field_(f) {}
  Combo(Field f, const K& k, const Scalar& c) : field_(f) { add(k, c); }

  Field field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  void add(const K& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add(const Combo& o, const Scalar& c) {
    if (c.is_zero()) return;
    for (auto& [k, v] : o.terms_) add(k, v * c);
  }
  Scalar coeff(const K& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
  }
  void erase(const K& k) { terms_.erase(k); }

  Combo& operator+=(const Combo& o) {
    for (auto& [k, v] : o.terms_) add(k, v);
    return *this;
  }
  Combo& operator-=(const Combo& o) {
    for (auto& [k, v] : o.terms_) add(k, -v);
    return *this;
  }
  Combo scaled(const Scalar& c) const {
    Combo r(field_);
    if (c.is_zero()) return r;
    for (auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
  }
  friend Combo operator+(Combo a, const Combo& b) { return a += b; }
  friend Combo operator-(Combo a, const Combo& b) { return a -= b; }
  friend bool operator==(const Combo& a, const Combo& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Combo& a, const Combo& b) { return !(a == b); }

 private:
  Field field_;
  Terms terms_;
};

using Vec = Combo<std::uint32_t>;

class GradedSpace {
 public:
  GradedSpace() = default;
  GradedSpace(std::vector<std::string> labels, std::vector<int> degrees);

  std::size_t dim() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  int degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& degrees() const { return degrees_; }
  std::optional<std::uint32_t> find(const std::string& label) const;
  std::uint32_t index(const std::string& label) const;
  // indices in degree n, sorted by label
  std::vector<std::uint32_t> in_degree(int n) const;
  std::vector<int> occurring_degrees() const;

 private:
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

struct LinearMap {
  SpacePtr source, target;
  int degree = 0;
  Field field;
  std::vector<Vec> columns;  // image of each source basis vector

  LinearMap() = default;
  LinearMap(SpacePtr src, SpacePtr tgt, int deg, Field f);
  Vec apply(const Vec& v) const;
  bool is_zero() const;
  void check_degrees() const;  // throws InvalidInput on a bad entry
};

LinearMap compose(const LinearMap& g, const LinearMap& f);  // g after f

struct KernelRank {
  std::vector<Vec> kernel;  // over source indices
  std::size_t rank = 0;
};

KernelRank kernel_and_rank(const LinearMap& m, int degree);

// kernel of the map e_j -> cols[j], pivots chosen by `order` (position of
// each source index); returns RREF kernel basis and the rank
KernelRank kernel_of_columns(Field f, const std::vector<Vec>& cols, const std::vector<std::uint32_t>& order);

struct FiniteComplex {
  SpacePtr space;
  LinearMap d;
};

FiniteComplex make_complex(SpacePtr space, LinearMap d);
std::map<int, std::size_t> homology_dims(const FiniteComplex& c);

SpacePtr tensor_space(const GradedSpace& a, const GradedSpace& b);
LinearMap koszul_tensor(const LinearMap& f, const LinearMap& g);

// incremental row echelon form; vectors are reduced against pivots chosen
// as the smallest index present
class Echelon {
 public:
  explicit Echelon(Field f) : field_(f) {}
  // returns true if v was independent (and adds it)
  bool insert(Vec v);
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }

 private:
  Field field_;
  std::map<std::uint32_t, Vec> rows_;  // pivot -> row (pivot coeff 1)
};

// solve sum_j x_j cols[j] = target; nullopt if not in span
std::optional<Vec> solve_in_span(Field f, const std::vector<Vec>& cols, const Vec& target);

}  // namespace koszul
