#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "koszul/errors.hpp"

namespace koszul {

// p == 0 is Q, otherwise F_p
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(std::uint32_t p);
  static Field parse(std::string_view s);  // "Q", "F2", "F5", ...

  std::uint32_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }
  std::string name() const;
  friend bool operator==(Field a, Field b) { return a.p_ == b.p_; }
  friend bool operator!=(Field a, Field b) { return a.p_ != b.p_; }

 private:
  std::uint32_t p_ = 0;
};

// Exact scalar. Over Q a small int64 fraction is used until something
// overflows, then the value moves to an mpq.
class Scalar {
 public:
  Scalar() = default;  // zero of Q
  Scalar(Field f, std::int64_t v);
  Scalar(Field f, std::int64_t num, std::int64_t den);
  static Scalar zero(Field f) { return Scalar(f, 0); }
  static Scalar one(Field f) { return Scalar(f, 1); }
  static Scalar parse(Field f, std::string_view s);

  Field field() const { return field_; }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  std::string str() const;
  // residue for F_p, numerator otherwise (for hashing / ordering tricks)
  std::int64_t residue() const { return num_; }

  Scalar operator-() const;
  Scalar inverse() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // +1 or -1 in the given field
  static Scalar sign(Field f, long long e) { return Scalar(f, (e % 2 == 0) ? 1 : -1); }

 private:
  Field field_;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;

  mpq_class as_mpq() const;
  static Scalar from_mpq(Field f, mpq_class q);
  static Scalar from_wide(Field f, __int128 n, __int128 d);
  void check(const Scalar& o) const {
    if (field_ != o.field_) throw FieldMismatch("scalars from " + field_.name() + " and " + o.field_.name());
  }
};

}  // namespace koszul
