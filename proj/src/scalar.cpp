#include "koszul/scalar.hpp"

#include <cstdlib>
#include <numeric>

namespace koszul {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::int64_t mod(std::int64_t a, std::uint32_t p) {
  std::int64_t r = a % static_cast<std::int64_t>(p);
  return r < 0 ? r + p : r;
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::uint32_t p) {
  __int128 r = 1, x = b;
  while (e > 0) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<std::int64_t>(r);
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMax = INT64_MAX;

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p) || p >= (1u << 31)) throw InvalidInput("not a supported prime: " + std::to_string(p));
  Field f;
  f.p_ = p;
  return f;
}

Field Field::parse(std::string_view s) {
  if (s == "Q" || s == "q") return rationals();
  if (s.size() >= 2 && (s[0] == 'F' || s[0] == 'f')) {
    std::string rest(s.substr(1));
    if (!rest.empty() && rest[0] == 'p') rest = rest.substr(1);
    if (!rest.empty() && rest.find_first_not_of("0123456789") == std::string::npos && rest.size() < 10)
      return prime(static_cast<std::uint32_t>(std::stoul(rest)));
  }
  throw InvalidInput("unknown field '" + std::string(s) + "' (use Q or Fp such as F2)");
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

Scalar::Scalar(Field f, std::int64_t v) : field_(f) {
  if (f.is_rational())
    num_ = v;
  else
    num_ = mod(v, f.characteristic());
}

Scalar::Scalar(Field f, std::int64_t num, std::int64_t den) : field_(f) {
  if (den == 0) throw DivisionByZero("zero denominator");
  if (f.is_rational()) {
    *this = from_wide(f, num, den);
  } else {
    *this = Scalar(f, num) * Scalar(f, den).inverse();
  }
}

Scalar Scalar::from_wide(Field f, __int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Scalar s;
  s.field_ = f;
  if (n == 0) return s;
  if (n <= kMax && n >= -kMax && d <= kMax) {
    s.num_ = static_cast<std::int64_t>(n);
    s.den_ = static_cast<std::int64_t>(d);
    return s;
  }
  // does not fit: go through GMP via decimal strings of the halves
  auto to_mpz = [](__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  };
  mpq_class q(to_mpz(n), to_mpz(d));
  q.canonicalize();
  return from_mpq(f, std::move(q));
}

mpq_class Scalar::as_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  return q;
}

Scalar Scalar::from_mpq(Field f, mpq_class q) {
  Scalar s;
  s.field_ = f;
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    s.num_ = q.get_num().get_si();
    s.den_ = q.get_den().get_si();
    return s;
  }
  s.big_ = std::make_shared<const mpq_class>(std::move(q));
  return s;
}

Scalar Scalar::parse(Field f, std::string_view text) {
  std::string t(text);
  auto slash = t.find('/');
  auto parse_int = [&](const std::string& part) -> mpz_class {
    if (part.empty() || part.find_first_not_of("+-0123456789") != std::string::npos)
      throw InvalidInput("bad scalar '" + t + "'");
    mpz_class z;
    if (z.set_str(part[0] == '+' ? part.substr(1) : part, 10) != 0) throw InvalidInput("bad scalar '" + t + "'");
    return z;
  };
  mpz_class n = parse_int(slash == std::string::npos ? t : t.substr(0, slash));
  mpz_class d = slash == std::string::npos ? mpz_class(1) : parse_int(t.substr(slash + 1));
  if (d == 0) throw DivisionByZero("zero denominator in '" + t + "'");
  if (f.is_rational()) {
    mpq_class q(n, d);
    q.canonicalize();
    return from_mpq(f, std::move(q));
  }
  mpz_class p(static_cast<unsigned long>(f.characteristic()));
  mpz_class nr = n % p, dr = d % p;
  if (nr < 0) nr += p;
  if (dr < 0) dr += p;
  if (dr == 0) throw DivisionByZero("denominator divisible by p in '" + t + "'");
  return Scalar(f, nr.get_si()) * Scalar(f, dr.get_si()).inverse();
}

std::string Scalar::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_.is_rational()) {
    if (big_) return from_mpq(field_, -*big_);
    if (num_ == INT64_MIN) return from_wide(field_, -static_cast<__int128>(num_), den_);
    r.num_ = -num_;
  } else {
    r.num_ = num_ == 0 ? 0 : field_.characteristic() - num_;
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (field_.is_rational()) {
    if (big_) return from_mpq(field_, 1 / *big_);
    return from_wide(field_, den_, num_);
  }
  Scalar r = *this;
  r.num_ = powmod(num_, field_.characteristic() - 2, field_.characteristic());
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  a.check(b);
  if (!a.field_.is_rational()) {
    Scalar r = a;
    r.num_ = (a.num_ + b.num_) % a.field_.characteristic();
    return r;
  }
  if (a.big_ || b.big_) return Scalar::from_mpq(a.field_, a.as_mpq() + b.as_mpq());
  if (a.den_ == 1 && b.den_ == 1) {
    std::int64_t s;
    if (!__builtin_add_overflow(a.num_, b.num_, &s)) {
      Scalar r = a;
      r.num_ = s;
      return r;
    }
  }
  __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
  __int128 d = static_cast<__int128>(a.den_) * b.den_;
  return Scalar::from_wide(a.field_, n, d);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  a.check(b);
  if (!a.field_.is_rational()) {
    Scalar r = a;
    r.num_ = static_cast<std::int64_t>(static_cast<__int128>(a.num_) * b.num_ % a.field_.characteristic());
    return r;
  }
  if (a.big_ || b.big_) return Scalar::from_mpq(a.field_, a.as_mpq() * b.as_mpq());
  if (a.den_ == 1 && b.den_ == 1) {
    std::int64_t s;
    if (!__builtin_mul_overflow(a.num_, b.num_, &s)) {
      Scalar r = a;
      r.num_ = s;
      return r;
    }
  }
  return Scalar::from_wide(a.field_, static_cast<__int128>(a.num_) * b.num_,
                           static_cast<__int128>(a.den_) * b.den_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.check(b);
  if (a.big_ || b.big_) return a.as_mpq() == b.as_mpq();
  return a.num_ == b.num_ && a.den_ == b.den_;
}

}  // namespace koszul
