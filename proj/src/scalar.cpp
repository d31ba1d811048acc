#include "gmalie/scalar.hpp"

#include <charconv>
#include <ostream>

namespace gmalie {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce(const mpz_class& z, std::uint64_t p) {
  mpz_class r = z % mpz_class(static_cast<unsigned long>(p));
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime_field(std::uint64_t p) {
  // Products are formed in 128 bits, but residues are kept below 2^32 so the
  // exhaustive searches and parsing stay simple.
  if (p >= (1ULL << 32) || !is_prime(p)) throw Error("not a supported prime: " + std::to_string(p));
  return Field(p);
}

std::string Field::to_string() const { return is_rational() ? "Q" : "F_" + std::to_string(p_); }

Scalar::Scalar(Field f, long v) : field_(f) {
  if (f.is_rational()) {
    value_ = mpq_class(v);
  } else {
    auto p = static_cast<long long>(f.prime());
    long long r = static_cast<long long>(v) % p;
    if (r < 0) r += p;
    value_ = static_cast<std::uint64_t>(r);
  }
}

Scalar::Scalar(Field f, const mpq_class& q) : field_(f) {
  if (f.is_rational()) {
    mpq_class c = q;
    c.canonicalize();
    value_ = c;
  } else {
    std::uint64_t den = reduce(q.get_den(), f.prime());
    if (den == 0) throw Error("denominator divisible by p");
    value_ = mul_mod(reduce(q.get_num(), f.prime()), pow_mod(den, f.prime() - 2, f.prime()), f.prime());
  }
}

Scalar Scalar::parse(Field f, std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error("empty scalar string");
  if (f.is_rational()) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error("malformed rational: " + s);
    if (q.get_den() == 0) throw Error("zero denominator: " + s);
    q.canonicalize();
    return Scalar(f, q);
  }
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw Error("malformed integer: " + s);
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw Error("malformed integer mod p: " + s);
  mpz_class z(s[0] == '+' ? s.substr(1) : s, 10);
  Scalar out(f);
  out.value_ = reduce(z, f.prime());
  return out;
}

bool Scalar::is_zero() const {
  if (field_.is_rational()) return sgn(rational()) == 0;
  return residue() == 0;
}

bool Scalar::is_one() const {
  if (field_.is_rational()) return rational() == 1;
  return residue() == 1;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  Scalar out(field_);
  if (field_.is_rational()) {
    out.value_ = mpq_class(1) / rational();
  } else {
    out.value_ = pow_mod(residue(), field_.prime() - 2, field_.prime());
  }
  return out;
}

std::string Scalar::to_string() const {
  if (field_.is_rational()) return rational().get_str();
  return std::to_string(residue());
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (field_.is_rational()) {
    std::get<mpq_class>(value_) += o.rational();
  } else {
    std::uint64_t r = residue() + o.residue();
    if (r >= field_.prime()) r -= field_.prime();
    value_ = r;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (field_.is_rational()) {
    std::get<mpq_class>(value_) -= o.rational();
  } else {
    std::uint64_t r = residue() + field_.prime() - o.residue();
    if (r >= field_.prime()) r -= field_.prime();
    value_ = r;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (field_.is_rational()) {
    std::get<mpq_class>(value_) *= o.rational();
  } else {
    value_ = mul_mod(residue(), o.residue(), field_.prime());
  }
  return *this;
}

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  check_same(a);
  check_same(b);
  if (field_.is_rational()) {
    if (sgn(a.rational()) == 0 || sgn(b.rational()) == 0) return;
    std::get<mpq_class>(value_) += a.rational() * b.rational();
  } else {
    std::uint64_t r = residue() + mul_mod(a.residue(), b.residue(), field_.prime());
    if (r >= field_.prime()) r -= field_.prime();
    value_ = r;
  }
}

Scalar Scalar::operator-() const {
  Scalar out(field_);
  if (field_.is_rational()) {
    out.value_ = mpq_class(-rational());
  } else {
    out.value_ = residue() == 0 ? 0 : field_.prime() - residue();
  }
  return out;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  if (a.field_.is_rational()) return a.rational() == b.rational();
  return a.residue() == b.residue();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace gmalie
