#pragma once
// Exact scalars: rationals (GMP) and residues modulo a prime.

#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace gmalie {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficient field: the rationals (prime() == 0) or F_p.
class Field {
 public:
  constexpr Field() = default;

  static constexpr Field rationals() { return Field{}; }
  static Field prime_field(std::uint64_t p);

  [[nodiscard]] constexpr bool is_rational() const { return p_ == 0; }
  [[nodiscard]] constexpr std::uint64_t prime() const { return p_; }
  /// 0 for Q.
  [[nodiscard]] constexpr std::uint64_t characteristic() const { return p_; }

  /// True iff n! is invertible in the field.
  [[nodiscard]] bool factorial_invertible(int n) const {
    return is_rational() || static_cast<std::uint64_t>(n) < p_;
  }

  [[nodiscard]] std::string to_string() const;

  friend constexpr bool operator==(Field, Field) = default;

 private:
  constexpr explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

bool is_prime(std::uint64_t n);

class Scalar {
 public:
  Scalar() : value_(mpq_class{}) {}  // zero of Q
  explicit Scalar(Field f) : field_(f) {
    if (f.is_rational()) value_ = mpq_class{};
  }
  Scalar(Field f, long v);
  Scalar(Field f, const mpq_class& q);

  static Scalar zero(Field f) { return Scalar(f); }
  static Scalar one(Field f) { return Scalar(f, 1L); }
  /// Parses "3", "-3/4" (Q) or a decimal integer reduced mod p.
  static Scalar parse(Field f, std::string_view text);

  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_one() const;

  /// Only meaningful for F_p.
  [[nodiscard]] std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }
  /// Only meaningful for Q.
  [[nodiscard]] const mpq_class& rational() const { return std::get<mpq_class>(value_); }

  [[nodiscard]] Scalar inverse() const;
  [[nodiscard]] std::string to_string() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  /// this += a * b, without temporaries on the F_p path.
  void add_product(const Scalar& a, const Scalar& b);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  void check_same(const Scalar& o) const {
    if (field_ != o.field_) throw Error("scalar field mismatch");
  }

  Field field_{};
  std::variant<std::uint64_t, mpq_class> value_{};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace gmalie
