#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lincat/error.hpp"

namespace lincat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// The ground field: Q (characteristic 0) or F_p.
class FieldSpec {
 public:
  // Largest supported prime; products of two residues must fit in 64 bits.
  static constexpr std::uint64_t max_prime = (std::uint64_t{1} << 31) - 1;

  FieldSpec() = default;

  explicit FieldSpec(std::uint64_t characteristic) : p_(characteristic) {
    if (p_ != 0 && !is_prime(p_)) {
      throw InputError("field characteristic must be 0 or a prime, got " +
                       std::to_string(p_));
    }
    if (p_ > max_prime) {
      throw InputError("field characteristic " + std::to_string(p_) +
                       " exceeds the supported bound");
    }
  }

  static FieldSpec rationals() { return FieldSpec{}; }
  static FieldSpec prime(std::uint64_t p) { return FieldSpec{p}; }

  std::uint64_t characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }

  std::string name() const {
    return p_ == 0 ? std::string("Q") : "F_" + std::to_string(p_);
  }

  friend bool operator==(FieldSpec, FieldSpec) = default;

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

 private:
  std::uint64_t p_ = 0;
};

// An exact element of Q or F_p. Rationals are kept in lowest terms by
// cpp_rational; residues live in [0, p).
class Scalar {
 public:
  Scalar() = default;

  Scalar(FieldSpec field, long long value) : field_(field) {
    if (field_.is_rational()) {
      q_ = value;
    } else {
      r_ = reduce(BigInt(value));
    }
  }

  Scalar(FieldSpec field, const Rational& value) : field_(field) {
    if (field_.is_rational()) {
      q_ = value;
    } else {
      Scalar num(field, BigInt(numerator(value)));
      Scalar den(field, BigInt(denominator(value)));
      *this = num / den;
    }
  }

  Scalar(FieldSpec field, const BigInt& value) : field_(field) {
    if (field_.is_rational()) {
      q_ = Rational(value);
    } else {
      r_ = reduce(value);
    }
  }

  static Scalar zero(FieldSpec f) { return Scalar(f, 0LL); }
  static Scalar one(FieldSpec f) { return Scalar(f, 1LL); }

  FieldSpec field() const noexcept { return field_; }

  bool is_zero() const {
    return field_.is_rational() ? q_ == 0 : r_ == 0;
  }

  // Only meaningful in characteristic 0.
  const Rational& rational() const { return q_; }
  // Only meaningful in characteristic p.
  std::uint64_t residue() const { return r_; }

  Scalar operator-() const {
    Scalar s = *this;
    if (field_.is_rational()) {
      s.q_ = -q_;
    } else if (r_ != 0) {
      s.r_ = field_.characteristic() - r_;
    }
    return s;
  }

  Scalar& operator+=(const Scalar& o) {
    check(o);
    if (field_.is_rational()) {
      q_ += o.q_;
    } else {
      r_ = (r_ + o.r_) % field_.characteristic();
    }
    return *this;
  }

  Scalar& operator-=(const Scalar& o) { return *this += -o; }

  Scalar& operator*=(const Scalar& o) {
    check(o);
    if (field_.is_rational()) {
      q_ *= o.q_;
    } else {
      r_ = (r_ * o.r_) % field_.characteristic();
    }
    return *this;
  }

  Scalar inverse() const {
    if (is_zero()) throw Error("division by zero");
    Scalar s = *this;
    if (field_.is_rational()) {
      s.q_ = 1 / q_;
    } else {
      s.r_ = pow_mod(r_, field_.characteristic() - 2, field_.characteristic());
    }
    return s;
  }

  Scalar& operator/=(const Scalar& o) {
    check(o);
    return *this *= o.inverse();
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_) return false;
    return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
  }

  // "3/4", "-1" in characteristic 0; "2 mod 5" in characteristic p.
  std::string to_string() const {
    if (field_.is_rational()) {
      if (denominator(q_) == 1) return numerator(q_).str();
      return numerator(q_).str() + "/" + denominator(q_).str();
    }
    return std::to_string(r_) + " mod " + std::to_string(field_.characteristic());
  }

  // Accepts "a", "a/b" and "a mod p" (p must equal the field characteristic).
  static Scalar parse(std::string_view text, FieldSpec field) {
    std::string s(trim(text));
    if (s.empty()) throw InputError("empty scalar");
    if (auto pos = s.find(" mod "); pos != std::string::npos) {
      std::string modulus(trim(std::string_view(s).substr(pos + 5)));
      std::uint64_t p = 0;
      try {
        p = std::stoull(modulus);
      } catch (const std::exception&) {
        throw InputError("bad modulus in scalar '" + s + "'");
      }
      if (p != field.characteristic()) {
        throw FieldMismatch("scalar '" + s + "' does not belong to " + field.name());
      }
      s = std::string(trim(std::string_view(s).substr(0, pos)));
    }
    try {
      if (auto slash = s.find('/'); slash != std::string::npos) {
        BigInt num(std::string(trim(std::string_view(s).substr(0, slash))));
        BigInt den(std::string(trim(std::string_view(s).substr(slash + 1))));
        if (den == 0) throw InputError("zero denominator in scalar '" + s + "'");
        return Scalar(field, num) / Scalar(field, den);
      }
      return Scalar(field, BigInt(s));
    } catch (const InputError&) {
      throw;
    } catch (const Error&) {
      throw InputError("scalar '" + s + "' is not invertible in " + field.name());
    } catch (const std::exception&) {
      throw InputError("malformed scalar '" + s + "'");
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.to_string();
  }

 private:
  void check(const Scalar& o) const {
    if (field_ != o.field_) {
      throw FieldMismatch("mixing " + field_.name() + " and " + o.field_.name());
    }
  }

  std::uint64_t reduce(const BigInt& v) const {
    BigInt p = field_.characteristic();
    BigInt r = v % p;
    if (r < 0) r += p;
    return r.convert_to<std::uint64_t>();
  }

  static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    b %= m;
    while (e > 0) {
      if (e & 1) result = result * b % m;
      b = b * b % m;
      e >>= 1;
    }
    return result;
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  }

  FieldSpec field_;
  Rational q_ = 0;
  std::uint64_t r_ = 0;
};

using Vector = std::vector<Scalar>;

inline Vector zero_vector(FieldSpec f, std::size_t n) {
  return Vector(n, Scalar::zero(f));
}

inline Vector unit_vector(FieldSpec f, std::size_t n, std::size_t i) {
  Vector v = zero_vector(f, n);
  v.at(i) = Scalar::one(f);
  return v;
}

inline bool is_zero(const Vector& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

// y += a * x
inline void axpy(Vector& y, const Scalar& a, const Vector& x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

inline Vector scaled(Vector v, const Scalar& a) {
  for (auto& x : v) x *= a;
  return v;
}

inline Vector operator+(Vector a, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b.at(i);
  return a;
}

inline Vector operator-(Vector a, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b.at(i);
  return a;
}

}  // namespace lincat
