#pragma once

// Exact scalar fields: GMP-backed rationals and a prime field with a
// process-wide modulus.

#include <gmpxx.h>

#include <atomic>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace serrelab {

template <class F>
concept Field = std::regular<F> && requires(const F a, const F b) {
  { a + b } -> std::same_as<F>;
  { a - b } -> std::same_as<F>;
  { a * b } -> std::same_as<F>;
  { a / b } -> std::same_as<F>;
  { -a } -> std::same_as<F>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.str() } -> std::convertible_to<std::string>;
  { F::name() } -> std::convertible_to<std::string>;
  F(0);
  F(1);
};

class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT: implicit by design, like mpq_class
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  static Rational parse(std::string_view s) {
    mpq_class q;
    if (q.set_str(std::string(s), 10) != 0) {
      throw std::invalid_argument("not a rational: " + std::string(s));
    }
    if (q.get_den() == 0) throw std::domain_error("zero denominator");
    q.canonicalize();
    return Rational(q);
  }

  static std::string name() { return "rational"; }

  bool is_zero() const { return sgn(v_) == 0; }
  std::string str() const { return v_.get_str(); }
  const mpq_class& value() const { return v_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ + b.v_), raw_tag{});
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ - b.v_), raw_tag{});
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ * b.v_), raw_tag{});
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return Rational(mpq_class(a.v_ / b.v_), raw_tag{});
  }
  Rational operator-() const { return Rational(mpq_class(-v_), raw_tag{}); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }

 private:
  struct raw_tag {};
  Rational(mpq_class v, raw_tag) : v_(std::move(v)) {}
  mpq_class v_;
};

inline std::atomic<std::uint32_t>& fp_modulus_storage() {
  static std::atomic<std::uint32_t> p{32003};
  return p;
}

/// Integers modulo a prime chosen once per session via set_modulus.
class Fp {
 public:
  static constexpr std::uint32_t kDefaultModulus = 32003;

  static bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) return false;
    }
    return true;
  }
  static void set_modulus(std::uint32_t p) {
    if (!is_prime(p) || p > (1u << 31)) {
      throw std::invalid_argument("modulus must be a prime below 2^31");
    }
    fp_modulus_storage().store(p);
  }
  static std::uint32_t modulus() { return fp_modulus_storage().load(); }
  static std::string name() { return "fp:" + std::to_string(modulus()); }

  Fp() = default;
  Fp(long v) {  // NOLINT: implicit by design
    const long p = static_cast<long>(modulus());
    long r = v % p;
    if (r < 0) r += p;
    v_ = static_cast<std::uint32_t>(r);
  }

  bool is_zero() const { return v_ == 0; }
  std::string str() const { return std::to_string(v_); }
  std::uint32_t value() const { return v_; }

  friend Fp operator+(Fp a, Fp b) { return raw((std::uint64_t{a.v_} + b.v_) % modulus()); }
  friend Fp operator-(Fp a, Fp b) {
    return raw((std::uint64_t{a.v_} + modulus() - b.v_) % modulus());
  }
  friend Fp operator*(Fp a, Fp b) { return raw((std::uint64_t{a.v_} * b.v_) % modulus()); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return raw(v_ == 0 ? 0 : modulus() - v_); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }

  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero");
    std::uint64_t result = 1, base = v_, e = modulus() - 2;
    while (e > 0) {
      if (e & 1) result = result * base % modulus();
      base = base * base % modulus();
      e >>= 1;
    }
    return raw(result);
  }

 private:
  static Fp raw(std::uint64_t v) {
    Fp f;
    f.v_ = static_cast<std::uint32_t>(v);
    return f;
  }
  std::uint32_t v_ = 0;
};

static_assert(Field<Rational>);
static_assert(Field<Fp>);

}  // namespace serrelab
