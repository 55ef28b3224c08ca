#pragma once

#include <cstdint>
#include <iosfwd>
#include <type_traits>

#include <Eigen/Core>

namespace einf {

/// Residue class modulo the active prime p.
///
/// The characteristic is a process-wide setting (default 2). Values created
/// under one prime must not be mixed with arithmetic under another; use
/// PrimeGuard to scope a change.
class Fp {
 public:
  constexpr Fp() noexcept = default;
  Fp(long long v) noexcept;  // NOLINT(google-explicit-constructor): Eigen builds scalars from int literals

  static std::uint32_t prime() noexcept { return prime_; }
  /// Throws std::invalid_argument unless p is a prime below 2^15.
  static void set_prime(std::uint32_t p);

  std::uint32_t value() const noexcept { return v_; }
  bool is_zero() const noexcept { return v_ == 0; }

  /// Throws std::domain_error on zero.
  Fp inverse() const;
  /// Signed representative in (-p/2, p/2], handy for printing.
  long long symmetric() const noexcept;

  Fp operator-() const noexcept { return Fp::raw(v_ == 0 ? 0 : prime_ - v_); }
  Fp& operator+=(Fp o) noexcept {
    v_ += o.v_;
    if (v_ >= prime_) v_ -= prime_;
    return *this;
  }
  Fp& operator-=(Fp o) noexcept {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + prime_ - o.v_;
    return *this;
  }
  Fp& operator*=(Fp o) noexcept {
    v_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(v_) * o.v_) % prime_);
    return *this;
  }
  Fp& operator/=(Fp o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, Fp b) noexcept { return a += b; }
  friend Fp operator-(Fp a, Fp b) noexcept { return a -= b; }
  friend Fp operator*(Fp a, Fp b) noexcept { return a *= b; }
  friend Fp operator/(Fp a, Fp b) { return a /= b; }
  friend bool operator==(Fp a, Fp b) noexcept { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) noexcept { return a.v_ != b.v_; }

  static Fp raw(std::uint32_t v) noexcept {
    Fp r;
    r.v_ = v;
    return r;
  }

 private:
  std::uint32_t v_ = 0;
  static inline std::uint32_t prime_ = 2;
};

static_assert(sizeof(Fp) == sizeof(std::uint32_t) && std::is_standard_layout_v<Fp>);

std::ostream& operator<<(std::ostream& os, Fp x);

/// (-1)^e in the active field.
inline Fp sign_power(long long e) { return (e & 1) ? Fp(-1) : Fp(1); }

/// Sets the active prime for the lifetime of the guard.
class PrimeGuard {
 public:
  explicit PrimeGuard(std::uint32_t p) : saved_(Fp::prime()) { Fp::set_prime(p); }
  ~PrimeGuard() { Fp::set_prime(saved_); }
  PrimeGuard(const PrimeGuard&) = delete;
  PrimeGuard& operator=(const PrimeGuard&) = delete;

 private:
  std::uint32_t saved_;
};

bool is_prime(std::uint32_t p) noexcept;

}  // namespace einf

namespace Eigen {

template <>
struct NumTraits<einf::Fp> : GenericNumTraits<einf::Fp> {
  using Real = einf::Fp;
  using NonInteger = einf::Fp;
  using Literal = einf::Fp;
  using Nested = einf::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline einf::Fp epsilon() { return einf::Fp(0); }
  static inline einf::Fp dummy_precision() { return einf::Fp(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
