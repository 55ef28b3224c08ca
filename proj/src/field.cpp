#include "einf/field.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace einf {

bool is_prime(std::uint32_t p) noexcept {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Fp::Fp(long long v) noexcept {
  long long r = v % static_cast<long long>(prime_);
  if (r < 0) r += prime_;
  v_ = static_cast<std::uint32_t>(r);
}

void Fp::set_prime(std::uint32_t p) {
  if (!is_prime(p) || p >= (1u << 15)) {
    throw std::invalid_argument("characteristic must be a prime below 32768, got " + std::to_string(p));
  }
  prime_ = p;
}

Fp Fp::inverse() const {
  if (v_ == 0) throw std::domain_error("inverse of zero in F_p");
  long long a = v_, m = prime_, x0 = 1, x1 = 0;
  while (m != 0) {
    const long long q = a / m;
    long long t = a - q * m;
    a = m;
    m = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return Fp(x0);
}

long long Fp::symmetric() const noexcept {
  return v_ > prime_ / 2 ? static_cast<long long>(v_) - prime_ : static_cast<long long>(v_);
}

std::ostream& operator<<(std::ostream& os, Fp x) { return os << x.value(); }

}  // namespace einf
