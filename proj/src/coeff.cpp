#include "dqa/coeff.hpp"

#include <charconv>

namespace dqa {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a * b) % p;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1U)
      result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1U;
  }
  return result;
}

std::uint64_t reduce(const mpz_class &v, std::uint32_t p) {
  return mpz_fdiv_ui(v.get_mpz_t(), p);
}

} // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

CoeffRing CoeffRing::prime_field(std::uint64_t p) {
  if (p > 0xFFFFFFFFULL)
    throw std::invalid_argument("modulus " + std::to_string(p) + " is too large");
  if (!is_prime(p))
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  return CoeffRing(RingKind::prime_field, static_cast<std::uint32_t>(p));
}

CoeffRing CoeffRing::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ')
    text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ')
    text.remove_suffix(1);
  if (text == "Z")
    return integers();
  if (text == "Q")
    return rationals();
  std::string_view digits;
  if (text.starts_with("Fp(") && text.ends_with(")"))
    digits = text.substr(3, text.size() - 4);
  else if (text.starts_with("F"))
    digits = text.substr(1);
  else
    throw std::invalid_argument("unknown ring '" + std::string(text) + "'");
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
    throw std::invalid_argument("bad modulus in ring '" + std::string(text) + "'");
  return prime_field(p);
}

bool CoeffRing::factorial_is_unit(std::uint64_t n) const {
  switch (kind_) {
  case RingKind::rationals:
    return true;
  case RingKind::integers:
    return n <= 1;
  case RingKind::prime_field:
    return modulus_ > n;
  }
  return false;
}

std::string CoeffRing::to_string() const {
  switch (kind_) {
  case RingKind::integers:
    return "Z";
  case RingKind::rationals:
    return "Q";
  case RingKind::prime_field:
    return "Fp(" + std::to_string(modulus_) + ")";
  }
  return "?";
}

Coeff::Coeff(CoeffRing ring) : Coeff(ring, 0L) {}

Coeff::Coeff(CoeffRing ring, long value) : Coeff(ring, mpz_class(value)) {}

Coeff::Coeff(CoeffRing ring, const mpz_class &value) : ring_(ring) {
  if (ring.is_prime_field())
    value_ = reduce(value, ring.modulus());
  else
    value_ = mpq_class(value);
}

Coeff::Coeff(CoeffRing ring, const mpq_class &value) : ring_(ring) {
  mpq_class v = value;
  v.canonicalize();
  switch (ring.kind()) {
  case RingKind::rationals:
    value_ = v;
    break;
  case RingKind::integers:
    if (v.get_den() != 1)
      throw NotInvertible("denominator " + v.get_den().get_str() + " is not a unit in Z");
    value_ = v;
    break;
  case RingKind::prime_field: {
    std::uint64_t den = reduce(v.get_den(), ring.modulus());
    if (den == 0)
      throw NotInvertible("denominator " + v.get_den().get_str() + " vanishes in " +
                          ring.to_string());
    std::uint64_t num = reduce(v.get_num(), ring.modulus());
    value_ = mul_mod(num, pow_mod(den, ring.modulus() - 2, ring.modulus()), ring.modulus());
    break;
  }
  }
}

void Coeff::check_same(const Coeff &o) const {
  if (!(ring_ == o.ring_))
    throw RingMismatch("coefficients from " + ring_.to_string() + " and " + o.ring_.to_string());
}

bool Coeff::is_zero() const {
  if (ring_.is_prime_field())
    return std::get<std::uint64_t>(value_) == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Coeff::is_one() const {
  if (ring_.is_prime_field())
    return std::get<std::uint64_t>(value_) == 1;
  return std::get<mpq_class>(value_) == 1;
}

bool Coeff::is_unit() const {
  switch (ring_.kind()) {
  case RingKind::integers: {
    const auto &q = std::get<mpq_class>(value_);
    return q == 1 || q == -1;
  }
  case RingKind::rationals:
  case RingKind::prime_field:
    return !is_zero();
  }
  return false;
}

bool Coeff::is_negative() const {
  if (ring_.is_prime_field())
    return false;
  return sgn(std::get<mpq_class>(value_)) < 0;
}

Coeff Coeff::inv() const {
  if (!is_unit())
    throw NotInvertible(to_string() + " is not a unit in " + ring_.to_string());
  Coeff out(ring_);
  if (ring_.is_prime_field()) {
    out.value_ = pow_mod(std::get<std::uint64_t>(value_), ring_.modulus() - 2, ring_.modulus());
  } else {
    out.value_ = mpq_class(1) / std::get<mpq_class>(value_);
  }
  return out;
}

Coeff Coeff::pow(std::uint64_t e) const {
  Coeff out(ring_);
  if (ring_.is_prime_field()) {
    out.value_ = pow_mod(std::get<std::uint64_t>(value_), e, ring_.modulus());
    return out;
  }
  const auto &q = std::get<mpq_class>(value_);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
  out.value_ = mpq_class(num, den);
  return out;
}

Coeff &Coeff::operator+=(const Coeff &o) {
  check_same(o);
  if (ring_.is_prime_field()) {
    auto &a = std::get<std::uint64_t>(value_);
    a = (a + std::get<std::uint64_t>(o.value_)) % ring_.modulus();
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  }
  return *this;
}

Coeff &Coeff::operator-=(const Coeff &o) {
  check_same(o);
  if (ring_.is_prime_field()) {
    auto &a = std::get<std::uint64_t>(value_);
    a = (a + ring_.modulus() - std::get<std::uint64_t>(o.value_)) % ring_.modulus();
  } else {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
  }
  return *this;
}

Coeff &Coeff::operator*=(const Coeff &o) {
  check_same(o);
  if (ring_.is_prime_field()) {
    auto &a = std::get<std::uint64_t>(value_);
    a = mul_mod(a, std::get<std::uint64_t>(o.value_), ring_.modulus());
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  }
  return *this;
}

Coeff Coeff::operator-() const {
  Coeff out(*this);
  if (ring_.is_prime_field()) {
    auto &a = std::get<std::uint64_t>(out.value_);
    a = (ring_.modulus() - a) % ring_.modulus();
  } else {
    auto &q = std::get<mpq_class>(out.value_);
    q = -q;
  }
  return out;
}

bool operator==(const Coeff &a, const Coeff &b) {
  return a.ring_ == b.ring_ && a.value_ == b.value_;
}

std::uint64_t Coeff::residue() const {
  if (!ring_.is_prime_field())
    throw RingMismatch("residue() requires a prime field");
  return std::get<std::uint64_t>(value_);
}

mpq_class Coeff::rational_value() const {
  if (ring_.is_prime_field())
    return mpq_class(static_cast<unsigned long>(std::get<std::uint64_t>(value_)));
  return std::get<mpq_class>(value_);
}

std::string Coeff::to_string() const {
  if (ring_.is_prime_field())
    return std::to_string(std::get<std::uint64_t>(value_));
  return std::get<mpq_class>(value_).get_str();
}

} // namespace dqa
