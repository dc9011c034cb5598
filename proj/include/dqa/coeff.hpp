#ifndef DQA_COEFF_HPP
#define DQA_COEFF_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace dqa {

// Raised when operands live in different rings or have incompatible shapes.
class RingMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Raised by Coeff::inv on a non-unit.
class NotInvertible : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

enum class RingKind : std::uint8_t { integers, rationals, prime_field };

bool is_prime(std::uint64_t n);

// Descriptor of an exact coefficient ring: Z, Q, or F_p.
class CoeffRing {
public:
  static CoeffRing integers() { return CoeffRing(RingKind::integers, 0); }
  static CoeffRing rationals() { return CoeffRing(RingKind::rationals, 0); }
  // Throws std::invalid_argument unless p is prime and fits in 32 bits.
  static CoeffRing prime_field(std::uint64_t p);

  // Accepts "Z", "Q", "Fp(<prime>)" and the shorthand "F<prime>".
  static CoeffRing parse(std::string_view text);

  RingKind kind() const { return kind_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t characteristic() const { return modulus_; }
  bool is_field() const { return kind_ != RingKind::integers; }
  bool is_prime_field() const { return kind_ == RingKind::prime_field; }

  // True iff n! is invertible in the ring.
  bool factorial_is_unit(std::uint64_t n) const;

  std::string to_string() const;

  friend bool operator==(const CoeffRing &, const CoeffRing &) = default;

private:
  CoeffRing(RingKind kind, std::uint32_t modulus) : kind_(kind), modulus_(modulus) {}

  RingKind kind_;
  std::uint32_t modulus_;
};

inline std::uint32_t ring_char(const CoeffRing &ring) { return ring.characteristic(); }

// An exact scalar of a CoeffRing. Prime-field values are residues in [0, p);
// integers and rationals are held as canonical mpq values (denominator 1 for Z).
class Coeff {
public:
  explicit Coeff(CoeffRing ring);
  Coeff(CoeffRing ring, long value);
  Coeff(CoeffRing ring, const mpz_class &value);
  // Maps a rational into the ring. Throws NotInvertible if the denominator
  // is not a unit (e.g. 1/2 in Z or in F_2).
  Coeff(CoeffRing ring, const mpq_class &value);

  const CoeffRing &ring() const { return ring_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;
  // True for negative integers/rationals; always false in F_p.
  bool is_negative() const;

  Coeff inv() const;
  Coeff pow(std::uint64_t e) const;

  Coeff &operator+=(const Coeff &o);
  Coeff &operator-=(const Coeff &o);
  Coeff &operator*=(const Coeff &o);
  Coeff operator-() const;

  friend Coeff operator+(Coeff a, const Coeff &b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff &b) { return a -= b; }
  friend Coeff operator*(Coeff a, const Coeff &b) { return a *= b; }
  friend bool operator==(const Coeff &a, const Coeff &b);

  std::uint64_t residue() const;
  mpq_class rational_value() const;

  std::string to_string() const;

private:
  void check_same(const Coeff &o) const;

  CoeffRing ring_;
  std::variant<std::uint64_t, mpq_class> value_;
};

} // namespace dqa

#endif
