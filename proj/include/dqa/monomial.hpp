#ifndef DQA_MONOMIAL_HPP
#define DQA_MONOMIAL_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace dqa {

inline constexpr std::size_t kMaxVars = 8;

// Exponent vector of fixed length. Packed so it can be copied and hashed
// cheaply; the variable count is capped at kMaxVars.
class Monomial {
public:
  using exponent_type = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVars)
      throw std::invalid_argument("at most 8 variables are supported");
  }

  static Monomial variable(std::size_t nvars, std::size_t i, unsigned e = 1) {
    Monomial m(nvars);
    m.set(i, e);
    return m;
  }

  std::size_t size() const { return nvars_; }
  unsigned operator[](std::size_t i) const { return exp_[i]; }

  void set(std::size_t i, unsigned e) {
    if (i >= nvars_)
      throw std::out_of_range("monomial variable index out of range");
    if (e > 0xFFFFU)
      throw std::overflow_error("exponent overflow");
    exp_[i] = static_cast<exponent_type>(e);
  }

  unsigned degree() const {
    unsigned d = 0;
    for (std::size_t i = 0; i < nvars_; ++i)
      d += exp_[i];
    return d;
  }

  bool is_one() const { return degree() == 0; }

  bool divides(const Monomial &o) const {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exp_[i] > o.exp_[i])
        return false;
    return true;
  }

  Monomial &operator*=(const Monomial &o) {
    for (std::size_t i = 0; i < nvars_; ++i)
      set(i, unsigned(exp_[i]) + o.exp_[i]);
    return *this;
  }
  friend Monomial operator*(Monomial a, const Monomial &b) { return a *= b; }

  friend bool operator==(const Monomial &, const Monomial &) = default;

  std::size_t hash() const {
    std::size_t h = nvars_;
    for (std::size_t i = 0; i < nvars_; ++i)
      h = h * 1000003U + exp_[i];
    return h;
  }

private:
  std::array<exponent_type, kMaxVars> exp_{};
  std::uint8_t nvars_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial &m) const { return m.hash(); }
};

// Graded order: lower total degree first; within a degree, X1 outranks X2
// (so X1^2 precedes X1*X2). Printing walks terms in this order.
struct MonomialOrder {
  bool operator()(const Monomial &a, const Monomial &b) const {
    unsigned da = a.degree(), db = b.degree();
    if (da != db)
      return da < db;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i])
        return a[i] > b[i];
    return false;
  }
};

// All monomials in nvars variables of total degree exactly `degree`, in
// MonomialOrder.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  Monomial m(nvars);
  // Recursive fill from the first variable: larger leading exponents first.
  auto fill = [&](auto &&self, std::size_t i, unsigned left) -> void {
    if (i + 1 == nvars) {
      m.set(i, left);
      out.push_back(m);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      m.set(i, e);
      self(self, i + 1, left - e);
    }
    m.set(i, 0);
  };
  if (nvars == 0) {
    if (degree == 0)
      out.push_back(m);
    return out;
  }
  fill(fill, 0, degree);
  return out;
}

} // namespace dqa

#endif
