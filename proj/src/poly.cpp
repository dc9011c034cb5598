#include "dqa/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace dqa {

Poly::Poly(CoeffRing ring, std::size_t nvars) : ring_(ring), nvars_(nvars) {
  if (nvars > kMaxVars)
    throw std::invalid_argument("at most 8 variables are supported");
}

Poly Poly::constant(CoeffRing ring, std::size_t nvars, const Coeff &c) {
  return term(ring, Monomial(nvars), c);
}

Poly Poly::constant(CoeffRing ring, std::size_t nvars, long c) {
  return constant(ring, nvars, Coeff(ring, c));
}

Poly Poly::variable(CoeffRing ring, std::size_t nvars, std::size_t i) {
  if (i >= nvars)
    throw std::out_of_range("variable index out of range");
  return term(ring, Monomial::variable(nvars, i), Coeff(ring, 1L));
}

Poly Poly::term(CoeffRing ring, const Monomial &m, const Coeff &c) {
  if (!(c.ring() == ring))
    throw RingMismatch("coefficient ring differs from polynomial ring");
  Poly p(ring, m.size());
  if (!c.is_zero())
    p.terms_ = TermList::from_sorted({Term{m, c}});
  return p;
}

Poly Poly::from_terms(CoeffRing ring, std::size_t nvars, TermList terms) {
  Poly p(ring, nvars);
  p.terms_ = std::move(terms);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_one());
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_.front().first.is_one() && terms_.front().second.is_one();
}

Coeff Poly::coeff(const Monomial &m) const {
  if (const Coeff *c = terms_.find(m))
    return *c;
  return Coeff(ring_);
}

std::optional<unsigned> Poly::degree() const {
  if (terms_.empty())
    return std::nullopt;
  return terms_.back().first.degree();
}

void Poly::check_compatible(const Poly &o) const {
  if (!(ring_ == o.ring_) || nvars_ != o.nvars_)
    throw RingMismatch("polynomials over " + ring_.to_string() + "[" + std::to_string(nvars_) +
                       "] and " + o.ring_.to_string() + "[" + std::to_string(o.nvars_) + "]");
}

Poly &Poly::operator+=(const Poly &o) {
  check_compatible(o);
  terms_ = TermList::merge(terms_, o.terms_, false);
  return *this;
}

Poly &Poly::operator-=(const Poly &o) {
  check_compatible(o);
  terms_ = TermList::merge(terms_, o.terms_, true);
  return *this;
}

Poly Poly::operator-() const { return scaled(Coeff(ring_, -1L)); }

Poly operator*(const Poly &a, const Poly &b) {
  a.check_compatible(b);
  if (a.is_zero() || b.is_zero())
    return Poly(a.ring_, a.nvars_);
  TermAccumulator acc;
  for (const auto &[ma, ca] : a.terms_)
    for (const auto &[mb, cb] : b.terms_)
      acc.add(ma * mb, ca * cb);
  return Poly::from_terms(a.ring_, a.nvars_, acc.finish());
}

Poly Poly::scaled(const Coeff &c) const {
  return from_terms(ring_, nvars_, terms_.scaled(c));
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(ring_, nvars_, 1L);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U)
      result = result * base;
    e >>= 1U;
    if (e > 0)
      base = base * base;
  }
  return result;
}

Poly Poly::derivative(std::size_t i) const {
  if (i >= nvars_)
    throw std::out_of_range("derivative index " + std::to_string(i + 1) + " out of range 1.." +
                            std::to_string(nvars_));
  TermAccumulator acc;
  for (const auto &[m, c] : terms_) {
    unsigned e = m[i];
    if (e == 0)
      continue;
    Monomial d = m;
    d.set(i, e - 1);
    acc.add(d, c * Coeff(ring_, static_cast<long>(e)));
  }
  return from_terms(ring_, nvars_, acc.finish());
}

Poly Poly::substitute(const PolyEndo &phi) const {
  if (!(phi.ring() == ring_) || phi.nvars() != nvars_)
    throw RingMismatch("substitution dimension or ring mismatch");
  // powers[i][e] = φ(X_i)^e, built lazily up to the largest exponent used.
  std::vector<std::vector<Poly>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i)
    powers[i].push_back(constant(ring_, nvars_, 1L));
  Poly out(ring_, nvars_);
  for (const auto &[m, c] : terms_) {
    Poly t = constant(ring_, nvars_, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      auto &pw = powers[i];
      while (pw.size() <= m[i])
        pw.push_back(pw.back() * phi.image(i));
      if (m[i] > 0)
        t = t * pw[m[i]];
    }
    out += t;
  }
  return out;
}

Poly substitute(const Poly &f, const PolyEndo &phi) { return f.substitute(phi); }

Poly Poly::frobenius_power() const {
  if (!ring_.is_prime_field())
    throw RingMismatch("frobenius_power requires a prime field");
  const unsigned p = ring_.modulus();
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto &[m, c] : terms_) {
    Monomial q(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i)
      q.set(i, m[i] * p);
    out.emplace_back(q, c);
  }
  // Scaling every exponent by p preserves the graded order.
  return from_terms(ring_, nvars_, TermList::from_sorted(std::move(out)));
}

Coeff Poly::evaluate(std::span<const Coeff> point) const {
  if (point.size() != nvars_)
    throw RingMismatch("evaluation point has wrong dimension");
  Coeff sum(ring_);
  for (const auto &[m, c] : terms_) {
    Coeff t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] > 0)
        t *= point[i].pow(m[i]);
    sum += t;
  }
  return sum;
}

namespace {

std::string monomial_string(const Monomial &m, char var) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0)
      continue;
    if (!s.empty())
      s += '*';
    s += var;
    s += std::to_string(i + 1);
    if (m[i] > 1)
      s += "^" + std::to_string(m[i]);
  }
  return s;
}

} // namespace

std::string format_terms(const TermList &terms, const std::function<std::string(const Monomial &)> &mono) {
  if (terms.empty())
    return "0";
  std::string out;
  bool first = true;
  for (const auto &[m, c] : terms) {
    bool negative = c.is_negative();
    Coeff magnitude = negative ? -c : c;
    std::string body = mono(m);
    std::string coeff = magnitude.to_string();
    std::string piece;
    if (body.empty())
      piece = coeff;
    else if (magnitude.is_one())
      piece = body;
    else
      piece = coeff + "*" + body;
    if (first)
      out = negative ? "-" + piece : piece;
    else
      out += (negative ? " - " : " + ") + piece;
    first = false;
  }
  return out;
}

std::string Poly::to_string(char var) const {
  return format_terms(terms_, [var](const Monomial &m) { return monomial_string(m, var); });
}

PolyEndo::PolyEndo(std::vector<Poly> images) : images_(std::move(images)) {
  if (images_.empty())
    throw std::invalid_argument("an endomorphism needs at least one image");
  for (const auto &f : images_)
    if (f.nvars() != images_.size() || !(f.ring() == images_.front().ring()))
      throw RingMismatch("endomorphism images must share the ring and have nvars = image count");
}

PolyEndo PolyEndo::identity(CoeffRing ring, std::size_t nvars) {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < nvars; ++i)
    images.push_back(Poly::variable(ring, nvars, i));
  return PolyEndo(std::move(images));
}

unsigned PolyEndo::degree() const {
  std::optional<unsigned> best;
  for (const auto &f : images_)
    if (auto d = f.degree(); d && (!best || *d > *best))
      best = d;
  if (!best)
    throw std::domain_error("degree of the zero endomorphism is undefined");
  return *best;
}

bool PolyEndo::is_identity() const { return *this == identity(ring(), nvars()); }

PolyEndo PolyEndo::compose(const PolyEndo &psi) const {
  if (!(psi.ring() == ring()) || psi.nvars() != nvars())
    throw RingMismatch("composition of endomorphisms with different shapes");
  std::vector<Poly> images;
  images.reserve(nvars());
  for (const auto &g : psi.images_)
    images.push_back(g.substitute(*this));
  return PolyEndo(std::move(images));
}

std::vector<std::string> PolyEndo::to_lines(char var) const {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < images_.size(); ++i)
    lines.push_back(std::string(1, var) + std::to_string(i + 1) + " -> " + images_[i].to_string(var));
  return lines;
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Poly> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols || entries_.empty())
    throw std::invalid_argument("matrix entry count does not match its shape");
  for (const auto &e : entries_)
    if (!(e.ring() == entries_.front().ring()) || e.nvars() != entries_.front().nvars())
      throw RingMismatch("matrix entries must share ring and variable count");
}

PolyMatrix PolyMatrix::identity(CoeffRing ring, std::size_t nvars, std::size_t size) {
  std::vector<Poly> entries;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      entries.push_back(Poly::constant(ring, nvars, i == j ? 1L : 0L));
  return PolyMatrix(size, size, std::move(entries));
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix &o) const {
  if (cols_ != o.rows_)
    throw std::invalid_argument("matrix product shape mismatch");
  const Poly &any = entries_.front();
  std::vector<Poly> out;
  out.reserve(rows_ * o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      Poly s(any.ring(), any.nvars());
      for (std::size_t k = 0; k < cols_; ++k)
        s += at(i, k) * o.at(k, j);
      out.push_back(std::move(s));
    }
  return PolyMatrix(rows_, o.cols_, std::move(out));
}

PolyMatrix PolyMatrix::substitute(const PolyEndo &phi) const {
  std::vector<Poly> out;
  out.reserve(entries_.size());
  for (const auto &e : entries_)
    out.push_back(e.substitute(phi));
  return PolyMatrix(rows_, cols_, std::move(out));
}

Poly PolyMatrix::determinant() const {
  if (rows_ != cols_)
    throw std::invalid_argument("determinant of a non-square matrix");
  if (rows_ > 16)
    throw std::invalid_argument("determinant limited to 16x16 matrices");
  const std::size_t n = rows_;
  const Poly &any = entries_.front();
  // partial[mask]: signed sum over assignments of the first popcount(mask)
  // rows to the columns in mask.
  std::vector<std::optional<Poly>> partial(std::size_t{1} << n);
  partial[0] = Poly::constant(any.ring(), any.nvars(), 1L);
  for (std::size_t mask = 0; mask < partial.size(); ++mask) {
    if (!partial[mask] || partial[mask]->is_zero())
      continue;
    std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (row == n)
      continue;
    for (std::size_t col = 0; col < n; ++col) {
      if (mask & (std::size_t{1} << col))
        continue;
      const Poly &entry = at(row, col);
      if (entry.is_zero())
        continue;
      // Columns already used that sit to the right of col each add one inversion.
      std::size_t higher = mask >> (col + 1);
      Poly t = *partial[mask] * entry;
      if (__builtin_popcountll(higher) % 2 == 1)
        t = -t;
      auto &slot = partial[mask | (std::size_t{1} << col)];
      if (slot)
        *slot += t;
      else
        slot = std::move(t);
    }
  }
  const auto &full = partial.back();
  return full ? *full : Poly(any.ring(), any.nvars());
}

PolyMatrix jacobian(const PolyEndo &phi) {
  const std::size_t m = phi.nvars();
  std::vector<Poly> entries;
  entries.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      entries.push_back(phi.image(i).derivative(j));
  return PolyMatrix(m, m, std::move(entries));
}

} // namespace dqa
