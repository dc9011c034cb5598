#ifndef DQA_TERMS_HPP
#define DQA_TERMS_HPP

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dqa/coeff.hpp"
#include "dqa/monomial.hpp"

namespace dqa {

using Term = std::pair<Monomial, Coeff>;

// Sorted (MonomialOrder), zero-free list of terms. Shared storage for
// commutative polynomials and normal-ordered Weyl elements.
class TermList {
public:
  TermList() = default;

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  const Term &front() const { return terms_.front(); }
  const Term &back() const { return terms_.back(); }

  const Coeff *find(const Monomial &m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term &t, const Monomial &k) { return MonomialOrder{}(t.first, k); });
    if (it != terms_.end() && it->first == m)
      return &it->second;
    return nullptr;
  }

  // Input must already be sorted and zero-free.
  static TermList from_sorted(std::vector<Term> terms) {
    TermList out;
    out.terms_ = std::move(terms);
    return out;
  }

  static TermList merge(const TermList &a, const TermList &b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    MonomialOrder less;
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && less(i->first, j->first))) {
        out.push_back(*i++);
      } else if (i == a.terms_.end() || less(j->first, i->first)) {
        out.emplace_back(j->first, subtract ? -j->second : j->second);
        ++j;
      } else {
        Coeff c = subtract ? i->second - j->second : i->second + j->second;
        if (!c.is_zero())
          out.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return from_sorted(std::move(out));
  }

  TermList scaled(const Coeff &c) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto &[m, v] : terms_) {
      Coeff w = v * c;
      if (!w.is_zero())
        out.emplace_back(m, std::move(w));
    }
    return from_sorted(std::move(out));
  }

  friend bool operator==(const TermList &, const TermList &) = default;

private:
  std::vector<Term> terms_;
};

// Hash-based accumulator for products; finish() sorts and drops zeros.
class TermAccumulator {
public:
  void add(const Monomial &m, const Coeff &c) {
    if (c.is_zero())
      return;
    auto it = map_.find(m);
    if (it == map_.end())
      map_.emplace(m, c);
    else
      it->second += c;
  }

  TermList finish() {
    std::vector<Term> out;
    out.reserve(map_.size());
    for (auto &[m, c] : map_)
      if (!c.is_zero())
        out.emplace_back(m, std::move(c));
    std::sort(out.begin(), out.end(),
              [](const Term &a, const Term &b) { return MonomialOrder{}(a.first, b.first); });
    map_.clear();
    return TermList::from_sorted(std::move(out));
  }

private:
  std::unordered_map<Monomial, Coeff, MonomialHash> map_;
};

// Renders terms as "c*m + ..." in list order; "0" when empty.
std::string format_terms(const TermList &terms,
                         const std::function<std::string(const Monomial &)> &monomial);

} // namespace dqa

#endif
