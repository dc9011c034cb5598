#ifndef DQA_LINSOLVE_HPP
#define DQA_LINSOLVE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <utility>

#include "dqa/coeff.hpp"

namespace dqa {

// Incremental Gaussian elimination over a field on sparse column vectors.
//
// Columns are added one at a time. Each stored row is kept with its leading
// key (largest under Less) as pivot, normalised to 1, together with the
// combination of original columns that produces it. A column that reduces to
// zero yields a kernel vector; solve() expresses a target in the column span.
template <class Key, class Less = std::less<Key>>
class EchelonBasis {
public:
  using Vector = std::map<Key, Coeff, Less>;
  using Combination = std::map<std::size_t, Coeff>;

  explicit EchelonBasis(CoeffRing field) : field_(field) {
    if (!field.is_field())
      throw RingMismatch("Gaussian elimination requires a field, got " + field.to_string());
  }

  // Returns a kernel vector when the column depends on earlier ones.
  std::optional<Combination> add_column(std::size_t index, Vector v) {
    Combination comb;
    comb.emplace(index, Coeff(field_, 1L));
    while (!v.empty()) {
      auto lead = std::prev(v.end());
      auto row = rows_.find(lead->first);
      if (row == rows_.end())
        break;
      Coeff f = lead->second;
      axpy(v, -f, row->second.vec);
      axpy(comb, -f, row->second.comb);
    }
    if (v.empty())
      return comb;
    Coeff scale = std::prev(v.end())->second.inv();
    for (auto &[k, c] : v)
      c *= scale;
    for (auto &[k, c] : comb)
      c *= scale;
    Key pivot = std::prev(v.end())->first;
    rows_.emplace(std::move(pivot), Row{std::move(v), std::move(comb)});
    return std::nullopt;
  }

  // Coefficients x with sum_j x_j column_j == target, or nothing.
  std::optional<Combination> solve(Vector target) const {
    Combination comb;
    while (!target.empty()) {
      auto lead = std::prev(target.end());
      auto row = rows_.find(lead->first);
      if (row == rows_.end())
        return std::nullopt;
      Coeff f = lead->second;
      axpy(target, -f, row->second.vec);
      axpy(comb, f, row->second.comb);
    }
    return comb;
  }

  std::size_t rank() const { return rows_.size(); }

private:
  struct Row {
    Vector vec;
    Combination comb;
  };

  template <class Map>
  static void axpy(Map &y, const Coeff &a, const Map &x) {
    for (const auto &[k, c] : x) {
      auto it = y.find(k);
      Coeff add = a * c;
      if (it == y.end()) {
        if (!add.is_zero())
          y.emplace(k, std::move(add));
      } else {
        it->second += add;
        if (it->second.is_zero())
          y.erase(it);
      }
    }
  }

  CoeffRing field_;
  std::map<Key, Row, Less> rows_;
};

} // namespace dqa

#endif
