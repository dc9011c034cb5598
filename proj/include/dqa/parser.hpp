#ifndef DQA_PARSER_HPP
#define DQA_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dqa/poly.hpp"
#include "dqa/weyl.hpp"

namespace dqa {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// Expressions over + - * / ^ ( ), integer literals and variables
// <var>1..<var>k. Multiplication is explicit; '/' only by a constant.
// `line` is used for error positions.
Poly parse_poly(std::string_view text, const CoeffRing &ring, std::size_t nvars, char var = 'X',
                std::size_t line = 1);

// Words are multiplied left to right in the Weyl algebra, so Y1*Y2 and
// Y2*Y1 differ by 1.
WeylElement parse_weyl(std::string_view text, const WeylContext &ctx, std::size_t line = 1);

enum class EndoKind { poly, poisson, weyl };

std::string to_string(EndoKind kind);

struct EndoFile {
  CoeffRing ring = CoeffRing::integers();
  EndoKind kind = EndoKind::poly;
  // Half the variable count for poisson and weyl; the variable count for poly.
  std::size_t n = 0;
  std::size_t nvars = 0;
  std::vector<Poly> poly_images;
  std::vector<WeylElement> weyl_images;

  char variable_letter() const { return kind == EndoKind::weyl ? 'Y' : 'X'; }
  PolyEndo poly_endo() const;
  // Throws RelationViolation when the images break the Weyl relations.
  WeylEndo weyl_endo() const;
  WeylContext weyl_context() const { return WeylContext(ring, n); }

  friend bool operator==(const EndoFile &, const EndoFile &) = default;
};

// Header: key=value pairs (ring, kind, n, m) on the first non-blank line,
// then one "Var -> expression" line per generator. '#' starts a comment.
EndoFile parse_endo_file(std::string_view text);
std::string print_endo_file(const EndoFile &file);

} // namespace dqa

#endif
