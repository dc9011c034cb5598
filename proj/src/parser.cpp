#include "dqa/parser.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <optional>

namespace dqa {

ParseError::ParseError(const std::string &what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         what),
      line_(line), column_(column) {}

namespace {

struct PolyAlgebra {
  CoeffRing ring;
  std::size_t nvars;

  using Value = Poly;
  Poly constant(const Coeff &c) const { return Poly::constant(ring, nvars, c); }
  Poly variable(std::size_t i) const { return Poly::variable(ring, nvars, i); }
  static bool is_constant(const Poly &v) { return v.is_constant(); }
  static Coeff constant_value(const Poly &v) { return v.constant_term(); }
};

struct WeylAlgebra {
  WeylContext ctx;
  CoeffRing ring = ctx.ring;
  std::size_t nvars = ctx.nvars();

  using Value = WeylElement;
  WeylElement constant(const Coeff &c) const { return WeylElement::constant(ctx, c); }
  WeylElement variable(std::size_t i) const { return WeylElement::generator(ctx, i); }
  static bool is_constant(const WeylElement &v) { return v.is_constant(); }
  static Coeff constant_value(const WeylElement &v) {
    return v.normal_form().constant_term();
  }
};

template <class Algebra> class ExprParser {
public:
  using Value = typename Algebra::Value;

  ExprParser(const Algebra &alg, std::string_view text, char var, std::size_t line)
      : alg_(alg), text_(text), var_(var), line_(line) {}

  Value parse() {
    skip_space();
    if (at_end())
      fail("empty expression");
    Value v = expr();
    skip_space();
    if (!at_end())
      fail(std::string("unexpected '") + text_[pos_] + "'");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string &what) const { throw ParseError(what, line_, pos_ + 1); }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view digits() {
    skip_space();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Value expr() {
    Value acc = term();
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Value term() {
    Value acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Value d = unary();
        if (!Algebra::is_constant(d) || d.is_zero()) {
          pos_ = at;
          fail("division is only allowed by a nonzero constant");
        }
        try {
          acc = acc.scaled(Algebra::constant_value(d).inv());
        } catch (const NotInvertible &e) {
          pos_ = at;
          fail(e.what());
        }
      } else {
        return acc;
      }
    }
  }

  Value unary() {
    if (accept('-'))
      return -unary();
    if (accept('+'))
      return unary();
    return power();
  }

  Value power() {
    Value base = atom();
    if (!accept('^'))
      return base;
    std::size_t at = pos_;
    auto e = digits();
    unsigned exponent = 0;
    auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exponent);
    if (e.empty() || ec != std::errc() || ptr != e.data() + e.size() || exponent > 4096) {
      pos_ = at;
      fail("expected a small nonnegative integer exponent");
    }
    return base.pow(exponent);
  }

  Value atom() {
    skip_space();
    if (at_end())
      fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')'))
        fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto d = digits();
      return alg_.constant(Coeff(alg_.ring, mpz_class(std::string(d))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t at = pos_;
      ++pos_;
      auto d = digits();
      std::size_t index = 0;
      auto [ptr, ec] = std::from_chars(d.data(), d.data() + d.size(), index);
      if (c != var_ || d.empty() || ec != std::errc() || ptr != d.data() + d.size() || index == 0 ||
          index > alg_.nvars) {
        pos_ = at;
        fail("undeclared variable '" + std::string(text_.substr(at, pos_ + d.size() + 1 - at)) +
             "' (expected " + var_ + "1.." + var_ + std::to_string(alg_.nvars) + ")");
      }
      return alg_.variable(index - 1);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const Algebra &alg_;
  std::string_view text_;
  char var_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

} // namespace

Poly parse_poly(std::string_view text, const CoeffRing &ring, std::size_t nvars, char var, std::size_t line) {
  PolyAlgebra alg{ring, nvars};
  return ExprParser<PolyAlgebra>(alg, text, var, line).parse();
}

WeylElement parse_weyl(std::string_view text, const WeylContext &ctx, std::size_t line) {
  WeylAlgebra alg{ctx};
  return ExprParser<WeylAlgebra>(alg, text, 'Y', line).parse();
}

std::string to_string(EndoKind kind) {
  switch (kind) {
  case EndoKind::poly:
    return "poly";
  case EndoKind::poisson:
    return "poisson";
  case EndoKind::weyl:
    return "weyl";
  }
  return "?";
}

PolyEndo EndoFile::poly_endo() const {
  if (kind == EndoKind::weyl)
    throw std::invalid_argument("expected a polynomial file, got kind=weyl");
  return PolyEndo(poly_images);
}

WeylEndo EndoFile::weyl_endo() const {
  if (kind != EndoKind::weyl)
    throw std::invalid_argument("expected kind=weyl, got kind=" + to_string(kind));
  return WeylEndo::from_images(weyl_images);
}

EndoFile parse_endo_file(std::string_view text) {
  EndoFile file;
  bool have_header = false;
  std::map<std::string, std::string> header;
  std::vector<bool> seen;
  std::size_t line_no = 0;
  std::size_t header_line = 0;

  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    std::string_view line = raw.substr(0, raw.find('#'));
    if (trim(line).empty())
      continue;

    if (!have_header) {
      have_header = true;
      header_line = line_no;
      std::size_t pos = 0;
      while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
          ++pos;
        if (pos >= line.size())
          break;
        std::size_t end = pos;
        while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])))
          ++end;
        std::string_view token = line.substr(pos, end - pos);
        auto eq = token.find('=');
        if (eq == std::string_view::npos || eq == 0)
          throw ParseError("expected key=value in header", line_no, pos + 1);
        std::string key(token.substr(0, eq));
        if (key != "ring" && key != "kind" && key != "n" && key != "m")
          throw ParseError("unknown header key '" + key + "'", line_no, pos + 1);
        header[key] = std::string(token.substr(eq + 1));
        pos = end;
      }
      auto need = [&](const char *key) {
        if (!header.count(key))
          throw ParseError(std::string("header is missing '") + key + "'", line_no, 1);
        return header[key];
      };
      try {
        file.ring = CoeffRing::parse(need("ring"));
      } catch (const ParseError &) {
        throw;
      } catch (const std::exception &e) {
        throw ParseError(e.what(), line_no, line.find("ring=") + 1);
      }
      std::string kind = need("kind");
      if (kind == "poly")
        file.kind = EndoKind::poly;
      else if (kind == "poisson")
        file.kind = EndoKind::poisson;
      else if (kind == "weyl")
        file.kind = EndoKind::weyl;
      else
        throw ParseError("kind must be poly, poisson or weyl", line_no, line.find("kind=") + 1);
      std::string count = header.count("n") ? header["n"] : header.count("m") ? header["m"] : "";
      if (count.empty())
        throw ParseError("header is missing 'n'", line_no, 1);
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), value);
      if (ec != std::errc() || ptr != count.data() + count.size() || value == 0)
        throw ParseError("generator count must be a positive integer", line_no, 1);
      file.n = value;
      file.nvars = file.kind == EndoKind::poly ? value : 2 * value;
      if (file.nvars > kMaxVars)
        throw ParseError("at most " + std::to_string(kMaxVars) + " variables are supported", line_no, 1);
      seen.assign(file.nvars, false);
      if (file.kind == EndoKind::weyl)
        file.weyl_images.assign(file.nvars, WeylElement(file.weyl_context()));
      else
        file.poly_images.assign(file.nvars, Poly(file.ring, file.nvars));
      continue;
    }

    auto arrow = line.find("->");
    if (arrow == std::string_view::npos)
      throw ParseError("expected 'Var -> expression'", line_no, 1);
    std::string_view lhs = trim(line.substr(0, arrow));
    std::size_t lhs_col = line.find_first_not_of(" \t") + 1;
    const char letter = file.variable_letter();
    std::size_t index = 0;
    if (lhs.size() < 2 || lhs[0] != letter)
      throw ParseError("left side must be a generator " + std::string(1, letter) + "i", line_no, lhs_col);
    auto [ptr, ec] = std::from_chars(lhs.data() + 1, lhs.data() + lhs.size(), index);
    if (ec != std::errc() || ptr != lhs.data() + lhs.size() || index == 0 || index > file.nvars)
      throw ParseError("undeclared variable '" + std::string(lhs) + "'", line_no, lhs_col);
    if (seen[index - 1])
      throw ParseError("duplicate image for " + std::string(lhs), line_no, lhs_col);
    seen[index - 1] = true;

    // Column offsets in the expression are relative to the arrow.
    std::string_view rhs = line.substr(arrow + 2);
    try {
      if (file.kind == EndoKind::weyl)
        file.weyl_images[index - 1] = parse_weyl(rhs, file.weyl_context(), line_no);
      else
        file.poly_images[index - 1] = parse_poly(rhs, file.ring, file.nvars, letter, line_no);
    } catch (const ParseError &e) {
      std::string what = e.what();
      what = what.substr(what.find(": ") + 2);
      throw ParseError(what, line_no, arrow + 2 + e.column());
    }
  }
  if (!have_header)
    throw ParseError("missing header line", line_no + 1, 1);
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw ParseError("arity mismatch: no image for " + std::string(1, file.variable_letter()) +
                           std::to_string(i + 1) + " (kind=" + to_string(file.kind) + " needs " +
                           std::to_string(file.nvars) + ")",
                       header_line, 1);
  return file;
}

std::string print_endo_file(const EndoFile &file) {
  std::string out = "ring=" + file.ring.to_string() + " kind=" + to_string(file.kind) +
                    " n=" + std::to_string(file.n) + "\n";
  for (std::size_t i = 0; i < file.nvars; ++i) {
    out += std::string(1, file.variable_letter()) + std::to_string(i + 1) + " -> ";
    out += file.kind == EndoKind::weyl ? file.weyl_images[i].to_string() : file.poly_images[i].to_string();
    out += "\n";
  }
  return out;
}

} // namespace dqa
