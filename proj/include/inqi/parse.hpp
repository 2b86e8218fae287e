#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "inqi/errors.hpp"
#include "inqi/formula.hpp"

namespace inqi {

// ASCII grammar, loosest to tightest binding:
//
//   imp     := idisj (('->' | '<->') imp)?          right-associative
//   idisj   := tensor ('\/' idisj)?
//   tensor  := conj ('|' tensor)?
//   conj    := unary ('&' conj)?
//   unary   := ('~' | '?' | '[]' | '<>') unary | primary
//   primary := atom | 'bot' | '(' imp ')' | '=' '(' atom (',' atom)+ ')'
//   atom    := [a-z][A-Za-z0-9_]*
//
// '<->' and '=(...)' are sugar and never appear in the output tree;
// '[]'/'<>' are accepted only when parsing the MT0 dialect.

namespace detail {

class Parser {
public:
  Parser(std::string_view text, Dialect dialect) : text_(text), dialect_(dialect) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_implication();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  FormulaPtr parse_implication() {
    FormulaPtr lhs = parse_idisj();
    skip_space();
    if (eat("<->")) {
      FormulaPtr rhs = parse_implication();
      return Formula::conj(Formula::implies(lhs, rhs), Formula::implies(rhs, lhs));
    }
    if (eat("->")) return Formula::implies(lhs, parse_implication());
    return lhs;
  }

  FormulaPtr parse_idisj() {
    FormulaPtr lhs = parse_tensor();
    if (eat("\\")) {
      if (!eat("/")) fail("expected '/' after '\\'");
      return Formula::idisj(lhs, parse_idisj());
    }
    return lhs;
  }

  FormulaPtr parse_tensor() {
    FormulaPtr lhs = parse_conj();
    if (eat("|")) return Formula::tensor(lhs, parse_tensor());
    return lhs;
  }

  FormulaPtr parse_conj() {
    FormulaPtr lhs = parse_unary();
    if (eat("&")) return Formula::conj(lhs, parse_conj());
    return lhs;
  }

  FormulaPtr parse_unary() {
    skip_space();
    const std::size_t at = pos_;
    if (eat("~")) return Formula::neg(parse_unary());
    if (eat("?")) return Formula::question(parse_unary());
    if (eat("[]")) {
      require_mt0(at);
      return Formula::box(parse_unary());
    }
    if (eat("<>")) {
      require_mt0(at);
      return Formula::diamond(parse_unary());
    }
    return parse_primary();
  }

  void require_mt0(std::size_t at) const {
    if (dialect_ != Dialect::MT0)
      throw DialectError("modality at position " + std::to_string(at) +
                         " is only allowed in the mt0 dialect");
  }

  FormulaPtr parse_primary() {
    skip_space();
    if (eat("(")) {
      FormulaPtr f = parse_implication();
      if (!eat(")")) fail("expected ')'");
      return f;
    }
    if (eat("=")) return parse_dependence();
    std::string name = parse_atom_name();
    if (name == "bot") return Formula::falsum();
    return Formula::atom(std::move(name));
  }

  // =(p1,...,pn,q) with n >= 1 becomes ?p1 & ... & ?pn -> ?q.
  FormulaPtr parse_dependence() {
    if (!eat("(")) fail("expected '(' after '='");
    std::vector<std::string> names;
    names.push_back(parse_atom_name());
    while (eat(",")) names.push_back(parse_atom_name());
    if (!eat(")")) fail("expected ')' in dependence expression");
    if (names.size() < 2) fail("dependence expression needs at least two atoms");
    std::vector<FormulaPtr> determiners;
    for (std::size_t i = 0; i + 1 < names.size(); ++i)
      determiners.push_back(Formula::question(Formula::atom(names[i])));
    return Formula::implies(conj_fold(determiners),
                            Formula::question(Formula::atom(names.back())));
  }

  std::string parse_atom_name() {
    skip_space();
    if (pos_ >= text_.size() || !std::islower(static_cast<unsigned char>(text_[pos_])))
      fail("expected an atom");
    std::size_t start = pos_;
    ++pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        ++pos_;
      else
        break;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  Dialect dialect_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline FormulaPtr parse_formula(std::string_view text, Dialect dialect = Dialect::InqI) {
  return detail::Parser(text, dialect).parse();
}

}  // namespace inqi
