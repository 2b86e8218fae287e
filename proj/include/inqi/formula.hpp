#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "inqi/errors.hpp"

namespace inqi {

// Which language a piece of text is parsed against. InqI and InqB share
// one modality-free language; MT0 adds box and diamond.
enum class Dialect { InqI, InqB, MT0 };

enum class Conn : std::uint8_t {
  Atom,
  Falsum,
  And,
  Tensor,   // standard disjunction, written |
  IDisj,    // inquisitive disjunction, written \/
  Implies,
  Box,      // MT0 only
  Diamond,  // MT0 only
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula tree. Negation and the question mark are not node
// kinds: ~f is stored as f -> bot, and ?f as f \/ ~f. Dependence sugar
// =(p1,...,pn,q) expands to ?p1 & ... & ?pn -> ?q at parse time, so every
// algorithm downstream only ever sees the eight constructors above.
class Formula : public std::enable_shared_from_this<Formula> {
public:
  Conn kind() const { return kind_; }
  const std::string& atom_name() const { return atom_; }
  const FormulaPtr& left() const { return left_; }    // also the operand of Box/Diamond
  const FormulaPtr& right() const { return right_; }  // null for unary nodes
  std::size_t hash() const { return hash_; }

  static FormulaPtr atom(std::string name) {
    return make(Conn::Atom, std::move(name), nullptr, nullptr);
  }
  static FormulaPtr falsum() { return make(Conn::Falsum, {}, nullptr, nullptr); }
  static FormulaPtr conj(FormulaPtr l, FormulaPtr r) {
    return make(Conn::And, {}, std::move(l), std::move(r));
  }
  static FormulaPtr tensor(FormulaPtr l, FormulaPtr r) {
    return make(Conn::Tensor, {}, std::move(l), std::move(r));
  }
  static FormulaPtr idisj(FormulaPtr l, FormulaPtr r) {
    return make(Conn::IDisj, {}, std::move(l), std::move(r));
  }
  static FormulaPtr implies(FormulaPtr l, FormulaPtr r) {
    return make(Conn::Implies, {}, std::move(l), std::move(r));
  }
  static FormulaPtr box(FormulaPtr sub) { return make(Conn::Box, {}, std::move(sub), nullptr); }
  static FormulaPtr diamond(FormulaPtr sub) {
    return make(Conn::Diamond, {}, std::move(sub), nullptr);
  }

  static FormulaPtr neg(FormulaPtr f) { return implies(std::move(f), falsum()); }
  static FormulaPtr question(FormulaPtr f) { return idisj(f, neg(f)); }

private:
  Formula(Conn k, std::string a, FormulaPtr l, FormulaPtr r)
      : kind_(k), atom_(std::move(a)), left_(std::move(l)), right_(std::move(r)) {
    std::size_t h = static_cast<std::size_t>(kind_) * 0x9e3779b97f4a7c15ull;
    for (char c : atom_) h = h * 131 + static_cast<unsigned char>(c);
    if (left_) h = h * 0x100000001b3ull ^ left_->hash_;
    if (right_) h = (h << 7 | h >> 57) ^ right_->hash_;
    hash_ = h;
  }

  static FormulaPtr make(Conn k, std::string a, FormulaPtr l, FormulaPtr r) {
    return std::shared_ptr<const Formula>(new Formula(k, std::move(a), std::move(l), std::move(r)));
  }

  Conn kind_;
  std::string atom_;
  FormulaPtr left_;
  FormulaPtr right_;
  std::size_t hash_;
};

inline bool structurally_equal(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Conn::Atom:
      return a.atom_name() == b.atom_name();
    case Conn::Falsum:
      return true;
    case Conn::Box:
    case Conn::Diamond:
      return structurally_equal(*a.left(), *b.left());
    default:
      return structurally_equal(*a.left(), *b.left()) &&
             structurally_equal(*a.right(), *b.right());
  }
}

inline bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  return structurally_equal(*a, *b);
}

struct FormulaHash {
  std::size_t operator()(const FormulaPtr& f) const { return f->hash(); }
};
struct FormulaEq {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const {
    return structurally_equal(*a, *b);
  }
};

inline bool contains_idisj(const Formula& f) {
  switch (f.kind()) {
    case Conn::Atom:
    case Conn::Falsum:
      return false;
    case Conn::IDisj:
      return true;
    case Conn::Box:
    case Conn::Diamond:
      return contains_idisj(*f.left());
    default:
      return contains_idisj(*f.left()) || contains_idisj(*f.right());
  }
}

inline bool contains_modality(const Formula& f) {
  switch (f.kind()) {
    case Conn::Atom:
    case Conn::Falsum:
      return false;
    case Conn::Box:
    case Conn::Diamond:
      return true;
    default:
      return contains_modality(*f.left()) || contains_modality(*f.right());
  }
}

// Standard formulas: free of inquisitive disjunction (and, in the
// modality-free dialects, of modalities). These are exactly the
// truth-conditional core of the language.
inline bool is_standard(const Formula& f) {
  return !contains_idisj(f) && !contains_modality(f);
}
inline bool is_standard(const FormulaPtr& f) { return is_standard(*f); }

// MT0 reading: modalities are part of the standard fragment.
inline bool is_standard_mt0(const Formula& f) { return !contains_idisj(f); }
inline bool is_standard_mt0(const FormulaPtr& f) { return is_standard_mt0(*f); }

inline void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Conn::Atom:
      out.insert(f.atom_name());
      return;
    case Conn::Falsum:
      return;
    case Conn::Box:
    case Conn::Diamond:
      collect_atoms(*f.left(), out);
      return;
    default:
      collect_atoms(*f.left(), out);
      collect_atoms(*f.right(), out);
  }
}

inline std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}
inline std::set<std::string> atoms_of(const FormulaPtr& f) { return atoms_of(*f); }

// Right-nested folds; used for resolution conjunctions and normal forms.
// The input must be nonempty.
inline FormulaPtr fold_right(const std::vector<FormulaPtr>& parts,
                             FormulaPtr (*join)(FormulaPtr, FormulaPtr)) {
  FormulaPtr acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = join(parts[i], acc);
  return acc;
}
inline FormulaPtr conj_fold(const std::vector<FormulaPtr>& parts) {
  return fold_right(parts, &Formula::conj);
}
inline FormulaPtr tensor_fold(const std::vector<FormulaPtr>& parts) {
  return fold_right(parts, &Formula::tensor);
}
inline FormulaPtr idisj_fold(const std::vector<FormulaPtr>& parts) {
  return fold_right(parts, &Formula::idisj);
}

namespace detail {

// Binding strength; unary operators and leaves are complete units.
inline int precedence(Conn k) {
  switch (k) {
    case Conn::Implies:
      return 1;
    case Conn::IDisj:
      return 2;
    case Conn::Tensor:
      return 3;
    case Conn::And:
      return 4;
    default:
      return 5;
  }
}

inline void render_into(const Formula& f, int min_prec, std::string& out);

inline void render_unary(const char* op, const Formula& operand, std::string& out) {
  out += op;
  render_into(operand, 5, out);
}

inline void render_into(const Formula& f, int min_prec, std::string& out) {
  // Re-sugar ~ and ? so printed output matches the usual notation.
  if (f.kind() == Conn::Implies && f.right()->kind() == Conn::Falsum) {
    render_unary("~", *f.left(), out);
    return;
  }
  if (f.kind() == Conn::IDisj && f.right()->kind() == Conn::Implies &&
      f.right()->right()->kind() == Conn::Falsum &&
      structurally_equal(*f.left(), *f.right()->left())) {
    render_unary("?", *f.left(), out);
    return;
  }
  switch (f.kind()) {
    case Conn::Atom:
      out += f.atom_name();
      return;
    case Conn::Falsum:
      out += "bot";
      return;
    case Conn::Box:
      render_unary("[]", *f.left(), out);
      return;
    case Conn::Diamond:
      render_unary("<>", *f.left(), out);
      return;
    default:
      break;
  }
  const int p = precedence(f.kind());
  const bool parens = p < min_prec;
  if (parens) out += '(';
  // All binary connectives associate to the right, so the left child
  // needs strictly higher binding strength to round-trip structurally.
  render_into(*f.left(), p + 1, out);
  switch (f.kind()) {
    case Conn::And:
      out += " & ";
      break;
    case Conn::Tensor:
      out += " | ";
      break;
    case Conn::IDisj:
      out += " \\/ ";
      break;
    case Conn::Implies:
      out += " -> ";
      break;
    default:
      break;
  }
  render_into(*f.right(), p, out);
  if (parens) out += ')';
}

}  // namespace detail

inline std::string render_formula(const Formula& f) {
  std::string out;
  detail::render_into(f, 1, out);
  return out;
}
inline std::string render_formula(const FormulaPtr& f) { return render_formula(*f); }

}  // namespace inqi
