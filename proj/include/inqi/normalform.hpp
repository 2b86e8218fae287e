#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "inqi/errors.hpp"
#include "inqi/formula.hpp"

namespace inqi {

inline constexpr std::uint64_t kDefaultResolutionCap = 10000;

namespace detail {

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > ~std::uint64_t{0} / b) return ~std::uint64_t{0};
  return a * b;
}

inline std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  while (exp--) {
    out = sat_mul(out, base);
    if (out == ~std::uint64_t{0}) return out;
  }
  return out;
}

}  // namespace detail

// Size of the resolution set before structural deduplication, following
// the defining recurrence (implication contributes |right|^|left| choice
// functions). Saturates instead of overflowing.
inline std::uint64_t resolution_count(const FormulaPtr& f) {
  if (is_standard(*f)) return 1;
  switch (f->kind()) {
    case Conn::And:
    case Conn::Tensor:
      return detail::sat_mul(resolution_count(f->left()), resolution_count(f->right()));
    case Conn::IDisj: {
      std::uint64_t l = resolution_count(f->left()), r = resolution_count(f->right());
      return l + r < l ? ~std::uint64_t{0} : l + r;
    }
    case Conn::Implies:
      return detail::sat_pow(resolution_count(f->right()), resolution_count(f->left()));
    default:
      throw DialectError("resolutions are defined for modality-free formulas only");
  }
}

namespace detail {

inline std::vector<FormulaPtr> resolutions_rec(const FormulaPtr& f, std::uint64_t cap) {
  if (resolution_count(f) > cap)
    throw ResolutionExplosionError("resolution set of '" + render_formula(f) +
                                   "' exceeds the cap of " + std::to_string(cap));
  if (is_standard(*f)) return {f};
  switch (f->kind()) {
    case Conn::IDisj: {
      std::vector<FormulaPtr> out = resolutions_rec(f->left(), cap);
      std::vector<FormulaPtr> rhs = resolutions_rec(f->right(), cap);
      out.insert(out.end(), rhs.begin(), rhs.end());
      return out;
    }
    case Conn::And:
    case Conn::Tensor: {
      auto join = f->kind() == Conn::And ? &Formula::conj : &Formula::tensor;
      std::vector<FormulaPtr> ls = resolutions_rec(f->left(), cap);
      std::vector<FormulaPtr> rs = resolutions_rec(f->right(), cap);
      std::vector<FormulaPtr> out;
      out.reserve(ls.size() * rs.size());
      for (const auto& a : ls)
        for (const auto& b : rs) out.push_back(join(a, b));
      return out;
    }
    case Conn::Implies: {
      std::vector<FormulaPtr> ls = resolutions_rec(f->left(), cap);
      std::vector<FormulaPtr> rs = resolutions_rec(f->right(), cap);
      // One resolution per choice function left -> right, enumerated
      // with the first antecedent resolution as most significant digit.
      std::vector<std::uint64_t> place(ls.size());
      std::uint64_t total = 1;
      for (std::size_t i = ls.size(); i-- > 0;) {
        place[i] = total;
        total *= rs.size();
      }
      std::vector<FormulaPtr> out;
      out.reserve(total);
      for (std::uint64_t combo = 0; combo < total; ++combo) {
        std::vector<FormulaPtr> parts;
        parts.reserve(ls.size());
        for (std::size_t i = 0; i < ls.size(); ++i)
          parts.push_back(Formula::implies(ls[i], rs[(combo / place[i]) % rs.size()]));
        out.push_back(conj_fold(parts));
      }
      return out;
    }
    default:
      throw DialectError("resolutions are defined for modality-free formulas only");
  }
}

inline std::vector<FormulaPtr> dedup_structural(std::vector<FormulaPtr> in) {
  std::unordered_set<FormulaPtr, FormulaHash, FormulaEq> seen;
  std::vector<FormulaPtr> out;
  for (auto& f : in)
    if (seen.insert(f).second) out.push_back(std::move(f));
  return out;
}

}  // namespace detail

// The standard formulas whose inquisitive disjunction is equivalent to
// f. Deterministic order: left-to-right generation, first occurrence
// kept on structural duplicates.
inline std::vector<FormulaPtr> resolutions(const FormulaPtr& f,
                                           std::uint64_t cap = kDefaultResolutionCap) {
  return detail::dedup_structural(detail::resolutions_rec(f, cap));
}

// Right-nested inquisitive disjunction of the resolutions; standard
// formulas are their own normal form.
inline FormulaPtr normal_form(const FormulaPtr& f, std::uint64_t cap = kDefaultResolutionCap) {
  if (is_standard(*f)) return f;
  return idisj_fold(resolutions(f, cap));
}

// Replace every inquisitive disjunction with a tensor disjunction.
inline FormulaPtr standard_variant(const FormulaPtr& f) {
  switch (f->kind()) {
    case Conn::Atom:
    case Conn::Falsum:
      return f;
    case Conn::And:
      return Formula::conj(standard_variant(f->left()), standard_variant(f->right()));
    case Conn::Tensor:
    case Conn::IDisj:
      return Formula::tensor(standard_variant(f->left()), standard_variant(f->right()));
    case Conn::Implies:
      return Formula::implies(standard_variant(f->left()), standard_variant(f->right()));
    default:
      throw DialectError("standard_variant is defined for modality-free formulas only");
  }
}

// Double-negate each resolution and rejoin with inquisitive disjunction;
// embeds the classical system into the intuitionistic one.
inline FormulaPtr negative_translation(const FormulaPtr& f,
                                       std::uint64_t cap = kDefaultResolutionCap) {
  std::vector<FormulaPtr> parts;
  for (const auto& r : resolutions(f, cap)) parts.push_back(Formula::neg(Formula::neg(r)));
  return idisj_fold(parts);
}

// Modal translation into the s4 team language: atoms and falsum get
// boxed, implications get boxed after translating both sides, the other
// connectives commute.
inline FormulaPtr box_translation(const FormulaPtr& f) {
  switch (f->kind()) {
    case Conn::Atom:
      return Formula::box(f);
    case Conn::Falsum:
      return Formula::box(f);
    case Conn::And:
      return Formula::conj(box_translation(f->left()), box_translation(f->right()));
    case Conn::Tensor:
      return Formula::tensor(box_translation(f->left()), box_translation(f->right()));
    case Conn::IDisj:
      return Formula::idisj(box_translation(f->left()), box_translation(f->right()));
    case Conn::Implies:
      return Formula::box(
          Formula::implies(box_translation(f->left()), box_translation(f->right())));
    default:
      throw DialectError("box_translation takes modality-free input");
  }
}

}  // namespace inqi
