#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "inqi/enumerate.hpp"
#include "inqi/errors.hpp"
#include "inqi/formula.hpp"
#include "inqi/model.hpp"
#include "inqi/normalform.hpp"
#include "inqi/semantics.hpp"

namespace inqi {

enum class InqSystem { InqI, InqB };
enum class SearchSystem { InqI, InqB, MT0 };

inline constexpr int kDefaultSearchWorlds = 4;

// ---------------------------------------------------------------------
// Intuitionistic propositional validity via a contraction-free sequent
// calculus (G4ip). Left implications are split by the shape of their
// antecedent, which makes every rule shrink a multiset measure, so the
// search terminates without loop checking.

namespace detail {

using Context = std::vector<FormulaPtr>;

inline bool context_has(const Context& ctx, const Formula& f) {
  for (const auto& h : ctx)
    if (structurally_equal(*h, f)) return true;
  return false;
}

// Contexts are kept duplicate-free; contraction is admissible here.
inline void context_add(Context& ctx, FormulaPtr f) {
  if (!context_has(ctx, *f)) ctx.push_back(std::move(f));
}

inline Context context_without(const Context& ctx, std::size_t drop) {
  Context out;
  out.reserve(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (i != drop) out.push_back(ctx[i]);
  return out;
}

inline bool g4_prove(Context ctx, FormulaPtr goal) {
  // Invertible right rules.
  while (true) {
    if (goal->kind() == Conn::And)
      return g4_prove(ctx, goal->left()) && g4_prove(ctx, goal->right());
    if (goal->kind() == Conn::Implies) {
      context_add(ctx, goal->left());
      goal = goal->right();
      continue;
    }
    break;
  }

  // Saturate the non-branching left rules.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < ctx.size() && !changed; ++i) {
      const FormulaPtr h = ctx[i];
      switch (h->kind()) {
        case Conn::Falsum:
          return true;
        case Conn::And: {
          ctx = context_without(ctx, i);
          context_add(ctx, h->left());
          context_add(ctx, h->right());
          changed = true;
          break;
        }
        case Conn::Implies: {
          const FormulaPtr& a = h->left();
          switch (a->kind()) {
            case Conn::Falsum:
              ctx = context_without(ctx, i);
              changed = true;
              break;
            case Conn::And: {
              ctx = context_without(ctx, i);
              context_add(ctx, Formula::implies(a->left(),
                                                Formula::implies(a->right(), h->right())));
              changed = true;
              break;
            }
            case Conn::Tensor: {
              ctx = context_without(ctx, i);
              context_add(ctx, Formula::implies(a->left(), h->right()));
              context_add(ctx, Formula::implies(a->right(), h->right()));
              changed = true;
              break;
            }
            case Conn::Atom:
              if (context_has(ctx, *a)) {
                ctx = context_without(ctx, i);
                context_add(ctx, h->right());
                changed = true;
              }
              break;
            default:
              break;  // nested implication: handled below
          }
          break;
        }
        default:
          break;
      }
    }
  }

  if (goal->kind() == Conn::Atom && context_has(ctx, *goal)) return true;

  // Left disjunction branches but stays invertible.
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (ctx[i]->kind() == Conn::Tensor) {
      Context base = context_without(ctx, i);
      Context l = base, r = base;
      context_add(l, ctx[i]->left());
      context_add(r, ctx[i]->right());
      return g4_prove(std::move(l), goal) && g4_prove(std::move(r), goal);
    }
  }

  // Non-invertible choices: right disjunct selection and the nested
  // implication rule.
  if (goal->kind() == Conn::Tensor) {
    if (g4_prove(ctx, goal->left())) return true;
    if (g4_prove(ctx, goal->right())) return true;
  }
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    const FormulaPtr& h = ctx[i];
    if (h->kind() != Conn::Implies || h->left()->kind() != Conn::Implies) continue;
    const FormulaPtr& nested = h->left();  // (a -> b) -> c
    Context first = context_without(ctx, i);
    context_add(first, Formula::implies(nested->right(), h->right()));
    if (g4_prove(std::move(first), nested)) {
      Context second = context_without(ctx, i);
      context_add(second, h->right());
      if (g4_prove(std::move(second), goal)) return true;
    }
  }
  return false;
}

}  // namespace detail

inline bool ipl_valid(const FormulaPtr& f) {
  if (!is_standard(*f)) throw DialectError("ipl_valid takes standard formulas");
  return detail::g4_prove({}, f);
}

// Classical validity by truth table over the atoms of f.
inline bool cpl_valid(const FormulaPtr& f) {
  if (!is_standard(*f)) throw DialectError("cpl_valid takes standard formulas");
  std::vector<std::string> atoms(atoms_of(f).begin(), atoms_of(f).end());
  if (atoms.size() > 24) throw SizeLimitError("truth table over more than 24 atoms");
  struct Rec {
    static bool eval(const Formula& g, const std::map<std::string, bool>& env) {
      switch (g.kind()) {
        case Conn::Atom:
          return env.at(g.atom_name());
        case Conn::Falsum:
          return false;
        case Conn::And:
          return eval(*g.left(), env) && eval(*g.right(), env);
        case Conn::Tensor:
          return eval(*g.left(), env) || eval(*g.right(), env);
        case Conn::Implies:
          return !eval(*g.left(), env) || eval(*g.right(), env);
        default:
          return false;
      }
    }
  };
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << atoms.size()); ++bits) {
    std::map<std::string, bool> env;
    for (std::size_t i = 0; i < atoms.size(); ++i) env[atoms[i]] = (bits >> i) & 1;
    if (!Rec::eval(*f, env)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------
// Validity and entailment for the inquisitive systems. A formula is
// valid exactly when some resolution of it is valid in the underlying
// standard logic (IPL or CPL). The search below follows the resolution
// recurrences without materializing the set at implication nodes: a
// conjunction of implications is valid iff each conjunct is, so the
// choice-function quantifier turns into "for every antecedent
// resolution, some consequent resolution works". This keeps cases like
// iterated dependence premises inside the cap.

struct Countermodel {
  KripkeModel model;
  Team team;
};

struct Verdict {
  bool valid = false;
  // A resolution of the query that the base logic validates; present on
  // a positive verdict when the construction stayed within the cap.
  FormulaPtr witness;
  // Falsifying model and team; filled by the *_with_search variants.
  std::optional<Countermodel> countermodel;
};

namespace detail {

inline bool base_valid(const FormulaPtr& f, InqSystem system) {
  return system == InqSystem::InqI ? ipl_valid(f) : cpl_valid(f);
}

// Returns a valid resolution of f, or null when none exists.
inline FormulaPtr find_valid_resolution(const FormulaPtr& f, InqSystem system,
                                        std::uint64_t cap) {
  if (is_standard(*f)) return base_valid(f, system) ? f : nullptr;
  switch (f->kind()) {
    case Conn::IDisj: {
      if (FormulaPtr w = find_valid_resolution(f->left(), system, cap)) return w;
      return find_valid_resolution(f->right(), system, cap);
    }
    case Conn::And: {
      FormulaPtr l = find_valid_resolution(f->left(), system, cap);
      if (!l) return nullptr;
      FormulaPtr r = find_valid_resolution(f->right(), system, cap);
      if (!r) return nullptr;
      return Formula::conj(l, r);
    }
    case Conn::Tensor: {
      // No shortcut through the halves here: a disjunction of two
      // invalid standard formulas can still be valid.
      for (const auto& a : resolutions(f->left(), cap))
        for (const auto& b : resolutions(f->right(), cap)) {
          FormulaPtr candidate = Formula::tensor(a, b);
          if (base_valid(candidate, system)) return candidate;
        }
      return nullptr;
    }
    case Conn::Implies: {
      std::vector<FormulaPtr> ants = resolutions(f->left(), cap);
      std::vector<FormulaPtr> cons = resolutions(f->right(), cap);
      std::vector<FormulaPtr> parts;
      parts.reserve(ants.size());
      for (const auto& a : ants) {
        FormulaPtr chosen;
        for (const auto& c : cons) {
          FormulaPtr candidate = Formula::implies(a, c);
          if (base_valid(candidate, system)) {
            chosen = candidate;
            break;
          }
        }
        if (!chosen) return nullptr;
        parts.push_back(std::move(chosen));
      }
      return conj_fold(parts);
    }
    default:
      throw DialectError("validity is decided for modality-free formulas only");
  }
}

}  // namespace detail

inline Verdict decide_valid(const FormulaPtr& f, InqSystem system,
                            std::uint64_t cap = kDefaultResolutionCap) {
  Verdict v;
  v.witness = detail::find_valid_resolution(f, system, cap);
  v.valid = v.witness != nullptr;
  return v;
}

// Finite-premise entailment, reduced to validity of the curried
// implication. Premise resolution tuples are enumerated as a product
// (order of premises as given); each tuple must standardly entail some
// resolution of the conclusion.
inline Verdict decide_entails(const std::vector<FormulaPtr>& premises,
                              const FormulaPtr& conclusion, InqSystem system,
                              std::uint64_t cap = kDefaultResolutionCap) {
  if (premises.empty()) return decide_valid(conclusion, system, cap);
  std::vector<std::vector<FormulaPtr>> prem_res;
  std::uint64_t product = 1;
  for (const auto& p : premises) {
    prem_res.push_back(resolutions(p, cap));
    product = detail::sat_mul(product, prem_res.back().size());
    if (product > cap)
      throw ResolutionExplosionError("premise resolution product exceeds the cap of " +
                                     std::to_string(cap));
  }
  std::vector<FormulaPtr> concl_res = resolutions(conclusion, cap);

  Verdict v;
  v.valid = true;
  std::vector<std::size_t> pick(premises.size(), 0);
  // Witness of the curried implication is assembled only in the
  // single-premise case; deeper nestings would reproduce the full
  // choice-function blowup.
  std::vector<FormulaPtr> single_parts;
  while (true) {
    FormulaPtr found;
    for (const auto& c : concl_res) {
      FormulaPtr curried = c;
      for (std::size_t i = premises.size(); i-- > 0;)
        curried = Formula::implies(prem_res[i][pick[i]], curried);
      if (detail::base_valid(curried, system)) {
        found = curried;
        break;
      }
    }
    if (!found) {
      v.valid = false;
      return v;
    }
    if (premises.size() == 1) single_parts.push_back(found);
    // Next tuple; the last premise is the least significant digit.
    std::size_t i = premises.size();
    while (true) {
      if (i == 0) {
        if (premises.size() == 1) v.witness = conj_fold(single_parts);
        return v;
      }
      --i;
      if (++pick[i] < prem_res[i].size()) break;
      pick[i] = 0;
    }
  }
}

// Exhaustive countermodel search in increasing world count; the witness
// is double-checked against the evaluator before it is returned.
inline std::optional<Countermodel> countermodel_search(const FormulaPtr& f, SearchSystem system,
                                                       int max_worlds = kDefaultSearchWorlds,
                                                       EvalOptions opts = {}) {
  if (system != SearchSystem::MT0 && contains_modality(*f))
    throw DialectError("modal formulas are searched in the mt0 system");
  const ModelKind kind = system == SearchSystem::InqI    ? ModelKind::Intuitionistic
                         : system == SearchSystem::InqB ? ModelKind::Classical
                                                        : ModelKind::S4;
  const bool standard_query =
      system == SearchSystem::MT0 ? is_standard_mt0(*f) : is_standard(*f);
  std::vector<std::string> atoms(atoms_of(f).begin(), atoms_of(f).end());

  std::optional<Countermodel> found;
  auto try_model = [&](const KripkeModel& m) {
    if (standard_query) {
      // Truth-conditional queries fail first on the singleton of the
      // lowest-indexed world where they are untrue; that is also the
      // least failing team mask.
      std::uint64_t truths = 0;
      if (system == SearchSystem::MT0) {
        Mt0Eval eval(m, f, opts);
        for (int w = 0; w < m.size(); ++w)
          if (eval.at(Team::single(w))) truths |= std::uint64_t{1} << w;
      } else {
        truths = kripke_truth_set(m, f);
      }
      if (truths != m.full_mask()) {
        int w = std::countr_zero(~truths & m.full_mask());
        found = Countermodel{m, Team::single(w)};
        return false;
      }
      return true;
    }
    if (system == SearchSystem::MT0) {
      Mt0Eval eval(m, f, opts);
      for (std::uint64_t t = 0; t <= m.full_mask(); ++t) {
        if (!eval.at(Team(t))) {
          found = Countermodel{m, Team(t)};
          return false;
        }
        if (t == m.full_mask()) break;
      }
    } else {
      SupportEval eval(m, f, opts);
      for (std::uint64_t t = 0; t <= m.full_mask(); ++t) {
        if (!eval.at(Team(t))) {
          found = Countermodel{m, Team(t)};
          return false;
        }
        if (t == m.full_mask()) break;
      }
    }
    return true;
  };

  enumerate_models_upto(max_worlds, atoms, kind, try_model);
  if (found) {
    bool falsified = system == SearchSystem::MT0
                         ? !supports_mt0(found->model, found->team, f, opts)
                         : !supports(found->model, found->team, f, opts);
    if (!falsified) throw std::logic_error("countermodel failed re-verification");
  }
  return found;
}

inline SearchSystem to_search_system(InqSystem s) {
  return s == InqSystem::InqI ? SearchSystem::InqI : SearchSystem::InqB;
}

inline Verdict decide_valid_with_search(const FormulaPtr& f, InqSystem system,
                                        int max_worlds = kDefaultSearchWorlds,
                                        std::uint64_t cap = kDefaultResolutionCap) {
  Verdict v = decide_valid(f, system, cap);
  if (!v.valid) v.countermodel = countermodel_search(f, to_search_system(system), max_worlds);
  return v;
}

inline Verdict decide_entails_with_search(const std::vector<FormulaPtr>& premises,
                                          const FormulaPtr& conclusion, InqSystem system,
                                          int max_worlds = kDefaultSearchWorlds,
                                          std::uint64_t cap = kDefaultResolutionCap) {
  Verdict v = decide_entails(premises, conclusion, system, cap);
  if (!v.valid) {
    FormulaPtr curried = conclusion;
    for (std::size_t i = premises.size(); i-- > 0;)
      curried = Formula::implies(premises[i], curried);
    v.countermodel = countermodel_search(curried, to_search_system(system), max_worlds);
  }
  return v;
}

}  // namespace inqi
