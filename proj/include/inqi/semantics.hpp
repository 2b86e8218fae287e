#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "inqi/errors.hpp"
#include "inqi/formula.hpp"
#include "inqi/model.hpp"

namespace inqi {

enum class TruthValue { True, False, Undefined };

inline const char* truth_value_name(TruthValue v) {
  switch (v) {
    case TruthValue::True:
      return "true";
    case TruthValue::False:
      return "false";
    case TruthValue::Undefined:
      return "undefined";
  }
  return "?";
}

struct EvalOptions {
  // Team-quantifying clauses enumerate subsets; beyond this many worlds
  // in the quantified range the evaluator refuses rather than sample.
  int subset_cap = 20;
  // Route truth-conditional subformulas through per-world truth sets.
  bool standard_fast_path = true;
};

namespace detail {

enum class SemanticsMode { Inq, Mt0 };

// Support evaluator over one model and one formula, memoized per
// (subformula, team). Two clause sets share the machinery:
//   Inq: implication quantifies over subsets of the up-set R[t];
//   Mt0: implication quantifies over subsets of t, and box/diamond
//        follow the team successor relation.
class TeamEval {
public:
  TeamEval(const KripkeModel& m, FormulaPtr f, EvalOptions opts, SemanticsMode mode)
      : model_(m), root_formula_(std::move(f)), opts_(opts), mode_(mode) {
    if (mode_ == SemanticsMode::Inq && contains_modality(*root_formula_))
      throw DialectError("modalities require the mt0 evaluator");
    if (mode_ == SemanticsMode::Mt0 && m.kind() == ModelKind::Intuitionistic)
      throw DialectError("the mt0 evaluator runs on s4 or classical models");
    root_ = index(root_formula_.get());
  }

  bool at(Team t) { return eval(root_, t.bits() & model_.full_mask()); }

  const KripkeModel& model() const { return model_; }

private:
  struct Node {
    const Formula* f;
    int left = -1;
    int right = -1;
    bool standard = false;
    std::optional<std::uint64_t> truth_set;
    std::unordered_map<std::uint64_t, bool> memo;
  };

  int index(const Formula* f) {
    auto it = ids_.find(f);
    if (it != ids_.end()) return it->second;
    Node n;
    n.f = f;
    if (f->left()) n.left = index(f->left().get());
    if (f->right()) n.right = index(f->right().get());
    n.standard = mode_ == SemanticsMode::Inq ? is_standard(*f) : is_standard_mt0(*f);
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(n));
    ids_.emplace(f, id);
    return id;
  }

  std::uint64_t truth_set(int id) {
    Node& n = nodes_[id];
    if (n.truth_set) return *n.truth_set;
    std::uint64_t out = 0;
    const std::uint64_t full = model_.full_mask();
    switch (n.f->kind()) {
      case Conn::Atom:
        out = model_.atom_mask(n.f->atom_name());
        break;
      case Conn::Falsum:
        out = 0;
        break;
      case Conn::And:
        out = truth_set(n.left) & truth_set(n.right);
        break;
      case Conn::Tensor:
        out = truth_set(n.left) | truth_set(n.right);
        break;
      case Conn::Implies:
        if (mode_ == SemanticsMode::Inq) {
          std::uint64_t tl = truth_set(n.left), tr = truth_set(n.right);
          for (int w = 0; w < model_.size(); ++w)
            if ((model_.reach(w) & tl & ~tr) == 0) out |= std::uint64_t{1} << w;
        } else {
          out = (~truth_set(n.left) | truth_set(n.right)) & full;
        }
        break;
      case Conn::Box: {
        std::uint64_t ts = truth_set(n.left);
        for (int w = 0; w < model_.size(); ++w)
          if ((model_.reach(w) & ~ts) == 0) out |= std::uint64_t{1} << w;
        break;
      }
      case Conn::Diamond: {
        std::uint64_t ts = truth_set(n.left);
        for (int w = 0; w < model_.size(); ++w)
          if ((model_.reach(w) & ts) != 0) out |= std::uint64_t{1} << w;
        break;
      }
      case Conn::IDisj:
        // Never standard; unreachable.
        break;
    }
    n.truth_set = out;
    return out;
  }

  void check_cap(std::uint64_t range, const char* what) const {
    if (std::popcount(range) > opts_.subset_cap)
      throw SizeLimitError(std::string(what) + " would enumerate subsets of " +
                           std::to_string(std::popcount(range)) + " worlds (cap " +
                           std::to_string(opts_.subset_cap) + ")");
  }

  bool eval(int id, std::uint64_t t) {
    Node& n = nodes_[id];
    if (n.standard && opts_.standard_fast_path) return (t & ~truth_set(id)) == 0;
    switch (n.f->kind()) {
      case Conn::Atom:
        return (t & ~model_.atom_mask(n.f->atom_name())) == 0;
      case Conn::Falsum:
        return t == 0;
      default:
        break;
    }
    auto hit = n.memo.find(t);
    if (hit != n.memo.end()) return hit->second;
    bool result = false;
    switch (n.f->kind()) {
      case Conn::And:
        result = eval(n.left, t) && eval(n.right, t);
        break;
      case Conn::IDisj:
        result = eval(n.left, t) || eval(n.right, t);
        break;
      case Conn::Tensor: {
        // A covering pair (t1, t2) with t1 u t2 = t exists exactly when
        // some s <= t supports the left part while t \ s supports the
        // right part; persistency lets t2 shrink to t \ s.
        check_cap(t, "tensor decomposition");
        result = !for_each_submask(t, [&](std::uint64_t s) {
          return !(eval(n.left, s) && eval(n.right, t & ~s));
        });
        break;
      }
      case Conn::Implies: {
        std::uint64_t range = mode_ == SemanticsMode::Inq ? model_.r_image_bits(t) : t;
        check_cap(range, "implication");
        result = for_each_submask(range, [&](std::uint64_t s) {
          return !(eval(n.left, s) && !eval(n.right, s));
        });
        break;
      }
      case Conn::Box:
        result = eval(n.left, model_.r_image_bits(t));
        break;
      case Conn::Diamond: {
        std::uint64_t range = model_.r_image_bits(t);
        check_cap(range, "diamond");
        result = !for_each_submask(range, [&](std::uint64_t s) {
          bool successor = true;
          for_each_world(t, [&](int w) {
            if ((model_.reach(w) & s) == 0) successor = false;
          });
          return !(successor && eval(n.left, s));
        });
        break;
      }
      default:
        break;
    }
    nodes_[id].memo.emplace(t, result);
    return result;
  }

  const KripkeModel& model_;
  FormulaPtr root_formula_;
  EvalOptions opts_;
  SemanticsMode mode_;
  std::vector<Node> nodes_;
  std::unordered_map<const Formula*, int> ids_;
  int root_ = 0;
};

}  // namespace detail

// Reusable evaluators; prefer these when evaluating one formula on many
// teams of the same model.
class SupportEval : public detail::TeamEval {
public:
  SupportEval(const KripkeModel& m, FormulaPtr f, EvalOptions opts = {})
      : TeamEval(m, std::move(f), opts, detail::SemanticsMode::Inq) {}
};

class Mt0Eval : public detail::TeamEval {
public:
  Mt0Eval(const KripkeModel& m, FormulaPtr f, EvalOptions opts = {})
      : TeamEval(m, std::move(f), opts, detail::SemanticsMode::Mt0) {}
};

inline bool supports(const KripkeModel& m, Team t, const FormulaPtr& f, EvalOptions opts = {}) {
  return SupportEval(m, f, opts).at(t);
}

inline bool supports_mt0(const KripkeModel& m, Team t, const FormulaPtr& f,
                         EvalOptions opts = {}) {
  return Mt0Eval(m, f, opts).at(t);
}

// Truth of a formula at a world: support at the singleton team.
inline bool truth_at(const KripkeModel& m, int world, const FormulaPtr& f, EvalOptions opts = {}) {
  return supports(m, Team::single(world), f, opts);
}

// Partial truth value; worlds of an intuitionistic model may settle
// neither a formula nor its negation.
inline TruthValue truth_value(const KripkeModel& m, int world, const FormulaPtr& f,
                              EvalOptions opts = {}) {
  if (truth_at(m, world, f, opts)) return TruthValue::True;
  if (truth_at(m, world, Formula::neg(f), opts)) return TruthValue::False;
  return TruthValue::Undefined;
}

// Direct world-recursive evaluator for standard formulas; returns the
// set of worlds where f is true. Kept independent of the team evaluator
// so the two routes can be checked against each other.
inline std::uint64_t kripke_truth_set(const KripkeModel& m, const FormulaPtr& f) {
  if (!is_standard(*f)) throw DialectError("kripke_truth_set needs a standard formula");
  switch (f->kind()) {
    case Conn::Atom:
      return m.atom_mask(f->atom_name());
    case Conn::Falsum:
      return 0;
    case Conn::And:
      return kripke_truth_set(m, f->left()) & kripke_truth_set(m, f->right());
    case Conn::Tensor:
      return kripke_truth_set(m, f->left()) | kripke_truth_set(m, f->right());
    case Conn::Implies: {
      std::uint64_t tl = kripke_truth_set(m, f->left());
      std::uint64_t tr = kripke_truth_set(m, f->right());
      std::uint64_t out = 0;
      for (int w = 0; w < m.size(); ++w)
        if ((m.reach(w) & tl & ~tr) == 0) out |= std::uint64_t{1} << w;
      return out;
    }
    default:
      throw DialectError("kripke_truth_set needs a standard formula");
  }
}

// Does support of f on this model reduce to pointwise truth? Checked by
// sweeping every team of the model.
inline bool is_truth_conditional_on(const KripkeModel& m, const FormulaPtr& f,
                                    EvalOptions opts = {}) {
  if (m.size() > 16)
    throw SizeLimitError("truth-conditionality sweep is capped at 16 worlds");
  SupportEval eval(m, f, opts);
  std::uint64_t truths = 0;
  for (int w = 0; w < m.size(); ++w)
    if (eval.at(Team::single(w))) truths |= std::uint64_t{1} << w;
  for (std::uint64_t t = 0; t <= m.full_mask(); ++t) {
    if (eval.at(Team(t)) != ((t & ~truths) == 0)) return false;
    if (t == m.full_mask()) break;
  }
  return true;
}

// Primitive clause for a dependence atom over atomic arguments: within
// the team, agreement on each determiner forces agreement on q. The
// desugared implication form must agree with this on s4/classical
// models; that definability claim is exercised by a property suite.
inline bool mt0_dependence_primitive(const KripkeModel& m, Team t,
                                     const std::vector<std::string>& determiners,
                                     const std::string& q) {
  std::vector<std::uint64_t> dmasks;
  for (const auto& p : determiners) dmasks.push_back(m.atom_mask(p));
  std::uint64_t qmask = m.atom_mask(q);
  bool ok = true;
  for_each_world(t.bits(), [&](int w) {
    for_each_world(t.bits(), [&](int v) {
      bool agree = true;
      for (std::uint64_t dm : dmasks)
        if (((dm >> w) & 1) != ((dm >> v) & 1)) agree = false;
      if (agree && ((qmask >> w) & 1) != ((qmask >> v) & 1)) ok = false;
    });
  });
  return ok;
}

}  // namespace inqi
