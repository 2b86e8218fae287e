#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "inqi/formula.hpp"

namespace inqi {

// Natural deduction rules. Tags follow the wire format of the proof
// JSON files; 'split' is the scheme turning a -> (phi \/ psi) into
// (a -> phi) \/ (a -> psi) for standard a, and 'dne' is double negation
// elimination for standard formulas (the classical system only).
enum class Rule {
  Hyp,
  AndI,
  AndE1,
  AndE2,
  ImplI,
  ImplE,
  IorI1,
  IorI2,
  IorE,
  OrI1,
  OrI2,
  OrE,
  OrA,
  OrC,
  OrD,
  OrR,
  BotE,
  Split,
  Dne,
};

inline const char* rule_tag(Rule r) {
  switch (r) {
    case Rule::Hyp: return "hyp";
    case Rule::AndI: return "andI";
    case Rule::AndE1: return "andE1";
    case Rule::AndE2: return "andE2";
    case Rule::ImplI: return "implI";
    case Rule::ImplE: return "implE";
    case Rule::IorI1: return "iorI1";
    case Rule::IorI2: return "iorI2";
    case Rule::IorE: return "iorE";
    case Rule::OrI1: return "orI1";
    case Rule::OrI2: return "orI2";
    case Rule::OrE: return "orE";
    case Rule::OrA: return "orA";
    case Rule::OrC: return "orC";
    case Rule::OrD: return "orD";
    case Rule::OrR: return "orR";
    case Rule::BotE: return "botE";
    case Rule::Split: return "split";
    case Rule::Dne: return "dne";
  }
  return "?";
}

inline std::optional<Rule> rule_from_tag(const std::string& tag) {
  for (Rule r : {Rule::Hyp, Rule::AndI, Rule::AndE1, Rule::AndE2, Rule::ImplI, Rule::ImplE,
                 Rule::IorI1, Rule::IorI2, Rule::IorE, Rule::OrI1, Rule::OrI2, Rule::OrE,
                 Rule::OrA, Rule::OrC, Rule::OrD, Rule::OrR, Rule::BotE, Rule::Split, Rule::Dne})
    if (tag == rule_tag(r)) return r;
  return std::nullopt;
}

// InqB admits every rule; InqI drops dne; the tensor-free subsystem
// additionally drops every rule mentioning the tensor disjunction.
enum class ProofSystem { InqI, InqB, InqIMinus };

inline std::optional<ProofSystem> proof_system_from_name(const std::string& s) {
  if (s == "inqi") return ProofSystem::InqI;
  if (s == "inqb") return ProofSystem::InqB;
  if (s == "inqi-minus") return ProofSystem::InqIMinus;
  return std::nullopt;
}

struct ProofNode {
  Rule rule = Rule::Hyp;
  FormulaPtr conclusion;
  std::vector<ProofNode> premises;
  std::vector<std::string> discharge;  // labels bound in designated subproofs
  std::string label;                   // hypothesis leaves only
};

enum class ProofErrorKind {
  BadTree,
  RuleUnavailable,
  RuleMismatch,
  SideConditionViolation,
  DischargeError,
};

inline const char* proof_error_kind_name(ProofErrorKind k) {
  switch (k) {
    case ProofErrorKind::BadTree: return "BadTree";
    case ProofErrorKind::RuleUnavailable: return "RuleUnavailable";
    case ProofErrorKind::RuleMismatch: return "RuleMismatch";
    case ProofErrorKind::SideConditionViolation: return "SideConditionViolation";
    case ProofErrorKind::DischargeError: return "DischargeError";
  }
  return "?";
}

struct ProofError {
  ProofErrorKind kind;
  std::string path;
  std::string message;
};

struct Sequent {
  std::vector<FormulaPtr> premises;  // undischarged hypotheses, first occurrence order
  FormulaPtr conclusion;
};

struct ProofCheckResult {
  std::optional<Sequent> sequent;
  std::optional<ProofError> error;
  bool ok() const { return sequent.has_value(); }
};

namespace detail {

struct CheckFail {
  ProofError error;
};

[[noreturn]] inline void fail(ProofErrorKind kind, const std::string& path,
                              const std::string& message) {
  throw CheckFail{ProofError{kind, path, message}};
}

struct OpenHyp {
  std::string label;
  FormulaPtr formula;
};

inline void merge_open(std::vector<OpenHyp>& into, const std::vector<OpenHyp>& from) {
  for (const auto& h : from) {
    bool present = false;
    for (const auto& e : into)
      if (e.label == h.label && structurally_equal(*e.formula, *h.formula)) present = true;
    if (!present) into.push_back(h);
  }
}

// Closes every open hypothesis carrying `label` in this subtree's open
// set; a label attached to a different formula than the rule discharges
// is an error. Discharging a label with no open occurrence is allowed.
inline void discharge_label(std::vector<OpenHyp>& open, const std::string& label,
                            const FormulaPtr& required, const std::string& path) {
  std::vector<OpenHyp> kept;
  for (auto& h : open) {
    if (h.label != label) {
      kept.push_back(std::move(h));
      continue;
    }
    if (!structurally_equal(*h.formula, *required))
      fail(ProofErrorKind::DischargeError, path,
           "label " + label + " is attached to " + render_formula(h.formula) +
               " but the rule discharges " + render_formula(required));
  }
  open = std::move(kept);
}

inline bool rule_available(Rule r, ProofSystem system) {
  if (r == Rule::Dne) return system == ProofSystem::InqB;
  if (system == ProofSystem::InqIMinus) {
    switch (r) {
      case Rule::OrI1:
      case Rule::OrI2:
      case Rule::OrE:
      case Rule::OrA:
      case Rule::OrC:
      case Rule::OrD:
      case Rule::OrR:
        return false;
      default:
        return true;
    }
  }
  return true;
}

inline int rule_arity(Rule r) {
  switch (r) {
    case Rule::Hyp:
      return 0;
    case Rule::AndI:
    case Rule::ImplE:
      return 2;
    case Rule::IorE:
    case Rule::OrE:
    case Rule::OrR:
      return 3;
    default:
      return 1;
  }
}

inline int rule_discharge_count(Rule r) {
  switch (r) {
    case Rule::ImplI:
      return 1;
    case Rule::IorE:
    case Rule::OrE:
    case Rule::OrR:
      return 2;
    default:
      return 0;
  }
}

inline std::vector<OpenHyp> check_node(const ProofNode& node, ProofSystem system,
                                       const std::string& path);

inline std::vector<OpenHyp> check_premises_and_collect(const ProofNode& node, ProofSystem system,
                                                       const std::string& path,
                                                       std::vector<std::vector<OpenHyp>>& per) {
  per.clear();
  for (std::size_t i = 0; i < node.premises.size(); ++i)
    per.push_back(check_node(node.premises[i], system, path + ".premises[" +
                                                    std::to_string(i) + "]"));
  std::vector<OpenHyp> open;
  for (const auto& p : per) merge_open(open, p);
  return open;
}

inline std::vector<OpenHyp> check_node(const ProofNode& node, ProofSystem system,
                                       const std::string& path) {
  if (!node.conclusion) fail(ProofErrorKind::BadTree, path, "missing conclusion");
  if (!rule_available(node.rule, system))
    fail(ProofErrorKind::RuleUnavailable, path,
         std::string(rule_tag(node.rule)) + " is not part of this proof system");
  if (static_cast<int>(node.premises.size()) != rule_arity(node.rule))
    fail(ProofErrorKind::BadTree, path,
         std::string(rule_tag(node.rule)) + " takes " + std::to_string(rule_arity(node.rule)) +
             " premises");
  if (static_cast<int>(node.discharge.size()) != rule_discharge_count(node.rule))
    fail(ProofErrorKind::DischargeError, path,
         std::string(rule_tag(node.rule)) + " discharges exactly " +
             std::to_string(rule_discharge_count(node.rule)) + " labels");
  if (node.rule == Rule::Hyp && node.label.empty())
    fail(ProofErrorKind::BadTree, path, "hypothesis leaf needs a label");

  const FormulaPtr& c = node.conclusion;
  auto mismatch = [&](const std::string& why) {
    fail(ProofErrorKind::RuleMismatch, path, why);
  };
  auto side = [&](const std::string& why) {
    fail(ProofErrorKind::SideConditionViolation, path, why);
  };
  auto eq = [](const FormulaPtr& a, const FormulaPtr& b) { return structurally_equal(*a, *b); };

  std::vector<std::vector<OpenHyp>> per;
  std::vector<OpenHyp> open = check_premises_and_collect(node, system, path, per);
  auto prem = [&](int i) -> const FormulaPtr& { return node.premises[i].conclusion; };

  switch (node.rule) {
    case Rule::Hyp:
      return {OpenHyp{node.label, c}};
    case Rule::AndI:
      if (c->kind() != Conn::And || !eq(c->left(), prem(0)) || !eq(c->right(), prem(1)))
        mismatch("conclusion is not the conjunction of the premises");
      break;
    case Rule::AndE1:
      if (prem(0)->kind() != Conn::And || !eq(c, prem(0)->left()))
        mismatch("conclusion is not the left conjunct of the premise");
      break;
    case Rule::AndE2:
      if (prem(0)->kind() != Conn::And || !eq(c, prem(0)->right()))
        mismatch("conclusion is not the right conjunct of the premise");
      break;
    case Rule::ImplI: {
      if (c->kind() != Conn::Implies || !eq(c->right(), prem(0)))
        mismatch("conclusion must be an implication ending in the premise");
      open.clear();
      merge_open(open, per[0]);
      discharge_label(open, node.discharge[0], c->left(), path);
      return open;
    }
    case Rule::ImplE:
      if (prem(1)->kind() != Conn::Implies || !eq(prem(1)->left(), prem(0)) ||
          !eq(prem(1)->right(), c))
        mismatch("premises must be the antecedent and the implication");
      break;
    case Rule::IorI1:
      if (c->kind() != Conn::IDisj || !eq(c->left(), prem(0)))
        mismatch("conclusion is not an inquisitive disjunction with the premise on the left");
      break;
    case Rule::IorI2:
      if (c->kind() != Conn::IDisj || !eq(c->right(), prem(0)))
        mismatch("conclusion is not an inquisitive disjunction with the premise on the right");
      break;
    case Rule::IorE:
    case Rule::OrE: {
      Conn want = node.rule == Rule::IorE ? Conn::IDisj : Conn::Tensor;
      if (prem(2)->kind() != want) mismatch("third premise must be the disjunction");
      if (!eq(prem(0), c) || !eq(prem(1), c))
        mismatch("both case subproofs must conclude the conclusion");
      if (node.rule == Rule::OrE && !is_standard(*c))
        side("tensor elimination only concludes standard formulas");
      open.clear();
      merge_open(open, per[0]);
      discharge_label(open, node.discharge[0], prem(2)->left(), path);
      std::vector<OpenHyp> second;
      merge_open(second, per[1]);
      discharge_label(second, node.discharge[1], prem(2)->right(), path);
      merge_open(open, second);
      merge_open(open, per[2]);
      return open;
    }
    case Rule::OrI1:
      if (c->kind() != Conn::Tensor || !eq(c->left(), prem(0)))
        mismatch("conclusion is not a tensor disjunction with the premise on the left");
      break;
    case Rule::OrI2:
      if (c->kind() != Conn::Tensor || !eq(c->right(), prem(0)))
        mismatch("conclusion is not a tensor disjunction with the premise on the right");
      break;
    case Rule::OrA: {
      const FormulaPtr& p = prem(0);
      bool shape = p->kind() == Conn::Tensor && p->right()->kind() == Conn::Tensor &&
                   c->kind() == Conn::Tensor && c->left()->kind() == Conn::Tensor &&
                   eq(c->left()->left(), p->left()) &&
                   eq(c->left()->right(), p->right()->left()) &&
                   eq(c->right(), p->right()->right());
      if (!shape) mismatch("conclusion must reassociate a | (b | c) to (a | b) | c");
      break;
    }
    case Rule::OrC:
      if (prem(0)->kind() != Conn::Tensor || c->kind() != Conn::Tensor ||
          !eq(c->left(), prem(0)->right()) || !eq(c->right(), prem(0)->left()))
        mismatch("conclusion must commute the premise disjunction");
      break;
    case Rule::OrD: {
      const FormulaPtr& p = prem(0);
      bool shape = p->kind() == Conn::Tensor && p->right()->kind() == Conn::IDisj &&
                   c->kind() == Conn::IDisj && c->left()->kind() == Conn::Tensor &&
                   c->right()->kind() == Conn::Tensor && eq(c->left()->left(), p->left()) &&
                   eq(c->left()->right(), p->right()->left()) &&
                   eq(c->right()->left(), p->left()) &&
                   eq(c->right()->right(), p->right()->right());
      if (!shape) mismatch("conclusion must distribute a | (b \\/ c) to (a | b) \\/ (a | c)");
      break;
    }
    case Rule::OrR: {
      if (prem(2)->kind() != Conn::Tensor) mismatch("third premise must be a tensor disjunction");
      if (c->kind() != Conn::Tensor || !eq(c->left(), prem(0)) || !eq(c->right(), prem(1)))
        mismatch("conclusion must be the tensor of the two subproof conclusions");
      open.clear();
      merge_open(open, per[0]);
      discharge_label(open, node.discharge[0], prem(2)->left(), path);
      std::vector<OpenHyp> second;
      merge_open(second, per[1]);
      discharge_label(second, node.discharge[1], prem(2)->right(), path);
      merge_open(open, second);
      merge_open(open, per[2]);
      return open;
    }
    case Rule::BotE:
      if (prem(0)->kind() != Conn::Falsum) mismatch("premise must be bot");
      break;
    case Rule::Split: {
      const FormulaPtr& p = prem(0);
      bool shape = p->kind() == Conn::Implies && p->right()->kind() == Conn::IDisj &&
                   c->kind() == Conn::IDisj && c->left()->kind() == Conn::Implies &&
                   c->right()->kind() == Conn::Implies && eq(c->left()->left(), p->left()) &&
                   eq(c->right()->left(), p->left()) &&
                   eq(c->left()->right(), p->right()->left()) &&
                   eq(c->right()->right(), p->right()->right());
      if (!shape)
        mismatch("conclusion must split a -> (b \\/ c) into (a -> b) \\/ (a -> c)");
      if (!is_standard(*p->left())) side("the split antecedent must be standard");
      break;
    }
    case Rule::Dne: {
      const FormulaPtr& p = prem(0);
      bool shape = p->kind() == Conn::Implies && p->right()->kind() == Conn::Falsum &&
                   p->left()->kind() == Conn::Implies &&
                   p->left()->right()->kind() == Conn::Falsum && eq(p->left()->left(), c);
      if (!shape) mismatch("premise must be the double negation of the conclusion");
      if (!is_standard(*c)) side("double negation elimination needs a standard formula");
      break;
    }
  }
  return open;
}

}  // namespace detail

// Verifies every node against its rule schema and returns the proved
// sequent: undischarged hypotheses on the left, the root conclusion on
// the right. Vacuous discharge is permitted; the two case subproofs of
// an elimination may share undischarged hypotheses.
inline ProofCheckResult check_proof(const ProofNode& root, ProofSystem system) {
  ProofCheckResult result;
  try {
    auto open = detail::check_node(root, system, "root");
    Sequent seq;
    seq.conclusion = root.conclusion;
    for (const auto& h : open) {
      bool dup = false;
      for (const auto& p : seq.premises)
        if (structurally_equal(*p, *h.formula)) dup = true;
      if (!dup) seq.premises.push_back(h.formula);
    }
    result.sequent = std::move(seq);
  } catch (const detail::CheckFail& f) {
    result.error = f.error;
  }
  return result;
}

}  // namespace inqi
