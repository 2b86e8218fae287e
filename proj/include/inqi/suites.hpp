#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "inqi/decide.hpp"
#include "inqi/enumerate.hpp"
#include "inqi/errors.hpp"
#include "inqi/generate.hpp"
#include "inqi/model_json.hpp"
#include "inqi/normalform.hpp"
#include "inqi/parse.hpp"
#include "inqi/semantics.hpp"

namespace inqi {

struct SuiteFailure {
  int case_index = 0;
  std::string description;
  std::string model_json;  // shrunk witness, when the case carries a model
  std::string formula;
  std::string team;
};

struct SuiteReport {
  std::string suite;
  int cases = 0;
  std::vector<SuiteFailure> failures;
  bool ok() const { return failures.empty(); }
};

namespace suites_detail {

struct FailDetail {
  std::string text;
  std::string team;
};

using CasePred =
    std::function<std::optional<FailDetail>(const KripkeModel&, const FormulaPtr&)>;

inline std::optional<FailDetail> guarded(const CasePred& pred, const KripkeModel& m,
                                         const FormulaPtr& f) {
  try {
    return pred(m, f);
  } catch (const SizeLimitError&) {
    return std::nullopt;
  } catch (const ResolutionExplosionError&) {
    return std::nullopt;
  }
}

template <typename Ok>
inline std::optional<Team> first_bad_team(const KripkeModel& m, Ok&& ok) {
  for (std::uint64_t t = 0;; ++t) {
    if (!ok(Team(t))) return Team(t);
    if (t >= m.full_mask()) break;
  }
  return std::nullopt;
}

inline std::string team_text(const KripkeModel& m, Team t) {
  std::string out;
  for_each_world(t.bits(), [&](int w) {
    if (!out.empty()) out += ",";
    out += m.name(w);
  });
  return out.empty() ? "(empty)" : out;
}

inline void one_step_shrinks(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  switch (f->kind()) {
    case Conn::Atom:
    case Conn::Falsum:
      return;
    case Conn::Box:
      out.push_back(f->left());
      {
        std::vector<FormulaPtr> subs;
        one_step_shrinks(f->left(), subs);
        for (auto& s : subs) out.push_back(Formula::box(std::move(s)));
      }
      return;
    case Conn::Diamond:
      out.push_back(f->left());
      {
        std::vector<FormulaPtr> subs;
        one_step_shrinks(f->left(), subs);
        for (auto& s : subs) out.push_back(Formula::diamond(std::move(s)));
      }
      return;
    default: {
      out.push_back(f->left());
      out.push_back(f->right());
      auto rebuild = [&](FormulaPtr l, FormulaPtr r) {
        switch (f->kind()) {
          case Conn::And:
            return Formula::conj(std::move(l), std::move(r));
          case Conn::Tensor:
            return Formula::tensor(std::move(l), std::move(r));
          case Conn::IDisj:
            return Formula::idisj(std::move(l), std::move(r));
          default:
            return Formula::implies(std::move(l), std::move(r));
        }
      };
      std::vector<FormulaPtr> ls, rs;
      one_step_shrinks(f->left(), ls);
      one_step_shrinks(f->right(), rs);
      for (auto& l : ls) out.push_back(rebuild(l, f->right()));
      for (auto& r : rs) out.push_back(rebuild(f->left(), r));
      return;
    }
  }
}

// Greedy witness shrinking: drop worlds while the case still fails, then
// replace subformulas by their children.
inline FailDetail shrink_case(KripkeModel& m, FormulaPtr& f, const CasePred& pred,
                              FailDetail last) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int w = m.size() - 1; w >= 0; --w) {
      KripkeModel candidate = m.restricted(m.full_mask() & ~(std::uint64_t{1} << w)).first;
      if (auto d = guarded(pred, candidate, f)) {
        m = std::move(candidate);
        last = *d;
        changed = true;
        break;
      }
    }
    if (changed) continue;
    std::vector<FormulaPtr> candidates;
    one_step_shrinks(f, candidates);
    for (auto& c : candidates) {
      if (auto d = guarded(pred, m, c)) {
        f = std::move(c);
        last = *d;
        changed = true;
        break;
      }
    }
  }
  return last;
}

// Driver for properties quantified over one random model and one random
// formula; failures are shrunk before reporting.
template <typename GenFormula>
inline SuiteReport run_model_formula_suite(const std::string& name, const GenConfig& cfg,
                                           int n_cases, GenFormula&& gen,
                                           const CasePred& pred) {
  SuiteReport rep;
  rep.suite = name;
  rep.cases = n_cases;
  Rng rng(cfg.seed);
  for (int i = 0; i < n_cases; ++i) {
    KripkeModel m = random_model(rng, cfg);
    FormulaPtr f = gen(rng);
    auto d = guarded(pred, m, f);
    if (!d) continue;
    FailDetail detail = shrink_case(m, f, pred, *d);
    SuiteFailure fail;
    fail.case_index = i;
    fail.description = detail.text;
    fail.team = detail.team;
    fail.model_json = model_to_json(m).dump();
    fail.formula = render_formula(f);
    rep.failures.push_back(std::move(fail));
  }
  return rep;
}

inline FormulaPtr gen_budgeted(Rng& rng, const GenConfig& cfg, bool standard) {
  GenConfig c = standard ? cfg.standard_only() : cfg;
  for (int tries = 0; tries < 64; ++tries) {
    FormulaPtr f = random_formula(rng, c);
    if (resolution_count(f) <= cfg.resolution_budget) return f;
  }
  return Formula::atom(c.atom_pool[0]);
}

// Truth values of a standard formula at every world.
inline std::vector<TruthValue> world_truth_values(const KripkeModel& m, const FormulaPtr& f) {
  std::vector<TruthValue> out(m.size());
  for (int w = 0; w < m.size(); ++w) out[w] = truth_value(m, w, f);
  return out;
}

}  // namespace suites_detail

inline std::vector<std::string> suite_names() {
  return {
      "persistency",     "empty_team",         "up_set",
      "minimal_set",     "restriction",        "single_world",
      "standard_fast_path", "polar_question",  "truth_value_persistency",
      "dependence",      "implication_tc",     "tensor_split",
      "mt0_persistency", "mt0_dependence",     "normal_form_equivalence",
      "truth_condition_theorem", "standard_variant", "resolution_count",
      "valid_soundness", "conservativity_ipl", "conservativity_cpl",
      "disjunction_property", "split_property", "internal_split",
      "glivenko",        "box_translation",    "armstrong",
      "deduction_theorem",
  };
}

inline SuiteReport run_suite(const std::string& name, const GenConfig& cfg, int n_cases) {
  using namespace suites_detail;
  using FD = FailDetail;

  auto gen_any = [&cfg](Rng& rng) { return gen_budgeted(rng, cfg, false); };
  auto gen_standard = [&cfg](Rng& rng) { return gen_budgeted(rng, cfg, true); };

  // ------------------------------------------------------------------
  // Structural properties of the support relation.

  if (name == "persistency") {
    return run_model_formula_suite(name, cfg, n_cases, gen_any,
        [](const KripkeModel& m, const FormulaPtr& f) -> std::optional<FD> {
          SupportEval ev(m, f);
          std::optional<FD> out;
          first_bad_team(m, [&](Team t) {
            if (!ev.at(t)) return true;
            std::uint64_t range = m.r_image_bits(t.bits());
            return for_each_submask(range, [&](std::uint64_t s) {
              if (!ev.at(Team(s))) {
                out = FD{"supported at " + team_text(m, t) + " but not at the extension " +
                             team_text(m, Team(s)),
                         team_text(m, t)};
                return false;
              }
              return true;
            });
          });
          return out;
        });
  }

  if (name == "empty_team") {
    return run_model_formula_suite(name, cfg, n_cases, gen_any,
        [](const KripkeModel& m, const FormulaPtr& f) -> std::optional<FD> {
          if (!supports(m, Team::empty(), f))
            return FD{"the empty team fails to support the formula", "(empty)"};
          return std::nullopt;
        });
  }

  if (name == "up_set") {
    return run_model_formula_suite(name, cfg, n_cases, gen_any,
        [](const KripkeModel& m, const FormulaPtr& f) -> std::optional<FD> {
          SupportEval ev(m, f);
          auto bad = first_bad_team(m, [&](Team t) { return ev.at(t) == ev.at(r_image(m, t)); });
          if (bad) return FD{"support differs between the team and its up-set", team_text(m, *bad)};
          return std::nullopt;
        });
  }

  if (name == "minimal_set") {
    return run_model_formula_suite(name, cfg, n_cases, gen_any,
        [](const KripkeModel& m, const FormulaPtr& f) -> std::optional<FD> {
          SupportEval ev(m, f);
          auto bad = first_bad_team(m, [&](Team t) { return ev.at(t) == ev.at(min_set(m, t)); });
          if (bad)
            return FD{"support differs between the team and its minimal elements",
                      team_text(m, *bad)};
          return std::nullopt;
        });
  }

  if (name == "restriction") {
    return run_model_formula_suite(name, cfg, n_cases, gen_any,
        [](const KripkeModel& m, const FormulaPtr& f) -> std::optional<FD> {
          SupportEval ev(m, f);
          auto bad = first_bad_team(m, [&](Team t) {
            auto [sub, st] = generated_submodel(m, t);
            return ev.at(t) == supports(sub, st, f);
          });
          if (bad)
            return FD{"support changes under restriction to the generated submodel",
                      team_text(m, *bad)};
          return std::nullopt;
        });
  }

  if (name == "single_world") {
    return run_model_formula_suite(name, cfg, n_cases, gen_any,
        [](const KripkeModel& m, const FormulaPtr& f) -> std::optional<FD> {
          SupportEval ev(m, f);
          auto bad = first_bad_team(m, [&](Team t) { return ev.at(t); });
          if (!bad) return std::nullopt;
          KripkeModel rooted = add_fresh_root(m);
          if (truth_at(rooted, m.size(), f))
            return FD{"falsified at " + team_text(m, *bad) +
                          " yet true at the fresh root below the model",
                      team_text(m, *bad)};
          return std::nullopt;
        });
  }

  if (name == "standard_fast_path") {
    return run_model_formula_suite(name, cfg, n_cases, gen_standard,
        [](const KripkeModel& m, const FormulaPtr& f) -> std::optional<FD> {
          std::uint64_t truths = kripke_truth_set(m, f);
          EvalOptions slow;
          slow.standard_fast_path = false;
          SupportEval fast(m, f), pure(m, f, slow);
          auto bad = first_bad_team(m, [&](Team t) {
            bool pointwise = (t.bits() & ~truths) == 0;
            return fast.at(t) == pointwise && pure.at(t) == pointwise;
          });
          if (bad)
            return FD{"team evaluation and world-recursive truth disagree", team_text(m, *bad)};
          return std::nullopt;
        });
  }

  if (name == "polar_question") {
    return run_model_formula_suite(name, cfg, n_cases, gen_standard,
        [](const KripkeModel& m, const FormulaPtr& alpha) -> std::optional<FD> {
          std::vector<TruthValue> tv = world_truth_values(m, alpha);
          SupportEval ev(m, Formula::question(alpha));
          auto bad = first_bad_team(m, [&](Team t) {
            bool settled = true;
            std::optional<TruthValue> seen;
            for_each_world(t.bits(), [&](int w) {
              if (tv[w] == TruthValue::Undefined) settled = false;
              if (seen && tv[w] != *seen) settled = false;
              seen = tv[w];
            });
            return ev.at(t) == settled;
          });
          if (bad)
            return FD{"polar question support disagrees with truth-value agreement",
                      team_text(m, *bad)};
          return std::nullopt;
        });
  }

  if (name == "truth_value_persistency") {
    return run_model_formula_suite(name, cfg, n_cases, gen_standard,
        [](const KripkeModel& m, const FormulaPtr& f) -> std::optional<FD> {
          std::vector<TruthValue> tv = world_truth_values(m, f);
          for (int w = 0; w < m.size(); ++w) {
            if (tv[w] == TruthValue::Undefined) continue;
            std::optional<FD> out;
            for_each_world(m.reach(w), [&](int v) {
              if (!out && tv[v] != tv[w])
                out = FD{"truth value defined at " + m.name(w) + " but different at " + m.name(v),
                         m.name(w)};
            });
            if (out) return out;
          }
          return std::nullopt;
        });
  }

  if (name == "dependence") {
    GenConfig small = cfg;
    small.max_depth = 2;
    return run_model_formula_suite(name, cfg, n_cases,
        [&small](Rng& rng) {
          int n = 1 + static_cast<int>(rng.below(2));
          std::vector<FormulaPtr> qs;
          for (int i = 0; i < n; ++i)
            qs.push_back(Formula::question(gen_budgeted(rng, small, true)));
          FormulaPtr beta = gen_budgeted(rng, small, true);
          return Formula::implies(conj_fold(qs), Formula::question(beta));
        },
        [](const KripkeModel& m, const FormulaPtr& dep) -> std::optional<FD> {
          // Peel the generated shape back apart; shrinking may hand us
          // something else, in which case the case is vacuous.
          std::vector<FormulaPtr> determiners;
          if (dep->kind() != Conn::Implies) return std::nullopt;
          FormulaPtr lhs = dep->left();
          FormulaPtr rhs = dep->right();
          auto unquestion = [](const FormulaPtr& g) -> FormulaPtr {
            if (g->kind() == Conn::IDisj && g->right()->kind() == Conn::Implies &&
                g->right()->right()->kind() == Conn::Falsum &&
                structurally_equal(*g->left(), *g->right()->left()))
              return g->left();
            return nullptr;
          };
          while (lhs->kind() == Conn::And) {
            FormulaPtr q = unquestion(lhs->left());
            if (!q) return std::nullopt;
            determiners.push_back(q);
            lhs = lhs->right();
          }
          FormulaPtr q = unquestion(lhs);
          FormulaPtr beta = unquestion(rhs);
          if (!q || !beta) return std::nullopt;
          determiners.push_back(q);
          if (determiners.size() > 3) return std::nullopt;

          std::vector<std::vector<TruthValue>> dtv;
          for (const auto& d : determiners) dtv.push_back(world_truth_values(m, d));
          std::vector<TruthValue> btv = world_truth_values(m, beta);
          SupportEval ev(m, dep);
          const int n = static_cast<int>(determiners.size());

          auto bad = first_bad_team(m, [&](Team t) {
            bool support = ev.at(t);
            std::uint64_t range = m.r_image_bits(t.bits());

            bool pairwise = true;
            for_each_world(range, [&](int w) {
              for_each_world(range, [&](int v) {
                bool agree = true;
                for (int i = 0; i < n; ++i)
                  if (dtv[i][w] == TruthValue::Undefined || dtv[i][w] != dtv[i][v]) agree = false;
                if (agree &&
                    (btv[w] == TruthValue::Undefined || btv[w] != btv[v]))
                  pairwise = false;
              });
            });

            bool functional = false;
            for (std::uint64_t fun = 0; fun < (std::uint64_t{1} << (1 << n)); ++fun) {
              bool fits = true;
              for_each_world(range, [&](int w) {
                int input = 0;
                for (int i = 0; i < n; ++i) {
                  if (dtv[i][w] == TruthValue::Undefined) return;  // premise not met
                  if (dtv[i][w] == TruthValue::True) input |= 1 << i;
                }
                bool expected = (fun >> input) & 1;
                if (btv[w] == TruthValue::Undefined ||
                    (btv[w] == TruthValue::True) != expected)
                  fits = false;
              });
              if (fits) {
                functional = true;
                break;
              }
            }

            return support == pairwise && support == functional;
          });
          if (bad)
            return FD{"the three dependence formulations disagree", team_text(m, *bad)};
          return std::nullopt;
        });
  }

  if (name == "implication_tc") {
    return run_model_formula_suite(name, cfg, n_cases,
        [&cfg](Rng& rng) {
          return Formula::implies(gen_budgeted(rng, cfg, false), gen_budgeted(rng, cfg, false));
        },
        [](const KripkeModel& m, const FormulaPtr& f) -> std::optional<FD> {
          if (f->kind() != Conn::Implies) return std::nullopt;
          if (is_truth_conditional_on(m, f->right()) && !is_truth_conditional_on(m, f))
            return FD{"consequent is truth-conditional on this model but the implication is not",
                      ""};
          return std::nullopt;
        });
  }

  if (name == "tensor_split") {
    return run_model_formula_suite(name, cfg, n_cases,
        [&cfg](Rng& rng) {
          return Formula::tensor(gen_budgeted(rng, cfg, false), gen_budgeted(rng, cfg, false));
        },
        [](const KripkeModel& m, const FormulaPtr& f) -> std::optional<FD> {
          if (f->kind() != Conn::Tensor) return std::nullopt;
          SupportEval whole(m, f), lhs(m, f->left()), rhs(m, f->right());
          auto bad = first_bad_team(m, [&](Team t) {
            bool covered = false;  // reference route: all covering pairs
            for_each_submask(t.bits(), [&](std::uint64_t t1) {
              return for_each_submask(t.bits(), [&](std::uint64_t t2) {
                if ((t1 | t2) == t.bits() && lhs.at(Team(t1)) && rhs.at(Team(t2))) {
                  covered = true;
                  return false;
                }
                return true;
              });
            });
            return whole.at(t) == covered;
          });
          if (bad)
            return FD{"complement-based tensor split disagrees with the covering-pair search",
                      team_text(m, *bad)};
          return std::nullopt;
        });
  }

  if (name == "mt0_persistency") {
    GenConfig modal = cfg;
    modal.kind = ModelKind::S4;
    modal.weights.box = 2;
    modal.weights.diamond = 2;
    return run_model_formula_suite(name, modal, n_cases,
        [&modal](Rng& rng) { return random_formula(rng, modal); },
        [](const KripkeModel& m, const FormulaPtr& f) -> std::optional<FD> {
          Mt0Eval ev(m, f);
          std::optional<FD> out;
          first_bad_team(m, [&](Team t) {
            if (!ev.at(t)) return true;
            return for_each_submask(t.bits(), [&](std::uint64_t s) {
              if (!ev.at(Team(s))) {
                out = FD{"satisfied at " + team_text(m, t) + " but not at the subteam " +
                             team_text(m, Team(s)),
                         team_text(m, t)};
                return false;
              }
              return true;
            });
          });
          return out;
        });
  }

  if (name == "mt0_dependence") {
    GenConfig modal = cfg;
    modal.kind = ModelKind::S4;
    return run_model_formula_suite(name, modal, n_cases,
        [&modal](Rng& rng) {
          int n = 1 + static_cast<int>(rng.below(2));
          std::vector<FormulaPtr> qs;
          for (int i = 0; i < n; ++i)
            qs.push_back(Formula::question(
                Formula::atom(modal.atom_pool[rng.below(modal.atom_pool.size())])));
          FormulaPtr q =
              Formula::atom(modal.atom_pool[rng.below(modal.atom_pool.size())]);
          return Formula::implies(conj_fold(qs), Formula::question(q));
        },
        [](const KripkeModel& m, const FormulaPtr& dep) -> std::optional<FD> {
          if (dep->kind() != Conn::Implies) return std::nullopt;
          std::vector<std::string> determiners;
          FormulaPtr lhs = dep->left();
          auto atom_of_question = [](const FormulaPtr& g) -> const std::string* {
            if (g->kind() == Conn::IDisj && g->left()->kind() == Conn::Atom &&
                g->right()->kind() == Conn::Implies &&
                g->right()->right()->kind() == Conn::Falsum &&
                structurally_equal(*g->left(), *g->right()->left()))
              return &g->left()->atom_name();
            return nullptr;
          };
          while (lhs->kind() == Conn::And) {
            const std::string* p = atom_of_question(lhs->left());
            if (!p) return std::nullopt;
            determiners.push_back(*p);
            lhs = lhs->right();
          }
          const std::string* p = atom_of_question(lhs);
          const std::string* q = atom_of_question(dep->right());
          if (!p || !q) return std::nullopt;
          determiners.push_back(*p);

          Mt0Eval ev(m, dep);
          auto bad = first_bad_team(m, [&](Team t) {
            return ev.at(t) == mt0_dependence_primitive(m, t, determiners, *q);
          });
          if (bad)
            return FD{"desugared dependence disagrees with the primitive clause",
                      team_text(m, *bad)};
          return std::nullopt;
        });
  }

  // ------------------------------------------------------------------
  // Normal form and translations, checked against exhaustive model
  // sweeps at desk scale.

  if (name == "normal_form_equivalence" || name == "truth_condition_theorem") {
    SuiteReport rep;
    rep.suite = name;
    rep.cases = n_cases;
    Rng rng(cfg.seed);
    for (int i = 0; i < n_cases; ++i) {
      FormulaPtr f = gen_budgeted(rng, cfg, false);
      FormulaPtr g = name == "normal_form_equivalence"
                         ? normal_form(f)
                         : tensor_fold(resolutions(f));
      std::vector<std::string> atoms(atoms_of(f).begin(), atoms_of(f).end());
      int bound = std::min(cfg.max_worlds, atoms.size() >= 3 ? 3 : 4);
      std::optional<SuiteFailure> fail;
      enumerate_models_upto(bound, atoms, ModelKind::Intuitionistic, [&](const KripkeModel& m) {
        SupportEval evf(m, f), evg(m, g);
        std::optional<Team> bad;
        if (name == "normal_form_equivalence") {
          bad = first_bad_team(m, [&](Team t) { return evf.at(t) == evg.at(t); });
        } else {
          for (int w = 0; w < m.size() && !bad; ++w)
            if (evf.at(Team::single(w)) != evg.at(Team::single(w))) bad = Team::single(w);
        }
        if (bad) {
          fail = SuiteFailure{i,
                              name == "normal_form_equivalence"
                                  ? "support differs from the normal form"
                                  : "truth differs from the tensor of the resolutions",
                              model_to_json(m).dump(), render_formula(f),
                              team_text(m, *bad)};
          return false;
        }
        return true;
      });
      if (fail) rep.failures.push_back(std::move(*fail));
    }
    return rep;
  }

  if (name == "standard_variant") {
    auto no_idisj_under_implication = [](const FormulaPtr& f) {
      struct Rec {
        static bool ok(const Formula& g, bool under) {
          switch (g.kind()) {
            case Conn::Atom:
            case Conn::Falsum:
              return true;
            case Conn::IDisj:
              if (under) return false;
              return ok(*g.left(), under) && ok(*g.right(), under);
            case Conn::Implies:
              return ok(*g.left(), true) && ok(*g.right(), true);
            default:
              return ok(*g.left(), under) && (!g.right() || ok(*g.right(), under));
          }
        }
      };
      return Rec::ok(*f, false);
    };
    return run_model_formula_suite(name, cfg, n_cases,
        [&cfg, no_idisj_under_implication](Rng& rng) {
          for (int tries = 0; tries < 64; ++tries) {
            FormulaPtr f = gen_budgeted(rng, cfg, false);
            if (no_idisj_under_implication(f)) return f;
          }
          return Formula::atom(cfg.atom_pool[0]);
        },
        [no_idisj_under_implication](const KripkeModel& m,
                                     const FormulaPtr& f) -> std::optional<FD> {
          if (!no_idisj_under_implication(f)) return std::nullopt;
          FormulaPtr sv = standard_variant(f);
          for (int w = 0; w < m.size(); ++w)
            if (truth_at(m, w, f) != truth_at(m, w, sv))
              return FD{"truth differs from the standard variant at " + m.name(w), m.name(w)};
          return std::nullopt;
        });
  }

  if (name == "resolution_count") {
    SuiteReport rep;
    rep.suite = name;
    rep.cases = n_cases;
    Rng rng(cfg.seed);
    for (int i = 0; i < n_cases; ++i) {
      FormulaPtr f = gen_budgeted(rng, cfg, false);
      std::uint64_t predicted = resolution_count(f);
      auto raw = detail::resolutions_rec(f, kDefaultResolutionCap);
      auto deduped = resolutions(f);
      if (raw.size() != predicted || deduped.size() > raw.size()) {
        rep.failures.push_back(SuiteFailure{
            i,
            "recurrence predicts " + std::to_string(predicted) + " resolutions, generated " +
                std::to_string(raw.size()) + " (dedup " + std::to_string(deduped.size()) + ")",
            "", render_formula(f), ""});
      }
    }
    return rep;
  }

  // ------------------------------------------------------------------
  // Decision procedure properties.

  if (name == "valid_soundness") {
    SuiteReport rep;
    rep.suite = name;
    rep.cases = n_cases;
    Rng rng(cfg.seed);
    for (int i = 0; i < n_cases; ++i) {
      FormulaPtr f = gen_budgeted(rng, cfg, false);
      Verdict v = decide_valid(f, InqSystem::InqI);
      if (v.valid) {
        bool witness_ok = v.witness && is_standard(*v.witness) && ipl_valid(v.witness);
        auto cm = countermodel_search(f, SearchSystem::InqI, 3);
        bool classical_ok = decide_valid(f, InqSystem::InqB).valid;
        if (!witness_ok || cm || !classical_ok)
          rep.failures.push_back(SuiteFailure{
              i,
              std::string(!witness_ok ? "witness resolution is not valid"
                          : cm       ? "countermodel found for a formula judged valid"
                                     : "judged valid yet classically invalid"),
              cm ? model_to_json(cm->model).dump() : "", render_formula(f),
              cm ? suites_detail::team_text(cm->model, cm->team) : ""});
      } else {
        auto cm = countermodel_search(f, SearchSystem::InqI, 3);
        (void)cm;  // witness re-verification happens inside the search
      }
    }
    return rep;
  }

  if (name == "conservativity_ipl" || name == "conservativity_cpl") {
    SuiteReport rep;
    rep.suite = name;
    rep.cases = n_cases;
    Rng rng(cfg.seed);
    const bool classical = name == "conservativity_cpl";
    for (int i = 0; i < n_cases; ++i) {
      FormulaPtr f = gen_budgeted(rng, cfg, true);
      bool base = classical ? cpl_valid(f) : ipl_valid(f);
      bool inq = decide_valid(f, classical ? InqSystem::InqB : InqSystem::InqI).valid;
      if (base != inq)
        rep.failures.push_back(SuiteFailure{
            i, std::string("standard-fragment verdict differs: base=") + (base ? "1" : "0"), "",
            render_formula(f), ""});
    }
    return rep;
  }

  if (name == "disjunction_property") {
    SuiteReport rep;
    rep.suite = name;
    rep.cases = n_cases;
    Rng rng(cfg.seed);
    for (int i = 0; i < n_cases; ++i) {
      FormulaPtr a = gen_budgeted(rng, cfg, false);
      FormulaPtr b = gen_budgeted(rng, cfg, false);
      FormulaPtr c = gen_budgeted(rng, cfg, false);
      try {
        bool va = decide_valid(a, InqSystem::InqI).valid;
        bool vb = decide_valid(b, InqSystem::InqI).valid;
        if (decide_valid(Formula::tensor(a, b), InqSystem::InqI).valid && !va && !vb)
          rep.failures.push_back(SuiteFailure{i, "valid tensor disjunction with no valid disjunct",
                                              "", render_formula(Formula::tensor(a, b)), ""});
        if (decide_valid(Formula::idisj(a, b), InqSystem::InqI).valid && !va && !vb)
          rep.failures.push_back(SuiteFailure{
              i, "valid inquisitive disjunction with no valid disjunct", "",
              render_formula(Formula::idisj(a, b)), ""});
        bool chain_tensor = decide_valid(tensor_fold({a, b, c}), InqSystem::InqI).valid;
        bool chain_idisj = decide_valid(idisj_fold({a, b, c}), InqSystem::InqI).valid;
        if (chain_tensor != chain_idisj)
          rep.failures.push_back(SuiteFailure{
              i, "tensor chain and inquisitive chain validity differ", "",
              render_formula(tensor_fold({a, b, c})), ""});
      } catch (const ResolutionExplosionError&) {
        continue;
      }
    }
    return rep;
  }

  if (name == "split_property" || name == "internal_split") {
    SuiteReport rep;
    rep.suite = name;
    rep.cases = n_cases;
    Rng rng(cfg.seed);
    for (int i = 0; i < n_cases; ++i) {
      FormulaPtr alpha = gen_budgeted(rng, cfg, true);
      FormulaPtr phi = gen_budgeted(rng, cfg, false);
      FormulaPtr psi = gen_budgeted(rng, cfg, false);
      try {
        if (name == "split_property") {
          if (decide_entails({alpha}, Formula::idisj(phi, psi), InqSystem::InqI).valid &&
              !decide_entails({alpha}, phi, InqSystem::InqI).valid &&
              !decide_entails({alpha}, psi, InqSystem::InqI).valid)
            rep.failures.push_back(SuiteFailure{
                i, "standard premise resolves the disjunction but neither disjunct", "",
                render_formula(Formula::idisj(phi, psi)), ""});
        } else {
          FormulaPtr premise = Formula::implies(alpha, Formula::idisj(phi, psi));
          FormulaPtr conclusion =
              Formula::idisj(Formula::implies(alpha, phi), Formula::implies(alpha, psi));
          if (!decide_entails({premise}, conclusion, InqSystem::InqI).valid)
            rep.failures.push_back(
                SuiteFailure{i, "internal split instance is not entailed", "",
                             render_formula(premise), ""});
        }
      } catch (const ResolutionExplosionError&) {
        continue;
      }
    }
    return rep;
  }

  if (name == "glivenko") {
    SuiteReport rep;
    rep.suite = name;
    rep.cases = n_cases;
    Rng rng(cfg.seed);
    for (int i = 0; i < n_cases; ++i) {
      FormulaPtr f = gen_budgeted(rng, cfg, false);
      FormulaPtr p = gen_budgeted(rng, cfg, false);
      try {
        bool classical = decide_valid(f, InqSystem::InqB).valid;
        bool translated = decide_valid(negative_translation(f), InqSystem::InqI).valid;
        if (classical != translated)
          rep.failures.push_back(SuiteFailure{
              i, std::string("negative translation changes validity: classical=") +
                     (classical ? "1" : "0"),
              "", render_formula(f), ""});
        bool ent_classical = decide_entails({p}, f, InqSystem::InqB).valid;
        bool ent_translated = decide_entails({negative_translation(p)},
                                             negative_translation(f), InqSystem::InqI)
                                  .valid;
        if (ent_classical != ent_translated)
          rep.failures.push_back(SuiteFailure{
              i, "negative translation changes the entailment verdict", "",
              render_formula(Formula::implies(p, f)), ""});
      } catch (const ResolutionExplosionError&) {
        continue;
      }
    }
    return rep;
  }

  if (name == "box_translation") {
    SuiteReport rep;
    rep.suite = name;
    rep.cases = n_cases;
    Rng rng(cfg.seed);
    for (int i = 0; i < n_cases; ++i) {
      FormulaPtr f = gen_budgeted(rng, cfg, false);
      try {
        FormulaPtr boxed = box_translation(f);
        if (decide_valid(f, InqSystem::InqI).valid) {
          if (auto cm = countermodel_search(boxed, SearchSystem::MT0, 3))
            rep.failures.push_back(SuiteFailure{
                i, "modal countermodel found for the translation of a valid formula",
                model_to_json(cm->model).dump(), render_formula(f),
                suites_detail::team_text(cm->model, cm->team)});
        } else if (auto cm = countermodel_search(f, SearchSystem::InqI, 3)) {
          KripkeModel as_s4 = cm->model.with_kind(ModelKind::S4);
          if (supports_mt0(as_s4, cm->team, boxed))
            rep.failures.push_back(SuiteFailure{
                i, "countermodel does not transfer through the box translation",
                model_to_json(cm->model).dump(), render_formula(f),
                suites_detail::team_text(cm->model, cm->team)});
        }
      } catch (const ResolutionExplosionError&) {
        continue;
      }
    }
    return rep;
  }

  if (name == "armstrong") {
    SuiteReport rep;
    rep.suite = name;
    rep.cases = 3;
    auto dep = [](const char* text) { return parse_formula(text); };
    if (!decide_valid(dep("=(p,p)"), InqSystem::InqI).valid)
      rep.failures.push_back(SuiteFailure{0, "reflexivity instance invalid", "", "=(p,p)", ""});
    if (!decide_entails({dep("=(p,q)"), dep("=(q,r)")}, dep("=(p,r)"), InqSystem::InqI).valid)
      rep.failures.push_back(
          SuiteFailure{1, "transitivity instance invalid", "", "=(p,q), =(q,r) => =(p,r)", ""});
    if (!decide_entails({dep("=(p,r)")}, dep("?p & ?q -> ?r"), InqSystem::InqI).valid)
      rep.failures.push_back(
          SuiteFailure{2, "augmentation instance invalid", "", "=(p,r) => ?p & ?q -> ?r", ""});
    return rep;
  }

  if (name == "deduction_theorem") {
    SuiteReport rep;
    rep.suite = name;
    rep.cases = n_cases;
    Rng rng(cfg.seed);
    for (int i = 0; i < n_cases; ++i) {
      FormulaPtr phi = gen_budgeted(rng, cfg, false);
      FormulaPtr psi = gen_budgeted(rng, cfg, false);
      try {
        for (InqSystem sys : {InqSystem::InqI, InqSystem::InqB}) {
          bool as_entailment = decide_entails({phi}, psi, sys).valid;
          bool as_implication = decide_valid(Formula::implies(phi, psi), sys).valid;
          if (as_entailment != as_implication)
            rep.failures.push_back(SuiteFailure{
                i, "entailment and curried implication verdicts differ", "",
                render_formula(Formula::implies(phi, psi)), ""});
        }
      } catch (const ResolutionExplosionError&) {
        continue;
      }
    }
    return rep;
  }

  throw UnknownSuiteError(name);
}

inline nlohmann::json report_to_json(const SuiteReport& rep) {
  nlohmann::json j;
  j["suite"] = rep.suite;
  j["cases"] = rep.cases;
  j["failures"] = nlohmann::json::array();
  for (const auto& f : rep.failures) {
    nlohmann::json jf;
    jf["case"] = f.case_index;
    jf["description"] = f.description;
    if (!f.model_json.empty()) jf["model"] = nlohmann::json::parse(f.model_json);
    if (!f.formula.empty()) jf["formula"] = f.formula;
    if (!f.team.empty()) jf["team"] = f.team;
    j["failures"].push_back(std::move(jf));
  }
  j["ok"] = rep.ok();
  return j;
}

inline std::string report_to_text(const SuiteReport& rep) {
  std::ostringstream out;
  out << "suite " << rep.suite << ": " << rep.cases << " cases, " << rep.failures.size()
      << " failure(s)\n";
  for (const auto& f : rep.failures) {
    out << "  case " << f.case_index << ": " << f.description << "\n";
    if (!f.formula.empty()) out << "    formula: " << f.formula << "\n";
    if (!f.team.empty()) out << "    team:    " << f.team << "\n";
    if (!f.model_json.empty()) out << "    model:   " << f.model_json << "\n";
  }
  return out.str();
}

}  // namespace inqi
