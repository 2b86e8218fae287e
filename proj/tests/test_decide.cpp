#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "inqi/decide.hpp"
#include "inqi/generate.hpp"
#include "inqi/model_json.hpp"
#include "inqi/parse.hpp"

using namespace inqi;

namespace {

// Independent intuitionistic decision oracle: single-succedent sequent
// search over formula sets, keeping the principal implication on the
// left and cutting loops with a branch history. Slow but complete, and
// entirely separate from the contraction-free calculus under test.
struct LjOracle {
  std::set<std::string> history;

  static std::string key(const std::vector<FormulaPtr>& ctx, const FormulaPtr& goal) {
    std::vector<std::string> parts;
    for (const auto& f : ctx) parts.push_back(render_formula(f));
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) out += p + ";";
    return out + " |- " + render_formula(goal);
  }

  static bool member(const std::vector<FormulaPtr>& ctx, const FormulaPtr& f) {
    for (const auto& g : ctx)
      if (structurally_equal(*g, *f)) return true;
    return false;
  }

  static std::vector<FormulaPtr> added(std::vector<FormulaPtr> ctx, const FormulaPtr& f) {
    if (!member(ctx, f)) ctx.push_back(f);
    return ctx;
  }

  bool prove(const std::vector<FormulaPtr>& ctx, const FormulaPtr& goal) {
    if (member(ctx, goal)) return true;
    for (const auto& f : ctx)
      if (f->kind() == Conn::Falsum) return true;
    std::string k = key(ctx, goal);
    if (!history.insert(k).second) return false;  // loop
    bool out = step(ctx, goal);
    history.erase(k);
    return out;
  }

  bool step(const std::vector<FormulaPtr>& ctx, const FormulaPtr& goal) {
    if (goal->kind() == Conn::And)
      return prove(ctx, goal->left()) && prove(ctx, goal->right());
    if (goal->kind() == Conn::Implies)
      return prove(added(ctx, goal->left()), goal->right());
    if (goal->kind() == Conn::Tensor) {
      if (prove(ctx, goal->left()) || prove(ctx, goal->right())) return true;
    }
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      const FormulaPtr& h = ctx[i];
      std::vector<FormulaPtr> rest;
      for (std::size_t j = 0; j < ctx.size(); ++j)
        if (j != i) rest.push_back(ctx[j]);
      switch (h->kind()) {
        case Conn::And:
          if (prove(added(added(rest, h->left()), h->right()), goal)) return true;
          break;
        case Conn::Tensor:
          if (prove(added(rest, h->left()), goal) && prove(added(rest, h->right()), goal))
            return true;
          break;
        case Conn::Implies:
          // Keep the implication available while proving its antecedent.
          if (prove(ctx, h->left()) && prove(added(rest, h->right()), goal)) return true;
          break;
        default:
          break;
      }
    }
    return false;
  }
};

bool lj_valid(const FormulaPtr& f) { return LjOracle{}.prove({}, f); }

FormulaPtr parse_i(const char* text) { return parse_formula(text); }

}  // namespace

TEST_CASE("intuitionistic validity on known theorems and non-theorems") {
  for (const char* text : {
           "p -> p",
           "p -> (q -> p)",
           "(p -> (q -> r)) -> ((p -> q) -> (p -> r))",
           "(p & q) -> p",
           "p -> (p | q)",
           "((p | q) -> r) -> ((p -> r) & (q -> r))",
           "~~(p | ~p)",
           "~~~p -> ~p",
           "(p -> q) -> (~q -> ~p)",
           "bot -> p",
           "(p & ~p) -> q",
       }) {
    INFO(text);
    CHECK(ipl_valid(parse_i(text)));
  }
  for (const char* text : {
           "p | ~p",
           "~~p -> p",
           "((p -> q) -> p) -> p",
           "(p -> q) | (q -> p)",
           "~p | ~~p",
           "(~p -> (q | r)) -> ((~p -> q) | (~p -> r))",
           "p",
           "~p",
       }) {
    INFO(text);
    CHECK_FALSE(ipl_valid(parse_i(text)));
  }
  CHECK_THROWS_AS(ipl_valid(parse_i("?p")), DialectError);
}

TEST_CASE("the sequent calculus agrees with an independent loop-checking oracle") {
  GenConfig cfg;
  cfg.max_depth = 4;
  GenConfig std_cfg = cfg.standard_only();
  Rng rng(20250131);
  for (int i = 0; i < 150; ++i) {
    FormulaPtr f = random_formula(rng, std_cfg);
    INFO(render_formula(f));
    CHECK(ipl_valid(f) == lj_valid(f));
  }
}

TEST_CASE("classical validity by truth table") {
  CHECK(cpl_valid(parse_i("p | ~p")));
  CHECK(cpl_valid(parse_i("~~p -> p")));
  CHECK(cpl_valid(parse_i("((p -> q) -> p) -> p")));
  CHECK_FALSE(cpl_valid(parse_i("p -> q")));
  CHECK_FALSE(cpl_valid(parse_i("bot")));
  // Intuitionistic validity implies classical validity on this corpus.
  GenConfig cfg;
  Rng rng(7331);
  GenConfig std_cfg = cfg.standard_only();
  for (int i = 0; i < 200; ++i) {
    FormulaPtr f = random_formula(rng, std_cfg);
    if (ipl_valid(f)) CHECK(cpl_valid(f));
  }
}

TEST_CASE("validity facts for the two inquisitive systems") {
  CHECK_FALSE(decide_valid(parse_i("?p"), InqSystem::InqI).valid);
  CHECK_FALSE(decide_valid(parse_i("?p"), InqSystem::InqB).valid);

  CHECK(decide_valid(parse_i("(p -> (q \\/ r)) -> ((p -> q) \\/ (p -> r))"), InqSystem::InqI)
            .valid);
  CHECK(decide_valid(parse_i("~~?p"), InqSystem::InqI).valid);
  CHECK(decide_valid(parse_i("~~p -> p"), InqSystem::InqB).valid);
  CHECK_FALSE(decide_valid(parse_i("~~p -> p"), InqSystem::InqI).valid);

  // The split shape with a question antecedent is invalid.
  CHECK_FALSE(
      decide_valid(parse_i("(?p -> (q \\/ r)) -> ((?p -> q) \\/ (?p -> r))"), InqSystem::InqI)
          .valid);

  Verdict v = decide_valid(parse_i("?p \\/ ~p \\/ p"), InqSystem::InqI);
  CHECK_FALSE(v.valid);
  CHECK(v.witness == nullptr);
}

TEST_CASE("valid verdicts carry a resolution witness from the base logic") {
  Verdict v = decide_valid(parse_i("~~?p"), InqSystem::InqI);
  REQUIRE(v.valid);
  REQUIRE(v.witness);
  CHECK(is_standard(*v.witness));
  CHECK(ipl_valid(v.witness));
  auto rs = resolutions(parse_i("~~?p"));
  CHECK(std::any_of(rs.begin(), rs.end(),
                    [&](const FormulaPtr& r) { return structurally_equal(*r, *v.witness); }));

  Verdict w = decide_valid(parse_i("p -> ?p"), InqSystem::InqI);
  REQUIRE(w.valid);
  CHECK(ipl_valid(w.witness));
}

TEST_CASE("entailment facts across the two systems") {
  auto entails_text = [](std::vector<const char*> premises, const char* conclusion,
                         InqSystem sys) {
    std::vector<FormulaPtr> ps;
    for (const char* p : premises) ps.push_back(parse_i(p));
    return decide_entails(ps, parse_i(conclusion), sys).valid;
  };

  CHECK(entails_text({"p <-> q", "?p"}, "?q", InqSystem::InqI));
  CHECK(entails_text({"p <-> q", "?p"}, "?q", InqSystem::InqB));

  CHECK(entails_text({"~~p"}, "?p", InqSystem::InqB));
  CHECK_FALSE(entails_text({"~~p"}, "?p", InqSystem::InqI));

  CHECK(entails_text({"?~p"}, "?p", InqSystem::InqB));
  CHECK_FALSE(entails_text({"?~p"}, "?p", InqSystem::InqI));

  CHECK(entails_text({"p"}, "?(p | q)", InqSystem::InqB));
  CHECK_FALSE(entails_text({"~p"}, "?(p | q)", InqSystem::InqB));

  CHECK(entails_text({}, "p -> p", InqSystem::InqI));
}

TEST_CASE("dependence entailments in the intuitionistic system") {
  auto dep = [](const char* text) { return parse_i(text); };
  CHECK(decide_entails({dep("=(p,q)"), dep("=(q,r)")}, dep("=(p,r)"), InqSystem::InqI).valid);
  CHECK(decide_entails({dep("=(p,r)")}, dep("?p & ?q -> ?r"), InqSystem::InqI).valid);
  CHECK(decide_valid(dep("=(p,p)"), InqSystem::InqI).valid);
  CHECK_FALSE(decide_entails({dep("=(p,q)")}, dep("=(q,p)"), InqSystem::InqI).valid);
}

TEST_CASE("countermodel search returns the first witness in enumeration order") {
  auto cm = countermodel_search(parse_i("p | ~p"), SearchSystem::InqI, 2);
  REQUIRE(cm.has_value());
  CHECK(cm->model.size() == 2);
  CHECK(cm->model.kind() == ModelKind::Intuitionistic);
  // Two-element chain with p only at the refinement; the failing team is
  // the root below it.
  CHECK(cm->model.related(1, 0));
  CHECK_FALSE(cm->model.related(0, 1));
  CHECK(cm->model.atom_mask("p") == 0b01);
  CHECK(cm->team == Team::single(1));
  CHECK_FALSE(supports(cm->model, cm->team, parse_i("p | ~p")));

  auto qm = countermodel_search(parse_i("?p"), SearchSystem::InqB, 2);
  REQUIRE(qm.has_value());
  CHECK(qm->model.size() == 2);
  CHECK(qm->model.kind() == ModelKind::Classical);
  CHECK(qm->model.atom_mask("p") == 0b01);
  CHECK(qm->team == qm->model.full_team());

  CHECK_FALSE(countermodel_search(parse_i("p -> p"), SearchSystem::InqI, 4).has_value());
}

TEST_CASE("search variants attach countermodels to invalid verdicts") {
  Verdict v = decide_valid_with_search(parse_i("~~p -> p"), InqSystem::InqI, 3);
  REQUIRE_FALSE(v.valid);
  REQUIRE(v.countermodel.has_value());
  CHECK_FALSE(supports(v.countermodel->model, v.countermodel->team, parse_i("~~p -> p")));

  Verdict e = decide_entails_with_search({parse_i("~~p")}, parse_i("?p"), InqSystem::InqI, 3);
  REQUIRE_FALSE(e.valid);
  REQUIRE(e.countermodel.has_value());

  Verdict ok = decide_valid_with_search(parse_i("p -> p"), InqSystem::InqI, 3);
  CHECK(ok.valid);
  CHECK_FALSE(ok.countermodel.has_value());
}

TEST_CASE("deduction theorem spot checks") {
  Rng rng(5150);
  GenConfig cfg;
  cfg.max_depth = 3;
  for (int i = 0; i < 60; ++i) {
    FormulaPtr phi = random_formula(rng, cfg);
    FormulaPtr psi = random_formula(rng, cfg);
    if (resolution_count(Formula::implies(phi, psi)) > 500) continue;
    INFO(render_formula(phi) << " => " << render_formula(psi));
    CHECK(decide_entails({phi}, psi, InqSystem::InqI).valid ==
          decide_valid(Formula::implies(phi, psi), InqSystem::InqI).valid);
  }
}

TEST_CASE("modal countermodel search handles the translation system") {
  FormulaPtr f = box_translation(parse_i("~~p -> p"));
  auto cm = countermodel_search(f, SearchSystem::MT0, 3);
  REQUIRE(cm.has_value());
  CHECK(cm->model.kind() == ModelKind::S4);
  CHECK_FALSE(supports_mt0(cm->model, cm->team, f));
}
