#include <catch2/catch_amalgamated.hpp>

#include "inqi/formula.hpp"
#include "inqi/generate.hpp"
#include "inqi/parse.hpp"

using namespace inqi;

namespace {
FormulaPtr P() { return Formula::atom("p"); }
FormulaPtr Q() { return Formula::atom("q"); }
}  // namespace

TEST_CASE("atoms and falsum parse") {
  CHECK(parse_formula("p")->kind() == Conn::Atom);
  CHECK(parse_formula("p")->atom_name() == "p");
  CHECK(parse_formula("bot")->kind() == Conn::Falsum);
  CHECK(parse_formula("long_name2")->atom_name() == "long_name2");
}

TEST_CASE("question mark desugars to an inquisitive disjunction with the negation") {
  FormulaPtr f = parse_formula("?p");
  REQUIRE(f->kind() == Conn::IDisj);
  CHECK(structurally_equal(f->left(), P()));
  CHECK(structurally_equal(f->right(), Formula::neg(P())));
  CHECK(structurally_equal(f, Formula::question(P())));
}

TEST_CASE("negation desugars to an implication into falsum") {
  FormulaPtr f = parse_formula("~p");
  REQUIRE(f->kind() == Conn::Implies);
  CHECK(f->right()->kind() == Conn::Falsum);
}

TEST_CASE("dependence sugar expands to an implication between questions") {
  FormulaPtr f = parse_formula("=(p,q)");
  FormulaPtr expected = Formula::implies(Formula::question(P()), Formula::question(Q()));
  CHECK(structurally_equal(f, expected));

  FormulaPtr g = parse_formula("=(p,q,r)");
  FormulaPtr expected_g = Formula::implies(
      Formula::conj(Formula::question(P()), Formula::question(Q())),
      Formula::question(Formula::atom("r")));
  CHECK(structurally_equal(g, expected_g));
}

TEST_CASE("biconditional sugar expands to a conjunction of implications") {
  FormulaPtr f = parse_formula("p <-> q");
  FormulaPtr expected = Formula::conj(Formula::implies(P(), Q()), Formula::implies(Q(), P()));
  CHECK(structurally_equal(f, expected));
}

TEST_CASE("precedence: unary > & > | > \\/ > ->") {
  FormulaPtr f = parse_formula("~p & q | r \\/ s -> t");
  // ((~p & q) | r) \/ s, then -> t
  REQUIRE(f->kind() == Conn::Implies);
  REQUIRE(f->left()->kind() == Conn::IDisj);
  REQUIRE(f->left()->left()->kind() == Conn::Tensor);
  REQUIRE(f->left()->left()->left()->kind() == Conn::And);
  CHECK(f->left()->left()->left()->left()->kind() == Conn::Implies);  // ~p
}

TEST_CASE("implication is right-associative") {
  FormulaPtr f = parse_formula("p -> q -> r");
  REQUIRE(f->kind() == Conn::Implies);
  CHECK(f->left()->kind() == Conn::Atom);
  CHECK(f->right()->kind() == Conn::Implies);
}

TEST_CASE("rendering re-sugars negation and polar questions") {
  CHECK(render_formula(Formula::neg(P())) == "~p");
  CHECK(render_formula(Formula::question(P())) == "?p");
  CHECK(render_formula(Formula::tensor(P(), Q())) == "p | q");
  CHECK(render_formula(parse_formula("~~p")) == "~~p");
  CHECK(render_formula(parse_formula("p \\/ ~q")) == "p \\/ ~q");
  CHECK(render_formula(parse_formula("?(p & q)")) == "?(p & q)");
}

TEST_CASE("modalities demand the mt0 dialect") {
  CHECK_THROWS_AS(parse_formula("[]p"), DialectError);
  CHECK_THROWS_AS(parse_formula("<>p", Dialect::InqB), DialectError);
  FormulaPtr f = parse_formula("[]p -> <>q", Dialect::MT0);
  CHECK(f->left()->kind() == Conn::Box);
  CHECK(f->right()->kind() == Conn::Diamond);
  CHECK(render_formula(f) == "[]p -> <>q");
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_formula("p & ");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_formula("p q"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("=(p)"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("(p"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("P"), SyntaxError);
}

TEST_CASE("is_standard flags inquisitive disjunction and modalities") {
  CHECK(is_standard(*parse_formula("p -> (q | r)")));
  CHECK_FALSE(is_standard(*parse_formula("?p")));
  CHECK_FALSE(is_standard(*parse_formula("=(p,q)")));
  CHECK(is_standard_mt0(*parse_formula("[]p -> q", Dialect::MT0)));
  CHECK_FALSE(is_standard(*parse_formula("[]p", Dialect::MT0)));
  CHECK_FALSE(is_standard_mt0(*parse_formula("[]p \\/ q", Dialect::MT0)));
}

TEST_CASE("atoms_of collects exactly the named atoms") {
  CHECK(atoms_of(*parse_formula("?p & ?q")) == std::set<std::string>{"p", "q"});
  CHECK(atoms_of(*parse_formula("bot")).empty());
  CHECK(atoms_of(*parse_formula("=(p,q) -> r")) == std::set<std::string>{"p", "q", "r"});
}

TEST_CASE("round trip: parse after render is structurally the identity") {
  GenConfig cfg;
  cfg.max_depth = 5;
  cfg.weights.box = 1;
  cfg.weights.diamond = 1;
  Rng rng(20240811);
  for (int i = 0; i < 500; ++i) {
    FormulaPtr f = random_formula(rng, cfg);
    std::string text = render_formula(f);
    FormulaPtr back = parse_formula(text, Dialect::MT0);
    INFO(text);
    CHECK(structurally_equal(f, back));
  }
}

TEST_CASE("generator: depth zero yields leaves and seeds are reproducible") {
  GenConfig cfg;
  cfg.max_depth = 0;
  cfg.seed = 1;
  FormulaPtr leaf = random_formula(cfg);
  CHECK((leaf->kind() == Conn::Atom || leaf->kind() == Conn::Falsum));

  GenConfig deep;
  deep.max_depth = 4;
  deep.seed = 99;
  CHECK(structurally_equal(random_formula(deep), random_formula(deep)));

  GenConfig std_only = deep.standard_only();
  Rng rng(7);
  for (int i = 0; i < 100; ++i) CHECK(is_standard(*random_formula(rng, std_only)));
}
