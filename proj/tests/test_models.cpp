#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "inqi/enumerate.hpp"
#include "inqi/model.hpp"
#include "inqi/model_json.hpp"

using namespace inqi;

namespace {

KripkeModel load_fixture(const std::string& name) {
  std::ifstream in(std::string(INQI_FIXTURE_DIR) + "/models/" + name);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json_text(buf.str());
}

Team team_of(const KripkeModel& m, std::initializer_list<const char*> names) {
  Team t;
  for (const char* n : names) t = t.with(m.index_of(n));
  return t;
}

int related_pairs(const KripkeModel& m) {
  int count = 0;
  for (int w = 0; w < m.size(); ++w) count += Team(m.reach(w)).size();
  return count;
}

}  // namespace

TEST_CASE("fixtures load, validate, and close their edge lists") {
  for (const char* name : {"fix_a.json", "fix_b.json", "fix_c.json"}) {
    KripkeModel m = load_fixture(name);
    INFO(name);
    CHECK_FALSE(validate_model(m).has_value());
  }
  KripkeModel a = load_fixture("fix_a.json");
  CHECK(a.size() == 5);
  CHECK(a.related(a.index_of("w1"), a.index_of("w4")));  // via w3, added by closure
  CHECK_FALSE(a.related(a.index_of("w2"), a.index_of("w4")));
}

TEST_CASE("validation reports the first broken invariant with a witness") {
  KripkeModel chain = KripkeModel::make(ModelKind::Intuitionistic, {"a", "b"}, {{"a", "b"}},
                                        {{"a", {"p"}}});
  auto v = validate_model(chain);
  REQUIRE(v.has_value());
  CHECK(v->invariant == "persistency");
  CHECK(v->witness == "(a,b,p)");

  KripkeModel mutual = KripkeModel::make(ModelKind::Intuitionistic, {"a", "b"},
                                         {{"a", "b"}, {"b", "a"}}, {});
  auto v2 = validate_model(mutual);
  REQUIRE(v2.has_value());
  CHECK(v2->invariant == "antisymmetry");

  KripkeModel not_discrete =
      KripkeModel::make(ModelKind::Classical, {"a", "b"}, {{"a", "b"}}, {});
  auto v3 = validate_model(not_discrete);
  REQUIRE(v3.has_value());
  CHECK(v3->invariant == "identity");
}

TEST_CASE("r_image on the five-world fixture") {
  KripkeModel a = load_fixture("fix_a.json");
  Team t1 = team_of(a, {"w2", "w3"});
  CHECK(r_image(a, t1) == team_of(a, {"w2", "w3", "w4", "w5"}));
  CHECK(r_image(a, Team::empty()) == Team::empty());

  KripkeModel cls = KripkeModel::make(ModelKind::Classical, {"a", "b", "c"}, {},
                                      {{"a", {"p"}}});
  Team t(0b101);
  CHECK(r_image(cls, t) == t);
}

TEST_CASE("team extensions") {
  KripkeModel a = load_fixture("fix_a.json");
  Team t1 = team_of(a, {"w2", "w3"});
  CHECK(is_extension(a, team_of(a, {"w2", "w4"}), t1));
  CHECK(is_extension(a, team_of(a, {"w5"}), t1));
  CHECK(is_extension(a, t1, t1));
  CHECK_FALSE(is_extension(a, team_of(a, {"w1"}), team_of(a, {"w5"})));
}

TEST_CASE("minimal elements of a team") {
  KripkeModel a = load_fixture("fix_a.json");
  CHECK(min_set(a, team_of(a, {"w3", "w4", "w5"})) == team_of(a, {"w3"}));
  Team antichain = team_of(a, {"w2", "w4"});
  CHECK(min_set(a, antichain) == antichain);
  CHECK(min_set(a, Team::empty()) == Team::empty());
  // The minimal elements generate the same up-set.
  Team t = team_of(a, {"w1", "w3", "w5"});
  CHECK(r_image(a, min_set(a, t)) == r_image(a, t));
}

TEST_CASE("generated submodels restrict to the reachable part") {
  KripkeModel a = load_fixture("fix_a.json");
  auto [sub, t] = generated_submodel(a, team_of(a, {"w3"}));
  CHECK(sub.size() == 3);
  CHECK(sub.world_names() == std::vector<std::string>{"w3", "w4", "w5"});
  CHECK(t == Team::single(0));
  CHECK_FALSE(validate_model(sub).has_value());

  auto [all, tf] = generated_submodel(a, a.full_team());
  CHECK(all.size() == a.size());
  CHECK(tf == a.full_team());

  auto [none, te] = generated_submodel(a, Team::empty());
  CHECK(none.size() == 0);
  CHECK(te == Team::empty());
}

TEST_CASE("disjoint union renames apart and preserves invariants") {
  KripkeModel b = load_fixture("fix_b.json");
  KripkeModel bb = disjoint_union(b, b);
  CHECK(bb.size() == 6);
  CHECK(related_pairs(bb) == 2 * related_pairs(b));
  CHECK_FALSE(validate_model(bb).has_value());

  KripkeModel empty = KripkeModel::make(ModelKind::Intuitionistic, {}, {}, {});
  KripkeModel same = disjoint_union(b, empty);
  CHECK(same.size() == b.size());
  CHECK(related_pairs(same) == related_pairs(b));

  KripkeModel a = load_fixture("fix_a.json");
  CHECK_FALSE(validate_model(disjoint_union(a, b)).has_value());

  KripkeModel s4 = KripkeModel::make(ModelKind::S4, {"x"}, {}, {});
  CHECK_THROWS_AS(disjoint_union(a, s4), KindMismatchError);
}

TEST_CASE("fresh root sits below everything with an empty valuation") {
  KripkeModel empty = KripkeModel::make(ModelKind::Intuitionistic, {}, {}, {});
  KripkeModel point = add_fresh_root(empty);
  CHECK(point.size() == 1);
  CHECK(point.valuation().empty());

  KripkeModel b = load_fixture("fix_b.json");
  KripkeModel rooted = add_fresh_root(b);
  CHECK(rooted.size() == 4);
  CHECK(rooted.reach(3) == rooted.full_mask());
  CHECK_FALSE(validate_model(rooted).has_value());
}

TEST_CASE("cluster collapse of an s4 model") {
  // Already-intuitionistic input: the collapse is an isomorphic copy.
  KripkeModel a = load_fixture("fix_a.json").with_kind(ModelKind::S4);
  KripkeModel rho = rho_model(a);
  CHECK(rho.size() == a.size());
  CHECK(rho.kind() == ModelKind::Intuitionistic);
  for (int w = 0; w < a.size(); ++w) CHECK(rho.reach(w) == a.reach(w));
  CHECK(rho.valuation() == a.valuation());
  CHECK_FALSE(validate_model(rho).has_value());

  // A genuine two-world cluster collapses to one world keeping p.
  KripkeModel cluster = KripkeModel::make(ModelKind::S4, {"a", "b"}, {{"a", "b"}, {"b", "a"}},
                                          {{"a", {"p"}}, {"b", {"p"}}});
  KripkeModel collapsed = rho_model(cluster);
  CHECK(collapsed.size() == 1);
  CHECK(collapsed.name(0) == "a+b");
  CHECK(collapsed.atom_mask("p") == 1);

  // Discrete s4 models keep their world count.
  KripkeModel discrete = KripkeModel::make(ModelKind::S4, {"a", "b", "c"}, {}, {{"b", {"q"}}});
  CHECK(rho_model(discrete).size() == 3);

  CHECK_THROWS_AS(rho_model(load_fixture("fix_a.json")), KindMismatchError);
}

TEST_CASE("team successor relation of the modal semantics") {
  KripkeModel b = load_fixture("fix_b.json").with_kind(ModelKind::S4);
  CHECK(mt0_successor(b, team_of(b, {"w"}), team_of(b, {"u", "v"})));
  CHECK(mt0_successor(b, Team::empty(), Team::empty()));
  CHECK_FALSE(mt0_successor(b, team_of(b, {"u"}), team_of(b, {"v"})));
}

// Independent counting oracle: walk every candidate relation matrix and
// valuation, checking the invariants from their definitions.
namespace {
int brute_force_count(int n, const std::vector<std::string>& atoms, ModelKind kind) {
  int count = 0;
  const int cells = n * n;
  for (std::uint64_t rel = 0; rel < (std::uint64_t{1} << cells); ++rel) {
    auto related = [&](int i, int j) { return (rel >> (i * n + j)) & 1; };
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (!related(i, i)) ok = false;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        for (int k = 0; k < n && ok; ++k)
          if (related(i, j) && related(j, k) && !related(i, k)) ok = false;
    if (kind == ModelKind::Intuitionistic)
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < n && ok; ++j)
          if (i != j && related(i, j) && related(j, i)) ok = false;
    if (kind == ModelKind::Classical)
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < n && ok; ++j)
          if ((i == j) != static_cast<bool>(related(i, j))) ok = false;
    if (!ok) continue;

    const int bits = n * static_cast<int>(atoms.size());
    for (std::uint64_t val = 0; val < (std::uint64_t{1} << bits); ++val) {
      auto holds = [&](std::size_t atom, int w) { return (val >> (atom * n + w)) & 1; };
      bool persistent = true;
      if (kind == ModelKind::Intuitionistic) {
        for (std::size_t a = 0; a < atoms.size() && persistent; ++a)
          for (int i = 0; i < n && persistent; ++i)
            for (int j = 0; j < n && persistent; ++j)
              if (related(i, j) && holds(a, i) && !holds(a, j)) persistent = false;
      }
      if (persistent) ++count;
    }
  }
  return count;
}
}  // namespace

TEST_CASE("model enumeration counts match a brute-force oracle") {
  CHECK(enumerate_models_vec(0, {}, ModelKind::Intuitionistic).size() == 1);
  CHECK(enumerate_models_vec(1, {"p"}, ModelKind::Intuitionistic).size() == 2);
  CHECK(enumerate_models_vec(2, {}, ModelKind::Intuitionistic).size() == 3);

  for (int n = 0; n <= 3; ++n) {
    for (ModelKind kind : {ModelKind::Intuitionistic, ModelKind::S4, ModelKind::Classical}) {
      std::vector<std::string> atoms = n <= 2 ? std::vector<std::string>{"p", "q"}
                                              : std::vector<std::string>{"p"};
      INFO("n=" << n << " kind=" << kind_name(kind));
      CHECK(static_cast<int>(enumerate_models_vec(n, atoms, kind).size()) ==
            brute_force_count(n, atoms, kind));
    }
  }
}

TEST_CASE("enumerated models satisfy their kind invariants and arrive in order") {
  auto models = enumerate_models_vec(3, {"p"}, ModelKind::Intuitionistic);
  for (const auto& m : models) CHECK_FALSE(validate_model(m).has_value());
  // The discrete relation with the empty valuation comes first.
  CHECK(models.front().reach(0) == 1);
  CHECK(models.front().valuation().empty());
}

TEST_CASE("model JSON round-trips") {
  KripkeModel a = load_fixture("fix_a.json");
  KripkeModel back = model_from_json(model_to_json(a));
  CHECK(back.size() == a.size());
  for (int w = 0; w < a.size(); ++w) CHECK(back.reach(w) == a.reach(w));
  CHECK(back.valuation() == a.valuation());
  CHECK(back.kind() == a.kind());
}

TEST_CASE("closure is idempotent and the world cap is enforced") {
  KripkeModel chain =
      KripkeModel::make(ModelKind::Intuitionistic, {"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {});
  CHECK(chain.related(0, 2));
  std::vector<KripkeModel::Edge> closed_edges;
  for (int w = 0; w < chain.size(); ++w)
    for_each_world(chain.reach(w), [&](int v) { closed_edges.emplace_back(chain.name(w), chain.name(v)); });
  KripkeModel again =
      KripkeModel::make(ModelKind::Intuitionistic, {"a", "b", "c"}, closed_edges, {});
  for (int w = 0; w < chain.size(); ++w) CHECK(again.reach(w) == chain.reach(w));

  std::vector<std::string> many;
  for (int i = 0; i < 65; ++i) many.push_back("w" + std::to_string(i));
  CHECK_THROWS_AS(KripkeModel::make(ModelKind::Classical, many, {}, {}), std::invalid_argument);
}
