#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "inqi/decide.hpp"
#include "inqi/proof.hpp"
#include "inqi/proof_json.hpp"

using namespace inqi;

namespace {

nlohmann::json load_json(const std::string& rel) {
  std::ifstream in(std::string(INQI_FIXTURE_DIR) + "/" + rel);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return nlohmann::json::parse(buf.str());
}

ProofNode load_proof(const std::string& name) {
  return proof_from_json(load_json("proofs/" + name));
}

ProofSystem system_of(const std::string& name) {
  auto s = proof_system_from_name(name);
  REQUIRE(s.has_value());
  return *s;
}

}  // namespace

TEST_CASE("corpus proofs are accepted in their intended system") {
  auto manifest = load_json("proofs/manifest.json");
  for (const auto& entry : manifest.at("accepted")) {
    std::string file = entry.at("file");
    INFO(file);
    ProofNode proof = load_proof(file);
    auto result = check_proof(proof, system_of(entry.at("system")));
    if (result.error) INFO(result.error->path << ": " << result.error->message);
    CHECK(result.ok());
  }
}

TEST_CASE("accepted proofs prove semantically valid sequents") {
  auto manifest = load_json("proofs/manifest.json");
  for (const auto& entry : manifest.at("accepted")) {
    std::string file = entry.at("file");
    INFO(file);
    ProofNode proof = load_proof(file);
    std::string system = entry.at("system");
    auto result = check_proof(proof, system_of(system));
    REQUIRE(result.ok());
    InqSystem sem = system == "inqb" ? InqSystem::InqB : InqSystem::InqI;
    CHECK(decide_entails(result.sequent->premises, result.sequent->conclusion, sem).valid);
  }
}

TEST_CASE("system monotonicity over the corpus") {
  auto manifest = load_json("proofs/manifest.json");
  for (const auto& entry : manifest.at("accepted")) {
    std::string file = entry.at("file");
    std::string system = entry.at("system");
    ProofNode proof = load_proof(file);
    INFO(file);
    if (system == "inqi-minus") {
      CHECK(check_proof(proof, ProofSystem::InqI).ok());
      CHECK(check_proof(proof, ProofSystem::InqB).ok());
    } else if (system == "inqi") {
      CHECK(check_proof(proof, ProofSystem::InqB).ok());
    }
  }
}

TEST_CASE("rejected proofs report the expected error classes") {
  auto manifest = load_json("proofs/manifest.json");
  for (const auto& entry : manifest.at("rejected")) {
    std::string file = entry.at("file");
    ProofNode proof = load_proof(file);
    for (const auto& check : entry.at("checks")) {
      std::string system = check.at("system");
      INFO(file << " under " << system);
      auto result = check_proof(proof, system_of(system));
      REQUIRE_FALSE(result.ok());
      CHECK(proof_error_kind_name(result.error->kind) == check.at("error").get<std::string>());
    }
  }
}

TEST_CASE("checked sequents expose undischarged hypotheses in order") {
  auto result = check_proof(load_proof("modus_ponens.json"), ProofSystem::InqI);
  REQUIRE(result.ok());
  REQUIRE(result.sequent->premises.size() == 2);
  CHECK(render_formula(result.sequent->premises[0]) == "p");
  CHECK(render_formula(result.sequent->premises[1]) == "p -> q");
  CHECK(render_formula(result.sequent->conclusion) == "q");

  auto theorem = check_proof(load_proof("impl_identity.json"), ProofSystem::InqIMinus);
  REQUIRE(theorem.ok());
  CHECK(theorem.sequent->premises.empty());
}

TEST_CASE("discharge handling") {
  // Vacuous discharge is fine (weakening proves a theorem).
  auto weak = check_proof(load_proof("weakening.json"), ProofSystem::InqIMinus);
  REQUIRE(weak.ok());
  CHECK(weak.sequent->premises.empty());

  // A label attached to the wrong formula is a discharge error.
  ProofNode bad = proof_from_json_text(R"({
    "rule": "implI", "conclusion": "p -> p", "discharge": "h1",
    "premises": [{"rule": "hyp", "label": "h1", "conclusion": "q"}]
  })");
  auto result = check_proof(bad, ProofSystem::InqI);
  REQUIRE_FALSE(result.ok());
  CHECK(result.error->kind == ProofErrorKind::DischargeError);

  // Shared undischarged hypotheses across case subproofs are permitted.
  ProofNode shared = proof_from_json_text(R"({
    "rule": "iorE", "conclusion": "q", "discharge": ["h1", "h2"],
    "premises": [
      {"rule": "hyp", "label": "s", "conclusion": "q"},
      {"rule": "hyp", "label": "s", "conclusion": "q"},
      {"rule": "hyp", "label": "h0", "conclusion": "p \\/ p"}
    ]
  })");
  auto shared_result = check_proof(shared, ProofSystem::InqI);
  REQUIRE(shared_result.ok());
  REQUIRE(shared_result.sequent->premises.size() == 2);
}

TEST_CASE("shape violations are rule mismatches with a path") {
  ProofNode bad = proof_from_json_text(R"({
    "rule": "andE1", "conclusion": "q",
    "premises": [{"rule": "hyp", "label": "h1", "conclusion": "p & r"}]
  })");
  auto result = check_proof(bad, ProofSystem::InqI);
  REQUIRE_FALSE(result.ok());
  CHECK(result.error->kind == ProofErrorKind::RuleMismatch);
  CHECK(result.error->path == "root");

  ProofNode nested = proof_from_json_text(R"({
    "rule": "andI", "conclusion": "p & q",
    "premises": [
      {"rule": "hyp", "label": "h1", "conclusion": "p"},
      {"rule": "andE2", "conclusion": "q",
       "premises": [{"rule": "hyp", "label": "h2", "conclusion": "p"}]}
    ]
  })");
  auto nested_result = check_proof(nested, ProofSystem::InqI);
  REQUIRE_FALSE(nested_result.ok());
  CHECK(nested_result.error->path == "root.premises[1]");
}

TEST_CASE("split and double negation side conditions") {
  // Split with a question antecedent is rejected everywhere.
  ProofNode qsplit = proof_from_json_text(R"({
    "rule": "split", "conclusion": "(?p -> q) \\/ (?p -> r)",
    "premises": [{"rule": "hyp", "label": "h1", "conclusion": "?p -> (q \\/ r)"}]
  })");
  for (ProofSystem sys : {ProofSystem::InqI, ProofSystem::InqB, ProofSystem::InqIMinus}) {
    auto result = check_proof(qsplit, sys);
    REQUIRE_FALSE(result.ok());
    CHECK(result.error->kind == ProofErrorKind::SideConditionViolation);
  }

  // Double negation elimination on a standard formula only exists in
  // the classical system.
  ProofNode dne = load_proof("dne_standard.json");
  CHECK(check_proof(dne, ProofSystem::InqB).ok());
  auto in_inqi = check_proof(dne, ProofSystem::InqI);
  REQUIRE_FALSE(in_inqi.ok());
  CHECK(in_inqi.error->kind == ProofErrorKind::RuleUnavailable);
}

TEST_CASE("tensor rules disappear from the tensor-free subsystem") {
  for (const char* file : {"or_intro1.json", "or_elim.json", "or_assoc.json", "or_comm.json",
                           "or_dist.json", "or_replace.json"}) {
    INFO(file);
    auto result = check_proof(load_proof(file), ProofSystem::InqIMinus);
    REQUIRE_FALSE(result.ok());
    CHECK(result.error->kind == ProofErrorKind::RuleUnavailable);
  }
}
