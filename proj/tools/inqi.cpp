// Command-line surface over the library: evaluation, normal forms,
// translations, validity/entailment, countermodel search, proof
// checking, and the property suites.
//
// Exit codes: 0 the query holds / is accepted, 1 it fails / is rejected
// (a witness is printed when one was found), 2 usage or input errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "inqi/decide.hpp"
#include "inqi/enumerate.hpp"
#include "inqi/formula.hpp"
#include "inqi/model_json.hpp"
#include "inqi/normalform.hpp"
#include "inqi/parse.hpp"
#include "inqi/proof.hpp"
#include "inqi/proof_json.hpp"
#include "inqi/semantics.hpp"
#include "inqi/suites.hpp"

namespace {

using nlohmann::json;

int g_exit = 0;
bool g_json = false;

void emit(const json& payload, const std::string& text) {
  if (g_json)
    std::cout << payload.dump(2) << "\n";
  else
    std::cout << text;
}

inqi::KripkeModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  inqi::KripkeModel m = inqi::model_from_json_text(buf.str());
  if (auto v = inqi::validate_model(m))
    throw std::invalid_argument("model violates " + v->invariant + " at " + v->witness);
  return m;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    std::size_t a = item.find_first_not_of(" \t");
    std::size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

inqi::Team parse_team(const inqi::KripkeModel& m, const std::string& text) {
  return inqi::team_from_names(m, split_list(text, ','));
}

inqi::Dialect dialect_for(const std::string& system) {
  return system == "mt0" ? inqi::Dialect::MT0 : inqi::Dialect::InqI;
}

void require_model_kind(const inqi::KripkeModel& m, const std::string& system) {
  using inqi::ModelKind;
  ModelKind k = m.kind();
  bool ok = system == "inqi"   ? (k == ModelKind::Intuitionistic || k == ModelKind::Classical)
            : system == "inqb" ? k == ModelKind::Classical
                               : (k == ModelKind::S4 || k == ModelKind::Classical);
  if (!ok)
    throw std::invalid_argument("system " + system + " does not evaluate on " +
                                inqi::kind_name(k) + " models");
}

json countermodel_json(const inqi::Countermodel& cm) {
  json j;
  j["model"] = inqi::model_to_json(cm.model);
  j["team"] = inqi::team_names(cm.model, cm.team);
  return j;
}

std::string countermodel_text(const inqi::Countermodel& cm) {
  std::ostringstream out;
  out << "countermodel: " << inqi::model_to_json(cm.model).dump() << "\n";
  out << "team: ";
  auto names = inqi::team_names(cm.model, cm.team);
  if (names.empty()) out << "(empty)";
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"intuitionistic inquisitive logic toolkit"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "machine-readable output");

  // parse ---------------------------------------------------------------
  std::string parse_text, parse_dialect = "inqi";
  auto* cmd_parse = app.add_subcommand("parse", "parse a formula and print it back");
  cmd_parse->add_option("-f,--formula", parse_text)->required();
  cmd_parse->add_option("--dialect", parse_dialect)->check(CLI::IsMember({"inqi", "inqb", "mt0"}));
  cmd_parse->callback([&] {
    auto f = inqi::parse_formula(parse_text, parse_dialect == "mt0" ? inqi::Dialect::MT0
                                                                    : inqi::Dialect::InqI);
    json j{{"command", "parse"},
           {"input", parse_text},
           {"formula", inqi::render_formula(f)},
           {"standard", parse_dialect == "mt0" ? inqi::is_standard_mt0(*f) : inqi::is_standard(*f)},
           {"atoms", inqi::atoms_of(f)}};
    emit(j, inqi::render_formula(f) + "\n");
  });

  // eval ----------------------------------------------------------------
  std::string eval_model, eval_team, eval_formula, eval_system = "inqi";
  auto* cmd_eval = app.add_subcommand("eval", "evaluate support of a formula at a team");
  cmd_eval->add_option("-m,--model", eval_model)->required();
  cmd_eval->add_option("-t,--team", eval_team)->required();
  cmd_eval->add_option("-f,--formula", eval_formula)->required();
  cmd_eval->add_option("--system", eval_system)->check(CLI::IsMember({"inqi", "inqb", "mt0"}));
  cmd_eval->callback([&] {
    auto m = load_model(eval_model);
    require_model_kind(m, eval_system);
    auto f = inqi::parse_formula(eval_formula, dialect_for(eval_system));
    auto t = parse_team(m, eval_team);
    bool holds = eval_system == "mt0" ? inqi::supports_mt0(m, t, f) : inqi::supports(m, t, f);
    g_exit = holds ? 0 : 1;
    json j{{"command", "eval"},
           {"formula", inqi::render_formula(f)},
           {"team", inqi::team_names(m, t)},
           {"system", eval_system},
           {"supported", holds}};
    emit(j, std::string(holds ? "supported" : "not supported") + "\n");
  });

  // truth ---------------------------------------------------------------
  std::string truth_model, truth_world, truth_formula;
  auto* cmd_truth = app.add_subcommand("truth", "evaluate truth of a formula at a world");
  cmd_truth->add_option("-m,--model", truth_model)->required();
  cmd_truth->add_option("-w,--world", truth_world)->required();
  cmd_truth->add_option("-f,--formula", truth_formula)->required();
  cmd_truth->callback([&] {
    auto m = load_model(truth_model);
    auto f = inqi::parse_formula(truth_formula);
    int w = m.index_of(truth_world);
    bool holds = inqi::truth_at(m, w, f);
    inqi::TruthValue tv = inqi::truth_value(m, w, f);
    g_exit = holds ? 0 : 1;
    json j{{"command", "truth"},
           {"formula", inqi::render_formula(f)},
           {"world", truth_world},
           {"true", holds},
           {"truth_value", inqi::truth_value_name(tv)}};
    emit(j, std::string(holds ? "true" : "not true") + " (truth value: " +
                inqi::truth_value_name(tv) + ")\n");
  });

  // resolutions ----------------------------------------------------------
  std::string res_formula;
  auto* cmd_res = app.add_subcommand("resolutions", "list the resolutions of a formula");
  cmd_res->add_option("-f,--formula", res_formula)->required();
  cmd_res->callback([&] {
    auto f = inqi::parse_formula(res_formula);
    auto rs = inqi::resolutions(f);
    json j{{"command", "resolutions"}, {"formula", inqi::render_formula(f)}};
    std::string text;
    j["resolutions"] = json::array();
    for (const auto& r : rs) {
      j["resolutions"].push_back(inqi::render_formula(r));
      text += inqi::render_formula(r) + "\n";
    }
    emit(j, text);
  });

  // nf --------------------------------------------------------------------
  std::string nf_formula;
  auto* cmd_nf = app.add_subcommand("nf", "inquisitive normal form");
  cmd_nf->add_option("-f,--formula", nf_formula)->required();
  cmd_nf->callback([&] {
    auto f = inqi::parse_formula(nf_formula);
    auto n = inqi::normal_form(f);
    json j{{"command", "nf"},
           {"formula", inqi::render_formula(f)},
           {"normal_form", inqi::render_formula(n)}};
    emit(j, inqi::render_formula(n) + "\n");
  });

  // translate ---------------------------------------------------------------
  std::string tr_formula;
  bool tr_negative = false, tr_box = false, tr_standard = false;
  auto* cmd_tr = app.add_subcommand("translate", "apply a syntactic translation");
  cmd_tr->add_option("-f,--formula", tr_formula)->required();
  cmd_tr->add_flag("--negative", tr_negative, "double-negate the resolutions");
  cmd_tr->add_flag("--box", tr_box, "modal translation into the s4 team language");
  cmd_tr->add_flag("--standard-variant", tr_standard, "replace \\/ by |");
  cmd_tr->callback([&] {
    if (tr_negative + tr_box + tr_standard != 1)
      throw CLI::ValidationError("translate", "pick exactly one of --negative/--box/--standard-variant");
    auto f = inqi::parse_formula(tr_formula);
    inqi::FormulaPtr out = tr_negative ? inqi::negative_translation(f)
                          : tr_box    ? inqi::box_translation(f)
                                      : inqi::standard_variant(f);
    json j{{"command", "translate"},
           {"formula", inqi::render_formula(f)},
           {"mode", tr_negative ? "negative" : tr_box ? "box" : "standard-variant"},
           {"result", inqi::render_formula(out)}};
    emit(j, inqi::render_formula(out) + "\n");
  });

  // valid ---------------------------------------------------------------
  std::string valid_formula, valid_system = "inqi";
  int valid_search = inqi::kDefaultSearchWorlds;
  auto* cmd_valid = app.add_subcommand("valid", "decide validity");
  cmd_valid->add_option("-f,--formula", valid_formula)->required();
  cmd_valid->add_option("--system", valid_system)
      ->check(CLI::IsMember({"inqi", "inqb", "ipl", "cpl"}));
  cmd_valid->add_option("--countermodel", valid_search,
                        "world bound for the countermodel search on an invalid verdict");
  cmd_valid->callback([&] {
    auto f = inqi::parse_formula(valid_formula);
    bool is_valid;
    inqi::FormulaPtr witness;
    if (valid_system == "ipl") {
      is_valid = inqi::ipl_valid(f);
    } else if (valid_system == "cpl") {
      is_valid = inqi::cpl_valid(f);
    } else {
      auto v = inqi::decide_valid(
          f, valid_system == "inqi" ? inqi::InqSystem::InqI : inqi::InqSystem::InqB);
      is_valid = v.valid;
      witness = v.witness;
    }
    json j{{"command", "valid"}, {"formula", inqi::render_formula(f)},
           {"system", valid_system}, {"valid", is_valid}};
    std::string text = std::string(is_valid ? "valid" : "invalid") + "\n";
    if (is_valid && witness) {
      j["witness_resolution"] = inqi::render_formula(witness);
      text += "witness resolution: " + inqi::render_formula(witness) + "\n";
    }
    if (!is_valid) {
      auto sys = valid_system == "cpl" || valid_system == "inqb" ? inqi::SearchSystem::InqB
                                                                 : inqi::SearchSystem::InqI;
      if (auto cm = inqi::countermodel_search(f, sys, valid_search)) {
        j["countermodel"] = countermodel_json(*cm);
        text += countermodel_text(*cm);
      }
    }
    g_exit = is_valid ? 0 : 1;
    emit(j, text);
  });

  // entails ---------------------------------------------------------------
  std::string ent_premises, ent_conclusion, ent_system = "inqi";
  int ent_search = inqi::kDefaultSearchWorlds;
  auto* cmd_ent = app.add_subcommand("entails", "decide finite-premise entailment");
  cmd_ent->add_option("-p,--premises", ent_premises,
                      "semicolon-separated premise formulas (may be empty)");
  cmd_ent->add_option("-c,--conclusion", ent_conclusion)->required();
  cmd_ent->add_option("--system", ent_system)->check(CLI::IsMember({"inqi", "inqb"}));
  cmd_ent->add_option("--countermodel", ent_search, "world bound for countermodel search");
  cmd_ent->callback([&] {
    std::vector<inqi::FormulaPtr> premises;
    for (const auto& p : split_list(ent_premises, ';'))
      premises.push_back(inqi::parse_formula(p));
    auto conclusion = inqi::parse_formula(ent_conclusion);
    auto sys = ent_system == "inqi" ? inqi::InqSystem::InqI : inqi::InqSystem::InqB;
    auto v = inqi::decide_entails_with_search(premises, conclusion, sys, ent_search);
    json j{{"command", "entails"}, {"system", ent_system}, {"valid", v.valid}};
    j["premises"] = json::array();
    for (const auto& p : premises) j["premises"].push_back(inqi::render_formula(p));
    j["conclusion"] = inqi::render_formula(conclusion);
    std::string text = std::string(v.valid ? "entailment holds" : "entailment fails") + "\n";
    if (v.countermodel) {
      j["countermodel"] = countermodel_json(*v.countermodel);
      text += countermodel_text(*v.countermodel);
    }
    g_exit = v.valid ? 0 : 1;
    emit(j, text);
  });

  // countermodel ---------------------------------------------------------
  std::string cm_formula, cm_system = "inqi";
  int cm_worlds = inqi::kDefaultSearchWorlds;
  auto* cmd_cm = app.add_subcommand("countermodel", "search for a falsifying model and team");
  cmd_cm->add_option("-f,--formula", cm_formula)->required();
  cmd_cm->add_option("--system", cm_system)->check(CLI::IsMember({"inqi", "inqb", "mt0"}));
  cmd_cm->add_option("--max-worlds", cm_worlds);
  cmd_cm->callback([&] {
    auto sys = cm_system == "inqi"   ? inqi::SearchSystem::InqI
               : cm_system == "inqb" ? inqi::SearchSystem::InqB
                                     : inqi::SearchSystem::MT0;
    auto f = inqi::parse_formula(cm_formula, dialect_for(cm_system));
    auto cm = inqi::countermodel_search(f, sys, cm_worlds);
    json j{{"command", "countermodel"}, {"formula", inqi::render_formula(f)},
           {"system", cm_system}, {"found", cm.has_value()}};
    std::string text;
    if (cm) {
      j["countermodel"] = countermodel_json(*cm);
      text = countermodel_text(*cm);
    } else {
      text = "no countermodel within " + std::to_string(cm_worlds) + " worlds\n";
    }
    g_exit = cm ? 0 : 1;
    emit(j, text);
  });

  // check-proof ----------------------------------------------------------
  std::string proof_path, proof_system = "inqi";
  auto* cmd_proof = app.add_subcommand("check-proof", "check a natural deduction proof");
  cmd_proof->add_option("-p,--proof", proof_path)->required();
  cmd_proof->add_option("--system", proof_system)
      ->check(CLI::IsMember({"inqi", "inqb", "inqi-minus"}));
  cmd_proof->callback([&] {
    std::ifstream in(proof_path);
    if (!in) throw std::invalid_argument("cannot open proof file: " + proof_path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto node = inqi::proof_from_json_text(buf.str());
    auto result = inqi::check_proof(node, *inqi::proof_system_from_name(proof_system));
    json j{{"command", "check-proof"}, {"system", proof_system}, {"accepted", result.ok()}};
    std::string text;
    if (result.ok()) {
      j["sequent"] = inqi::sequent_to_json(*result.sequent);
      text = "accepted: ";
      for (std::size_t i = 0; i < result.sequent->premises.size(); ++i)
        text += (i ? ", " : "") + inqi::render_formula(result.sequent->premises[i]);
      text += " |- " + inqi::render_formula(result.sequent->conclusion) + "\n";
      g_exit = 0;
    } else {
      j["error"] = {{"kind", inqi::proof_error_kind_name(result.error->kind)},
                    {"path", result.error->path},
                    {"message", result.error->message}};
      text = std::string("rejected: ") + inqi::proof_error_kind_name(result.error->kind) + " at " +
             result.error->path + ": " + result.error->message + "\n";
      g_exit = 1;
    }
    emit(j, text);
  });

  // properties -------------------------------------------------------------
  std::string prop_suite;
  bool prop_list = false;
  std::uint64_t prop_seed = 0;
  int prop_cases = 200;
  auto* cmd_prop = app.add_subcommand("properties", "run a property suite");
  cmd_prop->add_option("--suite", prop_suite);
  cmd_prop->add_flag("--list", prop_list, "list the available suites");
  cmd_prop->add_option("--seed", prop_seed);
  cmd_prop->add_option("--cases", prop_cases);
  cmd_prop->callback([&] {
    if (prop_list) {
      json j{{"command", "properties"}, {"suites", inqi::suite_names()}};
      std::string text;
      for (const auto& n : inqi::suite_names()) text += n + "\n";
      emit(j, text);
      return;
    }
    if (prop_suite.empty()) throw CLI::ValidationError("properties", "--suite or --list required");
    inqi::GenConfig cfg;
    cfg.seed = prop_seed;
    auto rep = inqi::run_suite(prop_suite, cfg, prop_cases);
    g_exit = rep.ok() ? 0 : 1;
    emit(inqi::report_to_json(rep), inqi::report_to_text(rep));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return g_exit;
}
