#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "inqi/formula.hpp"
#include "inqi/model.hpp"

namespace inqi {

// Connective weights for the formula generator; a zero weight disables
// the production entirely (so zeroing idisj and question yields standard
// formulas by construction).
struct GenWeights {
  int atom = 4;
  int falsum = 1;
  int conj = 2;
  int tensor = 2;
  int idisj = 2;
  int implies = 3;
  int neg = 2;
  int question = 2;
  int box = 0;
  int diamond = 0;
};

struct GenConfig {
  int max_depth = 4;
  std::vector<std::string> atom_pool = {"p", "q", "r"};
  GenWeights weights;
  int min_worlds = 1;
  int max_worlds = 3;
  ModelKind kind = ModelKind::Intuitionistic;
  std::uint64_t seed = 0;
  // Cases whose resolution sets would outgrow this are regenerated.
  std::uint64_t resolution_budget = 512;

  GenConfig with_seed(std::uint64_t s) const {
    GenConfig c = *this;
    c.seed = s;
    return c;
  }
  GenConfig standard_only() const {
    GenConfig c = *this;
    c.weights.idisj = 0;
    c.weights.question = 0;
    c.weights.box = 0;
    c.weights.diamond = 0;
    return c;
  }
};

// Thin deterministic wrapper; avoids std::uniform_int_distribution whose
// output is not pinned across standard library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : eng_() % n; }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  int pick_weighted(const std::vector<int>& weights) {
    int total = 0;
    for (int w : weights) total += w;
    std::uint64_t r = below(static_cast<std::uint64_t>(total));
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (r < static_cast<std::uint64_t>(weights[i])) return static_cast<int>(i);
      r -= weights[i];
    }
    return static_cast<int>(weights.size()) - 1;
  }

private:
  std::mt19937_64 eng_;
};

namespace detail {

inline FormulaPtr random_formula_rec(Rng& rng, const GenConfig& cfg, int depth) {
  const GenWeights& w = cfg.weights;
  auto leaf = [&]() -> FormulaPtr {
    if (w.falsum > 0 && rng.pick_weighted({w.atom, w.falsum}) == 1) return Formula::falsum();
    return Formula::atom(cfg.atom_pool[rng.below(cfg.atom_pool.size())]);
  };
  if (depth <= 0) return leaf();
  enum { kLeaf, kConj, kTensor, kIdisj, kImplies, kNeg, kQuestion, kBox, kDiamond };
  int choice = rng.pick_weighted({w.atom + w.falsum, w.conj, w.tensor, w.idisj, w.implies, w.neg,
                                  w.question, w.box, w.diamond});
  switch (choice) {
    case kConj:
      return Formula::conj(random_formula_rec(rng, cfg, depth - 1),
                           random_formula_rec(rng, cfg, depth - 1));
    case kTensor:
      return Formula::tensor(random_formula_rec(rng, cfg, depth - 1),
                             random_formula_rec(rng, cfg, depth - 1));
    case kIdisj:
      return Formula::idisj(random_formula_rec(rng, cfg, depth - 1),
                            random_formula_rec(rng, cfg, depth - 1));
    case kImplies:
      return Formula::implies(random_formula_rec(rng, cfg, depth - 1),
                              random_formula_rec(rng, cfg, depth - 1));
    case kNeg:
      return Formula::neg(random_formula_rec(rng, cfg, depth - 1));
    case kQuestion:
      return Formula::question(random_formula_rec(rng, cfg, depth - 1));
    case kBox:
      return Formula::box(random_formula_rec(rng, cfg, depth - 1));
    case kDiamond:
      return Formula::diamond(random_formula_rec(rng, cfg, depth - 1));
    default:
      return leaf();
  }
}

}  // namespace detail

inline FormulaPtr random_formula(Rng& rng, const GenConfig& cfg) {
  return detail::random_formula_rec(rng, cfg, cfg.max_depth);
}

inline FormulaPtr random_formula(const GenConfig& cfg) {
  Rng rng(cfg.seed);
  return random_formula(rng, cfg);
}

inline KripkeModel random_model(Rng& rng, const GenConfig& cfg) {
  int span = cfg.max_worlds - cfg.min_worlds + 1;
  int n = cfg.min_worlds + static_cast<int>(rng.below(static_cast<std::uint64_t>(span)));
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("w" + std::to_string(i));
  std::vector<std::uint64_t> reach(n);
  for (int i = 0; i < n; ++i) reach[i] = std::uint64_t{1} << i;
  if (cfg.kind == ModelKind::Intuitionistic) {
    // Edges only go up the index order, so closure yields a poset.
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.chance(1, 3)) reach[i] |= std::uint64_t{1} << j;
  } else if (cfg.kind == ModelKind::S4) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && rng.chance(1, 4)) reach[i] |= std::uint64_t{1} << j;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if ((reach[i] >> k) & 1) reach[i] |= reach[k];

  const std::uint64_t full = low_bits(n);
  std::vector<std::pair<std::string, std::uint64_t>> val;
  for (const auto& atom : cfg.atom_pool) {
    std::uint64_t mask = rng.raw() & full & rng.raw();  // sparse-ish
    if (cfg.kind == ModelKind::Intuitionistic) {
      std::uint64_t closed = 0;
      for_each_world(mask, [&](int w) { closed |= reach[w]; });
      mask = closed;
    }
    if (mask) val.emplace_back(atom, mask);
  }
  return KripkeModel::from_closed(cfg.kind, std::move(names), std::move(reach), std::move(val));
}

inline Team random_team(Rng& rng, const KripkeModel& m) {
  return Team(rng.raw() & m.full_mask());
}

}  // namespace inqi
