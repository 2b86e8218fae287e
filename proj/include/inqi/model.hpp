#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "inqi/errors.hpp"

namespace inqi {

enum class ModelKind { Intuitionistic, S4, Classical };

inline const char* kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Intuitionistic:
      return "intuitionistic";
    case ModelKind::S4:
      return "s4";
    case ModelKind::Classical:
      return "classical";
  }
  return "?";
}

inline std::optional<ModelKind> kind_from_name(const std::string& s) {
  if (s == "intuitionistic") return ModelKind::Intuitionistic;
  if (s == "s4") return ModelKind::S4;
  if (s == "classical") return ModelKind::Classical;
  return std::nullopt;
}

// A team is a subset of a model's worlds, stored as a bitmask over the
// model's world order. Models are capped at 64 worlds for this reason;
// subset enumeration dominates the evaluators' runtime anyway.
class Team {
public:
  constexpr Team() = default;
  explicit constexpr Team(std::uint64_t bits) : bits_(bits) {}

  static constexpr Team empty() { return Team(0); }
  static constexpr Team single(int world) { return Team(std::uint64_t{1} << world); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool is_empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int world) const { return (bits_ >> world) & 1; }
  constexpr bool subset_of(Team other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr Team united(Team other) const { return Team(bits_ | other.bits_); }
  constexpr Team intersected(Team other) const { return Team(bits_ & other.bits_); }
  constexpr Team minus(Team other) const { return Team(bits_ & ~other.bits_); }
  constexpr Team with(int world) const { return Team(bits_ | (std::uint64_t{1} << world)); }
  constexpr Team without(int world) const { return Team(bits_ & ~(std::uint64_t{1} << world)); }

  friend constexpr bool operator==(Team a, Team b) { return a.bits_ == b.bits_; }
  friend constexpr bool operator!=(Team a, Team b) { return a.bits_ != b.bits_; }

private:
  std::uint64_t bits_ = 0;
};

// Visits every world index in the mask, lowest first.
template <typename Fn>
inline void for_each_world(std::uint64_t bits, Fn&& fn) {
  while (bits) {
    int w = std::countr_zero(bits);
    bits &= bits - 1;
    fn(w);
  }
}

// Visits every submask of `bits`, including 0 and bits itself.
// Returns false if the visitor stopped the walk.
template <typename Fn>
inline bool for_each_submask(std::uint64_t bits, Fn&& fn) {
  std::uint64_t s = bits;
  while (true) {
    if (!fn(s)) return false;
    if (s == 0) return true;
    s = (s - 1) & bits;
  }
}

inline constexpr int kMaxWorlds = 64;

inline constexpr std::uint64_t low_bits(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Finite Kripke model. The relation is kept reflexive-transitively
// closed at all times: constructors close whatever edges they are given,
// so figures can be specified by their covering edges only.
class KripkeModel {
public:
  using Edge = std::pair<std::string, std::string>;

  static KripkeModel make(ModelKind kind, std::vector<std::string> worlds,
                          const std::vector<Edge>& edges,
                          const std::vector<std::pair<std::string, std::vector<std::string>>>&
                              valuation) {
    KripkeModel m;
    m.kind_ = kind;
    m.names_ = std::move(worlds);
    if (m.names_.size() > kMaxWorlds)
      throw std::invalid_argument("model exceeds " + std::to_string(kMaxWorlds) + " worlds");
    for (std::size_t i = 0; i < m.names_.size(); ++i) {
      if (!m.index_.emplace(m.names_[i], static_cast<int>(i)).second)
        throw std::invalid_argument("duplicate world name: " + m.names_[i]);
    }
    m.reach_.assign(m.names_.size(), 0);
    for (std::size_t i = 0; i < m.names_.size(); ++i) m.reach_[i] = std::uint64_t{1} << i;
    for (const auto& [from, to] : edges) m.reach_[m.index_of(from)] |= world_bit(m.index_of(to));
    m.close();
    for (const auto& [world, atoms] : valuation) {
      int w = m.index_of(world);
      for (const auto& atom : atoms) m.atom_entry(atom) |= world_bit(w);
    }
    return m;
  }

  // Internal fast path: the relation rows must already be closed.
  static KripkeModel from_closed(ModelKind kind, std::vector<std::string> worlds,
                                 std::vector<std::uint64_t> reach,
                                 std::vector<std::pair<std::string, std::uint64_t>> valuation) {
    KripkeModel m;
    m.kind_ = kind;
    m.names_ = std::move(worlds);
    m.reach_ = std::move(reach);
    for (auto& entry : valuation)
      if (entry.second != 0) m.valuation_.push_back(std::move(entry));
    std::sort(m.valuation_.begin(), m.valuation_.end());
    for (std::size_t i = 0; i < m.names_.size(); ++i)
      m.index_.emplace(m.names_[i], static_cast<int>(i));
    return m;
  }

  ModelKind kind() const { return kind_; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& world_names() const { return names_; }
  const std::string& name(int w) const { return names_[w]; }

  int index_of(const std::string& world) const {
    auto it = index_.find(world);
    if (it == index_.end()) throw std::invalid_argument("unknown world: " + world);
    return it->second;
  }
  bool has_world(const std::string& world) const { return index_.count(world) > 0; }

  std::uint64_t full_mask() const { return low_bits(size()); }
  Team full_team() const { return Team(full_mask()); }

  std::uint64_t reach(int w) const { return reach_[w]; }
  bool related(int w, int v) const { return (reach_[w] >> v) & 1; }

  std::uint64_t r_image_bits(std::uint64_t team) const {
    std::uint64_t out = 0;
    for_each_world(team, [&](int w) { out |= reach_[w]; });
    return out;
  }

  const std::vector<std::pair<std::string, std::uint64_t>>& valuation() const {
    return valuation_;
  }

  std::uint64_t atom_mask(const std::string& atom) const {
    auto it = std::lower_bound(valuation_.begin(), valuation_.end(), atom,
                               [](const auto& e, const std::string& a) { return e.first < a; });
    return (it != valuation_.end() && it->first == atom) ? it->second : 0;
  }

  bool atom_true_at(const std::string& atom, int w) const { return (atom_mask(atom) >> w) & 1; }

  KripkeModel with_kind(ModelKind kind) const {
    KripkeModel m = *this;
    m.kind_ = kind;
    return m;
  }

  // Restriction to the worlds in `mask`; relation and valuation are cut
  // down, world order is preserved. Also returns old-index -> new-index.
  std::pair<KripkeModel, std::vector<int>> restricted(std::uint64_t mask) const {
    std::vector<int> remap(names_.size(), -1);
    std::vector<std::string> names;
    int next = 0;
    for (int w = 0; w < size(); ++w) {
      if ((mask >> w) & 1) {
        remap[w] = next++;
        names.push_back(names_[w]);
      }
    }
    auto squeeze = [&](std::uint64_t bits) {
      std::uint64_t out = 0;
      for_each_world(bits & mask, [&](int w) { out |= world_bit(remap[w]); });
      return out;
    };
    std::vector<std::uint64_t> reach;
    for (int w = 0; w < size(); ++w)
      if ((mask >> w) & 1) reach.push_back(squeeze(reach_[w]));
    std::vector<std::pair<std::string, std::uint64_t>> val;
    for (const auto& [atom, bits] : valuation_) {
      std::uint64_t sq = squeeze(bits);
      if (sq) val.emplace_back(atom, sq);
    }
    return {from_closed(kind_, std::move(names), std::move(reach), std::move(val)), remap};
  }

private:
  static std::uint64_t world_bit(int w) { return std::uint64_t{1} << w; }

  std::uint64_t& atom_entry(const std::string& atom) {
    auto it = std::lower_bound(valuation_.begin(), valuation_.end(), atom,
                               [](const auto& e, const std::string& a) { return e.first < a; });
    if (it == valuation_.end() || it->first != atom)
      it = valuation_.insert(it, {atom, 0});
    return it->second;
  }

  void close() {
    for (std::size_t k = 0; k < reach_.size(); ++k)
      for (std::size_t i = 0; i < reach_.size(); ++i)
        if ((reach_[i] >> k) & 1) reach_[i] |= reach_[k];
  }

  ModelKind kind_ = ModelKind::Intuitionistic;
  std::vector<std::string> names_;
  std::vector<std::uint64_t> reach_;
  std::vector<std::pair<std::string, std::uint64_t>> valuation_;  // atom -> world mask, sorted
  std::unordered_map<std::string, int> index_;
};

struct Violation {
  std::string invariant;  // "reflexivity", "transitivity", "antisymmetry", "persistency", "identity"
  std::string witness;
};

// Checks the kind invariants; returns the first violation found.
inline std::optional<Violation> validate_model(const KripkeModel& m) {
  for (int w = 0; w < m.size(); ++w)
    if (!m.related(w, w)) return Violation{"reflexivity", m.name(w)};
  for (int w = 0; w < m.size(); ++w) {
    std::optional<Violation> bad;
    for_each_world(m.reach(w), [&](int v) {
      if (!bad && (m.reach(v) & ~m.reach(w)) != 0)
        bad = Violation{"transitivity", "(" + m.name(w) + "," + m.name(v) + ")"};
    });
    if (bad) return bad;
  }
  if (m.kind() == ModelKind::Classical) {
    for (int w = 0; w < m.size(); ++w)
      if (m.reach(w) != (std::uint64_t{1} << w))
        return Violation{"identity", m.name(w)};
  }
  if (m.kind() == ModelKind::Intuitionistic) {
    for (int w = 0; w < m.size(); ++w)
      for (int v = w + 1; v < m.size(); ++v)
        if (m.related(w, v) && m.related(v, w))
          return Violation{"antisymmetry", "(" + m.name(w) + "," + m.name(v) + ")"};
    for (const auto& [atom, mask] : m.valuation()) {
      std::optional<Violation> bad;
      for_each_world(mask, [&](int w) {
        if (!bad && (m.reach(w) & ~mask) != 0) {
          int v = std::countr_zero(m.reach(w) & ~mask);
          bad = Violation{"persistency", "(" + m.name(w) + "," + m.name(v) + "," + atom + ")"};
        }
      });
      if (bad) return bad;
    }
  }
  return std::nullopt;
}

inline Team r_image(const KripkeModel& m, Team t) { return Team(m.r_image_bits(t.bits())); }

// t_prime extends t when it sits inside the up-set generated by t.
inline bool is_extension(const KripkeModel& m, Team t_prime, Team t) {
  return (t_prime.bits() & ~m.r_image_bits(t.bits())) == 0;
}

// The relation-minimal members of t; on finite models they generate the
// same up-set as t itself.
inline Team min_set(const KripkeModel& m, Team t) {
  std::uint64_t out = 0;
  for_each_world(t.bits(), [&](int w) {
    bool minimal = true;
    for_each_world(t.bits(), [&](int v) {
      if (v != w && m.related(v, w)) minimal = false;
    });
    if (minimal) out |= std::uint64_t{1} << w;
  });
  return Team(out);
}

// Restriction of the model to R[t], with t re-indexed into it.
inline std::pair<KripkeModel, Team> generated_submodel(const KripkeModel& m, Team t) {
  auto [sub, remap] = m.restricted(m.r_image_bits(t.bits()));
  std::uint64_t bits = 0;
  for_each_world(t.bits(), [&](int w) { bits |= std::uint64_t{1} << remap[w]; });
  return {std::move(sub), Team(bits)};
}

// Side-by-side union; no relation across the two halves beyond what
// reflexivity forces. Colliding right-hand world names get primes.
inline KripkeModel disjoint_union(const KripkeModel& a, const KripkeModel& b) {
  if (a.kind() != b.kind())
    throw KindMismatchError("disjoint_union requires models of the same kind");
  if (a.size() + b.size() > kMaxWorlds)
    throw std::invalid_argument("disjoint union exceeds the world cap");
  std::vector<std::string> names = a.world_names();
  for (const auto& n : b.world_names()) {
    std::string fresh = n;
    while (std::find(names.begin(), names.end(), fresh) != names.end()) fresh += "'";
    names.push_back(fresh);
  }
  std::vector<std::uint64_t> reach;
  reach.reserve(names.size());
  for (int w = 0; w < a.size(); ++w) reach.push_back(a.reach(w));
  for (int w = 0; w < b.size(); ++w) reach.push_back(b.reach(w) << a.size());
  std::vector<std::pair<std::string, std::uint64_t>> val;
  for (const auto& [atom, mask] : a.valuation()) val.emplace_back(atom, mask);
  for (const auto& [atom, mask] : b.valuation()) {
    if (mask == 0) continue;
    bool merged = false;
    for (auto& [name, bits] : val) {
      if (name == atom) {
        bits |= mask << a.size();
        merged = true;
        break;
      }
    }
    if (!merged) val.emplace_back(atom, mask << a.size());
  }
  return KripkeModel::from_closed(a.kind(), std::move(names), std::move(reach), std::move(val));
}

// Appends one fresh world below everything, with every atom false there.
// Existing world indices (and hence team masks) stay valid.
inline KripkeModel add_fresh_root(const KripkeModel& m) {
  if (m.kind() != ModelKind::Intuitionistic)
    throw KindMismatchError("add_fresh_root requires an intuitionistic model");
  if (m.size() + 1 > kMaxWorlds) throw std::invalid_argument("world cap exceeded");
  std::vector<std::string> names = m.world_names();
  std::string fresh = "root";
  while (std::find(names.begin(), names.end(), fresh) != names.end()) fresh += "'";
  names.push_back(fresh);
  std::vector<std::uint64_t> reach;
  for (int w = 0; w < m.size(); ++w) reach.push_back(m.reach(w));
  reach.push_back(low_bits(m.size() + 1));
  std::vector<std::pair<std::string, std::uint64_t>> val(m.valuation().begin(),
                                                         m.valuation().end());
  return KripkeModel::from_closed(m.kind(), std::move(names), std::move(reach), std::move(val));
}

// Collapses each mutual-reachability cluster of an s4 model to a single
// world; an atom holds at a cluster when it holds throughout the
// representative's reach. The result is a valid intuitionistic model,
// and is isomorphic to the input when that was already one.
inline KripkeModel rho_model(const KripkeModel& m) {
  if (m.kind() != ModelKind::S4) throw KindMismatchError("rho_model requires an s4 model");
  std::vector<int> cluster_of(m.size(), -1);
  std::vector<int> reps;
  for (int w = 0; w < m.size(); ++w) {
    if (cluster_of[w] != -1) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(w);
    for_each_world(m.reach(w), [&](int v) {
      if (m.related(v, w)) cluster_of[v] = id;
    });
  }
  std::vector<std::string> names;
  for (int id = 0; id < static_cast<int>(reps.size()); ++id) {
    std::string n;
    for (int w = 0; w < m.size(); ++w) {
      if (cluster_of[w] == id) {
        if (!n.empty()) n += "+";
        n += m.name(w);
      }
    }
    names.push_back(std::move(n));
  }
  std::vector<std::uint64_t> reach(reps.size(), 0);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j)
      if (m.related(reps[i], reps[j])) reach[i] |= std::uint64_t{1} << j;
  std::vector<std::pair<std::string, std::uint64_t>> val;
  for (const auto& [atom, mask] : m.valuation()) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < reps.size(); ++i)
      if ((m.reach(reps[i]) & ~mask) == 0) bits |= std::uint64_t{1} << i;
    if (bits) val.emplace_back(atom, bits);
  }
  return KripkeModel::from_closed(ModelKind::Intuitionistic, std::move(names), std::move(reach),
                                  std::move(val));
}

// Team successor relation used by the modal team semantics:
// t' sits inside R[t] and every member of t can see into t'.
inline bool mt0_successor(const KripkeModel& m, Team t, Team t_prime) {
  if ((t_prime.bits() & ~m.r_image_bits(t.bits())) != 0) return false;
  bool ok = true;
  for_each_world(t.bits(), [&](int w) {
    if ((m.reach(w) & t_prime.bits()) == 0) ok = false;
  });
  return ok;
}

}  // namespace inqi
