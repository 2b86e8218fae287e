#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "inqi/errors.hpp"
#include "inqi/model.hpp"

namespace inqi {

// Exhaustive enumeration of all models with exactly n labeled worlds
// w1..wn over the given atoms, in a fixed order:
//   * relation matrices ascend lexicographically, reading the matrix
//     row-major (the (w1,w2) cell is the most significant);
//   * for each relation, valuations ascend as atom-major tuples of world
//     masks (atoms sorted by name, first atom most significant; masks
//     ascend as integers with bit i = world i+1).
// Only closed relations satisfying the kind invariants are emitted;
// intuitionistic valuations range over upward-closed masks only.
// No deduplication up to isomorphism is attempted.
//
// The visitor returns false to stop; enumerate_models returns false when
// it was stopped early.
inline bool enumerate_models(int n_worlds, std::vector<std::string> atoms, ModelKind kind,
                             const std::function<bool(const KripkeModel&)>& visit) {
  if (n_worlds < 0) throw std::invalid_argument("negative world count");
  if (n_worlds > 6) throw SizeLimitError("exhaustive model enumeration is capped at 6 worlds");
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());

  const int n = n_worlds;
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("w" + std::to_string(i));

  // Off-diagonal cells in row-major order; cell 0 is most significant.
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) cells.emplace_back(i, j);
  const int m = static_cast<int>(cells.size());

  std::vector<std::uint64_t> reach(n);
  for (std::uint64_t code = 0;; ++code) {
    if (kind == ModelKind::Classical && code > 0) break;
    for (int w = 0; w < n; ++w) reach[w] = std::uint64_t{1} << w;
    if (kind != ModelKind::Classical) {
      for (int b = 0; b < m; ++b)
        if ((code >> (m - 1 - b)) & 1) reach[cells[b].first] |= std::uint64_t{1} << cells[b].second;
    }

    bool admissible = true;
    for (int w = 0; w < n && admissible; ++w) {
      for_each_world(reach[w], [&](int v) {
        if ((reach[v] & ~reach[w]) != 0) admissible = false;  // not transitive
      });
    }
    if (admissible && kind == ModelKind::Intuitionistic) {
      for (int w = 0; w < n && admissible; ++w)
        for (int v = w + 1; v < n; ++v)
          if (((reach[w] >> v) & 1) && ((reach[v] >> w) & 1)) admissible = false;
    }

    if (admissible) {
      // Admissible masks per atom (they coincide for every atom).
      std::vector<std::uint64_t> masks;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        if (kind == ModelKind::Intuitionistic) {
          bool closed = true;
          for_each_world(v, [&](int w) {
            if ((reach[w] & ~v) != 0) closed = false;
          });
          if (!closed) continue;
        }
        masks.push_back(v);
      }

      const std::size_t k = atoms.size();
      std::vector<std::size_t> pick(k, 0);
      bool more = true;
      while (more) {
        std::vector<std::pair<std::string, std::uint64_t>> val;
        for (std::size_t a = 0; a < k; ++a)
          if (masks[pick[a]]) val.emplace_back(atoms[a], masks[pick[a]]);
        if (!visit(KripkeModel::from_closed(kind, names, reach, std::move(val)))) return false;
        if (k == 0) break;
        // Odometer step; the last atom is the least significant digit.
        std::size_t a = k - 1;
        while (true) {
          if (++pick[a] < masks.size()) break;
          pick[a] = 0;
          if (a == 0) {
            more = false;
            break;
          }
          --a;
        }
      }
    }

    if (kind == ModelKind::Classical) break;
    if (m == 0 || code == low_bits(m)) break;
  }
  return true;
}

inline std::vector<KripkeModel> enumerate_models_vec(int n_worlds, std::vector<std::string> atoms,
                                                     ModelKind kind) {
  std::vector<KripkeModel> out;
  enumerate_models(n_worlds, std::move(atoms), kind, [&](const KripkeModel& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

// Convenience sweep over world counts 0..max_worlds.
inline bool enumerate_models_upto(int max_worlds, const std::vector<std::string>& atoms,
                                  ModelKind kind,
                                  const std::function<bool(const KripkeModel&)>& visit) {
  for (int n = 0; n <= max_worlds; ++n)
    if (!enumerate_models(n, atoms, kind, visit)) return false;
  return true;
}

}  // namespace inqi
