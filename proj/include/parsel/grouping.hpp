#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "parsel/bits.hpp"
#include "parsel/errors.hpp"
#include "parsel/pauli.hpp"

namespace parsel {

/// Commuting, GF(2)-independent set of term indices; the members can be
/// Clifford-mapped to distinct single-qubit Z operators and applied in one
/// layer of controlled gates.
struct ParallelSet {
  std::vector<std::size_t> term_indices;
  std::size_t capacity = 0;
};

struct Partition {
  std::vector<ParallelSet> sets;
  bool identity_excluded = false;
  double identity_coefficient = 0.0;
  std::size_t n_qubits = 0;
  std::size_t capacity = 0;
  std::size_t source_term_count = 0;  // L, including an identity term
  bool capacity_exceeds_n = false;

  std::size_t partitioned_terms() const {
    std::size_t c = 0;
    for (const ParallelSet& s : sets) c += s.term_indices.size();
    return c;
  }

  std::size_t max_set_size() const {
    std::size_t m = 0;
    for (const ParallelSet& s : sets) m = std::max(m, s.term_indices.size());
    return m;
  }

  /// Structured text form with stable field order.
  std::string serialize() const {
    std::ostringstream out;
    out << "# parsel partition v1\n";
    out << "n_qubits " << n_qubits << "\n";
    out << "capacity " << capacity << "\n";
    out << "source_terms " << source_term_count << "\n";
    out << "identity_excluded " << (identity_excluded ? 1 : 0) << "\n";
    if (identity_excluded) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", identity_coefficient);
      out << "identity_coefficient " << buf << "\n";
    }
    out << "sets " << sets.size() << "\n";
    for (std::size_t i = 0; i < sets.size(); ++i) {
      out << "set " << i << " :";
      for (std::size_t idx : sets[i].term_indices) out << " " << idx;
      out << "\n";
    }
    return out.str();
  }
};

struct FillingReport {
  double filling_factor = 0.0;  // mean_set_size / capacity
  double mean_set_size = 0.0;
  std::size_t set_count = 0;
  std::map<std::size_t, std::size_t> set_size_histogram;
  std::size_t partitioned_terms = 0;
  // QROM only: the all-zero pattern is held in a flagged singleton and kept
  // out of the statistics above; the alternative convention including it is
  // reported alongside.
  bool zero_singleton_present = false;
  double filling_factor_including_zero = 0.0;
};

namespace detail {

inline FillingReport make_filling_report(const std::vector<std::size_t>& sizes,
                                         std::size_t capacity) {
  if (sizes.empty()) {
    throw precondition_error("filling statistics of an empty partition");
  }
  FillingReport r;
  r.set_count = sizes.size();
  for (std::size_t s : sizes) {
    r.partitioned_terms += s;
    ++r.set_size_histogram[s];
  }
  r.mean_set_size =
      static_cast<double>(r.partitioned_terms) / static_cast<double>(r.set_count);
  r.filling_factor = r.mean_set_size / static_cast<double>(capacity);
  return r;
}

/// Greedy ordering for all term-placement passes: descending |coefficient|,
/// ties broken by original position.
inline std::vector<std::size_t> coefficient_order(const Observable& obs) {
  std::vector<std::size_t> order(obs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::abs(obs.term(a).coefficient) >
                            std::abs(obs.term(b).coefficient);
                   });
  return order;
}

}  // namespace detail

/// First-fit partition of the non-identity terms into pairwise-commuting
/// groups (greedy coloring of the anticommutation graph, an approximate
/// minimum clique cover). Deterministic for a fixed input.
inline std::vector<std::vector<std::size_t>> partition_commuting(
    const Observable& obs) {
  if (obs.size() == 0) {
    throw precondition_error("partition_commuting: empty observable");
  }
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t j : detail::coefficient_order(obs)) {
    if (obs.identity_index() && *obs.identity_index() == j) continue;
    const PauliString& p = obs.term(j).pauli;
    bool placed = false;
    for (auto& g : groups) {
      bool ok = true;
      for (std::size_t m : g) {
        if (symplectic_product(p, obs.term(m).pauli) != 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g.push_back(j);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({j});
  }
  return groups;
}

/// Splits each commuting group into linearly independent sets of at most
/// `capacity` members by first-fit over the group order.
inline Partition refine_independent(
    const Observable& obs, const std::vector<std::vector<std::size_t>>& groups,
    std::size_t capacity) {
  if (capacity < 1) throw precondition_error("capacity must be >= 1");
  Partition part;
  part.n_qubits = obs.n_qubits();
  part.capacity = capacity;
  part.source_term_count = obs.size();
  part.capacity_exceeds_n = capacity > obs.n_qubits();
  if (obs.identity_index()) {
    part.identity_excluded = true;
    part.identity_coefficient = obs.term(*obs.identity_index()).coefficient;
  }
  for (const auto& g : groups) {
    std::vector<ParallelSet> sets;
    std::vector<Gf2Basis> bases;
    for (std::size_t j : g) {
      BitVec row = obs.term(j).pauli.symplectic_row();
      bool placed = false;
      for (std::size_t s = 0; s < sets.size(); ++s) {
        if (sets[s].term_indices.size() >= capacity) continue;
        if (bases[s].try_extend(row)) {
          sets[s].term_indices.push_back(j);
          placed = true;
          break;
        }
      }
      if (!placed) {
        sets.push_back(ParallelSet{{j}, capacity});
        bases.emplace_back(2 * obs.n_qubits());
        bases.back().try_extend(row);
      }
    }
    for (auto& s : sets) part.sets.push_back(std::move(s));
  }
  return part;
}

inline double filling_factor(const Partition& part) {
  if (part.sets.empty()) {
    throw precondition_error("filling_factor of an empty partition");
  }
  double terms = static_cast<double>(part.partitioned_terms());
  return terms / static_cast<double>(part.sets.size()) /
         static_cast<double>(part.capacity);
}

inline FillingReport filling_report(const Partition& part) {
  std::vector<std::size_t> sizes;
  sizes.reserve(part.sets.size());
  for (const ParallelSet& s : part.sets) sizes.push_back(s.term_indices.size());
  return detail::make_filling_report(sizes, part.capacity);
}

/// Commuting partition followed by independence refinement, with filling
/// statistics. capacity defaults to the register size n.
inline std::pair<Partition, FillingReport> partition_parallel(
    const Observable& obs, std::size_t capacity = 0) {
  if (capacity == 0) capacity = obs.n_qubits();
  Partition part = refine_independent(obs, partition_commuting(obs), capacity);
  FillingReport rep = filling_report(part);
  return {std::move(part), rep};
}

struct QromPartition {
  std::vector<std::vector<std::size_t>> sets;  // indices into the input list
  std::optional<std::size_t> zero_singleton;   // index of the all-zero pattern
  std::size_t width = 0;
};

/// Greedy first-fit partition of distinct bit patterns into GF(2)-independent
/// sets of size at most `width`. Patterns are processed in descending
/// unsigned-integer order; the all-zero pattern can never join an independent
/// set and is held in a dedicated singleton excluded from the filling mean.
inline std::pair<QromPartition, FillingReport> partition_qrom_addresses(
    const std::vector<BitVec>& patterns, std::size_t width) {
  QromPartition part;
  part.width = width;
  for (const BitVec& p : patterns) {
    if (p.size() != width) {
      throw dimension_error("qrom pattern width mismatch");
    }
  }
  std::vector<std::size_t> order(patterns.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return BitVec::compare_uint(patterns[a], patterns[b]) > 0;
                   });
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (patterns[order[i]] == patterns[order[i + 1]]) {
      throw parse_error("duplicate pattern " + patterns[order[i]].to_string());
    }
  }
  std::vector<Gf2Basis> bases;
  for (std::size_t idx : order) {
    const BitVec& v = patterns[idx];
    if (v.none()) {
      part.zero_singleton = idx;
      continue;
    }
    bool placed = false;
    for (std::size_t s = 0; s < part.sets.size(); ++s) {
      if (part.sets[s].size() >= width) continue;
      if (bases[s].try_extend(v)) {
        part.sets[s].push_back(idx);
        placed = true;
        break;
      }
    }
    if (!placed) {
      part.sets.push_back({idx});
      bases.emplace_back(width);
      bases.back().try_extend(v);
    }
  }
  std::vector<std::size_t> sizes;
  for (const auto& s : part.sets) sizes.push_back(s.size());
  if (sizes.empty() && part.zero_singleton) sizes.push_back(1);
  FillingReport rep = detail::make_filling_report(sizes, width);
  if (part.zero_singleton) {
    rep.zero_singleton_present = true;
    double sets_incl = static_cast<double>(part.sets.size()) + 1.0;
    double terms_incl = static_cast<double>(rep.partitioned_terms);
    if (!part.sets.empty()) terms_incl += 1.0;
    rep.filling_factor_including_zero =
        terms_incl / sets_incl / static_cast<double>(width);
  } else {
    rep.filling_factor_including_zero = rep.filling_factor;
  }
  return {std::move(part), rep};
}

}  // namespace parsel
