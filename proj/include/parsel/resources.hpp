#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parsel/builders.hpp"
#include "parsel/circuit.hpp"
#include "parsel/errors.hpp"
#include "parsel/grouping.hpp"
#include "parsel/pauli.hpp"

namespace parsel {

struct CostModelConfig {
  // T cost of one control-reduction step; an MCP with c controls costs
  // t_per_control_pair * (c - 1).
  std::uint32_t t_per_control_pair = 4;
  // Cost the serial SELECT control ladder as one unary-iteration sweep,
  // t_per_control_pair * (L - 1) total.
  bool unary_iteration = false;
  // Depth units per teleported two-qubit stage (see constant_depth_cost).
  std::uint32_t d_stage = 4;
  enum class CopiesConvention { kN, kMaxSetSize };
  CopiesConvention copies_convention = CopiesConvention::kN;
  // Optional T-factory footprint: qubits charged per unit of T throughput
  // (T count / T depth). Disabled at 0.
  double factory_qubit_cost = 0.0;
};

struct ResourceReport {
  std::size_t n_qubits = 0;
  std::size_t term_count = 0;  // L
  std::size_t set_count = 0;
  std::size_t index_width = 0;
  std::size_t copies = 0;

  std::size_t qubits_serial = 0;
  std::size_t qubits_parallel = 0;
  std::size_t t_depth_serial = 0;
  std::size_t t_depth_parallel = 0;
  std::uint64_t t_count = 0;

  double depth_reduction_factor = 0.0;
  double qubit_factor = 0.0;
  double stv_ratio = 0.0;

  double filling = 0.0;           // set when derived from a partition
  double asymptotic_saving = 0.0; // n * filling / log2(n)
  double factory_qubits_serial = 0.0;
  double factory_qubits_parallel = 0.0;
};

/// Analytic SELECT cost model. Serial: n + a qubits and one T layer per
/// term. Parallel: fanout copies of the index register (n by default) plus
/// 3n Clifford-teleportation ancilla, one T layer per parallel set; the
/// control structure is untouched, so the T count is shared.
inline ResourceReport estimate_select(
    std::size_t n, std::size_t term_count, std::size_t set_count,
    const CostModelConfig& config = {},
    std::optional<std::size_t> max_set_size = std::nullopt) {
  if (set_count < 1 || term_count < set_count) {
    throw precondition_error("estimate_select requires L >= set_count >= 1");
  }
  ResourceReport r;
  r.n_qubits = n;
  r.term_count = term_count;
  r.set_count = set_count;
  r.index_width = index_register_width(term_count);

  std::size_t copies = n;
  if (config.copies_convention == CostModelConfig::CopiesConvention::kMaxSetSize) {
    if (!max_set_size) {
      throw precondition_error(
          "max_set_size required under the max-set-size copies convention");
    }
    copies = *max_set_size;
  }
  r.copies = copies;
  r.qubits_serial = n + r.index_width;
  r.qubits_parallel = n + copies * r.index_width + 3 * n;
  r.t_depth_serial = term_count;
  r.t_depth_parallel = set_count;

  const std::uint64_t per_pair = config.t_per_control_pair;
  if (config.unary_iteration) {
    r.t_count = per_pair * static_cast<std::uint64_t>(term_count - 1);
  } else {
    r.t_count = static_cast<std::uint64_t>(term_count) * per_pair *
                static_cast<std::uint64_t>(r.index_width - 1);
  }

  r.depth_reduction_factor = static_cast<double>(r.t_depth_serial) /
                             static_cast<double>(r.t_depth_parallel);
  r.qubit_factor = static_cast<double>(r.qubits_parallel) /
                   static_cast<double>(r.qubits_serial);
  r.stv_ratio = (static_cast<double>(r.qubits_serial) *
                 static_cast<double>(r.t_depth_serial)) /
                (static_cast<double>(r.qubits_parallel) *
                 static_cast<double>(r.t_depth_parallel));
  if (config.factory_qubit_cost > 0 && r.t_depth_serial > 0) {
    r.factory_qubits_serial = config.factory_qubit_cost *
                              static_cast<double>(r.t_count) /
                              static_cast<double>(r.t_depth_serial);
    r.factory_qubits_parallel = config.factory_qubit_cost *
                                static_cast<double>(r.t_count) /
                                static_cast<double>(r.t_depth_parallel);
    double qs = static_cast<double>(r.qubits_serial) + r.factory_qubits_serial;
    double qp =
        static_cast<double>(r.qubits_parallel) + r.factory_qubits_parallel;
    r.qubit_factor = qp / qs;
    r.stv_ratio = qs * static_cast<double>(r.t_depth_serial) /
                  (qp * static_cast<double>(r.t_depth_parallel));
  }
  return r;
}

/// Cost model evaluated on a measured partition; reports the filling factor
/// and the n*F/log2(n) asymptotic label alongside.
inline ResourceReport estimate_from_partition(const Observable& obs,
                                              const Partition& partition,
                                              const CostModelConfig& config = {}) {
  std::size_t applied = partition.partitioned_terms();
  ResourceReport r =
      estimate_select(obs.n_qubits(), applied, partition.sets.size(), config,
                      partition.max_set_size());
  r.filling = filling_factor(partition);
  double n = static_cast<double>(obs.n_qubits());
  r.asymptotic_saving = n > 1 ? n * r.filling / std::log2(n) : r.filling;
  return r;
}

/// Naive-mode T count of a gate list: every MCP or TOFFOLI with c controls
/// costs t_per_control_pair * (c - 1); singly-controlled Paulis are
/// Clifford and free.
inline std::uint64_t t_count(const Circuit& c,
                             const CostModelConfig& config = {}) {
  std::uint64_t total = 0;
  for (const Gate& g : c.gates) {
    std::size_t controls = 0;
    if (g.kind == GateKind::TOFFOLI) {
      controls = 2;
    } else if (g.kind == GateKind::MCP) {
      controls = g.controls.size();
    } else {
      continue;
    }
    if (controls >= 2) {
      total += config.t_per_control_pair *
               static_cast<std::uint64_t>(controls - 1);
    }
  }
  return total;
}

/// Closed-form T count for L gates of fixed control count.
inline std::uint64_t t_count(std::size_t gate_count,
                             std::size_t controls_per_gate,
                             const CostModelConfig& config = {}) {
  if (gate_count == 0) return 0;
  if (config.unary_iteration) {
    return config.t_per_control_pair *
           static_cast<std::uint64_t>(gate_count - 1);
  }
  if (controls_per_gate < 2) return 0;
  return static_cast<std::uint64_t>(gate_count) * config.t_per_control_pair *
         static_cast<std::uint64_t>(controls_per_gate - 1);
}

}  // namespace parsel
