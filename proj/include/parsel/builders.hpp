#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "parsel/bits.hpp"
#include "parsel/circuit.hpp"
#include "parsel/errors.hpp"
#include "parsel/grouping.hpp"
#include "parsel/pauli.hpp"
#include "parsel/tableau.hpp"

namespace parsel {

/// Width of the SELECT index register for L terms; a degenerate SELECT with
/// one term still carries a control.
inline std::uint32_t index_register_width(std::size_t term_count) {
  if (term_count <= 1) return 1;
  return static_cast<std::uint32_t>(std::bit_width(term_count - 1));
}

namespace detail {

/// CNOT tree spreading the value held in holders[0] across all holder
/// registers (each of `width` qubits). The number of value-carrying
/// registers doubles per round, so the scheduled depth is
/// ceil(log2(#holders)).
inline std::vector<Gate> fanout_gates(const std::vector<std::uint32_t>& holders,
                                      std::uint32_t width) {
  std::vector<Gate> gates;
  std::size_t have = 1;
  while (have < holders.size()) {
    std::size_t add = std::min(have, holders.size() - have);
    for (std::size_t i = 0; i < add; ++i) {
      for (std::uint32_t b = 0; b < width; ++b) {
        gates.push_back(Gate::cnot(holders[i] + b, holders[have + i] + b));
      }
    }
    have += add;
  }
  return gates;
}

inline void append_reversed(Circuit& c, const std::vector<Gate>& gates) {
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) c.append(*it);
}

inline std::vector<ControlBit> index_pattern_controls(std::uint32_t reg_start,
                                                      std::uint32_t width,
                                                      std::uint64_t pattern) {
  std::vector<ControlBit> controls;
  controls.reserve(width);
  for (std::uint32_t b = 0; b < width; ++b) {
    controls.push_back({reg_start + b, ((pattern >> b) & 1u) != 0});
  }
  return controls;
}

/// MCP applying the non-identity letters of `p` on the system register.
inline Gate mcp_for_pauli(std::vector<ControlBit> controls,
                          const PauliString& p, int sign) {
  std::vector<std::uint32_t> targets;
  std::string letters;
  for (std::size_t q = 0; q < p.n_qubits; ++q) {
    char l = p.letter(q);
    if (l == 'I') continue;
    targets.push_back(static_cast<std::uint32_t>(q));
    letters += l;
  }
  return Gate::mcp(std::move(controls), std::move(targets),
                   PauliString::from_text(letters), sign);
}

}  // namespace detail

/// |j>|0>...|0> -> |j>|j>...|j> on `copies` fresh registers via a CNOT tree
/// of depth ceil(log2(copies+1)). Uncomputation replays the tree in reverse
/// round order (see parsel::inverse).
inline Circuit build_fanout(std::uint32_t register_width, std::uint32_t copies) {
  if (register_width < 1 || copies < 1) {
    throw precondition_error("fanout needs width >= 1 and copies >= 1");
  }
  Circuit c;
  c.n_qubits = register_width * (copies + 1);
  c.registers.add("source", 0, register_width);
  c.registers.add("copies", register_width, register_width * copies);
  std::vector<std::uint32_t> holders;
  for (std::uint32_t r = 0; r <= copies; ++r) holders.push_back(r * register_width);
  for (Gate& g : detail::fanout_gates(holders, register_width)) {
    c.append(std::move(g));
  }
  return c;
}

/// Reference SELECT: one multi-controlled Pauli per non-identity term, the
/// controls reading the term's index off the ancilla register.
inline Circuit build_select_serial(const Observable& obs) {
  if (obs.size() == 0) {
    throw precondition_error("select of an empty observable");
  }
  const std::uint32_t n = static_cast<std::uint32_t>(obs.n_qubits());
  const std::uint32_t a = index_register_width(obs.size());
  Circuit c;
  c.n_qubits = n + a;
  c.registers.add("system", 0, n);
  c.registers.add("index", n, a);
  for (std::size_t j = 0; j < obs.size(); ++j) {
    const PauliTerm& t = obs.term(j);
    if (t.pauli.is_identity_pattern()) continue;
    c.append(detail::mcp_for_pauli(
        detail::index_pattern_controls(n, a, j), t.pauli, t.unit_sign()));
  }
  return c;
}

/// Per-set diagonalizing Cliffords for a partition. Set elements are fed to
/// the synthesizer with the term's unit sign folded in, so the returned
/// signs are exactly the MCP signs of the parallel SELECT.
inline std::vector<DiagonalizationResult> synthesize_partition_cliffords(
    const Observable& obs, const Partition& partition) {
  std::vector<DiagonalizationResult> out;
  out.reserve(partition.sets.size());
  for (const ParallelSet& s : partition.sets) {
    std::vector<PauliString> elements;
    elements.reserve(s.term_indices.size());
    for (std::size_t j : s.term_indices) {
      PauliString p = obs.term(j).pauli;
      p.sign = obs.term(j).unit_sign();
      elements.push_back(std::move(p));
    }
    out.push_back(synth_diagonalizing_clifford(elements, obs.n_qubits()));
  }
  return out;
}

/// Parallel SELECT: fan the index register out to max-set-size copies, then
/// per set conjugate the system by the diagonalizing Clifford and apply one
/// single-qubit-Z MCP per member from its own copy register. Members of a
/// set touch disjoint (copy register, system qubit) pairs, so each set
/// contributes one T layer.
inline Circuit build_select_parallel(
    const Observable& obs, const Partition& partition,
    const std::vector<DiagonalizationResult>& cliffords) {
  const std::uint32_t n = static_cast<std::uint32_t>(obs.n_qubits());
  const std::uint32_t a = index_register_width(obs.size());
  if (cliffords.size() != partition.sets.size()) {
    throw dimension_error("one Clifford per set required");
  }
  const std::size_t m = partition.max_set_size();
  if (m > n) {
    throw capacity_error("set of " + std::to_string(m) +
                         " terms exceeds register of " + std::to_string(n));
  }
  Circuit c;
  c.n_qubits = n + a + static_cast<std::uint32_t>(m) * a;
  c.registers.add("system", 0, n);
  c.registers.add("index", n, a);
  if (m > 0) {
    c.registers.add("copies", n + a, static_cast<std::uint32_t>(m) * a);
  }
  auto copy_start = [&](std::size_t r) {
    return n + a + static_cast<std::uint32_t>(r) * a;
  };
  std::vector<std::uint32_t> holders{n};
  for (std::size_t r = 0; r < m; ++r) holders.push_back(copy_start(r));
  std::vector<Gate> fan = detail::fanout_gates(holders, a);
  c.append_all(fan);

  for (std::size_t gi = 0; gi < partition.sets.size(); ++gi) {
    const ParallelSet& set = partition.sets[gi];
    const DiagonalizationResult& diag = cliffords[gi];
    if (diag.circuit.n_qubits != n ||
        diag.signs.size() != set.term_indices.size()) {
      throw dimension_error("clifford does not match its set");
    }
    c.append_all(diag.circuit.gates);
    for (std::size_t r = 0; r < set.term_indices.size(); ++r) {
      const std::size_t j = set.term_indices[r];
      PauliString zr = PauliString::from_text("Z");
      c.append(Gate::mcp(detail::index_pattern_controls(copy_start(r), a, j),
                         {static_cast<std::uint32_t>(r)}, std::move(zr),
                         diag.signs[r]));
    }
    c.append_all(inverse(diag.circuit).gates);
  }
  detail::append_reversed(c, fan);
  return c;
}

struct QromEntry {
  BitVec address;
  BitVec data;
};

struct QromTable {
  std::size_t address_width = 0;
  std::size_t data_width = 0;
  std::vector<QromEntry> entries;
};

/// Serial QROM: per entry one MCP whose controls read the address and whose
/// target writes the data word as an X string. All-zero data words emit no
/// gate.
inline Circuit build_qrom_serial(const QromTable& table) {
  const std::uint32_t aw = static_cast<std::uint32_t>(table.address_width);
  const std::uint32_t dw = static_cast<std::uint32_t>(table.data_width);
  Circuit c;
  c.n_qubits = dw + aw;
  c.registers.add("output", 0, dw);
  c.registers.add("address", dw, aw);
  for (const QromEntry& e : table.entries) {
    if (e.data.none()) continue;
    std::vector<ControlBit> controls;
    for (std::uint32_t b = 0; b < aw; ++b) {
      controls.push_back({dw + b, e.address.get(b)});
    }
    std::vector<std::uint32_t> targets;
    std::string letters;
    for (std::uint32_t b = 0; b < dw; ++b) {
      if (e.data.get(b)) {
        targets.push_back(b);
        letters += 'X';
      }
    }
    c.append(Gate::mcp(std::move(controls), std::move(targets),
                       PauliString::from_text(letters), +1));
  }
  return c;
}

struct ControlDiagonalization {
  std::vector<Gate> cnots;  // on control-register coordinates [0, width)
  std::vector<std::size_t> unit_positions;  // address l maps to e_{pos[l]}
  std::vector<BitVec> transformed;
};

/// CNOT conjugation turning linearly independent control patterns into unit
/// vectors (one positive control, the rest negative). A CNOT c->t applied
/// around the circuit adds bit c into bit t of every pattern; Gauss-Jordan
/// over those column operations diagonalizes the pattern matrix.
inline ControlDiagonalization diagonalize_controls(
    const std::vector<BitVec>& addresses, std::size_t width) {
  ControlDiagonalization res;
  const std::size_t k = addresses.size();
  if (k > width) {
    throw independence_error("more addresses than control bits");
  }
  std::vector<BitVec> a = addresses;
  for (const BitVec& v : a) {
    if (v.size() != width) throw dimension_error("address width mismatch");
    if (v.none()) {
      throw independence_error("all-zero address cannot be diagonalized");
    }
  }
  auto col_add = [&](std::size_t src, std::size_t dst) {
    for (BitVec& row : a) {
      if (row.get(src)) row.flip(dst);
    }
    res.cnots.push_back(Gate::cnot(static_cast<std::uint32_t>(src),
                                   static_cast<std::uint32_t>(dst)));
  };
  std::vector<bool> used(width, false);
  for (std::size_t l = 0; l < k; ++l) {
    std::size_t pivot = width;
    for (std::size_t q = 0; q < width; ++q) {
      if (!used[q] && a[l].get(q)) {
        pivot = q;
        break;
      }
    }
    if (pivot == width) {
      throw independence_error("address " + std::to_string(l) +
                               " is linearly dependent");
    }
    used[pivot] = true;
    for (std::size_t q = 0; q < width; ++q) {
      if (q != pivot && a[l].get(q)) col_add(pivot, q);
    }
    res.unit_positions.push_back(pivot);
  }
  res.transformed = std::move(a);
  return res;
}

namespace detail {

struct HammingGates {
  std::vector<Gate> compute;  // self-inverse gates; reverse to uncompute
  std::uint32_t root = 0;     // qubit holding [popcount == 1]
  std::uint32_t workspace_used = 0;
};

/// Tournament tree over (exactly-one, all-zero) flag pairs:
///   E = E1*Z2 xor Z1*E2,  Z = Z1*Z2,
/// with leaf E_i the input bit itself and leaf Z_i its complement. Depth is
/// logarithmic in the register width.
inline HammingGates hamming_compute(std::uint32_t input_start, std::uint32_t a,
                                    std::uint32_t ws_start) {
  HammingGates hg;
  if (a == 1) {
    hg.root = input_start;
    return hg;
  }
  std::uint32_t ws = ws_start;
  struct Node {
    std::uint32_t e, z;
  };
  std::vector<Node> nodes;
  for (std::uint32_t i = 0; i < a; ++i) {
    std::uint32_t zi = ws++;
    hg.compute.push_back(Gate::cnot(input_start + i, zi));
    hg.compute.push_back(Gate::x(zi));
    nodes.push_back({input_start + i, zi});
  }
  while (nodes.size() > 1) {
    std::vector<Node> next;
    bool final_merge = nodes.size() == 2;
    for (std::size_t i = 0; i + 1 < nodes.size(); i += 2) {
      std::uint32_t e = ws++;
      hg.compute.push_back(Gate::toffoli(nodes[i].e, nodes[i + 1].z, e));
      hg.compute.push_back(Gate::toffoli(nodes[i].z, nodes[i + 1].e, e));
      std::uint32_t z = 0;
      if (!final_merge) {
        z = ws++;
        hg.compute.push_back(Gate::toffoli(nodes[i].z, nodes[i + 1].z, z));
      }
      next.push_back({e, z});
    }
    if (nodes.size() % 2 == 1) next.push_back(nodes.back());
    nodes = std::move(next);
  }
  hg.root = nodes[0].e;
  hg.workspace_used = ws - ws_start;
  return hg;
}

}  // namespace detail

/// Guaranteed scheduled-depth bound of build_hamming_flag: the tree has
/// ceil(log2 a) levels of at most three sequential Toffoli layers each, plus
/// complement preparation, the flag copy, and the mirrored uncompute.
inline std::size_t hamming_flag_depth_bound(std::uint32_t a) {
  if (a == 1) return 1;
  std::size_t levels = static_cast<std::size_t>(std::bit_width(a - 1));
  return 6 * levels + 5;
}

/// Computes flag = [popcount(input) == 1] with the workspace returned to
/// |0> by a compute/uncompute pair.
inline Circuit build_hamming_flag(std::uint32_t a) {
  if (a < 1) throw precondition_error("hamming flag needs width >= 1");
  Circuit c;
  detail::HammingGates hg = detail::hamming_compute(0, a, a + 1);
  c.n_qubits = a + 1 + hg.workspace_used;
  c.registers.add("input", 0, a);
  c.registers.add("flag", a, 1);
  if (hg.workspace_used > 0) {
    c.registers.add("workspace", a + 1, hg.workspace_used);
  }
  c.append_all(hg.compute);
  c.append(Gate::cnot(hg.root, a));
  detail::append_reversed(c, hg.compute);
  return c;
}

/// Parallel QROM over independent address sets. Per set: diagonalize the
/// controls, fan the transformed address register out (one copy per entry),
/// compute the hamming_weight == 1 flag and fan it out, then write each data
/// word with a Toffoli-style MCP controlled on one copy bit and one flag
/// copy. Singleton sets and the all-zero address fall back to one serial
/// MCP.
inline Circuit build_qrom_parallel(const QromTable& table,
                                   const QromPartition& partition) {
  const std::uint32_t aw = static_cast<std::uint32_t>(table.address_width);
  const std::uint32_t dw = static_cast<std::uint32_t>(table.data_width);
  if (partition.width != table.address_width) {
    throw dimension_error("partition width does not match table");
  }
  std::size_t k_max = 0;
  for (const auto& s : partition.sets) {
    if (s.size() > 1) k_max = std::max(k_max, s.size());
  }

  Circuit c;
  const std::uint32_t addr_start = dw;
  const std::uint32_t copies_start = dw + aw;
  const std::uint32_t flag = copies_start + static_cast<std::uint32_t>(k_max) * aw;
  const std::uint32_t flag_copies = flag + 1;
  const std::uint32_t ws_start = flag_copies + static_cast<std::uint32_t>(k_max);
  detail::HammingGates probe = detail::hamming_compute(addr_start, aw, ws_start);
  c.n_qubits = k_max == 0 ? dw + aw : ws_start + probe.workspace_used;
  c.registers.add("output", 0, dw);
  c.registers.add("address", dw, aw);
  if (k_max > 0) {
    c.registers.add("copies", copies_start,
                    static_cast<std::uint32_t>(k_max) * aw);
    c.registers.add("flags", flag, 1 + static_cast<std::uint32_t>(k_max));
    if (probe.workspace_used > 0) {
      c.registers.add("workspace", ws_start, probe.workspace_used);
    }
  }

  auto emit_serial_entry = [&](std::size_t idx) {
    const QromEntry& e = table.entries[idx];
    if (e.data.none()) return;
    std::vector<ControlBit> controls;
    for (std::uint32_t b = 0; b < aw; ++b) {
      controls.push_back({addr_start + b, e.address.get(b)});
    }
    std::vector<std::uint32_t> targets;
    std::string letters;
    for (std::uint32_t b = 0; b < dw; ++b) {
      if (e.data.get(b)) {
        targets.push_back(b);
        letters += 'X';
      }
    }
    c.append(Gate::mcp(std::move(controls), std::move(targets),
                       PauliString::from_text(letters), +1));
  };

  if (partition.zero_singleton) emit_serial_entry(*partition.zero_singleton);

  for (const auto& set : partition.sets) {
    if (set.size() == 1) {
      emit_serial_entry(set[0]);
      continue;
    }
    const std::size_t k = set.size();
    std::vector<BitVec> addresses;
    addresses.reserve(k);
    for (std::size_t idx : set) addresses.push_back(table.entries[idx].address);
    ControlDiagonalization diag =
        diagonalize_controls(addresses, table.address_width);

    std::vector<Gate> prologue;
    for (const Gate& g : diag.cnots) {
      prologue.push_back(
          Gate::cnot(addr_start + g.qubits[0], addr_start + g.qubits[1]));
    }
    std::vector<std::uint32_t> holders{addr_start};
    for (std::size_t r = 0; r < k; ++r) {
      holders.push_back(copies_start + static_cast<std::uint32_t>(r) * aw);
    }
    for (Gate& g : detail::fanout_gates(holders, aw)) {
      prologue.push_back(std::move(g));
    }
    detail::HammingGates hg = detail::hamming_compute(addr_start, aw, ws_start);
    for (const Gate& g : hg.compute) prologue.push_back(g);
    prologue.push_back(Gate::cnot(hg.root, flag));
    std::vector<std::uint32_t> flag_holders{flag};
    for (std::size_t r = 0; r < k; ++r) {
      flag_holders.push_back(flag_copies + static_cast<std::uint32_t>(r));
    }
    for (Gate& g : detail::fanout_gates(flag_holders, 1)) {
      prologue.push_back(std::move(g));
    }

    c.append_all(prologue);
    for (std::size_t r = 0; r < k; ++r) {
      const QromEntry& e = table.entries[set[r]];
      if (e.data.none()) continue;
      std::uint32_t copy_bit = copies_start +
                               static_cast<std::uint32_t>(r) * aw +
                               static_cast<std::uint32_t>(diag.unit_positions[r]);
      std::uint32_t flag_bit = flag_copies + static_cast<std::uint32_t>(r);
      std::vector<std::uint32_t> targets;
      std::string letters;
      for (std::uint32_t b = 0; b < dw; ++b) {
        if (e.data.get(b)) {
          targets.push_back(b);
          letters += 'X';
        }
      }
      c.append(Gate::mcp({{copy_bit, true}, {flag_bit, true}},
                         std::move(targets), PauliString::from_text(letters),
                         +1));
    }
    detail::append_reversed(c, prologue);
  }
  return c;
}

}  // namespace parsel
