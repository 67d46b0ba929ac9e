#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "parsel/circuit.hpp"
#include "parsel/errors.hpp"

namespace parsel {

inline constexpr std::uint32_t kDefaultQubitCap = 22;

/// Dense statevector; qubit 0 is the least-significant index bit.
struct StateVector {
  std::uint32_t n_qubits = 0;
  std::vector<std::complex<double>> amps;

  static StateVector zero_state(std::uint32_t n) {
    StateVector s;
    s.n_qubits = n;
    s.amps.assign(std::size_t{1} << n, {0.0, 0.0});
    s.amps[0] = 1.0;
    return s;
  }

  static StateVector basis_state(std::uint32_t n, std::uint64_t index) {
    StateVector s;
    s.n_qubits = n;
    s.amps.assign(std::size_t{1} << n, {0.0, 0.0});
    s.amps[index] = 1.0;
    return s;
  }

  double norm() const {
    double n2 = 0;
    for (const auto& a : amps) n2 += std::norm(a);
    return std::sqrt(n2);
  }
};

namespace detail {

inline std::complex<double> i_power(int exp) {
  switch (((exp % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

struct McpMasks {
  std::uint64_t control_mask = 0;
  std::uint64_t control_value = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  int y_count = 0;
  int sign = +1;
};

inline McpMasks mcp_masks(const Gate& g) {
  McpMasks m;
  m.sign = g.sign;
  for (const ControlBit& c : g.controls) {
    m.control_mask |= std::uint64_t{1} << c.qubit;
    if (c.positive) m.control_value |= std::uint64_t{1} << c.qubit;
  }
  for (std::size_t i = 0; i < g.target_qubits.size(); ++i) {
    std::uint64_t bit = std::uint64_t{1} << g.target_qubits[i];
    char letter = g.target_pauli.letter(i);
    if (letter == 'X' || letter == 'Y') m.x_mask |= bit;
    if (letter == 'Z' || letter == 'Y') m.z_mask |= bit;
    if (letter == 'Y') ++m.y_count;
  }
  return m;
}

}  // namespace detail

inline void apply_gate(StateVector& s, const Gate& g) {
  const std::uint64_t dim = std::uint64_t{1} << s.n_qubits;
  auto bit = [](std::uint32_t q) { return std::uint64_t{1} << q; };
  switch (g.kind) {
    case GateKind::H: {
      const std::uint64_t m = bit(g.qubits[0]);
      const double inv = 1.0 / std::sqrt(2.0);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & m) continue;
        auto a = s.amps[i], b = s.amps[i | m];
        s.amps[i] = (a + b) * inv;
        s.amps[i | m] = (a - b) * inv;
      }
      break;
    }
    case GateKind::S: {
      const std::uint64_t m = bit(g.qubits[0]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & m) s.amps[i] *= std::complex<double>{0, 1};
      }
      break;
    }
    case GateKind::X: {
      const std::uint64_t m = bit(g.qubits[0]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (!(i & m)) std::swap(s.amps[i], s.amps[i | m]);
      }
      break;
    }
    case GateKind::Z: {
      const std::uint64_t m = bit(g.qubits[0]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & m) s.amps[i] = -s.amps[i];
      }
      break;
    }
    case GateKind::CNOT: {
      const std::uint64_t c = bit(g.qubits[0]), t = bit(g.qubits[1]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & c) && !(i & t)) std::swap(s.amps[i], s.amps[i | t]);
      }
      break;
    }
    case GateKind::CZ: {
      const std::uint64_t a = bit(g.qubits[0]), b = bit(g.qubits[1]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & a) && (i & b)) s.amps[i] = -s.amps[i];
      }
      break;
    }
    case GateKind::TOFFOLI: {
      const std::uint64_t c1 = bit(g.qubits[0]), c2 = bit(g.qubits[1]),
                          t = bit(g.qubits[2]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & c1) && (i & c2) && !(i & t)) {
          std::swap(s.amps[i], s.amps[i | t]);
        }
      }
      break;
    }
    case GateKind::MCP: {
      const auto m = detail::mcp_masks(g);
      // <b^x| P |b> = sign * i^{#Y} * (-1)^{popcount(b & z)}
      auto coeff = [&](std::uint64_t b) {
        std::complex<double> c =
            detail::i_power(m.y_count) * static_cast<double>(m.sign);
        if (std::popcount(b & m.z_mask) & 1) c = -c;
        return c;
      };
      if (m.x_mask == 0) {
        for (std::uint64_t i = 0; i < dim; ++i) {
          if ((i & m.control_mask) == m.control_value) s.amps[i] *= coeff(i);
        }
      } else {
        const std::uint64_t pivot = m.x_mask & (~m.x_mask + 1);
        for (std::uint64_t i = 0; i < dim; ++i) {
          if (i & pivot) continue;
          if ((i & m.control_mask) != m.control_value) continue;
          const std::uint64_t j = i ^ m.x_mask;
          auto a = s.amps[i], b = s.amps[j];
          s.amps[j] = coeff(i) * a;
          s.amps[i] = coeff(j) * b;
        }
      }
      break;
    }
  }
}

inline StateVector apply_circuit(StateVector state, const Circuit& c,
                                 std::uint32_t qubit_cap = kDefaultQubitCap) {
  if (c.n_qubits != state.n_qubits) {
    throw dimension_error("apply_circuit: state/circuit width mismatch");
  }
  if (c.n_qubits > qubit_cap) {
    throw capacity_error("apply_circuit: " + std::to_string(c.n_qubits) +
                         " qubits exceeds cap " + std::to_string(qubit_cap));
  }
  for (const Gate& g : c.gates) apply_gate(state, g);
  return state;
}

/// Columns of the circuit unitary, for exhaustive small-scale checks.
inline std::vector<std::vector<std::complex<double>>> circuit_unitary(
    const Circuit& c, std::uint32_t qubit_cap = 12) {
  if (c.n_qubits > qubit_cap) {
    throw capacity_error("circuit_unitary: too many qubits");
  }
  const std::uint64_t dim = std::uint64_t{1} << c.n_qubits;
  std::vector<std::vector<std::complex<double>>> cols;
  cols.reserve(dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    cols.push_back(apply_circuit(StateVector::basis_state(c.n_qubits, b), c,
                                 qubit_cap)
                       .amps);
  }
  return cols;
}

struct EquivalenceVerdict {
  bool equivalent = false;
  double max_deviation = 0.0;
  std::size_t trials = 0;
  bool ancilla_restored = false;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
};

/// Checks that two circuits agree on a shared low-qubit register prefix.
/// Pseudo-random states (fixed seed) are loaded on the shared qubits with
/// every auxiliary qubit in |0>; after each circuit the auxiliaries must
/// return to |0> and the shared-register outputs must overlap.
inline EquivalenceVerdict circuits_equivalent(
    const Circuit& c1, const Circuit& c2, std::uint32_t shared_qubits,
    std::size_t trials = 20, double tolerance = 1e-9,
    std::uint64_t seed = 0x5eed5eedULL,
    std::uint32_t qubit_cap = kDefaultQubitCap) {
  if (shared_qubits > c1.n_qubits || shared_qubits > c2.n_qubits) {
    throw dimension_error("shared register larger than a circuit");
  }
  if (c1.n_qubits > qubit_cap || c2.n_qubits > qubit_cap) {
    throw capacity_error("circuits_equivalent: qubit cap exceeded");
  }
  EquivalenceVerdict v;
  v.trials = trials;
  v.seed = seed;
  v.tolerance = tolerance;
  v.ancilla_restored = true;

  std::mt19937_64 rng(seed);
  auto uniform = [&]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  auto gaussian = [&]() {
    double u = uniform(), w = uniform();
    if (u < 1e-300) u = 1e-300;
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * w);
  };

  const std::uint64_t shared_dim = std::uint64_t{1} << shared_qubits;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<std::complex<double>> psi(shared_dim);
    double n2 = 0;
    for (auto& a : psi) {
      a = {gaussian(), gaussian()};
      n2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : psi) a *= inv;

    auto run = [&](const Circuit& c) {
      StateVector s = StateVector::zero_state(c.n_qubits);
      s.amps.assign(s.amps.size(), {0.0, 0.0});
      for (std::uint64_t b = 0; b < shared_dim; ++b) s.amps[b] = psi[b];
      return apply_circuit(std::move(s), c, qubit_cap);
    };
    StateVector out1 = run(c1);
    StateVector out2 = run(c2);

    double kept1 = 0, kept2 = 0;
    std::complex<double> overlap = 0;
    for (std::uint64_t b = 0; b < shared_dim; ++b) {
      kept1 += std::norm(out1.amps[b]);
      kept2 += std::norm(out2.amps[b]);
      overlap += std::conj(out1.amps[b]) * out2.amps[b];
    }
    double leak1 = 1.0 - kept1, leak2 = 1.0 - kept2;
    double dev = std::max({1.0 - std::abs(overlap), leak1, leak2});
    v.max_deviation = std::max(v.max_deviation, dev);
    if (leak1 > tolerance || leak2 > tolerance) v.ancilla_restored = false;
  }
  v.equivalent = v.max_deviation <= tolerance && v.ancilla_restored;
  return v;
}

/// True when every gate permutes computational basis states (X, CNOT,
/// TOFFOLI, or an MCP applying a plus-signed X string).
inline bool is_classical_circuit(const Circuit& c) {
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::X:
      case GateKind::CNOT:
      case GateKind::TOFFOLI:
        break;
      case GateKind::MCP:
        if (g.sign != +1 || !g.target_pauli.z.none()) return false;
        break;
      default:
        return false;
    }
  }
  return true;
}

/// Basis-state evaluation of a classical (X-type) circuit, bit i of the
/// input word on qubit i. Linear in gate count, so truth tables of wide
/// circuits stay cheap.
inline std::uint64_t apply_classical(const Circuit& c, std::uint64_t input) {
  if (c.n_qubits > 64) {
    throw capacity_error("apply_classical: more than 64 qubits");
  }
  std::uint64_t w = input;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::X:
        w ^= std::uint64_t{1} << g.qubits[0];
        break;
      case GateKind::CNOT:
        if (w & (std::uint64_t{1} << g.qubits[0])) {
          w ^= std::uint64_t{1} << g.qubits[1];
        }
        break;
      case GateKind::TOFFOLI:
        if ((w & (std::uint64_t{1} << g.qubits[0])) &&
            (w & (std::uint64_t{1} << g.qubits[1]))) {
          w ^= std::uint64_t{1} << g.qubits[2];
        }
        break;
      case GateKind::MCP: {
        const auto m = detail::mcp_masks(g);
        if (m.z_mask != 0 || m.sign != +1) {
          throw unsupported_gate_error("apply_classical: non-classical MCP");
        }
        if ((w & m.control_mask) == m.control_value) w ^= m.x_mask;
        break;
      }
      default:
        throw unsupported_gate_error(
            std::string("apply_classical: non-classical gate ") +
            gate_kind_name(g.kind));
    }
  }
  return w;
}

}  // namespace parsel
