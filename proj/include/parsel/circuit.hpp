#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "parsel/errors.hpp"
#include "parsel/pauli.hpp"

namespace parsel {

enum class GateKind { H, S, X, Z, CNOT, CZ, TOFFOLI, MCP };

inline const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::TOFFOLI: return "TOFFOLI";
    case GateKind::MCP: return "MCP";
  }
  return "?";
}

struct ControlBit {
  std::uint32_t qubit = 0;
  bool positive = true;
  friend bool operator==(const ControlBit&, const ControlBit&) = default;
};

/// Gate of the IR. MCP applies sign * target_pauli exactly on the subspace
/// where every control qubit matches its polarity and acts as identity
/// elsewhere. target_pauli is stored over target_qubits with sign +1; the
/// overall sign lives in `sign`.
struct Gate {
  GateKind kind = GateKind::H;
  std::vector<std::uint32_t> qubits;  // simple gates; TOFFOLI: c1 c2 target

  std::vector<ControlBit> controls;        // MCP only
  std::vector<std::uint32_t> target_qubits;  // MCP only
  PauliString target_pauli;                // MCP only, no identity letters
  int sign = +1;                           // MCP only

  static Gate h(std::uint32_t q) { return {GateKind::H, {q}}; }
  static Gate s(std::uint32_t q) { return {GateKind::S, {q}}; }
  static Gate x(std::uint32_t q) { return {GateKind::X, {q}}; }
  static Gate z(std::uint32_t q) { return {GateKind::Z, {q}}; }
  static Gate cnot(std::uint32_t c, std::uint32_t t) {
    return {GateKind::CNOT, {c, t}};
  }
  static Gate cz(std::uint32_t a, std::uint32_t b) {
    return {GateKind::CZ, {a, b}};
  }
  static Gate toffoli(std::uint32_t c1, std::uint32_t c2, std::uint32_t t) {
    return {GateKind::TOFFOLI, {c1, c2, t}};
  }

  static Gate mcp(std::vector<ControlBit> controls,
                  std::vector<std::uint32_t> targets, PauliString pauli,
                  int sign) {
    if (pauli.n_qubits != targets.size()) {
      throw dimension_error("mcp target pauli width mismatch");
    }
    if (pauli.sign != +1) {
      throw precondition_error("mcp target pauli must carry sign +1");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (pauli.letter(i) == 'I') {
        throw precondition_error("mcp target pauli has identity letter");
      }
    }
    if (sign != +1 && sign != -1) {
      throw precondition_error("mcp sign must be +-1");
    }
    Gate g;
    g.kind = GateKind::MCP;
    g.controls = std::move(controls);
    g.target_qubits = std::move(targets);
    g.target_pauli = std::move(pauli);
    g.sign = sign;
    return g;
  }

  bool is_t_gate() const {
    return kind == GateKind::TOFFOLI || kind == GateKind::MCP;
  }

  std::vector<std::uint32_t> operands() const {
    std::vector<std::uint32_t> ops = qubits;
    for (const ControlBit& c : controls) ops.push_back(c.qubit);
    for (std::uint32_t t : target_qubits) ops.push_back(t);
    return ops;
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct RegisterRange {
  std::uint32_t start = 0;
  std::uint32_t size = 0;
  friend bool operator==(const RegisterRange&, const RegisterRange&) = default;
};

/// Named, pairwise disjoint qubit ranges in declaration order.
class RegisterMap {
 public:
  void add(const std::string& name, std::uint32_t start, std::uint32_t size) {
    for (const auto& [n, r] : entries_) {
      if (n == name) throw precondition_error("duplicate register " + name);
      bool disjoint = start >= r.start + r.size || r.start >= start + size;
      if (!disjoint) {
        throw precondition_error("register " + name + " overlaps " + n);
      }
    }
    entries_.emplace_back(name, RegisterRange{start, size});
  }

  std::optional<RegisterRange> find(const std::string& name) const {
    for (const auto& [n, r] : entries_) {
      if (n == name) return r;
    }
    return std::nullopt;
  }

  const std::vector<std::pair<std::string, RegisterRange>>& entries() const {
    return entries_;
  }

  friend bool operator==(const RegisterMap&, const RegisterMap&) = default;

 private:
  std::vector<std::pair<std::string, RegisterRange>> entries_;
};

struct Circuit {
  std::uint32_t n_qubits = 0;
  std::vector<Gate> gates;
  RegisterMap registers;

  void append(Gate g) {
    validate_gate(g);
    gates.push_back(std::move(g));
  }

  void append_all(const std::vector<Gate>& gs) {
    for (const Gate& g : gs) append(g);
  }

  void validate_gate(const Gate& g) const {
    auto ops = g.operands();
    for (std::uint32_t q : ops) {
      if (q >= n_qubits) {
        throw precondition_error("gate operand " + std::to_string(q) +
                                 " outside circuit of " +
                                 std::to_string(n_qubits) + " qubits");
      }
    }
    std::sort(ops.begin(), ops.end());
    if (std::adjacent_find(ops.begin(), ops.end()) != ops.end()) {
      throw precondition_error("gate operands must be distinct");
    }
    std::size_t expected = 0;
    switch (g.kind) {
      case GateKind::H:
      case GateKind::S:
      case GateKind::X:
      case GateKind::Z: expected = 1; break;
      case GateKind::CNOT:
      case GateKind::CZ: expected = 2; break;
      case GateKind::TOFFOLI: expected = 3; break;
      case GateKind::MCP:
        if (!g.qubits.empty()) {
          throw precondition_error("mcp uses controls/targets, not qubits");
        }
        if (g.target_qubits.empty()) {
          throw precondition_error("mcp needs at least one target");
        }
        return;
    }
    if (g.qubits.size() != expected) {
      throw precondition_error(std::string("gate ") + gate_kind_name(g.kind) +
                               " expects " + std::to_string(expected) +
                               " operands");
    }
  }
};

/// Inverse circuit: gates reversed, each inverted. S inverts to the diagonal
/// pair Z,S; every other kind is self-inverse.
inline Circuit inverse(const Circuit& c) {
  Circuit inv;
  inv.n_qubits = c.n_qubits;
  inv.registers = c.registers;
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    if (it->kind == GateKind::S) {
      inv.gates.push_back(Gate::z(it->qubits[0]));
      inv.gates.push_back(Gate::s(it->qubits[0]));
    } else {
      inv.gates.push_back(*it);
    }
  }
  return inv;
}

struct LayerSchedule {
  std::vector<std::vector<std::size_t>> layers;  // gate indices per layer
  std::size_t depth = 0;
  std::size_t t_depth = 0;  // layers containing a TOFFOLI or MCP
};

/// Greedy as-soon-as-possible layering: each gate lands in the earliest layer
/// after every earlier gate that shares a qubit with it.
inline LayerSchedule schedule_layers(const Circuit& c) {
  LayerSchedule sched;
  std::vector<std::size_t> next_free(c.n_qubits, 0);
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    auto ops = c.gates[gi].operands();
    std::size_t layer = 0;
    for (std::uint32_t q : ops) layer = std::max(layer, next_free[q]);
    if (layer >= sched.layers.size()) sched.layers.resize(layer + 1);
    sched.layers[layer].push_back(gi);
    for (std::uint32_t q : ops) next_free[q] = layer + 1;
  }
  sched.depth = sched.layers.size();
  for (const auto& layer : sched.layers) {
    for (std::size_t gi : layer) {
      if (c.gates[gi].is_t_gate()) {
        ++sched.t_depth;
        break;
      }
    }
  }
  return sched;
}

namespace detail {

inline std::string mcp_to_text(const Gate& g) {
  std::ostringstream out;
  out << "MCP sign=" << (g.sign < 0 ? "-1" : "+1") << " controls=";
  for (std::size_t i = 0; i < g.controls.size(); ++i) {
    if (i) out << ",";
    out << g.controls[i].qubit << ":" << (g.controls[i].positive ? '+' : '-');
  }
  out << " target=";
  for (std::size_t i = 0; i < g.target_qubits.size(); ++i) {
    out << g.target_pauli.letter(i);
  }
  out << "@";
  for (std::size_t i = 0; i < g.target_qubits.size(); ++i) {
    if (i) out << ",";
    out << g.target_qubits[i];
  }
  return out.str();
}

}  // namespace detail

/// One gate per line; `#` starts a comment. Round-trips byte-stably.
inline std::string emit_text(const Circuit& c) {
  std::ostringstream out;
  out << "# parsel circuit v1\n";
  out << "qubits " << c.n_qubits << "\n";
  for (const auto& [name, range] : c.registers.entries()) {
    out << "register " << name << " " << range.start << " " << range.size
        << "\n";
  }
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::MCP) {
      out << detail::mcp_to_text(g) << "\n";
    } else {
      out << gate_kind_name(g.kind);
      for (std::uint32_t q : g.qubits) out << " " << q;
      out << "\n";
    }
  }
  return out.str();
}

inline Circuit parse_circuit_text(const std::string& text) {
  Circuit c;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_qubits = false;
  auto fail = [&](const std::string& msg) {
    throw parse_error("circuit line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "qubits") {
      if (!(ls >> c.n_qubits)) fail("expected qubit count");
      have_qubits = true;
    } else if (tok == "register") {
      std::string name;
      std::uint32_t start, size;
      if (!(ls >> name >> start >> size)) fail("malformed register line");
      c.registers.add(name, start, size);
    } else if (tok == "MCP") {
      if (!have_qubits) fail("gate before qubits line");
      int sign = 0;
      std::vector<ControlBit> controls;
      std::vector<std::uint32_t> targets;
      std::string letters;
      std::string field;
      while (ls >> field) {
        if (field.rfind("sign=", 0) == 0) {
          std::string v = field.substr(5);
          if (v == "+1") sign = +1;
          else if (v == "-1") sign = -1;
          else fail("bad mcp sign " + v);
        } else if (field.rfind("controls=", 0) == 0) {
          std::string body = field.substr(9);
          std::istringstream cs(body);
          std::string item;
          while (std::getline(cs, item, ',')) {
            auto colon = item.find(':');
            if (colon == std::string::npos || colon + 1 >= item.size()) {
              fail("bad control " + item);
            }
            ControlBit cb;
            cb.qubit = static_cast<std::uint32_t>(
                std::stoul(item.substr(0, colon)));
            char pol = item[colon + 1];
            if (pol != '+' && pol != '-') fail("bad control polarity");
            cb.positive = pol == '+';
            controls.push_back(cb);
          }
        } else if (field.rfind("target=", 0) == 0) {
          std::string body = field.substr(7);
          auto at = body.find('@');
          if (at == std::string::npos) fail("bad mcp target " + body);
          letters = body.substr(0, at);
          std::istringstream qs(body.substr(at + 1));
          std::string item;
          while (std::getline(qs, item, ',')) {
            targets.push_back(static_cast<std::uint32_t>(std::stoul(item)));
          }
        } else {
          fail("unknown mcp field " + field);
        }
      }
      if (sign == 0 || letters.empty() || targets.size() != letters.size()) {
        fail("incomplete mcp gate");
      }
      Gate g = Gate::mcp(std::move(controls), std::move(targets),
                         PauliString::from_text(letters), sign);
      c.append(std::move(g));
    } else {
      if (!have_qubits) fail("gate before qubits line");
      GateKind kind;
      if (tok == "H") kind = GateKind::H;
      else if (tok == "S") kind = GateKind::S;
      else if (tok == "X") kind = GateKind::X;
      else if (tok == "Z") kind = GateKind::Z;
      else if (tok == "CNOT") kind = GateKind::CNOT;
      else if (tok == "CZ") kind = GateKind::CZ;
      else if (tok == "TOFFOLI") kind = GateKind::TOFFOLI;
      else {
        fail("unknown gate " + tok);
        continue;
      }
      Gate g;
      g.kind = kind;
      std::uint32_t q;
      while (ls >> q) g.qubits.push_back(q);
      c.append(std::move(g));
    }
  }
  return c;
}

}  // namespace parsel
