#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "parsel/bits.hpp"
#include "parsel/circuit.hpp"
#include "parsel/errors.hpp"
#include "parsel/pauli.hpp"

namespace parsel {

/// Clifford map in tableau form: rows 0..n-1 hold the images of the X_i
/// generators under conjugation, rows n..2n-1 the images of Z_i. Row signs
/// carry the generator phases; the 2n x 2n (x|z) bit matrix is symplectic.
class CliffordTableau {
 public:
  explicit CliffordTableau(std::size_t n) : n_(n) {
    rows_.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      PauliString p = PauliString::identity(n);
      p.x.set(i, true);
      rows_.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < n; ++i) {
      PauliString p = PauliString::identity(n);
      p.z.set(i, true);
      rows_.push_back(std::move(p));
    }
  }

  static CliffordTableau identity(std::size_t n) { return CliffordTableau(n); }

  std::size_t n_qubits() const { return n_; }

  const PauliString& x_image(std::size_t i) const { return rows_[i]; }
  const PauliString& z_image(std::size_t i) const { return rows_[n_ + i]; }
  const PauliString& row(std::size_t r) const { return rows_[r]; }

  // Gate composition at the end of the circuit: every row is conjugated by
  // the gate. Sign rules follow the generator maps (H: Y -> -Y; S: Y -> -X;
  // CNOT and CZ from the corresponding two-qubit identities).
  void apply_h(std::size_t q) {
    for (PauliString& r : rows_) {
      bool xq = r.x.get(q), zq = r.z.get(q);
      if (xq && zq) r.sign = -r.sign;
      r.x.set(q, zq);
      r.z.set(q, xq);
    }
  }

  void apply_s(std::size_t q) {
    for (PauliString& r : rows_) {
      bool xq = r.x.get(q), zq = r.z.get(q);
      if (xq && zq) r.sign = -r.sign;
      r.z.set(q, zq ^ xq);
    }
  }

  void apply_x(std::size_t q) {
    for (PauliString& r : rows_) {
      if (r.z.get(q)) r.sign = -r.sign;
    }
  }

  void apply_z(std::size_t q) {
    for (PauliString& r : rows_) {
      if (r.x.get(q)) r.sign = -r.sign;
    }
  }

  void apply_cnot(std::size_t c, std::size_t t) {
    for (PauliString& r : rows_) {
      bool xc = r.x.get(c), zc = r.z.get(c);
      bool xt = r.x.get(t), zt = r.z.get(t);
      if (xc && zt && (xt == zc)) r.sign = -r.sign;
      r.x.set(t, xt ^ xc);
      r.z.set(c, zc ^ zt);
    }
  }

  void apply_cz(std::size_t a, std::size_t b) {
    for (PauliString& r : rows_) {
      bool xa = r.x.get(a), za = r.z.get(a);
      bool xb = r.x.get(b), zb = r.z.get(b);
      if (xa && xb && (za ^ zb)) r.sign = -r.sign;
      r.z.set(a, za ^ xb);
      r.z.set(b, zb ^ xa);
    }
  }

  void apply_gate(const Gate& g) {
    switch (g.kind) {
      case GateKind::H: apply_h(g.qubits[0]); return;
      case GateKind::S: apply_s(g.qubits[0]); return;
      case GateKind::X: apply_x(g.qubits[0]); return;
      case GateKind::Z: apply_z(g.qubits[0]); return;
      case GateKind::CNOT: apply_cnot(g.qubits[0], g.qubits[1]); return;
      case GateKind::CZ: apply_cz(g.qubits[0], g.qubits[1]); return;
      default:
        throw unsupported_gate_error(std::string("non-Clifford gate ") +
                                     gate_kind_name(g.kind) +
                                     " in tableau composition");
    }
  }

  /// U p U^dagger with exact sign tracking. The input is decomposed over the
  /// X/Z generators and the generator images are multiplied with i-phase
  /// bookkeeping; a valid symplectic tableau always yields a real sign.
  PauliString conjugate(const PauliString& p) const {
    if (p.n_qubits != n_) {
      throw dimension_error("conjugate: qubit count mismatch");
    }
    PauliString acc = PauliString::identity(n_);
    int exp = p.sign < 0 ? 2 : 0;
    // p = sign * i^(#Y) * prod X_q^{x_q} * prod Z_q^{z_q}
    for (std::size_t k = 0; k < p.x.words().size(); ++k) {
      exp += 2 * (std::popcount(p.x.words()[k] & p.z.words()[k]) % 2);
    }
    exp %= 4;
    auto mul_in = [&](const PauliString& row) {
      exp = (exp + (row.sign < 0 ? 2 : 0) + pauli_mul_phase_exp(acc, row)) % 4;
      acc.x.xor_with(row.x);
      acc.z.xor_with(row.z);
    };
    for (std::size_t q = 0; q < n_; ++q) {
      if (p.x.get(q)) mul_in(rows_[q]);
    }
    for (std::size_t q = 0; q < n_; ++q) {
      if (p.z.get(q)) mul_in(rows_[n_ + q]);
    }
    if (exp % 2 != 0) {
      throw precondition_error(
          "conjugate: tableau is not symplectic (imaginary phase)");
    }
    acc.sign = exp == 2 ? -1 : +1;
    return acc;
  }

  /// M Lambda M^T = Lambda: generator images keep the canonical commutation
  /// relations.
  bool is_symplectic() const {
    for (std::size_t i = 0; i < 2 * n_; ++i) {
      for (std::size_t j = i; j < 2 * n_; ++j) {
        int expected = (j == i + n_ && i < n_) ? 1 : 0;
        if (symplectic_product(rows_[i], rows_[j]) != expected) return false;
      }
    }
    return true;
  }

  bool bits_equal(const CliffordTableau& o) const {
    for (std::size_t i = 0; i < 2 * n_; ++i) {
      if (!rows_[i].same_pattern(o.rows_[i])) return false;
    }
    return true;
  }

  BitVec x_column(std::size_t q) const {
    BitVec c(2 * n_);
    for (std::size_t i = 0; i < 2 * n_; ++i) c.set(i, rows_[i].x.get(q));
    return c;
  }

  BitVec z_column(std::size_t q) const {
    BitVec c(2 * n_);
    for (std::size_t i = 0; i < 2 * n_; ++i) c.set(i, rows_[i].z.get(q));
    return c;
  }

  BitVec phase_bits() const {
    BitVec v(2 * n_);
    for (std::size_t i = 0; i < 2 * n_; ++i) v.set(i, rows_[i].sign < 0);
    return v;
  }

  friend bool operator==(const CliffordTableau&, const CliffordTableau&) =
      default;

 private:
  std::size_t n_;
  std::vector<PauliString> rows_;
};

inline CliffordTableau tableau_from_circuit(const Circuit& c) {
  CliffordTableau t(c.n_qubits);
  for (const Gate& g : c.gates) t.apply_gate(g);
  return t;
}

inline PauliString conjugate_pauli(const CliffordTableau& t,
                                   const PauliString& p) {
  return t.conjugate(p);
}

struct DiagonalizationResult {
  Circuit circuit;            // H/S/CNOT/CZ only, acts on the system register
  std::vector<int> signs;     // conjugating element j yields signs[j] * Z_j
};

/// Synthesizes a Clifford U with U P_j U^dagger = signs[j] * Z_j for a
/// commuting, GF(2)-independent set of k <= n Pauli strings.
///
/// Elements are fixed one at a time; once element j occupies Z_j, later gates
/// avoid H on qubits < j and CNOT targets on qubits < j, which leaves settled
/// rows untouched.
inline DiagonalizationResult synth_diagonalizing_clifford(
    const std::vector<PauliString>& set, std::size_t n) {
  const std::size_t k = set.size();
  if (k > n) {
    throw precondition_error("diagonalizing set larger than register");
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (set[j].n_qubits != n) {
      throw dimension_error("set element qubit count mismatch");
    }
    if (set[j].is_identity_pattern()) {
      throw precondition_error("identity pattern in diagonalizing set (index " +
                               std::to_string(j) + ")");
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (symplectic_product(set[i], set[j]) != 0) {
        throw precondition_error("set elements " + std::to_string(i) + " and " +
                                 std::to_string(j) + " anticommute");
      }
    }
  }
  {
    Gf2Basis basis(2 * n);
    for (std::size_t j = 0; j < k; ++j) {
      if (!basis.try_extend(set[j].symplectic_row())) {
        throw independence_error("set element " + std::to_string(j) +
                                 " is linearly dependent");
      }
    }
  }

  DiagonalizationResult res;
  res.circuit.n_qubits = static_cast<std::uint32_t>(n);
  res.circuit.registers.add("system", 0, static_cast<std::uint32_t>(n));

  struct Row {
    BitVec x, z;
  };
  std::vector<Row> work;
  work.reserve(k);
  for (const PauliString& p : set) work.push_back({p.x, p.z});

  auto emit_cnot = [&](std::size_t c, std::size_t t) {
    res.circuit.append(Gate::cnot(static_cast<std::uint32_t>(c),
                                  static_cast<std::uint32_t>(t)));
    for (Row& r : work) {
      r.x.set(t, r.x.get(t) ^ r.x.get(c));
      r.z.set(c, r.z.get(c) ^ r.z.get(t));
    }
  };
  auto emit_cz = [&](std::size_t a, std::size_t b) {
    res.circuit.append(
        Gate::cz(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)));
    for (Row& r : work) {
      bool xa = r.x.get(a), xb = r.x.get(b);
      r.z.set(a, r.z.get(a) ^ xb);
      r.z.set(b, r.z.get(b) ^ xa);
    }
  };
  auto emit_s = [&](std::size_t q) {
    res.circuit.append(Gate::s(static_cast<std::uint32_t>(q)));
    for (Row& r : work) r.z.set(q, r.z.get(q) ^ r.x.get(q));
  };
  auto emit_h = [&](std::size_t q) {
    res.circuit.append(Gate::h(static_cast<std::uint32_t>(q)));
    for (Row& r : work) {
      bool xq = r.x.get(q), zq = r.z.get(q);
      r.x.set(q, zq);
      r.z.set(q, xq);
    }
  };

  for (std::size_t j = 0; j < k; ++j) {
    Row& row = work[j];
    std::size_t q0;
    if (row.x.any()) {
      // Commutation with the settled Z_i rows forces x-support onto free
      // qubits already.
      q0 = *row.x.first_set();
      for (std::size_t q = q0 + 1; q < n; ++q) {
        if (q != q0 && row.x.get(q)) emit_cnot(q0, q);
      }
      for (std::size_t q = 0; q < n; ++q) {
        if (q != q0 && row.z.get(q)) emit_cz(q0, q);
      }
      if (row.z.get(q0)) emit_s(q0);
      emit_h(q0);
    } else {
      // Z-only row; independence guarantees support on a free qubit.
      q0 = n;
      for (std::size_t q = j; q < n; ++q) {
        if (row.z.get(q)) {
          q0 = q;
          break;
        }
      }
      if (q0 == n) {
        throw independence_error("set element " + std::to_string(j) +
                                 " is linearly dependent");
      }
      for (std::size_t q = 0; q < n; ++q) {
        if (q != q0 && row.z.get(q)) emit_cnot(q, q0);
      }
    }
    if (q0 != j) {
      emit_cnot(j, q0);
      emit_cnot(q0, j);
      emit_cnot(j, q0);
    }
  }

  CliffordTableau t = tableau_from_circuit(res.circuit);
  res.signs.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    PauliString image = t.conjugate(set[j]);
    PauliString want = PauliString::identity(n);
    want.z.set(j, true);
    if (!image.same_pattern(want)) {
      throw precondition_error("internal: diagonalization postcondition");
    }
    res.signs.push_back(image.sign);
  }
  return res;
}

enum class StageKind { CX, CZ, P, H };

inline const char* stage_kind_name(StageKind k) {
  switch (k) {
    case StageKind::CX: return "CX";
    case StageKind::CZ: return "CZ";
    case StageKind::P: return "P";
    case StageKind::H: return "H";
  }
  return "?";
}

/// Typed gate layers in the template order CX-CZ-P-H-CZ-P-H (empty stages
/// omitted). CX stages hold CNOTs, CZ stages CZs, H stages Hadamards, and P
/// stages the single-qubit diagonal gates S and Z.
struct StagedCircuit {
  std::size_t n_qubits = 0;
  std::vector<std::pair<StageKind, std::vector<Gate>>> stages;

  std::size_t two_qubit_stage_count() const {
    std::size_t c = 0;
    for (const auto& [kind, gates] : stages) {
      if (kind == StageKind::CX || kind == StageKind::CZ) ++c;
    }
    return c;
  }

  Circuit flatten() const {
    Circuit c;
    c.n_qubits = static_cast<std::uint32_t>(n_qubits);
    c.registers.add("system", 0, static_cast<std::uint32_t>(n_qubits));
    for (const auto& [kind, gates] : stages) c.append_all(gates);
    return c;
  }
};

namespace detail {

/// CNOT list whose tableau x-block equals the invertible matrix r. The copy
/// is eliminated to the identity with column additions (col t += col c is a
/// CNOT c->t composed on the right); the recorded ops reversed give the gate
/// sequence.
inline std::vector<Gate> cnot_stage_for(const BitMatrix& r) {
  std::size_t n = r.rows();
  BitMatrix m = r;
  std::vector<std::pair<std::size_t, std::size_t>> ops;  // (c, t)
  auto col_add = [&](std::size_t c, std::size_t t) {
    for (std::size_t i = 0; i < n; ++i) {
      if (m.get(i, c)) m.set(i, t, !m.get(i, t));
    }
    ops.emplace_back(c, t);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!m.get(i, i)) {
      std::size_t c = i + 1;
      while (c < n && !m.get(i, c)) ++c;
      if (c == n) throw independence_error("cnot stage: singular matrix");
      col_add(c, i);
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (c != i && m.get(i, c)) col_add(i, c);
    }
  }
  std::vector<Gate> gates;
  gates.reserve(ops.size());
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    gates.push_back(Gate::cnot(static_cast<std::uint32_t>(it->first),
                               static_cast<std::uint32_t>(it->second)));
  }
  return gates;
}

inline void phase_stage_gates(const BitMatrix& psi, std::vector<Gate>* cz,
                              std::vector<Gate>* p) {
  std::size_t n = psi.rows();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (psi.get(a, b) != psi.get(b, a)) {
        throw precondition_error("internal: phase matrix not symmetric");
      }
      if (psi.get(a, b)) {
        cz->push_back(Gate::cz(static_cast<std::uint32_t>(a),
                               static_cast<std::uint32_t>(b)));
      }
    }
    if (psi.get(a, a)) p->push_back(Gate::s(static_cast<std::uint32_t>(a)));
  }
}

inline CliffordTableau replay_stages(
    const std::vector<std::pair<StageKind, std::vector<Gate>>>& stages,
    std::size_t n) {
  CliffordTableau t(n);
  for (const auto& [kind, gates] : stages) {
    for (const Gate& g : gates) t.apply_gate(g);
  }
  return t;
}

}  // namespace detail

/// Compiles a tableau into the staged form CX-CZ-P-H-CZ-P-H with at most
/// three two-qubit stages, reproducing the tableau exactly (bits and phases).
///
/// When the Z-images are free of X components the map is Hadamard-free and a
/// CX-CZ-P prefix suffices (phase corrections may add an H-P-H tail acting as
/// a Pauli X layer). Otherwise a Hadamard layer on the column-deficient
/// qubits makes the Z-image X-block invertible, which pins every stage:
///   M = CX(R) . Phase(Psi1) . H(all) . Phase(Psi2) . H(h2)
/// with R = C'^{-T}, Psi1 = C'^T A', Psi2 = C'^{-1} D'. Leftover phase bits
/// are matched by Z gates inserted into the two P stages; the insertion
/// patterns form an invertible linear system, so the fix always exists.
inline StagedCircuit normal_form_stages(const CliffordTableau& t) {
  const std::size_t n = t.n_qubits();
  StagedCircuit out;
  out.n_qubits = n;

  // Blocks of the 2n x 2n matrix.
  BitMatrix a_blk(n, n), b_blk(n, n), c_blk(n, n), d_blk(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t q = 0; q < n; ++q) {
      a_blk.set(i, q, t.x_image(i).x.get(q));
      b_blk.set(i, q, t.x_image(i).z.get(q));
      c_blk.set(i, q, t.z_image(i).x.get(q));
      d_blk.set(i, q, t.z_image(i).z.get(q));
    }
  }
  bool hadamard_free = true;
  for (std::size_t i = 0; i < n && hadamard_free; ++i) {
    if (c_blk.row(i).any()) hadamard_free = false;
  }

  std::vector<Gate> cx, cz1, p1, h1, cz2, p2, h2, p3, h3a, h3b;

  if (hadamard_free) {
    BitMatrix a_inv = gf2_inverse(a_blk);
    BitMatrix psi1 = a_inv * b_blk;
    cx = detail::cnot_stage_for(a_blk);
    detail::phase_stage_gates(psi1, &cz1, &p1);

    std::vector<std::pair<StageKind, std::vector<Gate>>> stages;
    if (!cx.empty()) stages.emplace_back(StageKind::CX, cx);
    if (!cz1.empty()) stages.emplace_back(StageKind::CZ, cz1);
    if (!p1.empty()) stages.emplace_back(StageKind::P, p1);
    CliffordTableau built = detail::replay_stages(stages, n);
    if (!built.bits_equal(t)) {
      throw precondition_error("internal: staged matrix mismatch");
    }
    BitVec residual = built.phase_bits();
    residual.xor_with(t.phase_bits());
    if (residual.any()) {
      // Columns: Z insertions at the tail of P1 flip rows with x_q = 1;
      // a trailing H-Z-H sandwich (conjugation by X_q) flips rows with
      // z_q = 1. Together the final matrix columns, hence invertible.
      BitMatrix sys(2 * n, 2 * n);
      for (std::size_t q = 0; q < n; ++q) {
        BitVec xc = built.x_column(q), zc = built.z_column(q);
        for (std::size_t i = 0; i < 2 * n; ++i) {
          sys.set(i, q, xc.get(i));
          sys.set(i, n + q, zc.get(i));
        }
      }
      auto y = gf2_solve(sys, residual);
      if (!y) throw precondition_error("internal: phase fix unsolvable");
      for (std::size_t q = 0; q < n; ++q) {
        if (y->get(q)) p1.push_back(Gate::z(static_cast<std::uint32_t>(q)));
      }
      for (std::size_t q = 0; q < n; ++q) {
        if (y->get(n + q)) {
          h3a.push_back(Gate::h(static_cast<std::uint32_t>(q)));
          p3.push_back(Gate::z(static_cast<std::uint32_t>(q)));
          h3b.push_back(Gate::h(static_cast<std::uint32_t>(q)));
        }
      }
    }
    if (!cx.empty()) out.stages.emplace_back(StageKind::CX, cx);
    if (!cz1.empty()) out.stages.emplace_back(StageKind::CZ, cz1);
    if (!p1.empty()) out.stages.emplace_back(StageKind::P, p1);
    if (!h3a.empty()) out.stages.emplace_back(StageKind::H, h3a);
    if (!p3.empty()) out.stages.emplace_back(StageKind::P, p3);
    if (!h3b.empty()) out.stages.emplace_back(StageKind::H, h3b);
  } else {
    // Pick h2 = non-pivot columns of the C block; swapping those x/z column
    // pairs makes C' invertible (the zero-C rows span the kernel of C, and
    // that kernel projects bijectively onto the free columns).
    std::vector<std::size_t> pivots;
    {
      BitMatrix cd(n, 2 * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t q = 0; q < n; ++q) {
          cd.set(i, q, c_blk.get(i, q));
          cd.set(i, n + q, d_blk.get(i, q));
        }
      }
      std::size_t rank = 0;
      for (std::size_t col = 0; col < n && rank < n; ++col) {
        std::size_t pivot = rank;
        while (pivot < n && !cd.get(pivot, col)) ++pivot;
        if (pivot == n) continue;
        cd.swap_rows(rank, pivot);
        for (std::size_t i = 0; i < n; ++i) {
          if (i != rank && cd.get(i, col)) cd.add_row(rank, i);
        }
        pivots.push_back(col);
        ++rank;
      }
    }
    std::vector<bool> in_h2(n, true);
    for (std::size_t p : pivots) in_h2[p] = false;

    BitMatrix ap = a_blk, bp = b_blk, cp = c_blk, dp = d_blk;
    for (std::size_t q = 0; q < n; ++q) {
      if (!in_h2[q]) continue;
      for (std::size_t i = 0; i < n; ++i) {
        bool av = ap.get(i, q), bv = bp.get(i, q);
        ap.set(i, q, bv);
        bp.set(i, q, av);
        bool cv = cp.get(i, q), dv = dp.get(i, q);
        cp.set(i, q, dv);
        dp.set(i, q, cv);
      }
    }

    BitMatrix c_inv = gf2_inverse(cp);
    BitMatrix r = c_inv.transposed();
    BitMatrix psi1 = cp.transposed() * ap;
    BitMatrix psi2 = c_inv * dp;

    cx = detail::cnot_stage_for(r);
    detail::phase_stage_gates(psi1, &cz1, &p1);
    for (std::size_t q = 0; q < n; ++q) {
      h1.push_back(Gate::h(static_cast<std::uint32_t>(q)));
    }
    detail::phase_stage_gates(psi2, &cz2, &p2);
    for (std::size_t q = 0; q < n; ++q) {
      if (in_h2[q]) h2.push_back(Gate::h(static_cast<std::uint32_t>(q)));
    }

    // Insertion-point x-columns for the phase fix.
    CliffordTableau walk(n);
    for (const Gate& g : cx) walk.apply_gate(g);
    for (const Gate& g : cz1) walk.apply_gate(g);
    for (const Gate& g : p1) walk.apply_gate(g);
    std::vector<BitVec> v1;
    for (std::size_t q = 0; q < n; ++q) v1.push_back(walk.x_column(q));
    for (const Gate& g : h1) walk.apply_gate(g);
    for (const Gate& g : cz2) walk.apply_gate(g);
    for (const Gate& g : p2) walk.apply_gate(g);
    std::vector<BitVec> v2;
    for (std::size_t q = 0; q < n; ++q) v2.push_back(walk.x_column(q));
    for (const Gate& g : h2) walk.apply_gate(g);
    if (!walk.bits_equal(t)) {
      throw precondition_error("internal: staged matrix mismatch");
    }
    BitVec residual = walk.phase_bits();
    residual.xor_with(t.phase_bits());
    if (residual.any()) {
      BitMatrix sys(2 * n, 2 * n);
      for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t i = 0; i < 2 * n; ++i) {
          sys.set(i, q, v1[q].get(i));
          sys.set(i, n + q, v2[q].get(i));
        }
      }
      auto y = gf2_solve(sys, residual);
      if (!y) throw precondition_error("internal: phase fix unsolvable");
      for (std::size_t q = 0; q < n; ++q) {
        if (y->get(q)) p1.push_back(Gate::z(static_cast<std::uint32_t>(q)));
        if (y->get(n + q)) p2.push_back(Gate::z(static_cast<std::uint32_t>(q)));
      }
    }
    if (!cx.empty()) out.stages.emplace_back(StageKind::CX, cx);
    if (!cz1.empty()) out.stages.emplace_back(StageKind::CZ, cz1);
    if (!p1.empty()) out.stages.emplace_back(StageKind::P, p1);
    out.stages.emplace_back(StageKind::H, h1);
    if (!cz2.empty()) out.stages.emplace_back(StageKind::CZ, cz2);
    if (!p2.empty()) out.stages.emplace_back(StageKind::P, p2);
    if (!h2.empty()) out.stages.emplace_back(StageKind::H, h2);
  }

  CliffordTableau check = detail::replay_stages(out.stages, n);
  if (!(check == t)) {
    throw precondition_error("internal: staged replay mismatch");
  }
  return out;
}

struct ConstantDepthCost {
  std::size_t ancilla_qubits = 0;
  std::size_t depth_units = 0;
  std::size_t resource_state_count = 0;
};

/// Teleportation cost model for executing a staged Clifford: 3n ancilla hold
/// the CSS resource states, each two-qubit stage consumes one resource-state
/// pair and d_stage depth units (entangling round, measurement, feedforward,
/// handoff), single-qubit stages cost one unit each.
inline ConstantDepthCost constant_depth_cost(const StagedCircuit& staged,
                                             std::size_t n,
                                             std::size_t d_stage = 4) {
  ConstantDepthCost cost;
  cost.ancilla_qubits = 3 * n;
  std::size_t twoq = 0, oneq = 0;
  for (const auto& [kind, gates] : staged.stages) {
    if (gates.empty()) continue;
    if (kind == StageKind::CX || kind == StageKind::CZ) {
      ++twoq;
    } else {
      ++oneq;
    }
  }
  cost.resource_state_count = twoq;
  cost.depth_units = d_stage * twoq + oneq;
  return cost;
}

}  // namespace parsel
