#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parsel/bits.hpp"
#include "parsel/errors.hpp"

namespace parsel {

/// Tensor product of single-qubit Paulis in symplectic (x|z) form with a
/// real sign. Per-qubit letters: (x,z) = (0,0) I, (1,0) X, (0,1) Z, (1,1) Y,
/// where the letter Y is the usual Hermitian Pauli (Y = iXZ).
struct PauliString {
  std::size_t n_qubits = 0;
  BitVec x;
  BitVec z;
  int sign = +1;

  PauliString() = default;
  PauliString(std::size_t n, BitVec x_bits, BitVec z_bits, int s = +1)
      : n_qubits(n), x(std::move(x_bits)), z(std::move(z_bits)), sign(s) {
    if (x.size() != n || z.size() != n) {
      throw dimension_error("pauli bit vectors must have n_qubits bits");
    }
    if (s != +1 && s != -1) throw precondition_error("pauli sign must be +-1");
  }

  static PauliString identity(std::size_t n) {
    return PauliString(n, BitVec(n), BitVec(n));
  }

  /// Parses "XIZY" (optionally prefixed by '+' or '-'); leftmost letter is
  /// qubit 0.
  static PauliString from_text(const std::string& text) {
    std::size_t start = 0;
    int s = +1;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
      s = text[0] == '-' ? -1 : +1;
      start = 1;
    }
    std::size_t n = text.size() - start;
    if (n == 0) throw parse_error("empty pauli string");
    PauliString p = identity(n);
    p.sign = s;
    for (std::size_t q = 0; q < n; ++q) {
      switch (text[start + q]) {
        case 'I':
          break;
        case 'X':
          p.x.set(q, true);
          break;
        case 'Z':
          p.z.set(q, true);
          break;
        case 'Y':
          p.x.set(q, true);
          p.z.set(q, true);
          break;
        default:
          throw parse_error("invalid pauli letter '" +
                            std::string(1, text[start + q]) + "'");
      }
    }
    return p;
  }

  char letter(std::size_t q) const {
    bool xq = x.get(q), zq = z.get(q);
    if (xq && zq) return 'Y';
    if (xq) return 'X';
    if (zq) return 'Z';
    return 'I';
  }

  std::string text(bool with_sign = false) const {
    std::string s;
    if (with_sign) s += sign < 0 ? '-' : '+';
    for (std::size_t q = 0; q < n_qubits; ++q) s += letter(q);
    return s;
  }

  bool is_identity_pattern() const { return x.none() && z.none(); }

  std::size_t weight() const {
    std::size_t w = 0;
    for (std::size_t k = 0; k < x.words().size(); ++k) {
      w += static_cast<std::size_t>(
          std::popcount(x.words()[k] | z.words()[k]));
    }
    return w;
  }

  /// Concatenated (x|z) vector of length 2n used by grouping and rank checks.
  BitVec symplectic_row() const {
    BitVec r(2 * n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) {
      if (x.get(q)) r.set(q, true);
      if (z.get(q)) r.set(n_qubits + q, true);
    }
    return r;
  }

  bool same_pattern(const PauliString& o) const { return x == o.x && z == o.z; }

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

/// Symplectic product Sum_i (p.x_i q.z_i + p.z_i q.x_i) mod 2.
/// 0 means p and q commute, 1 means they anticommute.
inline int symplectic_product(const PauliString& p, const PauliString& q) {
  if (p.n_qubits != q.n_qubits) {
    throw dimension_error("symplectic_product: qubit count mismatch");
  }
  return (BitVec::dot(p.x, q.z) ^ BitVec::dot(p.z, q.x)) ? 1 : 0;
}

/// Power of i (mod 4) in the product of two sign-free Pauli strings:
///   string(p) * string(q) = i^exp * string(p.bits ^ q.bits).
/// Per qubit the exponent is +1 for the cyclic letter pairs XY, YZ, ZX,
/// -1 for their reverses, and 0 otherwise.
inline int pauli_mul_phase_exp(const PauliString& p, const PauliString& q) {
  long long plus = 0, minus = 0;
  const auto& x1 = p.x.words();
  const auto& z1 = p.z.words();
  const auto& x2 = q.x.words();
  const auto& z2 = q.z.words();
  for (std::size_t k = 0; k < x1.size(); ++k) {
    word_t both = (x1[k] | z1[k]) & (x2[k] | z2[k]);
    word_t equal = ~((x1[k] ^ x2[k]) | (z1[k] ^ z2[k]));
    word_t active = both & ~equal;
    word_t forward = (x1[k] & ~z1[k] & x2[k] & z2[k]) |
                     (x1[k] & z1[k] & ~x2[k] & z2[k]) |
                     (~x1[k] & z1[k] & x2[k] & ~z2[k]);
    forward &= active;
    plus += std::popcount(forward);
    minus += std::popcount(active & ~forward);
  }
  return static_cast<int>(((plus - minus) % 4 + 4) % 4);
}

/// Pauli product on the bit level with sign tracking. The stored sign is
/// only defined when p and q commute (real phase); anticommuting inputs
/// would need an imaginary sign and raise phase_error.
inline PauliString multiply(const PauliString& p, const PauliString& q) {
  if (p.n_qubits != q.n_qubits) {
    throw dimension_error("multiply: qubit count mismatch");
  }
  int exp = pauli_mul_phase_exp(p, q);
  if (p.sign < 0) exp = (exp + 2) % 4;
  if (q.sign < 0) exp = (exp + 2) % 4;
  if (exp % 2 != 0) {
    throw phase_error("multiply: anticommuting product has imaginary phase");
  }
  PauliString r = p;
  r.x.xor_with(q.x);
  r.z.xor_with(q.z);
  r.sign = exp == 2 ? -1 : +1;
  return r;
}

/// One addend of a Pauli-sum operator.
struct PauliTerm {
  PauliString pauli;
  double coefficient = 0.0;

  /// Folds the stored pauli sign into the coefficient (canonical encoding:
  /// pauli.sign == +1, signed coefficient).
  PauliTerm canonicalized() const {
    PauliTerm t = *this;
    if (t.pauli.sign < 0) {
      t.coefficient = -t.coefficient;
      t.pauli.sign = +1;
    }
    return t;
  }

  /// The +-1 sign of the unitary this term applies in a SELECT circuit,
  /// with |coefficient| split off for state preparation.
  int unit_sign() const {
    return (coefficient < 0 ? -1 : +1) * pauli.sign;
  }
};

struct IngestStats {
  std::size_t lines_parsed = 0;
  std::size_t merged = 0;   // duplicate patterns folded by coefficient addition
  std::size_t dropped = 0;  // |coefficient| < threshold after merging
};

/// Pauli-sum operator with unique term patterns. Duplicate patterns merge by
/// coefficient addition; terms vanishing below the drop threshold are
/// removed. The identity pattern is kept but flagged, since it contributes a
/// scalar shift rather than a controlled gate.
class Observable {
 public:
  static constexpr double kDropThreshold = 1e-12;

  Observable() = default;

  static Observable from_terms(std::size_t n_qubits,
                               const std::vector<PauliTerm>& terms,
                               IngestStats* stats = nullptr) {
    Observable obs;
    obs.n_ = n_qubits;
    IngestStats local;
    std::map<std::pair<std::vector<word_t>, std::vector<word_t>>, std::size_t>
        index;
    for (const PauliTerm& raw : terms) {
      PauliTerm t = raw.canonicalized();
      if (t.pauli.n_qubits != n_qubits) {
        throw dimension_error("observable term has wrong qubit count");
      }
      if (!std::isfinite(t.coefficient)) {
        throw precondition_error("observable coefficient must be finite");
      }
      auto key = std::make_pair(t.pauli.x.words(), t.pauli.z.words());
      auto it = index.find(key);
      if (it == index.end()) {
        index.emplace(key, obs.terms_.size());
        obs.terms_.push_back(t);
      } else {
        obs.terms_[it->second].coefficient += t.coefficient;
        ++local.merged;
      }
    }
    // Drop merged-out terms, preserving first-seen order.
    std::vector<PauliTerm> kept;
    kept.reserve(obs.terms_.size());
    for (const PauliTerm& t : obs.terms_) {
      if (std::abs(t.coefficient) < kDropThreshold) {
        ++local.dropped;
        continue;
      }
      kept.push_back(t);
    }
    obs.terms_ = std::move(kept);
    for (std::size_t j = 0; j < obs.terms_.size(); ++j) {
      if (obs.terms_[j].pauli.is_identity_pattern()) obs.identity_index_ = j;
    }
    if (stats) {
      stats->merged = local.merged;
      stats->dropped = local.dropped;
    }
    return obs;
  }

  std::size_t n_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  const PauliTerm& term(std::size_t j) const { return terms_[j]; }

  std::optional<std::size_t> identity_index() const { return identity_index_; }

  double l1_norm() const {
    double s = 0;
    for (const PauliTerm& t : terms_) s += std::abs(t.coefficient);
    return s;
  }

 private:
  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
  std::optional<std::size_t> identity_index_;
};

}  // namespace parsel
