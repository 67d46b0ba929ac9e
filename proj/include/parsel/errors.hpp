#pragma once

#include <stdexcept>
#include <string>

namespace parsel {

// Error hierarchy mirrored by the CLI exit codes: parse (2),
// precondition (3), capacity (4), verification (5).
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : error {
  using error::error;
};

struct precondition_error : error {
  using error::error;
};

// Operand sizes disagree (qubit counts, vector lengths, register widths).
struct dimension_error : precondition_error {
  using precondition_error::precondition_error;
};

// A set of GF(2) vectors required to be linearly independent is not.
struct independence_error : precondition_error {
  using precondition_error::precondition_error;
};

struct unsupported_gate_error : precondition_error {
  using precondition_error::precondition_error;
};

// A stored Pauli sign would need an imaginary phase.
struct phase_error : precondition_error {
  using precondition_error::precondition_error;
};

// Register or simulator size limits exceeded.
struct capacity_error : error {
  using error::error;
};

struct verification_error : error {
  using error::error;
};

}  // namespace parsel
