#pragma once

#include <stdexcept>
#include <string>

namespace qgmuse {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad register size, invalid fidelities, num_notes < 2, ...
struct ConfigError : Error {
  using Error::Error;
};

// Qubit index out of range, register-size mismatch, noise on an
// undecomposed circuit, ...
struct CircuitError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& what_)
      : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(column_) +
              ": " + what_),
        line(line_),
        column(column_) {}
};

struct EvalError : Error {
  using Error::Error;
};

// More than 20 variables: the brute-force enumerator and the simulator
// both cap out.
struct CapacityError : Error {
  using Error::Error;
};

struct SynthesisError : Error {
  using Error::Error;
};

struct DecomposeError : Error {
  using Error::Error;
};

struct SchedulingError : Error {
  using Error::Error;
};

struct ComposeStalledError : Error {
  int step;
  ComposeStalledError(int step_, int retries)
      : Error("composer stalled at step " + std::to_string(step_) + " after " +
              std::to_string(retries) + " rejected samples"),
        step(step_) {}
};

struct MidiRangeError : Error {
  using Error::Error;
};

}  // namespace qgmuse
