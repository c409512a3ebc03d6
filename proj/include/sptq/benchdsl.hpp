#pragma once

// Line-oriented description language for serial optical benches, so a
// bench is expressible as a diffable text file. One directive per line,
// `#` starts a comment, arguments are positional or key=value:
//
//   polarizer V|H                   source/preparation prologue, required first
//   hwp angle=<degrees>
//   bs                              fixed 50/50 splitter
//   phase mode=r value=<rad|NAME>   relative phase on the second spatial mode
//   sagnac pbs=on|off dp=+45|-45
//   measure pol                     required, must be last
//
// Angles are degrees, phases radians; unit suffixes are rejected. A phase
// value that is not a number is a symbolic parameter bound at compile time.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sptq/optics.hpp"
#include "sptq/qcore.hpp"

namespace sptq::benchdsl {

struct SourceSpan {
  int line = 0;    // 1-based
  int column = 0;  // 1-based byte offset of the directive token
};

enum class ElementKind { Polarizer, Hwp, Bs, Phase, Sagnac, Measure };

/// Phase argument: a literal value in radians or a symbol to bind later.
using PhaseValue = std::variant<double, std::string>;

struct BenchElement {
  ElementKind kind = ElementKind::Bs;
  int polarization = 0;           // Polarizer: V=0, H=1
  double angle_degrees = 0.0;     // Hwp
  PhaseValue phase{0.0};          // Phase
  SagnacConfig sagnac{};          // Sagnac
  SourceSpan span{};
};

struct BenchProgram {
  std::vector<BenchElement> elements;
  /// Unbound parameter names in order of first use.
  std::vector<std::string> symbols;
};

struct ParseDiagnostic {
  enum class Severity { Error, Warning };
  int line = 0;
  int column = 0;
  std::string message;
  Severity severity = Severity::Error;
};

/// program is engaged iff no error diagnostics were produced; a rejected
/// input never yields a partial program.
struct ParseResult {
  std::optional<BenchProgram> program;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return program.has_value(); }
};

ParseResult parse(std::string_view text);

/// Canonical text form; parsing it back yields a structurally equal
/// program.
std::string pretty_print(const BenchProgram& program);

/// Equality of structure (kinds and arguments), ignoring source spans.
bool structural_equal(const BenchProgram& a, const BenchProgram& b);

class CompileError : public std::runtime_error {
 public:
  CompileError(std::string message, std::string symbol_name)
      : std::runtime_error(std::move(message)), symbol(std::move(symbol_name)) {}
  std::string symbol;  // empty unless an unbound symbol caused the failure
};

struct BenchRun {
  StateVector state;
  PolProbs probs;
};

/// A lowered program: preparation state, the element unitaries in order,
/// and a polarization measurement at the end.
struct CompiledBench {
  StateVector initial;
  std::vector<Unitary4> steps;

  /// All steps composed into a single matrix (identity when empty).
  Unitary4 composed() const;

  /// Applies the steps to the initial state and reads the marginal.
  BenchRun run() const;
};

/// Lowers a parsed program with all symbols bound. Throws CompileError
/// (naming the symbol) when a symbol has no binding.
CompiledBench compile(const BenchProgram& program,
                      const std::map<std::string, double>& bindings);

}  // namespace sptq::benchdsl
