#include "sptq/benchdsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <span>
#include <utility>

namespace sptq::benchdsl {

namespace {

struct Token {
  std::string_view text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i])) != 0) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])) == 0) {
      ++i;
    }
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  const auto head = static_cast<unsigned char>(text.front());
  if (std::isalpha(head) == 0 && text.front() != '_') return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  });
}

std::optional<double> parse_number(std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

// Shortest decimal form that parses back to the same double.
std::string format_double(double value) {
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    if (auto back = parse_number(buf); back && *back == value) break;
  }
  return buf;
}

class LineParser {
 public:
  LineParser(int line_number, std::vector<ParseDiagnostic>& diagnostics)
      : line_(line_number), diagnostics_(diagnostics) {}

  void error(int column, std::string message) {
    diagnostics_.push_back({line_, column, std::move(message),
                            ParseDiagnostic::Severity::Error});
    failed_ = true;
  }

  bool failed() const { return failed_; }

  /// Splits key=value arguments, rejecting unknown and duplicate keys.
  /// Returns tokens for the requested keys (column = value position).
  std::vector<std::optional<Token>> keyed_args(
      std::span<const Token> args, std::initializer_list<std::string_view> keys) {
    std::vector<std::optional<Token>> out(keys.size());
    for (const Token& arg : args) {
      const std::size_t eq = arg.text.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        error(arg.column, "expected key=value argument, got '" +
                              std::string(arg.text) + "'");
        continue;
      }
      const std::string_view key = arg.text.substr(0, eq);
      const std::string_view value = arg.text.substr(eq + 1);
      const int value_column = arg.column + static_cast<int>(eq) + 1;
      const auto it = std::find(keys.begin(), keys.end(), key);
      if (it == keys.end()) {
        error(arg.column, "unknown key '" + std::string(key) + "'");
        continue;
      }
      auto& slot = out[static_cast<std::size_t>(it - keys.begin())];
      if (slot.has_value()) {
        error(arg.column, "duplicate key '" + std::string(key) + "'");
        continue;
      }
      if (value.empty()) {
        error(value_column, "missing value for key '" + std::string(key) + "'");
        continue;
      }
      slot = Token{value, value_column};
    }
    std::size_t index = 0;
    for (std::string_view key : keys) {
      if (!failed_ && !out[index].has_value()) {
        error(1, "missing required key '" + std::string(key) + "'");
      }
      ++index;
    }
    return out;
  }

 private:
  int line_;
  std::vector<ParseDiagnostic>& diagnostics_;
  bool failed_ = false;
};

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult result;
  std::vector<BenchElement> elements;
  std::vector<std::string> symbols;
  bool any_error = false;

  const auto record_symbol = [&symbols](std::string_view name) {
    if (std::find(symbols.begin(), symbols.end(), name) == symbols.end()) {
      symbols.emplace_back(name);
    }
  };

  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++line_number;
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) continue;

    LineParser lp(line_number, result.diagnostics);
    const Token& head = tokens.front();
    const std::span<const Token> args(tokens.data() + 1, tokens.size() - 1);
    BenchElement element;
    element.span = {line_number, head.column};

    if (head.text == "polarizer") {
      element.kind = ElementKind::Polarizer;
      if (args.size() != 1) {
        lp.error(head.column, "polarizer takes exactly one argument: V or H");
      } else if (args[0].text == "V") {
        element.polarization = 0;
      } else if (args[0].text == "H") {
        element.polarization = 1;
      } else {
        lp.error(args[0].column, "polarizer argument must be V or H, got '" +
                                     std::string(args[0].text) + "'");
      }
    } else if (head.text == "hwp") {
      element.kind = ElementKind::Hwp;
      const auto vals = lp.keyed_args(args, {"angle"});
      if (!lp.failed()) {
        if (const auto angle = parse_number(vals[0]->text)) {
          element.angle_degrees = *angle;
        } else {
          lp.error(vals[0]->column, "malformed angle '" + std::string(vals[0]->text) +
                                        "' (degrees, no unit suffix)");
        }
      }
    } else if (head.text == "bs") {
      element.kind = ElementKind::Bs;
      if (!args.empty()) {
        lp.error(args[0].column, "bs takes no arguments");
      }
    } else if (head.text == "phase") {
      element.kind = ElementKind::Phase;
      const auto vals = lp.keyed_args(args, {"mode", "value"});
      if (!lp.failed()) {
        if (vals[0]->text != "r") {
          lp.error(vals[0]->column, "phase mode must be r");
        } else if (const auto number = parse_number(vals[1]->text)) {
          element.phase = *number;
        } else if (is_identifier(vals[1]->text)) {
          element.phase = std::string(vals[1]->text);
          record_symbol(vals[1]->text);
        } else {
          lp.error(vals[1]->column, "malformed phase value '" +
                                        std::string(vals[1]->text) +
                                        "' (radians or a symbol name)");
        }
      }
    } else if (head.text == "sagnac") {
      element.kind = ElementKind::Sagnac;
      const auto vals = lp.keyed_args(args, {"pbs", "dp"});
      if (!lp.failed()) {
        if (vals[0]->text == "on") {
          element.sagnac.pbs_present = true;
        } else if (vals[0]->text == "off") {
          element.sagnac.pbs_present = false;
        } else {
          lp.error(vals[0]->column, "pbs must be on or off");
        }
        if (vals[1]->text == "+45") {
          element.sagnac.dp = DoveAngle::Plus45;
        } else if (vals[1]->text == "-45") {
          element.sagnac.dp = DoveAngle::Minus45;
        } else {
          lp.error(vals[1]->column, "dp must be +45 or -45");
        }
      }
    } else if (head.text == "measure") {
      element.kind = ElementKind::Measure;
      if (args.size() != 1 || args[0].text != "pol") {
        lp.error(head.column, "measure takes exactly one argument: pol");
      }
    } else {
      lp.error(head.column, "unknown directive '" + std::string(head.text) + "'");
    }

    if (lp.failed()) {
      any_error = true;
    } else {
      elements.push_back(std::move(element));
    }
  }

  // Structure checks run only on otherwise clean input so one typo does
  // not cascade into bogus structural complaints.
  if (!any_error) {
    const int last_line = std::max(1, line_number);
    const auto structure_error = [&](int line, int column, std::string message) {
      result.diagnostics.push_back({line, column, std::move(message),
                                    ParseDiagnostic::Severity::Error});
      any_error = true;
    };
    const auto count_kind = [&elements](ElementKind kind) {
      return std::count_if(elements.begin(), elements.end(),
                           [kind](const BenchElement& e) { return e.kind == kind; });
    };

    if (count_kind(ElementKind::Measure) == 0) {
      structure_error(last_line, 1, "missing measure directive");
    } else {
      for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].kind != ElementKind::Measure) continue;
        if (i + 1 != elements.size()) {
          structure_error(elements[i].span.line, elements[i].span.column,
                          "measure must be the final directive");
          break;
        }
      }
    }
    if (count_kind(ElementKind::Polarizer) == 0) {
      structure_error(1, 1, "missing polarizer prologue");
    } else {
      for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].kind != ElementKind::Polarizer) continue;
        if (i != 0) {
          structure_error(elements[i].span.line, elements[i].span.column,
                          "polarizer must be the first directive");
          break;
        }
      }
    }
  }

  if (!any_error) {
    BenchProgram program;
    program.elements = std::move(elements);
    program.symbols = std::move(symbols);
    result.program = std::move(program);
  }
  return result;
}

std::string pretty_print(const BenchProgram& program) {
  std::string out;
  for (const BenchElement& e : program.elements) {
    switch (e.kind) {
      case ElementKind::Polarizer:
        out += e.polarization == 0 ? "polarizer V" : "polarizer H";
        break;
      case ElementKind::Hwp:
        out += "hwp angle=" + format_double(e.angle_degrees);
        break;
      case ElementKind::Bs:
        out += "bs";
        break;
      case ElementKind::Phase:
        out += "phase mode=r value=";
        if (const double* value = std::get_if<double>(&e.phase)) {
          out += format_double(*value);
        } else {
          out += std::get<std::string>(e.phase);
        }
        break;
      case ElementKind::Sagnac:
        out += "sagnac pbs=";
        out += e.sagnac.pbs_present ? "on" : "off";
        out += " dp=";
        out += e.sagnac.dp == DoveAngle::Plus45 ? "+45" : "-45";
        break;
      case ElementKind::Measure:
        out += "measure pol";
        break;
    }
    out += '\n';
  }
  return out;
}

bool structural_equal(const BenchProgram& a, const BenchProgram& b) {
  if (a.elements.size() != b.elements.size()) return false;
  if (a.symbols != b.symbols) return false;
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    const BenchElement& x = a.elements[i];
    const BenchElement& y = b.elements[i];
    if (x.kind != y.kind) return false;
    switch (x.kind) {
      case ElementKind::Polarizer:
        if (x.polarization != y.polarization) return false;
        break;
      case ElementKind::Hwp:
        if (x.angle_degrees != y.angle_degrees) return false;
        break;
      case ElementKind::Phase:
        if (x.phase != y.phase) return false;
        break;
      case ElementKind::Sagnac:
        if (x.sagnac.pbs_present != y.sagnac.pbs_present ||
            x.sagnac.dp != y.sagnac.dp) {
          return false;
        }
        break;
      case ElementKind::Bs:
      case ElementKind::Measure:
        break;
    }
  }
  return true;
}

Unitary4 CompiledBench::composed() const {
  Unitary4 total = Unitary4::identity();
  for (const Unitary4& step : steps) {
    total = compose(step, total);
  }
  return total;
}

BenchRun CompiledBench::run() const {
  StateVector state = initial;
  for (const Unitary4& step : steps) {
    state = apply_unitary(step, state);
  }
  return {state, pol_marginal(state)};
}

CompiledBench compile(const BenchProgram& program,
                      const std::map<std::string, double>& bindings) {
  if (program.elements.empty() ||
      program.elements.front().kind != ElementKind::Polarizer ||
      program.elements.back().kind != ElementKind::Measure) {
    throw CompileError("compile requires a structurally valid program", "");
  }
  CompiledBench out;
  out.initial = StateVector::basis(basis_index(program.elements.front().polarization, 0));
  for (std::size_t i = 1; i + 1 < program.elements.size(); ++i) {
    const BenchElement& e = program.elements[i];
    switch (e.kind) {
      case ElementKind::Hwp:
        out.steps.push_back(hwp_unitary(WavePlateAngle{e.angle_degrees}));
        break;
      case ElementKind::Bs:
        out.steps.push_back(beam_splitter_unitary());
        break;
      case ElementKind::Phase: {
        double value = 0.0;
        if (const double* literal = std::get_if<double>(&e.phase)) {
          value = *literal;
        } else {
          const std::string& name = std::get<std::string>(e.phase);
          const auto it = bindings.find(name);
          if (it == bindings.end()) {
            throw CompileError("unbound symbol '" + name + "'", name);
          }
          value = it->second;
        }
        out.steps.push_back(phase_shifter_unitary(value));
        break;
      }
      case ElementKind::Sagnac:
        out.steps.push_back(sagnac_unitary(e.sagnac));
        break;
      case ElementKind::Polarizer:
      case ElementKind::Measure:
        throw CompileError("compile requires a structurally valid program", "");
    }
  }
  return out;
}

}  // namespace sptq::benchdsl
