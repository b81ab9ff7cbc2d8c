#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tightcore/errors.hpp"

namespace tightcore {

/// A name used before its declaration (or declared twice).
class ReferenceError : public ParseError {
 public:
  using ParseError::ParseError;
};

struct SessionConfig {
  std::uint64_t seed = 1;
  std::uint64_t q_max = 0;  // 0: p^6
  std::uint32_t samples = 40;
  std::uint32_t stall_window = 8;
  std::uint32_t degree_cap = 60;
  /// Extra working precision for semigroup computations.
  std::uint32_t precision = 0;
  std::uint32_t n_max = 6;
  std::uint32_t spread_trials = 6;

  friend bool operator==(const SessionConfig&, const SessionConfig&) = default;
};

/// `ring <name> <kind> { key=value, ... }`
struct RingDecl {
  std::string name;
  std::string kind;  // diagonal | e8 | polynomial | semigroup
  std::vector<std::pair<std::string, std::string>> params;
  int line = 0;

  friend bool operator==(const RingDecl& a, const RingDecl& b) {
    return a.name == b.name && a.kind == b.kind && a.params == b.params;
  }
};

/// `ideal <name> in <ring> = <expression>`
struct IdealDecl {
  std::string name;
  std::string ring;
  std::string expr;
  int line = 0;
  int expr_column = 0;

  friend bool operator==(const IdealDecl& a, const IdealDecl& b) {
    return a.name == b.name && a.ring == b.ring && a.expr == b.expr;
  }
};

/// `compute <command> <args...> [expect <value>]`
struct CommandDecl {
  std::string command;
  std::vector<std::string> args;
  std::optional<std::string> expect;
  int line = 0;

  friend bool operator==(const CommandDecl& a, const CommandDecl& b) {
    return a.command == b.command && a.args == b.args && a.expect == b.expect;
  }
};

struct Session {
  SessionConfig config;
  /// Keys given on `config` lines, so printing reproduces only what was set.
  std::vector<std::string> config_keys;
  std::vector<RingDecl> rings;
  std::vector<IdealDecl> ideals;
  std::vector<CommandDecl> commands;
  /// Declaration order across the three lists: 'r', 'i' or 'c'.
  std::string order;

  friend bool operator==(const Session& a, const Session& b) {
    return a.config == b.config && a.rings == b.rings && a.ideals == b.ideals && a.commands == b.commands &&
           a.order == b.order;
  }
};

/// Commands the runner understands, with their argument shapes.
const std::vector<std::string>& session_commands();

/// Validates syntax and references. Throws ParseError / ReferenceError with line and column.
Session parse_session(std::string_view text);
/// Canonical text; parse_session(print_session(s)) == s (equality ignores positions).
std::string print_session(const Session& s);
/// Overrides a config key by name ("seed", "qmax", "samples", "stall_window",
/// "degree_cap", "precision", "n_max", "spread_trials"). DomainError for unknown keys.
void set_config(SessionConfig& cfg, const std::string& key, std::uint64_t value);

struct RunOptions {
  bool timing = true;
};

struct RunResult {
  /// JSON document: schema, config, one entry per command, overall success.
  std::string json;
  std::string text;
  bool success = false;
};

/// Executes the declarations and commands in order. A failing command is
/// recorded in its report; later independent commands still run.
RunResult run_session(const Session& s, const RunOptions& opts = {});

}  // namespace tightcore
