#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "traintrack/io.hpp"
#include "traintrack/train_track.hpp"

namespace traintrack::tools {

enum ExitCode : int {
  ok = 0,
  not_principal = 1,
  parse_error = 2,
  precondition_failed = 3,
  verification_failed = 4,
};

struct GlobalOptions {
  PnpOptions pnp;
  int jobs = 1;
  std::optional<std::uint64_t> seed;
};

/// Human text plus the structured form (schema "1").
struct Report {
  std::string text;
  nlohmann::json json;
  int exit_code = ok;
};

Report certify(const MapDocument& doc, const GlobalOptions& opts);
Report decompose(const MapDocument& doc, const GlobalOptions& opts);
/// DOT of the automaton is returned in `dot`.
Report automaton_build(int rank, const GlobalOptions& opts, std::string* dot = nullptr);
Report search_single_fold(int rank, const GlobalOptions& opts);
Report verify_theorem_a(const GlobalOptions& opts);
Report verify_theorem_b(const GlobalOptions& opts);

/// Full command line, argv[0] included.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace traintrack::tools
