#pragma once
//
// Scenario execution for the batch front end: parse a scenario document,
// build the requested instance and colouring, run the task, and render a
// deterministic report.  All values travel as exact strings (ordinals in
// canonical notation, rationals as numerator/denominator, Prufer cosets as
// a/p^n), so a fixed (scenario, seed) pair always renders byte-identical
// output.  Schema problems carry a JSON-pointer path to the offending
// field.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace fsr {

inline constexpr const char* kToolVersion = "0.1.0";

class scenario_error : public std::invalid_argument {
 public:
  scenario_error(const std::string& pointer, const std::string& message)
      : std::invalid_argument(pointer + ": " + message), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

// Command-line overrides, applied after parsing: the seed replaces the
// scenario seed, the bound replaces the task's principal bound (documented
// per task), the format replaces the output format.
struct ScenarioOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> bound;
  std::optional<std::string> format;
};

struct ScenarioOutcome {
  int exit_code = 0;   // 0 ok, 2 check failed
  std::string report;  // rendered JSON (or CSV for flat tables)
};

// Parses and executes one scenario document.  scenario_error on schema
// violations; the library's own errors (bad ordinals, budget overruns)
// are translated into scenario_error at the field that supplied them
// where possible and propagate otherwise.
ScenarioOutcome run_scenario_text(const std::string& text,
                                  const ScenarioOverrides& overrides);

}  // namespace fsr
