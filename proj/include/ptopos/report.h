#ifndef PTOPOS_REPORT_H
#define PTOPOS_REPORT_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace ptopos {

enum class OutputFormat { Human, Record };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitGuard = 3;

struct CommandOptions {
    OutputFormat format = OutputFormat::Human;
    bool parallel = true;
    /// Overrides the global-section search node guard.
    std::optional<std::uint64_t> guard;
};

struct CommandResult {
    int exit_code = kExitOk;
    /// Deterministic report: fields in a fixed order, no timing.
    nlohmann::ordered_json record;
    /// Rendered report for stdout in the requested format.
    std::string output;
    /// Wall time of the command, reported on stderr only.
    double elapsed_ms = 0;
};

CommandResult cmd_validate(const std::string &scenario_path, const CommandOptions &options = {});
CommandResult cmd_category(const std::string &scenario_path, const CommandOptions &options = {});
CommandResult cmd_valuate(const std::string &scenario_path, const CommandOptions &options = {});
CommandResult cmd_ks_search(const std::string &scenario_path, const CommandOptions &options = {});
/// Accepts a `.top` file (topology or poset) or a scenario.
CommandResult cmd_heyting(const std::string &path, const CommandOptions &options = {});

/// Dispatches on "validate", "category", "valuate", "ks-search", "heyting".
CommandResult run_command(std::string_view command, const std::string &path, const CommandOptions &options = {});

/// Human-readable rendering of a record document.
std::string render_human(const nlohmann::ordered_json &record);

}  // namespace ptopos

#endif
