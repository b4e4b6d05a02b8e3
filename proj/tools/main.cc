#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ptopos/report.h"

int main(int argc, char **argv) {
    CLI::App app{"Presheaf-topos toolkit: operator categories, sieve-valued valuations, Kochen-Specker search"};
    app.require_subcommand(1);

    std::string format = "human";
    bool no_parallel = false;
    std::uint64_t guard = 0;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "record"}));
    app.add_flag("--no-parallel", no_parallel, "Run searches on one thread");
    auto *guard_opt = app.add_option("--guard", guard, "Node limit for the global-section search");

    std::string input;
    struct Sub {
        const char *name;
        const char *help;
        const char *arg;
    };
    const Sub subs[] = {
        {"validate", "Check a scenario's operators, states and queries", "scenario"},
        {"category", "List the operator category: objects, arrows, sieve counts", "scenario"},
        {"valuate", "Evaluate each QUERY as a sieve and a Born probability", "scenario"},
        {"ks-search", "Search for global sections of the dual presheaf", "scenario"},
        {"heyting", "Print Heyting algebra tables and excluded-middle failures", "scenario or .top file"},
    };
    for (const Sub &s : subs) {
        auto *cmd = app.add_subcommand(s.name, s.help);
        cmd->fallthrough();
        cmd->add_option("input", input, s.arg)->required();
    }

    CLI11_PARSE(app, argc, argv);

    ptopos::CommandOptions options;
    options.format = format == "record" ? ptopos::OutputFormat::Record : ptopos::OutputFormat::Human;
    options.parallel = !no_parallel;
    if (guard_opt->count()) {
        options.guard = guard;
    }
    ptopos::CommandResult result = ptopos::run_command(app.get_subcommands().front()->get_name(), input, options);
    std::cout << result.output;
    std::cerr << "elapsed: " << result.elapsed_ms << " ms\n";
    return result.exit_code;
}
