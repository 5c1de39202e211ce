#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace presto {

// Every failure the library can signal. Grouped by the exit-code class the
// CLI maps them to: usage (2), ingestion (3), runtime (4).
enum class Errc {
    // usage
    usage_error,
    // ingestion
    io_error,
    malformed_line,
    empty_network,
    // runtime
    self_loop_edge,
    disconnected_motif,
    empty_motif,
    network_too_small,
    degenerate_interval,
    zero_capture_probability,
    count_overflow,
    invalid_goal,
    infeasible_budget,
    invalid_config,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::usage_error: return "usage_error";
        case Errc::io_error: return "io_error";
        case Errc::malformed_line: return "malformed_line";
        case Errc::empty_network: return "empty_network";
        case Errc::self_loop_edge: return "self_loop_edge";
        case Errc::disconnected_motif: return "disconnected_motif";
        case Errc::empty_motif: return "empty_motif";
        case Errc::network_too_small: return "network_too_small";
        case Errc::degenerate_interval: return "degenerate_interval";
        case Errc::zero_capture_probability: return "zero_capture_probability";
        case Errc::count_overflow: return "count_overflow";
        case Errc::invalid_goal: return "invalid_goal";
        case Errc::infeasible_budget: return "infeasible_budget";
        case Errc::invalid_config: return "invalid_config";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Error(Errc code, const std::string& message, std::int64_t line_number)
        : std::runtime_error(std::string(errc_name(code)) + " at line " +
                             std::to_string(line_number) + ": " + message),
          code_(code),
          line_(line_number) {}

    Errc code() const noexcept { return code_; }

    // Valid only for malformed_line; 0 otherwise.
    std::int64_t line_number() const noexcept { return line_; }

    // Process exit code class used by the CLI.
    int exit_code() const noexcept {
        switch (code_) {
            case Errc::usage_error: return 2;
            case Errc::io_error:
            case Errc::malformed_line:
            case Errc::empty_network: return 3;
            default: return 4;
        }
    }

  private:
    Errc code_;
    std::int64_t line_ = 0;
};

}  // namespace presto
