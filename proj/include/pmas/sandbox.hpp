#pragma once

#include <map>
#include <mutex>
#include <string>

#include "pmas/common.hpp"

namespace pmas {

struct SandboxResult {
    bool timed_out = false;
    int exit_status = 0;
    std::string stdout_text;
    std::string stderr_text;
};

// Runs generated Python against a stub network-state harness in an external
// process: fresh scratch directory, wall-clock limit, no network, writes
// denied outside the scratch directory. Results are memoized on
// (code, stdin, timeout) since identical artifacts recur across a sweep.
class ExecutionSandbox {
public:
    explicit ExecutionSandbox(int timeout_seconds = 10) : timeout_seconds_(timeout_seconds) {}

    SandboxResult run(const std::string& code, const std::string& stdin_text);

    int timeout_seconds() const { return timeout_seconds_; }

private:
    SandboxResult run_uncached(const std::string& code, const std::string& stdin_text);

    int timeout_seconds_;
    std::mutex mutex_;
    std::map<std::uint64_t, SandboxResult> cache_;
};

} // namespace pmas
