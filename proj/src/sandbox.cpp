#include "pmas/sandbox.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <vector>

namespace fs = std::filesystem;

namespace pmas {

namespace {

// Guard prelude executed ahead of the artifact: blocks sockets and shell
// escapes, and denies write-mode opens outside the scratch directory.
const char* kRunnerSource = R"PY(
import builtins
import os
import runpy
import sys

SCRATCH = os.path.dirname(os.path.abspath(sys.argv[1]))


def _deny(*args, **kwargs):
    raise PermissionError("denied by sandbox policy")


import socket

socket.socket = _deny
socket.create_connection = _deny
os.system = _deny
os.popen = _deny
os.fork = _deny
os.execv = _deny
os.execve = _deny

_real_open = builtins.open


def _guarded_open(file, mode="r", *args, **kwargs):
    if any(flag in mode for flag in "wax+"):
        if isinstance(file, int):
            raise PermissionError("fd write denied by sandbox policy")
        path = os.path.abspath(os.fspath(file))
        if not path.startswith(SCRATCH):
            raise PermissionError("write outside scratch denied")
    return _real_open(file, mode, *args, **kwargs)


builtins.open = _guarded_open

target = sys.argv[1]
sys.argv = sys.argv[1:]
runpy.run_path(target, run_name="__main__")
)PY";

std::string make_scratch_dir() {
    std::string templ = (fs::temp_directory_path() / "pmas-sbx-XXXXXX").string();
    std::vector<char> buf(templ.begin(), templ.end());
    buf.push_back('\0');
    if (!mkdtemp(buf.data())) throw Error("cannot create sandbox scratch directory");
    return std::string(buf.data());
}

} // namespace

SandboxResult ExecutionSandbox::run(const std::string& code, const std::string& stdin_text) {
    const std::uint64_t key =
        fnv1a(stdin_text, fnv1a(code, static_cast<std::uint64_t>(timeout_seconds_) + 0x9E3779B9ULL));
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    SandboxResult result = run_uncached(code, stdin_text);
    std::lock_guard<std::mutex> lock(mutex_);
    cache_.emplace(key, result);
    return result;
}

SandboxResult ExecutionSandbox::run_uncached(const std::string& code,
                                             const std::string& stdin_text) {
    const std::string scratch = make_scratch_dir();
    write_file(scratch + "/runner.py", kRunnerSource);
    write_file(scratch + "/artifact.py", code);
    write_file(scratch + "/state.json", stdin_text);
    const std::string cmd = "cd '" + scratch + "' && timeout " + std::to_string(timeout_seconds_) +
                            " python3 -I runner.py artifact.py < state.json > out.txt 2> err.txt";
    const int rc = std::system(cmd.c_str());
    SandboxResult result;
    const int exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : 128;
    result.timed_out = (exit_code == 124); // GNU timeout convention
    result.exit_status = exit_code;
    try {
        result.stdout_text = read_file(scratch + "/out.txt");
        result.stderr_text = read_file(scratch + "/err.txt");
    } catch (const Error&) {
        // Output files missing means the command could not start at all.
    }
    std::error_code ec;
    fs::remove_all(scratch, ec);
    return result;
}

} // namespace pmas
