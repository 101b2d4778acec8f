#include "evosizer/spice/simulator.hpp"

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <fmt/format.h>

extern char** environ;

namespace evosizer::spice {

namespace fs = std::filesystem;

SimulatorConfig SimulatorConfig::from_environment()
{
    SimulatorConfig c;
    if (const char* env = std::getenv(kSimulatorEnv); env != nullptr && *env != '\0') {
        c.executable = env;
    }
    return c;
}

void SimulatorConfig::validate() const
{
    if (executable.empty()) {
        throw ConfigError("simulator: executable is empty");
    }
    if (!(timeout_seconds > 0.0)) {
        throw ConfigError(fmt::format("simulator: timeout must be > 0, got {}", timeout_seconds));
    }
}

fs::path find_executable(const std::string& executable)
{
    auto runnable = [](const fs::path& p) {
        std::error_code ec;
        return fs::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
    };
    if (executable.find('/') != std::string::npos) {
        return runnable(executable) ? fs::absolute(executable) : fs::path{};
    }
    const char* path = std::getenv("PATH");
    std::istringstream dirs(path != nullptr ? path : "");
    std::string dir;
    while (std::getline(dirs, dir, ':')) {
        const fs::path candidate = fs::path(dir.empty() ? "." : dir) / executable;
        if (runnable(candidate)) {
            return fs::absolute(candidate);
        }
    }
    return {};
}

bool simulator_available(const SimulatorConfig& config)
{
    return !find_executable(config.executable).empty();
}

namespace {

class WorkDir {
public:
    WorkDir(const fs::path& parent, bool keep) : keep_(keep)
    {
        std::string tmpl = (parent / "evosizer-sim-XXXXXX").string();
        if (::mkdtemp(tmpl.data()) == nullptr) {
            throw BackendError(fmt::format("simulator: cannot create work directory under {}: {}", parent.string(),
                                           std::strerror(errno)));
        }
        path_ = tmpl;
    }
    ~WorkDir()
    {
        if (!keep_) {
            std::error_code ec;
            fs::remove_all(path_, ec);
        }
    }
    WorkDir(const WorkDir&) = delete;
    WorkDir& operator=(const WorkDir&) = delete;

    [[nodiscard]] const fs::path& path() const { return path_; }

private:
    fs::path path_;
    bool keep_;
};

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string tail(const std::string& text, std::size_t lines)
{
    std::size_t pos = text.size();
    for (std::size_t n = 0; n <= lines && pos > 0; ++n) {
        pos = text.rfind('\n', pos - 1);
        if (pos == std::string::npos) {
            return text;
        }
    }
    return text.substr(pos + 1);
}

struct SpawnResources {
    posix_spawn_file_actions_t actions{};
    posix_spawnattr_t attr{};
    SpawnResources()
    {
        posix_spawn_file_actions_init(&actions);
        posix_spawnattr_init(&attr);
    }
    ~SpawnResources()
    {
        posix_spawn_file_actions_destroy(&actions);
        posix_spawnattr_destroy(&attr);
    }
    SpawnResources(const SpawnResources&) = delete;
    SpawnResources& operator=(const SpawnResources&) = delete;
};

} // namespace

std::string run_simulation(const std::string& netlist, const SimulatorConfig& config, core::EvaluationBudget& budget)
{
    config.validate();
    const fs::path exe = find_executable(config.executable);
    if (exe.empty()) {
        throw SimulatorNotFound(fmt::format("simulator '{}' not found (set {} to its path)", config.executable,
                                            kSimulatorEnv));
    }

    WorkDir work(config.working_directory, config.keep_files);
    const fs::path netlist_path = work.path() / "circuit.cir";
    const fs::path output_path = work.path() / "output.log";
    {
        std::ofstream out(netlist_path, std::ios::binary);
        out << netlist;
        if (!out) {
            throw BackendError(fmt::format("simulator: cannot write {}", netlist_path.string()));
        }
    }

    SpawnResources res;
    posix_spawn_file_actions_addchdir_np(&res.actions, work.path().c_str());
    posix_spawn_file_actions_addopen(&res.actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
    posix_spawn_file_actions_addopen(&res.actions, STDOUT_FILENO, output_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC,
                                     0644);
    posix_spawn_file_actions_adddup2(&res.actions, STDOUT_FILENO, STDERR_FILENO);
    posix_spawnattr_setflags(&res.attr, POSIX_SPAWN_SETPGROUP);
    posix_spawnattr_setpgroup(&res.attr, 0);

    std::string exe_arg = exe.string();
    std::string batch_arg = "-b";
    std::string file_arg = netlist_path.filename().string();
    char* argv[] = {exe_arg.data(), batch_arg.data(), file_arg.data(), nullptr};

    pid_t pid = 0;
    if (const int rc = ::posix_spawn(&pid, exe_arg.c_str(), &res.actions, &res.attr, argv, environ); rc != 0) {
        if (rc == ENOENT || rc == EACCES || rc == ENOEXEC) {
            throw SimulatorNotFound(fmt::format("simulator '{}' could not be started: {}", exe_arg, std::strerror(rc)));
        }
        throw BackendError(fmt::format("simulator '{}' could not be started: {}", exe_arg, std::strerror(rc)));
    }
    budget.record();

    using Clock = std::chrono::steady_clock;
    const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                             std::chrono::duration<double>(config.timeout_seconds));
    int status = 0;
    for (auto sleep = std::chrono::milliseconds(1);; sleep = std::min(sleep * 2, std::chrono::milliseconds(50))) {
        const pid_t done = ::waitpid(pid, &status, WNOHANG);
        if (done == pid) {
            break;
        }
        if (done < 0 && errno != EINTR) {
            throw BackendError(fmt::format("simulator: waitpid failed: {}", std::strerror(errno)));
        }
        if (Clock::now() >= deadline) {
            ::kill(-pid, SIGKILL);
            ::waitpid(pid, &status, 0);
            throw SimulationTimeout(
                fmt::format("simulator '{}' timed out after {} s", exe_arg, config.timeout_seconds));
        }
        std::this_thread::sleep_for(sleep);
    }

    std::string output = read_file(output_path);
    if (WIFSIGNALED(status)) {
        throw SimulationFailed(fmt::format("simulator '{}' killed by signal {}\n{}", exe_arg, WTERMSIG(status),
                                           tail(output, 10)));
    }
    if (WEXITSTATUS(status) != 0) {
        throw SimulationFailed(fmt::format("simulator '{}' exited with status {}\n{}", exe_arg, WEXITSTATUS(status),
                                           tail(output, 10)));
    }
    return output;
}

} // namespace evosizer::spice
