#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "plotting/cnf.hpp"
#include "plotting/error.hpp"

namespace plotting::cnf {

namespace {

class TempFile {
 public:
  TempFile() {
    std::string pattern = (std::filesystem::temp_directory_path() / "plotting-XXXXXX.cnf").string();
    const int fd = ::mkstemps(pattern.data(), 4);
    if (fd < 0) throw Error(ErrorCode::io_failure, "cannot create temporary DIMACS file");
    ::close(fd);
    path_ = pattern;
  }
  ~TempFile() {
    std::error_code ignored;
    std::filesystem::remove(path_, ignored);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

std::vector<std::string> split_command(const std::string& command) {
  std::istringstream in(command);
  std::vector<std::string> argv;
  for (std::string word; in >> word;) argv.push_back(word);
  return argv;
}

struct ProcessResult {
  std::string output;
  bool timed_out = false;
};

ProcessResult run_process(const std::vector<std::string>& argv,
                          std::optional<std::chrono::milliseconds> timeout) {
  int pipe_fds[2];
  if (::pipe(pipe_fds) != 0) throw Error(ErrorCode::spawn_failure, "pipe() failed");

  // Exec failures are reported through a close-on-exec status pipe.
  int status_fds[2];
  if (::pipe2(status_fds, O_CLOEXEC) != 0) {
    ::close(pipe_fds[0]);
    ::close(pipe_fds[1]);
    throw Error(ErrorCode::spawn_failure, "pipe2() failed");
  }

  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {pipe_fds[0], pipe_fds[1], status_fds[0], status_fds[1]}) ::close(fd);
    throw Error(ErrorCode::spawn_failure, "fork() failed");
  }
  if (pid == 0) {
    ::close(pipe_fds[0]);
    ::close(status_fds[0]);
    ::dup2(pipe_fds[1], STDOUT_FILENO);
    const int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0) ::dup2(devnull, STDERR_FILENO);
    ::setpgid(0, 0);
    ::execvp(args[0], args.data());
    const int err = errno;
    [[maybe_unused]] ssize_t n = ::write(status_fds[1], &err, sizeof err);
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(pipe_fds[1]);
  ::close(status_fds[1]);

  int exec_errno = 0;
  const ssize_t got = ::read(status_fds[0], &exec_errno, sizeof exec_errno);
  ::close(status_fds[0]);
  if (got == static_cast<ssize_t>(sizeof exec_errno)) {
    ::close(pipe_fds[0]);
    ::waitpid(pid, nullptr, 0);
    throw Error(ErrorCode::spawn_failure,
                "cannot execute '" + argv[0] + "': " + std::strerror(exec_errno));
  }

  ProcessResult result;
  const auto start = std::chrono::steady_clock::now();
  char buffer[4096];
  while (true) {
    int wait_ms = -1;
    if (timeout) {
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start);
      if (elapsed >= *timeout) {
        result.timed_out = true;
        break;
      }
      wait_ms = static_cast<int>((*timeout - elapsed).count());
    }
    pollfd pfd{pipe_fds[0], POLLIN, 0};
    const int ready = ::poll(&pfd, 1, wait_ms);
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) continue;
    const ssize_t n = ::read(pipe_fds[0], buffer, sizeof buffer);
    if (n <= 0) break;
    result.output.append(buffer, static_cast<std::size_t>(n));
  }
  ::close(pipe_fds[0]);
  if (result.timed_out) ::kill(-pid, SIGKILL);
  ::waitpid(pid, nullptr, 0);
  return result;
}

}  // namespace

SatOutcome external_solve(const CnfFormula& formula, const std::string& command,
                          std::optional<std::chrono::milliseconds> timeout) {
  std::vector<std::string> argv = split_command(command);
  if (argv.empty()) throw Error(ErrorCode::spawn_failure, "empty solver command");

  TempFile file;
  {
    std::ofstream out(file.path());
    write_dimacs(formula, out);
  }
  argv.push_back(file.path());

  const ProcessResult run = run_process(argv, timeout);
  if (run.timed_out) return Unknown{"timeout"};

  SatOutcome outcome = parse_solver_output(run.output, formula.var_count());
  if (const auto* sat = std::get_if<Sat>(&outcome); sat && !satisfies(formula, sat->model)) {
    throw Error(ErrorCode::parse_failure, "external solver model violates the formula");
  }
  return outcome;
}

}  // namespace plotting::cnf
