#pragma once

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <string>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include "igt/error.hpp"

namespace igt {

namespace detail {

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  Fd(Fd&& o) noexcept : fd_(o.release()) {}
  Fd& operator=(Fd&& o) noexcept {
    reset(o.release());
    return *this;
  }
  ~Fd() { reset(); }

  int get() const { return fd_; }
  int release() {
    int fd = fd_;
    fd_ = -1;
    return fd;
  }
  void reset(int fd = -1) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = fd;
  }

 private:
  int fd_ = -1;
};

class SigpipeGuard {
 public:
  SigpipeGuard() { old_ = std::signal(SIGPIPE, SIG_IGN); }
  ~SigpipeGuard() { std::signal(SIGPIPE, old_); }
  SigpipeGuard(const SigpipeGuard&) = delete;
  SigpipeGuard& operator=(const SigpipeGuard&) = delete;

 private:
  void (*old_)(int) = SIG_DFL;
};

}  // namespace detail

/// Runs `command` under /bin/sh, streams `lines` (one per line) to its
/// standard input, closes it, and returns standard output split into lines.
/// The whole exchange must finish within `timeout_seconds`.
inline std::vector<std::string> run_line_filter(const std::string& command, const std::vector<std::string>& lines,
                                                double timeout_seconds) {
  int in_pipe[2], out_pipe[2];
  if (::pipe(in_pipe) != 0) throw Error(ErrorCode::TranslatorSpawnFailure, std::strerror(errno));
  detail::Fd in_r(in_pipe[0]), in_w(in_pipe[1]);
  if (::pipe(out_pipe) != 0) throw Error(ErrorCode::TranslatorSpawnFailure, std::strerror(errno));
  detail::Fd out_r(out_pipe[0]), out_w(out_pipe[1]);

  detail::SigpipeGuard guard;
  const pid_t pid = ::fork();
  if (pid < 0) throw Error(ErrorCode::TranslatorSpawnFailure, std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in_r.get(), STDIN_FILENO);
    ::dup2(out_w.get(), STDOUT_FILENO);
    ::close(in_r.get());
    ::close(in_w.get());
    ::close(out_r.get());
    ::close(out_w.get());
    ::signal(SIGPIPE, SIG_DFL);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  in_r.reset();
  out_w.reset();

  std::string payload;
  for (const auto& l : lines) {
    payload += l;
    payload += '\n';
  }
  ::fcntl(in_w.get(), F_SETFL, ::fcntl(in_w.get(), F_GETFL) | O_NONBLOCK);
  if (payload.empty()) in_w.reset();

  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_seconds);
  std::size_t written = 0;
  std::string output;
  bool timed_out = false;
  char buf[65536];

  while (out_r.get() >= 0) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd fds[2];
    nfds_t n = 0;
    fds[n++] = {out_r.get(), POLLIN, 0};
    if (in_w.get() >= 0) fds[n++] = {in_w.get(), POLLOUT, 0};
    const int rc = ::poll(fds, n, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (n == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t w = ::write(in_w.get(), payload.data() + written, payload.size() - written);
      if (w > 0) written += static_cast<std::size_t>(w);
      if ((w < 0 && errno != EAGAIN && errno != EINTR) || written == payload.size()) in_w.reset();
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      const ssize_t r = ::read(out_r.get(), buf, sizeof buf);
      if (r > 0) output.append(buf, static_cast<std::size_t>(r));
      else if (r == 0 || (errno != EAGAIN && errno != EINTR)) out_r.reset();
    }
  }
  in_w.reset();
  out_r.reset();

  int status = 0;
  if (timed_out) {
    ::kill(pid, SIGKILL);
    ::waitpid(pid, &status, 0);
    throw Error(ErrorCode::TranslatorTimeout,
                "translator did not finish within " + std::to_string(timeout_seconds) + " s");
  }
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    throw Error(ErrorCode::TranslatorSpawnFailure,
                "translator command '" + command + "' exited with status " + std::to_string(code));
  }

  std::vector<std::string> result;
  std::size_t start = 0;
  while (start < output.size()) {
    std::size_t end = output.find('\n', start);
    if (end == std::string::npos) end = output.size();
    std::string line = output.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    result.push_back(std::move(line));
    start = end + 1;
  }
  return result;
}

}  // namespace igt
