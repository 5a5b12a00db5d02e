/*
 * Copyright 2026 The Cortex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "core/blackbox.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>

#include "core/error.hpp"
#include "core/text.hpp"

namespace cortex {

std::string DescribeSource(const PredictorSource& source) {
  if (const auto* file = std::get_if<PredictionFile>(&source)) {
    return "prediction file '" + file->path + "' (column '" + file->column + "')";
  }
  return "oracle command '" + std::get<SubprocessOracle>(source).command + "'";
}

namespace {

std::vector<ClassIndex> FromPredictionFile(const PredictionFile& file,
                                           const Dataset& samples) {
  auto records = text::ParseCsv(text::ReadFile(file.path));
  std::erase_if(records, [](const text::CsvRow& r) {
    return r.size() == 1 && text::Trim(r[0]).empty();
  });
  if (records.empty()) ThrowData("prediction file '" + file.path + "' is empty");
  const auto& header = records.front();
  size_t column = 0;
  if (header.size() > 1) {
    const auto it = std::find_if(header.begin(), header.end(), [&](const std::string& h) {
      return text::Trim(h) == file.column;
    });
    if (it == header.end()) {
      ThrowData("prediction file '" + file.path + "' has no column '" + file.column + "'");
    }
    column = static_cast<size_t>(it - header.begin());
  }
  const size_t rows = records.size() - 1;
  if (rows != samples.source_rows()) {
    ThrowData("prediction file '" + file.path + "' has " + std::to_string(rows) +
              " rows but the data has " + std::to_string(samples.source_rows()));
  }
  std::vector<ClassIndex> out;
  out.reserve(samples.num_rows());
  for (size_t id : samples.row_ids()) {
    const auto& rec = records[id + 1];
    if (rec.size() != header.size()) {
      ThrowData("prediction file '" + file.path + "': ragged row " +
                std::to_string(id + 2));
    }
    const auto name = text::Trim(rec[column]);
    const auto label = samples.schema().FindClass(name);
    if (!label) {
      ThrowData("prediction file '" + file.path + "': unknown class name '" +
                std::string(name) + "'");
    }
    out.push_back(*label);
  }
  return out;
}

}  // namespace

std::string OracleRequest(const Dataset& samples) {
  const auto names = samples.schema().FeatureNames();
  std::string out = text::CsvLine(names) + "\n";
  for (size_t i = 0; i < samples.num_rows(); ++i) {
    const auto row = samples.row(i);
    for (size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += ',';
      out += text::FormatDouble(row[j]);
    }
    out += '\n';
  }
  return out;
}

std::vector<ClassIndex> ParseOracleResponse(std::string_view response, size_t rows,
                                            const FeatureSchema& schema) {
  if (!response.empty() && response.back() != '\n') {
    ThrowOracle("oracle output is not newline-terminated");
  }
  std::vector<ClassIndex> out;
  while (!response.empty()) {
    const auto nl = response.find('\n');
    const auto line = response.substr(0, nl);
    response.remove_prefix(nl + 1);
    const auto label = schema.FindClass(line);
    if (!label) ThrowOracle("oracle returned unknown class name '" + std::string(line) + "'");
    out.push_back(*label);
  }
  if (out.size() != rows) {
    ThrowOracle("oracle returned " + std::to_string(out.size()) + " labels for " +
                std::to_string(rows) + " rows");
  }
  return out;
}

namespace {

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }
  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
};

[[noreturn]] void ThrowErrno(const std::string& what) {
  ThrowOracle(what + ": " + std::strerror(errno));
}

}  // namespace

ProcessResult RunProcess(const std::string& command, const std::string& working_directory,
                         std::string_view input, double timeout_seconds) {
  // stdin is a socket so that writes after the child quits fail with EPIPE
  // (MSG_NOSIGNAL) instead of raising SIGPIPE in the host process.
  int in_pair[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, in_pair) != 0) {
    ThrowErrno("socketpair");
  }
  Fd child_in(in_pair[0]), parent_in(in_pair[1]);
  int out_pipe[2], err_pipe[2];
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) ThrowErrno("pipe");
  Fd parent_out(out_pipe[0]), child_out(out_pipe[1]);
  if (::pipe2(err_pipe, O_CLOEXEC) != 0) ThrowErrno("pipe");
  Fd parent_err(err_pipe[0]), child_err(err_pipe[1]);

  const char* cwd = working_directory.empty() ? nullptr : working_directory.c_str();
  const pid_t pid = ::fork();
  if (pid < 0) ThrowErrno("fork");
  if (pid == 0) {
    if (::dup2(child_in.get(), STDIN_FILENO) < 0 ||
        ::dup2(child_out.get(), STDOUT_FILENO) < 0 ||
        ::dup2(child_err.get(), STDERR_FILENO) < 0) {
      ::_exit(127);
    }
    if (cwd != nullptr && ::chdir(cwd) != 0) ::_exit(126);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  child_in.reset();
  child_out.reset();
  child_err.reset();
  for (int fd : {parent_in.get(), parent_out.get(), parent_err.get()}) {
    ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK);
  }

  ProcessResult result;
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(timeout_seconds));
  size_t written = 0;
  if (input.empty()) parent_in.reset();
  bool out_open = true, err_open = true;
  char buffer[65536];
  bool timed_out = false;

  while (out_open || err_open) {
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      timed_out = true;
      break;
    }
    const auto wait_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    pollfd fds[3];
    nfds_t count = 0;
    int in_slot = -1, out_slot = -1, err_slot = -1;
    if (parent_in.get() >= 0) {
      in_slot = static_cast<int>(count);
      fds[count++] = {parent_in.get(), POLLOUT, 0};
    }
    if (out_open) {
      out_slot = static_cast<int>(count);
      fds[count++] = {parent_out.get(), POLLIN, 0};
    }
    if (err_open) {
      err_slot = static_cast<int>(count);
      fds[count++] = {parent_err.get(), POLLIN, 0};
    }
    const int ready = ::poll(fds, count, static_cast<int>(std::min<long long>(wait_ms + 1, 1000)));
    if (ready < 0) {
      if (errno == EINTR) continue;
      ::kill(pid, SIGKILL);
      ::waitpid(pid, nullptr, 0);
      ThrowErrno("poll");
    }
    if (in_slot >= 0 && fds[in_slot].revents != 0) {
      const ssize_t n = ::send(parent_in.get(), input.data() + written,
                               input.size() - written, MSG_NOSIGNAL);
      if (n > 0) written += static_cast<size_t>(n);
      if (n < 0 && errno != EAGAIN && errno != EINTR) {
        // The child stopped reading; its exit status decides the outcome.
        parent_in.reset();
      } else if (written == input.size()) {
        parent_in.reset();
      }
    }
    auto drain = [&](int slot, const Fd& fd, std::string& sink, bool& open) {
      if (slot < 0 || fds[slot].revents == 0) return;
      const ssize_t n = ::read(fd.get(), buffer, sizeof(buffer));
      if (n > 0) {
        sink.append(buffer, static_cast<size_t>(n));
      } else if (n == 0 || (errno != EAGAIN && errno != EINTR)) {
        open = false;
      }
    };
    drain(out_slot, parent_out, result.out, out_open);
    drain(err_slot, parent_err, result.err, err_open);
  }

  if (timed_out) {
    ::kill(pid, SIGKILL);
    ::waitpid(pid, nullptr, 0);
    ThrowOracle("oracle command timed out after " + text::FormatDouble(timeout_seconds) +
                " s: " + command);
  }
  parent_in.reset();
  int status = 0;
  for (;;) {
    const pid_t done = ::waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0 && errno != EINTR) ThrowErrno("waitpid");
    if (std::chrono::steady_clock::now() >= deadline) {
      ::kill(pid, SIGKILL);
      ::waitpid(pid, nullptr, 0);
      ThrowOracle("oracle command timed out after " +
                  text::FormatDouble(timeout_seconds) + " s: " + command);
    }
    ::usleep(2000);
  }
  if (WIFEXITED(status)) {
    result.exit_status = WEXITSTATUS(status);
  } else {
    result.exit_status = 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
  }
  return result;
}

std::vector<ClassIndex> GetPredictions(const PredictorSource& source,
                                       const Dataset& samples) {
  if (const auto* file = std::get_if<PredictionFile>(&source)) {
    return FromPredictionFile(*file, samples);
  }
  const auto& oracle = std::get<SubprocessOracle>(source);
  if (oracle.command.empty()) ThrowConfig("empty oracle command");
  if (!(oracle.timeout_seconds > 0.0)) ThrowConfig("oracle timeout must be positive");
  const auto result = RunProcess(oracle.command, oracle.working_directory,
                                 OracleRequest(samples), oracle.timeout_seconds);
  if (result.exit_status != 0) {
    std::string err = result.err.substr(0, 2000);
    ThrowOracle("oracle command exited with status " +
                std::to_string(result.exit_status) +
                (err.empty() ? std::string() : ": " + err));
  }
  return ParseOracleResponse(result.out, samples.num_rows(), samples.schema());
}

}  // namespace cortex
