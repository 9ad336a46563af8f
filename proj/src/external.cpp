// Copyright 2026 The gojun Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gojun/external.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <thread>
#include <unordered_map>

#include "json.hpp"

#include "gojun/error.hpp"

namespace gojun {

std::string encode_handshake() {
  return nlohmann::json{{"proto", kProtocolVersion}}.dump() + "\n";
}

std::string encode_request(std::int64_t id, Direction direction, std::string_view text) {
  nlohmann::json j;
  j["id"] = id;
  j["dir"] = to_string(direction);
  j["text"] = std::string(text);
  return j.dump() + "\n";
}

ProtocolResponse decode_response(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::kProtocol, "malformed response line: " + std::string(line));
  }
  if (!j.is_object()) throw Error(ErrorCode::kProtocol, "response is not an object");
  if (j.contains("error"))
    throw Error(ErrorCode::kProtocol, "scorer reported error: " + j["error"].dump());
  if (!j.contains("id") || !j["id"].is_number_integer() || !j.contains("logp") ||
      !j["logp"].is_number())
    throw Error(ErrorCode::kProtocol, "response lacks integer id or numeric logp: " +
                                          std::string(line));
  ProtocolResponse r{j["id"].get<std::int64_t>(), j["logp"].get<double>()};
  if (!std::isfinite(r.logp) && !(std::isinf(r.logp) && r.logp < 0))
    throw Error(ErrorCode::kProtocol, "logp is not a log-probability");
  return r;
}

void check_handshake(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::kProtocol, "malformed handshake: " + std::string(line));
  }
  if (!j.is_object() || !j.contains("proto") || j["proto"] != kProtocolVersion)
    throw Error(ErrorCode::kProtocol, "unexpected handshake: " + std::string(line));
}

namespace {

void ignore_sigpipe() {
  static const bool once = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)once;
}

[[noreturn]] void down(const std::string& what) {
  throw Error(ErrorCode::kExternalScorerDown, what);
}

}  // namespace

ExternalScorerClient::ExternalScorerClient(int read_fd, int write_fd, int child_pid,
                                           std::chrono::milliseconds timeout)
    : read_fd_(read_fd), write_fd_(write_fd), child_pid_(child_pid), timeout_(timeout) {
  ::fcntl(write_fd_, F_SETFL, ::fcntl(write_fd_, F_GETFL) | O_NONBLOCK);
  ::fcntl(read_fd_, F_SETFL, ::fcntl(read_fd_, F_GETFL) | O_NONBLOCK);
}

std::shared_ptr<ExternalScorerClient> ExternalScorerClient::spawn(
    const std::string& command, std::chrono::milliseconds timeout) {
  ignore_sigpipe();
  int to_child[2], from_child[2];
  if (::pipe(to_child) != 0) down("pipe: " + std::string(std::strerror(errno)));
  if (::pipe(from_child) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    down("pipe: " + std::string(std::strerror(errno)));
  }
  const pid_t pid = ::fork();
  if (pid < 0) down("fork: " + std::string(std::strerror(errno)));
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::close(to_child[0]);
    ::close(to_child[1]);
    ::close(from_child[0]);
    ::close(from_child[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  ::fcntl(to_child[1], F_SETFD, FD_CLOEXEC);
  ::fcntl(from_child[0], F_SETFD, FD_CLOEXEC);
  std::shared_ptr<ExternalScorerClient> client(
      new ExternalScorerClient(from_child[0], to_child[1], pid, timeout));
  client->handshake();
  return client;
}

std::shared_ptr<ExternalScorerClient> ExternalScorerClient::connect(
    const std::string& host, int port, std::chrono::milliseconds timeout) {
  ignore_sigpipe();
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (::getaddrinfo(host.c_str(), service.c_str(), &hints, &res) != 0 || !res)
    down("cannot resolve " + host + ":" + service);
  int fd = -1;
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) down("cannot connect to " + host + ":" + service);
  const int write_fd = ::fcntl(fd, F_DUPFD_CLOEXEC, 0);
  std::shared_ptr<ExternalScorerClient> client(
      new ExternalScorerClient(fd, write_fd, -1, timeout));
  client->handshake();
  return client;
}

ExternalScorerClient::~ExternalScorerClient() { shutdown(); }

void ExternalScorerClient::shutdown() {
  if (write_fd_ >= 0) ::close(write_fd_);
  if (read_fd_ >= 0) ::close(read_fd_);
  write_fd_ = read_fd_ = -1;
  if (child_pid_ > 0) {
    // End of input asks the child to exit; give it a moment before SIGKILL.
    for (int i = 0; i < 100; ++i) {
      if (::waitpid(child_pid_, nullptr, WNOHANG) == child_pid_) {
        child_pid_ = -1;
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    ::kill(child_pid_, SIGKILL);
    ::waitpid(child_pid_, nullptr, 0);
    child_pid_ = -1;
  }
}

void ExternalScorerClient::handshake() {
  const auto lines = exchange(encode_handshake(), 1);
  try {
    check_handshake(lines.front());
  } catch (const Error&) {
    broken_ = true;
    throw;
  }
}

std::vector<std::string> ExternalScorerClient::exchange(std::string out, std::size_t wanted) {
  if (broken_) down("connection is no longer usable");
  std::vector<std::string> lines;
  std::size_t written = 0;
  auto deadline = Clock::now() + timeout_;
  char buf[65536];
  auto take_lines = [&] {
    std::size_t start = 0;
    for (;;) {
      auto nl = pending_.find('\n', start);
      if (nl == std::string::npos || lines.size() == wanted) break;
      std::string line = pending_.substr(start, nl - start);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) lines.push_back(std::move(line));
      start = nl + 1;
    }
    pending_.erase(0, start);
  };
  take_lines();
  while (written < out.size() || lines.size() < wanted) {
    const auto left =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
    if (left <= 0) {
      broken_ = true;
      down("no response within " + std::to_string(timeout_.count()) + " ms");
    }
    pollfd fds[2];
    nfds_t n = 0;
    fds[n++] = {read_fd_, POLLIN, 0};
    if (written < out.size()) fds[n++] = {write_fd_, POLLOUT, 0};
    const int rc = ::poll(fds, n, static_cast<int>(left));
    if (rc < 0) {
      if (errno == EINTR) continue;
      broken_ = true;
      down("poll: " + std::string(std::strerror(errno)));
    }
    if (rc == 0) continue;
    if (n == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t w = ::write(write_fd_, out.data() + written, out.size() - written);
      if (w < 0 && errno != EAGAIN && errno != EINTR) {
        broken_ = true;
        down("write to scorer failed: " + std::string(std::strerror(errno)));
      }
      if (w > 0) {
        written += static_cast<std::size_t>(w);
        deadline = Clock::now() + timeout_;
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      const ssize_t r = ::read(read_fd_, buf, sizeof buf);
      if (r == 0) {
        broken_ = true;
        down("scorer closed its output");
      }
      if (r < 0 && errno != EAGAIN && errno != EINTR) {
        broken_ = true;
        down("read from scorer failed: " + std::string(std::strerror(errno)));
      }
      if (r > 0) {
        pending_.append(buf, static_cast<std::size_t>(r));
        deadline = Clock::now() + timeout_;
        take_lines();
      }
    }
  }
  return lines;
}

std::vector<double> ExternalScorerClient::score(std::span<const std::string> texts,
                                                Direction direction) {
  if (texts.empty()) return {};
  std::lock_guard lock(mutex_);
  std::unordered_map<std::int64_t, std::size_t> slot;
  std::string out;
  const std::int64_t first = next_id_;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const std::int64_t id = next_id_++;
    slot.emplace(id, i);
    out += encode_request(id, direction, texts[i]);
  }
  const auto lines = exchange(std::move(out), texts.size());
  std::vector<double> result(texts.size(), 0.0);
  std::vector<bool> seen(texts.size(), false);
  for (const auto& line : lines) {
    ProtocolResponse r;
    try {
      r = decode_response(line);
    } catch (const Error&) {
      broken_ = true;
      throw;
    }
    auto it = slot.find(r.id);
    if (it == slot.end() || seen[it->second]) {
      broken_ = true;
      throw Error(ErrorCode::kProtocol, "response id " + std::to_string(r.id) +
                                            " does not match an outstanding request (ids " +
                                            std::to_string(first) + ".." +
                                            std::to_string(next_id_ - 1) + ")");
    }
    seen[it->second] = true;
    result[it->second] = r.logp;
  }
  return result;
}

std::vector<double> score_external(ExternalScorerClient& client, std::span<const std::string> texts,
                                   Direction direction) {
  return client.score(texts, direction);
}

}  // namespace gojun
