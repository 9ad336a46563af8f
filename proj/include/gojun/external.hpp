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

// Client side of the external-scorer protocol: line-delimited JSON over a
// child process's stdin/stdout or a TCP socket.
//
//   both ways, first line:  {"proto": 1}
//   request:                {"id": 7, "dir": "fwd", "text": "..."}
//   response:               {"id": 7, "logp": -12.25}
//
// Responses may arrive in any order; ids tie them back to requests.

#ifndef GOJUN_EXTERNAL_HPP_
#define GOJUN_EXTERNAL_HPP_

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gojun/ngram.hpp"

namespace gojun {

inline constexpr int kProtocolVersion = 1;

std::string encode_handshake();
std::string encode_request(std::int64_t id, Direction direction, std::string_view text);

struct ProtocolResponse {
  std::int64_t id = 0;
  double logp = 0.0;
};

// Throws PROTOCOL_ERROR for malformed lines and error responses.
ProtocolResponse decode_response(std::string_view line);
void check_handshake(std::string_view line);

class ExternalScorerClient {
 public:
  using Clock = std::chrono::steady_clock;
  static constexpr std::chrono::milliseconds kDefaultTimeout{30000};

  // Runs `command` through /bin/sh and speaks the protocol over its pipes.
  static std::shared_ptr<ExternalScorerClient> spawn(
      const std::string& command, std::chrono::milliseconds timeout = kDefaultTimeout);
  // Connects to host:port.
  static std::shared_ptr<ExternalScorerClient> connect(
      const std::string& host, int port, std::chrono::milliseconds timeout = kDefaultTimeout);

  ExternalScorerClient(const ExternalScorerClient&) = delete;
  ExternalScorerClient& operator=(const ExternalScorerClient&) = delete;
  ~ExternalScorerClient();

  // One log-probability per text, in request order. Requests are pipelined;
  // the connection is used by one batch at a time.
  std::vector<double> score(std::span<const std::string> texts, Direction direction);

 private:
  ExternalScorerClient(int read_fd, int write_fd, int child_pid,
                       std::chrono::milliseconds timeout);
  void handshake();
  // Writes `out` while collecting complete lines until `wanted` lines are in.
  std::vector<std::string> exchange(std::string out, std::size_t wanted);
  void shutdown();

  int read_fd_ = -1;
  int write_fd_ = -1;
  int child_pid_ = -1;
  std::chrono::milliseconds timeout_;
  std::string pending_;  // bytes read past the last complete line
  std::int64_t next_id_ = 1;
  bool broken_ = false;
  std::mutex mutex_;
};

std::vector<double> score_external(ExternalScorerClient& client, std::span<const std::string> texts,
                                   Direction direction = Direction::kForward);

}  // namespace gojun

#endif  // GOJUN_EXTERNAL_HPP_
