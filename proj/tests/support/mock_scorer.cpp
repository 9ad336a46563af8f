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

// Scorer process for protocol tests. Answers {"proto":1} and then scores
// every request as minus its character count (backward requests see the
// reversed text, which scores the same).
//
//   mock_scorer [--shuffle] [--bad-id] [--dup-id] [--hang] [--error]
//               [--bad-handshake] [--exit-after N] [--bwd-offset X]

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Options {
  bool shuffle = false;
  bool bad_id = false;
  bool dup_id = false;
  bool hang = false;
  bool error = false;
  bool bad_handshake = false;
  long exit_after = -1;
  double bwd_offset = 0.0;
};

std::size_t char_count(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

void write_all(const std::string& s) {
  std::size_t off = 0;
  while (off < s.size()) {
    const ssize_t w = ::write(1, s.data() + off, s.size() - off);
    if (w <= 0) std::exit(0);
    off += static_cast<std::size_t>(w);
  }
}

std::string answer(const std::string& line, const Options& opt) {
  nlohmann::json req;
  try {
    req = nlohmann::json::parse(line);
  } catch (...) {
    return nlohmann::json{{"id", nullptr}, {"error", "malformed request"}}.dump();
  }
  if (opt.error) return nlohmann::json{{"id", req.value("id", 0)}, {"error", "refused"}}.dump();
  double logp = -static_cast<double>(char_count(req.value("text", "")));
  if (req.value("dir", "fwd") == "bwd") logp -= opt.bwd_offset;
  std::int64_t id = req.value("id", std::int64_t{0});
  if (opt.bad_id) id += 1000000;
  if (opt.dup_id) id = 1;
  return nlohmann::json{{"id", id}, {"logp", logp}}.dump();
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--shuffle") opt.shuffle = true;
    else if (a == "--bad-id") opt.bad_id = true;
    else if (a == "--dup-id") opt.dup_id = true;
    else if (a == "--hang") opt.hang = true;
    else if (a == "--error") opt.error = true;
    else if (a == "--bad-handshake") opt.bad_handshake = true;
    else if (a == "--exit-after" && i + 1 < argc) opt.exit_after = std::atol(argv[++i]);
    else if (a == "--bwd-offset" && i + 1 < argc) opt.bwd_offset = std::atof(argv[++i]);
    else {
      std::fprintf(stderr, "mock_scorer: unknown argument %s\n", a.c_str());
      return 2;
    }
  }

  std::string buffer;
  bool greeted = false;
  long answered = 0;
  char chunk[65536];
  for (;;) {
    const ssize_t n = ::read(0, chunk, sizeof chunk);
    if (n <= 0) return 0;
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::vector<std::string> lines;
    for (std::size_t pos; (pos = buffer.find('\n')) != std::string::npos;) {
      lines.push_back(buffer.substr(0, pos));
      buffer.erase(0, pos + 1);
    }
    std::vector<std::string> replies;
    for (const std::string& line : lines) {
      if (!greeted) {
        greeted = true;
        write_all(opt.bad_handshake ? "{\"proto\":99}\n" : "{\"proto\":1}\n");
        continue;
      }
      if (opt.hang) continue;
      if (opt.exit_after >= 0 && answered >= opt.exit_after) return 0;
      replies.push_back(answer(line, opt));
      ++answered;
    }
    // Whatever arrived in one read is answered in reverse order.
    if (opt.shuffle) std::reverse(replies.begin(), replies.end());
    std::string out;
    for (const auto& r : replies) out += r + "\n";
    write_all(out);
  }
}
