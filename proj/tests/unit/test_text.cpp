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

#include "doctest.h"

#include "gojun/error.hpp"
#include "gojun/random.hpp"
#include "gojun/text.hpp"

using namespace gojun;

TEST_CASE("trim and split") {
  CHECK(trim("  a b \t\n") == "a b");
  CHECK(trim("") == "");
  CHECK(split("a,,b", ',') == std::vector<std::string>{"a", "", "b"});
  CHECK(split_whitespace("  x  y\tz ") == std::vector<std::string>{"x", "y", "z"});
  CHECK(ends_with("report.jsonl", ".jsonl"));
  CHECK_FALSE(ends_with("l", ".jsonl"));
  CHECK(ascii_lower("TiM") == "tim");
}

TEST_CASE("utf8 characters") {
  CHECK(utf8_chars("本をa") == std::vector<std::string>{"本", "を", "a"});
  CHECK(utf8_length("先生が") == 3);
  CHECK(utf8_length("") == 0);
}

TEST_CASE("format_fixed") {
  CHECK(format_fixed(1.0 / 3.0) == "0.333333");
  CHECK(format_fixed(-2.5, 2) == "-2.50");
  CHECK(format_fixed(0.0) == "0.000000");
}

TEST_CASE("error messages carry the code name") {
  const Error e(ErrorCode::kTooManyOrders, "site has 9 children");
  CHECK(std::string(e.what()) == "TOO_MANY_ORDERS: site has 9 children");
  CHECK(error_code_name(ErrorCode::kZeroJoint) == "ZERO_JOINT");
}

TEST_CASE("rng streams are reproducible and seed-derived") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  Rng r(7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.uniform_index(5) < 5);
    const double u = r.uniform_real();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  std::vector<int> v{1, 2, 3, 4, 5, 6};
  Rng s(3);
  s.shuffle(v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{1, 2, 3, 4, 5, 6});
}
