// Copyright 2026 The sleepcat Authors.
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

#ifndef SLEEPCAT_HARNESS_SEEDING_HPP
#define SLEEPCAT_HARNESS_SEEDING_HPP

#include <sleepcat/harness/format.hpp>

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sleepcat::harness {

using Sha256 = std::array<unsigned char, 32>;

/// Incremental SHA-256.
class Sha256Hasher {
 public:
  Sha256Hasher() : ctx_(EVP_MD_CTX_new()) {
    if (ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) {
      EVP_MD_CTX_free(ctx_);
      throw std::runtime_error("SHA-256 initialisation failed");
    }
  }
  Sha256Hasher(const Sha256Hasher&) = delete;
  Sha256Hasher& operator=(const Sha256Hasher&) = delete;
  ~Sha256Hasher() { EVP_MD_CTX_free(ctx_); }

  void update(std::string_view data) {
    if (EVP_DigestUpdate(ctx_, data.data(), data.size()) != 1) throw std::runtime_error("SHA-256 update failed");
  }

  Sha256 finish() {
    Sha256 out{};
    unsigned int length = 0;
    if (EVP_DigestFinal_ex(ctx_, out.data(), &length) != 1 || length != out.size()) {
      throw std::runtime_error("SHA-256 finalisation failed");
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

inline std::string to_hex(const Sha256& digest) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned char byte : digest) {
    out.push_back(kHex[byte >> 4]);
    out.push_back(kHex[byte & 0xf]);
  }
  return out;
}

inline std::string sha256_hex(std::string_view data) {
  Sha256Hasher hasher;
  hasher.update(data);
  return to_hex(hasher.finish());
}

/// Seed of one random stream: the first 8 bytes of SHA-256 over the stream's coordinates.
/// `replicate` is empty for streams shared across replicates.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view experiment, double sweep_value,
                                 std::optional<int> replicate, std::string_view label) {
  const std::string key = "sleepcat/seed/v1|master=" + std::to_string(master_seed) + "|experiment=" +
                          std::string(experiment) + "|sweep=" + format_double(sweep_value) +
                          "|replicate=" + (replicate ? std::to_string(*replicate) : std::string("shared")) +
                          "|stream=" + std::string(label);
  Sha256Hasher hasher;
  hasher.update(key);
  const Sha256 digest = hasher.finish();
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed = (seed << 8) | digest[static_cast<std::size_t>(i)];
  return seed;
}

}  // namespace sleepcat::harness

#endif
