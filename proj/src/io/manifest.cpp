#include <array>
#include <ctime>

#include <json.hpp>
#include <openssl/evp.h>

#include "seqmeta/io.hpp"

namespace seqmeta::io {

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::Io, "SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

std::string text_digest(std::string_view text) {
  std::string normalized;
  normalized.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n') continue;
    normalized += text[i];
  }
  return sha256_hex(normalized);
}

std::string tool_version() { return SEQMETA_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  const std::size_t n = std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf.data(), n);
}

std::string manifest_to_json(const RunManifest& manifest, std::string_view extra_json) {
  nlohmann::ordered_json out;
  out["tool_version"] = manifest.tool_version;
  out["config_digest"] = manifest.config_digest;
  out["input_digest"] = manifest.input_digest;
  if (manifest.rng_identity) out["rng_identity"] = *manifest.rng_identity;
  out["timestamp"] = manifest.timestamp;
  if (!extra_json.empty()) {
    const auto extra = nlohmann::ordered_json::parse(extra_json);
    for (const auto& [key, value] : extra.items()) out[key] = value;
  }
  return out.dump(2) + "\n";
}

}  // namespace seqmeta::io
