#include "manifest.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace wlh::tools {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

Manifest::Manifest(std::string command, std::uint64_t seed, io::json parameters)
    : command_(std::move(command)), seed_(seed), parameters_(std::move(parameters)) {}

namespace {

void write_bytes(const std::string& dir, const std::string& name, const std::string& bytes) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
    throw IoError("cannot write " + path.string());
}

}  // namespace

void Manifest::emit(const std::string& dir, const std::string& name, const std::string& bytes) {
  write_bytes(dir, name, bytes);
  artifacts_.push_back({{"file", name}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
}

void Manifest::certificate(const std::string& name, io::json summary) { certificates_[name] = std::move(summary); }

void Manifest::timing(const std::string& phase, double seconds) { timings_[phase] = seconds; }

io::json Manifest::to_json() const {
  return {{"command", command_},
          {"seed", seed_},
          {"parameters", parameters_},
          {"artifacts", artifacts_},
          {"certificates", certificates_},
          {"timings_file", "timings.json"}};
}

void Manifest::write(const std::string& dir) const {
  write_bytes(dir, "manifest.json", to_json().dump(2) + "\n");
  write_bytes(dir, "timings.json", io::json{{"seconds", timings_}}.dump(2) + "\n");
}

}  // namespace wlh::tools
