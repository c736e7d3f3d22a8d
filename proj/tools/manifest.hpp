#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wlh/io.hpp"

namespace wlh::tools {

/// File system failure while emitting run artifacts.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// Record of one CLI run: every emitted file with its content hash, plus the run parameters.
class Manifest {
 public:
  Manifest(std::string command, std::uint64_t seed, io::json parameters);

  /// Writes bytes to dir/name and records the hash. Throws IoError.
  void emit(const std::string& dir, const std::string& name, const std::string& bytes);
  void certificate(const std::string& name, io::json summary);
  void timing(const std::string& phase, double seconds);
  /// Writes dir/manifest.json (not itself listed) and the wall-clock timings to dir/timings.json.
  /// Timings live in the sidecar so equal runs give byte-identical manifests.
  void write(const std::string& dir) const;
  io::json to_json() const;

 private:
  std::string command_;
  std::uint64_t seed_;
  io::json parameters_;
  io::json artifacts_ = io::json::array();
  io::json certificates_ = io::json::object();
  io::json timings_ = io::json::object();
};

}  // namespace wlh::tools
