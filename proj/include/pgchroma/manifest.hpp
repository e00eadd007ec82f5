#pragma once

// key=value run manifests with FNV-1a artifact hashes.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgchroma/error.hpp"

namespace pgchroma {

inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

inline std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return hex64(fnv1a(buf.str()));
}

/// Ordered key=value record of one CLI run.
class RunManifest {
 public:
  void set(std::string key, std::string value) {
    for (auto& [k, v] : fields_)
      if (k == key) {
        v = std::move(value);
        return;
      }
    fields_.emplace_back(std::move(key), std::move(value));
  }

  /// Records path and hash of an artifact already on disk.
  void artifact(const std::string& name, const std::string& path) {
    set(name, path);
    set(name + "_fnv1a", file_hash(path));
  }

  std::string text() const {
    std::string out;
    for (const auto& [k, v] : fields_) out += k + "=" + v + "\n";
    return out;
  }

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ParseError, "cannot open " + path + " for writing");
    out << text();
  }

  const std::vector<std::pair<std::string, std::string>>& fields() const noexcept { return fields_; }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

}  // namespace pgchroma
