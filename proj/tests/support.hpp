#pragma once

#include <filesystem>
#include <string>
#include <unistd.h>

#include "rwov/common.hpp"

namespace testing {

// Fresh scratch directory under the system temp dir, removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("rwov-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

template <typename F>
rwov::ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const rwov::Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected an rwov::Error");
}

}  // namespace testing
