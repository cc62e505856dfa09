#pragma once

#include <atomic>
#include <filesystem>
#include <string>

#include <unistd.h>

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static std::atomic<int> serial{0};
    path = std::filesystem::temp_directory_path() /
           ("wrtkit-test-" + std::to_string(::getpid()) + "-" + std::to_string(serial++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};
