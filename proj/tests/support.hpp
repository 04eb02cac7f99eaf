// Shared helpers for the test binaries: fixture locations, subprocess
// execution, and small builders.
#ifndef AREX_TESTS_SUPPORT_HPP
#define AREX_TESTS_SUPPORT_HPP

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arex/strings.hpp"
#include "arex/types.hpp"

namespace arex::test {

inline std::filesystem::path fixtures_dir() {
  const char* env = std::getenv("AREX_FIXTURES");
  if (env && *env) return env;
  return std::filesystem::path(__FILE__).parent_path() / "fixtures";
}

inline std::string cli_path() {
  const char* env = std::getenv("AREX_CLI");
  return env ? env : "";
}

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::filesystem::path& file,
                       const std::string& content) {
  std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  out << content;
}

inline std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir =
      std::filesystem::temp_directory_path() / ("arex_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline Sentence make_sentence(const std::string& spaced_tokens) {
  return Sentence{split_words(spaced_tokens), SourceRef{}};
}

inline OptWords words(const std::string& spaced) {
  if (spaced.empty()) return std::nullopt;
  return split_words(spaced);
}

}  // namespace arex::test

#endif  // AREX_TESTS_SUPPORT_HPP
