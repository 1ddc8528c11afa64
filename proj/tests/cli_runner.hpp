#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

namespace cli {

struct Result {
  int status = -1;
  std::string out;
};

/// Runs the prequant tool with `args`, capturing stdout (stderr is discarded).
inline Result run(const std::string& args) {
  const std::string cmd = std::string(PREQUANT_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

inline std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Report text with every wall_time value blanked.
inline std::string without_wall_time(const std::string& report) {
  static const std::regex wall("\"wall_time\": [^,\\n}]*");
  return std::regex_replace(report, wall, "\"wall_time\": _");
}

} // namespace cli
