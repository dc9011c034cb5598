#ifndef DQA_CLI_HPP
#define DQA_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace dqa::cli {

inline constexpr const char *kSchemaVersion = "1";
inline constexpr const char *kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct Args {
  std::optional<std::string> input;
  // Used instead of reading `input` when set (tests, stdin).
  std::optional<std::string> input_text;
  std::optional<unsigned> degree_cap;
  std::uint64_t seed = 0;
  std::uint32_t p_max = 1000;
  std::optional<std::string> tag;
  std::optional<std::size_t> n;
  std::optional<std::uint32_t> p;
  std::size_t max_unknowns = 2500;
};

enum ExitCode { ok = 0, falsified = 1, input_error = 2 };

struct Result {
  int exit_code = ok;
  Json report;
  std::string text;
};

const std::vector<std::string> &commands();

// Never throws for bad input; failures come back as exit code 2 with the
// message in the report.
Result run(const std::string &command, const Args &args);

std::string sha256_hex(const std::string &data);

} // namespace dqa::cli

#endif
