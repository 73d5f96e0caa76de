#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dephasing::cli {

enum class Command { Analyze, Simulate, Classify, Verify };

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kFailed = 1,          // verification failed or an I/O problem
  kParseError = 2,      // malformed input, bad flags, shape mismatch
  kLimitExceeded = 3,   // K or N beyond what the command supports
  kPairOutOfRange = 4,  // a requested register pair does not exist
};

struct RunConfig {
  Command command = Command::Analyze;
  std::string matrix_path;
  std::optional<std::string> env_path;
  /// Raw --pairs text; parsed against K once the matrix is loaded.
  std::optional<std::string> pairs;
  double t_max = 6.283185307179586;
  int t_steps = 64;
  std::optional<std::string> out_path;
};

/// Thrown for pairs that name a register state outside 0..2^K-1.
struct PairRangeError : std::exception {
  explicit PairRangeError(std::string m) : message(std::move(m)) {}
  const char* what() const noexcept override { return message.c_str(); }
  std::string message;
};

/// Parses "k:k2,k:k2,...". Each label is a decimal integer or an MSB-first
/// binary string prefixed with 'b' ("b0110"), which must have exactly
/// `register_size` digits.
std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_pairs(std::string_view text, int register_size);

/// Default simulate pairs: off-diagonal pairs of the largest class, at most 64.
inline constexpr std::size_t kMaxDefaultPairs = 64;

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line, argv[0] included.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dephasing::cli
