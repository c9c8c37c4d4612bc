#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace uuvloc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitConfigError = 2;

struct RecoverArgs {
  std::filesystem::path config;
  std::filesystem::path input;
  std::filesystem::path output;
};

struct EvaluateArgs {
  std::filesystem::path config;
  std::filesystem::path input;  ///< trajectory written by recover
  std::filesystem::path gt;
  std::optional<std::filesystem::path> output;  ///< stdout when absent
};

struct SimulateArgs {
  std::filesystem::path config;
  std::filesystem::path output;  ///< observation log
  std::filesystem::path gt;
  std::optional<std::uint64_t> seed;  ///< overrides the config seed
};

// Each command returns a process exit code and reports diagnostics on `err`.
// recover also writes `<output>.excluded.csv` listing rejected rows.
int run_recover(const RecoverArgs& args, std::ostream& err);
int run_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);
int run_simulate(const SimulateArgs& args, std::ostream& err);

}  // namespace uuvloc
