#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "senlex/solver.hpp"
#include "senlex/synthgen.hpp"

namespace senlex {

/// Configuration or usage problems; the CLI maps these to exit code 2,
/// runtime failures to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PipelineConfig {
  std::filesystem::path corpus;
  std::string corpus_format = "jsonl";
  std::filesystem::path output_dir = "out";

  std::filesystem::path words_positive;
  std::filesystem::path words_negative;
  std::optional<std::filesystem::path> words_negation, words_and, words_but;
  std::optional<std::filesystem::path> seeds_positive, seeds_negative;
  std::string words_format = "plain";  // plain | mpqa

  long freq_threshold = 10;
  double pmi_threshold = 0.005;
  double cor_threshold = 0.05;
  std::vector<std::string> discriminators;
  int min_count = 1;
  std::string opinion_profile = "adj";  // adj | adj_verb

  HyperParams hyper;

  std::optional<std::filesystem::path> gold, pool, annotations;
  std::string method = "classify";  // review labelling method for `classify`
  bool knockout = false;
  std::array<std::vector<double>, 4> sweep;  // per-lambda sweep values

  SyntheticSpec synth;
};

/// Flat key-value config file: `key = value` lines, '#' comments.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Applies one key. Paths are resolved against base_dir when relative.
/// Throws ConfigError on unknown keys or unparsable values.
void apply_config_entry(PipelineConfig& cfg, const std::string& key,
                        const std::string& value,
                        const std::filesystem::path& base_dir);

/// defaults -> config file entries -> command-line overrides.
PipelineConfig make_config(
    const std::optional<std::filesystem::path>& config_path,
    const std::vector<std::pair<std::string, std::string>>& overrides);

void write_effective_config(const PipelineConfig& cfg, const std::filesystem::path& path);

// Stage entry points. Each consumes only configuration and files produced by
// earlier stages, so later stages can be re-run on their own.
void run_stats(const PipelineConfig& cfg);
void run_classify(const PipelineConfig& cfg);
void run_extract(const PipelineConfig& cfg);
void run_solve(const PipelineConfig& cfg);
void run_eval(const PipelineConfig& cfg);
void run_pipeline(const PipelineConfig& cfg);
void run_synth(const PipelineConfig& cfg);

}  // namespace senlex
