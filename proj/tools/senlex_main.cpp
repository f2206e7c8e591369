#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "senlex/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Every config key doubles as a --key flag; command-line values override the
// config file, which overrides the built-in defaults.
const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "corpus", "corpus_format", "output_dir",
      "words_positive", "words_negative", "words_negation", "words_and",
      "words_but", "seeds_positive", "seeds_negative", "words_format",
      "freq_threshold", "pmi_threshold", "cor_threshold", "discriminators",
      "min_count", "opinion_profile",
      "lambda1", "lambda2", "lambda3", "lambda4", "delta", "max_iters",
      "init_epsilon", "denom_guard",
      "gold", "pool", "annotations", "method", "knockout",
      "sweep_lambda1", "sweep_lambda2", "sweep_lambda3", "sweep_lambda4",
      "synth_pairs", "synth_reviews", "synth_seed", "synth_negation_rate",
      "synth_and_rate", "synth_but_rate", "synth_noise_rate",
      "synth_fixed_fraction"};
  return keys;
}

struct SubcommandState {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
};

void add_config_options(SubcommandState& state) {
  for (const std::string& key : config_keys()) {
    state.app->add_option_function<std::string>(
        "--" + key,
        [&state, key](const std::string& value) { state.values[key] = value; });
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"senlex: contextual sentiment lexicon construction pipeline"};
  app.require_subcommand(1);

  std::optional<std::filesystem::path> config_path;
  if (const char* env = std::getenv("SENLEX_CONFIG")) config_path = env;
  app.add_option_function<std::string>(
      "--config", [&](const std::string& p) { config_path = p; },
      "flat key=value config file (default: $SENLEX_CONFIG)");

  auto add_config_flag = [&config_path](CLI::App* cmd) {
    cmd->add_option_function<std::string>(
        "--config", [&config_path](const std::string& p) { config_path = p; },
        "flat key=value config file (default: $SENLEX_CONFIG)");
  };

  struct Command {
    const char* name;
    const char* help;
    void (*run)(const senlex::PipelineConfig&);
  };
  const Command commands[] = {
      {"stats", "rating-distribution statistics report", senlex::run_stats},
      {"classify", "review-level sentiment labels", senlex::run_classify},
      {"extract", "feature-opinion pairs, occurrences and constraint matrices",
       senlex::run_extract},
      {"solve", "polarity labelling from matrix dumps", senlex::run_solve},
      {"eval", "precision/recall/F reports, knockout and sweeps", senlex::run_eval},
      {"pipeline", "all stages in order", senlex::run_pipeline},
      {"synth", "generate a synthetic corpus bundle", senlex::run_synth},
  };

  std::vector<SubcommandState> states(std::size(commands));
  for (size_t i = 0; i < std::size(commands); ++i) {
    states[i].app = app.add_subcommand(commands[i].name, commands[i].help);
    add_config_flag(states[i].app);
    add_config_options(states[i]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  for (size_t i = 0; i < std::size(commands); ++i) {
    if (!states[i].app->parsed()) continue;
    try {
      std::vector<std::pair<std::string, std::string>> overrides(
          states[i].values.begin(), states[i].values.end());
      senlex::PipelineConfig cfg = senlex::make_config(config_path, overrides);
      commands[i].run(cfg);
      return kExitOk;
    } catch (const senlex::ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitRuntime;
    }
  }
  return kExitUsage;
}
