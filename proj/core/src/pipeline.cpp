#include "senlex/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "senlex/classifier.hpp"
#include "senlex/constraints.hpp"
#include "senlex/eval.hpp"
#include "senlex/extraction.hpp"
#include "senlex/matrix_io.hpp"

namespace senlex {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::filesystem::path resolve(const std::string& value,
                              const std::filesystem::path& base_dir) {
  std::filesystem::path p(value);
  if (p.is_relative() && !base_dir.empty()) return base_dir / p;
  return p;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse number '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse integer '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw ConfigError("config key '" + key + "': cannot parse boolean '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(value);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> split_doubles(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const std::string& item : split_list(value))
    out.push_back(parse_double(key, item));
  return out;
}

void require_file(const std::filesystem::path& p, const std::string& what) {
  if (p.empty()) throw ConfigError("missing config value: " + what);
  if (!std::filesystem::exists(p))
    throw ConfigError(what + " does not exist: " + p.string());
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::map<std::string, std::string> entries;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string stripped = trim(line);
    if (stripped.empty()) continue;
    size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    entries[key] = value;
  }
  return entries;
}

void apply_config_entry(PipelineConfig& cfg, const std::string& key,
                        const std::string& value,
                        const std::filesystem::path& base_dir) {
  auto path_of = [&]() { return resolve(value, base_dir); };
  if (key == "corpus") cfg.corpus = path_of();
  else if (key == "corpus_format") cfg.corpus_format = value;
  else if (key == "output_dir") cfg.output_dir = path_of();
  else if (key == "words_positive") cfg.words_positive = path_of();
  else if (key == "words_negative") cfg.words_negative = path_of();
  else if (key == "words_negation") cfg.words_negation = path_of();
  else if (key == "words_and") cfg.words_and = path_of();
  else if (key == "words_but") cfg.words_but = path_of();
  else if (key == "seeds_positive") cfg.seeds_positive = path_of();
  else if (key == "seeds_negative") cfg.seeds_negative = path_of();
  else if (key == "words_format") cfg.words_format = value;
  else if (key == "freq_threshold") cfg.freq_threshold = parse_long(key, value);
  else if (key == "pmi_threshold") cfg.pmi_threshold = parse_double(key, value);
  else if (key == "cor_threshold") cfg.cor_threshold = parse_double(key, value);
  else if (key == "discriminators") cfg.discriminators = split_list(value);
  else if (key == "min_count") cfg.min_count = static_cast<int>(parse_long(key, value));
  else if (key == "opinion_profile") cfg.opinion_profile = value;
  else if (key == "lambda1") cfg.hyper.lambda1 = parse_double(key, value);
  else if (key == "lambda2") cfg.hyper.lambda2 = parse_double(key, value);
  else if (key == "lambda3") cfg.hyper.lambda3 = parse_double(key, value);
  else if (key == "lambda4") cfg.hyper.lambda4 = parse_double(key, value);
  else if (key == "delta") cfg.hyper.delta = parse_double(key, value);
  else if (key == "max_iters") cfg.hyper.max_iters = static_cast<int>(parse_long(key, value));
  else if (key == "init_epsilon") cfg.hyper.init_epsilon = parse_double(key, value);
  else if (key == "denom_guard") cfg.hyper.denom_guard = parse_double(key, value);
  else if (key == "gold") cfg.gold = path_of();
  else if (key == "pool") cfg.pool = path_of();
  else if (key == "annotations") cfg.annotations = path_of();
  else if (key == "method") cfg.method = value;
  else if (key == "knockout") cfg.knockout = parse_bool(key, value);
  else if (key == "sweep_lambda1") cfg.sweep[0] = split_doubles(key, value);
  else if (key == "sweep_lambda2") cfg.sweep[1] = split_doubles(key, value);
  else if (key == "sweep_lambda3") cfg.sweep[2] = split_doubles(key, value);
  else if (key == "sweep_lambda4") cfg.sweep[3] = split_doubles(key, value);
  else if (key == "synth_pairs") cfg.synth.n_pairs = static_cast<int>(parse_long(key, value));
  else if (key == "synth_reviews") cfg.synth.n_reviews = static_cast<int>(parse_long(key, value));
  else if (key == "synth_seed") cfg.synth.seed = static_cast<std::uint64_t>(parse_long(key, value));
  else if (key == "synth_negation_rate") cfg.synth.negation_rate = parse_double(key, value);
  else if (key == "synth_and_rate") cfg.synth.and_rate = parse_double(key, value);
  else if (key == "synth_but_rate") cfg.synth.but_rate = parse_double(key, value);
  else if (key == "synth_noise_rate") cfg.synth.noise_rate = parse_double(key, value);
  else if (key == "synth_fixed_fraction") cfg.synth.fixed_fraction = parse_double(key, value);
  else throw ConfigError("unknown config key: '" + key + "'");
}

PipelineConfig make_config(
    const std::optional<std::filesystem::path>& config_path,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  PipelineConfig cfg;
  if (config_path) {
    std::filesystem::path base = config_path->parent_path();
    for (const auto& [key, value] : read_config_file(*config_path))
      apply_config_entry(cfg, key, value, base);
  }
  for (const auto& [key, value] : overrides)
    apply_config_entry(cfg, key, value, std::filesystem::current_path());
  return cfg;
}

void write_effective_config(const PipelineConfig& cfg, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  out << "corpus = " << cfg.corpus.string() << '\n'
      << "corpus_format = " << cfg.corpus_format << '\n'
      << "output_dir = " << cfg.output_dir.string() << '\n'
      << "words_positive = " << cfg.words_positive.string() << '\n'
      << "words_negative = " << cfg.words_negative.string() << '\n'
      << "words_format = " << cfg.words_format << '\n';
  auto opt = [&](const char* key, const std::optional<std::filesystem::path>& p) {
    if (p) out << key << " = " << p->string() << '\n';
  };
  opt("words_negation", cfg.words_negation);
  opt("words_and", cfg.words_and);
  opt("words_but", cfg.words_but);
  opt("seeds_positive", cfg.seeds_positive);
  opt("seeds_negative", cfg.seeds_negative);
  out << "freq_threshold = " << cfg.freq_threshold << '\n'
      << "pmi_threshold = " << format_double(cfg.pmi_threshold) << '\n'
      << "cor_threshold = " << format_double(cfg.cor_threshold) << '\n';
  out << "discriminators = ";
  for (size_t i = 0; i < cfg.discriminators.size(); ++i)
    out << (i ? "," : "") << cfg.discriminators[i];
  out << '\n';
  out << "min_count = " << cfg.min_count << '\n'
      << "opinion_profile = " << cfg.opinion_profile << '\n'
      << "lambda1 = " << format_double(cfg.hyper.lambda1) << '\n'
      << "lambda2 = " << format_double(cfg.hyper.lambda2) << '\n'
      << "lambda3 = " << format_double(cfg.hyper.lambda3) << '\n'
      << "lambda4 = " << format_double(cfg.hyper.lambda4) << '\n'
      << "delta = " << format_double(cfg.hyper.delta) << '\n'
      << "max_iters = " << cfg.hyper.max_iters << '\n'
      << "init_epsilon = " << format_double(cfg.hyper.init_epsilon) << '\n'
      << "denom_guard = " << format_double(cfg.hyper.denom_guard) << '\n'
      << "method = " << cfg.method << '\n';
  opt("gold", cfg.gold);
  opt("pool", cfg.pool);
  opt("annotations", cfg.annotations);
}

namespace {

struct LoadedCorpus {
  std::vector<Review> reviews;
  std::vector<ReviewDoc> docs;
  GeneralLexicon lex;
};

GeneralLexicon load_lexicon(const PipelineConfig& cfg) {
  require_file(cfg.words_positive, "words_positive");
  require_file(cfg.words_negative, "words_negative");
  std::map<std::string, std::filesystem::path> paths;
  paths["positive"] = cfg.words_positive;
  paths["negative"] = cfg.words_negative;
  auto opt = [&](const char* role, const std::optional<std::filesystem::path>& p) {
    if (p) {
      require_file(*p, role);
      paths[role] = *p;
    }
  };
  opt("negation", cfg.words_negation);
  opt("and", cfg.words_and);
  opt("but", cfg.words_but);
  opt("seeds_positive", cfg.seeds_positive);
  opt("seeds_negative", cfg.seeds_negative);
  WordSetFormat format;
  if (cfg.words_format == "plain") format = WordSetFormat::Plain;
  else if (cfg.words_format == "mpqa") format = WordSetFormat::Mpqa;
  else throw ConfigError("words_format must be 'plain' or 'mpqa'");
  return load_word_sets(paths, format);
}

LoadedCorpus load_and_tag(const PipelineConfig& cfg) {
  require_file(cfg.corpus, "corpus");
  LoadedCorpus out;
  out.lex = load_lexicon(cfg);
  out.reviews = load_corpus(cfg.corpus, cfg.corpus_format);
  RuleTagger tagger(out.lex);
  out.docs.reserve(out.reviews.size());
  for (const Review& r : out.reviews) out.docs.push_back(segment_and_tag(r, tagger));
  return out;
}

OpinionProfile profile_of(const PipelineConfig& cfg) {
  if (cfg.opinion_profile == "adj") return OpinionProfile::AdjOnly;
  if (cfg.opinion_profile == "adj_verb") return OpinionProfile::AdjVerb;
  throw ConfigError("opinion_profile must be 'adj' or 'adj_verb'");
}

void save_trace(const std::vector<double>& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  out << "iteration,objective\n";
  for (size_t i = 0; i < trace.size(); ++i)
    out << i << ',' << format_double(trace[i]) << '\n';
}

void save_solution(const std::vector<FOPair>& pairs, const SolveResult& res,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  out << "# pair_id\tfeature\topinion\tscore\tlabel\n";
  for (const FOPair& p : pairs) {
    size_t i = static_cast<size_t>(p.pair_id);
    out << p.pair_id << '\t' << p.feature << '\t' << p.opinion << '\t'
        << format_double(res.scores(p.pair_id)) << '\t' << to_string(res.labels[i])
        << '\n';
  }
}

void save_report(const EvalReport& r, const std::filesystem::path& path) {
  std::ofstream out(path);
  out << "precision,recall,f_measure,n_lexicon,n_gold,n_p_agree,n_g_agree\n";
  out << format_double(r.precision) << ',' << format_double(r.recall) << ','
      << format_double(r.f_measure) << ',' << r.n_lexicon << ',' << r.n_gold << ','
      << r.n_p_agree << ',' << r.n_g_agree << '\n';
}

ConstraintSet load_constraints(const PipelineConfig& cfg) {
  const std::filesystem::path& dir = cfg.output_dir;
  for (const char* name : {"A.coo", "X0.coo", "G.coo", "Wa.coo", "Wb.coo",
                           "Ws.coo", "labels.tsv"})
    require_file(dir / name, name);
  SpMat A = load_coo(dir / "A.coo");
  Eigen::MatrixXd X0 = Eigen::MatrixXd(load_coo(dir / "X0.coo"));
  SpMat Gm = load_coo(dir / "G.coo");
  Eigen::VectorXd G = Eigen::VectorXd(Gm.diagonal());
  SpMat Wa = load_coo(dir / "Wa.coo");
  SpMat Wb = load_coo(dir / "Wb.coo");
  SpMat Ws = load_coo(dir / "Ws.coo");

  auto labels = load_review_labels(dir / "labels.tsv");
  if (static_cast<long>(labels.size()) != A.rows())
    throw std::runtime_error("labels.tsv row count disagrees with A.coo");
  Eigen::MatrixXd Xtilde = Eigen::MatrixXd::Zero(A.rows(), 2);
  for (size_t i = 0; i < labels.size(); ++i) {
    Xtilde(static_cast<Eigen::Index>(i),
           labels[i].second == Polarity::Positive ? 0 : 1) = 1.0;
  }
  return ConstraintSet::assemble(std::move(A), std::move(Xtilde), std::move(X0),
                                 std::move(G), std::move(Wa), std::move(Wb),
                                 std::move(Ws));
}

}  // namespace

void run_stats(const PipelineConfig& cfg) {
  require_file(cfg.corpus, "corpus");
  std::vector<Review> reviews = load_corpus(cfg.corpus, cfg.corpus_format);
  RatingStats stats = rating_stats(reviews);
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream out(cfg.output_dir / "stats.txt");
  write_stats_report(stats, out);
  write_effective_config(cfg, cfg.output_dir / "effective_config.cfg");
}

void run_classify(const PipelineConfig& cfg) {
  LoadedCorpus c = load_and_tag(cfg);
  LabelMethod method = label_method_from_string(cfg.method);
  std::vector<Polarity> labels =
      label_reviews_by_method(c.reviews, c.docs, method, c.lex);
  std::vector<std::string> ids;
  ids.reserve(c.reviews.size());
  for (const Review& r : c.reviews) ids.push_back(r.review_id);
  std::filesystem::create_directories(cfg.output_dir);
  save_review_labels(ids, labels, cfg.output_dir / "labels.tsv");
  write_effective_config(cfg, cfg.output_dir / "effective_config.cfg");
}

void run_extract(const PipelineConfig& cfg) {
  LoadedCorpus c = load_and_tag(cfg);
  std::vector<FeatureCandidate> candidates =
      extract_feature_candidates(c.docs, cfg.freq_threshold);
  PhraseCounts counts(c.docs);
  if (!cfg.discriminators.empty()) {
    candidates = filter_features(std::move(candidates), cfg.discriminators,
                                 cfg.pmi_threshold, counts);
  } else if (cfg.pmi_threshold > 0.0) {
    throw ConfigError("pmi_threshold > 0 requires a discriminators list");
  }
  std::vector<FOPair> pairs =
      build_pairs(c.docs, candidates, cfg.cor_threshold, profile_of(cfg));
  std::vector<PairOccurrence> occurrences = match_occurrences(c.docs, pairs);
  ReviewPairMatrix A = build_A(occurrences, c.docs, static_cast<int>(pairs.size()));

  auto [X0, G] = build_X0(pairs, c.lex);
  auto [Wa, Wb] = build_conjunction_matrices(occurrences, c.docs, pairs, cfg.min_count);
  SpMat Ws = build_sentential_similarity(occurrences, c.docs, pairs, Wa, Wb);

  const std::filesystem::path& dir = cfg.output_dir;
  std::filesystem::create_directories(dir);
  save_pairs(pairs, dir / "pairs.tsv");
  save_occurrences(occurrences, dir / "occurrences.tsv");
  save_coo(A.A, dir / "A.coo");
  save_coo(X0, dir / "X0.coo");
  Eigen::SparseMatrix<double> Gm(G.size(), G.size());
  for (Eigen::Index i = 0; i < G.size(); ++i) {
    if (G(i) != 0.0) Gm.insert(i, i) = G(i);
  }
  Gm.makeCompressed();
  save_coo(Gm, dir / "G.coo");
  save_coo(Wa, dir / "Wa.coo");
  save_coo(Wb, dir / "Wb.coo");
  save_coo(Ws, dir / "Ws.coo");
  write_effective_config(cfg, dir / "effective_config.cfg");
}

void run_solve(const PipelineConfig& cfg) {
  require_file(cfg.output_dir / "pairs.tsv", "pairs.tsv");
  std::vector<FOPair> pairs = load_pairs(cfg.output_dir / "pairs.tsv");
  ConstraintSet C = load_constraints(cfg);
  SolveResult res = solve(C, cfg.hyper);
  save_solution(pairs, res, cfg.output_dir / "lexicon.tsv");
  save_trace(res.objective_trace, cfg.output_dir / "trace.csv");
  write_effective_config(cfg, cfg.output_dir / "effective_config.cfg");
}

void run_eval(const PipelineConfig& cfg) {
  const std::filesystem::path& dir = cfg.output_dir;
  if (!cfg.gold || !cfg.pool)
    throw ConfigError("eval requires 'gold' and 'pool' lexicon paths");
  require_file(*cfg.gold, "gold");
  require_file(*cfg.pool, "pool");
  require_file(dir / "lexicon.tsv", "lexicon.tsv");

  LabeledLexicon gold{load_lexicon_entries(*cfg.gold)};
  LabeledLexicon pool{load_lexicon_entries(*cfg.pool)};
  LabeledLexicon predicted;
  {
    std::ifstream in(dir / "lexicon.tsv");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> fields;
      std::istringstream ss(line);
      std::string f;
      while (std::getline(ss, f, '\t')) fields.push_back(f);
      if (fields.size() != 5)
        throw std::runtime_error("bad lexicon.tsv line: " + line);
      predicted.entries[{fields[1], fields[2]}] = polarity_from_string(fields[4]);
    }
  }
  save_report(score_lexicon(predicted, pool, gold), dir / "report.csv");

  if (cfg.annotations) {
    require_file(*cfg.annotations, "annotations");
    require_file(dir / "labels.tsv", "labels.tsv");
    auto labels = load_review_labels(dir / "labels.tsv");
    std::vector<std::string> ids;
    std::vector<Polarity> predicted_labels;
    for (const auto& [id, label] : labels) {
      ids.push_back(id);
      predicted_labels.push_back(label);
    }
    LabellingPrecision lp = labelling_precision(ids, predicted_labels,
                                                load_annotations(*cfg.annotations));
    std::ofstream out(dir / "labelling.csv");
    out << "pos_precision,neg_precision,overall,n_annotated\n"
        << format_double(lp.pos_precision) << ',' << format_double(lp.neg_precision)
        << ',' << format_double(lp.overall) << ',' << lp.n_annotated << '\n';
  }

  bool want_sweep = false;
  for (const auto& values : cfg.sweep)
    if (!values.empty()) want_sweep = true;

  if (cfg.knockout || want_sweep) {
    require_file(dir / "pairs.tsv", "pairs.tsv");
    std::vector<FOPair> pairs = load_pairs(dir / "pairs.tsv");
    ConstraintSet C = load_constraints(cfg);
    if (cfg.knockout) {
      auto rows = knockout_run(C, pairs, pool, gold, cfg.hyper);
      std::ofstream out(dir / "knockout.csv");
      out << "name,lambda1,lambda2,lambda3,lambda4,precision,recall,f_measure\n";
      for (const auto& row : rows) {
        out << row.name << ',' << format_double(row.params.lambda1) << ','
            << format_double(row.params.lambda2) << ','
            << format_double(row.params.lambda3) << ','
            << format_double(row.params.lambda4) << ','
            << format_double(row.report.precision) << ','
            << format_double(row.report.recall) << ','
            << format_double(row.report.f_measure) << '\n';
      }
    }
    if (want_sweep) {
      auto rows = parameter_sweep(C, pairs, pool, gold, cfg.hyper, cfg.sweep);
      std::ofstream out(dir / "sweep.csv");
      out << "lambda1,lambda2,lambda3,lambda4,precision,recall,f_measure\n";
      for (const auto& row : rows) {
        out << format_double(row.lambdas[0]) << ',' << format_double(row.lambdas[1])
            << ',' << format_double(row.lambdas[2]) << ','
            << format_double(row.lambdas[3]) << ','
            << format_double(row.report.precision) << ','
            << format_double(row.report.recall) << ','
            << format_double(row.report.f_measure) << '\n';
      }
    }
  }
  write_effective_config(cfg, dir / "effective_config.cfg");
}

void run_pipeline(const PipelineConfig& cfg) {
  run_stats(cfg);
  run_classify(cfg);
  run_extract(cfg);
  run_solve(cfg);
  if (cfg.gold && cfg.pool) run_eval(cfg);
}

void run_synth(const PipelineConfig& cfg) {
  SyntheticBundle bundle = generate(cfg.synth);
  write_bundle(bundle, cfg.output_dir);
}

}  // namespace senlex
