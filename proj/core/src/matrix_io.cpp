#include "senlex/matrix_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace senlex {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  return in;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, '\t')) out.push_back(field);
  return out;
}

bool skip_line(const std::string& line) {
  return line.empty() || line[0] == '#';
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void save_coo(const Eigen::SparseMatrix<double>& M, const std::filesystem::path& path) {
  std::vector<Eigen::Triplet<double>> entries;
  for (int k = 0; k < M.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(M, k); it; ++it)
      entries.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                           it.value());
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::make_pair(a.row(), a.col()) < std::make_pair(b.row(), b.col());
  });
  std::ofstream out = open_out(path);
  out << "# coo " << M.rows() << ' ' << M.cols() << ' ' << entries.size() << '\n';
  for (const auto& e : entries)
    out << e.row() << ' ' << e.col() << ' ' << format_double(e.value()) << '\n';
}

void save_coo(const Eigen::MatrixXd& M, const std::filesystem::path& path) {
  save_coo(Eigen::SparseMatrix<double>(M.sparseView()), path);
}

Eigen::SparseMatrix<double> load_coo(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  long rows = -1, cols = -1, nnz = -1;
  std::vector<Eigen::Triplet<double>> entries;
  while (std::getline(in, line)) {
    if (line.rfind("# coo", 0) == 0) {
      if (std::sscanf(line.c_str(), "# coo %ld %ld %ld", &rows, &cols, &nnz) != 3)
        throw std::runtime_error("bad coo header in " + path.string());
      continue;
    }
    if (skip_line(line)) continue;
    long r, c;
    double v;
    if (std::sscanf(line.c_str(), "%ld %ld %lf", &r, &c, &v) != 3)
      throw std::runtime_error("bad coo entry in " + path.string() + ": " + line);
    entries.emplace_back(static_cast<int>(r), static_cast<int>(c), v);
  }
  if (rows < 0) throw std::runtime_error("missing coo header in " + path.string());
  Eigen::SparseMatrix<double> M(rows, cols);
  M.setFromTriplets(entries.begin(), entries.end());
  M.makeCompressed();
  return M;
}

void save_vector(const Eigen::VectorXd& v, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "# vec " << v.size() << '\n';
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out << format_double(v(i)) << '\n';
}

Eigen::VectorXd load_vector(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  std::vector<double> values;
  long size = -1;
  while (std::getline(in, line)) {
    if (line.rfind("# vec", 0) == 0) {
      std::sscanf(line.c_str(), "# vec %ld", &size);
      continue;
    }
    if (skip_line(line)) continue;
    values.push_back(std::stod(line));
  }
  if (size >= 0 && static_cast<long>(values.size()) != size)
    throw std::runtime_error("vector length mismatch in " + path.string());
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  for (size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

void save_pairs(const std::vector<FOPair>& pairs, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "# pair_id\tfeature\topinion\tcor\n";
  for (const FOPair& p : pairs)
    out << p.pair_id << '\t' << p.feature << '\t' << p.opinion << '\t'
        << format_double(p.cor) << '\n';
}

std::vector<FOPair> load_pairs(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<FOPair> pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (skip_line(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 4)
      throw std::runtime_error("bad pairs line in " + path.string() + ": " + line);
    FOPair p;
    p.pair_id = std::stoi(fields[0]);
    p.feature = fields[1];
    p.opinion = fields[2];
    p.cor = std::stod(fields[3]);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

void save_occurrences(const std::vector<PairOccurrence>& occs,
                      const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "# pair_id\treview_id\treview_index\tsubsentence\tfeature_pos\topinion_pos\tnegated\n";
  for (const PairOccurrence& o : occs)
    out << o.pair_id << '\t' << o.review_id << '\t' << o.review_index << '\t'
        << o.subsentence << '\t' << o.feature_pos << '\t' << o.opinion_pos << '\t'
        << (o.negated ? 1 : 0) << '\n';
}

void save_review_labels(const std::vector<std::string>& ids,
                        const std::vector<Polarity>& labels,
                        const std::filesystem::path& path) {
  if (ids.size() != labels.size())
    throw std::runtime_error("save_review_labels: id/label count mismatch");
  std::ofstream out = open_out(path);
  for (size_t i = 0; i < ids.size(); ++i)
    out << ids[i] << '\t' << to_string(labels[i]) << '\n';
}

std::vector<std::pair<std::string, Polarity>> load_review_labels(
    const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::vector<std::pair<std::string, Polarity>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (skip_line(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 2)
      throw std::runtime_error("bad label line in " + path.string() + ": " + line);
    out.emplace_back(fields[0], polarity_from_string(fields[1]));
  }
  return out;
}

void save_lexicon_entries(
    const std::map<std::pair<std::string, std::string>, Polarity>& entries,
    const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  for (const auto& [key, label] : entries)
    out << key.first << '\t' << key.second << '\t' << to_string(label) << '\n';
}

std::map<std::pair<std::string, std::string>, Polarity> load_lexicon_entries(
    const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::map<std::pair<std::string, std::string>, Polarity> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (skip_line(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 3)
      throw std::runtime_error("bad lexicon line in " + path.string() + ": " + line);
    entries[{fields[0], fields[1]}] = polarity_from_string(fields[2]);
  }
  return entries;
}

std::map<std::string, Polarity> load_annotations(const std::filesystem::path& path) {
  std::map<std::string, Polarity> out;
  for (const auto& [id, label] : load_review_labels(path)) out[id] = label;
  return out;
}

}  // namespace senlex
