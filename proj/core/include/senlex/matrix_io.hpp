#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "senlex/extraction.hpp"
#include "senlex/seedlex.hpp"

namespace senlex {

/// Sparse coordinate text format: a "# coo <rows> <cols> <nnz>" header line
/// followed by one "row col value" line per entry, sorted by (row, col).
/// Values round-trip exactly (%.17g).
void save_coo(const Eigen::SparseMatrix<double>& M, const std::filesystem::path& path);
void save_coo(const Eigen::MatrixXd& M, const std::filesystem::path& path);
Eigen::SparseMatrix<double> load_coo(const std::filesystem::path& path);

void save_vector(const Eigen::VectorXd& v, const std::filesystem::path& path);
Eigen::VectorXd load_vector(const std::filesystem::path& path);

/// pairs file: pair_id, feature, opinion, cor (tab separated)
void save_pairs(const std::vector<FOPair>& pairs, const std::filesystem::path& path);
std::vector<FOPair> load_pairs(const std::filesystem::path& path);

/// occurrences file: pair_id, review_id, review_index, subsentence,
/// feature_pos, opinion_pos, negated
void save_occurrences(const std::vector<PairOccurrence>& occs,
                      const std::filesystem::path& path);

/// review labels: review_id, label
void save_review_labels(const std::vector<std::string>& ids,
                        const std::vector<Polarity>& labels,
                        const std::filesystem::path& path);
std::vector<std::pair<std::string, Polarity>> load_review_labels(
    const std::filesystem::path& path);

/// lexicon entries: feature, opinion, label
void save_lexicon_entries(
    const std::map<std::pair<std::string, std::string>, Polarity>& entries,
    const std::filesystem::path& path);
std::map<std::pair<std::string, std::string>, Polarity> load_lexicon_entries(
    const std::filesystem::path& path);

/// annotations: review_id, label
std::map<std::string, Polarity> load_annotations(const std::filesystem::path& path);

std::string format_double(double v);  // shortest exact round-trip formatting

}  // namespace senlex
