#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "scg/game.hpp"
#include "scg/rng.hpp"

namespace scg::metric_learning {

/// Rows are samples.
struct LabeledDataset {
  std::vector<std::string> feature_names;
  Eigen::MatrixXd features;
  std::vector<std::string> labels;
};

/// Header row, numeric feature columns, final label column. Blank lines are
/// skipped; fields may be double-quoted.
LabeledDataset parse_labeled_csv(std::istream& in);
LabeledDataset load_labeled_csv(const std::filesystem::path& path);

/// Centres every feature column and scales it to unit variance (constant
/// columns are only centred).
void standardize(LabeledDataset& data);

/// Isotropic Gaussian clusters with random centres, `per_class` samples each.
LabeledDataset synthetic_clusters(std::size_t classes, std::size_t per_class, std::size_t dim,
                                  double separation, Rng& rng);

using IndexPair = std::pair<std::size_t, std::size_t>;

struct Instance {
  Eigen::MatrixXd points;
  std::vector<IndexPair> similar;
  std::vector<IndexPair> dissimilar;
};

/// Draws distinct same-label and different-label pairs uniformly without
/// replacement.
Instance sample_pairs(const LabeledDataset& data, std::size_t n_similar, std::size_t n_dissimilar, Rng& rng);

/// (x_i - x_j)(x_i - x_j)^T.
Eigen::MatrixXd pair_matrix(const Eigen::MatrixXd& points, const IndexPair& pair);

/// (M + ridge I)^{-1/2} through the eigendecomposition; throws DomainError
/// when an eigenvalue is not positive after the ridge.
Eigen::MatrixXd inverse_sqrt_psd(const Eigen::MatrixXd& m, double ridge);

/// X_S^{-1/2} X_tau X_S^{-1/2} for every dissimilar pair tau, with X_S the sum
/// of the similar pair matrices regularised by `ridge`.
std::vector<Eigen::MatrixXd> whitened_dissimilar_matrices(const Instance& instance, double ridge = 1e-8);

/// min over the simplex of D weights, max over the spectraplex of
/// <sum_tau x_tau A_tau, Y>. Lipschitz constants are max_tau |A_tau|_{tr,inf}.
BilinearZeroSumGame simplex_spectraplex_game(const std::vector<Eigen::MatrixXd>& matrices);

BilinearZeroSumGame build_game(const Instance& instance, double ridge = 1e-8);

}  // namespace scg::metric_learning
