#include "scg/applications/metric_learning.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <cmath>
#include <fstream>
#include <sstream>

#include "scg/error.hpp"
#include "scg/spectral.hpp"

namespace scg::metric_learning {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  if (quoted) throw Error(ErrorCode::parse, "unterminated quoted field");
  fields.push_back(field);
  return fields;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

LabeledDataset parse_labeled_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank(line)) break;
  }
  if (blank(line)) throw Error(ErrorCode::parse, "dataset has no header row");
  std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 2) throw Error(ErrorCode::parse, "dataset needs at least one feature and a label column");

  LabeledDataset data;
  data.feature_names.assign(header.begin(), header.end() - 1);
  const std::size_t d = data.feature_names.size();
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != d + 1) {
      throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected " + std::to_string(d + 1) +
                                        " fields, got " + std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(fields[j], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || !std::isfinite(v)) {
        throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": non-numeric feature '" + fields[j] + "'");
      }
      values.push_back(v);
    }
    data.labels.push_back(fields[d]);
  }
  if (data.labels.empty()) throw Error(ErrorCode::parse, "dataset has no rows");
  const auto n = static_cast<Eigen::Index>(data.labels.size());
  data.features = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      values.data(), n, static_cast<Eigen::Index>(d));
  return data;
}

LabeledDataset load_labeled_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open dataset " + path.string());
  return parse_labeled_csv(in);
}

void standardize(LabeledDataset& data) {
  auto& x = data.features;
  const double n = static_cast<double>(x.rows());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double mean = x.col(j).mean();
    x.col(j).array() -= mean;
    const double sd = std::sqrt(x.col(j).squaredNorm() / n);
    if (sd > 0.0) x.col(j) /= sd;
  }
}

LabeledDataset synthetic_clusters(std::size_t classes, std::size_t per_class, std::size_t dim, double separation,
                                  Rng& rng) {
  std::normal_distribution<double> normal;
  LabeledDataset data;
  for (std::size_t j = 0; j < dim; ++j) data.feature_names.push_back("f" + std::to_string(j));
  data.features.resize(static_cast<Eigen::Index>(classes * per_class), static_cast<Eigen::Index>(dim));
  Eigen::Index row = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    Eigen::VectorXd centre(static_cast<Eigen::Index>(dim));
    for (Eigen::Index j = 0; j < centre.size(); ++j) centre(j) = separation * normal(rng);
    for (std::size_t k = 0; k < per_class; ++k, ++row) {
      for (Eigen::Index j = 0; j < centre.size(); ++j) data.features(row, j) = centre(j) + normal(rng);
      data.labels.push_back("c" + std::to_string(c));
    }
  }
  return data;
}

Instance sample_pairs(const LabeledDataset& data, std::size_t n_similar, std::size_t n_dissimilar, Rng& rng) {
  std::vector<IndexPair> same;
  std::vector<IndexPair> different;
  const std::size_t n = data.labels.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      (data.labels[i] == data.labels[j] ? same : different).emplace_back(i, j);
    }
  }
  if (same.size() < n_similar || different.size() < n_dissimilar) {
    throw Error(ErrorCode::invalid_argument, "dataset has " + std::to_string(same.size()) + " similar and " +
                                                 std::to_string(different.size()) + " dissimilar pairs; requested " +
                                                 std::to_string(n_similar) + " and " + std::to_string(n_dissimilar));
  }
  std::shuffle(same.begin(), same.end(), rng);
  std::shuffle(different.begin(), different.end(), rng);
  same.resize(n_similar);
  different.resize(n_dissimilar);
  return Instance{data.features, std::move(same), std::move(different)};
}

Eigen::MatrixXd pair_matrix(const Eigen::MatrixXd& points, const IndexPair& pair) {
  const Eigen::VectorXd diff = (points.row(static_cast<Eigen::Index>(pair.first)) -
                                points.row(static_cast<Eigen::Index>(pair.second)))
                                   .transpose();
  return diff * diff.transpose();
}

Eigen::MatrixXd inverse_sqrt_psd(const Eigen::MatrixXd& m, double ridge) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::dimension_mismatch, "inverse_sqrt_psd: matrix is not square");
  if (!(ridge >= 0.0)) throw Error(ErrorCode::invalid_argument, "inverse_sqrt_psd: ridge must be nonnegative");
  const auto n = m.rows();
  const Element regularised = Element::sym(m + ridge * Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXd out = lowner_apply(regularised, ScalarFunction::pow(-0.5)).data();
  const Eigen::MatrixXd check = out * regularised.data() * out;
  if ((check - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-7) {
    throw Error(ErrorCode::invariant_violation, "inverse_sqrt_psd: matrix too ill-conditioned for the ridge");
  }
  return out;
}

std::vector<Eigen::MatrixXd> whitened_dissimilar_matrices(const Instance& instance, double ridge) {
  if (instance.similar.empty()) throw Error(ErrorCode::empty_input, "metric learning needs similar pairs");
  if (instance.dissimilar.empty()) throw Error(ErrorCode::empty_input, "metric learning needs dissimilar pairs");
  const auto d = instance.points.cols();
  Eigen::MatrixXd xs = Eigen::MatrixXd::Zero(d, d);
  for (const auto& p : instance.similar) xs += pair_matrix(instance.points, p);
  const Eigen::MatrixXd w = inverse_sqrt_psd(xs, ridge);
  std::vector<Eigen::MatrixXd> out;
  out.reserve(instance.dissimilar.size());
  for (const auto& p : instance.dissimilar) {
    Eigen::MatrixXd m = w * pair_matrix(instance.points, p) * w;
    out.push_back(0.5 * (m + m.transpose()));
  }
  return out;
}

BilinearZeroSumGame simplex_spectraplex_game(const std::vector<Eigen::MatrixXd>& matrices) {
  if (matrices.empty()) throw Error(ErrorCode::empty_input, "simplex-spectraplex game needs at least one matrix");
  const auto d = static_cast<std::size_t>(matrices.front().rows());
  for (const auto& a : matrices) {
    if (static_cast<std::size_t>(a.rows()) != d || a.cols() != a.rows()) {
      throw Error(ErrorCode::dimension_mismatch, "simplex-spectraplex game matrices must share a square shape");
    }
  }
  const auto xc = ConeDescriptor::orthant(matrices.size());
  const auto yc = ConeDescriptor::sym(d);
  double lip = 0.0;
  for (const auto& a : matrices) lip = std::max(lip, trace_p_norm(Element::sym(a), kInfinity));

  auto shared = std::make_shared<const std::vector<Eigen::MatrixXd>>(matrices);
  LinearMap forward = [shared, d](const Element& x) {
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    const auto& w = x.data();
    for (std::size_t k = 0; k < shared->size(); ++k) y += w(static_cast<Eigen::Index>(k), 0) * (*shared)[k];
    return Element::sym(y);
  };
  LinearMap adjoint = [shared](const Element& y) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(shared->size()));
    for (std::size_t k = 0; k < shared->size(); ++k) {
      out(static_cast<Eigen::Index>(k)) = y.data().cwiseProduct((*shared)[k]).sum();
    }
    return Element::orthant(out);
  };
  return BilinearZeroSumGame(Simplex(xc), Simplex(yc), std::move(forward), std::move(adjoint), Element(xc),
                             Element(yc), lip, lip);
}

BilinearZeroSumGame build_game(const Instance& instance, double ridge) {
  return simplex_spectraplex_game(whitened_dissimilar_matrices(instance, ridge));
}

}  // namespace scg::metric_learning
