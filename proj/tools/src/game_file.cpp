#include "game_file.hpp"

#include <fstream>

#include "scg/error.hpp"

namespace scg::cli {

namespace {

using nlohmann::json;

const json& required(const json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorCode::parse, std::string("game file: missing \"") + key + "\"");
  return doc.at(key);
}

SimplexKind simplex_kind(const json& doc, const char* key) {
  if (!doc.contains(key)) return SimplexKind::trace_one;
  const auto text = doc.at(key).get<std::string>();
  if (text == "trace_one") return SimplexKind::trace_one;
  if (text == "per_component") return SimplexKind::per_component;
  throw Error(ErrorCode::parse, "game file: unknown simplex kind \"" + text + "\"");
}

Eigen::VectorXd vector_of(const json& node, std::size_t expected, const char* what) {
  if (!node.is_array() || node.size() != expected) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string("game file: \"") + what + "\" must have " + std::to_string(expected) + " entries");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) v(static_cast<Eigen::Index>(i)) = node[i].get<double>();
  return v;
}

}  // namespace

LoadedGame parse_game(const json& doc) {
  try {
    const auto x_cone = ConeDescriptor::parse(required(doc, "x_cone").get<std::string>());
    const auto y_cone = ConeDescriptor::parse(required(doc, "y_cone").get<std::string>());
    const auto nx = x_cone.ambient_dim();
    const auto ny = y_cone.ambient_dim();

    const auto& rows = required(doc, "forward");
    if (!rows.is_array() || rows.size() != ny) {
      throw Error(ErrorCode::dimension_mismatch,
                  "game file: \"forward\" must have " + std::to_string(ny) + " rows for " + y_cone.to_string());
    }
    Eigen::MatrixXd matrix(static_cast<Eigen::Index>(ny), static_cast<Eigen::Index>(nx));
    for (std::size_t i = 0; i < ny; ++i) matrix.row(static_cast<Eigen::Index>(i)) = vector_of(rows[i], nx, "forward row");
    if (!matrix.allFinite()) throw Error(ErrorCode::non_finite, "game file: non-finite forward coefficient");

    Element b(x_cone);
    Element c(y_cone);
    if (doc.contains("b")) b = Element::from_coordinates(x_cone, vector_of(doc.at("b"), nx, "b"));
    if (doc.contains("c")) c = Element::from_coordinates(y_cone, vector_of(doc.at("c"), ny, "c"));

    Simplex xs(x_cone, simplex_kind(doc, "x_simplex"));
    Simplex ys(y_cone, simplex_kind(doc, "y_simplex"));

    if (doc.contains("lipschitz")) {
      const auto l = vector_of(doc.at("lipschitz"), 2, "lipschitz");
      return {BilinearZeroSumGame::from_matrix(xs, ys, matrix, b, c, l(0), l(1)), false};
    }
    // Build once with placeholder constants to obtain the operator pair.
    const auto probe = BilinearZeroSumGame::from_matrix(xs, ys, matrix, b, c, 0.0, 0.0);
    const double l = estimate_operator_norm(
        x_cone, [&](const Element& x) { return probe.forward(x); },
        [&](const Element& y) { return probe.adjoint(y); });
    return {BilinearZeroSumGame::from_matrix(xs, ys, matrix, b, c, l, l), true};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("game file: ") + e.what());
  }
}

LoadedGame load_game_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open game file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, "game file " + path.string() + ": " + e.what());
  }
  return parse_game(doc);
}

}  // namespace scg::cli
