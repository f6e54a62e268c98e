#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "scg/game.hpp"

namespace scg::cli {

/// A bilinear game read from JSON.
///
///   {
///     "x_cone": "orthant(2)",
///     "y_cone": "product[spin(3),spin(3)]",
///     "y_simplex": "per_component",          optional, default "trace_one"
///     "forward": [[...], ...],               ambient_dim(y) rows, ambient_dim(x) columns
///     "b": [...], "c": [...],                optional ambient coordinates
///     "lipschitz": [Lx, Ly]                  optional
///   }
///
/// Coordinates are those of Element::coordinates(): sym blocks contribute
/// their upper triangle row by row. Without "lipschitz" both constants are
/// set to a power-iteration estimate of the operator norm.
struct LoadedGame {
  BilinearZeroSumGame game;
  bool lipschitz_estimated = false;
};

LoadedGame parse_game(const nlohmann::json& doc);
LoadedGame load_game_file(const std::filesystem::path& path);

}  // namespace scg::cli
