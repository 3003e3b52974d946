#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gamedyn/game.hpp"

namespace gamedyn {

using ParamMap = std::map<std::string, double>;

/// Names of every builtin game, in catalog order.
const std::vector<std::string>& builtin_names();

/// Constructs a builtin by name. Unknown names raise CatalogError listing the
/// valid names; unknown or invalid parameter values raise ParamError naming
/// the offending key.
Game builtin_game(const std::string& name, const ParamMap& params = {});

/// The quadratic form behind a builtin, when it has one (everything except
/// stable_not_nash). Parameters are validated exactly as in builtin_game.
std::optional<QuadraticGame> builtin_quadratic(const std::string& name,
                                               const ParamMap& params = {});

/// Canonical start point used by examples and docs: (1, 1, ..., 1) unless a
/// game declares its own.
Vec default_start(const Game& game);

}  // namespace gamedyn
