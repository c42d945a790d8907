#pragma once

// Flat `key = value` scenario files with dotted keys and `#` comments.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"

namespace tic {

struct SweepRange {
    double min = 0.0;
    double max = 10.0;
    double step = 0.1;
};

struct Scenario {
    ModelParams params;
    PolicyVector policy;
    TicScheme tic;
    std::optional<Preferences> prefs;  // present once prefs.X_bar_A or prefs.gamma_B is given
    SweepRange sweep;
    std::size_t oracle_size = 0;       // 0: no oracle requested
    std::vector<int> oligopoly_firms{1, 2, 4, 8, 16, 32, 64};
};

/// Throws ValidationError listing every bad line (unknown key, bad number, duplicate).
Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_text(const std::string& text);
/// Throws InvalidArgument when the file cannot be opened.
Scenario load_scenario(const std::string& path);

}  // namespace tic
