#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bcml/bicomplex.hpp"
#include "bcml/verify.hpp"

namespace bcml {

/// {"x0": .., "x1": .., "x2": .., "x3": ..}
nlohmann::json to_json(const Bicomplex& x);

/// Accepts the object form above or a bare number (a real scalar). Throws
/// Error(invalid_argument) on anything else.
Bicomplex bicomplex_from_json(const nlohmann::json& j);

/// {"xi1": {"re": .., "im": ..}, "xi2": {...}}
nlohmann::json idempotent_to_json(const Bicomplex& x);

/// 17 significant digits, "nan"/"inf" spelled out. Used for CSV cells.
std::string format_number(double v);

/// Compact JSON object with 17 significant digits, e.g.
/// {"x0":1,"x1":0,"x2":0,"x3":0}. Non-finite components become null.
std::string format_bicomplex_json(const Bicomplex& x);

nlohmann::json report_to_json(const VerificationReport& report);

/// Grid file: {"points": [{"label": "..", "a": <bicomplex>, "alpha": <bicomplex>}, ...]}
/// Throws Error(invalid_argument) when the document does not have that shape.
std::vector<GridPoint> grid_from_json(const nlohmann::json& j);
nlohmann::json grid_to_json(const std::vector<GridPoint>& grid);

/// Reads and parses a grid file; malformed input raises Error(invalid_argument).
std::vector<GridPoint> load_grid_file(const std::string& path);

}  // namespace bcml
