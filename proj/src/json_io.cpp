#include "bcml/json_io.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

namespace bcml {

using nlohmann::json;

json to_json(const Bicomplex& x) {
  return {{"x0", x.x0()}, {"x1", x.x1()}, {"x2", x.x2()}, {"x3", x.x3()}};
}

Bicomplex bicomplex_from_json(const json& j) {
  if (j.is_number()) return Bicomplex::make(j.get<double>(), 0.0, 0.0, 0.0);
  if (!j.is_object()) {
    throw Error(ErrorCode::invalid_argument, "bicomplex value must be a number or an x0..x3 object");
  }
  double c[4] = {0.0, 0.0, 0.0, 0.0};
  const char* keys[4] = {"x0", "x1", "x2", "x3"};
  for (int i = 0; i < 4; ++i) {
    auto it = j.find(keys[i]);
    if (it == j.end()) continue;
    if (!it->is_number()) {
      throw Error(ErrorCode::invalid_argument, fmt::format("bicomplex field {} must be a number", keys[i]));
    }
    c[i] = it->get<double>();
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "x0" && key != "x1" && key != "x2" && key != "x3") {
      throw Error(ErrorCode::invalid_argument, fmt::format("unknown bicomplex field '{}'", key));
    }
  }
  return Bicomplex::make(c[0], c[1], c[2], c[3]);
}

json idempotent_to_json(const Bicomplex& x) {
  const IdempotentPair p = x.idempotent();
  return {{"xi1", {{"re", p.first.real()}, {"im", p.first.imag()}}},
          {"xi2", {{"re", p.second.real()}, {"im", p.second.imag()}}}};
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  return fmt::format("{:.17g}", v);
}

std::string format_bicomplex_json(const Bicomplex& x) {
  auto cell = [](double v) { return std::isfinite(v) ? format_number(v) : std::string("null"); };
  return fmt::format(R"({{"x0":{},"x1":{},"x2":{},"x3":{}}})", cell(x.x0()), cell(x.x1()),
                     cell(x.x2()), cell(x.x3()));
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json bicomplex_or_null(const Bicomplex& x) {
  return {{"x0", finite_or_null(x.x0())},
          {"x1", finite_or_null(x.x1())},
          {"x2", finite_or_null(x.x2())},
          {"x3", finite_or_null(x.x3())}};
}

}  // namespace

json report_to_json(const VerificationReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json item = {{"check", e.check},
                 {"point_index", e.point_index},
                 {"point", e.point_label},
                 {"a", to_json(e.a)},
                 {"alpha", to_json(e.alpha)},
                 {"status", std::string(to_string(e.status))}};
    if (e.status != CheckStatus::skip) {
      item["value"] = bicomplex_or_null(e.value);
      item["reference"] = bicomplex_or_null(e.reference);
      item["abs_error"] = finite_or_null(e.abs_error);
      item["rel_error"] = finite_or_null(e.rel_error);
      item["tolerance"] = e.tolerance;
    }
    if (!e.note.empty()) item["note"] = e.note;
    entries.push_back(std::move(item));
  }
  json failures = json::array();
  for (const ReportEntry* e : report.failures()) {
    failures.push_back({{"point_index", e->point_index}, {"point", e->point_label}, {"check", e->check}});
  }
  return {{"summary",
           {{"passed", report.summary.passed},
            {"failed", report.summary.failed},
            {"skipped", report.summary.skipped},
            {"total", report.summary.total()}}},
          {"metadata",
           {{"series_oracle",
             "gamma ratio Gamma(alpha k + r + 1) / Gamma(alpha k + 1) expanded as an explicit "
             "product; independent of the closed forms, not of that cancellation step"},
            {"quadrature_oracle", "real-ray Gauss-Kronrod per idempotent component"},
            {"finite_difference", "central stencils on the closed-form mgf at t = 0"}}},
          {"failures", failures},
          {"entries", entries}};
}

std::vector<GridPoint> grid_from_json(const json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
    throw Error(ErrorCode::invalid_argument, "grid file must be an object with a 'points' array");
  }
  std::vector<GridPoint> grid;
  std::size_t index = 0;
  for (const auto& item : j["points"]) {
    if (!item.is_object() || !item.contains("a") || !item.contains("alpha")) {
      throw Error(ErrorCode::invalid_argument,
                  fmt::format("grid point {} must have 'a' and 'alpha'", index));
    }
    GridPoint p;
    p.label = item.value("label", fmt::format("point {}", index));
    p.a = bicomplex_from_json(item["a"]);
    p.alpha = bicomplex_from_json(item["alpha"]);
    grid.push_back(std::move(p));
    ++index;
  }
  return grid;
}

json grid_to_json(const std::vector<GridPoint>& grid) {
  json points = json::array();
  for (const auto& p : grid) {
    points.push_back({{"label", p.label}, {"a", to_json(p.a)}, {"alpha", to_json(p.alpha)}});
  }
  return {{"points", points}};
}

std::vector<GridPoint> load_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open grid file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, fmt::format("malformed grid file {}: {}", path, e.what()));
  }
  return grid_from_json(j);
}

}  // namespace bcml
