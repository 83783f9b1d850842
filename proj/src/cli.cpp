#include "bcml/cli.hpp"

#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bcml/distribution.hpp"
#include "bcml/json_io.hpp"
#include "bcml/mittag_leffler.hpp"
#include "bcml/verify.hpp"
#include "parallel.hpp"

namespace bcml::cli {
namespace {

double parse_real(std::string_view text) {
  // from_chars for double is unavailable in older libstdc++; strtod on a copy.
  std::string s(text);
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw Error(ErrorCode::invalid_argument, "empty number");
  s = s.substr(first, last - first + 1);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::invalid_argument, fmt::format("not a finite number: '{}'", s));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t pos = text.find(sep, begin);
    parts.push_back(text.substr(begin, pos == std::string_view::npos ? std::string_view::npos : pos - begin));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return parts;
}

enum class What { ml, pdf, mgf, moment, mean, variance };

const std::map<std::string, What>& what_names() {
  static const std::map<std::string, What> names = {
      {"ml", What::ml},         {"pdf", What::pdf},   {"mgf", What::mgf},
      {"moment", What::moment}, {"mean", What::mean}, {"variance", What::variance}};
  return names;
}

// Which named inputs each quantity reads.
std::vector<std::string> inputs_of(What w) {
  switch (w) {
    case What::ml: return {"alpha", "xi"};
    case What::pdf: return {"xi", "a", "alpha"};
    case What::mgf: return {"t", "a", "alpha"};
    default: return {"a", "alpha"};
  }
}

struct Inputs {
  std::map<std::string, Bicomplex> values;  // a, alpha, t, xi
  int r = 1;
  SeriesOptions series;

  const Bicomplex& get(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) {
      throw Error(ErrorCode::invalid_argument, fmt::format("missing required input --{}", name));
    }
    return it->second;
  }
};

struct Outcome {
  Bicomplex value;
  bool has_series = false;
  bool converged = true;
  std::array<int, 2> terms_used{};
  double error_estimate = 0.0;
  bool analytic_continuation = false;
};

Outcome evaluate(What what, const Inputs& in) {
  Outcome out;
  auto from_series = [&](const EvalResult& r) {
    out.value = r.value;
    out.has_series = true;
    out.converged = r.converged;
    out.terms_used = r.terms_used;
    out.error_estimate = r.error_estimate;
  };
  if (what == What::ml) {
    from_series(mittag_leffler(AlphaParam::make(in.get("alpha")), in.get("xi"), in.series));
    return out;
  }
  const MLDistParams p = MLDistParams::make(in.get("a"), in.get("alpha"));
  switch (what) {
    case What::pdf: from_series(pdf(in.get("xi"), p, in.series)); break;
    case What::mgf: {
      const MgfResult m = mgf(in.get("t"), p);
      out.value = m.value;
      out.analytic_continuation = m.analytic_continuation;
      break;
    }
    case What::moment: out.value = moment(in.r, p); break;
    case What::mean: out.value = mean(p); break;
    case What::variance: out.value = variance(p); break;
    case What::ml: break;
  }
  return out;
}

std::string format_idempotent(const Bicomplex& x) {
  const IdempotentPair p = x.idempotent();
  return fmt::format(R"({{"xi1":{{"re":{},"im":{}}},"xi2":{{"re":{},"im":{}}}}})",
                     format_number(p.first.real()), format_number(p.first.imag()),
                     format_number(p.second.real()), format_number(p.second.imag()));
}

nlohmann::json outcome_to_json(const std::string& what, const Outcome& o) {
  nlohmann::json j = {{"what", what},
                      {"value", to_json(o.value)},
                      {"idempotent", idempotent_to_json(o.value)}};
  if (o.has_series) {
    j["converged"] = o.converged;
    j["terms_used"] = o.terms_used;
    j["error_estimate"] = o.error_estimate;
  }
  if (what == "mgf") j["analytic_continuation"] = o.analytic_continuation;
  return j;
}

void write_json(const std::string& path, const nlohmann::json& j, std::ostream& out) {
  if (path == "-") {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::invalid_argument, "cannot write " + path);
  file << j.dump(2) << '\n';
}

// Bicomplex flag pair: --name "x0[,x1,x2,x3]" and --name-idem "re1,im1;re2,im2".
struct BicomplexFlag {
  std::string plain;
  std::string idem;
};

void add_value_flags(CLI::App* cmd, std::map<std::string, BicomplexFlag>& flags) {
  static const std::array<std::pair<const char*, const char*>, 4> names = {{
      {"a", "distribution parameter a"},
      {"alpha", "order alpha"},
      {"t", "mgf argument t"},
      {"xi", "argument xi"},
  }};
  for (const auto& [name, help] : names) {
    auto& f = flags[name];
    cmd->add_option(fmt::format("--{}", name), f.plain,
                    fmt::format("{} as x0 or x0,x1,x2,x3", help));
    cmd->add_option(fmt::format("--{}-idem", name), f.idem,
                    fmt::format("{} in idempotent form re1,im1;re2,im2", help));
  }
}

void collect_values(const std::map<std::string, BicomplexFlag>& flags, Inputs& in) {
  for (const auto& [name, f] : flags) {
    if (!f.plain.empty() && !f.idem.empty()) {
      throw Error(ErrorCode::invalid_argument,
                  fmt::format("give either --{0} or --{0}-idem, not both", name));
    }
    if (!f.plain.empty()) in.values[name] = parse_bicomplex(f.plain);
    if (!f.idem.empty()) in.values[name] = parse_idempotent(f.idem);
  }
}

int report_error(std::ostream& err, const Error& e) {
  err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
  return kExitInvalidInput;
}

struct GlobalOptions {
  double tol = kDefaultSeriesTol;
  int max_terms = kDefaultMaxTerms;
  std::string json_path;
};

// ---------------------------------------------------------------------------

int cmd_eval(const std::string& what_name, const Inputs& in, bool idempotent,
             const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const What what = what_names().at(what_name);
  const Outcome o = evaluate(what, in);
  out << format_bicomplex_json(o.value) << '\n';
  if (idempotent) out << format_idempotent(o.value) << '\n';
  if (!g.json_path.empty()) write_json(g.json_path, outcome_to_json(what_name, o), out);
  if (o.analytic_continuation) {
    err << "note: t lies outside the region where the moment series converges; "
           "the value is the analytic continuation of the closed form\n";
  }
  if (o.has_series && !o.converged) {
    err << fmt::format("error: series did not converge (terms used {}/{}, error estimate {:.3g})\n",
                       o.terms_used[0], o.terms_used[1], o.error_estimate);
    return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_verify(const std::string& grid_arg, bool summary_only, const GlobalOptions& g,
               std::ostream& out) {
  const std::vector<GridPoint> grid = grid_arg == "default" ? default_grid() : load_grid_file(grid_arg);
  VerifyConfig cfg;
  cfg.threads = threads_from_environment();
  const VerificationReport report = verify_all(grid, cfg);
  if (summary_only) {
    VerificationReport brief;
    brief.summary = report.summary;
    for (const ReportEntry* e : report.failures()) brief.entries.push_back(*e);
    out << format_table(brief);
  } else {
    out << format_table(report);
  }
  if (!g.json_path.empty()) write_json(g.json_path, report_to_json(report), out);
  return report.ok() ? kExitOk : kExitCheckFailed;
}

int cmd_grid(const std::string& what_name, const std::vector<std::string>& sweep_args,
             Inputs in, const std::string& out_path, const GlobalOptions& g, std::ostream& out,
             std::ostream& err) {
  const What what = what_names().at(what_name);
  if (sweep_args.empty() || sweep_args.size() > 2) {
    throw Error(ErrorCode::invalid_argument, "grid needs --p1 and optionally --p2");
  }
  std::vector<Sweep> sweeps;
  for (const auto& s : sweep_args) sweeps.push_back(parse_sweep(s));
  if (sweeps.size() == 2 && sweeps[0].name == sweeps[1].name) {
    throw Error(ErrorCode::invalid_argument, "swept parameters must be distinct");
  }
  const auto used = inputs_of(what);
  for (const auto& s : sweeps) {
    if (std::find(used.begin(), used.end(), s.name) == used.end()) {
      throw Error(ErrorCode::invalid_argument,
                  fmt::format("'{}' does not take input '{}'", what_name, s.name));
    }
  }
  for (const auto& name : used) {
    const bool swept = std::any_of(sweeps.begin(), sweeps.end(), [&](const Sweep& s) { return s.name == name; });
    if (!swept && !in.values.count(name)) {
      throw Error(ErrorCode::invalid_argument, fmt::format("missing fixed value --{}", name));
    }
  }

  const int n1 = sweeps[0].steps;
  const int n2 = sweeps.size() == 2 ? sweeps[1].steps : 1;
  const std::size_t rows = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
  std::vector<Bicomplex> values(rows);
  std::vector<std::string> errors(rows);
  std::vector<bool> failed(rows, false);
  detail::parallel_for(rows, threads_from_environment(), [&](std::size_t idx) {
    Inputs local = in;
    const int i = static_cast<int>(idx / n2);
    const int j = static_cast<int>(idx % n2);
    local.values[sweeps[0].name] = Bicomplex(sweeps[0].value(i));
    if (sweeps.size() == 2) local.values[sweeps[1].name] = Bicomplex(sweeps[1].value(j));
    try {
      const Outcome o = evaluate(what, local);
      values[idx] = o.value;
      if (o.has_series && !o.converged) errors[idx] = "series did not converge";
    } catch (const std::exception& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      values[idx] = Bicomplex({nan, nan}, {nan, nan});
      failed[idx] = true;
      errors[idx] = e.what();
    }
  });

  std::string csv = sweeps.size() == 2 ? "p1,p2,x0,x1,x2,x3\n" : "p1,x0,x1,x2,x3\n";
  nlohmann::json json_rows = nlohmann::json::array();
  std::size_t failures = 0;
  for (std::size_t idx = 0; idx < rows; ++idx) {
    const int i = static_cast<int>(idx / n2);
    const int j = static_cast<int>(idx % n2);
    const double p1 = sweeps[0].value(i);
    std::string row = format_number(p1);
    nlohmann::json jr = {{"p1", p1}};
    std::string where = fmt::format("{}={}", sweeps[0].name, format_number(p1));
    if (sweeps.size() == 2) {
      const double p2 = sweeps[1].value(j);
      row += "," + format_number(p2);
      jr["p2"] = p2;
      where += fmt::format(", {}={}", sweeps[1].name, format_number(p2));
    }
    const Bicomplex& v = values[idx];
    row += fmt::format(",{},{},{},{}\n", format_number(v.x0()), format_number(v.x1()),
                       format_number(v.x2()), format_number(v.x3()));
    csv += row;
    jr["value"] = failed[idx] ? nlohmann::json(nullptr) : to_json(v);
    json_rows.push_back(std::move(jr));
    if (failed[idx]) ++failures;
    if (!errors[idx].empty()) err << "warning: row " << idx << " (" << where << "): " << errors[idx] << '\n';
  }

  if (out_path.empty() || out_path == "-") {
    out << csv;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::invalid_argument, "cannot write " + out_path);
    file << csv;
  }
  if (!g.json_path.empty()) write_json(g.json_path, nlohmann::json{{"rows", json_rows}}, out);
  if (failures == rows) {
    err << "error: every grid point failed to evaluate\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}

}  // namespace

Bicomplex parse_bicomplex(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return Bicomplex(parse_real(parts[0]));
  if (parts.size() == 4) {
    return Bicomplex::make(parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]),
                           parse_real(parts[3]));
  }
  throw Error(ErrorCode::invalid_argument,
              fmt::format("expected x0 or x0,x1,x2,x3 but got '{}'", text));
}

Bicomplex parse_idempotent(std::string_view text) {
  const auto halves = split(text, ';');
  if (halves.size() != 2) {
    throw Error(ErrorCode::invalid_argument,
                fmt::format("expected re1,im1;re2,im2 but got '{}'", text));
  }
  std::array<Complex, 2> c;
  for (int i = 0; i < 2; ++i) {
    const auto parts = split(halves[i], ',');
    if (parts.size() != 2) {
      throw Error(ErrorCode::invalid_argument,
                  fmt::format("expected re1,im1;re2,im2 but got '{}'", text));
    }
    c[i] = Complex(parse_real(parts[0]), parse_real(parts[1]));
  }
  return Bicomplex::from_idempotent({c[0], c[1]});
}

double Sweep::value(int i) const {
  if (i == steps - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

Sweep parse_sweep(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) {
    throw Error(ErrorCode::invalid_argument,
                fmt::format("sweep must look like name:start:stop:steps (got '{}')", text));
  }
  Sweep s;
  s.name = std::string(parts[0]);
  if (s.name != "a" && s.name != "alpha" && s.name != "t" && s.name != "xi") {
    throw Error(ErrorCode::invalid_argument,
                fmt::format("sweep parameter must be a, alpha, t or xi (got '{}')", s.name));
  }
  s.start = parse_real(parts[1]);
  s.stop = parse_real(parts[2]);
  const double steps = parse_real(parts[3]);
  if (steps != std::floor(steps) || steps < 2 || steps > 1e7) {
    throw Error(ErrorCode::invalid_argument, "sweep steps must be an integer >= 2");
  }
  s.steps = static_cast<int>(steps);
  if (!(s.start < s.stop)) throw Error(ErrorCode::invalid_argument, "sweep needs start < stop");
  return s;
}

unsigned threads_from_environment() {
  const char* env = std::getenv("BCML_THREADS");
  if (env == nullptr) return 0;
  unsigned value = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return 0;
  return value;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bicomplex Mittag-Leffler distribution: evaluation, verification and grids", "bcml"};
  GlobalOptions g;
  app.add_option("--tol", g.tol, "series tolerance")->capture_default_str();
  app.add_option("--max-terms", g.max_terms, "series term cap")->capture_default_str();
  app.add_option("--json", g.json_path, "write machine-readable output to this path ('-' = stdout)");
  app.require_subcommand(1);

  std::vector<std::string> what_list;
  for (const auto& [name, _] : what_names()) what_list.push_back(name);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate one quantity at a point");
  eval->fallthrough();
  std::string eval_what;
  eval->add_option("what", eval_what, "ml | pdf | mgf | moment | mean | variance")
      ->required()
      ->check(CLI::IsMember(what_list));
  std::map<std::string, BicomplexFlag> eval_flags;
  add_value_flags(eval, eval_flags);
  int eval_r = 1;
  eval->add_option("--r", eval_r, "moment order 0..4");
  bool idempotent = false;
  eval->add_flag("--idempotent", idempotent, "also print the idempotent components");

  // verify
  auto* verify = app.add_subcommand("verify", "run the oracle verification suite");
  verify->fallthrough();
  std::string grid_arg = "default";
  verify->add_option("--grid", grid_arg, "'default' or a grid JSON file")->capture_default_str();
  bool summary_only = false;
  verify->add_flag("--summary", summary_only, "print only the summary and the failures");

  // grid
  auto* grid = app.add_subcommand("grid", "write a CSV sweep of one quantity");
  grid->fallthrough();
  std::string grid_what;
  grid->add_option("what", grid_what, "ml | pdf | mgf | moment | mean | variance")
      ->required()
      ->check(CLI::IsMember(what_list));
  std::vector<std::string> sweep_args;
  std::string p1, p2;
  grid->add_option("--p1", p1, "first swept parameter name:start:stop:steps")->required();
  grid->add_option("--p2", p2, "second swept parameter name:start:stop:steps");
  std::map<std::string, BicomplexFlag> grid_flags;
  add_value_flags(grid, grid_flags);
  int grid_r = 1;
  grid->add_option("--r", grid_r, "moment order 0..4");
  std::string out_path;
  grid->add_option("--out", out_path, "CSV output path (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  try {
    if (!(g.tol > 0.0) || g.max_terms < 1) {
      throw Error(ErrorCode::invalid_argument, "--tol must be positive and --max-terms at least 1");
    }
    Inputs in;
    in.series = {g.tol, g.max_terms};
    if (eval->parsed()) {
      collect_values(eval_flags, in);
      in.r = eval_r;
      return cmd_eval(eval_what, in, idempotent, g, out, err);
    }
    if (verify->parsed()) return cmd_verify(grid_arg, summary_only, g, out);
    if (grid->parsed()) {
      collect_values(grid_flags, in);
      in.r = grid_r;
      sweep_args.push_back(p1);
      if (!p2.empty()) sweep_args.push_back(p2);
      return cmd_grid(grid_what, sweep_args, in, out_path, g, out, err);
    }
  } catch (const Error& e) {
    return report_error(err, e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace bcml::cli
