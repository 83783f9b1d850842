#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bcml/bicomplex.hpp"

namespace bcml {

/// One parameter point of a verification grid. The values are stored raw;
/// validity is checked by verify_all so that invalid points show up in the
/// report instead of aborting it.
struct GridPoint {
  std::string label;
  Bicomplex a;
  Bicomplex alpha;
};

/// a in {0, 0.1, 0.3, 0.5, 0.8} x alpha in {0.25, 0.5, 0.75, 1, 1.5, 2}
/// followed by 20 pseudo-random bicomplex points (seed 42) with idempotent
/// |a_k| < 0.9 and Re(alpha_k) in (0.1, 2].
std::vector<GridPoint> default_grid();

/// The 30 real points at the head of default_grid().
std::vector<GridPoint> default_real_grid();

struct VerifyConfig {
  double algebraic_tol = 1e-10;
  double series_tol = 1e-8;
  double quadrature_tol = 1e-6;
  double series_vs_quadrature_tol = 2e-6;
  double finite_difference_tol = 1e-5;
  double finite_difference_step = 1e-3;
  std::vector<double> mgf_t_values{-1.0, -0.5, 0.0, 0.25, 0.5};
  /// Accuracy requested from the oracles themselves.
  double oracle_quadrature_tol = 1e-9;
  double oracle_series_tol = 1e-15;
  /// 0 = one worker per hardware thread.
  unsigned threads = 0;
};

enum class CheckStatus { pass, fail, skip };

std::string_view to_string(CheckStatus s) noexcept;

struct ReportEntry {
  std::string check;
  std::size_t point_index = 0;
  std::string point_label;
  Bicomplex a;
  Bicomplex alpha;
  /// Value under test and the reference it is compared against.
  Bicomplex value;
  Bicomplex reference;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::skip;
  std::string note;
};

struct ReportSummary {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::size_t total() const { return passed + failed + skipped; }
};

struct VerificationReport {
  std::vector<ReportEntry> entries;
  ReportSummary summary;

  bool ok() const { return summary.failed == 0; }
  std::vector<const ReportEntry*> failures() const;
};

/// Compares value against reference: passes iff the relative error is within
/// tol, or the absolute error is when |reference| < 1.
ReportEntry compare(std::string check, const Bicomplex& value, const Bicomplex& reference,
                    double tol);

/// Runs every applicable closed-form-versus-oracle comparison at every grid
/// point. Checks whose oracle preconditions fail are recorded as skipped.
/// Points are evaluated concurrently; entry order is deterministic.
VerificationReport verify_all(const std::vector<GridPoint>& grid, const VerifyConfig& config = {});

/// Human-readable table: one line per entry followed by the summary.
std::string format_table(const VerificationReport& report);

}  // namespace bcml
