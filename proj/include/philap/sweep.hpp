#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "philap/nonlinearity.hpp"
#include "philap/period.hpp"

namespace philap {

enum class CellStatus { ok, infeasible, error };

std::string to_string(CellStatus status);

struct SweepCell {
  double c = 0.0;
  double lambda = 0.0;
  std::optional<double> T;
  CellStatus status = CellStatus::ok;
  std::string message;
};

/// Row-major in c, then lambda.
struct SweepTable {
  std::vector<double> c_grid;
  std::vector<double> lambda_grid;
  std::vector<SweepCell> cells;

  const SweepCell& at(std::size_t ic, std::size_t il) const {
    return cells[ic * lambda_grid.size() + il];
  }
  std::size_t feasible_count() const;
  /// Header `c,lambda,T,status`; non-ok cells carry their status word in T.
  void write_csv(std::ostream& out) const;
};

/// Periods via period_particular; rows evaluated concurrently, order fixed.
SweepTable sweep_grid(const Nonlinearity& f, const std::vector<double>& c_grid,
                      const std::vector<double>& lambda_grid, double tol = kPeriodTol);

enum class SweepAxis { c, lambda };
enum class Trend { increasing, decreasing };

struct MonotoneCheck {
  bool ok = true;
  std::size_t pairs_checked = 0;
  std::vector<std::string> violations;
};

/// Strict monotonicity along one axis over consecutive ok cells of each line.
MonotoneCheck check_monotone(const SweepTable& table, SweepAxis axis, Trend trend);

}  // namespace philap
