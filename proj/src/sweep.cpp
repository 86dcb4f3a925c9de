#include "philap/sweep.hpp"

#include <charconv>
#include <future>
#include <sstream>

#include "philap/errors.hpp"

namespace philap {

namespace {

std::string fmt17(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

SweepCell evaluate(const Nonlinearity& f, double c, double lambda, double tol) {
  SweepCell cell{c, lambda, std::nullopt, CellStatus::ok, {}};
  try {
    cell.T = period_particular(f, c, lambda, tol).T;
  } catch (const InfeasibleError& e) {
    cell.status = CellStatus::infeasible;
    cell.message = e.what();
  } catch (const Error& e) {
    cell.status = CellStatus::error;
    cell.message = e.what();
  }
  return cell;
}

}  // namespace

std::string to_string(CellStatus status) {
  switch (status) {
    case CellStatus::ok:
      return "ok";
    case CellStatus::infeasible:
      return "infeasible";
    case CellStatus::error:
      return "error";
  }
  return "error";
}

std::size_t SweepTable::feasible_count() const {
  std::size_t n = 0;
  for (const auto& cell : cells) n += cell.status == CellStatus::ok ? 1 : 0;
  return n;
}

void SweepTable::write_csv(std::ostream& out) const {
  out << "c,lambda,T,status\n";
  for (const auto& cell : cells) {
    out << fmt17(cell.c) << ',' << fmt17(cell.lambda) << ','
        << (cell.T ? fmt17(*cell.T) : to_string(cell.status)) << ',' << to_string(cell.status)
        << '\n';
  }
}

SweepTable sweep_grid(const Nonlinearity& f, const std::vector<double>& c_grid,
                      const std::vector<double>& lambda_grid, double tol) {
  SweepTable table{c_grid, lambda_grid, {}};
  std::vector<std::future<std::vector<SweepCell>>> rows;
  rows.reserve(c_grid.size());
  for (double c : c_grid) {
    rows.push_back(std::async(std::launch::async, [&f, &lambda_grid, c, tol] {
      std::vector<SweepCell> row;
      row.reserve(lambda_grid.size());
      for (double lambda : lambda_grid) row.push_back(evaluate(f, c, lambda, tol));
      return row;
    }));
  }
  table.cells.reserve(c_grid.size() * lambda_grid.size());
  for (auto& row : rows) {
    for (auto& cell : row.get()) table.cells.push_back(std::move(cell));
  }
  return table;
}

MonotoneCheck check_monotone(const SweepTable& table, SweepAxis axis, Trend trend) {
  MonotoneCheck result;
  const std::size_t nc = table.c_grid.size();
  const std::size_t nl = table.lambda_grid.size();
  const std::size_t lines = axis == SweepAxis::c ? nl : nc;
  const std::size_t length = axis == SweepAxis::c ? nc : nl;
  for (std::size_t line = 0; line < lines; ++line) {
    const SweepCell* prev = nullptr;
    for (std::size_t i = 0; i < length; ++i) {
      const SweepCell& cell = axis == SweepAxis::c ? table.at(i, line) : table.at(line, i);
      if (cell.status != CellStatus::ok) continue;
      if (prev != nullptr) {
        ++result.pairs_checked;
        const bool good = trend == Trend::increasing ? *cell.T > *prev->T : *cell.T < *prev->T;
        if (!good) {
          std::ostringstream msg;
          msg << "T(c=" << fmt17(prev->c) << ", lambda=" << fmt17(prev->lambda)
              << ")=" << fmt17(*prev->T) << " -> T(c=" << fmt17(cell.c)
              << ", lambda=" << fmt17(cell.lambda) << ")=" << fmt17(*cell.T) << " is not strictly "
              << (trend == Trend::increasing ? "increasing" : "decreasing");
          result.violations.push_back(msg.str());
          result.ok = false;
        }
      }
      prev = &cell;
    }
  }
  return result;
}

}  // namespace philap
