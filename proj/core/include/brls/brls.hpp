#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "brls/linop.hpp"
#include "brls/solver.hpp"
#include "brls/window_plan.hpp"

namespace brls {

/// One group of rows of the full system, e.g. one shot gather.
struct DataBlock {
  Index block_index = 0;
  OperatorPtr op;
  Vector data;
};

/// A window solve failed. `window_index()` is the position in the plan.
class WindowSolveError : public NumericalError {
 public:
  WindowSolveError(std::size_t window_index, const std::string& what);
  std::size_t window_index() const { return window_index_; }

 private:
  std::size_t window_index_;
};

struct BrlsOptions {
  /// Solve each window for a correction to the previous window's model.
  /// When false every window is solved from zero (cold start baseline).
  bool warm_start = true;
  /// Keep the model after every window in BrlsResult::window_models.
  bool record_history = false;
};

struct BrlsResult {
  Vector model;
  std::vector<CgReport> reports;
  /// Windows whose normal right-hand side A(t)^T d(t) was exactly zero.
  std::vector<bool> skipped;
  std::vector<Vector> window_models;
};

/**
 * Block-row recursive least squares over a sliding window plan.
 *
 * For each window t the blocks are stacked into A(t), d(t) and the
 * correction dm = argmin ||A(t) dm - (d(t) - A(t) m)||^2 + lambda ||dm||^2 is
 * found by CGLS from zero, then m <- m + dm. The stopping test is taken
 * relative to ||A(t)^T d(t)||, so the iteration count reflects how much of
 * the window data the previous model already explains. Rows that leave the
 * window are simply no longer part of A(t).
 *
 * `blocks[i]` must hold block index i for i < plan.total_blocks.
 * Throws WindowSolveError carrying the window index if a solve fails.
 */
BrlsResult brls_solve(std::span<const DataBlock> blocks, const WindowPlan& plan,
                      const CgConfig& cg, const BrlsOptions& options = {});

/// Stack all blocks into one operator and data vector, in order.
std::shared_ptr<const StackedOperator> stack_blocks(std::span<const DataBlock> blocks);
Vector concat_data(std::span<const DataBlock> blocks);

}  // namespace brls
