#include "brls/brls.hpp"

#include <sstream>

namespace brls {

namespace {

std::string window_message(std::size_t index, const std::string& what) {
  std::ostringstream msg;
  msg << "window " << index << ": " << what;
  return msg.str();
}

}  // namespace

WindowSolveError::WindowSolveError(std::size_t window_index, const std::string& what)
    : NumericalError(window_message(window_index, what)), window_index_(window_index) {}

std::shared_ptr<const StackedOperator> stack_blocks(std::span<const DataBlock> blocks) {
  std::vector<OperatorPtr> ops;
  ops.reserve(blocks.size());
  for (const auto& b : blocks) ops.push_back(b.op);
  return stack_rows(std::move(ops));
}

Vector concat_data(std::span<const DataBlock> blocks) {
  Index n = 0;
  for (const auto& b : blocks) n += b.data.size();
  Vector d(n);
  Index offset = 0;
  for (const auto& b : blocks) {
    d.segment(offset, b.data.size()) = b.data;
    offset += b.data.size();
  }
  return d;
}

BrlsResult brls_solve(std::span<const DataBlock> blocks, const WindowPlan& plan,
                      const CgConfig& cg, const BrlsOptions& options) {
  cg.validate();
  if (static_cast<Index>(blocks.size()) < plan.total_blocks || plan.windows.empty())
    throw std::invalid_argument("brls_solve: blocks do not cover the window plan");
  for (Index i = 0; i < plan.total_blocks; ++i) {
    const auto& b = blocks[static_cast<std::size_t>(i)];
    if (!b.op) throw std::invalid_argument("brls_solve: block without operator");
    if (b.block_index != i) throw std::invalid_argument("brls_solve: blocks out of order");
    if (b.op->data_dim() != b.data.size())
      throw DimensionError("brls_solve: block data length != operator data_dim");
  }
  const Index m = blocks.front().op->model_dim();

  BrlsResult result;
  result.model = Vector::Zero(m);

  for (std::size_t w = 0; w < plan.windows.size(); ++w) {
    const Window& window = plan.windows[w];
    const auto window_blocks = blocks.subspan(static_cast<std::size_t>(window.start),
                                              static_cast<std::size_t>(window.length()));
    try {
      const auto op = stack_blocks(window_blocks);
      const Vector data = concat_data(window_blocks);
      const double reference = op->apply_adjoint(data).norm();

      if (reference == 0.0) {
        CgReport idle;
        idle.converged = true;
        idle.normal_residual_history.push_back(0.0);
        idle.objective_history.push_back(data.squaredNorm());
        result.reports.push_back(std::move(idle));
        result.skipped.push_back(true);
      } else if (options.warm_start) {
        const Vector residual = data - op->apply_forward(result.model);
        CgResult solved = cgls(*op, residual, cg, std::nullopt, reference);
        result.model += solved.x;
        result.reports.push_back(std::move(solved.report));
        result.skipped.push_back(false);
      } else {
        CgResult solved = cgls(*op, data, cg, std::nullopt, reference);
        result.model = std::move(solved.x);
        result.reports.push_back(std::move(solved.report));
        result.skipped.push_back(false);
      }
    } catch (const WindowSolveError&) {
      throw;
    } catch (const std::exception& e) {
      throw WindowSolveError(w, e.what());
    }
    if (!result.model.allFinite()) throw WindowSolveError(w, "model became non-finite");
    if (options.record_history) result.window_models.push_back(result.model);
  }
  return result;
}

}  // namespace brls
