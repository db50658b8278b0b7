#include "brls/window_plan.hpp"

#include <sstream>
#include <stdexcept>

namespace brls {

WindowPlan make_window_plan(Index total_blocks, Index q, Index k) {
  if (!(1 <= k && k <= q && q <= total_blocks)) {
    std::ostringstream msg;
    msg << "make_window_plan: need 1 <= k <= q <= total_blocks, got total=" << total_blocks
        << " q=" << q << " k=" << k;
    throw std::invalid_argument(msg.str());
  }
  WindowPlan plan;
  plan.q = q;
  plan.k = k;
  plan.total_blocks = total_blocks;
  for (Index start = 0; start + q <= total_blocks; start += k) {
    plan.windows.push_back({start, start + q - 1});
  }
  if (plan.windows.back().end < total_blocks - 1) {
    plan.windows.push_back({total_blocks - q, total_blocks - 1});
  }
  return plan;
}

}  // namespace brls
