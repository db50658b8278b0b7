#pragma once

#include <vector>

#include "brls/linop.hpp"

namespace brls {

/// Inclusive block range [start, end].
struct Window {
  Index start = 0;
  Index end = 0;

  Index length() const { return end - start + 1; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Sliding windows of q blocks advancing by k blocks. Consecutive windows
/// share q - k blocks: k are dropped from the front and k appended.
struct WindowPlan {
  Index q = 0;
  Index k = 0;
  Index total_blocks = 0;
  std::vector<Window> windows;
};

/**
 * Windows [0, q-1], [k, k+q-1], ... while they fit. If blocks remain past
 * the last full window, one more window [total-q, total-1] is appended so
 * every block is used. Requires 1 <= k <= q <= total_blocks, otherwise
 * throws std::invalid_argument.
 */
WindowPlan make_window_plan(Index total_blocks, Index q, Index k);

}  // namespace brls
