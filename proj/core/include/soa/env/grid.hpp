#pragma once

#include <algorithm>
#include <cstdlib>

namespace soa::grid {

enum Move : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3, kStay = 4 };

// Cells are row-major indices into a size x size board. Moves that would leave
// the board are no-ops.
inline int move(int cell, int action, int size) {
  int row = cell / size;
  int col = cell % size;
  switch (action) {
    case kUp:
      row = std::max(row - 1, 0);
      break;
    case kDown:
      row = std::min(row + 1, size - 1);
      break;
    case kLeft:
      col = std::max(col - 1, 0);
      break;
    case kRight:
      col = std::min(col + 1, size - 1);
      break;
    default:
      break;
  }
  return row * size + col;
}

inline int chebyshev(int a, int b, int size) {
  return std::max(std::abs(a / size - b / size), std::abs(a % size - b % size));
}

}  // namespace soa::grid
