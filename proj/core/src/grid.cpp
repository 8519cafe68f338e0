#include "squarebraid/grid.hpp"

#include <stdexcept>
#include <string>

namespace squarebraid {

GridGraph build_grid(int p, int q) {
  if (p < 2 || q < 2)
    throw std::domain_error("build_grid: need p >= 2 and q >= 2, got p=" + std::to_string(p) +
                            " q=" + std::to_string(q));
  return GridGraph{p, q};
}

}  // namespace squarebraid
