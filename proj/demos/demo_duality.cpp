// Walks the duality bridge: the theta graph with five length-2 paths is
// Z5-connected but not Klein-group-connected, and its planar dual (a doubled
// 5-cycle) shows the same split for colorability.

#include <iostream>

#include "groupflow/decide.hpp"
#include "groupflow/planar.hpp"

int main() {
  using namespace groupflow;

  auto g = gen_theta(5, 2);
  auto dual = planar_dual(g, rotation_for_theta(g, 5, 2)).dual;

  for (const char* spec : {"Z5", "Z2^2"}) {
    GroupTable t(parse_group_spec(spec));
    auto conn = is_group_connected(g, t);
    auto col = is_group_colorable(dual, t);
    std::cout << spec << ": primal connected = " << (conn.connected ? "yes" : "no")
              << ", dual colorable = " << (col.colorable ? "yes" : "no") << "\n";
    if (conn.connected != col.colorable) {
      std::cout << "duality mismatch!\n";
      return 1;
    }
  }
  return 0;
}
