#include "mixedorder/lattice.hpp"

#include "mixedorder/errors.hpp"

namespace mixedorder {

LatticeSpec LatticeSpec::chain(int L, Boundary b) {
  if (L < 1) throw BadGrid("chain length must be positive");
  return {Kind::chain, L, 1, b};
}

LatticeSpec LatticeSpec::square(int Lx, int Ly, Boundary b) {
  if (Lx < 1 || Ly < 1) throw BadGrid("square extents must be positive");
  return {Kind::square, Lx, Ly, b};
}

std::vector<std::pair<int, int>> LatticeSpec::edges() const {
  std::vector<std::pair<int, int>> e;
  const bool per = boundary == Boundary::periodic;
  if (kind == Kind::chain) {
    for (int x = 0; x + 1 < Lx; ++x) e.emplace_back(x, x + 1);
    if (per && Lx > 2) e.emplace_back(Lx - 1, 0);
    return e;
  }
  for (int y = 0; y < Ly; ++y) {
    for (int x = 0; x < Lx; ++x) {
      if (x + 1 < Lx)
        e.emplace_back(site(x, y), site(x + 1, y));
      else if (per && Lx > 2)
        e.emplace_back(site(x, y), site(0, y));
    }
  }
  for (int y = 0; y < Ly; ++y) {
    for (int x = 0; x < Lx; ++x) {
      if (y + 1 < Ly)
        e.emplace_back(site(x, y), site(x, y + 1));
      else if (per && Ly > 2)
        e.emplace_back(site(x, y), site(x, 0));
    }
  }
  return e;
}

std::string LatticeSpec::kind_name() const {
  return kind == Kind::chain ? "chain" : "square";
}

std::string LatticeSpec::boundary_name() const {
  return boundary == Boundary::open ? "open" : "periodic";
}

}  // namespace mixedorder
