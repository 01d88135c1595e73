#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mixedorder {

// Chain or square lattice. Site (x, y) maps to index x + Lx * y.
struct LatticeSpec {
  enum class Kind { chain, square };
  enum class Boundary { open, periodic };

  Kind kind = Kind::chain;
  int Lx = 0;
  int Ly = 1;
  Boundary boundary = Boundary::open;

  static LatticeSpec chain(int L, Boundary b = Boundary::open);
  static LatticeSpec square(int Lx, int Ly, Boundary b = Boundary::open);

  int n_sites() const { return Lx * Ly; }
  int site(int x, int y) const { return x + Lx * y; }

  // Bond list: row-major, horizontal bonds before vertical.
  std::vector<std::pair<int, int>> edges() const;

  std::string kind_name() const;
  std::string boundary_name() const;
};

}  // namespace mixedorder
