#pragma once

#include <map>
#include <vector>

namespace densepoly {

// A planar link state on n nodes, stored as its partner involution:
// partner[i] is the node connected to node i (0-based, no fixed points).
using LinkState = std::vector<int>;

// Strip geometry for an (r,s)-boundary sector. Nodes along the bottom edge
// are ordered: N bulk nodes, then rho-1 nodes of the r-type seam, then s-1
// nodes of the s-type seam. A link state is admissible when no arc has both
// endpoints inside the same seam window.
struct SeamLayout {
  int N = 0;
  int rho = 1;
  int s = 1;

  int nodes() const { return N + rho + s - 2; }
  int r() const { return (rho + 1) / 2; }
  bool rho_even() const { return rho % 2 == 0; }
  bool parity_consistent() const { return (N + rho + s) % 2 == 0; }

  // Seam windows as half-open 0-based node ranges.
  int r_seam_begin() const { return N; }
  int r_seam_end() const { return N + rho - 1; }
  int s_seam_begin() const { return N + rho - 1; }
  int s_seam_end() const { return nodes(); }

  // Throws std::invalid_argument on nonpositive sizes or odd node parity.
  void validate() const;
};

// All non-crossing perfect matchings on n nodes, sorted lexicographically by
// partner sequence. n must be even and nonnegative.
std::vector<LinkState> enumerate_matchings(int n);

// Admissible matchings for the layout, in the canonical (lexicographic)
// order. Throws on invalid layouts.
std::vector<LinkState> build_basis(const SeamLayout& layout);

// Closed-form count of build_basis(layout).size():
// binom(N, (N-rho+s)/2) - binom(N, (N-rho-s)/2), where a binomial with a
// negative or half-integer lower index contributes zero.
long long dimension(const SeamLayout& layout);

struct GeneratorResult {
  LinkState state;
  int loops = 0;  // closed loops produced by the action (0 or 1)
};

// Temperley-Lieb generator e_j acting on nodes j, j+1 (j is 1-based,
// 1 <= j <= n-1). If the two nodes are already paired the state is unchanged
// and one closed loop is reported.
GeneratorResult apply_generator(const LinkState& state, int j);

// A restricted basis bundled with its index map, used to project tangle
// contractions back onto the admissible span.
struct LinkBasis {
  SeamLayout layout;
  std::vector<LinkState> states;
  std::map<LinkState, int> index;

  static LinkBasis build(const SeamLayout& layout);
  // Index of the state in the basis, or -1 when the state left the span.
  int find(const LinkState& state) const;
  int size() const { return static_cast<int>(states.size()); }
};

}  // namespace densepoly
