#pragma once

// Independent oracle for the double-row contraction: expand the diagram over
// all 2^{#free faces} resolutions, trace every strand through an explicit
// adjacency graph, kill configurations containing a closed loop (beta = 0),
// and project the resulting matchings onto the restricted basis. Exponential,
// for small test sectors only.

#include <array>
#include <vector>

#include "densepoly/tangle.hpp"

namespace densepoly::testing {

inline OperatorMatrix bruteforce_double_row(const LinkBasis& basis, double u,
                                            double xi = kDefaultXi) {
  const FaceGrid grid = face_grid(basis.layout, u, xi);
  const int n = basis.layout.nodes();
  const int dim = basis.size();

  // Strand endpoints: bottom b_1..b_n, top t_1..t_n, interface m_1..m_n,
  // then the horizontal row boundaries hb_0..hb_n and ht_0..ht_n.
  auto b = [n](int i) { return i; };
  auto t = [n](int i) { return n + i; };
  auto m = [n](int i) { return 2 * n + i; };
  auto hb = [n](int i) { return 3 * n + 1 + i; };
  auto ht = [n](int i) { return 4 * n + 2 + i; };
  const int ids = 5 * n + 3;

  std::vector<int> free_faces;  // face index = 2*(c-1) + row
  for (int c = 1; c <= n; ++c)
    for (int row = 0; row < 2; ++row)
      if (grid.columns[c - 1][row].kind == FaceKind::free)
        free_faces.push_back(2 * (c - 1) + row);

  OperatorMatrix D = OperatorMatrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const LinkState& in = basis.states[col];
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_faces.size());
         ++mask) {
      std::vector<std::array<int, 2>> adj(ids, {-1, -1});
      std::vector<int> deg(ids, 0);
      auto link = [&](int a, int c) {
        adj[a][deg[a]++] = c;
        adj[c][deg[c]++] = a;
      };
      for (int i = 0; i < n; ++i)
        if (i < in[i]) link(b(i + 1), b(in[i] + 1));
      link(hb(0), ht(0));
      link(hb(n), ht(n));

      double weight = 1.0;
      std::size_t bit = 0;
      for (int c = 1; c <= n; ++c) {
        for (int row = 0; row < 2; ++row) {
          const Face& face = grid.columns[c - 1][row];
          bool join;  // a-type resolution: S-W and N-E
          if (face.kind == FaceKind::free) {
            join = (mask >> bit++) & 1;
            weight *= join ? face.wa : face.wb;
          } else {
            join = face.kind == FaceKind::frozen_a;
            weight *= join ? face.wa : face.wb;
          }
          int S = row == 0 ? b(c) : m(c);
          int W = row == 0 ? hb(c - 1) : ht(c - 1);
          int Nn = row == 0 ? m(c) : t(c);
          int E = row == 0 ? hb(c) : ht(c);
          if (join) {
            link(S, W);
            link(Nn, E);
          } else {
            link(S, E);
            link(Nn, W);
          }
        }
      }

      std::vector<char> visited(ids, 0);
      LinkState out(n, -1);
      for (int i = 1; i <= n; ++i) {
        if (visited[t(i)]) continue;
        visited[t(i)] = 1;
        int prev = -1, cur = t(i);
        while (true) {
          int next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
          prev = cur;
          cur = next;
          visited[cur] = 1;
          if (cur > n && cur <= 2 * n) {  // reached another top node
            out[i - 1] = cur - n - 1;
            out[cur - n - 1] = i - 1;
            break;
          }
        }
      }
      bool loop = false;
      for (int id = 1; id < ids; ++id)
        if (deg[id] > 0 && !visited[id]) loop = true;
      if (loop) continue;

      int row = basis.find(out);
      if (row >= 0) D(row, col) += weight;
    }
  }
  return D;
}

}  // namespace densepoly::testing
