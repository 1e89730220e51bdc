#include "densepoly/linkstates.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace densepoly {

void SeamLayout::validate() const {
  if (N < 1) throw std::invalid_argument("SeamLayout: N must be positive");
  if (rho < 1) throw std::invalid_argument("SeamLayout: rho must be positive");
  if (s < 1) throw std::invalid_argument("SeamLayout: s must be positive");
  if (!parity_consistent())
    throw std::invalid_argument("SeamLayout: N + rho + s must be even, got N=" +
                                std::to_string(N) + " rho=" + std::to_string(rho) +
                                " s=" + std::to_string(s));
}

namespace {

// Non-crossing matchings correspond to balanced parenthesis words: at each
// node either open a new arc (push) or close the most recent open one (pop).
// Closing only the innermost open arc is what rules out crossings.
void extend_matchings(LinkState& partial, std::vector<int>& open_stack, int pos,
                      int n, std::vector<LinkState>& out) {
  if (pos == n) {
    out.push_back(partial);
    return;
  }
  int opens = static_cast<int>(open_stack.size());
  if (opens + 2 <= n - pos) {
    open_stack.push_back(pos);
    extend_matchings(partial, open_stack, pos + 1, n, out);
    open_stack.pop_back();
  }
  if (opens > 0) {
    int i = open_stack.back();
    open_stack.pop_back();
    partial[i] = pos;
    partial[pos] = i;
    extend_matchings(partial, open_stack, pos + 1, n, out);
    partial[i] = -1;
    partial[pos] = -1;
    open_stack.push_back(i);
  }
}

bool arc_inside_window(const LinkState& state, int begin, int end) {
  for (int i = begin; i < end; ++i) {
    int j = state[i];
    if (j > i && j < end) return true;
  }
  return false;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

}  // namespace

std::vector<LinkState> enumerate_matchings(int n) {
  if (n < 0 || n % 2 != 0)
    throw std::invalid_argument("enumerate_matchings: node count must be even");
  std::vector<LinkState> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  LinkState partial(n, -1);
  std::vector<int> open_stack;
  extend_matchings(partial, open_stack, 0, n, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LinkState> build_basis(const SeamLayout& layout) {
  layout.validate();
  std::vector<LinkState> basis;
  for (auto& state : enumerate_matchings(layout.nodes())) {
    if (arc_inside_window(state, layout.r_seam_begin(), layout.r_seam_end()))
      continue;
    if (arc_inside_window(state, layout.s_seam_begin(), layout.s_seam_end()))
      continue;
    basis.push_back(std::move(state));
  }
  return basis;
}

long long dimension(const SeamLayout& layout) {
  layout.validate();
  int upper = layout.N - layout.rho + layout.s;
  int lower = layout.N - layout.rho - layout.s;
  long long count = 0;
  if (upper % 2 == 0) count += binomial(layout.N, upper / 2);
  if (lower % 2 == 0) count -= binomial(layout.N, lower / 2);
  return count;
}

GeneratorResult apply_generator(const LinkState& state, int j) {
  int n = static_cast<int>(state.size());
  if (j < 1 || j >= n)
    throw std::invalid_argument("apply_generator: generator index out of range");
  int a = j - 1;
  int b = j;
  GeneratorResult result{state, 0};
  if (state[a] == b) {
    result.loops = 1;
    return result;
  }
  int pa = state[a];
  int pb = state[b];
  result.state[a] = b;
  result.state[b] = a;
  result.state[pa] = pb;
  result.state[pb] = pa;
  return result;
}

LinkBasis LinkBasis::build(const SeamLayout& layout) {
  LinkBasis basis;
  basis.layout = layout;
  basis.states = build_basis(layout);
  for (int i = 0; i < static_cast<int>(basis.states.size()); ++i)
    basis.index.emplace(basis.states[i], i);
  return basis;
}

int LinkBasis::find(const LinkState& state) const {
  auto it = index.find(state);
  return it == index.end() ? -1 : it->second;
}

}  // namespace densepoly
