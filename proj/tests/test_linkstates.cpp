#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "densepoly/linkstates.hpp"

using namespace densepoly;

namespace {

bool has_crossing(const LinkState& state) {
  int n = static_cast<int>(state.size());
  for (int i = 0; i < n; ++i)
    // every arc starting strictly inside (i, state[i]) must close inside it
    for (int k = i + 1; k < state[i]; ++k)
      if (state[k] > state[i] || state[k] < i) return true;
  return false;
}

}  // namespace

TEST_SUITE("linkstates") {

TEST_CASE("matching counts follow the Catalan numbers") {
  const long long catalan[] = {1, 1, 2, 5, 14, 42, 132};
  for (int half = 0; half <= 6; ++half)
    CHECK(enumerate_matchings(2 * half).size() ==
          static_cast<std::size_t>(catalan[half]));
  CHECK_THROWS_AS(enumerate_matchings(3), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_matchings(-2), std::invalid_argument);
}

TEST_CASE("matchings are non-crossing involutions in canonical order") {
  for (int n : {4, 6, 8, 10}) {
    auto states = enumerate_matchings(n);
    CHECK(std::is_sorted(states.begin(), states.end()));
    std::set<LinkState> unique(states.begin(), states.end());
    CHECK(unique.size() == states.size());
    for (const auto& state : states) {
      for (int i = 0; i < n; ++i) {
        CHECK(state[i] != i);
        CHECK(state[state[i]] == i);
      }
      CHECK_FALSE(has_crossing(state));
    }
  }
}

TEST_CASE("closed-form dimension equals the enumerated basis size") {
  for (int N = 1; N <= 10; ++N)
    for (int rho = 1; rho <= 6; ++rho)
      for (int s = 1; s <= 5; ++s) {
        SeamLayout layout{N, rho, s};
        if (!layout.parity_consistent()) continue;
        CAPTURE(N);
        CAPTURE(rho);
        CAPTURE(s);
        CHECK(dimension(layout) ==
              static_cast<long long>(build_basis(layout).size()));
      }
}

TEST_CASE("the (4, rho=3, s=3) sector has six link states") {
  SeamLayout layout{4, 3, 3};
  CHECK(dimension(layout) == 6);
  CHECK(build_basis(layout).size() == 6);
}

TEST_CASE("no arc may sit inside a seam window") {
  SeamLayout layout{4, 4, 2};
  for (const auto& state : build_basis(layout)) {
    for (int i = layout.r_seam_begin(); i < layout.r_seam_end(); ++i)
      CHECK_FALSE((state[i] > i && state[i] < layout.r_seam_end()));
    for (int i = layout.s_seam_begin(); i < layout.s_seam_end(); ++i)
      CHECK_FALSE((state[i] > i && state[i] < layout.s_seam_end()));
  }
}

TEST_CASE("generator action rewires and reports loops") {
  LinkState nested = {3, 2, 1, 0};  // arcs (0,3), (1,2)
  auto once = apply_generator(nested, 2);
  CHECK(once.loops == 1);
  CHECK(once.state == nested);

  auto moved = apply_generator(nested, 1);  // join nodes 0,1
  CHECK(moved.loops == 0);
  CHECK(moved.state == LinkState{1, 0, 3, 2});

  auto back = apply_generator(moved.state, 2);
  CHECK(back.loops == 0);
  CHECK(back.state == nested);

  CHECK_THROWS_AS(apply_generator(nested, 0), std::invalid_argument);
  CHECK_THROWS_AS(apply_generator(nested, 4), std::invalid_argument);
}

TEST_CASE("layout validation rejects bad sectors") {
  CHECK_THROWS_AS((SeamLayout{0, 1, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SeamLayout{4, 1, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SeamLayout{4, 2, 1}.validate()), std::invalid_argument);
  CHECK_NOTHROW((SeamLayout{4, 2, 2}.validate()));
}

TEST_CASE("basis lookup returns -1 for states outside the span") {
  LinkBasis basis = LinkBasis::build(SeamLayout{2, 3, 1});
  CHECK(basis.size() == 1);
  CHECK(basis.find(basis.states[0]) == 0);
  CHECK(basis.find(LinkState{1, 0, 3, 2}) == -1);  // arc inside the r-seam
}

TEST_CASE("derived layout quantities") {
  SeamLayout even{4, 4, 2};
  CHECK(even.r() == 2);
  CHECK(even.rho_even());
  CHECK(even.nodes() == 8);
  SeamLayout odd{5, 3, 2};
  CHECK(odd.r() == 2);
  CHECK_FALSE(odd.rho_even());
}

}  // TEST_SUITE
