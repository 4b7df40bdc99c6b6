// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <set>

#include "rotor/basis.hpp"
#include "rotor/errors.hpp"

using namespace rotor;

TEST_CASE("lex_rank ordering") {
  CHECK(lex_rank(0, 0, 0) == 0);
  CHECK(lex_rank(1, -1, -1) == 1);
  CHECK(lex_rank(1, 1, 1) == 9);
  CHECK_THROWS_AS(lex_rank(1, 2, 0), DomainError);

  std::size_t prev = 0;
  bool first = true;
  std::set<std::size_t> seen;
  for (int l = 0; l <= 4; ++l)
    for (int t = -l; t <= l; ++t)
      for (int m = -l; m <= l; ++m) {
        const std::size_t r = lex_rank(l, t, m);
        if (!first) CHECK(r == prev + 1);
        first = false;
        prev = r;
        seen.insert(r);
      }
  CHECK(seen.size() == static_cast<std::size_t>(level_offset(5)));
}

TEST_CASE("wang expansion") {
  auto e = wang_expansion({1, 0, 0, 0});
  REQUIRE(e.size() == 1);
  CHECK(e[0].first == WignerIndex{1, 0, 0});
  CHECK(std::abs(e[0].second - 1.0) < 1e-15);

  e = wang_expansion({1, 1, 0, 0});
  REQUIRE(e.size() == 2);
  CHECK(e[0].first == WignerIndex{1, 1, 0});
  CHECK(e[1].first == WignerIndex{1, -1, 0});
  CHECK(std::abs(e[0].second - M_SQRT1_2) < 1e-15);
  CHECK(std::abs(e[1].second - M_SQRT1_2) < 1e-15);

  e = wang_expansion({1, 1, 0, 1});
  CHECK(std::abs(e[1].second + M_SQRT1_2) < 1e-15);

  CHECK_THROWS_AS(wang_expansion({1, 0, 0, 1}), DomainError);

  for (int j = 0; j <= 4; ++j)
    for (const auto& w : wang_labels(j)) {
      double s = 0.0;
      for (const auto& [idx, c] : wang_expansion({j, w.k, 0, w.p})) s += std::norm(c);
      CHECK(std::abs(s - 1.0) < 1e-14);
    }
}

TEST_CASE("wang labels and matrix") {
  for (int j = 0; j <= 5; ++j) {
    const auto labels = wang_labels(j);
    CHECK(labels.size() == static_cast<std::size_t>(2 * j + 1));
    for (std::size_t s = 0; s < labels.size(); ++s) CHECK(wang_slot(labels[s]) == static_cast<int>(s));
    const Eigen::MatrixXd W = wang_matrix(j);
    CHECK((W.transpose() * W - Eigen::MatrixXd::Identity(2 * j + 1, 2 * j + 1)).norm() < 1e-14);
  }
}

TEST_CASE("block spec") {
  CHECK(block_spec(0).dimension == 10);
  CHECK(block_spec(1).dimension == 34);
  CHECK(block_spec(2).dimension == 74);

  auto layer = [](const BlockSpec& b) {
    std::set<int> ls;
    for (const auto& m : b.members) ls.insert(m.l);
    return ls;
  };
  for (int j = 0; j < 4; ++j) {
    const auto a = layer(block_spec(j)), b = layer(block_spec(j + 1)), c = layer(block_spec(j + 2));
    CHECK(a.count(j + 1) == 1);
    CHECK(b.count(j + 1) == 1);
    for (int l : a) CHECK(c.count(l) == 0);
  }
}
