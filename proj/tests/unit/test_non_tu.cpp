#include <gtest/gtest.h>

#include "test_util.hpp"
#include "unialign/error.hpp"
#include "unialign/flow_align.hpp"

using namespace unialign;

namespace {

IntMatrix mat(const std::vector<std::vector<std::int64_t>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

// Cofactor expansion, independent of the library's elimination.
std::int64_t cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  std::int64_t det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t k = 0, j = 0; k < n; ++k) {
        if (k != c) minor(r - 1, j++) = m(r, k);
      }
    }
    det += (c % 2 == 0 ? 1 : -1) * m(0, c) * cofactor_det(minor);
  }
  return det;
}

SynchronousProduct toy() {
  return build_sync_product(testutil::load_net("toy.pnml"), Trace{"t", {"a", "b", "e"}});
}

}  // namespace

TEST(Determinant, SmallMatrices) {
  EXPECT_EQ(determinant(mat({{5}})), 5);
  EXPECT_EQ(determinant(mat({{1, 1}, {-1, 1}})), 2);
  EXPECT_EQ(determinant(mat({{0, 1}, {1, 0}})), -1);
  EXPECT_EQ(determinant(mat({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})), 0);
  const IntMatrix m = mat({{2, -1, 0, 3}, {1, 0, 4, -2}, {0, 5, 1, 1}, {-3, 2, 2, 0}});
  EXPECT_EQ(determinant(m), cofactor_det(m));
}

TEST(Milp, DimensionsOfTheToyProgram) {
  const SynchronousProduct sp = toy();
  const MilpMatrices mm = build_milp_matrices(sp, 6);
  EXPECT_EQ(mm.num_places, 10u);
  EXPECT_EQ(mm.num_transitions, 11u);
  EXPECT_EQ(mm.num_variables(), 6u * 11u + 6u);
  EXPECT_EQ(mm.num_rows(), 10u + 60u + 6u + 5u);
  const IntMatrix a = mm.combined();
  EXPECT_EQ(a.rows(), 81u);
  EXPECT_EQ(a.cols(), 72u);
  EXPECT_THROW(build_milp_matrices(sp, 0), InvalidInput);
}

TEST(Milp, ColumnLayoutAndBlocks) {
  const SynchronousProduct sp = toy();
  const std::size_t T = 11;
  const std::size_t n = 6;
  const MilpMatrices mm = build_milp_matrices(sp, n);
  const IntMatrix inc = incidence_matrices(sp.net).incidence;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < T; ++j) {
      for (std::size_t p = 0; p < 10; ++p) EXPECT_EQ(mm.final_marking(p, k * T + j), inc(p, j));
      EXPECT_EQ(mm.one_move(k, k * T + j), 1);
      EXPECT_EQ(mm.objective[k * T + j], sp.costs[j]);
    }
    EXPECT_EQ(mm.one_move(k, n * T + k), 1);
    EXPECT_EQ(mm.objective[n * T + k], 0);
  }
  // Prefix row for step 2, place 0 sums the first three steps.
  for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(mm.prefix(2 * 10 + 0, k * T + 0), k <= 2 ? inc(0, 0) : 0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    EXPECT_EQ(mm.monotone(k, n * T + k + 1), 1);
    EXPECT_EQ(mm.monotone(k, n * T + k), -1);
  }
  EXPECT_EQ(mm.final_marking_rhs[0], -1);
  EXPECT_EQ(mm.final_marking_rhs[5], 1);
  EXPECT_EQ(mm.prefix_rhs[0], -1);
}

TEST(NonTu, FindsAWitnessInTheStepIndexedProgram) {
  const IntMatrix a = build_milp_matrices(toy(), 6).combined();
  const auto w = find_non_tu_witness(a, 6, std::chrono::seconds(10));
  ASSERT_TRUE(w.has_value());
  EXPECT_GE(std::abs(w->determinant), 2);
  IntMatrix sub(w->rows.size(), w->cols.size());
  for (std::size_t r = 0; r < w->rows.size(); ++r) {
    for (std::size_t c = 0; c < w->cols.size(); ++c) sub(r, c) = a(w->rows[r], w->cols[c]);
  }
  EXPECT_EQ(cofactor_det(sub), w->determinant);
}

TEST(NonTu, NoWitnessInReachabilityGraphMatrices) {
  for (const char* model : {"toy.pnml", "toy_loop.pnml"}) {
    const SynchronousProduct sp =
        build_sync_product(testutil::load_net(model), Trace{"t", {"a", "c", "b", "e"}});
    const ReachabilityGraph rg = build_reachability_graph(sp, ExplorationLimits::defaults_for(sp));
    EXPECT_FALSE(find_non_tu_witness(node_arc_incidence(rg).dense(), 3, std::chrono::seconds(10)).has_value())
        << model;
  }
}

TEST(NonTu, TuMatrixOfIntervalsHasNoWitness) {
  // Consecutive-ones rows form an interval matrix, which is TU.
  const IntMatrix m = mat({{1, 1, 0, 0}, {0, 1, 1, 0}, {1, 1, 1, 1}, {0, 0, 1, 1}});
  EXPECT_FALSE(find_non_tu_witness(m, 4, std::chrono::seconds(2)).has_value());
  const IntMatrix odd = mat({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  const auto w = find_non_tu_witness(odd, 3, std::chrono::seconds(2));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(std::abs(w->determinant), 2);
}
