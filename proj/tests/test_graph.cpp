#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "relaxden/errors.hpp"
#include "relaxden/graph.hpp"
#include "relaxden/objectives.hpp"
#include "relaxden/signal.hpp"
#include "test_support.hpp"

using namespace relaxden;
using relaxden::testing::random_matrix_signal;
using relaxden::testing::random_vector_signal;

namespace {

// Scalar TV straight from the definition, one coordinate at a time.
double scalar_tv(const Eigen::VectorXd& x, const Graph& g) {
  double s = 0.0;
  for (const auto& e : g.edges()) s += std::abs(x(e.first) - x(e.second));
  return s;
}

}  // namespace

TEST(BuildChain, SingleVertexHasNoEdges) {
  const Graph g = build_chain(1);
  EXPECT_EQ(g.num_vertices(), 1);
  EXPECT_EQ(g.num_edges(), 0);
}

TEST(BuildChain, TwoVertices) {
  const Graph g = build_chain(2);
  ASSERT_EQ(g.num_edges(), 1);
  EXPECT_EQ(g.edge(0), (Edge{0, 1}));
}

TEST(BuildChain, Length200) {
  const Graph g = build_chain(200);
  EXPECT_EQ(g.num_edges(), 199);
  for (Index n = 1; n + 1 < 200; ++n) EXPECT_EQ(neighbor_count(g, n), 2);
  EXPECT_EQ(neighbor_count(g, 0), 1);
  EXPECT_EQ(neighbor_count(g, 199), 1);
  EXPECT_TRUE(g.is_chain());
}

TEST(BuildChain, ZeroIsInvalid) { EXPECT_THROW(build_chain(0), InvalidSizeError); }

TEST(BuildGrid, OneRowEqualsChain) {
  const Graph grid = build_grid(1, 7);
  const Graph chain = build_chain(7);
  ASSERT_EQ(grid.num_edges(), chain.num_edges());
  for (Index e = 0; e < grid.num_edges(); ++e) EXPECT_EQ(grid.edge(e), chain.edge(e));
}

TEST(BuildGrid, EdgeCounts) {
  EXPECT_EQ(build_grid(2, 2).num_edges(), 4);
  EXPECT_EQ(build_grid(3, 3).num_edges(), 12);
  EXPECT_EQ(build_grid(4, 7).num_edges(), 4 * 6 + 7 * 3);
}

TEST(BuildGrid, ZeroDimensionIsInvalid) {
  EXPECT_THROW(build_grid(0, 3), InvalidSizeError);
  EXPECT_THROW(build_grid(3, 0), InvalidSizeError);
}

TEST(BuildGrid, RowMajorNeighbours) {
  const Graph g = build_grid(3, 4);
  // vertex (1, 2) -> 6, neighbours 2, 5, 7, 10
  std::vector<Index> nbrs;
  for (Index e : g.incident_edges(6)) {
    const auto& ed = g.edge(e);
    nbrs.push_back(ed.first == 6 ? ed.second : ed.first);
  }
  std::sort(nbrs.begin(), nbrs.end());
  EXPECT_EQ(nbrs, (std::vector<Index>{2, 5, 7, 10}));
  ASSERT_TRUE(g.grid_shape().has_value());
  EXPECT_EQ(g.grid_shape()->height, 3);
  EXPECT_EQ(g.grid_shape()->width, 4);
}

TEST(NeighborCount, Examples) {
  const Graph c3 = build_chain(3);
  EXPECT_EQ(neighbor_count(c3, 1), 2);
  EXPECT_EQ(neighbor_count(c3, 0), 1);
  EXPECT_EQ(neighbor_count(build_grid(3, 3), 4), 4);
}

TEST(NeighborCount, OutOfRange) {
  const Graph g = build_chain(3);
  EXPECT_THROW(neighbor_count(g, 3), IndexError);
  EXPECT_THROW(neighbor_count(g, -1), IndexError);
}

TEST(NeighborCount, SumsToTwiceEdgeCount) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = relaxden::testing::random_connected_graph(2 + trial, trial, rng);
    Index sum = 0;
    for (Index n = 0; n < g.num_vertices(); ++n) sum += neighbor_count(g, n);
    EXPECT_EQ(sum, 2 * g.num_edges());
  }
}

TEST(GraphConstruction, NormalizesAndSorts) {
  const Graph g(3, {{2, 1}, {0, 1}});
  ASSERT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.edge(0), (Edge{0, 1}));
  EXPECT_EQ(g.edge(1), (Edge{1, 2}));
}

TEST(GraphConstruction, RejectsInvalidInput) {
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}, {1, 2}}), GraphError);  // duplicate
  EXPECT_THROW(Graph(2, {{1, 1}}), GraphError);                  // self loop
  EXPECT_THROW(Graph(2, {{0, 2}}), IndexError);                  // out of range
  EXPECT_THROW(Graph(3, {{0, 1}}), GraphError);                  // disconnected
  EXPECT_THROW(Graph(0, {}), InvalidSizeError);
}

TEST(TvSeminorm, VectorExamples) {
  EXPECT_EQ(tv_seminorm(VectorSignal(Eigen::MatrixXd::Constant(5, 2, 0.3)), build_chain(5)), 0.0);
  Eigen::MatrixXd x(2, 2);
  x << 1, -1, -1, -1;
  EXPECT_DOUBLE_EQ(tv_seminorm(VectorSignal(x), build_chain(2)), 2.0);
  Eigen::MatrixXd sq(4, 1);
  sq << 0, 1, 1, 0;
  // edges (0,1) (0,2) (1,3) (2,3): 1 + 1 + 1 + 1
  EXPECT_DOUBLE_EQ(tv_seminorm(VectorSignal(sq), build_grid(2, 2)), 4.0);
}

TEST(TvSeminorm, ShapeMismatch) {
  EXPECT_THROW(tv_seminorm(VectorSignal::zeros(3, 1), build_chain(4)), DimensionError);
  EXPECT_THROW(tv_seminorm(MatrixSignal::zeros(3, 2, 2), build_chain(4)), DimensionError);
}

TEST(TvSeminorm, MatrixExamples) {
  const Graph g = build_chain(2);
  const Eigen::MatrixXd e = Eigen::MatrixXd::Identity(3, 2);
  EXPECT_EQ(tv_seminorm(MatrixSignal(3, 2, {e, e}), g), 0.0);
  EXPECT_DOUBLE_EQ(tv_seminorm(MatrixSignal(3, 2, {e, -e}), g), 4.0);
}

TEST(TvSeminorm, MatrixIsSumOfScalarTvs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = trial % 2 ? build_chain(3) : build_grid(3, 4);
    const MatrixSignal x = random_matrix_signal(g.num_vertices(), 3, 2, rng);
    const Eigen::MatrixXd coords = x.coordinates();
    double sum = 0.0;
    for (Index c = 0; c < coords.cols(); ++c) sum += scalar_tv(coords.col(c), g);
    EXPECT_NEAR(tv_seminorm(x, g), sum, 1e-12);
  }
}

TEST(TvSeminorm, HomogeneityAndTriangleInequality) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> alpha(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = relaxden::testing::random_connected_graph(8, 6, rng);
    const VectorSignal a = random_vector_signal(8, 2, rng);
    const VectorSignal b = random_vector_signal(8, 2, rng);
    const double s = alpha(rng);
    EXPECT_NEAR(tv_seminorm(VectorSignal(s * a.data()), g), std::abs(s) * tv_seminorm(a, g),
                1e-12);
    EXPECT_LE(tv_seminorm(VectorSignal(a.data() + b.data()), g),
              tv_seminorm(a, g) + tv_seminorm(b, g) + 1e-12);

    const MatrixSignal ma = random_matrix_signal(8, 3, 2, rng);
    const MatrixSignal mb = random_matrix_signal(8, 3, 2, rng);
    std::vector<Eigen::MatrixXd> scaled, summed;
    for (Index n = 0; n < 8; ++n) {
      scaled.push_back(s * ma.node(n));
      summed.push_back(ma.node(n) + mb.node(n));
    }
    EXPECT_NEAR(tv_seminorm(MatrixSignal(3, 2, scaled), g), std::abs(s) * tv_seminorm(ma, g),
                1e-12);
    EXPECT_LE(tv_seminorm(MatrixSignal(3, 2, summed), g),
              tv_seminorm(ma, g) + tv_seminorm(mb, g) + 1e-12);
  }
}

TEST(ObjectiveBinary, Examples) {
  EXPECT_EQ(objective_binary(VectorSignal::zeros(4, 2), VectorSignal::zeros(4, 2), 1.0,
                             build_chain(4)),
            0.0);
  Eigen::MatrixXd x(1, 2), y(1, 2);
  x << 1, -1;
  y << 0.3, -2.0;
  EXPECT_DOUBLE_EQ(objective_binary(VectorSignal(x), VectorSignal(y), 7.0, build_chain(1)), -2.3);
  Eigen::MatrixXd x2(2, 1), y2(2, 1);
  x2 << 1, -1;
  y2 << 1, 1;
  EXPECT_DOUBLE_EQ(objective_binary(VectorSignal(x2), VectorSignal(y2), 0.5, build_chain(2)), 1.0);
}

TEST(ObjectiveBinary, RejectsBadInput) {
  const Graph g = build_chain(3);
  EXPECT_THROW(objective_binary(VectorSignal::zeros(3, 2), VectorSignal::zeros(3, 1), 1.0, g),
               DimensionError);
  EXPECT_THROW(objective_binary(VectorSignal::zeros(3, 2), VectorSignal::zeros(3, 2), 0.0, g),
               ParameterError);
}

TEST(ObjectiveBinary, MatchesQuadraticFidelityOnBinarySignals) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = build_grid(3, 3);
    Eigen::MatrixXd x(9, 3);
    for (Index i = 0; i < x.size(); ++i) x.data()[i] = coin(rng) ? 1.0 : -1.0;
    const VectorSignal y = random_vector_signal(9, 3, rng, 2.0);
    const double lambda = 0.7;
    const double quadratic =
        0.5 * (x - y.data()).squaredNorm() + lambda * tv_seminorm(VectorSignal(x), g);
    const double k = objective_binary(VectorSignal(x), y, lambda, g);
    EXPECT_NEAR(k + 0.5 * x.squaredNorm() + 0.5 * y.data().squaredNorm(), quadratic, 1e-10);
  }
}

TEST(ObjectiveStiefelTv, Examples) {
  EXPECT_EQ(objective_stiefel_tv(MatrixSignal::zeros(3, 3, 2), MatrixSignal::zeros(3, 3, 2), 1.0,
                                 build_chain(3)),
            0.0);
  std::mt19937_64 rng(2);
  const Eigen::MatrixXd q = relaxden::testing::haar_stiefel(3, 2, rng);
  EXPECT_NEAR(objective_stiefel_tv(MatrixSignal(3, 2, {q}), MatrixSignal(3, 2, {q}), 4.0,
                                   build_chain(1)),
              -2.0, 1e-12);
  const MatrixSignal y = random_matrix_signal(2, 3, 2, rng);
  const double fit = -(q.cwiseProduct(y.node(0)).sum() + q.cwiseProduct(y.node(1)).sum());
  EXPECT_NEAR(objective_stiefel_tv(MatrixSignal(3, 2, {q, q}), y, 3.0, build_chain(2)), fit,
              1e-12);
}

TEST(ObjectiveTikhonov, Examples) {
  const Graph g = build_chain(2);
  const MatrixSignal zero = MatrixSignal::zeros(2, 3, 2);
  EXPECT_EQ(objective_tikhonov(zero, EdgeCoupling::zeros(1, 2), zero, 1.0, g), 0.0);
  EXPECT_DOUBLE_EQ(
      objective_tikhonov(zero, EdgeCoupling(2, {Eigen::MatrixXd::Identity(2, 2)}), zero, 1.0, g),
      -2.0);
  EXPECT_DOUBLE_EQ(
      objective_tikhonov(zero, EdgeCoupling(2, {Eigen::MatrixXd::Ones(2, 2)}), zero, 2.0, g),
      -2.0 * 4.0);
}

TEST(ObjectiveTikhonov, ShapeMismatch) {
  const Graph g = build_chain(3);
  const MatrixSignal zero = MatrixSignal::zeros(3, 3, 2);
  EXPECT_THROW(objective_tikhonov(zero, EdgeCoupling::zeros(1, 2), zero, 1.0, g), DimensionError);
}

TEST(Signals, RejectNonFiniteAndBadShapes) {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(VectorSignal{bad}, DataError);
  EXPECT_THROW(MatrixSignal(2, 3, {Eigen::MatrixXd::Zero(2, 3)}), DimensionError);
  EXPECT_THROW(MatrixSignal(3, 2, {Eigen::MatrixXd::Zero(2, 2)}), DimensionError);
}

TEST(Signals, CoordinateRoundTrip) {
  std::mt19937_64 rng(4);
  const MatrixSignal x = random_matrix_signal(5, 4, 3, rng);
  const Eigen::MatrixXd c = x.coordinates();
  EXPECT_EQ(c(2, 1 * 3 + 2), x.node(2)(1, 2));
  const MatrixSignal back = MatrixSignal::from_coordinates(4, 3, c);
  for (Index n = 0; n < 5; ++n) EXPECT_EQ(back.node(n), x.node(n));
}
