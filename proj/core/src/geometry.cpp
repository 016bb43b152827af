#include "mgeom/geometry.hpp"

#include <string>

namespace mgeom {

namespace {

void require_matching_dim(const DataCloud& cloud, const InteractionWeights& weights) {
  if (cloud.dim() != weights.dim()) {
    throw DimensionError("weight matrix is " + std::to_string(weights.dim()) + "x" +
                         std::to_string(weights.dim()) + " but data has " +
                         std::to_string(cloud.dim()) + " features");
  }
}

}  // namespace

GramMatrix gram(const DataCloud& cloud) {
  const Matrix& r = cloud.points();
  Matrix g = r * r.transpose();
  // Force exact symmetry; the product kernel may round the two triangles differently.
  g = g.triangularView<Eigen::Lower>();
  g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
  return {std::move(g), GramKind::plain};
}

GramMatrix generalized_gram(const DataCloud& cloud, const InteractionWeights& weights) {
  require_matching_dim(cloud, weights);
  const Matrix& r = cloud.points();
  return {r * weights.matrix() * r.transpose(), GramKind::generalized};
}

HermitianPartition hermitian_partition(const InteractionWeights& weights) {
  const Matrix& w = weights.matrix();
  HermitianPartition part;
  part.symmetric = 0.5 * (w + w.transpose());
  part.antisymmetric = 0.5 * (w - w.transpose());
  return part;
}

Bidivergence bidivergence(const GramMatrix& gram) {
  const Matrix& g = gram.values;
  if (g.rows() != g.cols()) throw DimensionError("bidivergence needs a square Gram matrix");
  const Index n = g.rows();
  Bidivergence out{Matrix(n, n), Matrix(n, n)};
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      out.fwd(i, j) = (i == j) ? 0.0 : g(i, i) - g(i, j);
      out.bwd(i, j) = (i == j) ? 0.0 : g(j, j) - g(j, i);
    }
  }
  return out;
}

Matrix squared_distance(const Bidivergence& bidiv) {
  if (bidiv.fwd.rows() != bidiv.bwd.rows() || bidiv.fwd.cols() != bidiv.bwd.cols()) {
    throw DimensionError("bidivergence parts differ in shape");
  }
  return bidiv.fwd + bidiv.bwd;
}

Matrix edge_phases(const DataCloud& cloud, const InteractionWeights& weights, Beta beta) {
  const GramMatrix g = generalized_gram(cloud, weights);
  const Index n = g.values.rows();
  const double half_beta = 0.5 * beta.value();
  Matrix theta(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      theta(i, j) = half_beta * (g.values(i, j) - g.values(j, i));
    }
  }
  return theta;
}

}  // namespace mgeom
