// Gram matrices, QK bidivergences and squared distances.
//
// Convention: fwd(i, j) = G(i, i) - G(i, j) and bwd(i, j) = G(j, j) - G(j, i),
// so that bwd = fwd^T for any (possibly asymmetric) Gram matrix and a row
// softmax of -beta * fwd equals a row softmax of beta * G.

#pragma once

#include "mgeom/types.hpp"

namespace mgeom {

// G = R R^T.
GramMatrix gram(const DataCloud& cloud);

// G = R W R^T. No symmetry guarantee unless W is symmetric.
GramMatrix generalized_gram(const DataCloud& cloud, const InteractionWeights& weights);

// S = (W + W^T)/2, A = (W - W^T)/2.
HermitianPartition hermitian_partition(const InteractionWeights& weights);

Bidivergence bidivergence(const GramMatrix& gram);

// D^2 = fwd + bwd. Symmetric with zero diagonal.
Matrix squared_distance(const Bidivergence& bidiv);

// Theta(i, j) = beta * (G(i, j) - G(j, i)) / 2 on the generalized Gram matrix.
// Exactly antisymmetric.
Matrix edge_phases(const DataCloud& cloud, const InteractionWeights& weights, Beta beta);

}  // namespace mgeom
