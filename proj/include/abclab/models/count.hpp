#ifndef ABCLAB_MODELS_COUNT_HPP
#define ABCLAB_MODELS_COUNT_HPP

#include "abclab/model.hpp"

namespace abclab {

// Poisson P(lambda) with lambda ~ Exp(1); summary S = sum y_i.
ModelSpec poisson_model();

// Geometric G(p) on support {0,1,2,...} with pmf p(1-p)^y and p ~ U(0,1);
// summary S = sum y_i, which is NegBin(n, p).  The zero-based support is
// essential: shifting it breaks the negative-binomial law of S and with it
// every closed form below.
ModelSpec geometric_model();

enum class CrossPair { poisson_geometric, normal_pair };

// Statistic that is sufficient across the pair: (S, sum log y_i!) for the
// count pair, (ybar, sum (y_i - ybar)^2) for the normal pair.
SummaryVector cross_model_summary(CrossPair pair, const Dataset& y);

// Copy of a model with its summary map replaced by the cross-model statistic.
ModelSpec with_cross_summary(ModelSpec model, CrossPair pair);

}  // namespace abclab

#endif
