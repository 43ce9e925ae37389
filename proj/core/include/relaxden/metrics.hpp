#pragma once

#include "relaxden/signal.hpp"

namespace relaxden {

/// Mean over all scalar entries of the squared difference.
double metric_mse(const VectorSignal& a, const VectorSignal& b);
double metric_mse(const MatrixSignal& a, const MatrixSignal& b);

/// Mean over entries of | |x| - 1 |, the entrywise distance to {-1, 1}^d.
double metric_dist_to_Bd(const VectorSignal& x);

/// Fraction of nodes whose vector equals the truth exactly.
double pixel_accuracy(const VectorSignal& rounded, const VectorSignal& truth);

/// Fraction of (module, channel) cells of an upsampled module grid whose
/// majority vote over the module's pixels matches the truth. Ties count as wrong.
double module_accuracy(const VectorSignal& rounded, const VectorSignal& truth, Index modules_h,
                       Index modules_w, Index upsample);

}  // namespace relaxden
