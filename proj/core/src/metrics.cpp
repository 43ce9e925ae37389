#include "relaxden/metrics.hpp"

#include <cmath>
#include <string>

#include "relaxden/errors.hpp"

namespace relaxden {

namespace {

void require_same_shape(const VectorSignal& a, const VectorSignal& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) {
    throw DimensionError("signal shapes differ: " + std::to_string(a.size()) + "x" +
                         std::to_string(a.dim()) + " vs " + std::to_string(b.size()) + "x" +
                         std::to_string(b.dim()));
  }
}

}  // namespace

double metric_mse(const VectorSignal& a, const VectorSignal& b) {
  require_same_shape(a, b);
  if (a.data().size() == 0) return 0.0;
  return (a.data() - b.data()).squaredNorm() / static_cast<double>(a.data().size());
}

double metric_mse(const MatrixSignal& a, const MatrixSignal& b) {
  a.check_same_shape(b);
  const double count = static_cast<double>(a.size() * a.rows() * a.cols());
  if (count == 0.0) return 0.0;
  double sum = 0.0;
  for (Index n = 0; n < a.size(); ++n) sum += (a.node(n) - b.node(n)).squaredNorm();
  return sum / count;
}

double metric_dist_to_Bd(const VectorSignal& x) {
  if (x.data().size() == 0) return 0.0;
  return (x.data().cwiseAbs().array() - 1.0).abs().mean();
}

double pixel_accuracy(const VectorSignal& rounded, const VectorSignal& truth) {
  require_same_shape(rounded, truth);
  if (rounded.size() == 0) return 1.0;
  Index hits = 0;
  for (Index n = 0; n < rounded.size(); ++n) {
    if ((rounded.node(n).array() == truth.node(n).array()).all()) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(rounded.size());
}

double module_accuracy(const VectorSignal& rounded, const VectorSignal& truth, Index modules_h,
                       Index modules_w, Index upsample) {
  require_same_shape(rounded, truth);
  const Index width = modules_w * upsample;
  if (modules_h <= 0 || modules_w <= 0 || upsample <= 0 ||
      rounded.size() != modules_h * upsample * width) {
    throw DimensionError("module grid " + std::to_string(modules_h) + "x" +
                         std::to_string(modules_w) + " at upsample " + std::to_string(upsample) +
                         " does not match a signal of " + std::to_string(rounded.size()) +
                         " pixels");
  }
  Index hits = 0;
  for (Index mr = 0; mr < modules_h; ++mr) {
    for (Index mc = 0; mc < modules_w; ++mc) {
      const Index anchor = (mr * upsample) * width + mc * upsample;
      for (Index ch = 0; ch < rounded.dim(); ++ch) {
        double vote = 0.0;
        for (Index r = 0; r < upsample; ++r)
          for (Index c = 0; c < upsample; ++c)
            vote += rounded.data()((mr * upsample + r) * width + mc * upsample + c, ch);
        const double expected = truth.data()(anchor, ch);
        if (vote != 0.0 && std::copysign(1.0, vote) == expected) ++hits;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(modules_h * modules_w * rounded.dim());
}

}  // namespace relaxden
