#pragma once

// Richardson table for sequences sampled at eps_k = eps0 * ratio^k whose
// error expands in powers of sqrt(eps). Each column removes one half-power,
// so a sqrt(eps) tail (supp A outside supp B) does not stall the stop rule.

#include <cmath>
#include <vector>

namespace qdiv::detail {

template <class T>
class HalfPowerRichardson {
  public:
    HalfPowerRichardson(double ratio, int depth) : sqrt_ratio_(std::sqrt(ratio)), depth_(depth) {}

    /// Adds X_k and returns the deepest extrapolant available.
    T push(T x) {
        std::vector<T> row{std::move(x)};
        double factor = 1.0;
        for (int j = 1; j <= depth_ && j <= static_cast<int>(last_.size()); ++j) {
            factor *= sqrt_ratio_;
            row.push_back((row[j - 1] - factor * last_[j - 1]) / (1.0 - factor));
        }
        last_ = std::move(row);
        return last_.back();
    }

  private:
    double sqrt_ratio_;
    int depth_;
    std::vector<T> last_;
};

} // namespace qdiv::detail
