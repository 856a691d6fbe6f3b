#include "risched/frequency.hpp"

#include <stdexcept>
#include <string>

namespace risched {

void FrequencyGrid::validate() const {
    if (!(f0 > 0.0)) throw std::invalid_argument("carrier frequency must be positive");
    if (!(delta_f > 0.0)) throw std::invalid_argument("RB spacing must be positive");
    if (n_rb == 0 || n_rb > kMaxResourceBlocks)
        throw std::invalid_argument("number of RBs must be in [1, " +
                                    std::to_string(kMaxResourceBlocks) + "]");
}

}  // namespace risched
