#include "risched/rate_tensor.hpp"

#include <ostream>
#include <stdexcept>

namespace risched {

RateTensor::RateTensor(std::size_t users, std::size_t rbs, std::size_t configs)
    : users_(users), rbs_(rbs), configs_(configs), data_(users * rbs * configs, 0.0) {
    if (users == 0 || rbs == 0 || configs == 0) throw std::invalid_argument("rate tensor dimensions must be positive");
}

RateTensor RateTensor::scaled(double alpha) const {
    RateTensor out = *this;
    for (double& v : out.data_) v *= alpha;
    return out;
}

void RateTensor::write_csv(std::ostream& os) const {
    os << "user,rb,config,rate\n";
    const auto old_precision = os.precision(12);
    for (std::size_t k = 0; k < users_; ++k)
        for (std::size_t c = 0; c < configs_; ++c)
            for (std::size_t f = 0; f < rbs_; ++f) os << k << ',' << f << ',' << c + 1 << ',' << at(k, f, c) << '\n';
    os.precision(old_precision);
}

}  // namespace risched
