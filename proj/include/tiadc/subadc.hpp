#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>

#include "tiadc/errors.hpp"

namespace tiadc {

/// Behavioral per-channel quantizer. ideal_uniform is memoryless mid-tread
/// quantization (used when timing effects must not be masked by converter
/// noise); delta_sigma2 is a second-order loop with an M-step mid-rise
/// quantizer, NTF (1 - z^-1)^2 and unity STF, states reset at stream start.
struct SubAdcSpec {
    enum class Kind { IdealUniform, DeltaSigma2 };

    Kind kind = Kind::DeltaSigma2;
    int levels = 8;
    double full_scale = 1.0;

    void validate() const {
        if (levels < 2) throw ConfigError("sub-ADC needs >= 2 levels");
        if (!(full_scale > 0.0)) throw ConfigError("sub-ADC full scale must be > 0");
    }
};

/// Reconstruction-level output stream plus a silent-clipping statistic.
struct QuantizedStream {
    Eigen::ArrayXd codes;
    std::int64_t saturation_count = 0;
};

QuantizedStream quantize_stream(const Eigen::Ref<const Eigen::ArrayXd>& samples,
                                const SubAdcSpec& spec);

}  // namespace tiadc
