#include "tiadc/subadc.hpp"

#include <algorithm>
#include <cmath>

namespace tiadc {

namespace {

// Mid-tread: codes k in [-M/2, M/2 - 1] (M even includes zero and -FS),
// reconstruction k*s with s = 2*FS/M; ties round up.
QuantizedStream quantize_ideal(const Eigen::Ref<const Eigen::ArrayXd>& samples,
                               const SubAdcSpec& spec) {
    const double s = 2.0 * spec.full_scale / spec.levels;
    const int k_min = -spec.levels / 2;
    const int k_max = spec.levels - 1 + k_min;

    QuantizedStream out;
    out.codes.resize(samples.size());
    for (Eigen::Index n = 0; n < samples.size(); ++n) {
        double k = std::floor(samples[n] / s + 0.5);
        if (k < k_min || k > k_max) {
            ++out.saturation_count;
            k = std::clamp(k, static_cast<double>(k_min), static_cast<double>(k_max));
        }
        out.codes[n] = k * s;
    }
    return out;
}

// Error-feedback realization of the two-integrator loop: the quantizer sees
// u - 2q[n-1] + q[n-2], so v = u + (1 - z^-1)^2 q exactly. With an M-level
// mid-rise quantizer (step 2*FS/(M-1)) the loop never overloads for
// |u| <= FS - 3*step/2.
QuantizedStream quantize_delta_sigma2(const Eigen::Ref<const Eigen::ArrayXd>& samples,
                                      const SubAdcSpec& spec) {
    const int m = spec.levels;
    const double a = 2.0 * spec.full_scale / (m - 1);

    QuantizedStream out;
    out.codes.resize(samples.size());
    double q1 = 0.0, q2 = 0.0;
    for (Eigen::Index n = 0; n < samples.size(); ++n) {
        const double w = samples[n] - 2.0 * q1 + q2;
        int idx = static_cast<int>(std::floor(w / a + 0.5 * (m - 1) + 0.5));
        if (idx < 0 || idx >= m) {
            ++out.saturation_count;
            idx = std::clamp(idx, 0, m - 1);
        }
        const double v = (2 * idx + 1 - m) * a / 2.0;
        q2 = q1;
        q1 = v - w;
        out.codes[n] = v;
    }
    return out;
}

}  // namespace

QuantizedStream quantize_stream(const Eigen::Ref<const Eigen::ArrayXd>& samples,
                                const SubAdcSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case SubAdcSpec::Kind::IdealUniform:
            return quantize_ideal(samples, spec);
        case SubAdcSpec::Kind::DeltaSigma2:
            return quantize_delta_sigma2(samples, spec);
    }
    throw ConfigError("unknown sub-ADC kind");
}

}  // namespace tiadc
