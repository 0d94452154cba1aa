#ifndef NERVETOPO_DESCRIPTOR_HPP
#define NERVETOPO_DESCRIPTOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace nervetopo {

/** Feature vector assigned by a description map; channels expected in [0, 1]. */
using FeatureVector = std::vector<double>;

/** Quantized feature vector; descriptor equality is exact equality of these. */
using QuantizedVector = std::vector<std::int32_t>;

enum class DescriptorDomain { vertex, triangle };

/**
 * The feature map Phi on either vertices or triangles. Descriptor equality
 * means exact equality of the per-channel quantization (default 8 bins per
 * channel over [0, 1]), which makes the descriptive relations decidable.
 */
class DescriptorMap {
public:
    explicit DescriptorMap(DescriptorDomain domain, int bins_per_channel = 8)
        : domain_(domain), bins_(bins_per_channel) {
        if (bins_ < 1) throw std::invalid_argument("quantization bins must be at least 1");
    }

    DescriptorDomain domain() const { return domain_; }
    int bins() const { return bins_; }
    std::size_t dimension() const { return dim_; }
    std::size_t size() const { return table_.size(); }

    void set(std::uint32_t id, FeatureVector value) {
        if (value.empty()) throw std::invalid_argument("feature vector must be nonempty");
        for (double v : value)
            if (!std::isfinite(v)) throw std::invalid_argument("feature vector entries must be finite");
        if (table_.empty())
            dim_ = value.size();
        else if (value.size() != dim_)
            throw std::invalid_argument("feature vectors must share one dimension");
        table_[id] = std::move(value);
    }

    bool defined(std::uint32_t id) const { return table_.count(id) != 0; }

    const FeatureVector& feature(std::uint32_t id) const {
        auto it = table_.find(id);
        if (it == table_.end()) throw std::invalid_argument(undefined_message(id));
        return it->second;
    }

    QuantizedVector quantized(std::uint32_t id) const {
        const FeatureVector& f = feature(id);
        QuantizedVector q(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double clamped = std::clamp(f[i], 0.0, 1.0);
            q[i] = std::min(bins_ - 1, static_cast<std::int32_t>(clamped * bins_));
        }
        return q;
    }

private:
    std::string undefined_message(std::uint32_t id) const {
        return std::string("descriptor undefined for ") +
               (domain_ == DescriptorDomain::triangle ? "triangle " : "vertex ") +
               std::to_string(id);
    }

    DescriptorDomain domain_;
    int bins_;
    std::size_t dim_ = 0;
    std::unordered_map<std::uint32_t, FeatureVector> table_;
};

}  // namespace nervetopo

#endif  // NERVETOPO_DESCRIPTOR_HPP
