#pragma once

#include <optional>

#include "dfcalc/bundles.hpp"

namespace dfcalc {

class DirectImageResult {
public:
    static DirectImageResult vanishes() { return DirectImageResult(); }
    DirectImageResult(int degree, BundleLabel image) : degree_(degree), image_(std::move(image)) {}

    bool is_vanishing() const { return !image_.has_value(); }
    explicit operator bool() const { return image_.has_value(); }
    int degree() const;
    const BundleLabel& image() const;

    bool operator==(const DirectImageResult& o) const;

private:
    DirectImageResult() = default;
    int degree_ = 0;
    std::optional<BundleLabel> image_;
};

// Bott-Borel-Weil along G/total -> G/base.
DirectImageResult direct_image(const ParabolicMarking& total, const ParabolicMarking& base, const BundleLabel& b);

// Base is a point: H^q(G/P; O(E)) as a G-module label.
DirectImageResult full_cohomology(const ParabolicMarking& m, const BundleLabel& b);

}  // namespace dfcalc
