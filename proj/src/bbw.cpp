#include "dfcalc/bbw.hpp"

#include "dfcalc/error.hpp"

namespace dfcalc {

int DirectImageResult::degree() const {
    if (!image_) throw std::logic_error("vanishing direct image has no degree");
    return degree_;
}

const BundleLabel& DirectImageResult::image() const {
    if (!image_) throw std::logic_error("vanishing direct image has no label");
    return *image_;
}

bool DirectImageResult::operator==(const DirectImageResult& o) const {
    if (is_vanishing() || o.is_vanishing()) return is_vanishing() == o.is_vanishing();
    return degree_ == o.degree_ && *image_ == *o.image_;
}

DirectImageResult direct_image(const ParabolicMarking& total, const ParabolicMarking& base, const BundleLabel& b) {
    if (!total.fibres_over(base))
        throw InvalidArgument(to_string(total) + " does not fibre over " + to_string(base));
    if (b.marking() != total) throw InvalidArgument("label " + to_string(b) + " does not live on " + to_string(total));

    const auto& c = total.cartan();
    const auto free = base.uncrossed_nodes();
    Weight shifted = b.weight() + c.rho();
    int q = 0;
    // A reduced word in W_base has at most |positive roots| letters; guard anyway.
    const int bound = static_cast<int>(c.positive_roots().size()) + 1;
    while (true) {
        int node = -1;
        for (int i : free) {
            if (shifted[i] == 0) return DirectImageResult::vanishes();
            if (shifted[i] < 0 && node < 0) node = i;
        }
        if (node < 0) break;
        shifted = reflect(c, node, shifted);
        if (++q > bound) throw std::logic_error("direct_image failed to terminate");
    }
    return DirectImageResult(q, BundleLabel(base, shifted - c.rho()));
}

DirectImageResult full_cohomology(const ParabolicMarking& m, const BundleLabel& b) {
    return direct_image(m, ParabolicMarking(m.cartan_ptr(), std::vector<bool>(m.rank(), false)), b);
}

}  // namespace dfcalc
