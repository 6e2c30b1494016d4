#include "dfcalc/bundles.hpp"

#include <algorithm>
#include <sstream>

#include "dfcalc/error.hpp"

namespace dfcalc {

ParabolicMarking::ParabolicMarking(CartanPtr cartan, std::vector<bool> crossed)
    : cartan_(std::move(cartan)), crossed_(std::move(crossed)) {
    if (!cartan_) throw InvalidArgument("marking without Cartan data");
    if (static_cast<int>(crossed_.size()) != cartan_->rank())
        throw InvalidArgument("marking has " + std::to_string(crossed_.size()) + " nodes, type " + cartan_->name() +
                              " has " + std::to_string(cartan_->rank()));
    levi_ = share(cartan_->restrict_to(uncrossed_nodes()));
}

ParabolicMarking ParabolicMarking::from_nodes(CartanPtr cartan, const std::vector<int>& nodes) {
    const int n = cartan->rank();
    std::vector<bool> crossed(n, false);
    for (int i : nodes) {
        if (i < 0 || i >= n) throw InvalidArgument("crossed node " + std::to_string(i + 1) + " does not exist");
        crossed[i] = true;
    }
    return ParabolicMarking(std::move(cartan), std::move(crossed));
}

ParabolicMarking ParabolicMarking::from_mask(CartanPtr cartan, std::string_view mask) {
    std::vector<bool> crossed;
    for (char ch : mask) {
        if (ch == 'x' || ch == 'X')
            crossed.push_back(true);
        else if (ch == '.')
            crossed.push_back(false);
        else
            throw InvalidArgument("bad marking character '" + std::string(1, ch) + "' in '" + std::string(mask) + "'");
    }
    return ParabolicMarking(std::move(cartan), std::move(crossed));
}

std::vector<int> ParabolicMarking::crossed_nodes() const {
    std::vector<int> out;
    for (int i = 0; i < rank(); ++i)
        if (crossed_[i]) out.push_back(i);
    return out;
}

std::vector<int> ParabolicMarking::uncrossed_nodes() const {
    std::vector<int> out;
    for (int i = 0; i < rank(); ++i)
        if (!crossed_[i]) out.push_back(i);
    return out;
}

std::string ParabolicMarking::mask() const {
    std::string s;
    for (bool b : crossed_) s += b ? 'x' : '.';
    return s;
}

bool ParabolicMarking::fibres_over(const ParabolicMarking& base) const {
    if (cartan_ != base.cartan_ && !(*cartan_ == base.cartan())) return false;
    for (int i = 0; i < rank(); ++i)
        if (base.crossed_[i] && !crossed_[i]) return false;
    return true;
}

bool ParabolicMarking::in_levi(const Weight& root) const {
    const auto c = cartan_->root_lattice_coords(root);
    for (int i = 0; i < rank(); ++i)
        if (crossed_[i] && c[i] != 0) return false;
    return true;
}

bool ParabolicMarking::operator==(const ParabolicMarking& o) const {
    return crossed_ == o.crossed_ && (cartan_ == o.cartan_ || *cartan_ == *o.cartan_);
}

std::string to_string(const ParabolicMarking& m) {
    return m.cartan().name() + "[" + m.mask() + "]";
}

bool levi_dominant(const ParabolicMarking& m, const Weight& w) {
    if (static_cast<int>(w.rank()) != m.rank()) return false;
    for (int i : m.uncrossed_nodes())
        if (w[i] < 0) return false;
    return true;
}

bool is_line(const ParabolicMarking& m, const Weight& w) {
    for (int i : m.uncrossed_nodes())
        if (w[i] != 0) return false;
    return true;
}

BundleLabel::BundleLabel(ParabolicMarking marking, Weight weight)
    : marking_(std::move(marking)), weight_(std::move(weight)) {
    if (static_cast<int>(weight_.rank()) != marking_.rank())
        throw InvalidArgument("label " + to_string(weight_) + " has wrong length for " + to_string(marking_));
    if (!levi_dominant(marking_, weight_))
        throw InvalidArgument("label " + braces(weight_) + " is not Levi-dominant on " + to_string(marking_));
}

std::string braces(const Weight& w) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < w.rank(); ++i) os << (i ? "," : "") << w[i];
    os << '}';
    return os.str();
}

std::string to_string(const BundleLabel& b) {
    return to_string(b.marking()) + braces(b.weight());
}

std::vector<LeviWeight> levi_weights(const BundleLabel& b) {
    const auto& m = b.marking();
    if (m.levi().rank() == 0) return {LeviWeight{b.weight(), std::vector<int>(m.rank(), 0), 1}};
    const auto& cartan = m.cartan();
    const auto free = m.uncrossed_nodes();
    Weight top(free.size());
    for (std::size_t k = 0; k < free.size(); ++k) top[k] = b.weight()[free[k]];

    std::vector<LeviWeight> out;
    for (const auto& ws : weight_diagram(m.levi(), top)) {
        LeviWeight lw{b.weight(), std::vector<int>(m.rank(), 0), ws.multiplicity};
        for (std::size_t k = 0; k < free.size(); ++k) {
            lw.depth[free[k]] = ws.depth[k];
            lw.weight -= ws.depth[k] * cartan.simple_root(free[k]);
        }
        out.push_back(std::move(lw));
    }
    return out;
}

Character levi_character(const BundleLabel& b) {
    if (b.marking().levi().rank() == 0) return Character{{b.weight(), 1}};
    Character ch;
    for (auto& lw : levi_weights(b)) ch[lw.weight] += lw.multiplicity;
    return ch;
}

long long levi_dimension(const BundleLabel& b) {
    const auto& m = b.marking();
    const auto free = m.uncrossed_nodes();
    Weight top(free.size());
    for (std::size_t k = 0; k < free.size(); ++k) top[k] = b.weight()[free[k]];
    return weyl_dimension(m.levi(), top);
}

Character operator*(const Character& x, const Character& y) {
    Character out;
    for (const auto& [wx, mx] : x)
        for (const auto& [wy, my] : y) out[wx + wy] += mx * my;
    return out;
}

void accumulate(Character& into, const Character& x, long long scale) {
    for (const auto& [w, m] : x) {
        auto& slot = into[w];
        slot += scale * m;
        if (slot == 0) into.erase(w);
    }
}

Weight top_weight(const ParabolicMarking& m, const Character& ch) {
    if (ch.empty()) throw InvalidArgument("empty character has no top weight");
    const auto& cartan = m.cartan();
    auto best = ch.begin();
    long long best_h = cartan.scaled_height(best->first);
    for (auto it = std::next(ch.begin()); it != ch.end(); ++it) {
        const long long h = cartan.scaled_height(it->first);
        if (h > best_h || (h == best_h && it->first > best->first)) {
            best = it;
            best_h = h;
        }
    }
    return best->first;
}

std::vector<std::pair<Weight, long long>> decompose(const ParabolicMarking& m, Character ch) {
    for (auto it = ch.begin(); it != ch.end();) it = it->second == 0 ? ch.erase(it) : std::next(it);
    std::vector<std::pair<Weight, long long>> out;
    if (m.levi().rank() == 0) {
        // Every torus weight is its own irreducible.
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
            if (it->second < 0) throw InvalidArgument("character has negative multiplicity at " + braces(it->first));
            out.emplace_back(it->first, it->second);
        }
        return out;
    }
    while (!ch.empty()) {
        const Weight top = top_weight(m, ch);
        const long long mult = ch[top];
        if (mult < 0 || !levi_dominant(m, top))
            throw InvalidArgument("character is not a sum of Levi irreducibles at " + braces(top));
        accumulate(ch, levi_character(BundleLabel(m, top)), -mult);
        out.emplace_back(top, mult);
    }
    return out;
}

namespace {

bool factor_order(const GradedFactor& a, const GradedFactor& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.label > b.label;
}

}  // namespace

GradedFactorList::GradedFactorList(ParabolicMarking m, std::vector<GradedFactor> factors)
    : marking_(std::move(m)), factors_(std::move(factors)) {
    for (const auto& f : factors_) {
        if (!levi_dominant(marking_, f.label))
            throw InvalidArgument("factor " + braces(f.label) + " is not Levi-dominant on " + to_string(marking_));
        if (f.degree < 0) throw InvalidArgument("negative filtration degree");
    }
    std::stable_sort(factors_.begin(), factors_.end(), factor_order);
}

void GradedFactorList::add(const Weight& label, int degree, long long multiplicity) {
    if (!levi_dominant(marking_, label))
        throw InvalidArgument("factor " + braces(label) + " is not Levi-dominant on " + to_string(marking_));
    if (degree < 0) throw InvalidArgument("negative filtration degree");
    for (long long k = 0; k < multiplicity; ++k) {
        GradedFactor f{label, degree};
        factors_.insert(std::upper_bound(factors_.begin(), factors_.end(), f, factor_order), f);
    }
}

void GradedFactorList::add(const GradedFactorList& other, int degree_shift) {
    if (other.marking() != marking_) throw InvalidArgument("factor lists live on different markings");
    for (const auto& f : other.factors_) add(f.label, f.degree + degree_shift);
}

std::vector<GradedFactor> GradedFactorList::at_degree(int degree) const {
    std::vector<GradedFactor> out;
    for (const auto& f : factors_)
        if (f.degree == degree) out.push_back(f);
    return out;
}

int GradedFactorList::max_degree() const {
    int d = 0;
    for (const auto& f : factors_) d = std::max(d, f.degree);
    return d;
}

long long GradedFactorList::total_dimension() const {
    long long s = 0;
    for (const auto& f : factors_) s += levi_dimension(BundleLabel(marking_, f.label));
    return s;
}

Character GradedFactorList::character() const {
    Character ch;
    for (const auto& f : factors_) accumulate(ch, levi_character(BundleLabel(marking_, f.label)));
    return ch;
}

BundleLabel dual_label(const BundleLabel& b) {
    // Minus the lowest weight, found by reflecting down to Levi-antidominance.
    const auto& m = b.marking();
    const auto free = m.uncrossed_nodes();
    Weight w = b.weight();
    for (bool moved = true; moved;) {
        moved = false;
        for (int i : free)
            if (w[i] > 0) {
                w = reflect(m.cartan(), i, w);
                moved = true;
            }
    }
    return BundleLabel(m, -w);
}

namespace {

bool hits(const std::vector<int>& coeffs, const ParabolicMarking& m) {
    for (int i : m.crossed_nodes())
        if (coeffs[i] != 0) return true;
    return false;
}

}  // namespace

BundleLabel canonical_bundle(const ParabolicMarking& m) {
    const auto& c = m.cartan();
    Weight k(static_cast<std::size_t>(m.rank()));
    for (std::size_t r = 0; r < c.positive_roots().size(); ++r)
        if (hits(c.positive_root_coeffs()[r], m)) k -= c.positive_roots()[r];
    return BundleLabel(m, k);
}

namespace {

std::vector<Weight> relative_roots(const ParabolicMarking& total, const ParabolicMarking& base) {
    if (!total.fibres_over(base))
        throw InvalidArgument("crossed nodes of " + to_string(base) + " are not contained in those of " +
                              to_string(total));
    std::vector<Weight> out;
    const auto& c = total.cartan();
    for (std::size_t r = 0; r < c.positive_roots().size(); ++r) {
        const auto& coeffs = c.positive_root_coeffs()[r];
        if (hits(coeffs, total) && !hits(coeffs, base)) out.push_back(c.positive_roots()[r]);
    }
    return out;
}

}  // namespace

BundleLabel relative_canonical(const ParabolicMarking& total, const ParabolicMarking& base) {
    Weight k(static_cast<std::size_t>(total.rank()));
    for (const auto& r : relative_roots(total, base)) k -= r;
    return BundleLabel(total, k);
}

int fiber_dimension(const ParabolicMarking& total, const ParabolicMarking& base) {
    return static_cast<int>(relative_roots(total, base).size());
}

BundleLabel twist(const BundleLabel& b, const Weight& line) {
    return BundleLabel(b.marking(), b.weight() + line);
}

}  // namespace dfcalc
