#include "dfcalc/relgeom.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "dfcalc/error.hpp"

namespace dfcalc {

std::string to_string(CycleKind k) {
    return k == CycleKind::Parabolic ? "parabolic" : "reductive";
}

namespace {

std::vector<Weight> all_roots(const CartanData& c) {
    std::vector<Weight> out = c.positive_roots();
    for (const auto& r : c.positive_roots()) out.push_back(-r);
    return out;
}

RootSet parabolic_roots(const ParabolicMarking& m) {
    RootSet out(m.cartan().positive_roots().begin(), m.cartan().positive_roots().end());
    for (const auto& r : m.cartan().positive_roots())
        if (m.in_levi(r)) out.insert(-r);
    return out;
}

RootSet levi_roots(const ParabolicMarking& m) {
    RootSet out;
    for (const auto& r : m.cartan().positive_roots())
        if (m.in_levi(r)) {
            out.insert(r);
            out.insert(-r);
        }
    return out;
}

RootSet intersect(const RootSet& a, const RootSet& b) {
    RootSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

std::vector<Weight> difference(const RootSet& a, const RootSet& b) {
    std::vector<Weight> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

Weight sum(const std::vector<Weight>& ws, std::size_t rank) {
    Weight s(rank);
    for (const auto& w : ws) s += w;
    return s;
}

}  // namespace

FibrationSpec FibrationSpec::make(std::string name, ParabolicMarking source, ParabolicMarking cycle, CycleKind kind,
                                  WeylWord transport, bool hermitian_holomorphic) {
    if (!(source.cartan() == cycle.cartan()))
        throw InvalidArgument("source and cycle markings have different Cartan types");
    const auto& c = source.cartan();
    for (int i : transport.letters())
        if (i < 0 || i >= c.rank())
            throw InvalidArgument("transport letter " + std::to_string(i + 1) + " is not a node");

    RootSet q_roots;
    for (const auto& r : parabolic_roots(source)) q_roots.insert(transport.apply(c, r));
    const RootSet j_roots = kind == CycleKind::Parabolic ? parabolic_roots(cycle) : levi_roots(cycle);
    const RootSet x_roots = intersect(q_roots, j_roots);

    std::vector<bool> crossed(c.rank());
    for (int i = 0; i < c.rank(); ++i) crossed[i] = !x_roots.count(-c.simple_root(i));
    ParabolicMarking total(source.cartan_ptr(), crossed);

    if (x_roots != intersect(j_roots, parabolic_roots(total)))
        throw InvalidArgument("fibration '" + name + "': q ∩ j is not a standard parabolic of the cycle base");
    if (!total.fibres_over(cycle))
        throw InvalidArgument("fibration '" + name + "': intermediate " + to_string(total) + " does not fibre over " +
                              to_string(cycle));

    if (fiber_dimension(total, source) < 1 || fiber_dimension(total, cycle) < 1)
        throw InvalidArgument("fibration '" + name + "': both fibres of " + to_string(total) + " must be positive-dimensional");
    FibrationSpec f(std::move(name), std::move(source), std::move(cycle), std::move(total));
    f.kind_ = kind;
    f.transport_ = std::move(transport);
    f.hermitian_ = hermitian_holomorphic;
    f.x_roots_ = x_roots;
    f.mu_roots_ = difference(q_roots, x_roots);
    f.nu_roots_ = difference(j_roots, x_roots);
    RootSet everything;
    for (const auto& r : all_roots(c)) everything.insert(r);
    f.cycle_complement_ = difference(everything, j_roots);
    return f;
}

FibrationSpec FibrationSpec::twistor() {
    auto a3 = make_cartan("A3");
    return make("twistor-pp", ParabolicMarking::from_mask(a3, "x.."), ParabolicMarking::from_mask(a3, ".x."),
                CycleKind::Parabolic, {}, true);
}

FibrationSpec FibrationSpec::grassmann_pm() {
    auto a3 = make_cartan("A3");
    return make("grassmann-pm", ParabolicMarking::from_mask(a3, ".x."), ParabolicMarking::from_mask(a3, ".x."),
                CycleKind::Reductive, WeylWord{1}, false);
}

bool FibrationSpec::transported() const {
    return !transport_.same_element(cartan(), WeylWord{});
}

BundleLabel FibrationSpec::kappa_cycle() const {
    return BundleLabel(cycle_, sum(cycle_complement_, cycle_.rank()));
}

BundleLabel FibrationSpec::kappa_mu() const {
    return BundleLabel(total_, sum(mu_roots_, total_.rank()));
}

BundleLabel FibrationSpec::kappa_nu() const {
    return BundleLabel(total_, sum(nu_roots_, total_.rank()));
}

namespace {

GradedFactorList from_graded_characters(const ParabolicMarking& m, const std::map<int, Character>& by_degree) {
    std::vector<GradedFactor> out;
    for (const auto& [deg, ch] : by_degree)
        for (const auto& [w, mult] : decompose(m, ch))
            for (long long k = 0; k < mult; ++k) out.push_back(GradedFactor{w, deg});
    return GradedFactorList(m, std::move(out));
}

void tensor_into(const ParabolicMarking& m, const Weight& a, const Weight& b, int degree,
                 std::vector<GradedFactor>& out) {
    if (is_line(m, a) || is_line(m, b)) {
        out.push_back(GradedFactor{a + b, degree});
        return;
    }
    for (const auto& [w, mult] : decompose(m, levi_character(BundleLabel(m, a)) * levi_character(BundleLabel(m, b))))
        for (long long k = 0; k < mult; ++k) out.push_back(GradedFactor{w, degree});
}

// Longest chain v -> v+beta -> ... inside V with beta in the nilradical of x.
std::map<Weight, int> fibre_depths(const FibrationSpec& f) {
    std::vector<Weight> nil;
    for (const auto& r : f.x_roots())
        if (!f.x_roots().count(-r)) nil.push_back(r);
    const RootSet v(f.mu_roots().begin(), f.mu_roots().end());
    std::map<Weight, int> depth;
    std::function<int(const Weight&)> go = [&](const Weight& w) {
        auto it = depth.find(w);
        if (it != depth.end()) return it->second;
        int best = 0;
        for (const auto& beta : nil) {
            const Weight up = w + beta;
            if (v.count(up)) best = std::max(best, 1 + go(up));
        }
        depth[w] = best;
        return best;
    };
    for (const auto& w : v) go(w);
    return depth;
}

}  // namespace

GradedFactorList relative_cotangent(const FibrationSpec& f, int p) {
    const int d = f.d();
    if (p < 0 || p > d)
        throw InvalidArgument("form degree " + std::to_string(p) + " outside 0.." + std::to_string(d));
    const auto depth = fibre_depths(f);
    const auto& v = f.mu_roots();
    const std::size_t rank = f.total().rank();

    std::map<int, Character> by_degree;
    std::function<void(int, int, Weight, int)> choose = [&](int start, int k, Weight acc, int deg) {
        if (k == p) {
            by_degree[deg][acc] += 1;
            return;
        }
        for (int i = start; i <= d - (p - k); ++i) choose(i + 1, k + 1, acc + v[i], deg + depth.at(v[i]));
    };
    choose(0, 0, Weight(rank), 0);
    return from_graded_characters(f.total(), by_degree);
}

GradedFactorList pullback_factors(const FibrationSpec& f, const BundleLabel& b) {
    if (b.marking() != f.source())
        throw InvalidArgument("label " + to_string(b) + " does not live on " + to_string(f.source()));
    const auto crossed_x = f.total().crossed_nodes();
    std::map<int, Character> by_degree;
    for (const auto& lw : levi_weights(b)) {
        int deg = 0;
        for (int i : crossed_x) deg += lw.depth[i];
        by_degree[deg][f.transport_weight(lw.weight)] += lw.multiplicity;
    }
    return from_graded_characters(f.total(), by_degree);
}

GradedFactorList tensor_decompose(const ParabolicMarking& m, const BundleLabel& a, const BundleLabel& b) {
    if (a.marking() != m || b.marking() != m) throw InvalidArgument("tensor factors must live on " + to_string(m));
    std::vector<GradedFactor> out;
    tensor_into(m, a.weight(), b.weight(), 0, out);
    return GradedFactorList(m, std::move(out));
}

GradedFactorList coupled_forms(const FibrationSpec& f, const BundleLabel& e, int p) {
    const auto forms = relative_cotangent(f, p);
    const auto pulled = pullback_factors(f, e);
    const auto& x = f.total();
    std::vector<GradedFactor> out;
    for (const auto& w : forms.factors())
        for (const auto& u : pulled.factors()) tensor_into(x, w.label, u.label, w.degree + u.degree, out);
    return GradedFactorList(x, std::move(out));
}

}  // namespace dfcalc
