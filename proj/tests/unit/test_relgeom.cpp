#include "doctest.h"
#include "dfcalc/error.hpp"
#include "dfcalc/relgeom.hpp"
#include "oracles.hpp"

using namespace dfcalc;

namespace {

std::vector<std::pair<Weight, int>> flat(const GradedFactorList& g) {
    std::vector<std::pair<Weight, int>> out;
    for (const auto& f : g.factors()) out.emplace_back(f.label, f.degree);
    return out;
}

std::multiset<Weight> labels(const GradedFactorList& g) {
    std::multiset<Weight> out;
    for (const auto& f : g.factors()) out.insert(f.label);
    return out;
}

using Flat = std::vector<std::pair<Weight, int>>;

}  // namespace

TEST_SUITE("relgeom") {

TEST_CASE("the two bundled fibrations") {
    const auto t = FibrationSpec::twistor();
    CHECK(t.total().mask() == "xx.");
    CHECK(t.d() == 2);
    CHECK(t.s() == 1);
    CHECK(t.hermitian_holomorphic());
    CHECK_FALSE(t.transported());

    const auto g = FibrationSpec::grassmann_pm();
    CHECK(g.total().mask() == "xxx");
    CHECK(g.d() == 6);
    CHECK(g.s() == 2);
    CHECK(g.transported());
    CHECK(g.kappa_mu().weight() == Weight{2, -2, 2});
    CHECK(g.kappa_nu().weight() == Weight{-2, 2, -2});
    CHECK(g.kappa_cycle().weight() == Weight{0, 0, 0});
    CHECK(t.kappa_mu().weight() == Weight{2, -3, 0});
    CHECK(t.kappa_nu().weight() == Weight{-2, 1, 0});

    const auto a3 = make_cartan("A3");
    CHECK_THROWS_AS(FibrationSpec::make("bad", ParabolicMarking::from_mask(a3, "x.."), ParabolicMarking::from_mask(a3, "x..")),
                    InvalidArgument);
}

TEST_CASE("kappa factorizes two ways") {
    for (const auto& f : {FibrationSpec::twistor(), FibrationSpec::grassmann_pm()}) {
        // Sum of the cotangent weights of X, straight from the root sets.
        Weight kx(3);
        for (const auto& r : f.cartan().positive_roots())
            for (const auto& w : {r, -r})
                if (!f.x_roots().count(w)) kx += w;
        CHECK(kx == f.transport_weight(f.kappa_source().weight()) + f.kappa_mu().weight());
        CHECK(kx == f.kappa_cycle().weight() + f.kappa_nu().weight());
    }
    CHECK(canonical_bundle(FibrationSpec::twistor().total()).weight() == Weight{-2, -3, 0});
}

TEST_CASE("relative forms") {
    const auto t = FibrationSpec::twistor();
    CHECK(flat(relative_cotangent(t, 0)) == Flat{{Weight{0, 0, 0}, 0}});
    CHECK(flat(relative_cotangent(t, 1)) == Flat{{Weight{1, -2, 1}, 0}});
    CHECK(flat(relative_cotangent(t, 2)) == Flat{{Weight{2, -3, 0}, 0}});
    CHECK_THROWS_AS(relative_cotangent(t, 3), InvalidArgument);

    const auto g = FibrationSpec::grassmann_pm();
    CHECK(flat(relative_cotangent(g, 1)) == Flat{{Weight{1, 0, 1}, 0},
                                                 {Weight{1, -2, 1}, 0},
                                                 {Weight{1, 1, -1}, 1},
                                                 {Weight{1, -1, -1}, 1},
                                                 {Weight{-1, 1, 1}, 1},
                                                 {Weight{-1, -1, 1}, 1}});
    const auto two = labels(relative_cotangent(g, 2));
    CHECK(two.size() == 15);
    CHECK(two.count(Weight{-2, 0, 2}) == 1);
    CHECK(two.count(Weight{2, 0, -2}) == 1);
    CHECK(two.count(Weight{0, 0, 0}) == 2);
    CHECK(two.count(Weight{2, -1, 0}) == 2);
    CHECK(two.count(Weight{0, -1, 2}) == 2);
}

TEST_CASE("rank bookkeeping and the Hodge identity") {
    for (const auto& f : {FibrationSpec::twistor(), FibrationSpec::grassmann_pm()}) {
        const int d = f.d();
        long long binom = 1;
        for (int p = 0; p <= d; ++p) {
            CHECK(relative_cotangent(f, p).total_dimension() == binom);
            binom = binom * (d - p) / (p + 1);

            std::multiset<Weight> rhs;
            const auto& x = f.total();
            const auto complement = relative_cotangent(f, d - p);
            for (const auto& fac : complement.factors()) {
                const auto dual = dual_label(BundleLabel(x, fac.label));
                for (const auto& w : labels(tensor_decompose(x, f.kappa_mu(), dual))) rhs.insert(w);
            }
            CHECK(labels(relative_cotangent(f, p)) == rhs);
        }
    }
}

TEST_CASE("pullbacks") {
    const auto t = FibrationSpec::twistor();
    for (int k = -4; k <= 4; ++k)
        CHECK(flat(pullback_factors(t, BundleLabel(t.source(), {k, 0, 0}))) == Flat{{Weight{k, 0, 0}, 0}});
    CHECK(flat(pullback_factors(t, BundleLabel(t.source(), {1, 0, 1}))) ==
          Flat{{Weight{1, 0, 1}, 0}, {Weight{2, -1, 0}, 1}});
    CHECK(flat(pullback_factors(t, BundleLabel(t.source(), {0, 1, 1}))) ==
          Flat{{Weight{0, 1, 1}, 0}, {Weight{1, 0, 0}, 1}, {Weight{1, -1, 2}, 1}, {Weight{2, -2, 1}, 2}});

    const auto g = FibrationSpec::grassmann_pm();
    CHECK(flat(pullback_factors(g, BundleLabel(g.source(), {2, 1, 0}))) ==
          Flat{{Weight{3, -1, 1}, 0}, {Weight{2, -2, 2}, 1}, {Weight{1, -3, 3}, 2}});
}

TEST_CASE("branching conserves characters") {
    std::mt19937_64 rng(17);
    for (const auto& f : {FibrationSpec::twistor(), FibrationSpec::grassmann_pm()}) {
        for (int k = 0; k < 40; ++k) {
            const BundleLabel e(f.source(), oracle::random_label(rng, f.source(), -5, 4));
            const auto pb = pullback_factors(f, e);
            CHECK(pb.total_dimension() == levi_dimension(e));
            // Transported character of E, weight by weight.
            Character want;
            for (const auto& [w, m] : levi_character(e)) want[f.transport_weight(w)] += m;
            CHECK(pb.character() == want);
        }
    }
}

TEST_CASE("tensor products") {
    const auto t = FibrationSpec::twistor();
    const auto& x = t.total();
    auto tensor = [&](Weight a, Weight b) {
        return labels(tensor_decompose(x, BundleLabel(x, std::move(a)), BundleLabel(x, std::move(b))));
    };
    CHECK(tensor({1, -2, 1}, {2, 1, 1}) == std::multiset<Weight>{{3, -1, 2}, {3, 0, 0}});
    CHECK(tensor({1, -2, 1}, {2, 1, 0}) == std::multiset<Weight>{{3, -1, 1}});
    CHECK(tensor({4, -1, 3}, {0, 0, 0}) == std::multiset<Weight>{{4, -1, 3}});
    CHECK_THROWS_AS(tensor_decompose(x, BundleLabel(t.source(), {0, 0, 0}), BundleLabel(x, {0, 0, 0})), InvalidArgument);
}

TEST_CASE("coupled forms") {
    const auto t = FibrationSpec::twistor();
    for (int k = -6; k <= 6; ++k)
        CHECK(flat(coupled_forms(t, BundleLabel(t.source(), {k, 0, 0}), 1)) == Flat{{Weight{k + 1, -2, 1}, 0}});
    const BundleLabel theta(t.source(), {1, 0, 1});
    CHECK(flat(coupled_forms(t, theta, 0)) == Flat{{Weight{1, 0, 1}, 0}, {Weight{2, -1, 0}, 1}});
    CHECK(flat(coupled_forms(t, theta, 1)) ==
          Flat{{Weight{2, -1, 0}, 0}, {Weight{2, -2, 2}, 0}, {Weight{3, -3, 1}, 1}});
    CHECK(flat(coupled_forms(t, theta, 2)) == Flat{{Weight{3, -3, 1}, 0}, {Weight{4, -4, 0}, 1}});
}

}  // TEST_SUITE
