#include "doctest.h"
#include "dfcalc/bgg.hpp"
#include "dfcalc/error.hpp"
#include "oracles.hpp"

using namespace dfcalc;

namespace {

using Cells = std::vector<std::vector<Weight>>;

Cells row(const E1Page& page, int q) {
    Cells out;
    for (int p = 0; p <= page.d(); ++p) out.push_back(page.labels(p, q));
    return out;
}

E1Page page_of(const FibrationSpec& f, Weight w) {
    return assemble_e1(f, BundleLabel(f.source(), std::move(w)));
}

}  // namespace

TEST_SUITE("specseq") {

TEST_CASE("E1 pages of line bundles on CP3") {
    const auto t = FibrationSpec::twistor();
    const auto p2 = page_of(t, {2, 0, 0});
    CHECK(row(p2, 0) == Cells{{{2, 0, 0}}, {{3, -2, 1}}, {{4, -3, 0}}});
    CHECK(row(p2, 1) == Cells{{}, {}, {}});

    const auto m5 = page_of(t, {-5, 0, 0});
    CHECK(row(m5, 1) == Cells{{{3, -4, 0}}, {{2, -5, 1}}, {{1, -5, 0}}});
    CHECK(row(m5, 0) == Cells{{}, {}, {}});

    const auto m2 = page_of(t, {-2, 0, 0});
    CHECK(row(m2, 0) == Cells{{}, {}, {{0, -3, 0}}});
    CHECK(row(m2, 1) == Cells{{{0, -1, 0}}, {}, {}});
}

TEST_CASE("the page of Theta") {
    const auto page = page_of(FibrationSpec::twistor(), {1, 0, 1});
    CHECK(row(page, 0) == Cells{{{2, -1, 0}, {1, 0, 1}}, {{3, -3, 1}, {2, -1, 0}, {2, -2, 2}}, {{4, -4, 0}, {3, -3, 1}}});
    CHECK(row(page, 1) == Cells{{}, {}, {}});
    CHECK(page.kind() == PageKind::DeRham);
    CHECK(page.flags().empty());
}

TEST_CASE("classification on O(k)") {
    const auto t = FibrationSpec::twistor();
    for (int k = -6; k <= 6; ++k) {
        const auto c = classify(page_of(t, {k, 0, 0})).value;
        Concentration want = Concentration::StrictDegreeZero;
        if (k == -1) want = Concentration::DegreeZero;
        if (k == -2) want = Concentration::None;
        if (k == -3) want = Concentration::TopDegree;
        if (k <= -4) want = Concentration::StrictTopDegree;
        CHECK_MESSAGE(c == want, "k=", k);
    }
    const auto c3 = classify(page_of(t, {-3, 0, 0}));
    CHECK(c3.top);
    CHECK_FALSE(c3.strict_top);
    CHECK(c3.witnesses == std::vector<std::pair<int, int>>{{2, 1}});
    CHECK(reflected(Concentration::StrictDegreeZero) == Concentration::StrictTopDegree);
    CHECK(reflected(Concentration::None) == Concentration::None);
}

TEST_CASE("an empty page is vacuously concentrated") {
    E1Page page(FibrationSpec::twistor().cycle(), 2, 1, PageKind::DeRham);
    const auto c = classify(page);
    CHECK(c.value == Concentration::DegreeZero);
    CHECK(c.zero);
    CHECK(c.top);
    CHECK_FALSE(c.strict_zero);
    CHECK_THROWS_AS(page.add(3, 0, PageEntry{{0, 0, 0}, {0, 0, 0}, 0}), InvalidArgument);
    CHECK_THROWS_AS(page.add(0, 0, PageEntry{{-1, 0, 0}, {0, 0, 0}, 0}), InvalidArgument);
    CHECK_NOTHROW(page.add(0, 0, PageEntry{{1, -1, 0}, {0, 0, 0}, 0}));
}

TEST_CASE("duality on the twistor correspondence") {
    const auto t = FibrationSpec::twistor();
    CHECK(serre_dual(t, BundleLabel(t.source(), {1, 0, 1})).weight() == Weight{-6, 1, 0});
    for (int k = -8; k <= 8; ++k) {
        const auto r = check_duality(t, BundleLabel(t.source(), {k, 0, 0}));
        CHECK_MESSAGE(r.holds, "k=", k);
        CHECK(r.dual_bundle == Weight{-k - 4, 0, 0});
        CHECK(r.cells.size() == 6);
        CHECK(std::all_of(r.cells.begin(), r.cells.end(), [](const auto& c) { return c.equal; }));
    }
    // Trivial E: the (d,s) cell of the dual page against the (0,0) cell of O.
    const auto r = check_duality(t, BundleLabel(t.source(), {0, 0, 0}));
    CHECK(r.cells.back().lhs == std::vector<Weight>{{0, -4, 0}});
    CHECK(r.cells.front().lhs.empty());
}

TEST_CASE("duality on random labels of both fibrations") {
    std::mt19937_64 rng(50);
    for (const auto& f : {FibrationSpec::twistor(), FibrationSpec::grassmann_pm()})
        for (int k = 0; k < 50; ++k) {
            const BundleLabel e(f.source(), oracle::random_label(rng, f.source(), -6, 6));
            const auto r = check_duality(f, e);
            CHECK_MESSAGE(r.holds, f.name(), " ", to_string(e));
            CHECK(r.dual_class == reflected(r.bundle_class));
        }
}

TEST_CASE("cancellation flags") {
    const auto g = FibrationSpec::grassmann_pm();
    const auto page = page_of(g, {0, 0, 0});
    REQUIRE(page.flags().size() == 2);
    std::set<Weight> sources, images;
    for (const auto& f : page.flags()) {
        CHECK(f.p == 2);
        CHECK(f.q == 1);
        sources.insert(page.cell(f.p, f.q)[f.upper].source);
        images.insert(page.cell(f.p, f.q)[f.upper].label);
        CHECK(page.cell(f.p, f.q)[f.upper].label == page.cell(f.p, f.q - 1)[f.lower].label);
    }
    CHECK(sources == std::set<Weight>{{2, 0, -2}, {-2, 0, 2}});
    CHECK(images == std::set<Weight>{{2, -1, 0}, {0, -1, 2}});
    CHECK(classify(page).value == Concentration::None);

    const auto d = discount(page);
    CHECK(d.discounted());
    CHECK(classify(d).value == Concentration::StrictDegreeZero);
    CHECK(d.labels(2, 0).size() + 2 == page.labels(2, 0).size());

    CHECK(page_of(g, {0, 1, 0}).flags().empty());
    for (int k = -8; k <= 8; ++k) CHECK(page_of(FibrationSpec::twistor(), {k, 0, 0}).flags().empty());
}

TEST_CASE("concentration ranges on the twistor grid") {
    const auto t = FibrationSpec::twistor();
    for (int a = -6; a <= 6; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c) {
                const auto v = classify(page_of(t, {a, b, c})).value;
                if (a >= 0) CHECK(v == Concentration::StrictDegreeZero);
                if (a <= -4 - b - c) CHECK(v == Concentration::StrictTopDegree);
            }
}

TEST_CASE("the criterion") {
    const auto t = FibrationSpec::twistor();
    CHECK(hermitian_criterion(t, BundleLabel(t.source(), {1, 0, 1})) == Prediction::DegreeZero);
    CHECK(hermitian_criterion(t, BundleLabel(t.source(), {-6, 0, 0})) == Prediction::TopDegree);
    CHECK(hermitian_criterion(t, BundleLabel(t.source(), {-2, 0, 0})) == Prediction::Unknown);
    const auto g = FibrationSpec::grassmann_pm();
    CHECK_THROWS_AS(hermitian_criterion(g, BundleLabel(g.source(), {0, 0, 0})), PreconditionError);
    CHECK(dominance_prediction(g, BundleLabel(g.source(), {0, 0, 0})) == Prediction::DegreeZero);
    CHECK(dominance_prediction(g, BundleLabel(g.source(), {1, -6, 1})) == Prediction::TopDegree);
}

}  // TEST_SUITE
