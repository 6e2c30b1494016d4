// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dfcalc/report.hpp"
#include "oracles.hpp"

using namespace dfcalc;

namespace {

class Tally {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && failures_.size() < 3) failures_.push_back(what);
        failed_ += !ok;
    }
    bool ok() const { return failed_ == 0; }
    std::string detail() const {
        std::ostringstream os;
        os << checks_ - failed_ << "/" << checks_ << " checks";
        for (const auto& f : failures_) os << "; " << f;
        return os.str();
    }

private:
    long checks_ = 0, failed_ = 0;
    std::vector<std::string> failures_;
};

using Cells = std::vector<Weight>;

Cells sorted(Cells c) {
    std::sort(c.begin(), c.end(), std::greater<>());
    return c;
}

std::string show(const Weight& w) { return to_string(w); }

const CartanPtr& a3() {
    static const CartanPtr c = make_cartan("A3");
    return c;
}

ParabolicMarking mk(const char* mask) { return ParabolicMarking::from_mask(a3(), mask); }

DirectImageResult image(int q, const char* base, Weight w) {
    return DirectImageResult(q, BundleLabel(mk(base), std::move(w)));
}

void bbw_tables(Tally& t) {
    const auto f12 = mk("xx."), full = mk("xxx"), gr = mk(".x.");
    for (int a = -6; a <= 6; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c) {
                const auto got = direct_image(f12, gr, BundleLabel(f12, {a, b, c}));
                const bool ok = a >= 0    ? got == image(0, ".x.", {a, b, c})
                                : a == -1 ? got.is_vanishing()
                                          : got == image(1, ".x.", {-a - 2, a + b + 1, c});
                t.expect(ok, "simple " + show({a, b, c}));
            }
    for (int r = -5; r <= 5; ++r)
        for (int s = -3; s <= 3; ++s)
            for (int u = -5; u <= 5; ++u) {
                const auto got = direct_image(full, gr, BundleLabel(full, {r, s, u}));
                bool ok;
                if (r == -1 || u == -1)
                    ok = got.is_vanishing();
                else if (r >= 0 && u >= 0)
                    ok = got == image(0, ".x.", {r, s, u});
                else if (r <= -2 && u >= 0)
                    ok = got == image(1, ".x.", {-r - 2, r + s + 1, u});
                else if (r >= 0)
                    ok = got == image(1, ".x.", {r, s + u + 1, -u - 2});
                else
                    ok = got == image(2, ".x.", {-r - 2, r + s + u + 2, -u - 2});
                t.expect(ok, "full flag " + show({r, s, u}));
            }
}

void concentration_table(Tally& t) {
    const auto f = FibrationSpec::twistor();
    for (int k = -6; k <= 6; ++k) {
        const auto want = k >= 0    ? Concentration::StrictDegreeZero
                          : k == -1 ? Concentration::DegreeZero
                          : k == -2 ? Concentration::None
                          : k == -3 ? Concentration::TopDegree
                                    : Concentration::StrictTopDegree;
        const auto got = classify(assemble_e1(f, BundleLabel(f.source(), {k, 0, 0}))).value;
        t.expect(got == want, "O(" + std::to_string(k) + ") is " + to_string(got));
    }
}

void theta_page(Tally& t) {
    const auto f = FibrationSpec::twistor();
    const BundleLabel theta(f.source(), {1, 0, 1});
    const auto page = assemble_e1(f, theta);
    const std::vector<Cells> q0{{{2, -1, 0}, {1, 0, 1}}, {{3, -3, 1}, {2, -1, 0}, {2, -2, 2}}, {{4, -4, 0}, {3, -3, 1}}};
    for (int p = 0; p <= 2; ++p) {
        t.expect(sorted(page.labels(p, 0)) == sorted(q0[p]), "de Rham cell (" + std::to_string(p) + ",0)");
        t.expect(page.labels(p, 1).empty(), "de Rham cell (" + std::to_string(p) + ",1)");
    }
    const auto bgg = assemble_e1_bgg(f, theta);
    const std::vector<Cells> b0{{{1, 0, 1}}, {{2, -2, 2}}, {{4, -4, 0}}};
    for (int p = 0; p <= 2; ++p) {
        t.expect(bgg.labels(p, 0) == b0[p], "BGG cell (" + std::to_string(p) + ",0)");
        t.expect(bgg.labels(p, 1).empty(), "BGG cell (" + std::to_string(p) + ",1)");
    }
}

std::multiset<Weight> labels(const GradedFactorList& g) {
    std::multiset<Weight> out;
    for (const auto& f : g.factors()) out.insert(f.label);
    return out;
}

void form_tables(Tally& t) {
    const auto tw = FibrationSpec::twistor();
    const std::vector<Weight> omega{{0, 0, 0}, {1, -2, 1}, {2, -3, 0}};
    for (int p = 0; p <= 2; ++p) t.expect(labels(relative_cotangent(tw, p)) == std::multiset<Weight>{omega[p]}, "relative forms p=" + std::to_string(p));
    for (int k = -6; k <= 6; ++k)
        for (int p = 0; p <= 2; ++p) {
            const auto got = coupled_forms(tw, BundleLabel(tw.source(), {k, 0, 0}), p);
            t.expect(labels(got) == std::multiset<Weight>{omega[p] + Weight{k, 0, 0}},
                     "O(" + std::to_string(k) + ") forms p=" + std::to_string(p));
        }

    // Six factors in two blocks of three, each led by a degree-0 term.
    const auto g = FibrationSpec::grassmann_pm();
    const auto one = relative_cotangent(g, 1);
    const std::vector<GradedFactor> want{{{1, 0, 1}, 0}, {{1, -2, 1}, 0}, {{1, 1, -1}, 1},
                                         {{1, -1, -1}, 1}, {{-1, 1, 1}, 1}, {{-1, -1, 1}, 1}};
    t.expect(one.factors() == want, "Omega^1 along mu");

    // Known factors of Omega^2; the two behind the absorption flags sit in the top degree.
    const auto two = relative_cotangent(g, 2);
    t.expect(two.size() == 15, "Omega^2 has rank 15");
    auto have = labels(two);
    for (const Weight& w : std::vector<Weight>{{0, -3, 2}, {2, -3, 0}, {-2, 0, 2}, {0, 0, 0}, {0, 0, 0}, {2, 0, -2}, {0, 1, 2}, {2, 1, 0}}) {
        const auto it = have.find(w);
        t.expect(it != have.end(), "Omega^2 contains " + show(w));
        if (it != have.end()) have.erase(it);
    }
    const int top = two.max_degree();
    for (const Weight& w : std::vector<Weight>{{-2, 0, 2}, {2, 0, -2}}) {
        const auto at = two.at_degree(top);
        t.expect(std::any_of(at.begin(), at.end(), [&](const GradedFactor& f) { return f.label == w; }),
                 show(w) + " in the top degree");
    }
}

void dualities(Tally& t) {
    for (const auto& f : {FibrationSpec::twistor(), FibrationSpec::grassmann_pm()})
        for (const auto& w : random_labels(f.source(), 50, 1)) {
            const auto r = check_duality(f, BundleLabel(f.source(), w));
            t.expect(r.holds, f.name() + " " + show(w));
        }
    const auto tw = FibrationSpec::twistor();
    for (const auto& w : random_labels(tw.source(), 50, 1))
        t.expect(check_bgg_duality(tw, BundleLabel(tw.source(), w)).holds, "BGG " + show(w));
}

void concentration_sweeps(Tally& t) {
    const auto tw = FibrationSpec::twistor();
    const auto s1 = sweep(tw, {parse_range("-6..6,0..6,0..6")});
    t.expect(!s1.failed() && s1.mismatches.empty(), "twistor sweep mismatches");
    for (const auto& r : s1.rows) {
        const int a = r.bundle[0], b = r.bundle[1], c = r.bundle[2];
        if (a >= 0) t.expect(r.computed == Concentration::StrictDegreeZero, "zero " + show(r.bundle));
        if (a <= -4 - b - c) t.expect(r.computed == Concentration::StrictTopDegree, "top " + show(r.bundle));
    }

    const auto g = FibrationSpec::grassmann_pm();
    const auto s2 = sweep(g, {parse_range("0..6,-6..6,0..6")});
    t.expect(s2.mismatches.empty(), "grassmann-pm sweep mismatches");
    for (const auto& r : s2.rows) {
        const int a = r.bundle[0], b = r.bundle[1], c = r.bundle[2];
        if (b >= 0) {
            t.expect(r.computed == Concentration::StrictDegreeZero || r.computed == Concentration::DegreeZero,
                     "b >= 0 at " + show(r.bundle));
            t.expect(r.flags == (b == 0 ? 2 : 0), "flags at " + show(r.bundle));
        }
        if (b <= -4 - a - c) t.expect(r.computed == Concentration::StrictTopDegree, "dual range at " + show(r.bundle));
    }
    // At b = 0 the flagged sources are (-2,0,2) and (2,0,-2) twisted by E.
    for (int a = 0; a <= 6; ++a)
        for (int c = 0; c <= 6; ++c) {
            const auto page = assemble_e1(g, BundleLabel(g.source(), {a, 0, c}));
            std::set<Weight> sources;
            for (const auto& fl : page.flags()) sources.insert(page.cell(fl.p, fl.q)[fl.upper].source);
            t.expect(sources == std::set<Weight>{{-2, -a, a + c + 2}, {a + c + 2, -c, -2}},
                     "flag sources at " + show({a, 0, c}));
        }
}

void properties(Tally& t) {
    std::mt19937_64 rng(7);
    const auto markings = oracle::all_markings(a3());
    const auto point = mk("...");

    for (const auto& m : markings)
        for (int k = 0; k < 60; ++k) {
            const BundleLabel b(m, oracle::random_label(rng, m, -6, 4));
            t.expect(dual_label(dual_label(b)) == b, "dual involution " + to_string(b));
            const auto dual = twist(dual_label(b), canonical_bundle(m).weight());
            const auto h = full_cohomology(m, b), hd = full_cohomology(m, dual);
            bool serre = h.is_vanishing() == hd.is_vanishing();
            if (serre && !h.is_vanishing())
                serre = hd.degree() == fiber_dimension(m, point) - h.degree() && hd.image() == dual_label(h.image());
            t.expect(serre, "Serre duality " + to_string(b));
        }

    for (const auto& f : {FibrationSpec::twistor(), FibrationSpec::grassmann_pm()}) {
        Weight kx(3);
        for (const auto& r : f.cartan().positive_roots())
            for (const auto& w : {r, -r})
                if (!f.x_roots().count(w)) kx += w;
        t.expect(kx == f.transport_weight(f.kappa_source().weight()) + f.kappa_mu().weight(), f.name() + " kappa via mu");
        t.expect(kx == f.kappa_cycle().weight() + f.kappa_nu().weight(), f.name() + " kappa via nu");

        const int d = f.d();
        for (int p = 0; p <= d; ++p) {
            std::multiset<Weight> rhs;
            const auto complement = relative_cotangent(f, d - p);
            for (const auto& fac : complement.factors())
                for (const auto& w : labels(tensor_decompose(f.total(), f.kappa_mu(), dual_label(BundleLabel(f.total(), fac.label)))))
                    rhs.insert(w);
            t.expect(labels(relative_cotangent(f, p)) == rhs, f.name() + " Hodge p=" + std::to_string(p));
        }

        for (int k = 0; k < 40; ++k) {
            const BundleLabel e(f.source(), oracle::random_label(rng, f.source(), -5, 4));
            t.expect(pullback_factors(f, e).total_dimension() == levi_dimension(e), f.name() + " branching " + to_string(e));
        }
    }

    const auto tw = FibrationSpec::twistor();
    for (int k = 0; k < 30; ++k) {
        const BundleLabel e(tw.source(), oracle::random_label(rng, tw.source(), -6, 5));
        Character bgg, rham;
        const auto c = bgg_complex(tw, e);
        for (std::size_t r = 0; r < c.terms.size(); ++r)
            for (const auto& term : c.terms[r])
                dfcalc::accumulate(bgg, levi_character(BundleLabel(tw.total(), term.label)), r % 2 ? -1 : 1);
        for (int p = 0; p <= tw.d(); ++p) dfcalc::accumulate(rham, coupled_forms(tw, e, p).character(), p % 2 ? -1 : 1);
        t.expect(bgg == rham, "Euler characteristic " + to_string(e));
    }

    for (const char* type : {"A2", "A3", "B2", "C3", "G2"}) {
        const auto c = make_cartan(type);
        for (int k = 0; k < 20; ++k) {
            const Weight w = oracle::random_weight(rng, c->rank(), 0, 3);
            long long sum = 0;
            for (const auto& [mu, mult] : weight_multiplicities(*c, w)) sum += mult;
            t.expect(sum == weyl_dimension(*c, w), std::string(type) + " dimension of " + show(w));
        }
    }
}

void bgg_rows(Tally& t) {
    const auto f = FibrationSpec::twistor();
    for (int a = -8; a <= -4; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int c = 0; c <= 2; ++c) {
                if (a > -4 - b - c) continue;
                const auto page = assemble_e1_bgg(f, BundleLabel(f.source(), {a, b, c}));
                t.expect(page.labels(0, 1) == Cells{{-a - 2, a + b + 1, c}}, "p=0 at " + show({a, b, c}));
                t.expect(page.labels(1, 1) == Cells{{-a - b - 3, a, b + c + 1}}, "p=1 at " + show({a, b, c}));
            }
}

struct Criterion {
    int number;
    const char* name;
    double budget_s;  // 0: none
    std::function<void(Tally&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "BBW tables", 1, bbw_tables},
        {2, "concentration table", 0, concentration_table},
        {3, "Theta page", 0, theta_page},
        {4, "relative forms", 0, form_tables},
        {5, "duality", 10, dualities},
        {6, "concentration sweeps", 30, concentration_sweeps},
        {7, "property suites", 60, properties},
        {8, "BGG range", 0, bgg_rows},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Tally t;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(t);
        } catch (const std::exception& e) {
            t.expect(false, std::string("threw: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0) t.expect(secs < c.budget_s, "over budget");
        failed += !t.ok();
        std::printf("criterion %d: %s  %s (%s, %.2f s)\n", c.number, t.ok() ? "PASS" : "FAIL", c.name, t.detail().c_str(), secs);
    }
    return failed;
}
