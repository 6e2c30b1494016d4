#include "dfcalc/specseq.hpp"

#include <algorithm>

#include "dfcalc/bbw.hpp"
#include "dfcalc/error.hpp"

namespace dfcalc {

std::string to_string(PageKind k) {
    return k == PageKind::DeRham ? "deRham" : "bgg";
}

E1Page::E1Page(ParabolicMarking base, int d, int s, PageKind kind)
    : base_(std::move(base)), d_(d), s_(s), kind_(kind) {
    if (d < 0 || s < 0) throw InvalidArgument("page dimensions must be non-negative");
    cells_.resize(static_cast<std::size_t>((d + 1) * (s + 1)));
}

std::size_t E1Page::index(int p, int q) const {
    if (p < 0 || p > d_ || q < 0 || q > s_)
        throw InvalidArgument("cell (" + std::to_string(p) + "," + std::to_string(q) + ") outside the page");
    return static_cast<std::size_t>(q * (d_ + 1) + p);
}

const std::vector<PageEntry>& E1Page::cell(int p, int q) const {
    return cells_[index(p, q)];
}

std::vector<Weight> E1Page::labels(int p, int q) const {
    std::vector<Weight> out;
    for (const auto& e : cell(p, q)) out.push_back(e.label);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

bool E1Page::all_empty() const {
    return std::all_of(cells_.begin(), cells_.end(), [](const auto& c) { return c.empty(); });
}

void E1Page::add(int p, int q, PageEntry e) {
    if (!levi_dominant(base_, e.label))
        throw InvalidArgument("page entry " + braces(e.label) + " is not Levi-dominant on " + to_string(base_));
    auto& c = cells_[index(p, q)];
    // Descending order keeps the leading label first.
    c.insert(std::upper_bound(c.begin(), c.end(), e, std::greater<>()), std::move(e));
    flags_.clear();
}

void E1Page::set_flags(std::vector<CancellationFlag> flags) {
    for (const auto& f : flags) {
        if (f.q < 1 || f.upper >= cell(f.p, f.q).size() || f.lower >= cell(f.p, f.q - 1).size())
            throw InvalidArgument("cancellation flag points outside the page");
    }
    std::sort(flags.begin(), flags.end());
    flags_ = std::move(flags);
}

bool E1Page::operator==(const E1Page& o) const {
    return base_ == o.base_ && d_ == o.d_ && s_ == o.s_ && kind_ == o.kind_ && cells_ == o.cells_ &&
           flags_ == o.flags_ && discounted_ == o.discounted_;
}

E1Page assemble_e1(const FibrationSpec& f, const BundleLabel& e) {
    E1Page page(f.cycle(), f.d(), f.s(), PageKind::DeRham);
    const auto& x = f.total();
    for (int p = 0; p <= f.d(); ++p) {
        const auto forms = coupled_forms(f, e, p);
        for (const auto& factor : forms.factors()) {
            const auto img = direct_image(x, f.cycle(), BundleLabel(x, factor.label));
            if (img) page.add(p, img.degree(), PageEntry{img.image().weight(), factor.label, factor.degree});
        }
    }
    return detect_cancellations(page);
}

std::string to_string(Concentration c) {
    switch (c) {
    case Concentration::StrictDegreeZero: return "StrictDegreeZero";
    case Concentration::DegreeZero: return "DegreeZero";
    case Concentration::None: return "None";
    case Concentration::TopDegree: return "TopDegree";
    case Concentration::StrictTopDegree: return "StrictTopDegree";
    }
    return "None";
}

Concentration concentration_from_string(const std::string& s) {
    for (auto c : {Concentration::StrictDegreeZero, Concentration::DegreeZero, Concentration::None,
                   Concentration::TopDegree, Concentration::StrictTopDegree})
        if (to_string(c) == s) return c;
    throw InvalidArgument("unknown concentration class '" + s + "'");
}

ConcentrationClass classify(const E1Page& page) {
    ConcentrationClass out;
    const int d = page.d(), s = page.s();
    auto row_full = [&](int q) {
        for (int p = 0; p <= d; ++p)
            if (page.empty(p, q)) return false;
        return true;
    };
    auto only_row = [&](int keep) {
        for (int q = 0; q <= s; ++q)
            for (int p = 0; p <= d; ++p)
                if (q != keep && !page.empty(p, q)) return false;
        return true;
    };
    out.zero = only_row(0);
    out.top = only_row(s);
    out.strict_zero = out.zero && row_full(0);
    out.strict_top = out.top && row_full(s);

    if (out.strict_zero)
        out.value = Concentration::StrictDegreeZero;
    else if (out.strict_top)
        out.value = Concentration::StrictTopDegree;
    else if (out.zero)
        out.value = Concentration::DegreeZero;
    else if (out.top)
        out.value = Concentration::TopDegree;
    else
        out.value = Concentration::None;

    const int row = out.value == Concentration::TopDegree ? s : 0;
    if (out.value == Concentration::DegreeZero || out.value == Concentration::TopDegree) {
        for (int p = 0; p <= d; ++p)
            if (page.empty(p, row)) out.witnesses.emplace_back(p, row);
    } else if (out.value == Concentration::None) {
        for (int q = 1; q <= s; ++q)
            for (int p = 0; p <= d; ++p)
                if (!page.empty(p, q)) out.witnesses.emplace_back(p, q);
    }
    return out;
}

Concentration reflected(Concentration c) {
    switch (c) {
    case Concentration::StrictDegreeZero: return Concentration::StrictTopDegree;
    case Concentration::DegreeZero: return Concentration::TopDegree;
    case Concentration::TopDegree: return Concentration::DegreeZero;
    case Concentration::StrictTopDegree: return Concentration::StrictDegreeZero;
    case Concentration::None: return Concentration::None;
    }
    return Concentration::None;
}

BundleLabel serre_dual(const FibrationSpec& f, const BundleLabel& e) {
    return twist(dual_label(e), f.kappa_source().weight());
}

DualityReport compare_dual_pages(const FibrationSpec& f, const BundleLabel& e, const E1Page& page_e,
                                 const E1Page& page_dual) {
    DualityReport r;
    r.fibration = f.name();
    r.kind = page_e.kind();
    r.bundle = e.weight();
    r.dual_bundle = serre_dual(f, e).weight();
    const int d = page_e.d(), s = page_e.s();
    const Weight kappa_m = f.kappa_cycle().weight();
    bool all_equal = true;
    for (int q = 0; q <= s; ++q) {
        for (int p = 0; p <= d; ++p) {
            CellComparison c{p, q, page_dual.labels(p, q), {}, false};
            for (const auto& w : page_e.labels(d - p, s - q))
                c.rhs.push_back(dual_label(BundleLabel(f.cycle(), w)).weight() + kappa_m);
            std::sort(c.rhs.begin(), c.rhs.end(), std::greater<>());
            c.equal = c.lhs == c.rhs;
            all_equal = all_equal && c.equal;
            r.cells.push_back(std::move(c));
        }
    }
    const auto ce = classify(page_e);
    const auto cd = classify(page_dual);
    r.bundle_class = ce.value;
    r.dual_class = cd.value;
    r.classes_reflect = ce.zero == cd.top && ce.top == cd.zero && ce.strict_zero == cd.strict_top &&
                        ce.strict_top == cd.strict_zero;
    r.holds = all_equal && r.classes_reflect;
    return r;
}

DualityReport check_duality(const FibrationSpec& f, const BundleLabel& e) {
    return compare_dual_pages(f, e, assemble_e1(f, e), assemble_e1(f, serre_dual(f, e)));
}

E1Page detect_cancellations(const E1Page& page) {
    E1Page out = page;
    const auto& c = page.base().cartan();
    std::vector<CancellationFlag> flags;
    for (int p = 0; p <= page.d(); ++p) {
        for (int q = 1; q <= page.s(); ++q) {
            const auto& upper = page.cell(p, q);
            const auto& lower = page.cell(p, q - 1);
            std::vector<bool> taken(lower.size(), false);
            for (std::size_t i = 0; i < upper.size(); ++i) {
                for (std::size_t j = 0; j < lower.size(); ++j) {
                    if (taken[j] || upper[i].label != lower[j].label) continue;
                    if (std::abs(upper[i].degree - lower[j].degree) != 1) continue;
                    if (!c.is_root(upper[i].source - lower[j].source)) continue;
                    taken[j] = true;
                    flags.push_back(CancellationFlag{p, q, i, j});
                    break;
                }
            }
        }
    }
    out.set_flags(std::move(flags));
    return out;
}

E1Page discount(const E1Page& page) {
    E1Page out(page.base(), page.d(), page.s(), page.kind());
    for (int q = 0; q <= page.s(); ++q) {
        for (int p = 0; p <= page.d(); ++p) {
            const auto& cell = page.cell(p, q);
            for (std::size_t i = 0; i < cell.size(); ++i) {
                const bool gone = std::any_of(page.flags().begin(), page.flags().end(), [&](const auto& f) {
                    return f.p == p && ((f.q == q && f.upper == i) || (f.q - 1 == q && f.lower == i));
                });
                if (!gone) out.add(p, q, cell[i]);
            }
        }
    }
    out.mark_discounted();
    return out;
}

std::string to_string(Prediction p) {
    switch (p) {
    case Prediction::DegreeZero: return "DegreeZero";
    case Prediction::TopDegree: return "TopDegree";
    case Prediction::Unknown: return "Unknown";
    }
    return "Unknown";
}

Prediction dominance_prediction(const FibrationSpec& f, const BundleLabel& e) {
    if (is_dominant(top_weight(e.marking(), levi_character(e)))) return Prediction::DegreeZero;
    const auto k = serre_dual(f, e);
    if (is_dominant(top_weight(k.marking(), levi_character(k)))) return Prediction::TopDegree;
    return Prediction::Unknown;
}

Prediction hermitian_criterion(const FibrationSpec& f, const BundleLabel& e) {
    if (!f.hermitian_holomorphic())
        throw PreconditionError("fibration '" + f.name() + "' is not marked Hermitian-holomorphic");
    return dominance_prediction(f, e);
}

}  // namespace dfcalc
