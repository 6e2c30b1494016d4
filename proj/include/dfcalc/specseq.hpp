#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dfcalc/relgeom.hpp"

namespace dfcalc {

enum class PageKind { DeRham, Bgg };
std::string to_string(PageKind k);

// One direct image in the page, remembering the factor on X it came from.
struct PageEntry {
    Weight label;   // on the cycle marking
    Weight source;  // factor on X
    int degree = 0; // filtration degree of that factor
    auto operator<=>(const PageEntry&) const = default;
};

// Candidate absorption: entry `upper` of cell (p,q) against entry `lower` of cell (p,q-1).
struct CancellationFlag {
    int p = 0;
    int q = 0;
    std::size_t upper = 0;
    std::size_t lower = 0;
    auto operator<=>(const CancellationFlag&) const = default;
};

class E1Page {
public:
    E1Page(ParabolicMarking base, int d, int s, PageKind kind);

    const ParabolicMarking& base() const { return base_; }
    int d() const { return d_; }
    int s() const { return s_; }
    PageKind kind() const { return kind_; }

    const std::vector<PageEntry>& cell(int p, int q) const;
    std::vector<Weight> labels(int p, int q) const;
    bool empty(int p, int q) const { return cell(p, q).empty(); }
    bool all_empty() const;
    void add(int p, int q, PageEntry e);

    const std::vector<CancellationFlag>& flags() const { return flags_; }
    void set_flags(std::vector<CancellationFlag> flags);
    bool discounted() const { return discounted_; }
    void mark_discounted() { discounted_ = true; }

    bool operator==(const E1Page& o) const;

private:
    std::size_t index(int p, int q) const;

    ParabolicMarking base_;
    int d_, s_;
    PageKind kind_;
    std::vector<std::vector<PageEntry>> cells_;
    std::vector<CancellationFlag> flags_;
    bool discounted_ = false;
};

E1Page assemble_e1(const FibrationSpec& f, const BundleLabel& e);

enum class Concentration { StrictDegreeZero, DegreeZero, None, TopDegree, StrictTopDegree };
std::string to_string(Concentration c);
Concentration concentration_from_string(const std::string& s);

struct ConcentrationClass {
    Concentration value = Concentration::None;
    bool zero = false, strict_zero = false, top = false, strict_top = false;
    // Cells (p,q) that block a stronger class: off-row entries or empty row cells.
    std::vector<std::pair<int, int>> witnesses;
    bool operator==(const ConcentrationClass&) const = default;
};

ConcentrationClass classify(const E1Page& page);
// The class of the (d-p, s-q)-reflected page.
Concentration reflected(Concentration c);

struct CellComparison {
    int p = 0, q = 0;
    std::vector<Weight> lhs, rhs;
    bool equal = false;
    bool operator==(const CellComparison&) const = default;
};

struct DualityReport {
    std::string fibration;
    PageKind kind = PageKind::DeRham;
    Weight bundle;       // E on Q
    Weight dual_bundle;  // kappa_D tensor E^*
    std::vector<CellComparison> cells;
    Concentration bundle_class = Concentration::None;
    Concentration dual_class = Concentration::None;
    bool classes_reflect = false;
    bool holds = false;
    bool operator==(const DualityReport&) const = default;
};

// Label of kappa_D tensor E^* on Q.
BundleLabel serre_dual(const FibrationSpec& f, const BundleLabel& e);

// Left: the page of kappa_D tensor E^*. Right: kappa_M tensor dual of E's page at (d-p, s-q).
DualityReport check_duality(const FibrationSpec& f, const BundleLabel& e);
DualityReport compare_dual_pages(const FibrationSpec& f, const BundleLabel& e, const E1Page& page_e,
                                 const E1Page& page_dual);

// Flags equal labels in (p,q) and (p,q-1) whose source factors sit in adjacent filtration
// degrees and differ by a root. Matching is one-to-one, in sorted entry order.
E1Page detect_cancellations(const E1Page& page);
// Drop both members of every flagged pair.
E1Page discount(const E1Page& page);

enum class Prediction { DegreeZero, TopDegree, Unknown };
std::string to_string(Prediction p);

// Dominance test on highest weights of E and kappa_D tensor E^*.
Prediction hermitian_criterion(const FibrationSpec& f, const BundleLabel& e);
// Same test without the Hermitian-holomorphic guard; used for the conjectural sweep.
Prediction dominance_prediction(const FibrationSpec& f, const BundleLabel& e);

}  // namespace dfcalc
