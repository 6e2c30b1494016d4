#pragma once

#include <vector>

#include "dfcalc/specseq.hpp"

namespace dfcalc {

struct CosetRep {
    WeylWord word;
    int length = 0;
    bool operator==(const CosetRep&) const = default;
};

// Minimal-length representatives of W_{p∩q} \ W_q, by (length, word).
std::vector<CosetRep> coset_reps(const FibrationSpec& f);

struct BGGTerm {
    WeylWord word;
    Weight label;  // on X
    bool operator==(const BGGTerm&) const = default;
};

struct BGGComplex {
    ParabolicMarking marking;
    std::vector<std::vector<BGGTerm>> terms;  // indexed by r
    bool operator==(const BGGComplex&) const = default;
};

BGGComplex bgg_complex(const FibrationSpec& f, const BundleLabel& e);
E1Page assemble_e1_bgg(const FibrationSpec& f, const BundleLabel& e);
DualityReport check_bgg_duality(const FibrationSpec& f, const BundleLabel& e);

}  // namespace dfcalc
