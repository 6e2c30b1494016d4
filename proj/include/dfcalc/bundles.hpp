#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dfcalc/rootcore.hpp"

namespace dfcalc {

class ParabolicMarking {
public:
    ParabolicMarking(CartanPtr cartan, std::vector<bool> crossed);
    static ParabolicMarking from_nodes(CartanPtr cartan, const std::vector<int>& crossed_nodes);
    // One character per node: 'x' crossed, '.' uncrossed.
    static ParabolicMarking from_mask(CartanPtr cartan, std::string_view mask);

    const CartanData& cartan() const { return *cartan_; }
    const CartanPtr& cartan_ptr() const { return cartan_; }
    int rank() const { return cartan_->rank(); }
    bool crossed(int i) const { return crossed_.at(i); }
    std::vector<int> crossed_nodes() const;
    std::vector<int> uncrossed_nodes() const;
    std::string mask() const;

    // crossed(base) is a subset of crossed(*this), i.e. G/this fibres over G/base.
    bool fibres_over(const ParabolicMarking& base) const;

    // Semisimple part of the Levi factor, on uncrossed nodes in increasing order.
    const CartanData& levi() const { return *levi_; }

    // Root lies in the Levi iff its support avoids crossed nodes.
    bool in_levi(const Weight& root) const;

    bool operator==(const ParabolicMarking& o) const;
    bool operator!=(const ParabolicMarking& o) const { return !(*this == o); }

private:
    CartanPtr cartan_;
    std::vector<bool> crossed_;
    CartanPtr levi_;
};

// "A3[x..]"
std::string to_string(const ParabolicMarking& m);

class BundleLabel {
public:
    BundleLabel(ParabolicMarking marking, Weight weight);

    const ParabolicMarking& marking() const { return marking_; }
    const Weight& weight() const { return weight_; }

    bool operator==(const BundleLabel& o) const { return marking_ == o.marking_ && weight_ == o.weight_; }

private:
    ParabolicMarking marking_;
    Weight weight_;
};

// "A3[x..]{1,0,1}"
std::string to_string(const BundleLabel& b);
// "{1,0,1}"
std::string braces(const Weight& w);

bool levi_dominant(const ParabolicMarking& m, const Weight& w);
// One-dimensional Levi module: zero over every uncrossed node.
bool is_line(const ParabolicMarking& m, const Weight& w);

using Character = std::map<Weight, long long>;

struct LeviWeight {
    Weight weight;
    std::vector<int> depth;  // full rank, zero over crossed nodes
    long long multiplicity = 0;
};

std::vector<LeviWeight> levi_weights(const BundleLabel& b);
Character levi_character(const BundleLabel& b);
long long levi_dimension(const BundleLabel& b);

Character operator*(const Character& x, const Character& y);
void accumulate(Character& into, const Character& x, long long scale = 1);

// The maximal-height weight; ties broken towards the lexicographically largest.
Weight top_weight(const ParabolicMarking& m, const Character& ch);

// Greedy highest-weight extraction. Throws if ch is not a genuine Levi character.
std::vector<std::pair<Weight, long long>> decompose(const ParabolicMarking& m, Character ch);

struct GradedFactor {
    Weight label;
    int degree = 0;
    bool operator==(const GradedFactor&) const = default;
};

class GradedFactorList {
public:
    explicit GradedFactorList(ParabolicMarking m) : marking_(std::move(m)) {}
    // Validates and sorts once; the cheap way to build large lists.
    GradedFactorList(ParabolicMarking m, std::vector<GradedFactor> factors);

    void add(const Weight& label, int degree, long long multiplicity = 1);
    void add(const GradedFactorList& other, int degree_shift = 0);

    const ParabolicMarking& marking() const { return marking_; }
    // Sorted by degree, then label descending.
    const std::vector<GradedFactor>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    bool empty() const { return factors_.empty(); }
    std::vector<GradedFactor> at_degree(int degree) const;
    int max_degree() const;

    long long total_dimension() const;
    Character character() const;

    bool operator==(const GradedFactorList& o) const {
        return marking_ == o.marking_ && factors_ == o.factors_;
    }

private:
    ParabolicMarking marking_;
    std::vector<GradedFactor> factors_;
};

BundleLabel dual_label(const BundleLabel& b);
BundleLabel canonical_bundle(const ParabolicMarking& m);
BundleLabel relative_canonical(const ParabolicMarking& total, const ParabolicMarking& base);
int fiber_dimension(const ParabolicMarking& total, const ParabolicMarking& base);

// Sum of labels; meaningful as a tensor product when one side is a line bundle.
BundleLabel twist(const BundleLabel& b, const Weight& line);

}  // namespace dfcalc
