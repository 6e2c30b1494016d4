#pragma once

#include <set>
#include <string>

#include "dfcalc/bundles.hpp"

namespace dfcalc {

// Whether the cycle-space base G/J uses the parabolic of M or only its Levi.
// The latter covers G/K with K reductive, as for the Grassmannian M^{+-} case.
enum class CycleKind { Parabolic, Reductive };

std::string to_string(CycleKind k);

using RootSet = std::set<Weight>;

// A double fibration G/Q <- X -> G/J, fixed by root sets:
//   Phi(q) = sigma(Phi(p_Q)),  Phi(j) = Phi(p_M) or Phi(l_M),  Phi(x) = Phi(q) ∩ Phi(j).
// With sigma = id and a parabolic J this is crossed(X) = crossed(Q) ∪ crossed(M).
class FibrationSpec {
public:
    static FibrationSpec make(std::string name, ParabolicMarking source, ParabolicMarking cycle,
                              CycleKind kind = CycleKind::Parabolic, WeylWord transport = {},
                              bool hermitian_holomorphic = false);

    // CP3 <- F_{12} -> Gr2(C4): the twistor correspondence.
    static FibrationSpec twistor();
    // Gr2(C4) with the s2-conjugated base point against G/K, K of type S(GL2 x GL2).
    static FibrationSpec grassmann_pm();

    const std::string& name() const { return name_; }
    const CartanData& cartan() const { return source_.cartan(); }
    const ParabolicMarking& source() const { return source_; }
    const ParabolicMarking& cycle() const { return cycle_; }
    const ParabolicMarking& total() const { return total_; }
    CycleKind cycle_kind() const { return kind_; }
    const WeylWord& transport() const { return transport_; }
    bool transported() const;
    bool hermitian_holomorphic() const { return hermitian_; }

    int d() const { return static_cast<int>(mu_roots_.size()); }
    int s() const { return static_cast<int>(nu_roots_.size()); }

    // Weights of the relative cotangent spaces (label convention).
    const std::vector<Weight>& mu_roots() const { return mu_roots_; }
    const std::vector<Weight>& nu_roots() const { return nu_roots_; }
    const RootSet& x_roots() const { return x_roots_; }

    Weight transport_weight(const Weight& w) const { return transport_.apply(cartan(), w); }

    BundleLabel kappa_source() const { return canonical_bundle(source_); }
    // Zero for a reductive cycle base.
    BundleLabel kappa_cycle() const;
    BundleLabel kappa_mu() const;
    BundleLabel kappa_nu() const;

private:
    FibrationSpec(std::string name, ParabolicMarking source, ParabolicMarking cycle, ParabolicMarking total)
        : name_(std::move(name)), source_(std::move(source)), cycle_(std::move(cycle)), total_(std::move(total)) {}

    std::string name_;
    ParabolicMarking source_, cycle_, total_;
    CycleKind kind_ = CycleKind::Parabolic;
    WeylWord transport_;
    bool hermitian_ = false;
    RootSet x_roots_;
    std::vector<Weight> mu_roots_, nu_roots_;
    std::vector<Weight> cycle_complement_;  // Phi(g) \ Phi(j)
};

// Omega_mu^p as graded factors on X; degree is the n_x-depth inside the fibre.
GradedFactorList relative_cotangent(const FibrationSpec& f, int p);

// mu^* of an irreducible on Q, graded by depth over crossed(X) before transport.
GradedFactorList pullback_factors(const FibrationSpec& f, const BundleLabel& b);

GradedFactorList tensor_decompose(const ParabolicMarking& m, const BundleLabel& a, const BundleLabel& b);

// Omega_mu^p tensor mu^*E, with filtration degrees added.
GradedFactorList coupled_forms(const FibrationSpec& f, const BundleLabel& e, int p);

}  // namespace dfcalc
