#include "dfcalc/bgg.hpp"

#include <map>

#include "dfcalc/bbw.hpp"
#include "dfcalc/error.hpp"

namespace dfcalc {

std::vector<CosetRep> coset_reps(const FibrationSpec& f) {
    const auto& c = f.cartan();
    const auto gens = f.source().uncrossed_nodes();
    // Simple roots of Q's Levi whose transport stays inside the Levi of x.
    std::vector<int> stabilizer;
    for (int i : gens) {
        const Weight moved = f.transport_weight(c.simple_root(i));
        if (f.x_roots().count(moved) && f.x_roots().count(-moved)) stabilizer.push_back(i);
    }

    // Breadth-first over W_Q; appending letters to words taken in lexicographic
    // order means the first word reaching an element is its shortlex-least reduced word.
    std::vector<CosetRep> out;
    std::map<Weight, bool> seen;
    std::vector<WeylWord> layer{WeylWord{}};
    seen[c.rho()] = true;
    int len = 0;
    while (!layer.empty()) {
        for (const auto& w : layer) {
            const WeylWord inv = w.inverse();
            bool minimal = true;
            for (int i : stabilizer)
                if (!c.is_positive_root(inv.apply(c, c.simple_root(i)))) minimal = false;
            if (minimal) out.push_back(CosetRep{w, len});
        }
        std::vector<WeylWord> next;
        for (const auto& w : layer)
            for (int i : gens) {
                WeylWord v = w.then(i);
                const Weight key = v.apply(c, c.rho());
                if (seen.emplace(key, true).second) next.push_back(std::move(v));
            }
        layer = std::move(next);
        ++len;
    }
    return out;
}

namespace {

void require_standard(const FibrationSpec& f, const char* what) {
    if (f.transported() || f.cycle_kind() != CycleKind::Parabolic)
        throw PreconditionError(std::string(what) + " needs an untransported fibration over a parabolic cycle base; '" +
                                f.name() + "' is not");
}

}  // namespace

BGGComplex bgg_complex(const FibrationSpec& f, const BundleLabel& e) {
    require_standard(f, "bgg_complex");
    if (e.marking() != f.source())
        throw InvalidArgument("label " + to_string(e) + " does not live on " + to_string(f.source()));
    const auto& c = f.cartan();
    BGGComplex out{f.total(), {}};
    for (const auto& rep : coset_reps(f)) {
        if (static_cast<int>(out.terms.size()) <= rep.length) out.terms.resize(rep.length + 1);
        const Weight w = affine_act(c, rep.word, e.weight());
        if (!levi_dominant(f.total(), w)) throw std::logic_error("BGG term " + braces(w) + " is not Levi-dominant");
        out.terms[rep.length].push_back(BGGTerm{rep.word, w});
    }
    return out;
}

E1Page assemble_e1_bgg(const FibrationSpec& f, const BundleLabel& e) {
    if (!f.hermitian_holomorphic())
        throw PreconditionError("BGG spectral sequence needs a Hermitian-holomorphic fibration; '" + f.name() +
                                "' is not marked so");
    const auto cx = bgg_complex(f, e);
    E1Page page(f.cycle(), f.d(), f.s(), PageKind::Bgg);
    for (std::size_t r = 0; r < cx.terms.size(); ++r)
        for (const auto& t : cx.terms[r]) {
            const auto img = direct_image(f.total(), f.cycle(), BundleLabel(f.total(), t.label));
            if (img) page.add(static_cast<int>(r), img.degree(), PageEntry{img.image().weight(), t.label, 0});
        }
    return page;
}

DualityReport check_bgg_duality(const FibrationSpec& f, const BundleLabel& e) {
    return compare_dual_pages(f, e, assemble_e1_bgg(f, e), assemble_e1_bgg(f, serre_dual(f, e)));
}

}  // namespace dfcalc
