#include "ptopos/valuation.h"

#include "ptopos/error.h"

namespace ptopos {

Presheaf dual_presheaf(const OperatorCategory &ocat) {
    const FinCategory &cat = ocat.base();
    std::vector<std::vector<std::string>> labels(cat.num_objects());
    for (ObjectId a : cat.objects()) {
        for (const Rational &value : ocat.op(a).spectrum) {
            labels[a.value].push_back("a=" + to_string(value));
        }
    }
    std::vector<std::vector<Element>> maps(cat.num_arrows());
    for (const Arrow &f : cat.arrows()) {
        for (size_t k : ocat.spectral_map(f.id)) {
            maps[f.id.value].push_back(static_cast<Element>(k));
        }
    }
    return Presheaf(ocat.base_ptr(), std::move(labels), std::move(maps));
}

Presheaf coarse_graining_presheaf(const OperatorCategory &ocat) {
    const FinCategory &cat = ocat.base();
    std::vector<std::vector<std::string>> labels(cat.num_objects());
    for (ObjectId a : cat.objects()) {
        const SpectralOperator &op = ocat.op(a);
        for (SpectralSubset delta = 0; delta <= op.full_subset(); delta++) {
            labels[a.value].push_back("E[" + op.name + " in " + describe_subset(op, delta) + "]");
        }
    }
    std::vector<std::vector<Element>> maps(cat.num_arrows());
    for (const Arrow &f : cat.arrows()) {
        const SpectralOperator &op = ocat.op(f.dom);
        for (SpectralSubset delta = 0; delta <= op.full_subset(); delta++) {
            maps[f.id.value].push_back(image(ocat.spectral_map(f.id), delta));
        }
    }
    return Presheaf(ocat.base_ptr(), std::move(labels), std::move(maps));
}

namespace {

void check_query(const OperatorCategory &ocat, const State &psi, ObjectId a, SpectralSubset delta) {
    const SpectralOperator &op = ocat.op(a);
    if (delta & ~op.full_subset()) {
        fail(ErrorKind::NotInSpectrum, "subset mask exceeds the spectrum of " + op.name);
    }
    if (psi.dim() != ocat.dim()) {
        fail(ErrorKind::DimensionMismatch, "state dimension " + std::to_string(psi.dim()));
    }
}

}  // namespace

Sieve nu_state(const OperatorCategory &ocat, const State &psi, ObjectId a, SpectralSubset delta) {
    const FinCategory &cat = ocat.base();
    cat.object_name(a);
    check_query(ocat, psi, a, delta);
    std::vector<ArrowId> members;
    for (ArrowId f : cat.arrows_from(a)) {
        const SpectralOperator &b = ocat.op(cat.cod(f));
        Matrix e = spectral_projector(b, image(ocat.spectral_map(f), delta));
        if (e * psi.amplitudes() == psi.amplitudes()) {
            members.push_back(f);
        }
    }
    return Sieve(a, std::move(members));
}

Sieve nu_state_by_probability(const OperatorCategory &ocat, const State &psi, ObjectId a, SpectralSubset delta) {
    const FinCategory &cat = ocat.base();
    cat.object_name(a);
    check_query(ocat, psi, a, delta);
    std::vector<ArrowId> members;
    for (ArrowId f : cat.arrows_from(a)) {
        const SpectralOperator &b = ocat.op(cat.cod(f));
        if (born_prob(psi, b, image(ocat.spectral_map(f), delta)) == 1) {
            members.push_back(f);
        }
    }
    return Sieve(a, std::move(members));
}

SieveValuation::SieveValuation(std::shared_ptr<const OperatorCategory> ocat, std::vector<std::vector<Sieve>> values)
    : ocat_(std::move(ocat)), values_(std::move(values)) {
    const FinCategory &cat = ocat_->base();
    if (values_.size() != cat.num_objects()) {
        fail(ErrorKind::IncompleteValuation, "expected values for every context");
    }
    for (ObjectId a : cat.objects()) {
        const SpectralOperator &op = ocat_->op(a);
        if (values_[a.value].size() != size_t{op.full_subset()} + 1) {
            fail(ErrorKind::IncompleteValuation, "context " + op.name + " lacks a value for some subset of its spectrum");
        }
        for (const Sieve &s : values_[a.value]) {
            if (s.base() != a) {
                fail(ErrorKind::BaseMismatch, "value at context " + op.name + " is a sieve on another object");
            }
            if (!is_sieve(cat, a, s.members())) {
                fail(ErrorKind::InvariantViolation, "value at context " + op.name + " is not a sieve");
            }
        }
    }
}

SieveValuation state_valuation(std::shared_ptr<const OperatorCategory> ocat, const State &psi) {
    const FinCategory &cat = ocat->base();
    std::vector<std::vector<Sieve>> values(cat.num_objects());
    for (ObjectId a : cat.objects()) {
        for (SpectralSubset delta = 0; delta <= ocat->op(a).full_subset(); delta++) {
            values[a.value].push_back(nu_state(*ocat, psi, a, delta));
        }
    }
    return SieveValuation(std::move(ocat), std::move(values));
}

LawCheck func_check(const SieveValuation &nu) {
    const OperatorCategory &ocat = nu.category();
    const FinCategory &cat = ocat.base();
    for (const Arrow &f : cat.arrows()) {
        const SpectralOperator &a = ocat.op(f.dom);
        const SpectralMap &map = ocat.spectral_map(f.id);
        for (SpectralSubset delta = 0; delta <= a.full_subset(); delta++) {
            const Sieve &lhs = nu.value(f.cod, image(map, delta));
            Sieve rhs = push_sieve(cat, f.id, nu.value(f.dom, delta));
            if (lhs != rhs) {
                return {
                    false,
                    "FUNC fails along " + f.name + " at " + describe_subset(a, delta) + ": nu(f(A) in f(D)) = " +
                        describe_sieve(cat, lhs) + " but pushforward = " + describe_sieve(cat, rhs),
                    f.id};
            }
        }
    }
    return {};
}

NaturalTransformation valuation_transformation(
    const SieveValuation &nu, std::shared_ptr<const Presheaf> g, const SubobjectClassifier &omega) {
    const FinCategory &cat = nu.category().base();
    if (g->category_ptr() != nu.category().base_ptr() || omega.presheaf().category_ptr() != nu.category().base_ptr()) {
        fail(ErrorKind::ComponentDomainMismatch, "presheaves live over a different category");
    }
    NaturalTransformation n{std::move(g), omega.presheaf_ptr(), {}};
    n.components.resize(cat.num_objects());
    for (ObjectId a : cat.objects()) {
        for (const Sieve &s : nu.values()[a.value]) {
            n.components[a.value].push_back(omega.index_of(s));
        }
    }
    return n;
}

std::vector<GlobalSection> ks_global_section_search(
    const OperatorCategory &ocat, const SearchOptions &options, SearchStats *stats) {
    return global_sections(dual_presheaf(ocat), options, stats);
}

}  // namespace ptopos
