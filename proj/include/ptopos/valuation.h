#ifndef PTOPOS_VALUATION_H
#define PTOPOS_VALUATION_H

#include <memory>
#include <vector>

#include "ptopos/presheaf.h"
#include "ptopos/quantum.h"
#include "ptopos/sieve.h"

namespace ptopos {

/// D(A): the {0,1}-homomorphisms on W_A, one per atom P_a (element k is
/// the homomorphism supported on spectrum index k). D(f) sends an atom to
/// the atom of W_B above it.
Presheaf dual_presheaf(const OperatorCategory &ocat);

/// G(A) = W_A indexed by Δ ⊆ σ(A) (element = subset mask), with
/// G(f)(Ê[A∈Δ]) = Ê[f(A)∈f(Δ)].
Presheaf coarse_graining_presheaf(const OperatorCategory &ocat);

/// ν^ψ(A∈Δ) = {f: A→B | Ê[B∈f(Δ)]ψ = ψ}. Throws UnknownObject,
/// NotInSpectrum, DimensionMismatch.
Sieve nu_state(const OperatorCategory &ocat, const State &psi, ObjectId a, SpectralSubset delta);

/// The same set computed from Born probabilities: {f | Prob(B∈f(Δ);ψ) = 1}.
Sieve nu_state_by_probability(const OperatorCategory &ocat, const State &psi, ObjectId a, SpectralSubset delta);

/// Assignment (context A, Δ ⊆ σ(A)) → sieve on A.
class SieveValuation {
   public:
    /// values[A][Δ] for every object and every mask 0..2^|σ(A)|-1. Throws
    /// IncompleteValuation on a missing entry, BaseMismatch or
    /// InvariantViolation when an entry is not a sieve on its context.
    SieveValuation(std::shared_ptr<const OperatorCategory> ocat, std::vector<std::vector<Sieve>> values);

    const OperatorCategory &category() const {
        return *ocat_;
    }
    const std::shared_ptr<const OperatorCategory> &category_ptr() const {
        return ocat_;
    }
    const Sieve &value(ObjectId a, SpectralSubset delta) const {
        return values_.at(a.value).at(delta);
    }
    const std::vector<std::vector<Sieve>> &values() const {
        return values_;
    }

   private:
    std::shared_ptr<const OperatorCategory> ocat_;
    std::vector<std::vector<Sieve>> values_;
};

SieveValuation state_valuation(std::shared_ptr<const OperatorCategory> ocat, const State &psi);

/// ν(f(A)∈f(Δ)) = Ω(f)(ν(A∈Δ)) for every arrow f and every Δ.
LawCheck func_check(const SieveValuation &nu);

/// N^ν_A(Ê[A∈Δ]) := ν(A∈Δ) as a transformation G → Ω. `g` must be the
/// coarse-graining presheaf and `omega` the classifier of the same
/// category; naturality is not assumed (check with is_natural).
NaturalTransformation valuation_transformation(
    const SieveValuation &nu, std::shared_ptr<const Presheaf> g, const SubobjectClassifier &omega);

/// Global sections of the dual presheaf; an empty result certifies that no
/// noncontextual {0,1} assignment exists on this fragment.
std::vector<GlobalSection> ks_global_section_search(
    const OperatorCategory &ocat, const SearchOptions &options = {}, SearchStats *stats = nullptr);

}  // namespace ptopos

#endif
