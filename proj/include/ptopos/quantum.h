#ifndef PTOPOS_QUANTUM_H
#define PTOPOS_QUANTUM_H

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptopos/exact.h"
#include "ptopos/fincat.h"

namespace ptopos {

/// A subset Δ of an operator's spectrum, as a bit mask over spectrum
/// indices.
using SpectralSubset = std::uint32_t;

/// Operators with more distinct eigenvalues than this are rejected; the
/// coarse-graining presheaf holds 2^|σ(A)| elements per object.
inline constexpr size_t kMaxSpectrumSize = 16;

/// Self-adjoint operator given by exact spectral data: distinct eigenvalues
/// in ascending order and one orthogonal projector per eigenvalue.
struct SpectralOperator {
    std::string name;
    size_t dim = 0;
    std::vector<Rational> spectrum;
    std::vector<Matrix> projectors;

    size_t spectrum_size() const {
        return spectrum.size();
    }
    SpectralSubset full_subset() const {
        return (SpectralSubset{1} << spectrum.size()) - 1;
    }
    /// Throws NotInSpectrum.
    size_t index_of(const Rational &value) const;
    /// Σ a·P_a
    Matrix matrix() const;
    /// Same spectrum and same projector list; the name is ignored.
    bool same_spectral_data(const SpectralOperator &other) const;
};

struct Eigenspace {
    Rational eigenvalue;
    /// Pairwise orthogonal, unnormalized.
    std::vector<Vector> vectors;
};

/// P_a = Σ_v v v†/⟨v,v⟩ over each eigenvalue's vectors. Throws
/// DuplicateEigenvalue, NotOrthogonal, IncompleteBasis, DimensionMismatch.
SpectralOperator make_operator(std::string name, size_t dim, std::vector<Eigenspace> eigendata);

/// Throws InvariantViolation naming the failed law (Hermitian, idempotent,
/// orthogonal, complete).
void verify_spectral_invariants(const SpectralOperator &op);

/// f(A): spectrum = image of f, projector of b = Σ{P_a : f(a) = b}.
/// Throws PartialFunction if f misses an eigenvalue.
SpectralOperator function_of(const SpectralOperator &a, const std::map<Rational, Rational> &f, std::string name = "");

/// Throws NotInSpectrum.
SpectralSubset spectral_subset(const SpectralOperator &a, std::span<const Rational> values);
std::vector<Rational> subset_values(const SpectralOperator &a, SpectralSubset delta);
std::string describe_subset(const SpectralOperator &a, SpectralSubset delta);

/// Ê[A∈Δ] = Σ_{a∈Δ} P_a.
Matrix spectral_projector(const SpectralOperator &a, SpectralSubset delta);
Matrix spectral_projector(const SpectralOperator &a, std::span<const Rational> delta);

/// Function on σ(A) realizing B = f(A), stored as spectrum indices:
/// map[i] is the index in σ(B) of f(σ(A)[i]).
using SpectralMap = std::vector<size_t>;

SpectralSubset image(const SpectralMap &f, SpectralSubset delta);
/// g ∘ f
SpectralMap compose_maps(const SpectralMap &g, const SpectralMap &f);

/// The unique f with B = f(A), present iff every projector of B is a sum of
/// projectors of A. Throws DimensionMismatch.
std::optional<SpectralMap> find_arrow(const SpectralOperator &a, const SpectralOperator &b);

/// Unnormalized nonzero state vector.
class State {
   public:
    /// Throws DimensionMismatch for the zero vector.
    explicit State(Vector amplitudes);
    const Vector &amplitudes() const {
        return amplitudes_;
    }
    size_t dim() const {
        return amplitudes_.size();
    }

   private:
    Vector amplitudes_;
};

/// ⟨ψ, Ê[A∈Δ]ψ⟩ / ⟨ψ,ψ⟩
Rational born_prob(const State &psi, const SpectralOperator &a, SpectralSubset delta);

/// The category O over a finite set of operators: an arrow A→B for every
/// B = f(A). Thin by construction.
class OperatorCategory {
   public:
    const FinCategory &base() const {
        return *base_;
    }
    const std::shared_ptr<const FinCategory> &base_ptr() const {
        return base_;
    }
    size_t dim() const {
        return dim_;
    }
    const SpectralOperator &op(ObjectId a) const {
        return operators_.at(a.value);
    }
    const std::vector<SpectralOperator> &operators() const {
        return operators_;
    }
    const SpectralMap &spectral_map(ArrowId f) const {
        return maps_.at(f.value);
    }
    /// Throws UnknownObject.
    ObjectId find(std::string_view name) const;

    friend OperatorCategory build_operator_category(std::vector<SpectralOperator> operators, bool close_under_questions);

   private:
    std::shared_ptr<const FinCategory> base_;
    size_t dim_ = 0;
    std::vector<SpectralOperator> operators_;
    std::vector<SpectralMap> maps_;
};

/// Objects are the operators (optionally extended by every question
/// Ê[A∈Δ] for proper nonempty Δ, plus the constants 0 and 1, with
/// structural deduplication); arrows are every find_arrow success.
/// Throws DimensionMismatch, NameCollision.
OperatorCategory build_operator_category(std::vector<SpectralOperator> operators, bool close_under_questions);

/// Ê[A∈Δ] as a spectral operator with spectrum ⊆ {0,1}.
SpectralOperator question_operator(const SpectralOperator &a, SpectralSubset delta, std::string name);

}  // namespace ptopos

#endif
