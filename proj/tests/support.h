#ifndef PTOPOS_TESTS_SUPPORT_H
#define PTOPOS_TESTS_SUPPORT_H

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ptopos/fincat.h"
#include "ptopos/presheaf.h"
#include "ptopos/quantum.h"
#include "ptopos/scenario.h"
#include "ptopos/valuation.h"

namespace ptopos::testing {

using CatPtr = std::shared_ptr<const FinCategory>;

CatPtr one_object();
/// p < q
CatPtr chain2();
/// p < q < r
CatPtr chain3();
/// p ≤ q, p ≤ r
CatPtr v_poset();
CatPtr antichain2();
/// Objects a, b; arrows f, g: a → b.
CatPtr parallel_pair();
/// One object, arrows id and s with s∘s = id.
CatPtr z2_group();
/// One object, arrows id and e with e∘e = e.
CatPtr idempotent_monoid();

struct NamedCategory {
    std::string name;
    CatPtr cat;
};

std::vector<NamedCategory> abstract_categories();

std::string fixture_path(std::string_view file);

struct QuantumFixture {
    std::string name;
    std::shared_ptr<const OperatorCategory> ocat;
    std::vector<State> states;
};

QuantumFixture load_quantum_fixture(std::string_view file);
/// Bundled scenarios plus built-in variants (σ_z unclosed, σ_z/σ_x closed).
std::vector<QuantumFixture> quantum_fixtures();
/// Abstract categories, the base of every quantum fixture, and the .top posets.
std::vector<NamedCategory> fixture_categories();

SpectralOperator sigma_z();
SpectralOperator sigma_x();
Vector vec(std::initializer_list<long> entries);

/// Distinct rays of a rank-1 scenario and, per operator, the indices of
/// the rays in its eigenbasis.
struct RaySystem {
    std::vector<Vector> rays;
    std::vector<std::vector<size_t>> bases;
};
RaySystem ray_system(const Scenario &scenario);

/// Number of {0,1} ray assignments with exactly one 1 per listed basis,
/// by enumerating all 2^|rays| assignments.
std::uint64_t count_colorings(const RaySystem &system, const std::vector<size_t> &basis_subset);

/// Oracles.
std::vector<std::vector<ArrowId>> sieves_by_power_set(const FinCategory &cat, ObjectId a);
std::vector<std::vector<Element>> sections_by_product(const Presheaf &x);
std::uint64_t count_natural_by_product(const Presheaf &x, const Presheaf &y);

/// Representable Hom(a, -).
Presheaf representable(CatPtr cat, ObjectId a);
/// Random functor into sets of size ≤ max_size, by choosing arrow maps and
/// rejecting until the functor laws hold.
Presheaf random_presheaf(std::mt19937_64 &rng, CatPtr cat, size_t max_size);

Rational random_rational(std::mt19937_64 &rng, long range);
Vector random_vector(std::mt19937_64 &rng, size_t dim, long range);
/// Exact orthogonal (unnormalized) basis by Gram–Schmidt on random
/// Gaussian-integer vectors.
std::vector<Vector> random_orthogonal_basis(std::mt19937_64 &rng, size_t dim);
/// Up to `count` seed operators sharing one or two random bases, with
/// random (possibly repeated) eigenvalues and random functions of earlier
/// seeds.
std::vector<SpectralOperator> random_seed_operators(std::mt19937_64 &rng, size_t dim, size_t count);
/// Mix of generic states and (sums of) basis vectors of the seeds.
State random_state(std::mt19937_64 &rng, const std::vector<SpectralOperator> &seeds);

}  // namespace ptopos::testing

#endif
