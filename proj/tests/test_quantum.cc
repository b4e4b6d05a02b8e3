#include "check.h"
#include "ptopos/quantum.h"
#include "support.h"

using namespace ptopos;
using namespace ptopos::testing;

namespace {

Matrix diag(std::initializer_list<long> d) {
    Matrix m(d.size());
    size_t k = 0;
    for (long x : d) {
        m.at(k, k) = GaussianRational(x);
        k++;
    }
    return m;
}

SpectralOperator identity_operator(size_t dim) {
    std::vector<Vector> basis;
    for (size_t k = 0; k < dim; k++) {
        Vector v(dim);
        v[k] = GaussianRational(1);
        basis.push_back(v);
    }
    return make_operator("I", dim, {{1, basis}});
}

}  // namespace

TEST_CASE("make_operator") {
    SpectralOperator z = sigma_z();
    CHECK(z.spectrum == std::vector<Rational>{-1, 1});
    CHECK(z.projectors[z.index_of(1)] == diag({1, 0}));
    CHECK(z.projectors[z.index_of(-1)] == diag({0, 1}));
    CHECK(z.matrix() == diag({1, -1}));

    SpectralOperator x = sigma_x();
    Matrix half(2);
    for (size_t r = 0; r < 2; r++) {
        for (size_t c = 0; c < 2; c++) {
            half.at(r, c) = GaussianRational(Rational(1, 2));
        }
    }
    CHECK(x.projectors[x.index_of(1)] == half);

    CHECK_KIND(make_operator("bad", 2, {{1, {vec({1, 0}), vec({1, 1})}}}), ErrorKind::NotOrthogonal);
    CHECK_KIND(make_operator("bad", 2, {{1, {vec({1, 0})}}, {2, {vec({1, 1})}}}), ErrorKind::NotOrthogonal);
    CHECK_KIND(make_operator("bad", 2, {{1, {vec({1, 0})}}}), ErrorKind::IncompleteBasis);
    CHECK_KIND(make_operator("bad", 2, {{1, {vec({1, 0})}}, {1, {vec({0, 1})}}}), ErrorKind::DuplicateEigenvalue);
    CHECK_KIND(make_operator("bad", 2, {{1, {vec({1, 0, 0})}}}), ErrorKind::DimensionMismatch);
    CHECK_KIND(make_operator("bad", 2, {{1, {vec({0, 0})}}, {2, {vec({0, 1})}}}), ErrorKind::IncompleteBasis);
    CHECK_KIND(z.index_of(3), ErrorKind::NotInSpectrum);
}

TEST_CASE("verify_spectral_invariants") {
    SpectralOperator z = sigma_z();
    verify_spectral_invariants(z);
    SpectralOperator broken = z;
    broken.projectors[0] = diag({1, 1});
    CHECK_KIND(verify_spectral_invariants(broken), ErrorKind::InvariantViolation);
    broken = z;
    broken.projectors[0].at(0, 1) = GaussianRational(0, 1);
    CHECK_KIND(verify_spectral_invariants(broken), ErrorKind::InvariantViolation);
}

TEST_CASE("function_of") {
    SpectralOperator z = sigma_z();
    SpectralOperator same = function_of(z, {{1, 1}, {-1, -1}});
    CHECK(same.same_spectral_data(z));

    SpectralOperator squared = function_of(z, {{1, 1}, {-1, 1}}, "sigma_z^2");
    CHECK(squared.spectrum == std::vector<Rational>{1});
    CHECK(squared.projectors[0] == Matrix::identity(2));
    CHECK(squared.name == "sigma_z^2");

    SpectralOperator relabeled = function_of(z, {{1, 3}, {-1, 7}});
    CHECK(relabeled.spectrum == std::vector<Rational>{3, 7});
    CHECK(relabeled.matrix() == diag({3, 7}));

    CHECK_KIND(function_of(z, {{1, 3}}), ErrorKind::PartialFunction);
}

TEST_CASE("spectral_projector") {
    SpectralOperator z = sigma_z();
    CHECK(spectral_projector(z, z.full_subset()) == Matrix::identity(2));
    CHECK(spectral_projector(z, SpectralSubset{0}).is_zero());
    std::vector<Rational> up{1};
    CHECK(spectral_projector(z, up) == diag({1, 0}));
    CHECK(spectral_subset(z, up) == 0b10);
    CHECK(describe_subset(z, 0b11) == "{-1,1}");
    CHECK(subset_values(z, 0b01) == std::vector<Rational>{-1});
    CHECK_KIND(spectral_projector(z, SpectralSubset{0b100}), ErrorKind::NotInSpectrum);
    std::vector<Rational> bad{5};
    CHECK_KIND(spectral_subset(z, bad), ErrorKind::NotInSpectrum);
}

TEST_CASE("find_arrow") {
    SpectralOperator z = sigma_z();
    auto to_identity = find_arrow(z, identity_operator(2));
    REQUIRE(to_identity.has_value());
    CHECK(*to_identity == SpectralMap{0, 0});
    CHECK_FALSE(find_arrow(z, sigma_x()).has_value());
    CHECK_FALSE(find_arrow(sigma_x(), z).has_value());
    auto self = find_arrow(z, z);
    REQUIRE(self.has_value());
    CHECK(*self == SpectralMap{0, 1});
    CHECK_FALSE(find_arrow(identity_operator(2), z).has_value());
    CHECK_KIND(find_arrow(z, identity_operator(3)), ErrorKind::DimensionMismatch);

    SpectralOperator relabeled = function_of(z, {{1, -5}, {-1, 5}});
    auto swap = find_arrow(z, relabeled);
    REQUIRE(swap.has_value());
    CHECK(*swap == SpectralMap{1, 0});
}

TEST_CASE("image and compose_maps") {
    CHECK(image(SpectralMap{0, 0, 1}, 0b101) == 0b11);
    CHECK(image(SpectralMap{0, 0, 1}, 0) == 0);
    CHECK(compose_maps(SpectralMap{1, 0}, SpectralMap{0, 0, 1}) == SpectralMap{1, 1, 0});
}

TEST_CASE("born_prob") {
    SpectralOperator z = sigma_z();
    CHECK(born_prob(State(vec({1, 0})), z, 0b10) == 1);
    CHECK(born_prob(State(vec({1, 1})), z, 0b10) == Rational(1, 2));
    CHECK(born_prob(State(vec({3, -4})), z, z.full_subset()) == 1);
    CHECK(born_prob(State(vec({3, -4})), z, 0b10) == Rational(9, 25));
    CHECK(born_prob(State(Vector{GaussianRational(1), GaussianRational(0, 1)}), sigma_x(), 0b10) == Rational(1, 2));
    CHECK_KIND(State(vec({0, 0})), ErrorKind::DimensionMismatch);
    CHECK_KIND(born_prob(State(vec({1, 0, 0})), z, 1), ErrorKind::DimensionMismatch);
}

TEST_CASE("build_operator_category") {
    OperatorCategory plain = build_operator_category({sigma_z()}, false);
    CHECK(plain.base().num_objects() == 1);
    CHECK(plain.base().num_arrows() == 1);

    OperatorCategory closed = build_operator_category({sigma_z()}, true);
    const FinCategory &cat = closed.base();
    CHECK(cat.num_objects() == 5);
    ObjectId z = closed.find("sigma_z");
    ObjectId up = closed.find("E[sigma_z in {1}]");
    ObjectId down = closed.find("E[sigma_z in {-1}]");
    ObjectId zero = closed.find("0");
    ObjectId one = closed.find("1");
    auto has_arrow = [&](ObjectId a, ObjectId b) {
        for (ArrowId f : cat.arrows_from(a)) {
            if (cat.cod(f) == b) {
                return true;
            }
        }
        return false;
    };
    CHECK(has_arrow(z, up));
    CHECK(has_arrow(z, down));
    CHECK(has_arrow(z, one));
    CHECK(has_arrow(z, zero));
    CHECK_FALSE(has_arrow(one, z));
    CHECK(cat.is_thin());
    CHECK(closed.op(zero).spectrum == std::vector<Rational>{0});
    CHECK(closed.op(one).spectrum == std::vector<Rational>{1});
    CHECK_KIND(closed.find("sigma_y"), ErrorKind::UnknownObject);

    OperatorCategory zx = build_operator_category({sigma_z(), sigma_x()}, false);
    CHECK(zx.base().num_objects() == 2);
    CHECK(zx.base().num_arrows() == 2);

    CHECK_KIND(build_operator_category({sigma_z(), sigma_z()}, false), ErrorKind::NameCollision);
    CHECK_KIND(build_operator_category({sigma_z(), identity_operator(3)}, false), ErrorKind::DimensionMismatch);
}

TEST_CASE("question_operator") {
    SpectralOperator z = sigma_z();
    SpectralOperator q = question_operator(z, 0b10, "P+");
    CHECK(q.spectrum == std::vector<Rational>{0, 1});
    CHECK(q.projectors[1] == diag({1, 0}));
    CHECK(question_operator(z, 0, "zero").spectrum == std::vector<Rational>{0});
    CHECK(question_operator(z, 0b11, "one").spectrum == std::vector<Rational>{1});
}
