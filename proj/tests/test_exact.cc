#include "check.h"
#include "ptopos/exact.h"
#include "support.h"

using namespace ptopos;
using namespace ptopos::testing;

TEST_CASE("GaussianRational arithmetic is exact") {
    GaussianRational i(0, 1);
    CHECK(i * i == GaussianRational(-1));
    GaussianRational z(Rational(1, 2), Rational(-3, 4));
    CHECK(z * z.conj() == GaussianRational(z.norm()));
    CHECK(z.norm() == Rational(13, 16));
    CHECK((z / z) == GaussianRational(1));
    CHECK((z + i) - i == z);
    CHECK(-z == GaussianRational(Rational(-1, 2), Rational(3, 4)));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
}

TEST_CASE("to_string forms") {
    CHECK(to_string(Rational(-2, 3)) == "-2/3");
    CHECK(to_string(GaussianRational(1, 2)) == "1+2i");
    CHECK(to_string(GaussianRational(0, 1)) == "i");
    CHECK(to_string(GaussianRational(0, -1)) == "-i");
    CHECK(to_string(GaussianRational(0, Rational(2, 3))) == "2/3i");
    CHECK(to_string(GaussianRational(3)) == "3");
    CHECK(to_string(GaussianRational(0)) == "0");
}

TEST_CASE("inner products and projectors") {
    Vector u{GaussianRational(1), GaussianRational(0, 1)};
    Vector v{GaussianRational(1), GaussianRational(0, -1)};
    CHECK(inner(u, v).is_zero());
    CHECK(inner(u, u) == GaussianRational(2));
    CHECK_KIND(inner(u, vec({1, 2, 3})), ErrorKind::DimensionMismatch);

    Matrix p = Matrix::ray_projector(vec({1, 1}));
    CHECK(p.at(0, 0) == GaussianRational(Rational(1, 2)));
    CHECK(p.at(0, 1) == GaussianRational(Rational(1, 2)));
    CHECK(p.is_hermitian());
    CHECK(p.is_idempotent());
    Matrix q = Matrix::ray_projector(u);
    CHECK(q.at(1, 0) == GaussianRational(0, Rational(1, 2)));
    CHECK(q.is_hermitian());
    CHECK(q.is_idempotent());
    CHECK((q + Matrix::ray_projector(v)) == Matrix::identity(2));

    CHECK(projector_leq(p, Matrix::identity(2)));
    CHECK(projector_leq(Matrix(2), p));
    CHECK_FALSE(projector_leq(p, q));
    CHECK_KIND(p * Matrix::identity(3), ErrorKind::DimensionMismatch);
}
