#ifndef PTOPOS_EXACT_H
#define PTOPOS_EXACT_H

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ptopos {

using Rational = mpq_class;

std::string to_string(const Rational &q);

/// re + im·i with exact rational parts.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {
    }
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
    }
    GaussianRational(long r) : re(r) {
    }

    bool is_zero() const {
        return re == 0 && im == 0;
    }
    GaussianRational conj() const {
        return {re, -im};
    }
    /// |z|², always rational.
    Rational norm() const {
        return Rational(re * re + im * im);
    }

    GaussianRational &operator+=(const GaussianRational &o);
    GaussianRational &operator-=(const GaussianRational &o);
    GaussianRational &operator*=(const GaussianRational &o);
    GaussianRational &operator/=(const GaussianRational &o);

    bool operator==(const GaussianRational &o) const {
        return re == o.re && im == o.im;
    }
};

GaussianRational operator+(GaussianRational a, const GaussianRational &b);
GaussianRational operator-(GaussianRational a, const GaussianRational &b);
GaussianRational operator-(const GaussianRational &a);
GaussianRational operator*(GaussianRational a, const GaussianRational &b);
GaussianRational operator/(GaussianRational a, const GaussianRational &b);

std::string to_string(const GaussianRational &z);

using Vector = std::vector<GaussianRational>;

/// ⟨u, v⟩ = Σ conj(u_k) v_k
GaussianRational inner(const Vector &u, const Vector &v);
bool is_zero(const Vector &v);
std::string to_string(const Vector &v);

/// Dense square matrix, row-major.
class Matrix {
   public:
    Matrix() = default;
    explicit Matrix(size_t dim) : dim_(dim), data_(dim * dim) {
    }
    static Matrix identity(size_t dim);
    /// v v† / ⟨v, v⟩, the projector onto span{v}.
    static Matrix ray_projector(const Vector &v);

    size_t dim() const {
        return dim_;
    }
    GaussianRational &at(size_t r, size_t c) {
        return data_[r * dim_ + c];
    }
    const GaussianRational &at(size_t r, size_t c) const {
        return data_[r * dim_ + c];
    }

    Matrix adjoint() const;
    bool is_zero() const;
    bool is_hermitian() const {
        return *this == adjoint();
    }
    bool is_idempotent() const;

    Matrix &operator+=(const Matrix &o);
    Matrix &operator-=(const Matrix &o);
    bool operator==(const Matrix &o) const {
        return dim_ == o.dim_ && data_ == o.data_;
    }

    std::string to_string() const;

   private:
    size_t dim_ = 0;
    std::vector<GaussianRational> data_;
};

Matrix operator+(Matrix a, const Matrix &b);
Matrix operator-(Matrix a, const Matrix &b);
Matrix operator*(const Matrix &a, const Matrix &b);
Vector operator*(const Matrix &a, const Vector &v);

/// For projectors: P ≤ Q iff QP = P (range(P) ⊆ range(Q)).
bool projector_leq(const Matrix &p, const Matrix &q);

}  // namespace ptopos

#endif
