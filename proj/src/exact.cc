#include "ptopos/exact.h"

#include "ptopos/error.h"

namespace ptopos {

std::string to_string(const Rational &q) {
    return q.get_str();
}

GaussianRational &GaussianRational::operator+=(const GaussianRational &o) {
    re += o.re;
    im += o.im;
    return *this;
}

GaussianRational &GaussianRational::operator-=(const GaussianRational &o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussianRational &GaussianRational::operator*=(const GaussianRational &o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussianRational &GaussianRational::operator/=(const GaussianRational &o) {
    Rational d = o.norm();
    if (d == 0) {
        throw std::domain_error("division by zero");
    }
    *this *= o.conj();
    re /= d;
    im /= d;
    return *this;
}

GaussianRational operator+(GaussianRational a, const GaussianRational &b) {
    return a += b;
}
GaussianRational operator-(GaussianRational a, const GaussianRational &b) {
    return a -= b;
}
GaussianRational operator-(const GaussianRational &a) {
    return {Rational(-a.re), Rational(-a.im)};
}
GaussianRational operator*(GaussianRational a, const GaussianRational &b) {
    return a *= b;
}
GaussianRational operator/(GaussianRational a, const GaussianRational &b) {
    return a /= b;
}

std::string to_string(const GaussianRational &z) {
    if (z.im == 0) {
        return to_string(z.re);
    }
    std::string imag;
    if (z.im == 1) {
        imag = "i";
    } else if (z.im == -1) {
        imag = "-i";
    } else {
        imag = to_string(z.im) + "i";
    }
    if (z.re == 0) {
        return imag;
    }
    return to_string(z.re) + (z.im > 0 ? "+" : "") + imag;
}

GaussianRational inner(const Vector &u, const Vector &v) {
    if (u.size() != v.size()) {
        fail(ErrorKind::DimensionMismatch, "inner product of vectors of different length");
    }
    GaussianRational acc;
    for (size_t k = 0; k < u.size(); k++) {
        acc += u[k].conj() * v[k];
    }
    return acc;
}

bool is_zero(const Vector &v) {
    for (const auto &z : v) {
        if (!z.is_zero()) {
            return false;
        }
    }
    return true;
}

std::string to_string(const Vector &v) {
    std::string out = "(";
    for (size_t k = 0; k < v.size(); k++) {
        out += (k ? "," : "") + to_string(v[k]);
    }
    return out + ")";
}

Matrix Matrix::identity(size_t dim) {
    Matrix m(dim);
    for (size_t k = 0; k < dim; k++) {
        m.at(k, k) = 1;
    }
    return m;
}

Matrix Matrix::ray_projector(const Vector &v) {
    Rational n = inner(v, v).re;
    if (n == 0) {
        throw std::domain_error("projector onto the zero vector");
    }
    Matrix m(v.size());
    for (size_t r = 0; r < v.size(); r++) {
        for (size_t c = 0; c < v.size(); c++) {
            GaussianRational e = v[r] * v[c].conj();
            e.re /= n;
            e.im /= n;
            m.at(r, c) = std::move(e);
        }
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(dim_);
    for (size_t r = 0; r < dim_; r++) {
        for (size_t c = 0; c < dim_; c++) {
            m.at(c, r) = at(r, c).conj();
        }
    }
    return m;
}

bool Matrix::is_zero() const {
    for (const auto &z : data_) {
        if (!z.is_zero()) {
            return false;
        }
    }
    return true;
}

bool Matrix::is_idempotent() const {
    return *this * *this == *this;
}

Matrix &Matrix::operator+=(const Matrix &o) {
    if (dim_ != o.dim_) {
        fail(ErrorKind::DimensionMismatch, "matrix sum");
    }
    for (size_t k = 0; k < data_.size(); k++) {
        data_[k] += o.data_[k];
    }
    return *this;
}

Matrix &Matrix::operator-=(const Matrix &o) {
    if (dim_ != o.dim_) {
        fail(ErrorKind::DimensionMismatch, "matrix difference");
    }
    for (size_t k = 0; k < data_.size(); k++) {
        data_[k] -= o.data_[k];
    }
    return *this;
}

std::string Matrix::to_string() const {
    std::string out = "[";
    for (size_t r = 0; r < dim_; r++) {
        out += r ? ";" : "";
        for (size_t c = 0; c < dim_; c++) {
            out += (c ? "," : "") + ptopos::to_string(at(r, c));
        }
    }
    return out + "]";
}

Matrix operator+(Matrix a, const Matrix &b) {
    return a += b;
}

Matrix operator-(Matrix a, const Matrix &b) {
    return a -= b;
}

Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.dim() != b.dim()) {
        fail(ErrorKind::DimensionMismatch, "matrix product");
    }
    const size_t n = a.dim();
    Matrix m(n);
    for (size_t r = 0; r < n; r++) {
        for (size_t k = 0; k < n; k++) {
            const GaussianRational &x = a.at(r, k);
            if (x.is_zero()) {
                continue;
            }
            for (size_t c = 0; c < n; c++) {
                m.at(r, c) += x * b.at(k, c);
            }
        }
    }
    return m;
}

Vector operator*(const Matrix &a, const Vector &v) {
    if (a.dim() != v.size()) {
        fail(ErrorKind::DimensionMismatch, "matrix-vector product");
    }
    Vector out(v.size());
    for (size_t r = 0; r < v.size(); r++) {
        for (size_t c = 0; c < v.size(); c++) {
            out[r] += a.at(r, c) * v[c];
        }
    }
    return out;
}

bool projector_leq(const Matrix &p, const Matrix &q) {
    return q * p == p;
}

}  // namespace ptopos
