#include "ptopos/quantum.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "ptopos/error.h"

namespace ptopos {

size_t SpectralOperator::index_of(const Rational &value) const {
    auto it = std::lower_bound(spectrum.begin(), spectrum.end(), value);
    if (it == spectrum.end() || *it != value) {
        fail(ErrorKind::NotInSpectrum, to_string(value) + " is not an eigenvalue of " + name);
    }
    return static_cast<size_t>(it - spectrum.begin());
}

Matrix SpectralOperator::matrix() const {
    Matrix m(dim);
    for (size_t k = 0; k < spectrum.size(); k++) {
        for (size_t r = 0; r < dim; r++) {
            for (size_t c = 0; c < dim; c++) {
                m.at(r, c) += projectors[k].at(r, c) * GaussianRational(spectrum[k]);
            }
        }
    }
    return m;
}

bool SpectralOperator::same_spectral_data(const SpectralOperator &other) const {
    return dim == other.dim && spectrum == other.spectrum && projectors == other.projectors;
}

void verify_spectral_invariants(const SpectralOperator &op) {
    auto violated = [&](const std::string &law) {
        fail(ErrorKind::InvariantViolation, op.name + ": " + law);
    };
    if (op.spectrum.size() != op.projectors.size() || op.spectrum.empty()) {
        violated("one projector per eigenvalue");
    }
    for (size_t k = 1; k < op.spectrum.size(); k++) {
        if (!(op.spectrum[k - 1] < op.spectrum[k])) {
            violated("eigenvalues distinct and ascending");
        }
    }
    Matrix sum(op.dim);
    for (size_t k = 0; k < op.projectors.size(); k++) {
        const Matrix &p = op.projectors[k];
        if (p.dim() != op.dim) {
            violated("projector dimension");
        }
        if (p.is_zero()) {
            violated("nonzero projector for " + to_string(op.spectrum[k]));
        }
        if (!p.is_hermitian()) {
            violated("projector for " + to_string(op.spectrum[k]) + " is Hermitian");
        }
        if (!p.is_idempotent()) {
            violated("projector for " + to_string(op.spectrum[k]) + " is idempotent");
        }
        for (size_t j = 0; j < k; j++) {
            if (!(p * op.projectors[j]).is_zero()) {
                violated(
                    "projectors for " + to_string(op.spectrum[j]) + " and " + to_string(op.spectrum[k]) +
                    " are orthogonal");
            }
        }
        sum += p;
    }
    if (sum != Matrix::identity(op.dim)) {
        violated("projectors sum to the identity");
    }
}

SpectralOperator make_operator(std::string name, size_t dim, std::vector<Eigenspace> eigendata) {
    if (dim == 0) {
        fail(ErrorKind::DimensionMismatch, name + ": dimension must be positive");
    }
    std::sort(eigendata.begin(), eigendata.end(), [](const Eigenspace &x, const Eigenspace &y) {
        return x.eigenvalue < y.eigenvalue;
    });
    for (size_t k = 1; k < eigendata.size(); k++) {
        if (eigendata[k - 1].eigenvalue == eigendata[k].eigenvalue) {
            fail(ErrorKind::DuplicateEigenvalue, name + ": eigenvalue " + to_string(eigendata[k].eigenvalue) + " listed twice");
        }
    }
    if (eigendata.size() > kMaxSpectrumSize) {
        fail(ErrorKind::SizeLimitExceeded, name + ": more than " + std::to_string(kMaxSpectrumSize) + " eigenvalues");
    }

    std::vector<std::pair<size_t, const Vector *>> all;
    for (size_t k = 0; k < eigendata.size(); k++) {
        if (eigendata[k].vectors.empty()) {
            fail(ErrorKind::IncompleteBasis, name + ": eigenvalue " + to_string(eigendata[k].eigenvalue) + " has no vectors");
        }
        for (const Vector &v : eigendata[k].vectors) {
            if (v.size() != dim) {
                fail(ErrorKind::DimensionMismatch, name + ": vector " + to_string(v) + " has the wrong length");
            }
            if (is_zero(v)) {
                fail(ErrorKind::IncompleteBasis, name + ": zero eigenvector");
            }
            all.emplace_back(k, &v);
        }
    }
    for (size_t i = 0; i < all.size(); i++) {
        for (size_t j = 0; j < i; j++) {
            if (!inner(*all[i].second, *all[j].second).is_zero()) {
                fail(
                    ErrorKind::NotOrthogonal,
                    name + ": " + to_string(*all[j].second) + " and " + to_string(*all[i].second) + " are not orthogonal");
            }
        }
    }
    if (all.size() != dim) {
        fail(
            ErrorKind::IncompleteBasis,
            name + ": " + std::to_string(all.size()) + " orthogonal vectors in dimension " + std::to_string(dim));
    }

    SpectralOperator op;
    op.name = std::move(name);
    op.dim = dim;
    for (const Eigenspace &space : eigendata) {
        Matrix p(dim);
        for (const Vector &v : space.vectors) {
            p += Matrix::ray_projector(v);
        }
        op.spectrum.push_back(space.eigenvalue);
        op.projectors.push_back(std::move(p));
    }
    verify_spectral_invariants(op);
    return op;
}

SpectralOperator function_of(const SpectralOperator &a, const std::map<Rational, Rational> &f, std::string name) {
    std::map<Rational, Matrix> grouped;
    for (size_t k = 0; k < a.spectrum.size(); k++) {
        auto it = f.find(a.spectrum[k]);
        if (it == f.end()) {
            fail(ErrorKind::PartialFunction, "f is undefined at eigenvalue " + to_string(a.spectrum[k]) + " of " + a.name);
        }
        auto [slot, inserted] = grouped.try_emplace(it->second, a.dim);
        slot->second += a.projectors[k];
    }
    SpectralOperator b;
    b.name = name.empty() ? "f(" + a.name + ")" : std::move(name);
    b.dim = a.dim;
    for (auto &[value, p] : grouped) {
        b.spectrum.push_back(value);
        b.projectors.push_back(std::move(p));
    }
    return b;
}

SpectralSubset spectral_subset(const SpectralOperator &a, std::span<const Rational> values) {
    SpectralSubset mask = 0;
    for (const Rational &v : values) {
        mask |= SpectralSubset{1} << a.index_of(v);
    }
    return mask;
}

std::vector<Rational> subset_values(const SpectralOperator &a, SpectralSubset delta) {
    std::vector<Rational> out;
    for (size_t k = 0; k < a.spectrum.size(); k++) {
        if (delta >> k & 1) {
            out.push_back(a.spectrum[k]);
        }
    }
    return out;
}

std::string describe_subset(const SpectralOperator &a, SpectralSubset delta) {
    std::string out = "{";
    bool first = true;
    for (const Rational &v : subset_values(a, delta)) {
        out += (first ? "" : ",") + to_string(v);
        first = false;
    }
    return out + "}";
}

Matrix spectral_projector(const SpectralOperator &a, SpectralSubset delta) {
    if (delta & ~a.full_subset()) {
        fail(ErrorKind::NotInSpectrum, "subset mask exceeds the spectrum of " + a.name);
    }
    Matrix p(a.dim);
    for (size_t k = 0; k < a.spectrum.size(); k++) {
        if (delta >> k & 1) {
            p += a.projectors[k];
        }
    }
    return p;
}

Matrix spectral_projector(const SpectralOperator &a, std::span<const Rational> delta) {
    return spectral_projector(a, spectral_subset(a, delta));
}

SpectralSubset image(const SpectralMap &f, SpectralSubset delta) {
    SpectralSubset out = 0;
    for (size_t k = 0; k < f.size(); k++) {
        if (delta >> k & 1) {
            out |= SpectralSubset{1} << f[k];
        }
    }
    return out;
}

SpectralMap compose_maps(const SpectralMap &g, const SpectralMap &f) {
    SpectralMap out(f.size());
    for (size_t k = 0; k < f.size(); k++) {
        out[k] = g.at(f[k]);
    }
    return out;
}

namespace {

// tr(X Y) for square matrices of equal size.
GaussianRational trace_of_product(const Matrix &x, const Matrix &y) {
    GaussianRational acc;
    for (size_t r = 0; r < x.dim(); r++) {
        for (size_t c = 0; c < x.dim(); c++) {
            acc += x.at(r, c) * y.at(c, r);
        }
    }
    return acc;
}

GaussianRational trace(const Matrix &x) {
    GaussianRational acc;
    for (size_t r = 0; r < x.dim(); r++) {
        acc += x.at(r, r);
    }
    return acc;
}

}  // namespace

std::optional<SpectralMap> find_arrow(const SpectralOperator &a, const SpectralOperator &b) {
    if (a.dim != b.dim) {
        fail(ErrorKind::DimensionMismatch, a.name + " and " + b.name + " act on different dimensions");
    }
    // For orthogonal projectors P ≤ Q iff tr(QP) = tr(P), since
    // P(I-Q)P ≥ 0 vanishes exactly when its trace does.
    SpectralMap f(a.spectrum.size());
    for (size_t i = 0; i < a.spectrum.size(); i++) {
        GaussianRational rank = trace(a.projectors[i]);
        bool found = false;
        for (size_t j = 0; j < b.spectrum.size(); j++) {
            if (trace_of_product(b.projectors[j], a.projectors[i]) == rank) {
                f[i] = j;
                found = true;
                break;
            }
        }
        if (!found) {
            return std::nullopt;
        }
    }
    std::vector<Matrix> sums(b.spectrum.size(), Matrix(a.dim));
    for (size_t i = 0; i < f.size(); i++) {
        sums[f[i]] += a.projectors[i];
    }
    if (sums != b.projectors) {
        return std::nullopt;
    }
    return f;
}

State::State(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty() || is_zero(amplitudes_)) {
        fail(ErrorKind::DimensionMismatch, "state vector must be nonzero");
    }
}

Rational born_prob(const State &psi, const SpectralOperator &a, SpectralSubset delta) {
    if (psi.dim() != a.dim) {
        fail(ErrorKind::DimensionMismatch, "state and " + a.name + " act on different dimensions");
    }
    const Vector &v = psi.amplitudes();
    Rational num = inner(v, spectral_projector(a, delta) * v).re;
    Rational den = inner(v, v).re;
    return Rational(num / den);
}

ObjectId OperatorCategory::find(std::string_view name) const {
    return base_->find_object(name);
}

SpectralOperator question_operator(const SpectralOperator &a, SpectralSubset delta, std::string name) {
    Matrix e = spectral_projector(a, delta);
    Matrix rest = Matrix::identity(a.dim) - e;
    SpectralOperator q;
    q.name = std::move(name);
    q.dim = a.dim;
    if (!rest.is_zero()) {
        q.spectrum.emplace_back(0);
        q.projectors.push_back(std::move(rest));
    }
    if (!e.is_zero()) {
        q.spectrum.emplace_back(1);
        q.projectors.push_back(std::move(e));
    }
    return q;
}

OperatorCategory build_operator_category(std::vector<SpectralOperator> operators, bool close_under_questions) {
    if (operators.empty()) {
        fail(ErrorKind::DimensionMismatch, "no operators");
    }
    const size_t dim = operators.front().dim;
    std::set<std::string> names;
    for (const SpectralOperator &op : operators) {
        if (op.dim != dim) {
            fail(ErrorKind::DimensionMismatch, op.name + " has dimension " + std::to_string(op.dim));
        }
        if (!names.insert(op.name).second) {
            fail(ErrorKind::NameCollision, "operator name " + op.name + " used twice");
        }
        verify_spectral_invariants(op);
    }

    if (close_under_questions) {
        auto add_unique = [&](SpectralOperator candidate) {
            for (const SpectralOperator &existing : operators) {
                if (existing.same_spectral_data(candidate)) {
                    return;
                }
            }
            while (names.count(candidate.name)) {
                candidate.name += "'";
            }
            names.insert(candidate.name);
            operators.push_back(std::move(candidate));
        };
        const size_t seeds = operators.size();
        for (size_t k = 0; k < seeds; k++) {
            const SpectralOperator seed = operators[k];
            for (SpectralSubset delta = 1; delta < seed.full_subset(); delta++) {
                add_unique(question_operator(seed, delta, "E[" + seed.name + " in " + describe_subset(seed, delta) + "]"));
            }
        }
        add_unique(question_operator(operators.front(), 0, "0"));
        add_unique(question_operator(operators.front(), operators.front().full_subset(), "1"));
    }

    const size_t n = operators.size();
    CategoryData data;
    std::vector<SpectralMap> maps;
    std::vector<std::vector<int>> arrow_index(n, std::vector<int>(n, -1));
    for (const SpectralOperator &op : operators) {
        data.objects.push_back(op.name);
    }
    auto arrow_name = [&](size_t i, size_t j) {
        return i == j ? "id_" + operators[i].name : operators[i].name + " -> " + operators[j].name;
    };
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            auto f = find_arrow(operators[i], operators[j]);
            if (!f) {
                continue;
            }
            arrow_index[i][j] = static_cast<int>(maps.size());
            data.arrows.push_back({arrow_name(i, j), operators[i].name, operators[j].name});
            maps.push_back(std::move(*f));
        }
        data.identities.emplace_back(operators[i].name, arrow_name(i, i));
    }
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            if (i == j || arrow_index[i][j] < 0) {
                continue;
            }
            for (size_t k = 0; k < n; k++) {
                if (j == k || arrow_index[j][k] < 0) {
                    continue;
                }
                int composite = arrow_index[i][k];
                const SpectralMap gf = compose_maps(maps[arrow_index[j][k]], maps[arrow_index[i][j]]);
                if (composite < 0 || maps[composite] != gf) {
                    fail(
                        ErrorKind::InvariantViolation,
                        "composite of " + arrow_name(j, k) + " after " + arrow_name(i, j) + " is not realized");
                }
                data.composites.push_back({arrow_name(j, k), arrow_name(i, j), arrow_name(i, k)});
            }
        }
    }

    OperatorCategory result;
    result.base_ = std::make_shared<const FinCategory>(build_category(data));
    result.dim_ = dim;
    result.operators_ = std::move(operators);
    result.maps_ = std::move(maps);
    return result;
}

}  // namespace ptopos
