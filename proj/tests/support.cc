#include "support.h"

#include <algorithm>
#include <bit>
#include <map>
#include <functional>
#include <stdexcept>

#include "ptopos/error.h"

namespace ptopos::testing {

namespace {

CatPtr share(FinCategory cat) {
    return std::make_shared<const FinCategory>(std::move(cat));
}

Vector add(const Vector &u, const Vector &v) {
    Vector out = u;
    for (size_t k = 0; k < out.size(); k++) {
        out[k] += v[k];
    }
    return out;
}

}  // namespace

CatPtr one_object() {
    return share(build_category({{"A"}, {{"id_A", "A", "A"}}, {{"A", "id_A"}}, {}}));
}

CatPtr chain2() {
    return share(poset_to_category({"p", "q"}, {{"p", "p"}, {"q", "q"}, {"p", "q"}}));
}

CatPtr chain3() {
    return share(poset_to_category(
        {"p", "q", "r"}, reflexive_transitive_closure({"p", "q", "r"}, {{"p", "q"}, {"q", "r"}})));
}

CatPtr v_poset() {
    return share(poset_to_category(
        {"p", "q", "r"}, reflexive_transitive_closure({"p", "q", "r"}, {{"p", "q"}, {"p", "r"}})));
}

CatPtr antichain2() {
    return share(poset_to_category({"p", "q"}, {{"p", "p"}, {"q", "q"}}));
}

CatPtr parallel_pair() {
    CategoryData data;
    data.objects = {"a", "b"};
    data.arrows = {{"id_a", "a", "a"}, {"id_b", "b", "b"}, {"f", "a", "b"}, {"g", "a", "b"}};
    data.identities = {{"a", "id_a"}, {"b", "id_b"}};
    return share(build_category(data));
}

CatPtr z2_group() {
    CategoryData data;
    data.objects = {"G"};
    data.arrows = {{"id", "G", "G"}, {"s", "G", "G"}};
    data.identities = {{"G", "id"}};
    data.composites = {{"s", "s", "id"}};
    return share(build_category(data));
}

CatPtr idempotent_monoid() {
    CategoryData data;
    data.objects = {"M"};
    data.arrows = {{"id", "M", "M"}, {"e", "M", "M"}};
    data.identities = {{"M", "id"}};
    data.composites = {{"e", "e", "e"}};
    return share(build_category(data));
}

std::vector<NamedCategory> abstract_categories() {
    return {
        {"one-object", one_object()},
        {"chain2", chain2()},
        {"chain3", chain3()},
        {"v-poset", v_poset()},
        {"antichain2", antichain2()},
        {"parallel-pair", parallel_pair()},
        {"z2", z2_group()},
        {"idempotent", idempotent_monoid()},
    };
}

std::string fixture_path(std::string_view file) {
    return std::string(PTOPOS_FIXTURE_DIR) + "/" + std::string(file);
}

QuantumFixture load_quantum_fixture(std::string_view file) {
    Scenario s = load_scenario(fixture_path(file));
    QuantumFixture q;
    q.name = std::string(file);
    q.ocat = std::make_shared<const OperatorCategory>(
        build_operator_category(scenario_operators(s), s.close_under_questions));
    for (const StateDecl &st : s.states) {
        q.states.emplace_back(st.vector);
    }
    return q;
}

std::vector<QuantumFixture> quantum_fixtures() {
    std::vector<QuantumFixture> out;
    out.push_back(load_quantum_fixture("sigma_z.scn"));
    out.push_back(load_quantum_fixture("sigma_zx.scn"));
    QuantumFixture cabello = load_quantum_fixture("cabello18.scn");
    Scenario s = load_scenario(fixture_path("cabello18.scn"));
    RaySystem rays = ray_system(s);
    cabello.states.emplace_back(rays.rays[0]);
    cabello.states.emplace_back(add(rays.rays[0], rays.rays[5]));
    cabello.states.emplace_back(vec({1, 2, 3, 4}));
    out.push_back(std::move(cabello));

    QuantumFixture z{"sigma_z unclosed", std::make_shared<const OperatorCategory>(build_operator_category({sigma_z()}, false)), {}};
    z.states.emplace_back(vec({1, 0}));
    z.states.emplace_back(vec({1, 1}));
    out.push_back(std::move(z));

    QuantumFixture zx{
        "sigma_z sigma_x closed",
        std::make_shared<const OperatorCategory>(build_operator_category({sigma_z(), sigma_x()}, true)),
        {}};
    zx.states.emplace_back(vec({1, 0}));
    zx.states.emplace_back(vec({1, 1}));
    zx.states.emplace_back(Vector{GaussianRational(1), GaussianRational(0, 1)});
    zx.states.emplace_back(vec({3, -2}));
    out.push_back(std::move(zx));
    return out;
}

std::vector<NamedCategory> fixture_categories() {
    std::vector<NamedCategory> out = abstract_categories();
    for (const QuantumFixture &q : quantum_fixtures()) {
        out.push_back({"O(" + q.name + ")", q.ocat->base_ptr()});
    }
    TopologyFile v = parse_topology_file(read_file(fixture_path("vposet.top")));
    const PosetDecl &poset = std::get<PosetDecl>(v);
    out.push_back({"vposet.top", share(poset_to_category(poset.elements, reflexive_transitive_closure(poset.elements, poset.leq)))});
    return out;
}

Vector vec(std::initializer_list<long> entries) {
    Vector v;
    for (long x : entries) {
        v.emplace_back(x);
    }
    return v;
}

SpectralOperator sigma_z() {
    return make_operator("sigma_z", 2, {{1, {vec({1, 0})}}, {-1, {vec({0, 1})}}});
}

SpectralOperator sigma_x() {
    return make_operator("sigma_x", 2, {{1, {vec({1, 1})}}, {-1, {vec({1, -1})}}});
}

RaySystem ray_system(const Scenario &scenario) {
    RaySystem sys;
    std::vector<Matrix> projectors;
    for (const OperatorDecl &op : scenario.operators) {
        std::vector<size_t> basis;
        for (const Eigenspace &e : op.eigendata) {
            for (const Vector &v : e.vectors) {
                Matrix p = Matrix::ray_projector(v);
                auto it = std::find(projectors.begin(), projectors.end(), p);
                if (it == projectors.end()) {
                    projectors.push_back(p);
                    sys.rays.push_back(v);
                    it = projectors.end() - 1;
                }
                basis.push_back(static_cast<size_t>(it - projectors.begin()));
            }
        }
        sys.bases.push_back(std::move(basis));
    }
    return sys;
}

std::uint64_t count_colorings(const RaySystem &system, const std::vector<size_t> &basis_subset) {
    std::vector<std::uint64_t> masks;
    std::uint64_t used = 0;
    for (size_t b : basis_subset) {
        std::uint64_t m = 0;
        for (size_t r : system.bases[b]) {
            m |= std::uint64_t{1} << r;
        }
        masks.push_back(m);
        used |= m;
    }
    // Only rays inside the chosen bases are assigned; others are irrelevant.
    std::vector<size_t> rays;
    for (size_t r = 0; r < system.rays.size(); r++) {
        if (used >> r & 1) {
            rays.push_back(r);
        }
    }
    std::uint64_t count = 0;
    for (std::uint64_t assignment = 0; assignment < (std::uint64_t{1} << rays.size()); assignment++) {
        std::uint64_t ones = 0;
        for (size_t k = 0; k < rays.size(); k++) {
            if (assignment >> k & 1) {
                ones |= std::uint64_t{1} << rays[k];
            }
        }
        bool ok = true;
        for (std::uint64_t m : masks) {
            if (std::popcount(ones & m) != 1) {
                ok = false;
                break;
            }
        }
        count += ok;
    }
    return count;
}

std::vector<std::vector<ArrowId>> sieves_by_power_set(const FinCategory &cat, ObjectId a) {
    std::span<const ArrowId> from = cat.arrows_from(a);
    if (from.size() > 20) {
        throw std::invalid_argument("power-set oracle limited to 20 arrows");
    }
    std::vector<std::vector<ArrowId>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << from.size()); mask++) {
        std::vector<ArrowId> members;
        for (size_t k = 0; k < from.size(); k++) {
            if (mask >> k & 1) {
                members.push_back(from[k]);
            }
        }
        bool closed = true;
        for (ArrowId f : members) {
            for (ArrowId g : cat.arrows_from(cat.cod(f))) {
                if (!std::binary_search(members.begin(), members.end(), cat.compose(g, f))) {
                    closed = false;
                }
            }
        }
        if (closed) {
            out.push_back(std::move(members));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<Element>> sections_by_product(const Presheaf &x) {
    const FinCategory &cat = x.category();
    const size_t n = cat.num_objects();
    std::vector<std::vector<Element>> out;
    for (ObjectId a : cat.objects()) {
        if (x.size(a) == 0) {
            return out;
        }
    }
    std::vector<Element> choice(n, 0);
    while (true) {
        bool ok = true;
        for (const Arrow &f : cat.arrows()) {
            if (x.apply(f.id, choice[f.dom.value]) != choice[f.cod.value]) {
                ok = false;
                break;
            }
        }
        if (ok) {
            out.push_back(choice);
        }
        size_t k = 0;
        while (k < n && ++choice[k] == x.size(ObjectId(static_cast<std::uint32_t>(k)))) {
            choice[k++] = 0;
        }
        if (k == n) {
            break;
        }
    }
    return out;
}

std::uint64_t count_natural_by_product(const Presheaf &x, const Presheaf &y) {
    const FinCategory &cat = x.category();
    // One digit per (object, element of X) pair.
    std::vector<std::pair<ObjectId, Element>> slots;
    for (ObjectId a : cat.objects()) {
        for (Element e = 0; e < x.size(a); e++) {
            if (y.size(a) == 0) {
                return 0;
            }
            slots.emplace_back(a, e);
        }
    }
    std::vector<std::vector<Element>> comp(cat.num_objects());
    for (ObjectId a : cat.objects()) {
        comp[a.value].assign(x.size(a), 0);
    }
    std::uint64_t count = 0;
    while (true) {
        bool ok = true;
        for (const Arrow &f : cat.arrows()) {
            for (Element e = 0; e < x.size(f.dom) && ok; e++) {
                ok = y.apply(f.id, comp[f.dom.value][e]) == comp[f.cod.value][x.apply(f.id, e)];
            }
            if (!ok) {
                break;
            }
        }
        count += ok;
        size_t k = 0;
        while (k < slots.size()) {
            auto [a, e] = slots[k];
            if (++comp[a.value][e] < y.size(a)) {
                break;
            }
            comp[a.value][e] = 0;
            k++;
        }
        if (k == slots.size()) {
            break;
        }
    }
    return count;
}

Presheaf representable(CatPtr cat, ObjectId a) {
    std::vector<std::vector<std::string>> labels(cat->num_objects());
    std::vector<std::vector<ArrowId>> homs(cat->num_objects());
    for (ArrowId g : cat->arrows_from(a)) {
        homs[cat->cod(g).value].push_back(g);
        labels[cat->cod(g).value].push_back(cat->arrow(g).name);
    }
    std::vector<std::vector<Element>> maps(cat->num_arrows());
    for (const Arrow &f : cat->arrows()) {
        for (ArrowId g : homs[f.dom.value]) {
            const std::vector<ArrowId> &target = homs[f.cod.value];
            auto it = std::find(target.begin(), target.end(), cat->compose(f.id, g));
            maps[f.id.value].push_back(static_cast<Element>(it - target.begin()));
        }
    }
    return Presheaf(std::move(cat), std::move(labels), std::move(maps));
}

Presheaf random_presheaf(std::mt19937_64 &rng, CatPtr cat, size_t max_size) {
    for (int attempt = 0; attempt < 100000; attempt++) {
        std::vector<std::vector<std::string>> labels(cat->num_objects());
        for (ObjectId a : cat->objects()) {
            size_t n = std::uniform_int_distribution<size_t>(0, max_size)(rng);
            for (size_t k = 0; k < n; k++) {
                labels[a.value].push_back(cat->object_name(a) + std::to_string(k));
            }
        }
        std::vector<std::vector<Element>> maps(cat->num_arrows());
        std::vector<char> assigned(cat->num_arrows(), 0);
        bool empty_target = false;
        for (const Arrow &f : cat->arrows()) {
            const size_t from = labels[f.dom.value].size();
            const size_t to = labels[f.cod.value].size();
            if (cat->is_identity(f.id)) {
                for (Element e = 0; e < from; e++) {
                    maps[f.id.value].push_back(e);
                }
            } else if (from > 0 && to == 0) {
                empty_target = true;
                break;
            } else {
                // Reuse an existing factorization through assigned arrows.
                bool done = false;
                for (const Arrow &g : cat->arrows()) {
                    if (done || g.dom != f.dom || !assigned[g.id.value] || cat->is_identity(g.id)) {
                        continue;
                    }
                    for (ArrowId h : cat->arrows_from(g.cod)) {
                        if (assigned[h.value] && !cat->is_identity(h) && cat->compose(h, g.id) == f.id) {
                            for (Element e = 0; e < from; e++) {
                                maps[f.id.value].push_back(maps[h.value][maps[g.id.value][e]]);
                            }
                            done = true;
                            break;
                        }
                    }
                }
                if (!done) {
                    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(to == 0 ? 0 : to - 1));
                    for (Element e = 0; e < from; e++) {
                        maps[f.id.value].push_back(pick(rng));
                    }
                }
            }
            assigned[f.id.value] = 1;
        }
        if (empty_target) {
            continue;
        }
        Presheaf x(cat, std::move(labels), std::move(maps));
        if (validate_presheaf(x)) {
            return x;
        }
    }
    throw std::runtime_error("random_presheaf: no functor found");
}

Rational random_rational(std::mt19937_64 &rng, long range) {
    long num = std::uniform_int_distribution<long>(-range, range)(rng);
    long den = std::uniform_int_distribution<long>(1, 3)(rng);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Vector random_vector(std::mt19937_64 &rng, size_t dim, long range) {
    std::bernoulli_distribution complex_entry(0.3);
    Vector v;
    for (size_t k = 0; k < dim; k++) {
        Rational re = random_rational(rng, range);
        Rational im = complex_entry(rng) ? random_rational(rng, range) : Rational(0);
        v.emplace_back(re, im);
    }
    return v;
}

std::vector<Vector> random_orthogonal_basis(std::mt19937_64 &rng, size_t dim) {
    std::vector<Vector> basis;
    while (basis.size() < dim) {
        Vector v = random_vector(rng, dim, 2);
        for (const Vector &u : basis) {
            GaussianRational c = inner(u, v) / inner(u, u);
            for (size_t k = 0; k < dim; k++) {
                v[k] -= c * u[k];
            }
        }
        if (!is_zero(v)) {
            basis.push_back(std::move(v));
        }
    }
    return basis;
}

std::vector<SpectralOperator> random_seed_operators(std::mt19937_64 &rng, size_t dim, size_t count) {
    std::vector<std::vector<Vector>> bases;
    const size_t num_bases = std::uniform_int_distribution<size_t>(1, 2)(rng);
    for (size_t b = 0; b < num_bases; b++) {
        bases.push_back(random_orthogonal_basis(rng, dim));
    }
    std::vector<SpectralOperator> ops;
    std::uniform_int_distribution<long> eigen(-2, 2);
    for (size_t i = 0; i < count; i++) {
        std::string name = "op" + std::to_string(i);
        if (!ops.empty() && std::bernoulli_distribution(0.4)(rng)) {
            const SpectralOperator &a = ops[std::uniform_int_distribution<size_t>(0, ops.size() - 1)(rng)];
            std::map<Rational, Rational> f;
            for (const Rational &x : a.spectrum) {
                f[x] = Rational(eigen(rng));
            }
            ops.push_back(function_of(a, f, name));
            continue;
        }
        const std::vector<Vector> &basis = bases[std::uniform_int_distribution<size_t>(0, bases.size() - 1)(rng)];
        std::map<Rational, std::vector<Vector>> grouped;
        for (const Vector &v : basis) {
            grouped[Rational(eigen(rng))].push_back(v);
        }
        std::vector<Eigenspace> data;
        for (auto &[value, vectors] : grouped) {
            data.push_back({value, vectors});
        }
        ops.push_back(make_operator(name, dim, std::move(data)));
    }
    return ops;
}

State random_state(std::mt19937_64 &rng, const std::vector<SpectralOperator> &seeds) {
    const size_t dim = seeds.front().dim;
    auto eigenvector = [&]() {
        const SpectralOperator &op = seeds[std::uniform_int_distribution<size_t>(0, seeds.size() - 1)(rng)];
        const Matrix &p = op.projectors[std::uniform_int_distribution<size_t>(0, op.projectors.size() - 1)(rng)];
        for (size_t c = 0; c < dim; c++) {
            Vector col;
            for (size_t r = 0; r < dim; r++) {
                col.push_back(p.at(r, c));
            }
            if (!is_zero(col)) {
                return col;
            }
        }
        throw std::logic_error("zero projector in spectral data");
    };
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0:
            return State(eigenvector());
        case 1: {
            Vector v = eigenvector();
            Vector w = eigenvector();
            Vector sum = add(v, w);
            return State(is_zero(sum) ? v : sum);
        }
        default:
            while (true) {
                Vector v = random_vector(rng, dim, 3);
                if (!is_zero(v)) {
                    return State(v);
                }
            }
    }
}

}  // namespace ptopos::testing
