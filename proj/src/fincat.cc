#include "ptopos/fincat.h"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "ptopos/error.h"

namespace ptopos {

const std::string &FinCategory::object_name(ObjectId a) const {
    if (!a.valid() || a.value >= object_names_.size()) {
        fail(ErrorKind::UnknownObject, "object #" + std::to_string(a.value));
    }
    return object_names_[a.value];
}

const Arrow &FinCategory::arrow(ArrowId f) const {
    if (!f.valid() || f.value >= arrows_.size()) {
        fail(ErrorKind::UnknownArrow, "arrow #" + std::to_string(f.value));
    }
    return arrows_[f.value];
}

ArrowId FinCategory::identity(ObjectId a) const {
    object_name(a);
    return identities_[a.value];
}

bool FinCategory::is_identity(ArrowId f) const {
    const Arrow &arr = arrow(f);
    return identities_[arr.dom.value] == f;
}

ObjectId FinCategory::find_object(std::string_view name) const {
    for (size_t k = 0; k < object_names_.size(); k++) {
        if (object_names_[k] == name) {
            return ObjectId(static_cast<std::uint32_t>(k));
        }
    }
    fail(ErrorKind::UnknownObject, std::string(name));
}

ArrowId FinCategory::find_arrow(std::string_view name) const {
    for (const Arrow &a : arrows_) {
        if (a.name == name) {
            return a.id;
        }
    }
    fail(ErrorKind::UnknownArrow, std::string(name));
}

std::vector<ObjectId> FinCategory::objects() const {
    std::vector<ObjectId> result;
    result.reserve(object_names_.size());
    for (size_t k = 0; k < object_names_.size(); k++) {
        result.emplace_back(static_cast<std::uint32_t>(k));
    }
    return result;
}

std::span<const ArrowId> FinCategory::arrows_from(ObjectId a) const {
    object_name(a);
    return out_[a.value];
}

std::span<const ArrowId> FinCategory::arrows_to(ObjectId a) const {
    object_name(a);
    return in_[a.value];
}

ArrowId FinCategory::compose(ArrowId f, ArrowId g) const {
    const Arrow &af = arrow(f);
    const Arrow &ag = arrow(g);
    if (ag.cod != af.dom) {
        fail(ErrorKind::NotComposable, af.name + " after " + ag.name + ": cod " + ag.name + " != dom " + af.name);
    }
    return composite_or_invalid(f, g);
}

bool FinCategory::is_thin() const {
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const Arrow &a : arrows_) {
        if (!seen.emplace(a.dom.value, a.cod.value).second) {
            return false;
        }
    }
    return true;
}

void FinCategory::index() {
    out_.assign(object_names_.size(), {});
    in_.assign(object_names_.size(), {});
    for (const Arrow &a : arrows_) {
        out_[a.dom.value].push_back(a.id);
        in_[a.cod.value].push_back(a.id);
    }
}

FinCategory build_category(const CategoryData &data) {
    FinCategory cat;
    std::unordered_map<std::string, ObjectId> object_ids;
    for (const std::string &name : data.objects) {
        if (object_ids.count(name)) {
            fail(ErrorKind::UnknownObject, "duplicate object " + name);
        }
        ObjectId id(static_cast<std::uint32_t>(cat.object_names_.size()));
        object_ids.emplace(name, id);
        cat.object_names_.push_back(name);
    }
    auto lookup_object = [&](const std::string &name) {
        auto it = object_ids.find(name);
        if (it == object_ids.end()) {
            fail(ErrorKind::UnknownObject, name);
        }
        return it->second;
    };

    std::unordered_map<std::string, ArrowId> arrow_ids;
    for (const ArrowDecl &decl : data.arrows) {
        if (arrow_ids.count(decl.name)) {
            fail(ErrorKind::UnknownArrow, "duplicate arrow " + decl.name);
        }
        ArrowId id(static_cast<std::uint32_t>(cat.arrows_.size()));
        arrow_ids.emplace(decl.name, id);
        cat.arrows_.push_back(Arrow{id, decl.name, lookup_object(decl.dom), lookup_object(decl.cod)});
    }
    auto lookup_arrow = [&](const std::string &name) {
        auto it = arrow_ids.find(name);
        if (it == arrow_ids.end()) {
            fail(ErrorKind::UnknownArrow, name);
        }
        return it->second;
    };
    cat.index();

    cat.identities_.assign(cat.object_names_.size(), ArrowId{});
    for (const auto &[obj_name, arrow_name] : data.identities) {
        ObjectId a = lookup_object(obj_name);
        ArrowId f = lookup_arrow(arrow_name);
        const Arrow &arr = cat.arrows_[f.value];
        if (arr.dom != a || arr.cod != a) {
            fail(ErrorKind::MissingIdentity, arrow_name + " is not an endo-arrow on " + obj_name);
        }
        cat.identities_[a.value] = f;
    }
    for (size_t k = 0; k < cat.identities_.size(); k++) {
        if (!cat.identities_[k].valid()) {
            fail(ErrorKind::MissingIdentity, "object " + cat.object_names_[k] + " has no identity");
        }
    }

    const size_t n = cat.arrows_.size();
    cat.table_.assign(n * n, ArrowId{});
    auto slot = [&](ArrowId f, ArrowId g) -> ArrowId & {
        return cat.table_[static_cast<size_t>(f.value) * n + g.value];
    };
    auto describe = [&](ArrowId f, ArrowId g) {
        return cat.arrows_[f.value].name + " after " + cat.arrows_[g.value].name;
    };

    for (const CompositeDecl &decl : data.composites) {
        ArrowId f = lookup_arrow(decl.after);
        ArrowId g = lookup_arrow(decl.first);
        ArrowId fg = lookup_arrow(decl.result);
        const Arrow &af = cat.arrows_[f.value];
        const Arrow &ag = cat.arrows_[g.value];
        const Arrow &afg = cat.arrows_[fg.value];
        if (ag.cod != af.dom) {
            fail(ErrorKind::CompositionDomainMismatch, describe(f, g) + " listed but cod " + ag.name + " != dom " + af.name);
        }
        const bool f_is_id = cat.identities_[af.dom.value] == f;
        const bool g_is_id = cat.identities_[ag.dom.value] == g;
        if ((f_is_id && fg != g) || (g_is_id && fg != f)) {
            fail(
                ErrorKind::IdentityLawViolation,
                describe(f, g) + " = " + afg.name + ", expected " + (f_is_id ? ag.name : af.name));
        }
        if (afg.dom != ag.dom || afg.cod != af.cod) {
            fail(
                ErrorKind::CompositionDomainMismatch,
                describe(f, g) + " = " + afg.name + " has the wrong domain or codomain");
        }
        if (slot(f, g).valid() && slot(f, g) != fg) {
            fail(ErrorKind::CompositionDomainMismatch, describe(f, g) + " listed twice with different results");
        }
        slot(f, g) = fg;
    }

    // Identity laws: fill omitted entries, check listed ones.
    for (const Arrow &a : cat.arrows_) {
        ArrowId id_cod = cat.identities_[a.cod.value];
        ArrowId id_dom = cat.identities_[a.dom.value];
        for (auto [f, g] : {std::pair{id_cod, a.id}, std::pair{a.id, id_dom}}) {
            ArrowId &entry = slot(f, g);
            if (!entry.valid()) {
                entry = a.id;
            } else if (entry != a.id) {
                fail(
                    ErrorKind::IdentityLawViolation,
                    describe(f, g) + " = " + cat.arrows_[entry.value].name + ", expected " + a.name);
            }
        }
    }

    for (const Arrow &f : cat.arrows_) {
        for (ArrowId g : cat.in_[f.dom.value]) {
            if (!slot(f.id, g).valid()) {
                fail(ErrorKind::MissingComposite, describe(f.id, g) + " is composable but has no table entry");
            }
        }
    }

    for (const Arrow &f : cat.arrows_) {
        for (ArrowId g : cat.in_[f.dom.value]) {
            ArrowId fg = slot(f.id, g);
            for (ArrowId h : cat.in_[cat.arrows_[g.value].dom.value]) {
                ArrowId left = slot(fg, h);
                ArrowId right = slot(f.id, slot(g, h));
                if (left != right) {
                    fail(
                        ErrorKind::AssociativityViolation,
                        "(" + f.name + " after " + cat.arrows_[g.value].name + ") after " + cat.arrows_[h.value].name +
                            " = " + cat.arrows_[left.value].name + " but " + f.name + " after (" +
                            cat.arrows_[g.value].name + " after " + cat.arrows_[h.value].name +
                            ") = " + cat.arrows_[right.value].name);
                }
            }
        }
    }
    return cat;
}

std::vector<std::pair<std::string, std::string>> reflexive_transitive_closure(
    const std::vector<std::string> &elements, const std::vector<std::pair<std::string, std::string>> &relation) {
    std::map<std::string, size_t> index;
    for (size_t k = 0; k < elements.size(); k++) {
        index.emplace(elements[k], k);
    }
    const size_t n = elements.size();
    std::vector<char> reach(n * n, 0);
    for (size_t k = 0; k < n; k++) {
        reach[k * n + k] = 1;
    }
    for (const auto &[p, q] : relation) {
        auto ip = index.find(p);
        auto iq = index.find(q);
        if (ip == index.end() || iq == index.end()) {
            fail(ErrorKind::UnknownObject, "relation mentions unknown element " + (ip == index.end() ? p : q));
        }
        reach[ip->second * n + iq->second] = 1;
    }
    for (size_t k = 0; k < n; k++) {
        for (size_t i = 0; i < n; i++) {
            if (!reach[i * n + k]) {
                continue;
            }
            for (size_t j = 0; j < n; j++) {
                if (reach[k * n + j]) {
                    reach[i * n + j] = 1;
                }
            }
        }
    }
    std::vector<std::pair<std::string, std::string>> result;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            if (reach[i * n + j]) {
                result.emplace_back(elements[i], elements[j]);
            }
        }
    }
    return result;
}

FinCategory poset_to_category(
    const std::vector<std::string> &elements, const std::vector<std::pair<std::string, std::string>> &leq) {
    std::map<std::string, size_t> index;
    for (size_t k = 0; k < elements.size(); k++) {
        if (!index.emplace(elements[k], k).second) {
            fail(ErrorKind::NotAPoset, "duplicate element " + elements[k]);
        }
    }
    const size_t n = elements.size();
    std::vector<char> rel(n * n, 0);
    for (const auto &[p, q] : leq) {
        auto ip = index.find(p);
        auto iq = index.find(q);
        if (ip == index.end() || iq == index.end()) {
            fail(ErrorKind::UnknownObject, "relation mentions unknown element " + (ip == index.end() ? p : q));
        }
        rel[ip->second * n + iq->second] = 1;
    }
    for (size_t i = 0; i < n; i++) {
        if (!rel[i * n + i]) {
            fail(ErrorKind::NotAPoset, "reflexivity fails at " + elements[i]);
        }
    }
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            if (i != j && rel[i * n + j] && rel[j * n + i]) {
                fail(ErrorKind::NotAPoset, "antisymmetry fails: " + elements[i] + " <= " + elements[j] + " <= " + elements[i]);
            }
            for (size_t k = 0; k < n; k++) {
                if (rel[i * n + j] && rel[j * n + k] && !rel[i * n + k]) {
                    fail(
                        ErrorKind::NotAPoset,
                        "transitivity fails: " + elements[i] + " <= " + elements[j] + " <= " + elements[k] + " but not " +
                            elements[i] + " <= " + elements[k]);
                }
            }
        }
    }

    auto arrow_name = [&](size_t i, size_t j) {
        return i == j ? "id_" + elements[i] : elements[i] + "->" + elements[j];
    };
    CategoryData data;
    data.objects = elements;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            if (rel[i * n + j]) {
                data.arrows.push_back({arrow_name(i, j), elements[i], elements[j]});
            }
        }
        data.identities.emplace_back(elements[i], arrow_name(i, i));
    }
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            for (size_t k = 0; k < n; k++) {
                if (i != j && j != k && rel[i * n + j] && rel[j * n + k]) {
                    data.composites.push_back({arrow_name(j, k), arrow_name(i, j), arrow_name(i, k)});
                }
            }
        }
    }
    return build_category(data);
}

std::span<const ArrowId> arrows_from(const FinCategory &cat, ObjectId a) {
    return cat.arrows_from(a);
}

ArrowId compose(const FinCategory &cat, ArrowId f, ArrowId g) {
    return cat.compose(f, g);
}

}  // namespace ptopos
