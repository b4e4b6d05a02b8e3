#include "ptopos/presheaf.h"

#include <algorithm>
#include <atomic>
#include <deque>
#include <future>

#include "ptopos/error.h"

namespace ptopos {

Presheaf::Presheaf(
    std::shared_ptr<const FinCategory> cat,
    std::vector<std::vector<std::string>> labels,
    std::vector<std::vector<Element>> arrow_maps)
    : cat_(std::move(cat)), labels_(std::move(labels)), maps_(std::move(arrow_maps)) {
    if (labels_.size() != cat_->num_objects()) {
        fail(ErrorKind::MalformedPresheaf, "expected one element set per object");
    }
    if (maps_.size() != cat_->num_arrows()) {
        fail(ErrorKind::MalformedPresheaf, "expected one map per arrow");
    }
    for (const Arrow &f : cat_->arrows()) {
        const auto &m = maps_[f.id.value];
        if (m.size() != labels_[f.dom.value].size()) {
            fail(ErrorKind::MalformedPresheaf, "map for " + f.name + " is not total on its domain");
        }
        for (Element y : m) {
            if (y >= labels_[f.cod.value].size()) {
                fail(ErrorKind::MalformedPresheaf, "map for " + f.name + " leaves its codomain");
            }
        }
    }
}

LawCheck validate_presheaf(const Presheaf &x) {
    const FinCategory &cat = x.category();
    for (ObjectId a : cat.objects()) {
        ArrowId id = cat.identity(a);
        for (Element e = 0; e < x.size(a); e++) {
            if (x.apply(id, e) != e) {
                return {false, "X(" + cat.arrow(id).name + ") moves " + x.label(a, e), id};
            }
        }
    }
    for (const Arrow &f : cat.arrows()) {
        for (ArrowId g : cat.arrows_to(f.dom)) {
            ArrowId fg = cat.composite_or_invalid(f.id, g);
            ObjectId c = cat.dom(g);
            for (Element e = 0; e < x.size(c); e++) {
                if (x.apply(fg, e) != x.apply(f.id, x.apply(g, e))) {
                    return {
                        false,
                        "X(" + f.name + " after " + cat.arrow(g).name + ") differs from X(" + f.name + ") after X(" +
                            cat.arrow(g).name + ") at " + x.label(c, e),
                        fg};
                }
            }
        }
    }
    return {};
}

Presheaf terminal_presheaf(std::shared_ptr<const FinCategory> cat) {
    std::vector<std::vector<std::string>> labels(cat->num_objects(), std::vector<std::string>{"*"});
    std::vector<std::vector<Element>> maps(cat->num_arrows(), std::vector<Element>{0});
    return Presheaf(std::move(cat), std::move(labels), std::move(maps));
}

SubobjectClassifier::SubobjectClassifier(std::shared_ptr<const FinCategory> cat) {
    const FinCategory &c = *cat;
    sieves_.resize(c.num_objects());
    index_.resize(c.num_objects());
    std::vector<std::vector<std::string>> labels(c.num_objects());
    for (ObjectId a : c.objects()) {
        sieves_[a.value] = all_sieves(c, a);
        for (Element k = 0; k < sieves_[a.value].size(); k++) {
            index_[a.value].emplace(sieves_[a.value][k], k);
            labels[a.value].push_back(describe_sieve(c, sieves_[a.value][k]));
        }
    }
    std::vector<std::vector<Element>> maps(c.num_arrows());
    for (const Arrow &f : c.arrows()) {
        for (const Sieve &s : sieves_[f.dom.value]) {
            maps[f.id.value].push_back(index_[f.cod.value].at(push_sieve(c, f.id, s)));
        }
    }
    presheaf_ = std::make_shared<const Presheaf>(std::move(cat), std::move(labels), std::move(maps));
}

Element SubobjectClassifier::index_of(const Sieve &s) const {
    const auto &idx = index_.at(s.base().value);
    auto it = idx.find(s);
    if (it == idx.end()) {
        fail(ErrorKind::BaseMismatch, "not a sieve on " + presheaf_->category().object_name(s.base()));
    }
    return it->second;
}

Element SubobjectClassifier::top(ObjectId a) const {
    return index_of(principal_sieve(presheaf_->category(), a));
}

SubobjectClassifier omega_presheaf(std::shared_ptr<const FinCategory> cat) {
    return SubobjectClassifier(std::move(cat));
}

LawCheck is_natural(const NaturalTransformation &n) {
    if (!n.source || !n.target || n.source->category_ptr() != n.target->category_ptr()) {
        fail(ErrorKind::ComponentDomainMismatch, "source and target live over different categories");
    }
    const Presheaf &x = *n.source;
    const Presheaf &y = *n.target;
    const FinCategory &cat = x.category();
    if (n.components.size() != cat.num_objects()) {
        fail(ErrorKind::ComponentDomainMismatch, "expected one component per object");
    }
    for (ObjectId a : cat.objects()) {
        const auto &comp = n.components[a.value];
        if (comp.size() != x.size(a)) {
            fail(ErrorKind::ComponentDomainMismatch, "component at " + cat.object_name(a) + " is not total");
        }
        for (Element e : comp) {
            if (e >= y.size(a)) {
                fail(ErrorKind::ComponentDomainMismatch, "component at " + cat.object_name(a) + " leaves the target");
            }
        }
    }
    for (const Arrow &f : cat.arrows()) {
        for (Element e = 0; e < x.size(f.dom); e++) {
            if (y.apply(f.id, n.apply(f.dom, e)) != n.apply(f.cod, x.apply(f.id, e))) {
                return {false, "square for " + f.name + " fails at " + x.label(f.dom, e), f.id};
            }
        }
    }
    return {};
}

Subobject::Subobject(std::shared_ptr<const Presheaf> parent, std::vector<std::vector<Element>> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
    const FinCategory &cat = parent_->category();
    if (members_.size() != cat.num_objects()) {
        fail(ErrorKind::NotASubobject, "expected one subset per object");
    }
    mask_.resize(members_.size());
    for (ObjectId a : cat.objects()) {
        auto &m = members_[a.value];
        std::sort(m.begin(), m.end());
        m.erase(std::unique(m.begin(), m.end()), m.end());
        mask_[a.value].assign(parent_->size(a), 0);
        for (Element e : m) {
            if (e >= parent_->size(a)) {
                fail(ErrorKind::NotASubobject, "element outside X(" + cat.object_name(a) + ")");
            }
            mask_[a.value][e] = 1;
        }
    }
    for (const Arrow &f : cat.arrows()) {
        for (Element e : members_[f.dom.value]) {
            if (!mask_[f.cod.value][parent_->apply(f.id, e)]) {
                fail(
                    ErrorKind::NotASubobject,
                    "X(" + f.name + ") sends " + parent_->label(f.dom, e) + " outside K(" + cat.object_name(f.cod) + ")");
            }
        }
    }
}

bool Subobject::contains(ObjectId a, Element x) const {
    return mask_.at(a.value).at(x) != 0;
}

Presheaf Subobject::as_presheaf() const {
    const FinCategory &cat = parent_->category();
    std::vector<std::vector<std::string>> labels(cat.num_objects());
    std::vector<std::vector<Element>> local(cat.num_objects());
    for (ObjectId a : cat.objects()) {
        local[a.value].assign(parent_->size(a), 0);
        for (Element k = 0; k < members_[a.value].size(); k++) {
            Element e = members_[a.value][k];
            local[a.value][e] = k;
            labels[a.value].push_back(parent_->label(a, e));
        }
    }
    std::vector<std::vector<Element>> maps(cat.num_arrows());
    for (const Arrow &f : cat.arrows()) {
        for (Element e : members_[f.dom.value]) {
            maps[f.id.value].push_back(local[f.cod.value][parent_->apply(f.id, e)]);
        }
    }
    return Presheaf(parent_->category_ptr(), std::move(labels), std::move(maps));
}

NaturalTransformation characteristic_arrow(const Subobject &k, const SubobjectClassifier &omega) {
    const Presheaf &x = k.parent();
    if (x.category_ptr() != omega.presheaf().category_ptr()) {
        fail(ErrorKind::NotASubobject, "subobject and classifier live over different categories");
    }
    const FinCategory &cat = x.category();
    NaturalTransformation chi{k.parent_ptr(), omega.presheaf_ptr(), {}};
    chi.components.resize(cat.num_objects());
    for (ObjectId a : cat.objects()) {
        for (Element e = 0; e < x.size(a); e++) {
            std::vector<ArrowId> members;
            for (ArrowId f : cat.arrows_from(a)) {
                if (k.contains(cat.cod(f), x.apply(f, e))) {
                    members.push_back(f);
                }
            }
            chi.components[a.value].push_back(omega.index_of(Sieve(a, std::move(members))));
        }
    }
    return chi;
}

Subobject subobject_from_arrow(const NaturalTransformation &chi, const SubobjectClassifier &omega) {
    if (chi.target != omega.presheaf_ptr()) {
        fail(ErrorKind::NotNatural, "arrow does not land in the given classifier");
    }
    LawCheck check = is_natural(chi);
    if (!check) {
        fail(ErrorKind::NotNatural, check.witness);
    }
    const FinCategory &cat = chi.source->category();
    std::vector<std::vector<Element>> members(cat.num_objects());
    for (ObjectId a : cat.objects()) {
        Element top = omega.top(a);
        for (Element e = 0; e < chi.source->size(a); e++) {
            if (chi.apply(a, e) == top) {
                members[a.value].push_back(e);
            }
        }
    }
    return Subobject(chi.source, std::move(members));
}

std::vector<Subobject> enumerate_subobjects(std::shared_ptr<const Presheaf> x, const SearchOptions &options) {
    const FinCategory &cat = x->category();
    size_t bits = 0;
    size_t widest = 0;
    for (ObjectId a : cat.objects()) {
        bits += x->size(a);
        widest = std::max(widest, x->size(a));
    }
    if (bits > options.max_subobject_bits || widest >= 32) {
        fail(
            ErrorKind::SizeLimitExceeded,
            "2^" + std::to_string(bits) + " candidate subsets exceeds guard 2^" + std::to_string(options.max_subobject_bits));
    }

    const size_t n = cat.num_objects();
    std::vector<std::uint32_t> chosen(n, 0);
    std::vector<Subobject> result;

    auto closed = [&](const Arrow &f) {
        for (Element e = 0; e < x->size(f.dom); e++) {
            if ((chosen[f.dom.value] >> e & 1) && !(chosen[f.cod.value] >> x->apply(f.id, e) & 1)) {
                return false;
            }
        }
        return true;
    };

    auto recurse = [&](auto &self, size_t depth) -> void {
        if (depth == n) {
            std::vector<std::vector<Element>> members(n);
            for (size_t a = 0; a < n; a++) {
                for (Element e = 0; e < 32; e++) {
                    if (chosen[a] >> e & 1) {
                        members[a].push_back(e);
                    }
                }
            }
            result.emplace_back(x, std::move(members));
            return;
        }
        ObjectId a(static_cast<std::uint32_t>(depth));
        const std::uint32_t limit = std::uint32_t{1} << x->size(a);
        for (std::uint32_t mask = 0; mask < limit; mask++) {
            chosen[depth] = mask;
            bool ok = true;
            for (ArrowId f : cat.arrows_from(a)) {
                if (cat.cod(f).value <= depth && !closed(cat.arrow(f))) {
                    ok = false;
                    break;
                }
            }
            for (ArrowId f : cat.arrows_to(a)) {
                if (ok && cat.dom(f).value < depth && !closed(cat.arrow(f))) {
                    ok = false;
                }
            }
            if (ok) {
                self(self, depth + 1);
            }
        }
        chosen[depth] = 0;
    };
    recurse(recurse, 0);
    return result;
}

std::vector<NaturalTransformation> enumerate_natural_transformations(
    std::shared_ptr<const Presheaf> source, std::shared_ptr<const Presheaf> target, const SearchOptions &options) {
    if (source->category_ptr() != target->category_ptr()) {
        fail(ErrorKind::ComponentDomainMismatch, "source and target live over different categories");
    }
    const FinCategory &cat = source->category();
    const Presheaf &x = *source;
    const Presheaf &y = *target;

    // One variable per (object, element), in object-major order.
    std::vector<std::pair<ObjectId, Element>> vars;
    for (ObjectId a : cat.objects()) {
        for (Element e = 0; e < x.size(a); e++) {
            vars.emplace_back(a, e);
        }
    }
    constexpr Element unset = ~Element{0};
    std::vector<std::vector<Element>> comp(cat.num_objects());
    for (ObjectId a : cat.objects()) {
        comp[a.value].assign(x.size(a), unset);
    }

    std::vector<NaturalTransformation> result;
    std::uint64_t nodes = 0;

    auto consistent = [&](ObjectId a, Element e) {
        Element v = comp[a.value][e];
        for (ArrowId f : cat.arrows_from(a)) {
            Element image = comp[cat.cod(f).value][x.apply(f, e)];
            if (image != unset && y.apply(f, v) != image) {
                return false;
            }
        }
        for (ArrowId g : cat.arrows_to(a)) {
            ObjectId c = cat.dom(g);
            for (Element ce = 0; ce < x.size(c); ce++) {
                Element w = comp[c.value][ce];
                if (w != unset && x.apply(g, ce) == e && y.apply(g, w) != v) {
                    return false;
                }
            }
        }
        return true;
    };

    auto recurse = [&](auto &self, size_t depth) -> void {
        if (depth == vars.size()) {
            result.push_back(NaturalTransformation{source, target, comp});
            return;
        }
        auto [a, e] = vars[depth];
        for (Element v = 0; v < y.size(a); v++) {
            if (++nodes > options.max_nodes) {
                fail(ErrorKind::SizeLimitExceeded, "natural transformation search exceeded " + std::to_string(options.max_nodes) + " nodes");
            }
            comp[a.value][e] = v;
            if (consistent(a, e)) {
                self(self, depth + 1);
            }
        }
        comp[a.value][e] = unset;
    };
    recurse(recurse, 0);
    return result;
}

std::vector<ObjectId> section_search_order(const FinCategory &cat) {
    std::vector<ObjectId> order = cat.objects();
    std::stable_sort(order.begin(), order.end(), [&](ObjectId a, ObjectId b) {
        return cat.arrows_from(a).size() < cat.arrows_from(b).size();
    });
    return order;
}

namespace {

using Domains = std::vector<std::vector<char>>;

class SectionSearch {
   public:
    SectionSearch(const Presheaf &x, const SearchOptions &options) : x_(x), cat_(x.category()), options_(options) {
        order_ = section_search_order(cat_);
        for (const Arrow &f : cat_.arrows()) {
            if (!cat_.is_identity(f.id)) {
                arcs_.push_back(f.id);
            }
        }
        touching_.resize(cat_.num_objects());
        for (size_t k = 0; k < arcs_.size(); k++) {
            touching_[cat_.dom(arcs_[k]).value].push_back(k);
            touching_[cat_.cod(arcs_[k]).value].push_back(k);
        }
    }

    Domains initial_domains() const {
        Domains d(cat_.num_objects());
        for (ObjectId a : cat_.objects()) {
            d[a.value].assign(x_.size(a), 1);
        }
        return d;
    }

    // Arc consistency for γ_B = X(f)(γ_A) over every non-identity arrow.
    // Endo-arrows are handled by the same revision: a value survives only
    // if X(f) fixes it.
    bool propagate(Domains &d, std::deque<size_t> queue) const {
        std::vector<char> queued(arcs_.size(), 0);
        for (size_t k : queue) {
            queued[k] = 1;
        }
        auto enqueue_object = [&](ObjectId a) {
            for (size_t k : touching_[a.value]) {
                if (!queued[k]) {
                    queued[k] = 1;
                    queue.push_back(k);
                }
            }
        };
        while (!queue.empty()) {
            size_t k = queue.front();
            queue.pop_front();
            queued[k] = 0;
            ArrowId f = arcs_[k];
            ObjectId a = cat_.dom(f);
            ObjectId b = cat_.cod(f);
            auto &da = d[a.value];
            auto &db = d[b.value];

            bool changed_a = false;
            bool changed_b = false;
            if (a == b) {
                for (Element e = 0; e < da.size(); e++) {
                    if (da[e] && x_.apply(f, e) != e) {
                        da[e] = 0;
                        changed_a = true;
                    }
                }
            } else {
                std::vector<char> reached(db.size(), 0);
                for (Element e = 0; e < da.size(); e++) {
                    if (!da[e]) {
                        continue;
                    }
                    Element image = x_.apply(f, e);
                    if (db[image]) {
                        reached[image] = 1;
                    } else {
                        da[e] = 0;
                        changed_a = true;
                    }
                }
                for (Element e = 0; e < db.size(); e++) {
                    if (db[e] && !reached[e]) {
                        db[e] = 0;
                        changed_b = true;
                    }
                }
            }
            if (changed_a) {
                if (std::find(da.begin(), da.end(), 1) == da.end()) {
                    return false;
                }
                enqueue_object(a);
            }
            if (changed_b) {
                if (std::find(db.begin(), db.end(), 1) == db.end()) {
                    return false;
                }
                enqueue_object(b);
            }
        }
        for (const auto &dom : d) {
            if (std::find(dom.begin(), dom.end(), 1) == dom.end()) {
                return false;
            }
        }
        return true;
    }

    std::deque<size_t> all_arcs() const {
        std::deque<size_t> q;
        for (size_t k = 0; k < arcs_.size(); k++) {
            q.push_back(k);
        }
        return q;
    }

    // Fixes order_[depth] to e and propagates; false when the branch dies.
    bool assign(Domains &d, size_t depth, Element e) {
        if (nodes_->fetch_add(1) + 1 > options_.max_nodes) {
            fail(
                ErrorKind::SizeLimitExceeded,
                "global section search exceeded " + std::to_string(options_.max_nodes) + " nodes");
        }
        ObjectId a = order_[depth];
        std::fill(d[a.value].begin(), d[a.value].end(), 0);
        d[a.value][e] = 1;
        std::deque<size_t> q(touching_[a.value].begin(), touching_[a.value].end());
        return propagate(d, std::move(q));
    }

    void search(const Domains &d, size_t depth, std::vector<GlobalSection> &out) {
        if (depth == order_.size()) {
            GlobalSection s;
            s.choice.resize(d.size());
            for (size_t a = 0; a < d.size(); a++) {
                s.choice[a] = static_cast<Element>(std::find(d[a].begin(), d[a].end(), 1) - d[a].begin());
            }
            out.push_back(std::move(s));
            return;
        }
        ObjectId a = order_[depth];
        for (Element e = 0; e < d[a.value].size(); e++) {
            if (!d[a.value][e]) {
                continue;
            }
            Domains next = d;
            if (assign(next, depth, e)) {
                search(next, depth + 1, out);
            }
        }
    }

    std::vector<GlobalSection> run(SearchStats *stats) {
        std::atomic<std::uint64_t> nodes{0};
        nodes_ = &nodes;
        std::vector<GlobalSection> out;
        Domains d = initial_domains();
        if (order_.empty()) {
            out.push_back(GlobalSection{});
        } else if (propagate(d, all_arcs())) {
            ObjectId first = order_.front();
            if (!options_.parallel) {
                search(d, 0, out);
            } else {
                // One task per value of the first object; concatenating
                // branch results in value order reproduces the sequential
                // order exactly.
                std::vector<std::future<std::vector<GlobalSection>>> tasks;
                for (Element e = 0; e < d[first.value].size(); e++) {
                    if (!d[first.value][e]) {
                        continue;
                    }
                    tasks.push_back(std::async(std::launch::async, [this, d, e]() {
                        std::vector<GlobalSection> part;
                        Domains next = d;
                        if (assign(next, 0, e)) {
                            search(next, 1, part);
                        }
                        return part;
                    }));
                }
                for (auto &t : tasks) {
                    auto part = t.get();
                    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
                }
            }
        }
        if (stats) {
            stats->nodes = nodes.load();
        }
        nodes_ = nullptr;
        return out;
    }

   private:
    const Presheaf &x_;
    const FinCategory &cat_;
    SearchOptions options_;
    std::vector<ObjectId> order_;
    std::vector<ArrowId> arcs_;
    std::vector<std::vector<size_t>> touching_;
    std::atomic<std::uint64_t> *nodes_ = nullptr;
};

}  // namespace

std::vector<GlobalSection> global_sections(const Presheaf &x, const SearchOptions &options, SearchStats *stats) {
    SectionSearch search(x, options);
    return search.run(stats);
}

}  // namespace ptopos
