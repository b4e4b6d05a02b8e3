#include "ptopos/heyting.h"

#include <algorithm>
#include <map>
#include <set>

#include "ptopos/error.h"

namespace ptopos {

std::optional<std::string> find_heyting_law_violation(const HeytingAlgebraTable &t) {
    const size_t n = t.size();
    auto name = [&](size_t x) {
        return t.labels[x];
    };
    auto witness = [&](const std::string &law, std::initializer_list<size_t> xs) {
        std::string out = law + " fails at";
        for (size_t x : xs) {
            out += " " + name(x);
        }
        return out;
    };

    for (size_t x = 0; x < n; x++) {
        if (!t.leq(t.zero, x) || !t.leq(x, t.one)) {
            return witness("0 <= x <= 1", {x});
        }
        if (t.negation(x) != t.implies(x, t.zero)) {
            return witness("not x = x => 0", {x});
        }
        for (size_t y = 0; y < n; y++) {
            bool le = t.leq(x, y);
            if (le != (t.meet(x, y) == x) || le != (t.join(x, y) == y)) {
                return witness("order agrees with meet/join", {x, y});
            }
            if (t.meet(x, y) != t.meet(y, x) || t.join(x, y) != t.join(y, x)) {
                return witness("commutativity", {x, y});
            }
            if (t.meet(x, t.join(x, y)) != x || t.join(x, t.meet(x, y)) != x) {
                return witness("absorption", {x, y});
            }
            for (size_t z = 0; z < n; z++) {
                if (t.meet(x, t.meet(y, z)) != t.meet(t.meet(x, y), z) ||
                    t.join(x, t.join(y, z)) != t.join(t.join(x, y), z)) {
                    return witness("associativity", {x, y, z});
                }
                if (t.meet(x, t.join(y, z)) != t.join(t.meet(x, y), t.meet(x, z)) ||
                    t.join(x, t.meet(y, z)) != t.meet(t.join(x, y), t.join(x, z))) {
                    return witness("distributivity", {x, y, z});
                }
                if (t.leq(z, t.implies(x, y)) != t.leq(t.meet(z, x), y)) {
                    return witness("adjunction z <= (x => y) iff z and x <= y", {x, y, z});
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<size_t> excluded_middle_failures(const HeytingAlgebraTable &t) {
    std::vector<size_t> out;
    for (size_t x = 0; x < t.size(); x++) {
        if (t.join(x, t.negation(x)) != t.one) {
            out.push_back(x);
        }
    }
    return out;
}

HeytingAlgebraTable sieve_algebra(const FinCategory &cat, ObjectId a) {
    std::vector<Sieve> sieves = all_sieves(cat, a);
    std::map<Sieve, size_t> index;
    for (size_t k = 0; k < sieves.size(); k++) {
        index.emplace(sieves[k], k);
    }
    const size_t n = sieves.size();
    HeytingAlgebraTable t;
    for (const Sieve &s : sieves) {
        t.labels.push_back(describe_sieve(cat, s));
    }
    t.zero = index.at(empty_sieve(cat, a));
    t.one = index.at(principal_sieve(cat, a));
    t.leq_table.resize(n * n);
    t.meet_table.resize(n * n);
    t.join_table.resize(n * n);
    t.implies_table.resize(n * n);
    t.not_table.resize(n);
    for (size_t x = 0; x < n; x++) {
        t.not_table[x] = index.at(sieve_not(cat, sieves[x]));
        for (size_t y = 0; y < n; y++) {
            size_t k = x * n + y;
            t.leq_table[k] = sieves[x].is_subset_of(sieves[y]);
            t.meet_table[k] = index.at(sieve_meet(sieves[x], sieves[y]));
            t.join_table[k] = index.at(sieve_join(sieves[x], sieves[y]));
            t.implies_table[k] = index.at(sieve_implies(cat, sieves[x], sieves[y]));
        }
    }
    return t;
}

std::uint64_t FiniteTopology::full() const {
    return points_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << points_.size()) - 1;
}

std::uint64_t FiniteTopology::interior(std::uint64_t subset) const {
    std::uint64_t result = 0;
    for (std::uint64_t open : opens_) {
        if ((open & ~subset) == 0) {
            result |= open;
        }
    }
    return result;
}

std::string FiniteTopology::describe(std::uint64_t subset) const {
    std::string out = "{";
    bool first = true;
    for (size_t k = 0; k < points_.size(); k++) {
        if (subset >> k & 1) {
            out += first ? "" : ",";
            out += points_[k];
            first = false;
        }
    }
    return out + "}";
}

FiniteTopology make_topology(std::vector<std::string> points, std::vector<std::vector<std::string>> opens) {
    FiniteTopology top;
    if (points.size() > 64) {
        fail(ErrorKind::NotATopology, "more than 64 points");
    }
    std::map<std::string, size_t> index;
    for (size_t k = 0; k < points.size(); k++) {
        if (!index.emplace(points[k], k).second) {
            fail(ErrorKind::NotATopology, "duplicate point " + points[k]);
        }
    }
    top.points_ = std::move(points);
    std::set<std::uint64_t> masks;
    for (const auto &open : opens) {
        std::uint64_t mask = 0;
        for (const std::string &p : open) {
            auto it = index.find(p);
            if (it == index.end()) {
                fail(ErrorKind::NotATopology, "unknown point " + p);
            }
            mask |= std::uint64_t{1} << it->second;
        }
        masks.insert(mask);
    }
    top.opens_.assign(masks.begin(), masks.end());
    if (!masks.count(0)) {
        fail(ErrorKind::NotATopology, "the empty set is not open");
    }
    if (!masks.count(top.full())) {
        fail(ErrorKind::NotATopology, "the whole space is not open");
    }
    for (std::uint64_t u : masks) {
        for (std::uint64_t v : masks) {
            if (!masks.count(u | v)) {
                fail(ErrorKind::NotATopology, "union " + top.describe(u) + " | " + top.describe(v) + " is not open");
            }
            if (!masks.count(u & v)) {
                fail(ErrorKind::NotATopology, "intersection " + top.describe(u) + " & " + top.describe(v) + " is not open");
            }
        }
    }
    return top;
}

HeytingAlgebraTable open_set_heyting(const FiniteTopology &top) {
    const auto &opens = top.opens();
    const size_t n = opens.size();
    auto index_of = [&](std::uint64_t mask) {
        return static_cast<size_t>(std::lower_bound(opens.begin(), opens.end(), mask) - opens.begin());
    };
    HeytingAlgebraTable t;
    for (std::uint64_t u : opens) {
        t.labels.push_back(top.describe(u));
    }
    t.zero = index_of(0);
    t.one = index_of(top.full());
    t.leq_table.resize(n * n);
    t.meet_table.resize(n * n);
    t.join_table.resize(n * n);
    t.implies_table.resize(n * n);
    t.not_table.resize(n);
    for (size_t x = 0; x < n; x++) {
        t.not_table[x] = index_of(top.interior(top.full() & ~opens[x]));
        for (size_t y = 0; y < n; y++) {
            size_t k = x * n + y;
            t.leq_table[k] = (opens[x] & ~opens[y]) == 0;
            t.meet_table[k] = index_of(opens[x] & opens[y]);
            t.join_table[k] = index_of(opens[x] | opens[y]);
            // Largest open U with U ∩ x ⊆ y is int((X - x) ∪ y).
            t.implies_table[k] = index_of(top.interior((top.full() & ~opens[x]) | opens[y]));
        }
    }
    return t;
}

}  // namespace ptopos
