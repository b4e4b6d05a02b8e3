#include "ptopos/sieve.h"

#include <algorithm>
#include <set>

#include "ptopos/error.h"

namespace ptopos {

namespace {

void require_same_base(const Sieve &s1, const Sieve &s2) {
    if (s1.base() != s2.base()) {
        fail(
            ErrorKind::BaseMismatch,
            "sieves on objects #" + std::to_string(s1.base().value) + " and #" + std::to_string(s2.base().value));
    }
}

// Bit set over the local numbering of arrows_from(base).
using LocalSet = std::vector<std::uint64_t>;

}  // namespace

Sieve::Sieve(ObjectId base, std::vector<ArrowId> members) : base_(base), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Sieve::contains(ArrowId f) const {
    return std::binary_search(members_.begin(), members_.end(), f);
}

bool Sieve::is_subset_of(const Sieve &other) const {
    return base_ == other.base_ && std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

bool is_sieve(const FinCategory &cat, ObjectId base, std::span<const ArrowId> arrows) {
    std::vector<ArrowId> sorted(arrows.begin(), arrows.end());
    std::sort(sorted.begin(), sorted.end());
    for (ArrowId f : sorted) {
        if (cat.dom(f) != base) {
            return false;
        }
    }
    for (ArrowId f : sorted) {
        for (ArrowId g : cat.arrows_from(cat.cod(f))) {
            if (!std::binary_search(sorted.begin(), sorted.end(), cat.composite_or_invalid(g, f))) {
                return false;
            }
        }
    }
    return true;
}

Sieve make_sieve(const FinCategory &cat, ObjectId base, std::vector<ArrowId> arrows) {
    for (ArrowId f : arrows) {
        if (cat.dom(f) != base) {
            fail(ErrorKind::BaseMismatch, cat.arrow(f).name + " does not start at " + cat.object_name(base));
        }
    }
    if (!is_sieve(cat, base, arrows)) {
        fail(ErrorKind::InvariantViolation, "arrow set on " + cat.object_name(base) + " is not closed under composition");
    }
    return Sieve(base, std::move(arrows));
}

Sieve principal_sieve(const FinCategory &cat, ObjectId a) {
    auto out = cat.arrows_from(a);
    return Sieve(a, std::vector<ArrowId>(out.begin(), out.end()));
}

Sieve empty_sieve(const FinCategory &cat, ObjectId a) {
    cat.object_name(a);
    return Sieve(a, {});
}

Sieve generated_sieve(const FinCategory &cat, ArrowId f) {
    std::vector<ArrowId> members;
    for (ArrowId g : cat.arrows_from(cat.cod(f))) {
        members.push_back(cat.composite_or_invalid(g, f));
    }
    return Sieve(cat.dom(f), std::move(members));
}

std::vector<Sieve> all_sieves(const FinCategory &cat, ObjectId a) {
    // Sieves on a are exactly the unions of generated sieves, so close
    // {∅} under union with each generator.
    auto out = cat.arrows_from(a);
    const size_t m = out.size();
    const size_t words = (m + 63) / 64;
    auto local_index = [&](ArrowId f) {
        return static_cast<size_t>(std::lower_bound(out.begin(), out.end(), f) - out.begin());
    };

    std::vector<LocalSet> generators;
    for (ArrowId f : out) {
        LocalSet bits(words, 0);
        for (ArrowId g : cat.arrows_from(cat.cod(f))) {
            size_t k = local_index(cat.composite_or_invalid(g, f));
            bits[k / 64] |= std::uint64_t{1} << (k % 64);
        }
        generators.push_back(std::move(bits));
    }
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

    std::set<LocalSet> found{LocalSet(words, 0)};
    std::vector<LocalSet> frontier{LocalSet(words, 0)};
    while (!frontier.empty()) {
        std::vector<LocalSet> next;
        for (const LocalSet &s : frontier) {
            for (const LocalSet &gen : generators) {
                LocalSet u = s;
                for (size_t w = 0; w < words; w++) {
                    u[w] |= gen[w];
                }
                if (found.insert(u).second) {
                    next.push_back(std::move(u));
                }
            }
        }
        frontier = std::move(next);
    }

    std::vector<Sieve> result;
    result.reserve(found.size());
    for (const LocalSet &bits : found) {
        std::vector<ArrowId> members;
        for (size_t k = 0; k < m; k++) {
            if (bits[k / 64] >> (k % 64) & 1) {
                members.push_back(out[k]);
            }
        }
        result.emplace_back(a, std::move(members));
    }
    std::sort(result.begin(), result.end());
    return result;
}

Sieve sieve_meet(const Sieve &s1, const Sieve &s2) {
    require_same_base(s1, s2);
    std::vector<ArrowId> out;
    std::set_intersection(
        s1.members().begin(), s1.members().end(), s2.members().begin(), s2.members().end(), std::back_inserter(out));
    return Sieve(s1.base(), std::move(out));
}

Sieve sieve_join(const Sieve &s1, const Sieve &s2) {
    require_same_base(s1, s2);
    std::vector<ArrowId> out;
    std::set_union(s1.members().begin(), s1.members().end(), s2.members().begin(), s2.members().end(), std::back_inserter(out));
    return Sieve(s1.base(), std::move(out));
}

Sieve sieve_implies(const FinCategory &cat, const Sieve &s1, const Sieve &s2) {
    require_same_base(s1, s2);
    std::vector<ArrowId> out;
    for (ArrowId f : cat.arrows_from(s1.base())) {
        bool keep = true;
        for (ArrowId g : cat.arrows_from(cat.cod(f))) {
            ArrowId gf = cat.composite_or_invalid(g, f);
            if (s1.contains(gf) && !s2.contains(gf)) {
                keep = false;
                break;
            }
        }
        if (keep) {
            out.push_back(f);
        }
    }
    return Sieve(s1.base(), std::move(out));
}

Sieve sieve_not(const FinCategory &cat, const Sieve &s) {
    return sieve_implies(cat, s, empty_sieve(cat, s.base()));
}

Sieve push_sieve(const FinCategory &cat, ArrowId f, const Sieve &s) {
    if (cat.dom(f) != s.base()) {
        fail(ErrorKind::BaseMismatch, cat.arrow(f).name + " does not start at the sieve's base " + cat.object_name(s.base()));
    }
    std::vector<ArrowId> out;
    for (ArrowId h : cat.arrows_from(cat.cod(f))) {
        if (s.contains(cat.composite_or_invalid(h, f))) {
            out.push_back(h);
        }
    }
    return Sieve(cat.cod(f), std::move(out));
}

std::vector<ObjectId> codomain_view(const FinCategory &cat, const Sieve &s) {
    std::vector<ObjectId> result;
    for (ArrowId f : s.members()) {
        result.push_back(cat.cod(f));
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

std::string describe_sieve(const FinCategory &cat, const Sieve &s) {
    std::string out = "{";
    for (size_t k = 0; k < s.members().size(); k++) {
        if (k) {
            out += ", ";
        }
        out += cat.arrow(s.members()[k]).name;
    }
    return out + "}";
}

}  // namespace ptopos
