#ifndef PTOPOS_SIEVE_H
#define PTOPOS_SIEVE_H

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "ptopos/fincat.h"

namespace ptopos {

/// A set of arrows out of `base` closed under post-composition.
///
/// Members are kept sorted by arrow id; ordering between sieves is
/// lexicographic on that list.
class Sieve {
   public:
    Sieve() = default;
    /// Sorts and deduplicates; does not check closure (see make_sieve).
    Sieve(ObjectId base, std::vector<ArrowId> members);

    ObjectId base() const {
        return base_;
    }
    const std::vector<ArrowId> &members() const {
        return members_;
    }
    size_t size() const {
        return members_.size();
    }
    bool empty() const {
        return members_.empty();
    }
    bool contains(ArrowId f) const;
    bool is_subset_of(const Sieve &other) const;

    bool operator==(const Sieve &) const = default;
    auto operator<=>(const Sieve &other) const = default;

   private:
    ObjectId base_;
    std::vector<ArrowId> members_;
};

bool is_sieve(const FinCategory &cat, ObjectId base, std::span<const ArrowId> arrows);
/// Checked construction: BaseMismatch if a member does not start at base,
/// InvariantViolation if the set is not closed.
Sieve make_sieve(const FinCategory &cat, ObjectId base, std::vector<ArrowId> arrows);

Sieve principal_sieve(const FinCategory &cat, ObjectId a);
Sieve empty_sieve(const FinCategory &cat, ObjectId a);
/// Smallest sieve containing f: {g∘f | dom g = cod f}.
Sieve generated_sieve(const FinCategory &cat, ArrowId f);

/// Every sieve on `a`, each exactly once, sorted.
std::vector<Sieve> all_sieves(const FinCategory &cat, ObjectId a);

Sieve sieve_meet(const Sieve &s1, const Sieve &s2);
Sieve sieve_join(const Sieve &s1, const Sieve &s2);
Sieve sieve_implies(const FinCategory &cat, const Sieve &s1, const Sieve &s2);
Sieve sieve_not(const FinCategory &cat, const Sieve &s);
/// Pushforward along f: A→B: {h: B→C | h∘f ∈ S}.
Sieve push_sieve(const FinCategory &cat, ArrowId f, const Sieve &s);

/// Codomains of the members. Only meaningful for thin categories, where
/// it identifies the sieve with an upper set.
std::vector<ObjectId> codomain_view(const FinCategory &cat, const Sieve &s);

std::string describe_sieve(const FinCategory &cat, const Sieve &s);

}  // namespace ptopos

#endif
