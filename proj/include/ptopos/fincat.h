#ifndef PTOPOS_FINCAT_H
#define PTOPOS_FINCAT_H

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ptopos {

template <typename Tag>
struct Id {
    std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

    constexpr Id() = default;
    constexpr explicit Id(std::uint32_t v) : value(v) {
    }
    constexpr bool valid() const {
        return value != std::numeric_limits<std::uint32_t>::max();
    }
    constexpr auto operator<=>(const Id &) const = default;
};

struct ObjectTag {};
struct ArrowTag {};
using ObjectId = Id<ObjectTag>;
using ArrowId = Id<ArrowTag>;

struct Arrow {
    ArrowId id;
    std::string name;
    ObjectId dom;
    ObjectId cod;
};

/// Named declaration of an arrow, used as input to build_category.
struct ArrowDecl {
    std::string name;
    std::string dom;
    std::string cod;
};

/// Composition table entry: `after` ∘ `first` = `result`.
struct CompositeDecl {
    std::string after;
    std::string first;
    std::string result;
};

struct CategoryData {
    std::vector<std::string> objects;
    std::vector<ArrowDecl> arrows;
    /// (object name, identity arrow name)
    std::vector<std::pair<std::string, std::string>> identities;
    /// Entries whose arguments include an identity may be omitted; they
    /// are filled in by the identity laws. All other composable pairs must
    /// be listed.
    std::vector<CompositeDecl> composites;
};

/// A validated finite category. Immutable once built.
///
/// Composition follows the convention f∘g for g: C→B, f: B→A.
class FinCategory {
   public:
    size_t num_objects() const {
        return object_names_.size();
    }
    size_t num_arrows() const {
        return arrows_.size();
    }

    const std::string &object_name(ObjectId a) const;
    const Arrow &arrow(ArrowId f) const;
    ObjectId dom(ArrowId f) const {
        return arrow(f).dom;
    }
    ObjectId cod(ArrowId f) const {
        return arrow(f).cod;
    }
    ArrowId identity(ObjectId a) const;
    bool is_identity(ArrowId f) const;

    ObjectId find_object(std::string_view name) const;
    ArrowId find_arrow(std::string_view name) const;

    std::vector<ObjectId> objects() const;
    const std::vector<Arrow> &arrows() const {
        return arrows_;
    }

    /// Arrows with the given domain, sorted by id (includes the identity).
    std::span<const ArrowId> arrows_from(ObjectId a) const;
    /// Arrows with the given codomain, sorted by id.
    std::span<const ArrowId> arrows_to(ObjectId a) const;

    /// Returns f∘g. Throws NotComposable unless cod g = dom f.
    ArrowId compose(ArrowId f, ArrowId g) const;
    /// Unchecked table lookup; invalid id when not composable.
    ArrowId composite_or_invalid(ArrowId f, ArrowId g) const {
        return table_[static_cast<size_t>(f.value) * arrows_.size() + g.value];
    }

    /// True when there is at most one arrow per ordered pair of objects.
    bool is_thin() const;

    friend FinCategory build_category(const CategoryData &data);

   private:
    FinCategory() = default;
    void index();

    std::vector<std::string> object_names_;
    std::vector<Arrow> arrows_;
    std::vector<ArrowId> identities_;
    std::vector<ArrowId> table_;
    std::vector<std::vector<ArrowId>> out_;
    std::vector<std::vector<ArrowId>> in_;
};

/// Validates and builds a category. Throws ToposError with one of
/// MissingIdentity, MissingComposite, CompositionDomainMismatch,
/// AssociativityViolation, IdentityLawViolation, UnknownObject, UnknownArrow.
FinCategory build_category(const CategoryData &data);

/// Thin category of a finite poset: one arrow "p->q" per p ≤ q, with
/// identities named "id_p". The relation must already be reflexive,
/// transitive and antisymmetric; otherwise NotAPoset names a witness.
FinCategory poset_to_category(
    const std::vector<std::string> &elements, const std::vector<std::pair<std::string, std::string>> &leq);

/// Reflexive-transitive closure of a relation over the given elements.
std::vector<std::pair<std::string, std::string>> reflexive_transitive_closure(
    const std::vector<std::string> &elements, const std::vector<std::pair<std::string, std::string>> &relation);

std::span<const ArrowId> arrows_from(const FinCategory &cat, ObjectId a);
ArrowId compose(const FinCategory &cat, ArrowId f, ArrowId g);

}  // namespace ptopos

template <typename Tag>
struct std::hash<ptopos::Id<Tag>> {
    size_t operator()(const ptopos::Id<Tag> &id) const noexcept {
        return std::hash<std::uint32_t>{}(id.value);
    }
};

#endif
