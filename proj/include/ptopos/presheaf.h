#ifndef PTOPOS_PRESHEAF_H
#define PTOPOS_PRESHEAF_H

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptopos/fincat.h"
#include "ptopos/sieve.h"

namespace ptopos {

/// Elements of a presheaf's object sets are indices 0..size(A)-1.
using Element = std::uint32_t;

/// A covariant functor from a finite category to finite sets. Arrow maps
/// push forward: X(f): X(dom f) → X(cod f).
class Presheaf {
   public:
    /// `labels[A]` names the elements of X(A); `arrow_maps[f][x]` is X(f)(x).
    /// Throws MalformedPresheaf if a map has the wrong length or leaves its
    /// codomain. Functor laws are not checked here (see validate_presheaf).
    Presheaf(
        std::shared_ptr<const FinCategory> cat,
        std::vector<std::vector<std::string>> labels,
        std::vector<std::vector<Element>> arrow_maps);

    const FinCategory &category() const {
        return *cat_;
    }
    const std::shared_ptr<const FinCategory> &category_ptr() const {
        return cat_;
    }
    size_t size(ObjectId a) const {
        return labels_.at(a.value).size();
    }
    const std::string &label(ObjectId a, Element x) const {
        return labels_.at(a.value).at(x);
    }
    Element apply(ArrowId f, Element x) const {
        return maps_[f.value][x];
    }
    std::span<const Element> arrow_map(ArrowId f) const {
        return maps_.at(f.value);
    }

   private:
    std::shared_ptr<const FinCategory> cat_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::vector<Element>> maps_;
};

/// Result of a law check; `witness` names the first failure.
struct LawCheck {
    bool ok = true;
    std::string witness;
    std::optional<ArrowId> failing_arrow;

    explicit operator bool() const {
        return ok;
    }
};

/// X(id_A) = id and X(f∘g) = X(f)∘X(g) for every composable pair.
LawCheck validate_presheaf(const Presheaf &x);

Presheaf terminal_presheaf(std::shared_ptr<const FinCategory> cat);

/// The presheaf Ω of sieves, together with the sieve behind each element.
class SubobjectClassifier {
   public:
    explicit SubobjectClassifier(std::shared_ptr<const FinCategory> cat);

    const Presheaf &presheaf() const {
        return *presheaf_;
    }
    const std::shared_ptr<const Presheaf> &presheaf_ptr() const {
        return presheaf_;
    }
    const Sieve &sieve(ObjectId a, Element x) const {
        return sieves_.at(a.value).at(x);
    }
    const std::vector<Sieve> &sieves(ObjectId a) const {
        return sieves_.at(a.value);
    }
    /// Throws BaseMismatch for a set that is not a sieve on its base.
    Element index_of(const Sieve &s) const;
    Element top(ObjectId a) const;

   private:
    std::vector<std::vector<Sieve>> sieves_;
    std::vector<std::map<Sieve, Element>> index_;
    std::shared_ptr<const Presheaf> presheaf_;
};

SubobjectClassifier omega_presheaf(std::shared_ptr<const FinCategory> cat);

struct NaturalTransformation {
    std::shared_ptr<const Presheaf> source;
    std::shared_ptr<const Presheaf> target;
    /// components[A][x] = N_A(x)
    std::vector<std::vector<Element>> components;

    Element apply(ObjectId a, Element x) const {
        return components.at(a.value).at(x);
    }
    bool operator==(const NaturalTransformation &other) const {
        return components == other.components;
    }
};

/// Y(f)∘N_A = N_B∘X(f) for every arrow f: A→B. Throws
/// ComponentDomainMismatch when the components do not fit the presheaves.
LawCheck is_natural(const NaturalTransformation &n);

class Subobject {
   public:
    /// Throws NotASubobject unless members[A] ⊆ X(A) and X(f) maps K(A)
    /// into K(B).
    Subobject(std::shared_ptr<const Presheaf> parent, std::vector<std::vector<Element>> members);

    const Presheaf &parent() const {
        return *parent_;
    }
    const std::shared_ptr<const Presheaf> &parent_ptr() const {
        return parent_;
    }
    const std::vector<std::vector<Element>> &members() const {
        return members_;
    }
    bool contains(ObjectId a, Element x) const;
    /// K as a presheaf in its own right: restriction of X to the subsets.
    Presheaf as_presheaf() const;

    bool operator==(const Subobject &other) const {
        return members_ == other.members_;
    }

   private:
    std::shared_ptr<const Presheaf> parent_;
    std::vector<std::vector<Element>> members_;
    std::vector<std::vector<char>> mask_;
};

/// χ^K_A(x) = {f: A→B | X(f)(x) ∈ K(B)}.
NaturalTransformation characteristic_arrow(const Subobject &k, const SubobjectClassifier &omega);

/// K^χ(A) = χ_A⁻¹{↑A}. Throws NotNatural if χ fails a naturality square.
Subobject subobject_from_arrow(const NaturalTransformation &chi, const SubobjectClassifier &omega);

/// Limit on exhaustive enumerations.
struct SearchOptions {
    /// Cap on search nodes for global sections and natural transformations.
    std::uint64_t max_nodes = std::uint64_t{1} << 24;
    /// Cap on Σ_A |X(A)|, i.e. log2 of the subobject candidate space.
    size_t max_subobject_bits = 20;
    bool parallel = true;
};

struct SearchStats {
    std::uint64_t nodes = 0;
};

/// Every subobject of x, each exactly once. Throws SizeLimitExceeded when
/// Π 2^|X(A)| exceeds 2^max_subobject_bits.
std::vector<Subobject> enumerate_subobjects(std::shared_ptr<const Presheaf> x, const SearchOptions &options = {});

/// Every natural transformation source → target, by backtracking over
/// components with early square checks.
std::vector<NaturalTransformation> enumerate_natural_transformations(
    std::shared_ptr<const Presheaf> source, std::shared_ptr<const Presheaf> target, const SearchOptions &options = {});

struct GlobalSection {
    /// choice[A] ∈ X(A)
    std::vector<Element> choice;

    auto operator<=>(const GlobalSection &) const = default;
};

/// Object order used by the global-section search: ascending out-degree,
/// ties by object id.
std::vector<ObjectId> section_search_order(const FinCategory &cat);

/// All global sections, by backtracking over objects in
/// section_search_order with arc-consistency pruning along every arrow.
/// The result is ordered lexicographically by the choices taken in search
/// order, and is identical with and without `parallel`.
std::vector<GlobalSection> global_sections(
    const Presheaf &x, const SearchOptions &options = {}, SearchStats *stats = nullptr);

}  // namespace ptopos

#endif
