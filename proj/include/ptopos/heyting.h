#ifndef PTOPOS_HEYTING_H
#define PTOPOS_HEYTING_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptopos/fincat.h"
#include "ptopos/sieve.h"

namespace ptopos {

/// A finite Heyting algebra given by explicit operation tables over the
/// element indices 0..size()-1.
struct HeytingAlgebraTable {
    std::vector<std::string> labels;
    size_t zero = 0;
    size_t one = 0;
    std::vector<std::uint8_t> leq_table;
    std::vector<size_t> meet_table;
    std::vector<size_t> join_table;
    std::vector<size_t> implies_table;
    std::vector<size_t> not_table;

    size_t size() const {
        return labels.size();
    }
    bool leq(size_t x, size_t y) const {
        return leq_table[x * size() + y] != 0;
    }
    size_t meet(size_t x, size_t y) const {
        return meet_table[x * size() + y];
    }
    size_t join(size_t x, size_t y) const {
        return join_table[x * size() + y];
    }
    size_t implies(size_t x, size_t y) const {
        return implies_table[x * size() + y];
    }
    size_t negation(size_t x) const {
        return not_table[x];
    }
};

/// First violated law (distributive lattice, bounds, adjunction, ¬x = x⇒0),
/// or nullopt when the table is a Heyting algebra.
std::optional<std::string> find_heyting_law_violation(const HeytingAlgebraTable &table);

/// Elements x with x ∨ ¬x ≠ 1.
std::vector<size_t> excluded_middle_failures(const HeytingAlgebraTable &table);

/// Ω(A) as a table; element k is all_sieves(cat, a)[k].
HeytingAlgebraTable sieve_algebra(const FinCategory &cat, ObjectId a);

/// Finite topological space; opens are bit masks over `points` (≤ 64 points).
class FiniteTopology {
   public:
    const std::vector<std::string> &points() const {
        return points_;
    }
    /// Sorted ascending by mask value.
    const std::vector<std::uint64_t> &opens() const {
        return opens_;
    }
    std::uint64_t full() const;
    std::uint64_t interior(std::uint64_t subset) const;
    std::string describe(std::uint64_t subset) const;

    friend FiniteTopology make_topology(std::vector<std::string> points, std::vector<std::vector<std::string>> opens);

   private:
    std::vector<std::string> points_;
    std::vector<std::uint64_t> opens_;
};

/// Throws NotATopology unless the family contains ∅ and the whole set and
/// is closed under pairwise union and intersection.
FiniteTopology make_topology(std::vector<std::string> points, std::vector<std::vector<std::string>> opens);

HeytingAlgebraTable open_set_heyting(const FiniteTopology &topology);

}  // namespace ptopos

#endif
