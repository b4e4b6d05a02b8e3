#include "check.h"
#include "ptopos/heyting.h"
#include "support.h"

using namespace ptopos;
using namespace ptopos::testing;

namespace {

size_t open_index(const FiniteTopology &t, std::uint64_t mask) {
    auto it = std::find(t.opens().begin(), t.opens().end(), mask);
    REQUIRE(it != t.opens().end());
    return static_cast<size_t>(it - t.opens().begin());
}

}  // namespace

TEST_CASE("sieve_algebra is a Heyting algebra on every object of the small categories") {
    for (const NamedCategory &c : abstract_categories()) {
        for (ObjectId a : c.cat->objects()) {
            HeytingAlgebraTable t = sieve_algebra(*c.cat, a);
            CAPTURE(c.name);
            CHECK(find_heyting_law_violation(t) == std::nullopt);
            CHECK(t.size() == all_sieves(*c.cat, a).size());
        }
    }
}

TEST_CASE("excluded middle fails on the V-poset and holds on a chain's top") {
    CatPtr v = v_poset();
    HeytingAlgebraTable t = sieve_algebra(*v, v->find_object("p"));
    std::vector<size_t> failures = excluded_middle_failures(t);
    std::vector<std::string> labels;
    for (size_t k : failures) {
        labels.push_back(t.labels[k]);
    }
    CHECK(std::find(labels.begin(), labels.end(), "{p->q}") != labels.end());
    CHECK(std::find(labels.begin(), labels.end(), "{p->r}") != labels.end());
    CatPtr chain = chain3();
    CHECK(excluded_middle_failures(sieve_algebra(*chain, chain->find_object("r"))).empty());
}

TEST_CASE("open_set_heyting on the discrete topology is Boolean") {
    FiniteTopology t = make_topology({"a", "b"}, {{}, {"a"}, {"b"}, {"a", "b"}});
    HeytingAlgebraTable h = open_set_heyting(t);
    CHECK(h.size() == 4);
    CHECK(find_heyting_law_violation(h) == std::nullopt);
    CHECK(excluded_middle_failures(h).empty());
    CHECK(h.negation(h.zero) == h.one);
    CHECK(h.negation(h.one) == h.zero);
}

TEST_CASE("open_set_heyting on the Sierpinski space") {
    FiniteTopology t = make_topology({"a", "b"}, {{}, {"a"}, {"a", "b"}});
    HeytingAlgebraTable h = open_set_heyting(t);
    size_t a = open_index(t, 0b01);
    CHECK(h.negation(a) == h.zero);
    CHECK(h.join(a, h.negation(a)) == a);
    CHECK(excluded_middle_failures(h) == std::vector<size_t>{a});
    CHECK(h.negation(h.zero) == h.one);
    CHECK(h.implies(h.one, a) == a);
    CHECK(t.interior(0b10) == 0);
    CHECK(t.describe(0b11) == "{a,b}");
}

TEST_CASE("make_topology rejects non-topologies") {
    CHECK_KIND(make_topology({"a", "b"}, {{"a"}, {"a", "b"}}), ErrorKind::NotATopology);
    CHECK_KIND(make_topology({"a", "b"}, {{}, {"a"}}), ErrorKind::NotATopology);
    CHECK_KIND(make_topology({"a", "b", "c"}, {{}, {"a"}, {"b"}, {"a", "b", "c"}}), ErrorKind::NotATopology);
    CHECK_KIND(make_topology({"a", "b", "c"}, {{}, {"a", "b"}, {"b", "c"}, {"a", "b", "c"}}), ErrorKind::NotATopology);
    CHECK_KIND(make_topology({"a"}, {{}, {"z"}, {"a"}}), ErrorKind::NotATopology);
}

TEST_CASE("find_heyting_law_violation reports corrupted tables") {
    CatPtr v = v_poset();
    HeytingAlgebraTable good = sieve_algebra(*v, v->find_object("p"));

    HeytingAlgebraTable bad_not = good;
    bad_not.not_table[bad_not.zero] = bad_not.zero;
    CHECK(find_heyting_law_violation(bad_not).has_value());

    HeytingAlgebraTable bad_implies = good;
    bad_implies.implies_table[1 * good.size() + 2] = bad_implies.zero;
    bad_implies.implies_table[2 * good.size() + 1] = bad_implies.zero;
    CHECK(find_heyting_law_violation(bad_implies).has_value());

    HeytingAlgebraTable bad_meet = good;
    for (size_t x = 0; x < good.size(); x++) {
        for (size_t y = 0; y < good.size(); y++) {
            bad_meet.meet_table[x * good.size() + y] = good.join(x, y);
        }
    }
    CHECK(find_heyting_law_violation(bad_meet).has_value());
}
