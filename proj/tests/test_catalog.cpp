#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "diagbase/errors.hpp"
#include "diagbase/simple_group.hpp"

using namespace diagbase;

namespace {

const std::vector<SimpleGroupSpec>& catalog() {
    static const auto specs = load_catalog_file(default_catalog_path());
    return specs;
}

const SimpleGroupSpec& spec(const std::string& name) {
    for (const auto& s : catalog())
        if (s.name == name) return s;
    throw std::runtime_error("missing " + name);
}

}  // namespace

TEST_CASE("catalog loads the five groups with expected orders") {
    REQUIRE(catalog().size() >= 5);
    struct Row {
        const char* name;
        std::size_t order, out;
    };
    for (Row r : {Row{"A5", 60, 2}, Row{"A6", 360, 4}, Row{"L2(7)", 168, 2}, Row{"L2(8)", 504, 3}, Row{"L2(11)", 660, 2}}) {
        CAPTURE(r.name);
        auto cg = materialize(spec(r.name));
        CHECK(cg.group->order() == r.order);
        CHECK(cg.aut->out_order() == r.out);
        CHECK(cg.aut->order() == r.order * r.out);
        auto v = validate_spec(spec(r.name));
        for (const auto& c : v.checks) {
            CAPTURE(c.name);
            CAPTURE(c.detail);
            CHECK(c.passed);
        }
        CHECK(v.min_index_verified);
    }
}

TEST_CASE("catalog rejects an entry violating the Out(T) cube bound") {
    // |Out| = 4 breaks the closure count and 4^3 >= 60
    SimpleGroupSpec s = spec("A5");
    s.out_order = 4;
    auto v = validate_spec(s);
    CHECK_FALSE(v.ok());
    auto cube = std::find_if(v.checks.begin(), v.checks.end(),
                             [](const CheckResult& c) { return c.name == "out_cubed_below_order"; });
    REQUIRE(cube != v.checks.end());
    CHECK_FALSE(cube->passed);
    std::istringstream doc(R"(group bad
  natural_degree 5
  order 60
  out_order 4
  min_index 5
  generators (1 2 3 4 5) ; (1 2 3)
  gen_pair_distinct_orders (1 2 3 4 5) ; (1 2 3)
  involution_pair (1 2 3 4 5) ; (2 4)(3 5)
  aut_generator (1 3 5 2 4) ; (2 4 5)
end
)");
    CHECK_THROWS_AS(load_catalog(doc), ValidationError);
}

TEST_CASE("parse errors report line and field") {
    std::istringstream doc("group X\n  natural_degree 5\n  order sixty\nend\n");
    try {
        parse_catalog(doc);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.field() == "order");
    }
    std::istringstream bad_perm("group X\n natural_degree 3\n generators (1 2 9) ; (1 2)\nend\n");
    CHECK_THROWS_AS(parse_catalog(bad_perm), ParseError);
    std::istringstream unterminated("group X\n natural_degree 3\n");
    CHECK_THROWS_AS(parse_catalog(unterminated), ParseError);
}

TEST_CASE("a non-automorphism is rejected") {
    SimpleGroupSpec s = spec("A5");
    s.aut_generators = {{Perm::parse("(1 2 3 4 5)", 5), Perm::parse("(1 2)(3 4)", 5)}};
    CHECK_THROWS_AS(AutTable(std::make_shared<const SimpleGroup>(s)), ValidationError);
}

TEST_CASE("inner automorphisms") {
    auto cg = materialize(spec("A5"));
    const auto& g = *cg.group;
    const auto& aut = *cg.aut;
    CHECK(inn_of(g, 0).is_identity());
    for (TElem s = 0; s < g.order(); s += 7)
        for (TElem t = 0; t < g.order(); t += 5) CHECK(inn_of(g, s) * inn_of(g, t) == inn_of(g, g.mul(s, t)));
    for (TElem t = 1; t < g.order(); ++t) CHECK_FALSE(inn_of(g, t).is_identity());
    for (TElem t = 0; t < g.order(); ++t) CHECK(aut.recover_conjugator(inn_of(g, t)) == t);
    CHECK(aut.recover_conjugator(Perm(g.order())) == 0);
    CHECK_THROWS_AS(aut.recover_conjugator(aut.bijection(aut.make(1, 0))), NotInnerError);
}

TEST_CASE("aut table arithmetic agrees with bijections") {
    for (const char* name : {"A5", "A6", "L2(8)"}) {
        CAPTURE(name);
        auto cg = materialize(spec(name));
        const auto& aut = *cg.aut;
        const std::size_t n = aut.order();
        for (AutIdx a = 0; a < n; a += 13)
            for (AutIdx b = 0; b < n; b += 17) {
                CHECK(aut.bijection(aut.compose(a, b)) == aut.bijection(a) * aut.bijection(b));
            }
        for (AutIdx a = 0; a < n; a += 3) {
            CHECK(aut.compose(a, aut.inverse(a)) == 0);
            CHECK(aut.index_of(aut.bijection(a)) == a);
            CHECK(element_order(aut.bijection(a)) == aut.aut_order(a));
        }
        // each Out-coset has |T| members
        std::vector<std::size_t> per(aut.out_order(), 0);
        for (AutIdx a = 0; a < n; ++a) ++per[aut.coset(a)];
        for (auto c : per) CHECK(c == cg.group->order());
        CHECK(aut.as_table().order() == n);
    }
}

TEST_CASE("same_out_coset") {
    auto cg = materialize(spec("A5"));
    const auto& aut = *cg.aut;
    Perm id(cg.group->order());
    Perm outer = aut.bijection(aut.make(1, 0));
    CHECK(aut.same_out_coset(outer, outer));
    CHECK(aut.same_out_coset(id, inn_of(*cg.group, 5)));
    CHECK_FALSE(aut.same_out_coset(id, outer));
    CHECK(aut.same_out_coset(outer, aut.bijection(aut.make(1, 17))));
}

TEST_CASE("generator pairs") {
    for (const auto& s : catalog()) {
        CAPTURE(s.name);
        auto cg = materialize(s);
        auto [x, y] = cg.group->distinct_order_pair();
        CHECK(cg.group->elem_order(x) != cg.group->elem_order(y));
        CHECK(cg.group->subgroup_order({x, y}) == cg.group->order());
        auto [u, w] = cg.group->involution_pair();
        CHECK(cg.group->elem_order(w) == 2);
        CHECK(cg.group->subgroup_order({u, w}) == cg.group->order());
    }
    auto cg = materialize(spec("A5"));
    auto [x, y] = cg.group->distinct_order_pair();
    CHECK(cg.group->other_order_elements(x, y).size() == 15);
}
