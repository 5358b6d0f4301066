#include <random>

#include "doctest.h"
#include "diagbase/errors.hpp"
#include "diagbase/group_table.hpp"

using namespace diagbase;

namespace {

GroupTable sym(std::size_t m) {
    std::vector<Perm> g{Perm::parse("(1 2)", m), Perm::from_cycles(m, {[&] {
                                                          std::vector<Point> c(m);
                                                          for (std::size_t i = 0; i < m; ++i) c[i] = static_cast<Point>(i);
                                                          return c;
                                                      }()})};
    return GroupTable::generate(g, m);
}

GroupTable alt(std::size_t m) {
    std::vector<Perm> g;
    for (Point i = 2; i < m; ++i) g.push_back(Perm::from_cycles(m, {{0, 1, i}}));
    return GroupTable::generate(g, m);
}

GroupTable a5() {
    std::vector<Perm> g{Perm::parse("(1 2 3 4 5)", 5), Perm::parse("(1 2 3)", 5)};
    return GroupTable::generate(g, 5);
}

Perm random_perm(std::size_t m, std::mt19937_64& rng) {
    std::vector<Point> img(m);
    for (std::size_t i = 0; i < m; ++i) img[i] = static_cast<Point>(i);
    std::shuffle(img.begin(), img.end(), rng);
    return Perm(img);
}

}  // namespace

TEST_CASE("perm parsing and printing round-trip") {
    Perm p = Perm::parse("(1 2 3)(4 5)", 6);
    CHECK(p.to_string() == "(1 2 3)(4 5)");
    CHECK(Perm::parse("()", 4).is_identity());
    CHECK(Perm(4).to_string() == "()");
    CHECK_THROWS_AS(Perm::parse("(1 7)", 5), ValidationError);
    CHECK_THROWS_AS(Perm::parse("(1 2)(2 3)", 5), ValidationError);
    CHECK_THROWS_AS(Perm(std::vector<Point>{0, 0, 1}), ValidationError);
}

TEST_CASE("composition applies the left factor first") {
    Perm p = Perm::parse("(1 2)", 3), q = Perm::parse("(2 3)", 3);
    // 0 -p-> 1 -q-> 2
    CHECK((p * q)(0) == 2);
    CHECK((p * q) != (q * p));
}

TEST_CASE("element orders") {
    CHECK(element_order(Perm(5)) == 1);
    CHECK(element_order(Perm::parse("(1 2 3 4 5)", 5)) == 5);
    CHECK(element_order(Perm::parse("(1 2)(3 4 5)", 5)) == 6);
    auto g = a5();
    int fives = 0;
    for (const Perm& p : g.elements()) fives += element_order(p) == 5;
    CHECK(fives == 24);
}

TEST_CASE("group axioms on random triples") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Perm a = random_perm(9, rng), b = random_perm(9, rng), c = random_perm(9, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a * b).inverse() == b.inverse() * a.inverse());
        CHECK((a * a.inverse()).is_identity());
        CHECK(a.pow(-3) == a.inverse().pow(3));
    }
}

TEST_CASE("closure sizes") {
    std::vector<Perm> id{Perm(4)};
    CHECK(GroupTable::generate(id, 4).order() == 1);
    CHECK(a5().order() == 60);
    std::vector<Perm> s5g{Perm::parse("(1 2 3 4 5)", 5), Perm::parse("(1 2 3)", 5), Perm::parse("(1 2)", 5)};
    CHECK(GroupTable::generate(s5g, 5).order() == 120);
    std::vector<Perm> big{Perm::parse("(1 2)", 8), Perm::parse("(1 2 3 4 5 6 7 8)", 8)};
    CHECK_THROWS_AS(GroupTable::generate(big, 8, 1000), BudgetExceeded);
}

TEST_CASE("closure is idempotent") {
    auto g = a5();
    auto h = GroupTable::generate(g.elements(), 5);
    CHECK(h.order() == g.order());
    for (const Perm& p : g.elements()) CHECK(h.contains(p));
}

TEST_CASE("conjugacy classes and centralizers") {
    std::vector<Perm> id{Perm(3)};
    CHECK(conjugacy_classes(GroupTable::generate(id, 3)).reps.size() == 1);
    auto g = a5();
    auto cp = conjugacy_classes(g);
    CHECK(cp.reps.size() == 5);
    auto sizes = cp.sizes;
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{1, 12, 12, 15, 20});
    for (std::size_t r : cp.reps) CHECK(cp.sizes[cp.class_of[r]] * centralizer(g, g.element(r)).order() == g.order());
    CHECK(centralizer(g, Perm(5)).order() == 60);
    CHECK(centralizer(g, Perm::parse("(1 2 3 4 5)", 5)).order() == 5);
    CHECK_THROWS_AS(centralizer(g, Perm::parse("(1 2)", 5)), PreconditionError);
    CHECK(conjugacy_classes(sym(5)).reps.size() == 7);
}

TEST_CASE("prime order class counts") {
    std::vector<Perm> id{Perm(3)};
    CHECK(prime_order_class_count(GroupTable::generate(id, 3)) == 0);
    for (std::size_t m : {5, 6, 7}) CHECK(2 * prime_order_class_count(sym(m)) <= m * m);
    auto fa = prime_order_class_count(a5()), fs = prime_order_class_count(sym(5));
    CHECK(fa <= 2 * fs);
    std::vector<Perm> c5{Perm::parse("(1 2 3 4 5)", 5)};
    CHECK(prime_order_class_count(GroupTable::generate(c5, 5)) <= 12 * fa);
}

TEST_CASE("minimal base in the natural action") {
    for (std::size_t m : {3, 4, 5, 6}) CHECK(minimal_base(sym(m)).size == m - 1);
    CHECK(minimal_base(alt(4)).size == 2);
    CHECK(minimal_base(alt(5)).size == 3);
    std::vector<Perm> d5{Perm::parse("(1 2 3 4 5)", 5), Perm::parse("(2 5)(3 4)", 5)};
    auto g = GroupTable::generate(d5, 5);
    auto b = minimal_base(g);
    CHECK(b.size == 2);
    CHECK(pointwise_stabilizer(g, b.base).size() == 1);
    for (Point a = 0; a < 5; ++a) {
        std::vector<Point> one{a};
        CHECK(pointwise_stabilizer(g, one).size() > 1);
    }
}

TEST_CASE("minimal degree") {
    CHECK(minimal_degree(sym(5)) == 2);
    CHECK(minimal_degree(alt(6)) == 3);
    std::vector<Perm> c{Perm::from_cycles(37, {[] {
                                               std::vector<Point> v(37);
                                               for (Point i = 0; i < 37; ++i) v[i] = i;
                                               return v;
                                           }()})};
    CHECK(minimal_degree(GroupTable::generate(c, 37)) == 37);
    std::vector<Perm> id{Perm(3)};
    CHECK_THROWS_AS(minimal_degree(GroupTable::generate(id, 3)), PreconditionError);
}

TEST_CASE("primitivity") {
    CHECK(is_primitive(sym(5)));
    CHECK(is_primitive(alt(4)));
    std::vector<Perm> c4{Perm::parse("(1 2 3 4)", 4)};
    CHECK_FALSE(is_primitive(GroupTable::generate(c4, 4)));
    std::vector<Perm> c5{Perm::parse("(1 2 3 4 5)", 5)};
    CHECK(is_primitive(GroupTable::generate(c5, 5)));
    std::vector<Perm> intrans{Perm::parse("(1 2)", 4)};
    CHECK_FALSE(is_transitive(GroupTable::generate(intrans, 4)));
}

TEST_CASE("distinguishing subsets") {
    CHECK_FALSE(distinguishing_subset(sym(5)).subset.has_value());
    std::vector<Perm> d5g{Perm::parse("(1 2 3 4 5)", 5), Perm::parse("(2 5)(3 4)", 5)};
    auto d5 = GroupTable::generate(d5g, 5);
    auto r = distinguishing_subset(d5);
    CHECK(r.certain);
    if (r.subset) CHECK(has_trivial_setwise_stabilizer(d5, *r.subset));
    // exhaustive cross-check: a subset exists iff some half-or-more subset has trivial stabilizer
    bool any = false;
    for (unsigned mask = 1; mask < 31; ++mask) {
        std::vector<Point> s;
        for (Point i = 0; i < 5; ++i)
            if (mask >> i & 1) s.push_back(i);
        if (s.size() >= 3 && has_trivial_setwise_stabilizer(d5, s)) any = true;
    }
    CHECK(any == r.subset.has_value());

    std::vector<Perm> c37{Perm::from_cycles(37, {[] {
                                                 std::vector<Point> v(37);
                                                 for (Point i = 0; i < 37; ++i) v[i] = i;
                                                 return v;
                                             }()})};
    auto c = GroupTable::generate(c37, 37);
    auto rc = distinguishing_subset(c);
    REQUIRE(rc.subset);
    CHECK(rc.subset->size() >= 19);
    CHECK(has_trivial_setwise_stabilizer(c, *rc.subset));
}
