#include "doctest.h"

#include <numeric>
#include <random>
#include <set>

#include "diagbase/base_engine.hpp"
#include "diagbase/errors.hpp"
#include "support.hpp"

using namespace diagbase;
using testsupport::make;

namespace {

std::vector<DiagPerm> sorted(std::vector<DiagPerm> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Every element satisfies the defining condition and the "baby" shortcut when it applies.
void check_stabilizer_shape(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts,
                            const std::vector<DiagPerm>& stab) {
    for (const auto& e : stab) {
        CHECK(g.contains(g.diag(e.alpha, e.perm)));
        for (const auto& w : pts) {
            CHECK(act_diag(g, w, e.alpha, e.perm) == w);
            for (Point j = 0; j < g.k(); ++j) {
                if (w.t[j] != 0 || w.t[e.perm(j)] != 0) continue;
                for (Point i = 0; i < g.k(); ++i) CHECK(g.aut().apply(e.alpha, w.t[i]) == w.t[e.perm(i)]);
                break;
            }
            // column multisets move with pi
            auto m = order_matrix(g.t(), w);
            auto c0 = m.column(0), c1 = m.column(e.perm(0));
            std::multiset<std::uint32_t> a(c0.begin(), c0.end()), b(c1.begin(), c1.end());
            CHECK(a == b);
        }
    }
}

}  // namespace

TEST_CASE("order matrix") {
    auto g = make("A5", 4, "full", "Sym(4)");
    auto m = order_matrix(g.t(), g.diagonal_point());
    for (auto v : m.entries) CHECK(v == 1);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) CHECK(order_matrix(g.t(), g.random_point(rng)).symmetric_with_unit_diagonal());
}

TEST_CASE("stabilizer of D alone is G_D") {
    auto g = make("A5", 2, "full", "Sym(2)");
    auto stab = stabilizer_by_scan(g, {g.diagonal_point()});
    CHECK(stab.size() == 240);
    auto cert = is_base(g, {});
    CHECK_FALSE(cert.is_base);
    REQUIRE(cert.witness);
    bool trivial = cert.witness->alpha == 0 && cert.witness->perm.is_identity();
    CHECK_FALSE(trivial);
}

TEST_CASE("centralizer elements fix D(phi_x, 1)") {
    auto g = make("A5", 2, "full", "Sym(2)");
    auto [x, y] = g.t().distinct_order_pair();
    auto w = point_from(g, {x, 0});
    auto stab = stabilizer_by_scan(g, {w});
    CHECK(stab.size() > 1);
    CHECK(stab.size() < 240);
    for (TElem t : g.t().centralizer(x)) {
        DiagPerm e{g.aut().inn(t), Perm::identity(2)};
        CHECK(std::find(stab.begin(), stab.end(), e) != stab.end());
    }
    check_stabilizer_shape(g, {w}, stab);
}

TEST_CASE("lemma scan equals the action scan") {
    std::mt19937_64 rng(11);
    for (const char* top : {"trivial", "Sym(2)"}) {
        auto g = make("A5", 2, "full", top);
        for (int i = 0; i < 20; ++i) {
            std::vector<OmegaPoint> pts{g.random_point(rng), g.random_point(rng)};
            CHECK(stabilizer_by_scan(g, pts) == stabilizer_by_action(g, pts));
        }
    }
    for (const char* top : {"Alt(3)", "Sym(3)"}) {
        auto g = make("A5", 3, "full", top);
        for (int i = 0; i < 10; ++i) {
            std::vector<OmegaPoint> pts{g.random_point(rng)};
            auto s = stabilizer_by_scan(g, pts);
            CHECK(s == stabilizer_by_action(g, pts));
            check_stabilizer_shape(g, pts, s);
        }
    }
}

TEST_CASE("solver agrees with enumeration") {
    std::mt19937_64 rng(5);
    auto explicit_g = make("A5", 5, "full", "Sym(5)");
    auto symbolic_g = build_group(testsupport::group("A5"), 5, {0, 1}, TopGroup::sym(5));
    REQUIRE(symbolic_g.top().symbolic());
    for (int i = 0; i < 25; ++i) {
        std::vector<OmegaPoint> pts{explicit_g.random_point(rng), explicit_g.random_point(rng)};
        auto a = stabilizer_by_scan(explicit_g, pts);
        auto b = stabilizer_by_solver(symbolic_g, pts);
        CHECK(sorted(a) == b);
        CHECK(stabilizer_order_by_solver(symbolic_g, pts) == a.size());
    }
    // a point with many repeated columns exercises the branching
    auto w = point_from(explicit_g, {0, 0, 1, 1, 2});
    auto many = sorted(stabilizer_by_scan(explicit_g, {w}));
    CHECK(many.size() > 1);
    CHECK(many == stabilizer_by_solver(symbolic_g, {w}));
    auto alt_e = make("A5", 5, "inner", "Alt(5)");
    auto alt_s = build_group(testsupport::group("A5"), 5, {0}, TopGroup::alt(5));
    for (int i = 0; i < 10; ++i) {
        std::vector<OmegaPoint> pts{alt_e.random_point(rng)};
        CHECK(sorted(stabilizer_by_scan(alt_e, pts)) == stabilizer_by_solver(alt_s, pts));
    }
}

TEST_CASE("solver rejects explicit tops and respects the node budget") {
    auto g = make("A5", 5, "full", "C5");
    CHECK_THROWS_AS(stabilizer_order_by_solver(g, {}), UnsupportedError);
    auto big = make("A5", 12, "full", "Sym(12)");
    CHECK_THROWS_AS(stabilizer_by_solver(big, {}, 1000), BudgetExceeded);
}

TEST_CASE("is_base examples at k = 2") {
    auto inn = make("A5", 2, "inner", "Sym(2)");
    for (std::uint64_t c = 1; c < 60; ++c) CHECK_FALSE(is_base(inn, {inn.decode(c)}).is_base);
    auto w = make("A5", 2, "full", "Sym(2)");
    auto [x, y] = w.t().distinct_order_pair();
    auto cert = is_base(w, {point_from(w, {x, 0}), point_from(w, {y, 0}), point_from(w, {w.t().mul(x, y), 0})});
    CHECK(cert.is_base);
    CHECK(cert.stabilizer_order == 1);
}

TEST_CASE("minimal base sizes for k = 2") {
    CHECK(minimal_base_size(make("A5", 2, "full", "Sym(2)")).size == 4);
    CHECK(minimal_base_size(make("A5", 2, "inner", "Sym(2)")).size == 3);
    CHECK(minimal_base_size(make("A5", 2, "full", "trivial")).size == 3);
    auto r = minimal_base_size(make("A5", 3, "inner", "Alt(3)"), kDefaultEnumerationBudget, 2);
    CHECK(r.size == 2);
    CHECK(is_base(make("A5", 3, "inner", "Alt(3)"), r.base).is_base);
}

TEST_CASE("minimal_base_size guards its budget") {
    CHECK_THROWS_AS(minimal_base_size(make("A5", 3, "full", "Sym(3)"), 100), BudgetExceeded);
}

TEST_CASE("small-k constructions") {
    for (const char* t : {"A5", "L2(7)"}) {
        for (const auto& [k, top] : std::vector<std::pair<int, std::string>>{
                 {2, "trivial"}, {2, "Sym(2)"}, {3, "Alt(3)"}, {3, "Sym(3)"}, {4, "Alt(4)"}, {4, "Sym(4)"}}) {
            auto g = make(t, k, "full", top);
            auto pts = construct_small_k_base(g);
            INFO(t << " k=" << k << " " << top);
            CHECK(is_base(g, pts).is_base);
            CHECK(pts.size() == (k == 2 ? (top == "trivial" ? 3u : 4u) : (top[0] == 'A' ? 2u : 3u)));
        }
    }
    CHECK_THROWS_AS(construct_small_k_base(make("A5", 5, "full", "Sym(5)")), UnsupportedError);
}

TEST_CASE("digit construction") {
    CHECK_THROWS_AS(construct_digit_base(make("A5", 4, "full", "Sym(4)")), PreconditionError);
    auto e = make("A5", 5, "full", "Sym(5)");
    auto pts = construct_digit_base(e);
    CHECK(pts.size() == 3);
    CHECK(is_base(e, pts, StabMethod::Enumeration).is_base);
    for (std::size_t k : {5u, 10u, 60u, 61u, 70u, 200u}) {
        auto g = build_group(testsupport::group("A5"), k, {0, 1}, TopGroup::sym(k));
        auto b = construct_digit_base(g);
        std::size_t r = k > 60 ? ceil_log(BigInt(k - 59), BigInt(60)) : 1;
        CHECK(b.size() == r + 2);
        auto cert = is_base(g, b);
        CHECK(cert.method == StabMethod::ConstraintSolver);
        CHECK(cert.is_base);
    }
    auto big = build_group(testsupport::group("A5"), 3000, {0, 1}, TopGroup::sym(3000));
    CHECK(construct_digit_base(big).size() == 4);
}

TEST_CASE("distinguishing construction") {
    auto g = make("A5", 37, "full", "C37");
    auto pts = construct_distinguishing_base(g);
    REQUIRE(pts);
    CHECK(pts->size() == 2);
    CHECK(is_base(g, *pts).is_base);
    // column counts of identity entries separate Gamma from Delta
    auto delta = *distinguishing_subset(g.top().table()).subset;
    auto m = order_matrix(g.t(), (*pts)[1]);
    auto ones = [&](std::size_t j) {
        auto c = m.column(j);
        return std::count(c.begin(), c.end(), 1u);
    };
    for (Point i = 0; i < 37; ++i) {
        if (std::binary_search(delta.begin(), delta.end(), i)) continue;
        for (Point j : delta) CHECK(ones(i) != ones(j));
    }
    CHECK_FALSE(construct_distinguishing_base(make("A5", 5, "full", "Sym(5)")));
}

TEST_CASE("generator construction") {
    for (const char* top : {"C5", "D5"}) {
        auto g = make("A5", 5, "full", top);
        auto pts = construct_generator_base(g);
        REQUIRE(pts);
        CHECK(pts->size() == 2);
        auto [x, y] = g.t().distinct_order_pair();
        CHECK((*pts)[1] == point_from(g, {x, y, 0, 0, 0}));
        CHECK(is_base(g, *pts).is_base);
    }
    auto [x, y] = testsupport::group("A5").group->distinct_order_pair();
    CHECK(testsupport::group("A5").group->other_order_elements(x, y).size() == 15);
    CHECK_FALSE(construct_generator_base(make("A5", 5, "full", "Sym(5)")));
}

TEST_CASE("non-base witnesses") {
    std::mt19937_64 rng(3);
    for (std::size_t k : {60u, 61u}) {
        auto g = build_group(testsupport::group("A5"), k, {0, 1}, TopGroup::sym(k));
        for (int i = 0; i < 5; ++i) {
            auto w = g.random_point(rng);
            auto x = nonbase_witness(g, {w});
            REQUIRE(x);
            CHECK(fixes_all(g, {g.diagonal_point(), w}, x->alpha, x->perm));
            CHECK(act_diag(g, w, x->alpha, x->perm) == w);
        }
    }
    // a point with every column distinct at k = |T| under Alt(k) forces the alpha branch
    auto a = build_group(testsupport::group("A5"), 60, {0}, TopGroup::alt(60));
    std::vector<TElem> s(60);
    std::iota(s.begin(), s.end(), TElem{0});
    auto w = point_from(a, s);
    auto x = nonbase_witness(a, {w});
    REQUIRE(x);
    CHECK(x->alpha != 0);
    CHECK(x->perm.is_even());
    auto small = build_group(testsupport::group("A5"), 10, {0, 1}, TopGroup::sym(10));
    CHECK_THROWS_AS(nonbase_witness(small, {small.random_point(rng)}), PreconditionError);
    CHECK_THROWS_AS(nonbase_witness(make("A5", 37, "full", "C37"), {}), PreconditionError);
}

TEST_CASE("pyber arithmetic") {
    CHECK(ceil_log(BigInt(14400), BigInt(60)) == 3);
    CHECK(ceil_log(BigInt(3600), BigInt(60)) == 2);
    CHECK(ceil_log(BigInt(3601), BigInt(60)) == 3);
    CHECK(ceil_log(BigInt(1), BigInt(60)) == 0);
    auto r = pyber_check(make("A5", 2, "full", "Sym(2)"), 4, true);
    CHECK(r.log_ceiling == 3);
    CHECK(r.upper == 5);
    CHECK(r.upper_holds);
    CHECK(r.lower_holds);
    auto s = pyber_check(make("A5", 2, "inner", "Sym(2)"), 3, true);
    CHECK(s.upper == 5);
    CHECK(s.upper_holds);
}

TEST_CASE("alternating-top formula bounds") {
    auto sym = [](std::size_t k) { return build_group(testsupport::group("A5"), k, {0, 1}, TopGroup::sym(k)); };
    auto b61 = alt_formula_bounds(sym(61));
    CHECK(b61.lo == 3);
    CHECK(b61.hi == 3);
    auto b60 = alt_formula_bounds(sym(60));
    CHECK(b60.lo == 3);
    CHECK(b60.hi == 3);
    auto b3 = alt_formula_bounds(make("A5", 3, "full", "Sym(3)"));
    CHECK(b3.lo == 2);
    CHECK(b3.hi == 3);
    auto b3600 = alt_formula_bounds(sym(3600));
    CHECK(b3600.lo == 4);
    auto b200 = alt_formula_bounds(sym(200));
    CHECK(b200.lo == 3);
    CHECK(b200.hi == 4);
    CHECK_THROWS_AS(alt_formula_bounds(make("A5", 37, "full", "C37")), PreconditionError);
}

TEST_CASE("s-cycles lie in G for Alt-containing tops") {
    auto g = build_group(testsupport::group("A5"), 10, {0, 1}, TopGroup::alt(10));
    auto r = alt_in_g_check(g, 50);
    REQUIRE(r.s);
    CHECK(*r.s == 3);
    CHECK(r.s_cycles_in_g);
    CHECK(r.cycles_checked == 50);
    auto small = build_group(testsupport::group("A5"), 2, {0, 1}, TopGroup::sym(2));
    CHECK_FALSE(alt_in_g_check(small).s);
}
