#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "diagbase/diag_group.hpp"

namespace diagbase {

using Rational = boost::multiprecision::cpp_rational;

/// "n/d", or "n" when the denominator is 1.
std::string to_string(const Rational& q);

/// R1: pi fixed-point-free; R2: pi = 1; R3: pi non-trivial with a fixed point.
enum class RTag { R1, R2, R3 };
std::string to_string(RTag t);

struct PermStats {
    std::size_t fixed = 0;   // f_pi
    std::size_t cycles = 0;  // c_pi, non-trivial cycles
    std::size_t all_cycles() const { return fixed + cycles; }  // r_pi
};
PermStats perm_stats(const Perm& p);

struct PrimeDiagElem {
    DiagElem elem;
    std::uint32_t order = 0;
    RTag tag = RTag::R2;
    PermStats stats;
};

/// Prime-order elements of G_D, alpha-major. Needs a top table.
std::vector<PrimeDiagElem> prime_order_stabilizer(const DiagTypeGroup& g);
/// Those fixing the point, by the lemma test.
std::vector<PrimeDiagElem> fixing_prime_elements(const DiagTypeGroup& g, const OmegaPoint& w);

struct Q2Bound {
    Rational total;
    Rational r1, r2, r3;
};

/// Sum over prime-order x of (fix(x)/n)^2, evaluated per point as sum_w N(w)/n. Needs n <= budget.
Q2Bound q2_bound_exact(const DiagTypeGroup& g, std::uint64_t budget = 50'000'000, std::size_t workers = 1);

/// (1/n) #{w : the pair {D, w} is not a base}. Needs n <= budget.
Rational exact_nonbase_pair_proportion(const DiagTypeGroup& g, std::uint64_t budget = 50'000'000,
                                       std::size_t workers = 1);

struct McEstimate {
    std::size_t samples = 0;
    std::size_t nonbase = 0;
    std::uint64_t seed = 0;
    double fraction() const { return samples ? static_cast<double>(nonbase) / static_cast<double>(samples) : 0.0; }
};

/// Uniform random points; each block of samples draws from its own stream seeded by (seed, block),
/// so the result does not depend on the worker count.
McEstimate monte_carlo_nonbase(const DiagTypeGroup& g, std::size_t samples, std::uint64_t seed = 0x5EED,
                               std::size_t workers = 1);

// Class data for G = A_O(k, T) : P, where A_O holds the automorphism tuples with
// common Out-label in O. With O = Out(T) this is A(k, T) : P.

/// |C_G((alpha..alpha)pi)| for an element of prime order.
BigInt centralizer_order_formula(const DiagTypeGroup& g, AutIdx alpha, const Perm& pi);
/// |x^G cap G_D| for pi with a fixed point.
BigInt class_intersection_formula(const DiagTypeGroup& g, AutIdx alpha, const Perm& pi);

struct BruteClassData {
    DiagElem elem;
    std::uint64_t centralizer = 0;
    std::vector<DiagElem> class_in_gd;  // sorted
};

/// Enumerates every element of G for each given x in G_D. Needs |G| <= budget.
std::vector<BruteClassData> brute_force_class_data(const DiagTypeGroup& g, const std::vector<DiagElem>& xs,
                                                   std::uint64_t budget = 5'000'000, std::size_t workers = 1);

/// Sum over x in G_D of prime order of |x^G cap G_D| |C_G(x)| / |G| (the same Q bound, by classes).
Rational q2_bound_by_classes(const DiagTypeGroup& g, const std::vector<BruteClassData>& data);

struct ClassCountCheck {
    std::size_t fp_sub = 0, fp_group = 0, index = 0;
    bool holds = false;
};
/// f_p(Y) <= [X:Y] f_p(X). Throws ValidationError when Y is not inside X.
ClassCountCheck class_count_inequality_check(const GroupTable& y, const GroupTable& x);

}  // namespace diagbase
