#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diagbase/diag_group.hpp"

namespace diagbase {

inline constexpr std::size_t kSolverNodeBudget = 1'000'000;

/// Entry (i, j) is the order of t_i^-1 t_j.
struct OrderMatrix {
    std::size_t k = 0;
    std::vector<std::uint32_t> entries;

    std::uint32_t at(std::size_t i, std::size_t j) const { return entries[i * k + j]; }
    std::vector<std::uint32_t> column(std::size_t j) const;
    bool symmetric_with_unit_diagonal() const;
};

OrderMatrix order_matrix(const SimpleGroup& t, const OmegaPoint& w);

enum class StabMethod { Enumeration, ConstraintSolver };
std::string to_string(StabMethod m);

/// Whether (alpha, ..., alpha)pi fixes the point: t_{i pi} = t_{0 pi} (t_i alpha) for all i.
bool fixes_point(const DiagTypeGroup& g, const OmegaPoint& w, AutIdx alpha, const Perm& pi);
bool fixes_all(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts, AutIdx alpha, const Perm& pi);

/// Scan of G_D with the lemma test. Needs a top with a table.
std::vector<DiagPerm> stabilizer_by_scan(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts);
/// Scan of G_D applying the coset action to every point (slow oracle).
std::vector<DiagPerm> stabilizer_by_action(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts);

/// Column-matching solver for Alt(k) / Sym(k) tops; never enumerates P.
BigInt stabilizer_order_by_solver(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts);
/// All stabilizer elements via the solver. Throws BudgetExceeded past `node_budget` search nodes.
std::vector<DiagPerm> stabilizer_by_solver(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts,
                                           std::size_t node_budget = kSolverNodeBudget);
/// First non-identity stabilizer element found by the solver, if any.
std::optional<DiagPerm> solver_witness(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts,
                                       std::size_t node_budget = kSolverNodeBudget);

/// Solver for symbolic Alt/Sym tops, table scan otherwise.
StabMethod default_method(const DiagTypeGroup& g);
std::vector<DiagPerm> pointwise_stabilizer(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts);

struct BaseCertificate {
    std::vector<OmegaPoint> points;  // D first
    bool is_base = false;
    std::optional<DiagPerm> witness;
    StabMethod method = StabMethod::Enumeration;
    BigInt stabilizer_order;
};

/// D is prepended when absent.
BaseCertificate is_base(const DiagTypeGroup& g, std::vector<OmegaPoint> pts);
BaseCertificate is_base(const DiagTypeGroup& g, std::vector<OmegaPoint> pts, StabMethod method);

/// The t-tuple D(phi_{s_1}, ..., phi_{s_k}) in canonical form.
OmegaPoint point_from(const DiagTypeGroup& g, const std::vector<TElem>& s);

// Constructions. Each returns the point set with D first, or nothing when the
// construction does not apply.
std::optional<std::vector<OmegaPoint>> construct_distinguishing_base(const DiagTypeGroup& g);
std::optional<std::vector<OmegaPoint>> construct_generator_base(const DiagTypeGroup& g);
std::vector<OmegaPoint> construct_digit_base(const DiagTypeGroup& g);
std::vector<OmegaPoint> construct_small_k_base(const DiagTypeGroup& g);

struct MinimalBaseResult {
    std::size_t size = 0;  // counts D
    std::vector<OmegaPoint> base;
    std::size_t nodes = 0;
};

/// Exact b(G) by iterative deepening over point sets containing D. Needs a top
/// table and |Omega| <= budget.
MinimalBaseResult minimal_base_size(const DiagTypeGroup& g, std::uint64_t budget = kDefaultEnumerationBudget,
                                    std::size_t workers = 1);

/// Non-identity element of G fixing D and every given point, built by the
/// column-matrix case analysis. Throws PreconditionError when the top does not
/// contain Alt(k) or k violates the hypotheses for l = |pts|.
std::optional<DiagPerm> nonbase_witness(const DiagTypeGroup& g, std::vector<OmegaPoint> pts);

struct PyberReport {
    std::size_t b = 0;
    bool exact = false;
    std::size_t log_ceiling = 0;  // least m with n^m >= |G|
    std::size_t upper = 0;        // log_ceiling + 2
    bool upper_holds = false;
    bool lower_holds = true;  // only meaningful when exact
};

/// Least m with base^m >= value (value >= 1, base >= 2).
std::size_t ceil_log(const BigInt& value, const BigInt& base);
PyberReport pyber_check(const DiagTypeGroup& g, std::size_t known_b, bool exact);

struct AltBounds {
    std::size_t lo = 0, hi = 0;
    std::vector<std::string> reasons;
};
AltBounds alt_formula_bounds(const DiagTypeGroup& g);

struct AltInGCheck {
    std::optional<std::size_t> s;  // odd s coprime to all Out orders, or none within k
    bool s_cycles_in_g = false;
    std::size_t cycles_checked = 0;
};
/// For Alt-containing tops: checks that s-cycles with trivial automorphism part lie in G.
AltInGCheck alt_in_g_check(const DiagTypeGroup& g, std::size_t samples = 200, std::uint64_t seed = 0x5EED);

}  // namespace diagbase
