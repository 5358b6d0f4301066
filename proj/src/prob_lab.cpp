#include "diagbase/prob_lab.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "diagbase/base_engine.hpp"
#include "diagbase/errors.hpp"
#include "diagbase/parallel.hpp"

namespace diagbase {

std::string to_string(const Rational& q) {
    auto n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
    return d == 1 ? n.str() : n.str() + "/" + d.str();
}

std::string to_string(RTag t) {
    switch (t) {
        case RTag::R1: return "R1";
        case RTag::R2: return "R2";
        default: return "R3";
    }
}

PermStats perm_stats(const Perm& p) {
    PermStats s;
    for (std::size_t len : p.cycle_type()) (len == 1 ? s.fixed : s.cycles) += 1;
    return s;
}

namespace {

std::uint64_t lcm64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

// Prime-order elements with their permutation images cached for fast fixing tests.
struct PrimeList {
    std::vector<PrimeDiagElem> elems;
    std::vector<std::vector<Point>> images;
};

PrimeList prime_list(const DiagTypeGroup& g) {
    const GroupTable& p = g.top().table();
    PrimeList out;
    std::vector<std::uint64_t> perm_order(p.order());
    std::vector<PermStats> stats(p.order());
    for (std::size_t i = 0; i < p.order(); ++i) {
        perm_order[i] = element_order(p.element(i));
        stats[i] = perm_stats(p.element(i));
    }
    for (const DiagElem& e : stab_of_D(g)) {
        std::uint64_t ord = lcm64(g.aut().aut_order(e.alpha), perm_order[e.perm]);
        if (!is_prime(ord)) continue;
        const Perm& pi = p.element(e.perm);
        RTag tag = pi.is_identity() ? RTag::R2 : (stats[e.perm].fixed == 0 ? RTag::R1 : RTag::R3);
        out.elems.push_back({e, static_cast<std::uint32_t>(ord), tag, stats[e.perm]});
        out.images.emplace_back(pi.images().begin(), pi.images().end());
    }
    return out;
}

bool fixes_fast(const DiagTypeGroup& g, const std::vector<Point>& pi, AutIdx alpha, const OmegaPoint& w) {
    const TElem head = w.t[pi[0]];
    for (std::size_t i = 0; i < pi.size(); ++i)
        if (w.t[pi[i]] != g.t().mul(head, g.aut().apply(alpha, w.t[i]))) return false;
    return true;
}

std::uint64_t enumerable_degree(const DiagTypeGroup& g, std::uint64_t budget) {
    auto n = g.small_degree();
    if (!n || *n > budget)
        throw BudgetExceeded("|Omega| = " + g.degree().str() + " exceeds the enumeration budget of " +
                             std::to_string(budget));
    return *n;
}

}  // namespace

std::vector<PrimeDiagElem> prime_order_stabilizer(const DiagTypeGroup& g) { return prime_list(g).elems; }

std::vector<PrimeDiagElem> fixing_prime_elements(const DiagTypeGroup& g, const OmegaPoint& w) {
    auto pl = prime_list(g);
    std::vector<PrimeDiagElem> out;
    for (std::size_t i = 0; i < pl.elems.size(); ++i)
        if (fixes_fast(g, pl.images[i], pl.elems[i].elem.alpha, w)) out.push_back(pl.elems[i]);
    return out;
}

Q2Bound q2_bound_exact(const DiagTypeGroup& g, std::uint64_t budget, std::size_t workers) {
    const std::uint64_t n = enumerable_degree(g, budget);
    auto pl = prime_list(g);
    if (workers == 0) workers = default_workers();
    std::vector<std::array<std::uint64_t, 3>> counts(std::max<std::size_t>(workers, 1), {0, 0, 0});
    parallel_chunks(n, workers, [&](std::size_t b, std::size_t e, std::size_t w) {
        for (std::uint64_t code = b; code < e; ++code) {
            OmegaPoint pt = g.decode(code);
            for (std::size_t i = 0; i < pl.elems.size(); ++i)
                if (fixes_fast(g, pl.images[i], pl.elems[i].elem.alpha, pt))
                    ++counts[w][static_cast<std::size_t>(pl.elems[i].tag)];
        }
    });
    std::array<std::uint64_t, 3> sum{0, 0, 0};
    for (const auto& c : counts)
        for (std::size_t t = 0; t < 3; ++t) sum[t] += c[t];
    Q2Bound q;
    q.r1 = Rational(sum[0], n);
    q.r2 = Rational(sum[1], n);
    q.r3 = Rational(sum[2], n);
    q.total = q.r1 + q.r2 + q.r3;
    return q;
}

Rational exact_nonbase_pair_proportion(const DiagTypeGroup& g, std::uint64_t budget, std::size_t workers) {
    const std::uint64_t n = enumerable_degree(g, budget);
    auto pl = prime_list(g);
    if (workers == 0) workers = default_workers();
    std::vector<std::uint64_t> counts(std::max<std::size_t>(workers, 1), 0);
    parallel_chunks(n, workers, [&](std::size_t b, std::size_t e, std::size_t w) {
        for (std::uint64_t code = b; code < e; ++code) {
            OmegaPoint pt = g.decode(code);
            for (std::size_t i = 0; i < pl.elems.size(); ++i)
                if (fixes_fast(g, pl.images[i], pl.elems[i].elem.alpha, pt)) {
                    ++counts[w];
                    break;
                }
        }
    });
    return Rational(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}), n);
}

McEstimate monte_carlo_nonbase(const DiagTypeGroup& g, std::size_t samples, std::uint64_t seed,
                               std::size_t workers) {
    constexpr std::size_t kBlock = 256;
    const std::size_t blocks = (samples + kBlock - 1) / kBlock;
    const bool symbolic = g.top().symbolic();
    PrimeList pl;
    if (!symbolic) pl = prime_list(g);
    std::vector<std::uint64_t> hits(blocks, 0);
    parallel_chunks(blocks, workers, [&](std::size_t b, std::size_t e, std::size_t) {
        for (std::size_t blk = b; blk < e; ++blk) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(blk)};
            std::mt19937_64 rng(seq);
            const std::size_t count = std::min(kBlock, samples - blk * kBlock);
            for (std::size_t s = 0; s < count; ++s) {
                OmegaPoint pt = g.random_point(rng);
                bool nonbase = false;
                if (symbolic) {
                    nonbase = stabilizer_order_by_solver(g, {pt}) > 1;
                } else {
                    for (std::size_t i = 0; i < pl.elems.size() && !nonbase; ++i)
                        nonbase = fixes_fast(g, pl.images[i], pl.elems[i].elem.alpha, pt);
                }
                hits[blk] += nonbase;
            }
        }
    });
    return {samples, static_cast<std::size_t>(std::accumulate(hits.begin(), hits.end(), std::uint64_t{0})), seed};
}

namespace {

struct AutCentralizers {
    std::uint64_t in_a_o = 0, in_inn = 0, out_labels = 0;
};

AutCentralizers aut_centralizers(const DiagTypeGroup& g, AutIdx alpha) {
    const AutTable& a = g.aut();
    AutCentralizers c;
    for (AutIdx b : g.auts_in_o()) {
        if (a.compose(alpha, b) != a.compose(b, alpha)) continue;
        ++c.in_a_o;
        if (a.coset(b) == 0) ++c.in_inn;
    }
    const OutLabel ca = a.coset(alpha);
    for (OutLabel o : g.out_part())
        if (a.out_mul(o, ca) == a.out_mul(ca, o)) ++c.out_labels;
    return c;
}

void require_member(const DiagTypeGroup& g, AutIdx alpha, const Perm& pi) {
    if (!g.contains(g.diag(alpha, pi))) throw PreconditionError("element is not in G");
}

}  // namespace

BigInt centralizer_order_formula(const DiagTypeGroup& g, AutIdx alpha, const Perm& pi) {
    require_member(g, alpha, pi);
    const std::uint64_t p = lcm64(g.aut().aut_order(alpha), element_order(pi));
    if (!is_prime(p)) throw PreconditionError("element order " + std::to_string(p) + " is not prime");
    const BigInt cp = centralizer(g.top().table(), pi).order();
    const PermStats st = perm_stats(pi);
    const auto c = aut_centralizers(g, alpha);
    const std::uint64_t nt = g.t().order();
    BigInt r = cp;
    if (st.fixed == 0) {
        r *= c.out_labels;
        r *= boost::multiprecision::pow(BigInt(nt), static_cast<unsigned>(g.k() / p));
    } else {
        r *= c.in_a_o;
        r *= boost::multiprecision::pow(BigInt(c.in_inn), static_cast<unsigned>(st.fixed - 1));
        r *= boost::multiprecision::pow(BigInt(nt), static_cast<unsigned>(st.cycles));
    }
    return r;
}

BigInt class_intersection_formula(const DiagTypeGroup& g, AutIdx alpha, const Perm& pi) {
    require_member(g, alpha, pi);
    if (perm_stats(pi).fixed == 0) throw PreconditionError("the class formula needs pi with a fixed point");
    const GroupTable& p = g.top().table();
    const auto c = aut_centralizers(g, alpha);
    BigInt aut_class = g.auts_in_o().size() / c.in_a_o;
    BigInt perm_class = p.order() / centralizer(p, pi).order();
    return aut_class * perm_class;
}

std::vector<BruteClassData> brute_force_class_data(const DiagTypeGroup& g, const std::vector<DiagElem>& xs,
                                                   std::uint64_t budget, std::size_t workers) {
    if (g.order() > budget)
        throw BudgetExceeded("|G| = " + g.order().str() + " exceeds the enumeration budget of " +
                             std::to_string(budget));
    const AutTable& a = g.aut();
    const GroupTable& p = g.top().table();
    const std::size_t na = a.order(), nt = g.t().order(), np = p.order(), k = g.k();
    std::vector<AutIdx> comp(na * na);
    for (AutIdx x = 0; x < na; ++x)
        for (AutIdx y = 0; y < na; ++y) comp[x * na + y] = a.compose(x, y);

    std::vector<BruteClassData> out(xs.size());
    parallel_chunks(xs.size(), workers, [&](std::size_t b, std::size_t e, std::size_t) {
        std::vector<AutIdx> left(na);
        std::vector<char> seen(na * np);
        std::vector<AutIdx> tuple(k);
        std::vector<TElem> digits(k);
        for (std::size_t xi = b; xi < e; ++xi) {
            const DiagElem x = xs[xi];
            const Perm& pi = p.element(x.perm);
            // y^-1 x y is diagonal iff b_j^-1 alpha b_{j pi} does not depend on j
            for (AutIdx y = 0; y < na; ++y) left[y] = comp[a.inverse(y) * na + x.alpha];
            std::fill(seen.begin(), seen.end(), 0);
            std::uint64_t cent = 0;
            for (std::size_t s = 0; s < np; ++s) {
                const std::size_t conj = p.multiply(p.multiply(p.inverse(s), x.perm), s);
                for (OutLabel c : g.out_part()) {
                    std::fill(digits.begin(), digits.end(), 0);
                    for (;;) {
                        for (std::size_t j = 0; j < k; ++j) tuple[j] = a.make(c, digits[j]);
                        const AutIdx v = comp[left[tuple[0]] * na + tuple[pi(0)]];
                        bool diag = true;
                        for (std::size_t j = 1; j < k && diag; ++j)
                            diag = comp[left[tuple[j]] * na + tuple[pi(static_cast<Point>(j))]] == v;
                        if (diag) {
                            seen[v * np + conj] = 1;
                            if (v == x.alpha && conj == x.perm) ++cent;
                        }
                        std::size_t j = 0;
                        while (j < k && ++digits[j] == nt) digits[j++] = 0;
                        if (j == k) break;
                    }
                }
            }
            BruteClassData& d = out[xi];
            d.elem = x;
            d.centralizer = cent;
            for (AutIdx v = 0; v < na; ++v)
                for (std::uint32_t q = 0; q < np; ++q)
                    if (seen[v * np + q]) d.class_in_gd.push_back({v, q});
        }
    });
    return out;
}

Rational q2_bound_by_classes(const DiagTypeGroup& g, const std::vector<BruteClassData>& data) {
    Rational sum = 0;
    for (const auto& d : data) sum += Rational(BigInt(d.class_in_gd.size()) * d.centralizer);
    return sum / Rational(g.order());
}

ClassCountCheck class_count_inequality_check(const GroupTable& y, const GroupTable& x) {
    for (const Perm& e : y.elements())
        if (!x.contains(e)) throw ValidationError("not-a-subgroup: " + e.to_string() + " is outside the larger group");
    if (x.order() % y.order() != 0) throw ValidationError("not-a-subgroup: order does not divide");
    ClassCountCheck r;
    r.fp_sub = prime_order_class_count(y);
    r.fp_group = prime_order_class_count(x);
    r.index = x.order() / y.order();
    r.holds = r.fp_sub <= r.index * r.fp_group;
    return r;
}

}  // namespace diagbase
