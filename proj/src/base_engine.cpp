#include "diagbase/base_engine.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "diagbase/errors.hpp"
#include "diagbase/parallel.hpp"

namespace diagbase {

std::vector<std::uint32_t> OrderMatrix::column(std::size_t j) const {
    std::vector<std::uint32_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = at(i, j);
    return c;
}

bool OrderMatrix::symmetric_with_unit_diagonal() const {
    for (std::size_t i = 0; i < k; ++i) {
        if (at(i, i) != 1) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (at(i, j) != at(j, i)) return false;
    }
    return true;
}

OrderMatrix order_matrix(const SimpleGroup& t, const OmegaPoint& w) {
    OrderMatrix m;
    m.k = w.t.size();
    m.entries.resize(m.k * m.k);
    for (std::size_t i = 0; i < m.k; ++i)
        for (std::size_t j = 0; j < m.k; ++j) m.entries[i * m.k + j] = t.elem_order(t.mul(t.inv(w.t[i]), w.t[j]));
    return m;
}

std::string to_string(StabMethod m) { return m == StabMethod::Enumeration ? "enumeration" : "constraint-solver"; }

bool fixes_point(const DiagTypeGroup& g, const OmegaPoint& w, AutIdx alpha, const Perm& pi) {
    const SimpleGroup& t = g.t();
    const TElem head = w.t[pi(0)];
    for (std::size_t i = 0; i < g.k(); ++i)
        if (w.t[pi(static_cast<Point>(i))] != t.mul(head, g.aut().apply(alpha, w.t[i]))) return false;
    return true;
}

bool fixes_all(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts, AutIdx alpha, const Perm& pi) {
    for (const auto& w : pts)
        if (!fixes_point(g, w, alpha, pi)) return false;
    return true;
}

namespace {

std::vector<OmegaPoint> drop_diagonal(const std::vector<OmegaPoint>& pts) {
    std::vector<OmegaPoint> out;
    for (const auto& w : pts)
        if (!w.is_diagonal() && std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    return out;
}

bool is_identity_elem(AutIdx a, const Perm& p) { return a == 0 && p.is_identity(); }

}  // namespace

std::vector<DiagPerm> stabilizer_by_scan(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts) {
    const GroupTable& p = g.top().table();
    auto rest = drop_diagonal(pts);
    std::vector<DiagPerm> out;
    for (AutIdx a : g.auts_in_o())
        for (const Perm& pi : p.elements())
            if (fixes_all(g, rest, a, pi)) out.push_back({a, pi});
    return out;
}

std::vector<DiagPerm> stabilizer_by_action(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts) {
    const GroupTable& p = g.top().table();
    std::vector<DiagPerm> out;
    for (AutIdx a : g.auts_in_o())
        for (const Perm& pi : p.elements())
            if (std::all_of(pts.begin(), pts.end(), [&](const OmegaPoint& w) { return act_diag(g, w, a, pi) == w; }))
                out.push_back({a, pi});
    return out;
}

namespace {

// Coordinates grouped by their column (t^1_i, ..., t^l_i) across the points.
struct Columns {
    std::vector<OmegaPoint> pts;
    std::map<std::vector<TElem>, std::uint32_t> id;
    std::vector<std::vector<TElem>> values;
    std::vector<std::uint32_t> bucket_of;
    std::vector<std::vector<Point>> members;
};

Columns build_columns(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts) {
    Columns c;
    c.pts = drop_diagonal(pts);
    c.bucket_of.resize(g.k());
    std::vector<TElem> col(c.pts.size());
    for (std::size_t i = 0; i < g.k(); ++i) {
        for (std::size_t p = 0; p < c.pts.size(); ++p) col[p] = c.pts[p].t[i];
        auto [it, fresh] = c.id.emplace(col, static_cast<std::uint32_t>(c.values.size()));
        if (fresh) {
            c.values.push_back(col);
            c.members.emplace_back();
        }
        c.bucket_of[i] = it->second;
        c.members[it->second].push_back(static_cast<Point>(i));
    }
    return c;
}

// Required bucket of i*pi for every coordinate i, given alpha and 0*pi in bucket `head`.
std::optional<std::vector<std::uint32_t>> solve_targets(const DiagTypeGroup& g, const Columns& c, AutIdx alpha,
                                                        std::uint32_t head) {
    const SimpleGroup& t = g.t();
    const std::size_t k = g.k();
    std::vector<std::uint32_t> tgt(k);
    std::vector<std::size_t> demand(c.values.size(), 0);
    std::vector<TElem> v(c.pts.size());
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t p = 0; p < c.pts.size(); ++p)
            v[p] = t.mul(c.values[head][p], g.aut().apply(alpha, c.pts[p].t[i]));
        auto it = c.id.find(v);
        if (it == c.id.end()) return std::nullopt;
        if (++demand[it->second] > c.members[it->second].size()) return std::nullopt;
        tgt[i] = it->second;
    }
    return tgt;
}

bool need_even(const DiagTypeGroup& g) {
    if (g.top().kind() == TopGroup::Kind::Explicit)
        throw UnsupportedError("the constraint solver handles only Alt(k) and Sym(k) tops");
    return g.top().kind() == TopGroup::Kind::Alt;
}

BigInt count_for(const Columns& c, const std::vector<std::uint32_t>& tgt, bool even) {
    BigInt n = 1;
    bool any_multi = false;
    for (const auto& m : c.members) {
        for (std::size_t i = 2; i <= m.size(); ++i) n *= i;
        any_multi = any_multi || m.size() >= 2;
    }
    if (!even) return n;
    if (any_multi) return n / 2;
    std::vector<Point> img(tgt.size());
    for (std::size_t i = 0; i < tgt.size(); ++i) img[i] = c.members[tgt[i]][0];
    return Perm(std::move(img)).is_even() ? 1 : 0;
}

// Depth-first over all permutations matching the target buckets; stops when fn returns true.
bool enumerate_matching(const Columns& c, const std::vector<std::uint32_t>& tgt, bool even, std::size_t& nodes,
                        std::size_t budget, const std::function<bool(const Perm&)>& fn) {
    const std::size_t k = tgt.size();
    std::vector<Point> img(k);
    std::vector<char> used(k, 0);
    std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
        if (i == k) {
            Perm p(img);
            if (even && !p.is_even()) return false;
            return fn(p);
        }
        for (Point j : c.members[tgt[i]]) {
            if (used[j]) continue;
            if (++nodes > budget)
                throw BudgetExceeded("constraint solver exceeded its node budget of " + std::to_string(budget));
            used[j] = 1;
            img[i] = j;
            if (assign(i + 1)) return true;
            used[j] = 0;
        }
        return false;
    };
    return assign(0);
}

}  // namespace

BigInt stabilizer_order_by_solver(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts) {
    const bool even = need_even(g);
    Columns c = build_columns(g, pts);
    BigInt total = 0;
    for (AutIdx a : g.auts_in_o())
        for (std::uint32_t head = 0; head < c.values.size(); ++head)
            if (auto tgt = solve_targets(g, c, a, head)) total += count_for(c, *tgt, even);
    return total;
}

std::vector<DiagPerm> stabilizer_by_solver(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts,
                                           std::size_t node_budget) {
    const bool even = need_even(g);
    Columns c = build_columns(g, pts);
    std::vector<DiagPerm> out;
    std::size_t nodes = 0;
    for (AutIdx a : g.auts_in_o())
        for (std::uint32_t head = 0; head < c.values.size(); ++head)
            if (auto tgt = solve_targets(g, c, a, head))
                enumerate_matching(c, *tgt, even, nodes, node_budget, [&](const Perm& p) {
                    out.push_back({a, p});
                    return false;
                });
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<DiagPerm> solver_witness(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts,
                                       std::size_t node_budget) {
    const bool even = need_even(g);
    Columns c = build_columns(g, pts);
    std::size_t nodes = 0;
    const std::uint32_t id_bucket = c.bucket_of[0];
    for (AutIdx a : g.auts_in_o())
        for (std::uint32_t head = 0; head < c.values.size(); ++head) {
            auto tgt = solve_targets(g, c, a, head);
            if (!tgt) continue;
            // the identity is the only solution counted for (alpha = 1, head = column of coordinate 0) when it is alone
            BigInt here = count_for(c, *tgt, even);
            if (here == 0 || (a == 0 && head == id_bucket && here == 1)) continue;
            std::optional<DiagPerm> found;
            enumerate_matching(c, *tgt, even, nodes, node_budget, [&](const Perm& p) {
                if (is_identity_elem(a, p)) return false;
                found = DiagPerm{a, p};
                return true;
            });
            if (found) return found;
        }
    return std::nullopt;
}

StabMethod default_method(const DiagTypeGroup& g) {
    return g.top().symbolic() ? StabMethod::ConstraintSolver : StabMethod::Enumeration;
}

std::vector<DiagPerm> pointwise_stabilizer(const DiagTypeGroup& g, const std::vector<OmegaPoint>& pts) {
    if (default_method(g) == StabMethod::ConstraintSolver) return stabilizer_by_solver(g, pts);
    return stabilizer_by_scan(g, pts);
}

BaseCertificate is_base(const DiagTypeGroup& g, std::vector<OmegaPoint> pts) {
    return is_base(g, std::move(pts), default_method(g));
}

BaseCertificate is_base(const DiagTypeGroup& g, std::vector<OmegaPoint> pts, StabMethod method) {
    BaseCertificate cert;
    cert.method = method;
    cert.points.push_back(g.diagonal_point());
    for (auto& w : pts)
        if (!w.is_diagonal()) cert.points.push_back(std::move(w));
    if (method == StabMethod::Enumeration) {
        auto stab = stabilizer_by_scan(g, cert.points);
        cert.stabilizer_order = stab.size();
        for (const auto& e : stab)
            if (!is_identity_elem(e.alpha, e.perm)) {
                cert.witness = e;
                break;
            }
    } else {
        cert.stabilizer_order = stabilizer_order_by_solver(g, cert.points);
        if (cert.stabilizer_order > 1) cert.witness = solver_witness(g, cert.points);
    }
    cert.is_base = cert.stabilizer_order == 1;
    if (!cert.is_base && !cert.witness) throw std::logic_error("non-trivial stabilizer without a witness");
    return cert;
}

OmegaPoint point_from(const DiagTypeGroup& g, const std::vector<TElem>& s) { return g.canonical(s); }

namespace {

struct Gens {
    TElem x, y, z;
};

// x, y from the distinct-order generator pair; z the first element of T(x, y).
Gens pick_xyz(const SimpleGroup& t) {
    auto [x, y] = t.distinct_order_pair();
    auto others = t.other_order_elements(x, y);
    if (others.empty()) throw PreconditionError(t.name() + " has no element of a third order");
    return {x, y, others.front()};
}

}  // namespace

std::optional<std::vector<OmegaPoint>> construct_distinguishing_base(const DiagTypeGroup& g) {
    const TopGroup& top = g.top();
    if (!top.has_table() || top.contains_alt()) return std::nullopt;
    auto found = distinguishing_subset(top.table());
    if (!found.subset) return std::nullopt;
    const auto& delta = *found.subset;
    const std::size_t k = g.k(), gamma = k - delta.size();
    std::optional<std::size_t> split;
    for (std::size_t a = 1; a < delta.size(); ++a)
        if (a != gamma && delta.size() - a != gamma) {
            split = a;
            break;
        }
    if (!split) return std::nullopt;
    auto [x, y, z] = pick_xyz(g.t());
    (void)z;
    std::vector<TElem> s(k, y);
    for (std::size_t i = 0; i < delta.size(); ++i) s[delta[i]] = i < *split ? TElem{0} : x;
    return std::vector<OmegaPoint>{g.diagonal_point(), point_from(g, s)};
}

std::optional<std::vector<OmegaPoint>> construct_generator_base(const DiagTypeGroup& g) {
    const TopGroup& top = g.top();
    const std::size_t k = g.k();
    if (!top.has_table() || k < 4 || top.is_sym()) return std::nullopt;
    auto mb = minimal_base(top.table());
    std::vector<Point> slots = mb.base;
    if (slots.size() < 2) {
        Point extra = 0;
        while (std::find(slots.begin(), slots.end(), extra) != slots.end()) ++extra;
        slots.push_back(extra);
    }
    if (k < slots.size() + 2) return std::nullopt;
    auto [x, y] = g.t().distinct_order_pair();
    auto zs = g.t().other_order_elements(x, y);
    if (zs.size() + 2 < slots.size()) return std::nullopt;
    std::vector<TElem> s(k, 0);
    s[slots[0]] = x;
    s[slots[1]] = y;
    for (std::size_t i = 2; i < slots.size(); ++i) s[slots[i]] = zs[i - 2];
    return std::vector<OmegaPoint>{g.diagonal_point(), point_from(g, s)};
}

std::vector<OmegaPoint> construct_digit_base(const DiagTypeGroup& g) {
    const std::size_t k = g.k();
    const SimpleGroup& t = g.t();
    const std::uint64_t n = t.order();
    if (k < 5) throw PreconditionError("the digit construction needs k >= 5");
    const std::size_t m = std::min<std::size_t>(n - 1, k - 2);
    std::size_t r = 1;
    if (k > n) r = ceil_log(BigInt(k - n + 1), BigInt(n));

    auto [x, y, z] = pick_xyz(t);
    // t_0 = 1, t_1 = x, t_2 = y, t_3 = z, then the rest in index order
    std::vector<TElem> order{0, x, y, z};
    for (TElem e = 1; e < n; ++e)
        if (e != x && e != y && e != z) order.push_back(e);

    // rows 1..r+2 of u, columns 1..k (stored 0-based)
    std::vector<std::vector<TElem>> u(r + 2, std::vector<TElem>(k, 0));
    for (std::size_t j = 1; j <= m; ++j) u[1][j - 1] = order[j];
    u[2][0] = x;
    u[2][1] = z;
    for (std::size_t j = m + 1; j <= k; ++j) {
        std::uint64_t v = j - m - 1;
        for (std::size_t i = 3; i <= r + 2; ++i) {
            u[i - 1][j - 1] = order[v % n];
            v /= n;
        }
    }
    std::vector<OmegaPoint> pts;
    for (const auto& row : u) pts.push_back(point_from(g, row));
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (pts[a] == pts[b]) throw std::logic_error("digit construction produced a repeated point");
    return pts;
}

std::vector<OmegaPoint> construct_small_k_base(const DiagTypeGroup& g) {
    const std::size_t k = g.k();
    const TopGroup& top = g.top();
    const SimpleGroup& t = g.t();
    const bool sym = top.is_sym();
    const bool alt = !sym && top.contains_alt();
    auto [x, y, z] = pick_xyz(t);
    auto pt = [&](std::vector<TElem> s) { return point_from(g, s); };
    std::vector<OmegaPoint> out{g.diagonal_point()};
    if (k == 2 && (alt || sym)) {
        out.push_back(pt({x, 0}));
        out.push_back(pt({y, 0}));
        if (sym && top.order() == 2) out.push_back(pt({t.mul(x, y), 0}));
    } else if (k == 3 && sym) {
        out.push_back(pt({x, 0, 0}));
        out.push_back(pt({0, y, 0}));
    } else if (k == 3 && alt) {
        auto [ix, iy] = t.involution_pair();
        out.push_back(pt({ix, iy, 0}));
    } else if (k == 4 && sym) {
        out.push_back(pt({x, z, 0, 0}));
        out.push_back(pt({0, 0, y, 0}));
    } else if (k == 4 && alt) {
        out.push_back(pt({x, y, 0, 0}));
    } else {
        throw UnsupportedError("no small-k construction for k = " + std::to_string(k) + " with top " + top.name());
    }
    return out;
}

namespace {

class BaseSearch {
public:
    BaseSearch(const DiagTypeGroup& g, std::uint64_t n, std::size_t workers)
        : g_(g), p_(g.top().table()), n_(n), workers_(workers) {
        for (const Perm& pi : p_.elements()) {
            img_.emplace_back(pi.images().begin(), pi.images().end());
        }
    }

    std::size_t nodes() const { return nodes_; }

    bool run(const std::vector<DiagElem>& h, std::size_t depth, std::vector<std::uint64_t>& chosen) {
        ++nodes_;
        if (h.size() == 1) return true;
        if (depth == 0) return false;
        if (depth == 1) {
            auto code = first_regular_point(h);
            if (!code) return false;
            chosen.push_back(*code);
            return true;
        }
        auto orbs = orbit_reps(h);
        if (orbs.empty()) return false;
        long double bound = 1;
        for (std::size_t d = 0; d < depth; ++d) bound *= static_cast<long double>(orbs.front().second);
        if (bound < static_cast<long double>(h.size())) return false;
        for (auto [code, len] : orbs) {
            OmegaPoint w = g_.decode(code);
            std::vector<DiagElem> next;
            for (const DiagElem& e : h)
                if (fixes(e, w)) next.push_back(e);
            chosen.push_back(code);
            if (run(next, depth - 1, chosen)) return true;
            chosen.pop_back();
        }
        return false;
    }

private:
    const DiagTypeGroup& g_;
    const GroupTable& p_;
    std::uint64_t n_;
    std::size_t workers_;
    std::size_t nodes_ = 0;
    std::vector<std::vector<Point>> img_;

    bool fixes(const DiagElem& e, const OmegaPoint& w) const {
        const auto& pi = img_[e.perm];
        const TElem head = w.t[pi[0]];
        for (std::size_t i = 0; i < g_.k(); ++i)
            if (w.t[pi[i]] != g_.t().mul(head, g_.aut().apply(e.alpha, w.t[i]))) return false;
        return true;
    }

    // Smallest code whose stabilizer in h is trivial.
    std::optional<std::uint64_t> first_regular_point(const std::vector<DiagElem>& h) const {
        std::atomic<std::uint64_t> best{n_};
        parallel_chunks(n_ - 1, workers_, [&](std::size_t b, std::size_t e, std::size_t) {
            for (std::uint64_t code = b + 1; code < e + 1 && code < best.load(); ++code) {
                OmegaPoint w = g_.decode(code);
                bool regular = true;
                for (std::size_t i = 1; i < h.size() && regular; ++i) regular = !fixes(h[i], w);
                if (regular) {
                    std::uint64_t cur = best.load();
                    while (code < cur && !best.compare_exchange_weak(cur, code)) {
                    }
                    return;
                }
            }
        });
        if (best.load() == n_) return std::nullopt;
        return best.load();
    }

    std::vector<DiagElem> generators(const std::vector<DiagElem>& h) const {
        const std::uint64_t np = p_.order();
        auto key = [&](const DiagElem& e) { return static_cast<std::uint64_t>(e.alpha) * np + e.perm; };
        std::unordered_set<std::uint64_t> closure{key(DiagElem{0, 0})};
        std::vector<DiagElem> elems{DiagElem{0, 0}}, gens;
        for (const DiagElem& cand : h) {
            if (closure.count(key(cand))) continue;
            gens.push_back(cand);
            for (std::size_t i = 0; i < elems.size(); ++i)
                for (const DiagElem& s : gens) {
                    DiagElem prod{g_.aut().compose(elems[i].alpha, s.alpha),
                                  static_cast<std::uint32_t>(p_.multiply(elems[i].perm, s.perm))};
                    if (closure.insert(key(prod)).second) elems.push_back(prod);
                }
            if (elems.size() == h.size()) break;
        }
        return gens;
    }

    // Orbit representatives (smallest code) with orbit lengths, longest first; fixed points skipped.
    std::vector<std::pair<std::uint64_t, std::size_t>> orbit_reps(const std::vector<DiagElem>& h) const {
        auto gens = generators(h);
        std::vector<char> seen(n_, 0);
        std::vector<std::pair<std::uint64_t, std::size_t>> out;
        std::vector<std::uint64_t> queue;
        for (std::uint64_t start = 0; start < n_; ++start) {
            if (seen[start]) continue;
            seen[start] = 1;
            queue.assign(1, start);
            for (std::size_t q = 0; q < queue.size(); ++q) {
                OmegaPoint w = g_.decode(queue[q]);
                for (const DiagElem& s : gens) {
                    std::uint64_t c = g_.encode(act_diag(g_, w, s.alpha, p_.element(s.perm)));
                    if (!seen[c]) {
                        seen[c] = 1;
                        queue.push_back(c);
                    }
                }
            }
            if (queue.size() > 1) out.emplace_back(start, queue.size());
        }
        std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
        return out;
    }
};

}  // namespace

MinimalBaseResult minimal_base_size(const DiagTypeGroup& g, std::uint64_t budget, std::size_t workers) {
    auto n = g.small_degree();
    if (!n || *n > budget)
        throw BudgetExceeded("|Omega| = " + g.degree().str() + " exceeds the enumeration budget of " +
                             std::to_string(budget));
    auto h = stab_of_D(g);
    if (h.size() > budget) throw BudgetExceeded("|G_D| exceeds the enumeration budget");
    BaseSearch search(g, *n, workers);
    for (std::size_t depth = 1; depth <= *n; ++depth) {
        std::vector<std::uint64_t> chosen;
        if (search.run(h, depth, chosen)) {
            MinimalBaseResult r;
            r.base.push_back(g.diagonal_point());
            for (auto c : chosen) r.base.push_back(g.decode(c));
            r.size = r.base.size();
            r.nodes = search.nodes();
            return r;
        }
    }
    throw std::logic_error("G_D acts unfaithfully on Omega");
}

namespace {

BigInt ipow(std::uint64_t b, std::size_t e) {
    BigInt r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

// pi with col_j alpha = col_{j pi} over the given coordinates, or nothing if alpha does not permute them.
std::optional<std::vector<Point>> column_permutation(const DiagTypeGroup& g, const std::vector<std::vector<TElem>>& rows,
                                                     const std::vector<Point>& coords, AutIdx alpha) {
    std::map<std::vector<TElem>, Point> where;
    auto col = [&](Point j) {
        std::vector<TElem> c(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) c[i] = rows[i][j];
        return c;
    };
    for (Point j : coords) where.emplace(col(j), j);
    std::vector<Point> img(g.k());
    std::iota(img.begin(), img.end(), Point{0});
    for (Point j : coords) {
        auto c = col(j);
        for (auto& v : c) v = g.aut().apply(alpha, v);
        auto it = where.find(c);
        if (it == where.end()) return std::nullopt;
        img[j] = it->second;
    }
    return img;
}

TElem element_of_order_above_two(const SimpleGroup& t) {
    for (TElem e = 1; e < t.order(); ++e)
        if (t.elem_order(e) > 2) return e;
    throw PreconditionError("no element of order > 2");
}

}  // namespace

std::optional<DiagPerm> nonbase_witness(const DiagTypeGroup& g, std::vector<OmegaPoint> pts) {
    const TopGroup& top = g.top();
    const SimpleGroup& t = g.t();
    const std::size_t k = g.k();
    if (!top.contains_alt()) throw PreconditionError("nonbase_witness needs a top containing Alt(k)");
    pts = drop_diagonal(pts);
    const std::size_t l = pts.size();
    if (l == 0) throw PreconditionError("nonbase_witness needs at least one point besides D");
    const std::uint64_t nt = t.order();
    const BigInt tl = ipow(nt, l);
    const bool sym = top.is_sym();
    const bool hyp = BigInt(k) > tl || (l == 1 && k == nt) || (sym && (BigInt(k) == tl || BigInt(k) + 1 == tl));
    if (!hyp)
        throw PreconditionError("k = " + std::to_string(k) + " meets none of the hypotheses for l = " + std::to_string(l));

    std::vector<std::vector<TElem>> rows;
    for (const auto& w : pts) rows.push_back(w.t);
    std::map<std::vector<TElem>, std::vector<Point>> groups;
    for (Point j = 0; j < k; ++j) {
        std::vector<TElem> c(l);
        for (std::size_t i = 0; i < l; ++i) c[i] = rows[i][j];
        groups[c].push_back(j);
    }
    std::vector<std::vector<Point>> repeated;
    for (auto& [c, js] : groups)
        if (js.size() >= 2) repeated.push_back(js);

    std::optional<DiagPerm> w;
    if (!repeated.empty() && std::any_of(repeated.begin(), repeated.end(), [](auto& r) { return r.size() >= 3; })) {
        auto& r = *std::find_if(repeated.begin(), repeated.end(), [](auto& v) { return v.size() >= 3; });
        w = DiagPerm{0, Perm::from_cycles(k, {{r[0], r[1], r[2]}})};
    } else if (repeated.size() >= 2) {
        w = DiagPerm{0, Perm::from_cycles(k, {{repeated[0][0], repeated[0][1]}, {repeated[1][0], repeated[1][1]}})};
    } else if (repeated.size() == 1) {
        const Point a = repeated[0][0], b = repeated[0][1];
        if (sym) {
            w = DiagPerm{0, Perm::from_cycles(k, {{a, b}})};
        } else {
            // choose representatives with columns a and b trivial
            for (auto& row : rows) {
                TElem inv = t.inv(row[a]);
                for (auto& v : row) v = t.mul(inv, v);
            }
            std::vector<Point> rest;
            for (Point j = 0; j < k; ++j)
                if (j != a && j != b) rest.push_back(j);
            AutIdx alpha;
            if (BigInt(k) == tl + 1) {
                alpha = g.aut().inn(1);
            } else {
                // l = 1 and k = |T|: one non-trivial value is missing; conjugate by it
                std::vector<char> present(nt, 0);
                for (Point j : rest) present[rows[0][j]] = 1;
                TElem missing = 1;
                while (present[missing]) ++missing;
                alpha = g.aut().inn(missing);
            }
            auto img = column_permutation(g, rows, rest, alpha);
            if (!img) return std::nullopt;
            Perm pi(*img);
            if (!pi.is_even()) pi = pi * Perm::from_cycles(k, {{a, b}});
            w = DiagPerm{alpha, pi};
        }
    } else {
        // all columns distinct, so k is |T|^l or |T|^l - 1
        if (BigInt(k) + 1 == tl) {
            std::set<std::vector<TElem>> present;
            for (auto& [c, js] : groups) present.insert(c);
            std::vector<TElem> c(l, 0);
            for (;;) {
                if (!present.count(c)) break;
                std::size_t i = 0;
                while (i < l && ++c[i] == nt) c[i++] = 0;
                if (i == l) return std::nullopt;
            }
            for (std::size_t i = 0; i < l; ++i) {
                TElem inv = t.inv(c[i]);
                for (auto& v : rows[i]) v = t.mul(inv, v);
            }
        }
        std::vector<Point> all(k);
        std::iota(all.begin(), all.end(), Point{0});
        AutIdx alpha = g.aut().inn(element_of_order_above_two(t));
        auto img = column_permutation(g, rows, all, alpha);
        if (!img) return std::nullopt;
        Perm pi(*img);
        if (top.contains(pi))
            w = DiagPerm{alpha, pi};
        else
            w = DiagPerm{g.aut().compose(alpha, alpha), pi * pi};
    }
    if (!w) return std::nullopt;
    if (is_identity_elem(w->alpha, w->perm) || !g.contains(g.diag(w->alpha, w->perm)) ||
        !fixes_all(g, pts, w->alpha, w->perm))
        throw std::logic_error("constructed non-base witness failed verification");
    return w;
}

std::size_t ceil_log(const BigInt& value, const BigInt& base) {
    if (base < 2) throw PreconditionError("logarithm base must be at least 2");
    std::size_t m = 0;
    BigInt acc = 1;
    while (acc < value) {
        acc *= base;
        ++m;
    }
    return m;
}

PyberReport pyber_check(const DiagTypeGroup& g, std::size_t known_b, bool exact) {
    PyberReport r;
    r.b = known_b;
    r.exact = exact;
    r.log_ceiling = ceil_log(g.order(), g.degree());
    r.upper = r.log_ceiling + 2;
    r.upper_holds = known_b <= r.upper;
    r.lower_holds = !exact || r.log_ceiling <= known_b;
    return r;
}

AltBounds alt_formula_bounds(const DiagTypeGroup& g) {
    const std::size_t k = g.k();
    if (k < 3) throw PreconditionError("alt_formula_bounds needs k >= 3");
    if (!g.top().contains_alt()) throw PreconditionError("alt_formula_bounds needs a top containing Alt(k)");
    const std::uint64_t nt = g.t().order();
    const std::size_t big_l = ceil_log(BigInt(k), BigInt(nt));
    AltBounds b{big_l + 1, big_l + 2, {}};
    if (k > nt) {
        const std::size_t l = big_l - 1;  // |T|^l < k <= |T|^(l+1)
        if (BigInt(k) <= ipow(nt, l) + nt - 1) {
            b.hi = big_l + 1;
            b.reasons.push_back("|T|^l < k <= |T|^l + |T| - 1 with l = " + std::to_string(l) + ": a_G = 1");
        }
    }
    if (k == nt) {
        b.lo = big_l + 2;
        b.reasons.push_back("k = |T|: lower bound l + 2 with l = 1");
    }
    if (g.top().is_sym() && (BigInt(k) == ipow(nt, big_l) || BigInt(k) + 1 == ipow(nt, big_l))) {
        b.lo = big_l + 2;
        b.reasons.push_back("Sym(k) top with k in {|T|^l, |T|^l - 1}: lower bound l + 2");
    }
    if (b.lo > b.hi) throw std::logic_error("inconsistent base size bounds");
    return b;
}

AltInGCheck alt_in_g_check(const DiagTypeGroup& g, std::size_t samples, std::uint64_t seed) {
    AltInGCheck r;
    if (!g.top().contains_alt()) throw PreconditionError("alt_in_g_check needs a top containing Alt(k)");
    const AutTable& a = g.aut();
    std::size_t out = a.out_order();
    std::size_t s = out % 2 == 0 ? out + 1 : out + 2;
    bool coprime = true;
    for (OutLabel c = 0; c < out; ++c) coprime = coprime && std::gcd<std::size_t, std::size_t>(s, a.out_elem_order(c)) == 1;
    if (!coprime || s > g.k()) return r;
    r.s = s;
    std::mt19937_64 rng(seed);
    std::vector<Point> pts(g.k());
    std::iota(pts.begin(), pts.end(), Point{0});
    r.s_cycles_in_g = true;
    for (std::size_t i = 0; i < samples; ++i) {
        std::shuffle(pts.begin(), pts.end(), rng);
        std::vector<Point> cyc(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(s));
        Perm pi = Perm::from_cycles(g.k(), {cyc});
        r.s_cycles_in_g = r.s_cycles_in_g && g.contains(g.diag(0, pi));
        ++r.cycles_checked;
    }
    return r;
}

}  // namespace diagbase
