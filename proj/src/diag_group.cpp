#include "diagbase/diag_group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "diagbase/errors.hpp"

namespace diagbase {

namespace {

BigInt factorial(std::size_t k) {
    BigInt f = 1;
    for (std::size_t i = 2; i <= k; ++i) f *= i;
    return f;
}

Perm k_cycle(std::size_t k) {
    std::vector<Point> img(k);
    for (std::size_t i = 0; i < k; ++i) img[i] = static_cast<Point>((i + 1) % k);
    return Perm(std::move(img));
}

std::size_t parse_size(const std::string& s, const std::string& text) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw PreconditionError("cannot parse top group '" + text + "'");
    return std::stoul(s);
}

}  // namespace

TopGroup TopGroup::from_table(GroupTable table, std::string name) {
    TopGroup t;
    t.kind_ = Kind::Explicit;
    t.k_ = table.degree();
    t.name_ = name.empty() ? "explicit(order " + std::to_string(table.order()) + ")" : std::move(name);
    t.table_ = std::make_shared<const GroupTable>(std::move(table));
    return t;
}

TopGroup TopGroup::from_generators(std::size_t k, const std::vector<Perm>& gens, std::string name) {
    if (name.empty()) {
        std::string joined;
        for (const Perm& p : gens) joined += (joined.empty() ? "" : " ; ") + p.to_string();
        name = "<" + (joined.empty() ? std::string("()") : joined) + ">";
    }
    return from_table(GroupTable::generate(gens, k), std::move(name));
}

TopGroup TopGroup::alt(std::size_t k) {
    TopGroup t;
    t.kind_ = Kind::Alt;
    t.k_ = k;
    t.name_ = "Alt(" + std::to_string(k) + ")";
    if (k <= kMaterializeTopDegree) {
        std::vector<Perm> gens;
        for (Point i = 2; i < k; ++i) gens.push_back(Perm::from_cycles(k, {{0, 1, i}}));
        t.table_ = std::make_shared<const GroupTable>(GroupTable::generate(gens, k));
    }
    return t;
}

TopGroup TopGroup::sym(std::size_t k) {
    TopGroup t;
    t.kind_ = Kind::Sym;
    t.k_ = k;
    t.name_ = "Sym(" + std::to_string(k) + ")";
    if (k <= kMaterializeTopDegree) {
        std::vector<Perm> gens;
        if (k >= 2) gens = {Perm::from_cycles(k, {{0, 1}}), k_cycle(k)};
        t.table_ = std::make_shared<const GroupTable>(GroupTable::generate(gens, k));
    }
    return t;
}

TopGroup TopGroup::trivial(std::size_t k) { return from_generators(k, {}, "trivial"); }

TopGroup TopGroup::cyclic(std::size_t k) { return from_generators(k, {k_cycle(k)}, "C" + std::to_string(k)); }

TopGroup TopGroup::dihedral(std::size_t k) {
    std::vector<Point> refl(k);
    for (std::size_t i = 0; i < k; ++i) refl[i] = static_cast<Point>((k - i) % k);
    return from_generators(k, {k_cycle(k), Perm(refl)}, "D" + std::to_string(k));
}

TopGroup TopGroup::parse(const std::string& text, std::size_t k) {
    std::string s;
    for (char c : text)
        if (c != ' ' || !s.empty()) s += c;
    while (!s.empty() && s.back() == ' ') s.pop_back();
    auto check_k = [&](std::size_t n) {
        if (n != k)
            throw PreconditionError("top group '" + text + "' has degree " + std::to_string(n) + " but k = " +
                                    std::to_string(k));
    };
    if (s == "trivial" || s == "1") return trivial(k);
    for (const char* prefix : {"Sym(", "Alt("}) {
        std::string p(prefix);
        if (s.rfind(p, 0) == 0 && s.back() == ')') {
            check_k(parse_size(s.substr(p.size(), s.size() - p.size() - 1), text));
            return p[0] == 'S' ? sym(k) : alt(k);
        }
    }
    if (!s.empty() && (s[0] == 'C' || s[0] == 'D')) {
        check_k(parse_size(s.substr(1), text));
        return s[0] == 'C' ? cyclic(k) : dihedral(k);
    }
    if (!s.empty() && s[0] == '(') {
        std::vector<Perm> gens;
        std::stringstream ss(s);
        std::string part;
        while (std::getline(ss, part, ';')) gens.push_back(Perm::parse(part, k));
        return from_generators(k, gens);
    }
    throw PreconditionError("cannot parse top group '" + text + "'");
}

BigInt TopGroup::order() const {
    switch (kind_) {
        case Kind::Explicit:
            return table_->order();
        case Kind::Sym:
            return factorial(k_);
        case Kind::Alt:
            return k_ < 2 ? BigInt(1) : factorial(k_) / 2;
    }
    return 0;
}

bool TopGroup::contains(const Perm& p) const {
    if (p.degree() != k_) return false;
    switch (kind_) {
        case Kind::Explicit:
            return table_->contains(p);
        case Kind::Sym:
            return true;
        case Kind::Alt:
            return p.is_even();
    }
    return false;
}

bool TopGroup::contains_alt() const {
    if (kind_ != Kind::Explicit) return true;
    return 2 * order() >= factorial(k_);
}

bool TopGroup::is_sym() const {
    if (kind_ == Kind::Sym) return true;
    if (kind_ == Kind::Alt) return k_ < 2;
    return order() == factorial(k_);
}

const GroupTable& TopGroup::table() const {
    if (!table_) throw UnsupportedError("top group " + name_ + " is symbolic; its elements are not enumerated");
    return *table_;
}

Perm TopGroup::random_element(std::mt19937_64& rng) const {
    if (table_) {
        std::uniform_int_distribution<std::size_t> pick(0, table_->order() - 1);
        return table_->element(pick(rng));
    }
    std::vector<Point> img(k_);
    std::iota(img.begin(), img.end(), Point{0});
    std::shuffle(img.begin(), img.end(), rng);
    Perm p(std::move(img));
    if (kind_ == Kind::Alt && !p.is_even()) p = Perm::from_cycles(k_, {{0, 1}}) * p;
    return p;
}

bool OmegaPoint::is_diagonal() const {
    return std::all_of(t.begin(), t.end(), [](TElem x) { return x == 0; });
}

std::string OmegaPoint::to_string() const {
    std::string s;
    for (TElem x : t) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

DiagTypeGroup::DiagTypeGroup(CatalogGroup t, std::size_t k, std::vector<OutLabel> out_part, TopGroup top)
    : cat_(std::move(t)), k_(k), out_(std::move(out_part)), top_(std::move(top)) {
    if (k_ < 2) throw ValidationError("k must be at least 2");
    if (top_.degree() != k_) throw ValidationError("top group degree differs from k");
    const AutTable& a = *cat_.aut;
    in_o_.assign(a.out_order(), 0);
    for (OutLabel c : out_) {
        if (c >= a.out_order()) throw ValidationError("Out label " + std::to_string(c) + " out of range");
        in_o_[c] = 1;
    }
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    if (out_.empty() || out_[0] != 0) throw ValidationError("out-part must contain the inner label 0");
    for (OutLabel x : out_)
        for (OutLabel y : out_)
            if (!in_o_[a.out_mul(x, y)]) throw ValidationError("out-part is not a subgroup of Out(T)");
    for (AutIdx al = 0; al < a.order(); ++al)
        if (in_o_[a.coset(al)]) auts_o_.push_back(al);
}

BigInt DiagTypeGroup::order() const {
    BigInt n = 1;
    for (std::size_t i = 0; i < k_; ++i) n *= t().order();
    return n * out_.size() * top_.order();
}

BigInt DiagTypeGroup::degree() const {
    BigInt n = 1;
    for (std::size_t i = 1; i < k_; ++i) n *= t().order();
    return n;
}

std::optional<std::uint64_t> DiagTypeGroup::small_degree() const {
    BigInt d = degree();
    if (d > BigInt(std::numeric_limits<std::uint64_t>::max())) return std::nullopt;
    return static_cast<std::uint64_t>(d);
}

BigInt DiagTypeGroup::stab_order() const { return BigInt(t().order()) * out_.size() * top_.order(); }

bool DiagTypeGroup::contains(const WElement& w) const {
    if (w.auts.size() != k_ || w.perm.degree() != k_) return false;
    OutLabel c = aut().coset(w.auts[0]);
    if (!label_in_o(c)) return false;
    for (AutIdx a : w.auts)
        if (a >= aut().order() || aut().coset(a) != c) return false;
    return top_.contains(w.perm);
}

WElement DiagTypeGroup::diag(AutIdx alpha, const Perm& pi) const { return {std::vector<AutIdx>(k_, alpha), pi}; }

WElement DiagTypeGroup::multiply(const WElement& a, const WElement& b) const {
    WElement r;
    r.auts.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) r.auts[i] = aut().compose(a.auts[i], b.auts[a.perm(static_cast<Point>(i))]);
    r.perm = a.perm * b.perm;
    return r;
}

WElement DiagTypeGroup::inverse(const WElement& a) const {
    Perm pinv = a.perm.inverse();
    WElement r;
    r.auts.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) r.auts[i] = aut().inverse(a.auts[pinv(static_cast<Point>(i))]);
    r.perm = std::move(pinv);
    return r;
}

WElement DiagTypeGroup::identity() const { return {std::vector<AutIdx>(k_, 0), Perm(k_)}; }

WElement DiagTypeGroup::lift(const OmegaPoint& w) const {
    WElement r;
    r.auts.reserve(k_);
    for (TElem x : w.t) r.auts.push_back(aut().inn(x));
    r.perm = Perm(k_);
    return r;
}

WElement DiagTypeGroup::random_element(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> pick_o(0, out_.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_t(0, t().order() - 1);
    OutLabel c = out_[pick_o(rng)];
    WElement r;
    for (std::size_t i = 0; i < k_; ++i) r.auts.push_back(aut().make(c, static_cast<TElem>(pick_t(rng))));
    r.perm = top_.random_element(rng);
    return r;
}

OmegaPoint DiagTypeGroup::diagonal_point() const { return {std::vector<TElem>(k_, 0)}; }

OmegaPoint DiagTypeGroup::random_point(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> pick_t(0, t().order() - 1);
    OmegaPoint w{std::vector<TElem>(k_, 0)};
    for (std::size_t i = 1; i < k_; ++i) w.t[i] = static_cast<TElem>(pick_t(rng));
    return w;
}

OmegaPoint DiagTypeGroup::canonical(const std::vector<TElem>& s) const {
    OmegaPoint w{std::vector<TElem>(k_)};
    TElem inv0 = t().inv(s[0]);
    for (std::size_t i = 0; i < k_; ++i) w.t[i] = t().mul(inv0, s[i]);
    return w;
}

std::uint64_t DiagTypeGroup::encode(const OmegaPoint& w) const {
    std::uint64_t code = 0;
    for (std::size_t i = k_; i-- > 1;) code = code * t().order() + w.t[i];
    return code;
}

OmegaPoint DiagTypeGroup::decode(std::uint64_t code) const {
    OmegaPoint w{std::vector<TElem>(k_, 0)};
    for (std::size_t i = 1; i < k_; ++i) {
        w.t[i] = static_cast<TElem>(code % t().order());
        code /= t().order();
    }
    return w;
}

std::string DiagTypeGroup::descriptor() const {
    std::string o;
    for (OutLabel c : out_) o += (o.empty() ? "" : ",") + std::to_string(c);
    return t().name() + " k=" + std::to_string(k_) + " out={" + o + "} top=" + top_.name();
}

std::vector<OutLabel> parse_out_part(const std::string& text, const AutTable& aut) {
    if (text == "full") {
        std::vector<OutLabel> all(aut.out_order());
        std::iota(all.begin(), all.end(), OutLabel{0});
        return all;
    }
    if (text == "inner") return {0};
    std::vector<OutLabel> labels;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw PreconditionError("cannot parse out-part '" + text + "'");
        OutLabel c = static_cast<OutLabel>(std::stoul(part));
        if (c >= aut.out_order())
            throw PreconditionError("Out label " + part + " out of range (|Out(T)| = " + std::to_string(aut.out_order()) + ")");
        labels.push_back(c);
    }
    return aut.out_subgroup(labels);
}

DiagTypeGroup build_group(const CatalogGroup& t, std::size_t k, const std::vector<OutLabel>& out_part, TopGroup top) {
    if (top.degree() != k) throw ValidationError("top group degree differs from k");
    // Alt(2) is trivial and every other symbolic top is primitive
    bool ok = top.symbolic() || is_primitive(top.table()) || (k == 2 && top.table().order() == 1);
    if (!ok) throw ValidationError("top group " + top.name() + " is not primitive on " + std::to_string(k) + " points");
    return DiagTypeGroup(t, k, out_part, std::move(top));
}

OmegaPoint act(const DiagTypeGroup& g, const OmegaPoint& w, const WElement& x) {
    const SimpleGroup& t = g.t();
    const AutTable& a = g.aut();
    const std::size_t k = g.k();
    Perm pinv = x.perm.inverse();
    const Point j = pinv(0);
    const TElem tj_inv = t.inv(w.t[j]);
    const TElem uj_inv = t.inv(a.inner_offset(x.auts[j]));
    OmegaPoint r{std::vector<TElem>(k)};
    for (std::size_t l = 0; l < k; ++l) {
        Point m = pinv(static_cast<Point>(l));
        TElem moved = a.apply(x.auts[j], t.mul(tj_inv, w.t[m]));
        r.t[l] = t.mul(moved, t.mul(uj_inv, a.inner_offset(x.auts[m])));
    }
    return r;
}

OmegaPoint act_diag(const DiagTypeGroup& g, const OmegaPoint& w, AutIdx alpha, const Perm& pi) {
    const SimpleGroup& t = g.t();
    Perm pinv = pi.inverse();
    const TElem tj_inv = t.inv(w.t[pinv(0)]);
    OmegaPoint r{std::vector<TElem>(g.k())};
    for (std::size_t l = 0; l < g.k(); ++l) r.t[l] = g.aut().apply(alpha, t.mul(tj_inv, w.t[pinv(static_cast<Point>(l))]));
    return r;
}

std::vector<DiagElem> stab_of_D(const DiagTypeGroup& g) {
    const GroupTable& p = g.top().table();
    std::vector<DiagElem> out;
    out.reserve(g.auts_in_o().size() * p.order());
    for (AutIdx a : g.auts_in_o())
        for (std::uint32_t i = 0; i < p.order(); ++i) out.push_back({a, i});
    return out;
}

const TopGroup& top_group_of(const DiagTypeGroup& g) { return g.top(); }

}  // namespace diagbase
