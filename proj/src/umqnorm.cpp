#include "magbound/umqnorm.hpp"

#include "magbound/permsums.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace magbound {

Enclosure Enclosure::scaled(const Rational& s) const { return {lo * s, hi * s}; }

// ---------------------------------------------------------------------------------------------

ConvexityClass ConvexityClass::plain() { return ConvexityClass(1, 1, 1.0, std::nullopt); }

ConvexityClass ConvexityClass::with_kappa(const Rational& kappa) {
    if (kappa < Rational(1, 2) || kappa > 1) throw std::invalid_argument("kappa must lie in [1/2, 1]");
    return ConvexityClass(kappa, kappa, kappa.get_d(), std::nullopt);
}

ConvexityClass ConvexityClass::umq(const Rational& q) {
    if (q < 1) throw std::invalid_argument("q must be at least 1");
    // κ = 2^{-m/n} where q = n/m, i.e. κ^n = 2^{-m}.
    if (!q.get_num().fits_ulong_p() || !q.get_den().fits_ulong_p())
        throw std::invalid_argument("q too large");
    unsigned long n = q.get_num().get_ui(), m = q.get_den().get_ui();
    double d = std::exp2(-1.0 / q.get_d());
    Rational target = Rational(1) / pow(Rational(2), static_cast<unsigned>(m));
    Rational kd = from_double(d);
    Rational kn = pow(kd, static_cast<unsigned>(n));
    if (kn == target) return ConvexityClass(kd, kd, d, q);
    double lo = d, hi = d;
    while (pow(from_double(lo), static_cast<unsigned>(n)) > target) lo = std::nextafter(lo, 0.0);
    while (pow(from_double(hi), static_cast<unsigned>(n)) < target) hi = std::nextafter(hi, 1.0);
    if (lo == hi) {
        lo = std::nextafter(lo, 0.0);
        hi = std::nextafter(hi, 1.0);
    }
    return ConvexityClass(from_double(lo), from_double(hi), d, q);
}

std::string ConvexityClass::label() const {
    if (is_plain()) return "plain";
    if (q_) return "q=" + to_string(*q_);
    return "kappa=" + to_string(kappa_lo_);
}

// ---------------------------------------------------------------------------------------------

QuasiMonomial QuasiMonomial::leaf(int letter) {
    QuasiMonomial q;
    q.kind = Kind::Leaf;
    q.letter = letter;
    return q;
}

QuasiMonomial QuasiMonomial::product(std::vector<QuasiMonomial> factors) {
    QuasiMonomial q;
    q.kind = Kind::Product;
    for (auto& f : factors) {
        if (f.kind == Kind::Product)
            for (auto& g : f.children) q.children.push_back(std::move(g));
        else
            q.children.push_back(std::move(f));
    }
    if (q.children.size() == 1) return q.children.front();
    return q;
}

QuasiMonomial QuasiMonomial::xi(QuasiMonomial s1, QuasiMonomial s2, QuasiMonomial s3, QuasiMonomial s4) {
    QuasiMonomial q;
    q.kind = Kind::Xi;
    q.children = {std::move(s1), std::move(s2), std::move(s3), std::move(s4)};
    return q;
}

QuasiMonomial QuasiMonomial::word(const Word& w) {
    std::vector<QuasiMonomial> f;
    for (int l : w) f.push_back(leaf(l));
    return product(std::move(f));
}

int QuasiMonomial::xi_count() const {
    int c = kind == Kind::Xi ? 1 : 0;
    for (const auto& ch : children) c += ch.xi_count();
    return c;
}

int QuasiMonomial::degree() const {
    if (kind == Kind::Leaf) return 1;
    int d = 0;
    for (const auto& ch : children) d += ch.degree();
    return d;
}

NCPolyQ QuasiMonomial::eval() const {
    switch (kind) {
        case Kind::Leaf:
            return NCPolyQ::single({letter});
        case Kind::Product: {
            NCPolyQ out = NCPolyQ::single({});
            for (const auto& ch : children) out = out * ch.eval();
            return out;
        }
        case Kind::Xi:
            return xi_eval(children[0].eval(), children[1].eval(), children[2].eval(), children[3].eval());
    }
    return {};
}

std::string QuasiMonomial::to_string() const {
    switch (kind) {
        case Kind::Leaf:
            return "Y" + std::to_string(letter);
        case Kind::Product: {
            std::string s;
            for (const auto& ch : children) s += (s.empty() ? "" : "*") + ch.to_string();
            return s;
        }
        case Kind::Xi: {
            std::string s = "Xi(";
            for (std::size_t i = 0; i < 4; ++i) s += (i ? "," : "") + children[i].to_string();
            return s + ")";
        }
    }
    return {};
}

// ---------------------------------------------------------------------------------------------

namespace {

using Multiset = std::vector<int>;  // sorted letters

struct Entry {
    QuasiMonomial tree;
    NCPolyQ poly;
    int xi = 0;
};

NCPolyQ sign_normalized(const NCPolyQ& p) {
    if (p.empty() || p.terms().begin()->second > 0) return p;
    return p * Rational(-1);
}

// Nonempty proper sub-multisets (as sorted vectors) paired with their complements.
std::vector<std::pair<Multiset, Multiset>> splits(const Multiset& ms) {
    std::vector<int> letters, mult;
    for (int l : ms) {
        if (letters.empty() || letters.back() != l) {
            letters.push_back(l);
            mult.push_back(0);
        }
        ++mult.back();
    }
    std::vector<std::pair<Multiset, Multiset>> out;
    std::vector<int> pick(letters.size(), 0);
    while (true) {
        std::size_t i = 0;
        while (i < pick.size() && pick[i] == mult[i]) pick[i++] = 0;
        if (i == pick.size()) break;
        ++pick[i];
        Multiset a, b;
        for (std::size_t j = 0; j < letters.size(); ++j) {
            a.insert(a.end(), pick[j], letters[j]);
            b.insert(b.end(), mult[j] - pick[j], letters[j]);
        }
        if (!b.empty()) out.emplace_back(std::move(a), std::move(b));
    }
    return out;
}

class Enumerator {
public:
    const std::vector<Entry>& gen(const Multiset& ms) {
        auto it = memo_.find(ms);
        if (it != memo_.end()) return it->second;
        std::map<NCPolyQ, Entry> best;
        auto offer = [&](QuasiMonomial t, NCPolyQ p, int xi) {
            NCPolyQ key = sign_normalized(p);
            auto f = best.find(key);
            if (f == best.end() || f->second.xi < xi) best[key] = Entry{std::move(t), std::move(p), xi};
        };
        if (ms.size() == 1) {
            offer(QuasiMonomial::leaf(ms[0]), NCPolyQ::single({ms[0]}), 0);
        } else {
            for (const auto& [a, b] : splits(ms)) {
                const auto ga = gen(a);
                const auto& gb = gen(b);
                for (const auto& ea : ga)
                    for (const auto& eb : gb)
                        offer(QuasiMonomial::product({ea.tree, eb.tree}), ea.poly * eb.poly, ea.xi + eb.xi);
            }
            if (ms.size() >= 4) enumerate_xi(ms, offer);
        }
        std::vector<Entry> out;
        out.reserve(best.size());
        for (auto& [k, e] : best) out.push_back(std::move(e));
        return memo_[ms] = std::move(out);
    }

private:
    template <class Offer>
    void enumerate_xi(const Multiset& ms, Offer& offer) {
        for (const auto& [p1, r1] : splits(ms))
            for (const auto& [p2, r2] : splits(r1))
                for (const auto& [p3, p4] : splits(r2)) {
                    auto g1 = gen(p1), g2 = gen(p2), g3 = gen(p3), g4 = gen(p4);
                    for (const auto& e1 : g1)
                        for (const auto& e2 : g2)
                            for (const auto& e3 : g3)
                                for (const auto& e4 : g4)
                                    offer(QuasiMonomial::xi(e1.tree, e2.tree, e3.tree, e4.tree),
                                          xi_eval(e1.poly, e2.poly, e3.poly, e4.poly),
                                          1 + e1.xi + e2.xi + e3.xi + e4.xi);
                }
    }

    std::map<Multiset, std::vector<Entry>> memo_;
};

std::mutex g_enum_mutex;
std::map<Multiset, std::vector<Entry>> g_enum_cache;

const std::vector<Entry>& cached_entries(const Multiset& ms) {
    std::lock_guard<std::mutex> lock(g_enum_mutex);
    auto it = g_enum_cache.find(ms);
    if (it != g_enum_cache.end()) return it->second;
    Enumerator e;
    auto entries = e.gen(ms);
    // Monomials first so that the unit columns come before the cross-term columns.
    std::stable_partition(entries.begin(), entries.end(), [](const Entry& x) { return x.xi == 0; });
    return g_enum_cache[ms] = std::move(entries);
}

Multiset letters_of(const Word& w) {
    Multiset ms = w;
    std::sort(ms.begin(), ms.end());
    return ms;
}

}  // namespace

std::vector<QuasiMonomial> enumerate_quasimonomials(const std::vector<int>& generators) {
    if (generators.empty()) throw std::invalid_argument("no generators");
    if (static_cast<int>(generators.size()) > kExhaustiveCap)
        throw std::out_of_range("exhaustive mode unavailable above degree " + std::to_string(kExhaustiveCap));
    std::vector<QuasiMonomial> out;
    for (const auto& e : cached_entries(letters_of(generators))) out.push_back(e.tree);
    return out;
}

std::vector<QuasiMonomial> enumerate_quasimonomials(int degree) {
    std::vector<int> g(std::max(degree, 0));
    for (int i = 0; i < degree; ++i) g[i] = i + 1;
    return enumerate_quasimonomials(g);
}

// ---------------------------------------------------------------------------------------------

LPInstance build_lp(const NCPolyQ& target) {
    if (target.empty()) throw std::invalid_argument("build_lp: zero target");
    Multiset ms = letters_of(target.terms().begin()->first);
    for (const auto& [w, c] : target.terms())
        if (letters_of(w) != ms) throw std::invalid_argument("build_lp: target mixes letter multisets");
    if (static_cast<int>(ms.size()) > kExhaustiveCap)
        throw std::out_of_range("exhaustive mode unavailable above degree " + std::to_string(kExhaustiveCap));
    LPInstance inst;
    inst.target = target;
    std::map<Word, int> seen;
    for (const auto& e : cached_entries(ms)) {
        inst.columns.push_back(LPColumn{e.tree, e.poly, e.xi});
        for (const auto& [w, c] : e.poly.terms())
            if (seen.emplace(w, 0).second) inst.rows.push_back(w);
    }
    for (const auto& [w, c] : target.terms())
        if (seen.emplace(w, 0).second) inst.rows.push_back(w);
    std::sort(inst.rows.begin(), inst.rows.end());
    return inst;
}

namespace {

Rational column_cost(const LPColumn& col, const Rational& kappa) {
    return pow(kappa, static_cast<unsigned>(col.xi_count));
}

}  // namespace

LPSolution solve_lp(const LPInstance& inst, const Rational& kappa) {
    const std::size_t m = inst.rows.size(), nc = inst.columns.size(), N = 2 * nc;
    std::map<Word, std::size_t> row_of;
    for (std::size_t i = 0; i < m; ++i) row_of[inst.rows[i]] = i;

    std::vector<Rational> cost(N);
    std::vector<long> unit_col(m, -1);
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(N, Rational(0)));
    for (std::size_t k = 0; k < nc; ++k) {
        const auto& col = inst.columns[k];
        cost[2 * k] = cost[2 * k + 1] = column_cost(col, kappa);
        for (const auto& [w, c] : col.poly.terms()) {
            std::size_t i = row_of.at(w);
            T[i][2 * k] = c;
            T[i][2 * k + 1] = -c;
        }
        if (col.xi_count == 0 && col.poly.size() == 1 && col.poly.terms().begin()->second == 1)
            unit_col[row_of.at(col.poly.terms().begin()->first)] = static_cast<long>(k);
    }
    std::vector<Rational> rhs(m, Rational(0));
    for (const auto& [w, c] : inst.target.terms()) rhs[row_of.at(w)] = c;

    // Starting basis ±(unit monomial) per row, so the initial point is feasible.
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (unit_col[i] < 0) throw std::logic_error("solve_lp: row without unit monomial column");
        std::size_t k = static_cast<std::size_t>(unit_col[i]);
        if (rhs[i] >= 0) {
            basis[i] = 2 * k;
        } else {
            basis[i] = 2 * k + 1;
            rhs[i] = -rhs[i];
            for (auto& x : T[i]) x = -x;
        }
    }
    // Reduced costs d_j = c_j − c_B^T T_j.
    std::vector<Rational> d = cost;
    Rational obj = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const Rational& cb = cost[basis[i]];
        for (std::size_t j = 0; j < N; ++j)
            if (T[i][j] != 0) d[j] -= cb * T[i][j];
        obj += cb * rhs[i];
    }

    LPSolution sol;
    sol.kappa = kappa;
    std::vector<std::size_t> nz;
    while (true) {
        std::size_t e = N;
        for (std::size_t j = 0; j < N; ++j)
            if (d[j] < 0) {
                e = j;
                break;
            }
        if (e == N) break;
        std::size_t r = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][e] <= 0) continue;
            Rational ratio = rhs[i] / T[i][e];
            if (r == m || ratio < best || (ratio == best && basis[i] < basis[r])) {
                r = i;
                best = ratio;
            }
        }
        if (r == m) throw std::logic_error("solve_lp: unbounded (impossible for nonnegative costs)");
        Rational piv = T[r][e];
        nz.clear();
        for (std::size_t j = 0; j < N; ++j)
            if (T[r][j] != 0) {
                T[r][j] /= piv;
                nz.push_back(j);
            }
        rhs[r] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || T[i][e] == 0) continue;
            Rational f = T[i][e];
            for (std::size_t j : nz) T[i][j] -= f * T[r][j];
            rhs[i] -= f * rhs[r];
        }
        Rational f = d[e];
        for (std::size_t j : nz) d[j] -= f * T[r][j];
        obj += f * rhs[r];
        basis[r] = e;
        ++sol.pivots;
    }

    sol.value = obj;
    sol.weights.assign(nc, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t v = basis[i];
        if (v % 2 == 0)
            sol.weights[v / 2] += rhs[i];
        else
            sol.weights[v / 2] -= rhs[i];
        sol.basis.push_back(v % 2 == 0 ? static_cast<int>(v / 2) : -static_cast<int>(v / 2) - 1);
    }
    // Unit monomial columns have cost 1, hence y_w = 1 − d_{u_w}.
    sol.dual.assign(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) sol.dual[i] = 1 - d[2 * static_cast<std::size_t>(unit_col[i])];
    return sol;
}

bool LPSolution::verify(const LPInstance& inst) const {
    if (weights.size() != inst.columns.size() || dual.size() != inst.rows.size()) return false;
    std::map<Word, std::size_t> row_of;
    for (std::size_t i = 0; i < inst.rows.size(); ++i) row_of[inst.rows[i]] = i;
    NCPolyQ combo;
    Rational primal = 0;
    for (std::size_t k = 0; k < inst.columns.size(); ++k) {
        const auto& col = inst.columns[k];
        Rational c = column_cost(col, kappa);
        if (weights[k] != 0) {
            combo += col.poly * weights[k];
            primal += abs(weights[k]) * c;
        }
        Rational yP = 0;
        for (const auto& [w, a] : col.poly.terms()) yP += dual[row_of.at(w)] * a;
        if (abs(yP) > c) return false;
    }
    if (combo != inst.target) return false;
    Rational yb = 0;
    for (const auto& [w, a] : inst.target.terms()) yb += dual[row_of.at(w)] * a;
    return primal == value && yb == value;
}

NormResult fa_norm_exact(const NCPolyQ& x, const ConvexityClass& cls) {
    NormResult res;
    if (x.empty()) {
        res.value = Enclosure::point(0);
        res.certified = true;
        return res;
    }
    if (cls.is_plain()) {
        res.value = Enclosure::point(l1_norm(x));
        res.certified = true;
        return res;
    }
    std::map<Multiset, NCPolyQ> groups;
    for (const auto& [w, c] : x.terms()) groups[letters_of(w)].add(w, c);
    Rational lo = 0, hi = 0;
    bool ok = true;
    for (const auto& [ms, part] : groups) {
        LPInstance inst = build_lp(part);
        LPSolution a = solve_lp(inst, cls.kappa_lo());
        ok = ok && a.verify(inst);
        lo += a.value;
        if (cls.kappa_exact()) {
            hi += a.value;
            res.at_hi.push_back(a);
        } else {
            LPSolution b = solve_lp(inst, cls.kappa_hi());
            ok = ok && b.verify(inst);
            hi += b.value;
            res.at_hi.push_back(std::move(b));
        }
        res.at_lo.push_back(std::move(a));
        res.instances.push_back(std::move(inst));
    }
    if (!ok) throw std::logic_error("fa_norm_exact: certificate verification failed");
    res.value = {lo, hi};
    res.certified = true;
    return res;
}

namespace {

Rational greedy_upper(NCPolyQ x, const Rational& kappa, const std::vector<NCPolyQ>& polys,
                      const std::vector<int>& xis) {
    Rational cross = 0;
    for (std::size_t t = 0; t < polys.size(); ++t) {
        const NCPolyQ& P = polys[t];
        if (P.empty()) continue;
        int sign = 0;
        Rational c;
        bool aligned = true;
        for (const auto& [w, pw] : P.terms()) {
            Rational xw = x.coeff(w);
            Rational ratio = xw / pw;
            int s = sgn(ratio);
            if (s == 0 || (sign != 0 && s != sign)) {
                aligned = false;
                break;
            }
            sign = s;
            Rational a = abs(ratio);
            if (c == 0 || a < c) c = a;
        }
        if (!aligned) continue;
        x -= P * Rational(sign * c);
        cross += c * pow(kappa, static_cast<unsigned>(xis[t]));
    }
    return l1_norm(x) + cross;
}

}  // namespace

Enclosure fa_norm_upper(const NCPolyQ& x, const ConvexityClass& cls,
                        const std::vector<QuasiMonomial>& cross_terms) {
    std::vector<NCPolyQ> polys;
    std::vector<int> xis;
    for (const auto& q : cross_terms) {
        polys.push_back(q.eval());
        xis.push_back(q.xi_count());
    }
    Rational lo = greedy_upper(x, cls.kappa_lo(), polys, xis);
    Rational hi = cls.kappa_exact() ? lo : greedy_upper(x, cls.kappa_hi(), polys, xis);
    return {lo, hi};
}

namespace {

std::mutex g_mu_mutex;
std::map<std::pair<int, int>, NCPolyL> g_mu_cache;

NCPolyL cached_mu(int a, int b) {
    std::lock_guard<std::mutex> lock(g_mu_mutex);
    auto key = std::make_pair(a, b);
    auto it = g_mu_cache.find(key);
    if (it != g_mu_cache.end()) return it->second;
    NCPolyL p = a < 0 ? mu_lambda(b) : mu_ab(a, b);
    return g_mu_cache[key] = p;
}

}  // namespace

Enclosure theta_ab(int a, int b, const Rational& lambda, const ConvexityClass& cls) {
    if (a < 0 || b < 0 || a + b < 1) throw std::out_of_range("theta_ab: need a, b >= 0 and a+b >= 1");
    if (a + b > kExhaustiveCap && !cls.is_plain())
        throw std::out_of_range("exhaustive mode unavailable above degree " + std::to_string(kExhaustiveCap));
    NCPolyQ x = eval_lambda(cached_mu(a, b), lambda);
    return fa_norm_exact(x, cls).value.scaled(Rational(1) / factorial(a + b));
}

Enclosure theta_k(int k, const Rational& lambda, const ConvexityClass& cls) {
    if (k < 1) throw std::out_of_range("theta_k: need k >= 1");
    if (k > kExhaustiveCap && !cls.is_plain())
        throw std::out_of_range("exhaustive mode unavailable above degree " + std::to_string(kExhaustiveCap));
    NCPolyQ x = eval_lambda(cached_mu(-1, k), lambda);
    return fa_norm_exact(x, cls).value.scaled(Rational(1) / factorial(k));
}

}  // namespace magbound
