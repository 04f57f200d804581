#pragma once

#include "magbound/ratpoly.hpp"
#include "magbound/rational.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace magbound {

// Letters are 1-based generator indices.
using Word = std::vector<int>;

inline bool is_zero(const Rational& c) { return c == 0; }
inline bool is_zero(const RatPoly& c) { return c.is_zero(); }

std::string word_to_string(const Word& w);

// Noncommutative polynomial: finite map Word -> coefficient, zero terms never stored.
template <class C>
class NCPoly {
public:
    using Terms = std::map<Word, C>;

    NCPoly() = default;
    static NCPoly single(Word w, C c = C(1)) {
        NCPoly p;
        p.add(std::move(w), c);
        return p;
    }

    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    C coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? C(0) : it->second;
    }

    void add(const Word& w, const C& c) {
        if (is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    // -1 for the zero polynomial; throws if not homogeneous.
    int degree() const {
        if (terms_.empty()) return -1;
        std::size_t d = terms_.begin()->first.size();
        for (const auto& [w, c] : terms_)
            if (w.size() != d) throw std::logic_error("polynomial is not homogeneous");
        return static_cast<int>(d);
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        std::size_t d = terms_.begin()->first.size();
        for (const auto& [w, c] : terms_)
            if (w.size() != d) return false;
        return true;
    }

    int max_letter() const {
        int m = 0;
        for (const auto& [w, c] : terms_)
            for (int l : w) m = std::max(m, l);
        return m;
    }

    NCPoly& operator+=(const NCPoly& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& o) {
        for (const auto& [w, c] : o.terms_) add(w, C(-1) * c);
        return *this;
    }
    NCPoly& operator*=(const C& s) {
        if (is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, c] : terms_) c = c * s;
        return *this;
    }

    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator*(NCPoly a, const C& s) { return a *= s; }
    friend NCPoly operator*(const C& s, NCPoly a) { return a *= s; }

    // Concatenation product.
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
        NCPoly out;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                out.add(w, ca * cb);
            }
        return out;
    }

    friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }
    friend bool operator<(const NCPoly& a, const NCPoly& b) { return a.terms_ < b.terms_; }

    // Replace letter i by sign(i)·letter(i); sign is ±1.
    NCPoly relabel(const std::function<int(int)>& letter,
                   const std::function<int(int)>& sign = [](int) { return 1; }) const {
        NCPoly out;
        for (const auto& [w, c] : terms_) {
            Word nw(w.size());
            int s = 1;
            for (std::size_t i = 0; i < w.size(); ++i) {
                nw[i] = letter(w[i]);
                s *= sign(w[i]);
            }
            out.add(nw, s > 0 ? c : C(-1) * c);
        }
        return out;
    }

    // Coefficientwise map into another coefficient ring.
    template <class D, class F>
    NCPoly<D> map(F&& f) const {
        NCPoly<D> out;
        for (const auto& [w, c] : terms_) out.add(w, f(c));
        return out;
    }

private:
    Terms terms_;
};

using NCPolyQ = NCPoly<Rational>;
using NCPolyL = NCPoly<RatPoly>;

NCPolyQ eval_lambda(const NCPolyL& poly, const Rational& lambda);
NCPolyQ integrate_lambda(const NCPolyL& poly);
Rational l1_norm(const NCPolyQ& poly);

// Words of the Ξ pattern S1S2S3S4 + S2S1S3S4 + S1S2S4S3 − S2S1S4S3, divided by 4.
template <class C>
NCPoly<C> xi_eval(const NCPoly<C>& s1, const NCPoly<C>& s2, const NCPoly<C>& s3,
                  const NCPoly<C>& s4) {
    NCPoly<C> a = s1 * s2, b = s2 * s1, c = s3 * s4, d = s4 * s3;
    NCPoly<C> out = a * c + b * c + a * d - b * d;
    out *= C(Rational(1, 4));
    return out;
}

}  // namespace magbound
