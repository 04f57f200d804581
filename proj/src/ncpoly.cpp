#include "magbound/ncpoly.hpp"

namespace magbound {

std::string word_to_string(const Word& w) {
    std::string s = "Y";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && w[i] >= 10) s += ",";
        s += std::to_string(w[i]);
    }
    return s;
}

NCPolyQ eval_lambda(const NCPolyL& poly, const Rational& lambda) {
    return poly.map<Rational>([&](const RatPoly& c) { return c(lambda); });
}

NCPolyQ integrate_lambda(const NCPolyL& poly) {
    return poly.map<Rational>([](const RatPoly& c) { return c.integral(0, 1); });
}

Rational l1_norm(const NCPolyQ& poly) {
    Rational s = 0;
    for (const auto& [w, c] : poly.terms()) s += abs(c);
    return s;
}

}  // namespace magbound
