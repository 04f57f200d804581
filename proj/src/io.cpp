#include "magbound/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace magbound {

using nlohmann::json;

json num_json(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

NCPolyQ parse_ncpoly(const std::string& text) {
    NCPolyQ out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("cannot parse polynomial at position " + std::to_string(i) + ": " + why);
    };
    skip();
    if (i == n) fail("empty input");
    bool first = true;
    while (true) {
        skip();
        if (i == n) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            fail("expected + or -");
        }
        first = false;
        Rational coeff = 1;
        std::size_t start = i;
        while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/' || text[i] == '.')) ++i;
        if (i > start) coeff = parse_rational(text.substr(start, i - start));
        skip();
        if (i < n && text[i] == '*') {
            ++i;
            skip();
        }
        Word w;
        while (i < n && text[i] == 'Y') {
            ++i;
            if (i < n && text[i] == '{') {
                std::size_t close = text.find('}', i);
                if (close == std::string::npos) fail("unclosed brace");
                int letter = std::atoi(text.substr(i + 1, close - i - 1).c_str());
                if (letter < 1) fail("letters are positive integers");
                w.push_back(letter);
                i = close + 1;
            } else {
                std::size_t s = i;
                while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    if (text[i] == '0') fail("letter 0 is not allowed");
                    w.push_back(text[i] - '0');
                    ++i;
                }
                if (i == s) fail("Y must be followed by letters");
            }
        }
        if (w.empty() && i == start) fail("expected a term");
        out.add(w, coeff * sign);
    }
    return out;
}

json enclosure_json(const Enclosure& e) {
    json j;
    j["lo"] = to_string(e.lo);
    j["hi"] = to_string(e.hi);
    j["exact"] = e.exact();
    j["approx"] = num_json(e.mid());
    return j;
}

json ncpoly_json(const NCPolyQ& p) {
    json terms = json::array();
    for (const auto& [w, c] : p.terms()) terms.push_back({{"word", w}, {"coeff", to_string(c)}});
    return {{"degree", p.is_homogeneous() ? p.degree() : -1}, {"terms", terms}};
}

NCPolyQ ncpoly_from_json(const json& j) {
    const json& terms = j.is_array() ? j : j.at("terms");
    NCPolyQ out;
    for (const auto& t : terms) {
        Word w = t.at("word").get<Word>();
        if (w.empty()) throw std::invalid_argument("empty word in polynomial");
        for (int l : w)
            if (l < 1) throw std::invalid_argument("letters must be positive");
        const json& c = t.at("coeff");
        Rational r = c.is_string() ? parse_rational(c.get<std::string>())
                     : c.is_number_integer() ? Rational(c.get<long>())
                                             : from_double(c.get<double>());
        out.add(w, r);
    }
    return out;
}

json ratpoly_json(const RatPoly& p) {
    json a = json::array();
    for (int i = 0; i <= std::max(0, p.degree()); ++i) a.push_back(to_string(p.coeff(i)));
    return a;
}

namespace {

json solution_json(const LPInstance& inst, const LPSolution& s) {
    json cols = json::array();
    for (std::size_t k = 0; k < inst.columns.size(); ++k)
        if (s.weights[k] != 0)
            cols.push_back({{"quasi_monomial", inst.columns[k].tree.to_string()},
                            {"weight", to_string(s.weights[k])},
                            {"cross_count", inst.columns[k].xi_count}});
    json dual = json::array();
    for (std::size_t r = 0; r < inst.rows.size(); ++r)
        if (s.dual[r] != 0) dual.push_back({{"word", inst.rows[r]}, {"value", to_string(s.dual[r])}});
    return {{"kappa", to_string(s.kappa)}, {"value", to_string(s.value)}, {"pivots", s.pivots},
            {"verified", s.verify(inst)}, {"primal", cols}, {"dual", dual}};
}

}  // namespace

json certificate_json(const NormResult& r) {
    json blocks = json::array();
    for (std::size_t i = 0; i < r.instances.size(); ++i) {
        json b;
        b["target"] = ncpoly_json(r.instances[i].target);
        b["columns"] = r.instances[i].columns.size();
        b["at_kappa_lo"] = solution_json(r.instances[i], r.at_lo[i]);
        if (i < r.at_hi.size() && r.at_hi[i].kappa != r.at_lo[i].kappa)
            b["at_kappa_hi"] = solution_json(r.instances[i], r.at_hi[i]);
        blocks.push_back(b);
    }
    return {{"value", enclosure_json(r.value)}, {"certified", r.certified}, {"blocks", blocks}};
}

json radius_json(const RadiusResult& r, bool with_eigvec) {
    json j = {{"radius", num_json(r.radius)},
              {"bracket", {num_json(r.lo), num_json(r.hi)}},
              {"iterations", r.iterations},
              {"n", r.n},
              {"converged", r.converged},
              {"hopf_rate_applicable", r.hopf_rate_applicable}};
    if (!r.warning.empty()) j["warning"] = r.warning;
    if (with_eigvec) {
        json v = json::array();
        for (double x : r.eigvec) v.push_back(num_json(x));
        j["eigvec"] = v;
    }
    return j;
}

json bound_json(const BoundReport& r) {
    json j;
    j["method"] = method_tag(r.method);
    j["class"] = r.cls;
    j["lambda"] = r.lambda ? num_json(*r.lambda) : json(nullptr);
    if (r.lambda_range) j["lambda_range"] = {num_json(r.lambda_range->first), num_json(r.lambda_range->second)};
    j["lower"] = r.lower ? num_json(*r.lower) : json(nullptr);
    j["upper"] = r.upper ? num_json(*r.upper) : json(nullptr);
    j["meta"] = r.meta;
    return j;
}

json sample_json(const SampleReport& r) {
    return {{"pattern", r.pattern},   {"p", num_json(r.space.p)},       {"n", r.space.n},
            {"q", num_json(r.space.q())}, {"trials", r.trials},        {"violations", r.violations},
            {"max_ratio", num_json(r.max_ratio)}, {"worst_trial", r.worst_trial}, {"seed", r.seed}};
}

json bch_gain_json(const BchGain& g) {
    json j = {{"l1_cubed", num_json(g.l1)},   {"gain_35", num_json(g.gain_35)}, {"gain_53", num_json(g.gain_53)},
              {"bound", num_json(g.bound)},   {"aligned", g.aligned},         {"conclusive", g.conclusive}};
    if (!g.diagnostic.empty()) j["diagnostic"] = g.diagnostic;
    return j;
}

json criterion_json(const CriterionResult& r) {
    return {{"id", r.id},           {"title", r.title},         {"pass", r.pass()}, {"checks_passed", r.checks_passed},
            {"budget_seconds", r.budget_seconds}, {"details", r.details}};
}

json envelope(const std::string& command, json payload) {
    return {{"schema", kSchemaVersion}, {"command", command}, {"result", std::move(payload)}};
}

}  // namespace magbound
