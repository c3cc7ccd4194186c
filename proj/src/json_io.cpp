#include "fockbundle/json_io.hpp"

#include <stdexcept>

namespace fockbundle {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("complex: expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json vec_to_json(const Vec& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(complex_to_json(v(i)));
    return out;
}

Vec vec_from_json(const Json& j) {
    if (!j.is_array())
        throw std::invalid_argument("vector: expected an array");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

Json mat_to_json(const Mat& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(complex_to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

Mat mat_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix: expected a nested array");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    Mat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j[static_cast<std::size_t>(r)].size()) != cols)
            throw std::invalid_argument("matrix: ragged rows");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = complex_from_json(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    }
    return m;
}

Json real_mat_to_json(const Eigen::MatrixXd& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

Eigen::MatrixXd real_mat_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("real matrix: expected a nested array");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].get<double>();
    return m;
}

Json mode_space_to_json(const ModeSpace& s) {
    return Json{{"parity", s.parity() == Parity::Odd ? "odd" : "even"},
                {"d", s.fibre_dim()},
                {"N", s.cutoff()}};
}

ModeSpace mode_space_from_json(const Json& j) {
    std::string parity = j.at("parity").get<std::string>();
    if (parity != "odd" && parity != "even")
        throw std::invalid_argument("mode space: parity must be \"odd\" or \"even\"");
    return {parity == "odd" ? Parity::Odd : Parity::Even, j.at("d").get<int>(), j.at("N").get<int>()};
}

Json mode_vector_to_json(const ModeVector& v) {
    Json out = mode_space_to_json(v.space());
    out["coeffs"] = vec_to_json(v.coeffs());
    return out;
}

ModeVector mode_vector_from_json(const Json& j) {
    ModeSpace s = mode_space_from_json(j);
    return {s, vec_from_json(j.at("coeffs"))};
}

Json trig_poly_to_json(const TrigPolyMatrix& f) {
    Json coeffs = Json::object();
    for (const auto& [k, m] : f.coeffs())
        coeffs[std::to_string(k)] = real_mat_to_json(m);
    return Json{{"d", f.fibre_dim()},
                {"coeffs", std::move(coeffs)},
                {"flavor", f.flavor() == LoopFlavor::Group ? "group" : "algebra"}};
}

TrigPolyMatrix trig_poly_from_json(const Json& j) {
    std::string flavor = j.at("flavor").get<std::string>();
    if (flavor != "group" && flavor != "algebra")
        throw std::invalid_argument("trig poly: flavor must be \"group\" or \"algebra\"");
    std::map<int, Eigen::MatrixXd> coeffs;
    for (const auto& [key, val] : j.at("coeffs").items())
        coeffs[std::stoi(key)] = real_mat_from_json(val);
    return {j.at("d").get<int>(), flavor == "group" ? LoopFlavor::Group : LoopFlavor::Algebra,
            std::move(coeffs)};
}

Json nerve_to_json(const Nerve& n) {
    Json out;
    out["charts"] = n.charts;
    out["doubles"] = Json::array();
    for (const auto& d : n.doubles)
        out["doubles"].push_back(Json::array({d[0], d[1]}));
    out["triples"] = Json::array();
    for (const auto& t : n.triples)
        out["triples"].push_back(Json::array({t[0], t[1], t[2]}));
    out["quads"] = Json::array();
    for (const auto& q : n.quads)
        out["quads"].push_back(Json::array({q[0], q[1], q[2], q[3]}));
    return out;
}

Nerve nerve_from_json(const Json& j) {
    Nerve n;
    n.charts = j.at("charts").get<int>();
    for (const auto& d : j.at("doubles"))
        n.doubles.push_back({d[0].get<int>(), d[1].get<int>()});
    if (j.contains("triples"))
        for (const auto& t : j.at("triples"))
            n.triples.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    if (j.contains("quads"))
        for (const auto& q : j.at("quads"))
            n.quads.push_back({q[0].get<int>(), q[1].get<int>(), q[2].get<int>(), q[3].get<int>()});
    validate_nerve(n);
    return n;
}

namespace {
std::string key_string(const std::vector<int>& key) {
    std::string out;
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(key[i]);
    }
    return out;
}

std::vector<int> key_parse(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos)
            next = s.size();
        out.push_back(std::stoi(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}
} // namespace

Json cochain_to_json(const CircleCochain& c) {
    Json values = Json::object();
    for (const auto& [key, v] : c.values())
        values[key_string(key)] = v;
    return Json{{"degree", c.degree()}, {"values", std::move(values)}};
}

CircleCochain cochain_from_json(const Json& j) {
    CircleCochain c(j.at("degree").get<int>());
    for (const auto& [key, val] : j.at("values").items())
        c.set(key_parse(key), val.get<double>());
    return c;
}

Json divergence_report_to_json(const DivergenceReport& r) {
    return Json{{"cutoffs", r.cutoffs}, {"hs_sq", r.hs_sq}, {"verdict", r.verdict}};
}

Json implementer_to_json(const Implementer& imp) {
    return Json{{"g", mat_to_json(imp.implements)},
                {"U", mat_to_json(imp.matrix)},
                {"residual", imp.residual},
                {"phase_rule", imp.phase_rule}};
}

Json clifford_word_to_json(const CliffordWord& w, const ModeSpace& space) {
    (void)space;
    Json out = Json::array();
    for (const CliffordTerm& t : w.terms()) {
        Json letters = Json::array();
        for (const ModeVector& v : t.letters)
            letters.push_back(mode_vector_to_json(v));
        out.push_back(Json{{"scalar", complex_to_json(t.scalar)}, {"letters", std::move(letters)}});
    }
    return out;
}

CliffordWord clifford_word_from_json(const Json& j) {
    std::vector<CliffordTerm> terms;
    for (const auto& t : j) {
        CliffordTerm term{complex_from_json(t.at("scalar")), {}};
        for (const auto& l : t.at("letters"))
            term.letters.push_back(mode_vector_from_json(l));
        terms.push_back(std::move(term));
    }
    return CliffordWord(std::move(terms));
}

Json fock_vector_to_json(int m, const Vec& coeffs) {
    return Json{{"m", m}, {"coeffs", vec_to_json(coeffs)}};
}

} // namespace fockbundle
