#pragma once

// JSON and CSV serialization. Exact values travel as "p/q" strings; keys keep
// insertion order so repeated runs are byte-identical.

#include "sollink/qseries.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace sollink {

using ojson = nlohmann::ordered_json;

inline ojson vec_json(const IVec2& v) { return ojson::array({v[0].str(), v[1].str()}); }
inline ojson vec_json(const QVec2& v) { return ojson::array({to_string(v[0]), to_string(v[1])}); }

inline ojson mat_json(const IMat2& m) { return ojson::array({vec_json(m[0]), vec_json(m[1])}); }
inline ojson mat_json(const QMat2& m) { return ojson::array({vec_json(m[0]), vec_json(m[1])}); }

inline ojson elem_json(const QuadElem& x)
{
    return ojson{{"a", to_string(x.a())}, {"b", to_string(x.b())}, {"text", x.str()}};
}

inline ojson field_json(const FieldData& f)
{
    return ojson{
        {"d", f.d},
        {"disc", f.disc},
        {"omega", f.omega_desc},
        {"eps0", elem_json(f.eps0)},
        {"eps0_norm", f.eps0_norm},
        {"eps", elem_json(f.eps)},
        {"eps_approx", f.eps.to_double()},
    };
}

inline ojson qexpansion_json(const QExpansion& q)
{
    ojson coeffs = ojson::object();
    for (const auto& [n, c] : q.coeffs) coeffs[std::to_string(n)] = to_string(c);
    return ojson{{"d", q.d}, {"m", q.m}, {"weight", q.weight}, {"nmax", q.nmax}, {"description", q.description}, {"coeffs", coeffs}};
}

namespace detail {

inline int parse_index(const std::string& key)
{
    std::size_t pos = 0;
    int n = 0;
    try {
        n = std::stoi(key, &pos);
    } catch (const std::exception&) {
        throw InputError("index '" + key + "' is not an integer");
    }
    if (pos != key.size() || n < 1) throw InputError("index '" + key + "' must be a positive integer");
    return n;
}

inline Rational rational_field(const nlohmann::json& v)
{
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw InputError("exact values must be \"p/q\" strings or integers");
}

} // namespace detail

inline QExpansion qexpansion_from_json(const nlohmann::json& j)
{
    try {
        QExpansion q;
        q.d = j.at("d").get<std::int64_t>();
        q.m = j.at("m").get<int>();
        q.weight = j.value("weight", 2);
        q.nmax = j.at("nmax").get<int>();
        q.description = j.value("description", std::string());
        for (const auto& [k, v] : j.at("coeffs").items()) {
            int n = detail::parse_index(k);
            if (n > q.nmax) throw InputError("coefficient index " + k + " exceeds nmax");
            q.coeffs[n] = detail::rational_field(v);
        }
        return q;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed q-expansion JSON: ") + e.what());
    }
}

inline InteriorTable interior_from_json(const nlohmann::json& j)
{
    try {
        InteriorTable t;
        t.m = j.at("m").get<int>();
        if (t.m < 1) throw InputError("interior table: m must be positive");
        t.provenance = j.value("provenance", std::string());
        for (const auto& [k, v] : j.at("entries").items()) t.entries[detail::parse_index(k)] = detail::rational_field(v);
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed interior table JSON: ") + e.what());
    }
}

inline ojson interior_json(const InteriorTable& t)
{
    ojson entries = ojson::object();
    for (const auto& [n, v] : t.entries) entries[std::to_string(n)] = to_string(v);
    return ojson{{"m", t.m}, {"entries", entries}, {"provenance", t.provenance}};
}

inline ojson link_table_json(const LinkTable& t)
{
    ojson rows = ojson::array();
    for (int n = 1; n <= t.nmax; ++n) {
        ojson row = ojson::array();
        for (int m = 1; m <= t.nmax; ++m) row.push_back(to_string(t.at(n, m)));
        rows.push_back(row);
    }
    return ojson{{"d", t.field.d}, {"nmax", t.nmax}, {"n_det", t.n_det.str()}, {"rows", rows}};
}

inline ojson components_json(const FieldData& field, const Rational& n, const std::vector<BoundaryComponent>& comps)
{
    ojson list = ojson::array();
    for (const auto& c : comps) {
        list.push_back(ojson{
            {"rep", elem_json(c.cls.rep)},
            {"multiplicity", c.multiplicity.str()},
            {"fiber_label", elem_json(c.fiber_label)},
            {"circle_class", vec_json(circle_class(field, c.cls.rep))},
        });
    }
    return ojson{{"d", field.d}, {"n", to_string(n)}, {"components", list}};
}

/// Shortest decimal that round-trips.
inline std::string fmt_double(double x)
{
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

inline std::string series_csv(const std::vector<SeriesRow>& rows)
{
    std::ostringstream os;
    os << "n,value,tail_estimate\n";
    for (const auto& r : rows) os << r.n << ',' << fmt_double(r.value) << ',' << fmt_double(r.tail_estimate) << '\n';
    return os.str();
}

inline std::complex<double> parse_tau(const std::string& text)
{
    // RE+IMi or RE-IMi, e.g. "0+1i", "0.25+2i", "-1-0.5i" (the last is rejected later)
    if (text.size() < 2 || text.back() != 'i') throw InputError("tau must look like RE+IMi, got '" + text + "'");
    std::string body = text.substr(0, text.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < body.size(); ++i) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') split = i;
    }
    if (split == std::string::npos) throw InputError("tau must look like RE+IMi, got '" + text + "'");
    auto num = [&](const std::string& s) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != s.size() || s.empty()) throw InputError("tau must look like RE+IMi, got '" + text + "'");
        return v;
    };
    std::string im = body.substr(split);
    if (im == "+" || im == "-") im += "1";
    std::complex<double> tau(num(body.substr(0, split)), num(im));
    if (!(tau.imag() > 0)) throw InputError("tau must have positive imaginary part, got '" + text + "'");
    return tau;
}

} // namespace sollink
